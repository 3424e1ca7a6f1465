"""Walking proofs while tracking what remains to be proved.

Every proof block carries a thesis.  Skeleton steps transform it:
``let`` strips a universal, ``assume`` peels the antecedent off a
negated conjunction, ``thus`` discharges leading conjuncts, ``take``
instantiates an existential, ``per cases`` splits it.  A block is
complete when its thesis has shrunk to truth; anything left at ``end``
is reported as code 70.

Statement justifications are delegated: plain ``by`` goes through the
refutational checker, ``from`` through the scheme matcher, and an
inline ``proof`` recurses.  Resolution errors abort only the step that
raised them, so one mistake does not bury the rest of the article.

The same walker elaborates definitions and cluster registrations,
emitting their correctness goals (existence, coherence, uniqueness) as
ordinary justification obligations and recording the constructor in
the definition database afterwards, proof or no proof, so later text
can still refer to it.
"""

from __future__ import annotations

from .errors import MizarError, SourcePos, VerifyError
from .flex import FlexMode, formula_equal
from .formatter import Formatter
from .logic import (
    And,
    Attr,
    Choice,
    ForAll,
    Formula,
    Fraenkel,
    FTrue,
    FunctorApp,
    Is,
    Neg,
    Numeral,
    Pred,
    PrivFunc,
    Qual,
    SchemeFunctorApp,
    Term,
    TypeExpr,
    Var,
    VarKind,
    abstract_const,
    bound,
    const,
    locus,
    mk_and,
    mk_exists,
    mk_iff,
    mk_imp,
    mk_is,
    mk_neg,
    mk_or,
    replace_thesis,
    shift_up,
    sorted_attrs,
    subst_bound,
    subst_loci,
    subst_loci_type,
    uses_const,
)
from .prechecker import CLAUSE_CAP, Prechecker
from .requirements import RequirementTable
from .resolver import PrivDef, Resolver, Scope
from .schematizer import Scheme, SchemeMatchError, match_scheme
from .subtyping import (
    AttrDef,
    ConditionalCluster,
    DefinitionDb,
    ExistentialCluster,
    FuncDef,
    FunctorCluster,
    ModeDef,
    PredDef,
)
from .surface import (
    Article,
    DefAttr,
    DefFunc,
    DefMode,
    DefPred,
    ItDeffunc,
    ItDefinition,
    ItDefpred,
    ItRegistration,
    ItScheme,
    ItTheorem,
    RegConditional,
    RegExistential,
    RegFunctor,
    SBy,
    SFrom,
    SItem,
    SJust,
    SStep,
    SSubProof,
    StAssume,
    StConsider,
    StDeffunc,
    StDefpred,
    StGiven,
    StLet,
    StNow,
    StPerCases,
    StProp,
    StReconsider,
    StTake,
    StTakeEq,
    StThus,
)
from .unifier import TUPLE_CAP

TRUE = FTrue()
FALSE = Neg(FTrue())


class Analyzer:
    def __init__(
        self,
        req: RequirementTable,
        db: DefinitionDb | None = None,
        *,
        flex_mode: FlexMode = FlexMode.STRICT,
        clause_cap: int = CLAUSE_CAP,
        tuple_cap: int = TUPLE_CAP,
        trace: list[str] | None = None,
        article_name: str = "",
    ):
        self.req = req
        self.db = db if db is not None else DefinitionDb(req)
        self.flex_mode = flex_mode
        self.scope = Scope(req, self.db)
        self.resolver = Resolver(self.scope)
        self.checker = Prechecker(self.db, flex_mode, clause_cap, tuple_cap)
        self.formatter = Formatter(self.scope)
        self.errors: list[VerifyError] = []
        self.labels: dict[str, Formula] = {}
        self.ctypes: dict[int, TypeExpr] = {}  # by constant id; survives shadowing
        self.defined: list[tuple[int, Term]] = []  # constants introduced with := t
        self.schemes: dict[str, Scheme] = {}
        self.scheme_results: dict[int, TypeExpr] = {}
        self.scheme_premises: list[Formula] = []
        self.loci_types: list[TypeExpr] = []
        self.prev: Formula | None = None
        self.trace = trace
        self.article_name = article_name

    # -- entry ------------------------------------------------------------

    def run(self, article: Article) -> list[VerifyError]:
        for item in article.items:
            mark = self._mark()
            try:
                self._item(item)
            except MizarError as e:
                self.errors.append(e.to_error())
                self._reset(mark, keep_labels=True)
        return self.errors

    def _item(self, item: SItem) -> None:
        match item:
            case ItTheorem():
                f = self._resolve(item.formula)
                self.justify(f, item.just, item.pos)
                if item.label:
                    self._bind(item.label, f, item.pos)
                self.prev = f
            case ItScheme():
                self._scheme_item(item)
            case ItDefinition():
                self._definition(item)
            case ItRegistration():
                self._registration(item)
            case ItDeffunc():
                self._deffunc(item.name, item.arg_types, item.body)
            case ItDefpred():
                self._defpred(item.name, item.arg_types, item.body)
            case _:
                raise AssertionError(f"unhandled item {item!r}")

    # -- shared plumbing ----------------------------------------------------

    def _mark(self):
        return (self.scope.block_mark(), dict(self.labels), len(self.defined))

    def _reset(self, mark, keep_labels: bool = False) -> None:
        self.scope.block_reset(mark[0])
        if not keep_labels:
            self.labels = mark[1]
        del self.defined[mark[2] :]

    def _bind(self, label: str, f: Formula, pos: SourcePos) -> None:
        if label in self.labels:
            self.errors.append(VerifyError(pos, 93))
            return
        self.labels[label] = f

    def _resolve(self, s, thesis: Formula | None = None) -> Formula:
        """Resolve a surface formula; `thesis` enables and fills the marker."""
        self.scope.thesis_ok = thesis is not None
        try:
            f = self.resolver.formula(s)
        finally:
            self.scope.thesis_ok = False
        return replace_thesis(f, thesis) if thesis is not None else f

    def _feq(self, a: Formula, b: Formula) -> bool:
        return formula_equal(a, b, self.flex_mode)

    def _eq_pred(self, pos: SourcePos) -> int:
        eq = self.req.cid("Equality")
        if eq is None:
            raise MizarError(pos, 95, "equality requirement missing")
        return eq

    # -- justifications ------------------------------------------------------

    def justify(self, goal: Formula, just: SJust, pos: SourcePos) -> None:
        match just:
            case SSubProof(_, steps, end_pos):
                self.walk_proof(goal, steps, end_pos)
            case SFrom():
                self._from(goal, just)
            case SBy(_, refs, linked):
                self._by(goal, refs, linked, pos)
            case _:
                raise AssertionError(f"unhandled justification {just!r}")

    def _references(self, refs, linked: bool, pos: SourcePos) -> list[Formula]:
        premises: list[Formula] = []
        if linked:
            if self.prev is None:
                self.errors.append(VerifyError(pos, 51))
            else:
                premises.append(self.prev)
        for name, rpos in refs:
            f = self.labels.get(name)
            if f is None:
                self.errors.append(VerifyError(rpos, 91))
            else:
                premises.append(f)
        return premises

    def _by(self, goal: Formula, refs, linked: bool, pos: SourcePos) -> None:
        premises = self._references(refs, linked, pos)
        eq = self.req.cid("Equality")
        if eq is not None:
            for cid, t in self.defined:
                premises.append(Pred(eq, (const(cid), t)))
        premises.extend(self.scheme_premises)
        res = self.checker.justify(premises, goal, dict(self.ctypes), self.scope.next_const)
        if self.trace is not None:
            self._emit_trace(goal, res, pos)
        if res.too_large:
            self.errors.append(VerifyError(pos, 66))
        elif not res.accepted:
            self.errors.append(VerifyError(pos, 61))

    def _new_const(self, name: str, ty: TypeExpr) -> int:
        c = self.scope.fresh_const()
        self.scope.consts[name] = (c, ty)
        self.ctypes[c] = ty
        return c

    def _emit_trace(self, goal: Formula, res, pos: SourcePos) -> None:
        self.trace.extend(self.formatter.trace_input(mk_neg(goal)))
        prepared = res.prepared
        if prepared is None:
            return
        if isinstance(prepared, Neg) and isinstance(prepared.body, And):
            branches = [mk_neg(c) for c in prepared.body.conjuncts]
        else:
            branches = [prepared]
        where = f"{self.article_name}:{pos.line}:{pos.col}"
        for i, branch in enumerate(branches):
            self.trace.extend(self.formatter.trace_refuting(i, where, branch, res.skolems))

    def _from(self, goal: Formula, just: SFrom) -> None:
        scheme = self.schemes.get(just.scheme)
        if scheme is None:
            self.errors.append(VerifyError(just.pos, 91))
            return
        cited = self._references(just.refs, just.linked, just.pos)
        try:
            match_scheme(scheme, tuple(cited), goal)
        except SchemeMatchError as e:
            self.errors.append(VerifyError(just.pos, e.code))

    # -- proof walking ---------------------------------------------------------

    def walk_proof(self, thesis: Formula, steps, end_pos: SourcePos) -> None:
        mark = self._mark()
        saved_prev, self.prev = self.prev, None
        thesis = self._run_steps(thesis, steps)
        if not isinstance(thesis, FTrue):
            self.errors.append(VerifyError(end_pos, 70))
        self._reset(mark)
        self.prev = saved_prev

    def _run_steps(self, thesis: Formula, steps) -> Formula:
        for st in steps:
            try:
                thesis = self._step(st, thesis)
            except MizarError as e:
                self.errors.append(e.to_error())
                self.prev = None
        return thesis

    def _step(self, st: SStep, thesis: Formula) -> Formula:
        match st:
            case StLet():
                return self._let(st, thesis)
            case StAssume():
                fs = []
                for cond in st.conds:
                    f = self._resolve(cond.formula, thesis)
                    if cond.label:
                        self._bind(cond.label, f, cond.formula.pos)
                    fs.append(f)
                for f in fs:
                    thesis = self._consume(f, thesis, st.pos)
                self.prev = mk_and(fs) if fs else None
                return thesis
            case StThus():
                f = self._resolve(st.prop.formula, thesis)
                self.justify(f, st.just, st.pos)
                if st.prop.label:
                    self._bind(st.prop.label, f, st.pos)
                self.prev = f
                return self._discharge(f, thesis, st.pos)
            case StTake() | StTakeEq():
                return self._take(st, thesis)
            case StConsider():
                self._consider(st)
                return thesis
            case StGiven():
                return self._given(st, thesis)
            case StReconsider():
                self._reconsider(st)
                return thesis
            case StPerCases():
                return self._per_cases(st, thesis)
            case StNow():
                export = self.walk_now(st.steps, st.end_pos)
                if st.label:
                    self._bind(st.label, export, st.pos)
                self.prev = export
                return thesis
            case StProp():
                f = self._resolve(st.prop.formula, thesis)
                self.justify(f, st.just, st.pos)
                if st.prop.label:
                    self._bind(st.prop.label, f, st.pos)
                self.prev = f
                return thesis
            case StDeffunc():
                self._deffunc(st.name, st.arg_types, st.body)
                return thesis
            case StDefpred():
                self._defpred(st.name, st.arg_types, st.body)
                return thesis
        raise AssertionError(f"unhandled step {st!r}")

    # -- individual skeleton steps ---------------------------------------------

    def _let(self, st: StLet, thesis: Formula) -> Formula:
        declared = self.resolver.type_expr(st.ty)
        for name in st.names:
            if not isinstance(thesis, ForAll):
                raise MizarError(st.pos, 51, "nothing left to generalize")
            ty = self.db.round_up(thesis.ty)
            # fixing a variable at a supertype of the bound is fine; the
            # constant keeps the tighter thesis type either way
            if not self.db.subtype(ty, declared):
                self.errors.append(VerifyError(st.pos, 52))
            c = self._new_const(name, ty)
            thesis = subst_bound(thesis.body, 0, const(c))
        self.prev = None
        return thesis

    def _consume(self, a: Formula, thesis: Formula, pos: SourcePos) -> Formula:
        """Strip an assumption off the front of a negated conjunction."""
        if isinstance(thesis, Neg):
            target = thesis.body
            cs = list(target.conjuncts) if isinstance(target, And) else [target]
            ps = list(a.conjuncts) if isinstance(a, And) else [a]
            if len(ps) <= len(cs) and all(self._feq(p, c) for p, c in zip(ps, cs)):
                return mk_neg(mk_and(cs[len(ps) :]))
        if self._feq(a, mk_neg(thesis)):
            return FALSE
        self.errors.append(VerifyError(pos, 71))
        return thesis

    def _discharge(self, f: Formula, thesis: Formula, pos: SourcePos) -> Formula:
        if self._feq(f, thesis) or self._feq(f, FALSE):
            return TRUE
        if isinstance(thesis, And):
            cs = list(thesis.conjuncts)
            ps = list(f.conjuncts) if isinstance(f, And) else [f]
            if len(ps) < len(cs) and all(self._feq(p, c) for p, c in zip(ps, cs)):
                return mk_and(cs[len(ps) :])
        self.errors.append(VerifyError(pos, 71))
        return TRUE

    def _take(self, st: StTake | StTakeEq, thesis: Formula) -> Formula:
        if not (isinstance(thesis, Neg) and isinstance(thesis.body, ForAll)):
            raise MizarError(st.pos, 51, "thesis is not existential")
        ty = self.db.round_up(thesis.body.ty)
        t = self.resolver.term(st.term)
        if not self.db.subtype(self.type_of(t), ty):
            self.errors.append(VerifyError(st.pos, 52))
        if isinstance(st, StTakeEq):
            c = self._new_const(st.name, self.type_of(t))
            self.defined.append((c, t))
            t = const(c)
        self.prev = None
        return mk_neg(subst_bound(thesis.body.body, 0, t))

    def _conditions(self, name: str, conds) -> list[Formula]:
        """Resolve such-that conditions with `name` bound at the new level."""
        self.scope.bound_names.append(name)
        try:
            return [self._resolve(c.formula) for c in conds]
        finally:
            self.scope.bound_names.pop()

    def _consider(self, st: StConsider) -> None:
        ty = self.resolver.type_expr(st.ty)
        conds = self._conditions(st.name, st.conds)
        goal = mk_exists(ty, mk_and(conds))
        self.justify(goal, st.just, st.pos)
        c = self._new_const(st.name, ty)
        inst = [subst_bound(f, 0, const(c)) for f in conds]
        for cond, fi in zip(st.conds, inst):
            if cond.label:
                self._bind(cond.label, fi, cond.formula.pos)
        self.prev = mk_and(inst) if inst else Qual(const(c), ty)

    def _given(self, st: StGiven, thesis: Formula) -> Formula:
        ty = self.resolver.type_expr(st.ty)
        conds = self._conditions(st.name, st.conds)
        expected = mk_exists(ty, mk_and(conds))
        thesis = self._consume(expected, thesis, st.pos)
        c = self._new_const(st.name, ty)
        inst = [subst_bound(f, 0, const(c)) for f in conds]
        for cond, fi in zip(st.conds, inst):
            if cond.label:
                self._bind(cond.label, fi, cond.formula.pos)
        self.prev = mk_and(inst) if inst else Qual(const(c), ty)
        return thesis

    def _reconsider(self, st: StReconsider) -> None:
        ty = self.resolver.type_expr(st.ty)
        t = self.resolver.term(st.term)
        goal = Qual(t, ty)
        self.justify(goal, st.just, st.pos)
        c = self._new_const(st.name, ty)
        self.defined.append((c, t))
        self.prev = goal

    def _per_cases(self, st: StPerCases, thesis: Formula) -> Formula:
        conds = [self._resolve(b.cond.formula) for b in st.blocks]
        self.justify(mk_or(conds), st.just, st.pos)
        if st.kind == "suppose":
            for block, cf in zip(st.blocks, conds):
                self._case_block(block, cf, thesis)
            return TRUE
        # `case` blocks each prove one summand of a literal disjunction
        if isinstance(thesis, Neg) and isinstance(thesis.body, And):
            summands = [mk_neg(c) for c in thesis.body.conjuncts]
        else:
            summands = [thesis]
        if len(summands) != len(st.blocks):
            self.errors.append(VerifyError(st.pos, 71))
            summands = [TRUE] * len(st.blocks)
        for block, cf, summand in zip(st.blocks, conds, summands):
            cs = list(summand.conjuncts) if isinstance(summand, And) else [summand]
            ps = list(cf.conjuncts) if isinstance(cf, And) else [cf]
            if len(ps) < len(cs) and all(self._feq(p, c) for p, c in zip(ps, cs)):
                block_thesis = mk_and(cs[len(ps) :])
            else:
                self.errors.append(VerifyError(block.cond.formula.pos, 71))
                block_thesis = TRUE
            self._case_block(block, cf, block_thesis)
        return TRUE

    def _case_block(self, block, cf: Formula, thesis: Formula) -> None:
        mark = self._mark()
        saved_prev, self.prev = self.prev, cf
        if block.cond.label:
            self._bind(block.cond.label, cf, block.cond.formula.pos)
        thesis = self._run_steps(thesis, block.steps)
        if not isinstance(thesis, FTrue):
            self.errors.append(VerifyError(block.end_pos, 70))
        self._reset(mark)
        self.prev = saved_prev

    # -- diffuse blocks -----------------------------------------------------

    def walk_now(self, steps, end_pos: SourcePos) -> Formula:
        mark = self._mark()
        first_fresh = self.scope.next_const
        saved_prev, self.prev = self.prev, None
        exports: list[tuple] = []  # ("let", cid, ty, level) | ("assume"/"thus", f, depth)
        lets_seen = 0
        for st in steps:
            try:
                match st:
                    case StLet():
                        ty = self.resolver.type_expr(st.ty)
                        for name in st.names:
                            c = self._new_const(name, ty)
                            exports.append(("let", c, ty, lets_seen))
                            lets_seen += 1
                        self.prev = None
                    case StAssume():
                        fs = []
                        for cond in st.conds:
                            f = self._resolve(cond.formula)
                            if cond.label:
                                self._bind(cond.label, f, cond.formula.pos)
                            fs.append(f)
                            exports.append(("assume", f, lets_seen))
                        self.prev = mk_and(fs) if fs else None
                    case StThus():
                        f = self._resolve(st.prop.formula)
                        self.justify(f, st.just, st.pos)
                        if st.prop.label:
                            self._bind(st.prop.label, f, st.pos)
                        exports.append(("thus", f, lets_seen))
                        self.prev = f
                    case StProp():
                        f = self._resolve(st.prop.formula)
                        self.justify(f, st.just, st.pos)
                        if st.prop.label:
                            self._bind(st.prop.label, f, st.pos)
                        self.prev = f
                    case StConsider():
                        self._consider(st)
                    case StReconsider():
                        self._reconsider(st)
                    case StNow():
                        export = self.walk_now(st.steps, st.end_pos)
                        if st.label:
                            self._bind(st.label, export, st.pos)
                        self.prev = export
                    case StDeffunc():
                        self._deffunc(st.name, st.arg_types, st.body)
                    case StDefpred():
                        self._defpred(st.name, st.arg_types, st.body)
                    case _:
                        raise MizarError(st.pos, 51, "step needs a thesis to act on")
            except MizarError as e:
                self.errors.append(e.to_error())
                self.prev = None
        acc: Formula | None = None
        for entry in reversed(exports):
            match entry:
                case ("thus", f, depth):
                    f = shift_up(f, depth)
                    acc = f if acc is None else mk_and([f, acc])
                case ("assume", f, depth):
                    if acc is not None:
                        acc = mk_imp(shift_up(f, depth), acc)
                case ("let", cid, ty, level):
                    if acc is not None:
                        acc = ForAll(ty, abstract_const(acc, cid, level))
        self._reset(mark)
        self.prev = saved_prev
        if acc is None:
            self.errors.append(VerifyError(end_pos, 70))
            return TRUE
        for cid in range(first_fresh, self.scope.next_const):
            if uses_const(acc, cid):
                # a consider/reconsider constant escaped its block
                self.errors.append(VerifyError(end_pos, 51))
                return TRUE
        return acc

    # -- private definitions ---------------------------------------------------

    def _priv_types(self, arg_types) -> tuple[TypeExpr, ...]:
        return tuple(self.resolver.type_expr(t) for t in arg_types)

    def _deffunc(self, name: str, arg_types, body) -> None:
        tys = self._priv_types(arg_types)
        saved, self.scope.dollar_types = self.scope.dollar_types, tys
        try:
            term = self.resolver.term(body)
        finally:
            self.scope.dollar_types = saved
        self.scope.priv_funcs[name] = PrivDef(self.scope.fresh_priv("func"), tys, term)

    def _defpred(self, name: str, arg_types, body) -> None:
        tys = self._priv_types(arg_types)
        saved, self.scope.dollar_types = self.scope.dollar_types, tys
        try:
            f = self._resolve(body)
        finally:
            self.scope.dollar_types = saved
        self.scope.priv_preds[name] = PrivDef(self.scope.fresh_priv("pred"), tys, f)

    # -- schemes ------------------------------------------------------------------

    def _scheme_item(self, it: ItScheme) -> None:
        saved_funcs = dict(self.scope.scheme_funcs)
        saved_preds = dict(self.scope.scheme_preds)
        func_arities: list[int] = []
        pred_arities: list[int] = []
        try:
            for sig in it.sigs:
                tys = self._priv_types(sig.arg_types)
                if sig.kind == "func":
                    result = self.resolver.type_expr(sig.result)
                    fid = len(func_arities)
                    self.scope.scheme_funcs[sig.name] = (fid, tys, result)
                    self.scheme_results[fid] = result
                    # let the checker type applications of the placeholder
                    typed: Formula = Qual(
                        SchemeFunctorApp(fid, tuple(bound(i) for i in range(len(tys)))),
                        result,
                    )
                    for i in reversed(range(len(tys))):
                        typed = ForAll(tys[i], typed)
                    self.scheme_premises.append(typed)
                    func_arities.append(len(tys))
                else:
                    self.scope.scheme_preds[sig.name] = (len(pred_arities), tys)
                    pred_arities.append(len(tys))
            statement = self._resolve(it.statement)
            premises = []
            mark = self._mark()
            for p in it.provided:
                f = self._resolve(p.formula)
                if p.label:
                    self._bind(p.label, f, p.formula.pos)
                premises.append(f)
            self.walk_proof(statement, it.steps, it.end_pos)
            self._reset(mark)
            if it.name in self.schemes:
                self.errors.append(VerifyError(it.pos, 93))
            else:
                self.schemes[it.name] = Scheme(
                    it.name,
                    tuple(func_arities),
                    tuple(pred_arities),
                    tuple(premises),
                    statement,
                )
        finally:
            self.scope.scheme_funcs = saved_funcs
            self.scope.scheme_preds = saved_preds
            self.scheme_results = {}
            self.scheme_premises = []

    # -- definitions ---------------------------------------------------------------

    def _loci(self, lets) -> list[str]:
        names: list[str] = []
        for group in lets:
            for name in group.names:
                ty = self.resolver.type_expr(group.ty)
                self.scope.loci[name] = len(self.loci_types)
                self.loci_types.append(ty)
                names.append(name)
        return names

    def _close_loci(self, f: Formula, types: list[TypeExpr]) -> Formula:
        bs = tuple(bound(i) for i in range(len(types)))
        body = subst_loci(f, bs)
        for i in range(len(types) - 1, -1, -1):
            body = ForAll(subst_loci_type(types[i], bs), body)
        return body

    def _locus_args(self, arity: int) -> tuple[Term, ...]:
        return tuple(locus(i) for i in range(arity))

    def _definition(self, it: ItDefinition) -> None:
        saved_loci = dict(self.scope.loci)
        saved_types = list(self.loci_types)
        self.scope.loci = {}
        self.loci_types = []
        try:
            names = self._loci(it.lets)
            match it.body:
                case DefAttr():
                    needed = self._def_attr(it.body, names, it.pos)
                case DefMode():
                    needed = self._def_mode(it.body, names, it.pos)
                case DefFunc():
                    needed = self._def_func(it.body, names, it.pos)
                case DefPred():
                    needed = self._def_pred(it.body, names, it.pos)
                case _:
                    raise AssertionError(it.body)
            self._correctness(it, needed)
        finally:
            self.scope.loci = saved_loci
            self.loci_types = saved_types

    def _correctness(self, it, needed: dict[str, Formula]) -> None:
        for sc in it.correctness:
            goal = needed.pop(sc.kind, None)
            if goal is None:
                self.errors.append(VerifyError(sc.pos, 51))
                continue
            self.justify(goal, sc.just, sc.pos)
        for _kind in needed:
            self.errors.append(VerifyError(it.pos, 70))

    def _def_attr(self, body: DefAttr, names: list[str], pos: SourcePos) -> dict:
        arity = len(names) - 1
        if arity < 0 or names[-1] != body.subject:
            raise MizarError(pos, 90, "the subject must be the last locus")
        expected = 1 if body.arg is not None else 0
        if arity != expected:
            raise MizarError(pos, 92, "attribute arguments must match the loci")
        if body.arg is not None and names[0] != body.arg:
            raise MizarError(pos, 90, "the visible argument must be the first locus")
        definiens = self._resolve(body.definiens)
        aid = self.db.fresh_id("attr")
        self.db.attrs[aid] = AttrDef(arity, self.loci_types[arity], definiens, body.expandable)
        self.scope.attr_names[body.name] = (aid, arity)
        if body.def_label:
            head = Is(locus(arity), Attr(True, aid, self._locus_args(arity)))
            fact = self._close_loci(mk_iff(head, definiens), self.loci_types)
            self._bind(body.def_label, fact, pos)
        return {}

    def _def_mode(self, body: DefMode, names: list[str], pos: SourcePos) -> dict:
        if tuple(names) != body.args:
            raise MizarError(pos, 90, "mode arguments must match the loci")
        arity = len(names)
        if arity > 1:
            raise MizarError(pos, 92, "a mode takes at most one argument")
        parent = self.resolver.type_expr(body.parent)
        definiens = None
        if body.definiens is not None:
            saved, self.scope.it_term = self.scope.it_term, locus(arity)
            try:
                definiens = self._resolve(body.definiens)
            finally:
                self.scope.it_term = saved
        mid = self.db.fresh_id("mode")
        self.db.modes[mid] = ModeDef(arity, parent, definiens, body.expandable)
        self.scope.mode_names[body.name] = (mid, arity)
        mode_ty = TypeExpr(frozenset(), frozenset(), mid, self._locus_args(arity))
        needed: dict[str, Formula] = {}
        if definiens is not None:
            inner = subst_loci(definiens, self._locus_args(arity) + (bound(arity),))
            needed["existence"] = self._close_loci(mk_exists(parent, inner), self.loci_types)
            if body.def_label:
                fact = mk_iff(Qual(locus(arity), mode_ty), definiens)
                self._bind(
                    body.def_label,
                    self._close_loci(fact, self.loci_types + [parent]),
                    pos,
                )
        elif body.def_label:
            fact = mk_imp(Qual(locus(arity), mode_ty), Qual(locus(arity), parent))
            self._bind(body.def_label, self._close_loci(fact, self.loci_types + [parent]), pos)
        return needed

    def _def_func(self, body: DefFunc, names: list[str], pos: SourcePos) -> dict:
        if tuple(names) != body.args:
            raise MizarError(pos, 90, "functor arguments must match the loci")
        arity = len(names)
        result = self.resolver.type_expr(body.result)
        args = self._locus_args(arity)
        needed: dict[str, Formula] = {}
        if body.equals is not None:
            term = self.resolver.term(body.equals)
            fid = self.db.fresh_id("func")
            self.db.funcs[fid] = FuncDef(arity, result, term, None)
            needed["coherence"] = self._close_loci(Qual(term, result), self.loci_types)
            fact = Pred(self._eq_pred(pos), (FunctorApp(fid, args), term))
        else:
            saved, self.scope.it_term = self.scope.it_term, locus(arity)
            try:
                definiens = self._resolve(body.means)
            finally:
                self.scope.it_term = saved
            fid = self.db.fresh_id("func")
            self.db.funcs[fid] = FuncDef(arity, result, None, definiens)
            inner = subst_loci(definiens, args + (bound(arity),))
            needed["existence"] = self._close_loci(mk_exists(result, inner), self.loci_types)
            eq = self._eq_pred(pos)
            second = subst_loci(definiens, args + (locus(arity + 1),))
            same = Pred(eq, (locus(arity), locus(arity + 1)))
            needed["uniqueness"] = self._close_loci(
                mk_imp(mk_and([definiens, second]), same),
                self.loci_types + [result, result],
            )
            fact = subst_loci(definiens, args + (FunctorApp(fid, args),))
        self.scope.func_names[(body.name, arity)] = fid
        if body.def_label:
            self._bind(body.def_label, self._close_loci(fact, self.loci_types), pos)
        return needed

    def _def_pred(self, body: DefPred, names: list[str], pos: SourcePos) -> dict:
        if tuple(names) != body.args:
            raise MizarError(pos, 90, "predicate arguments must match the loci")
        arity = len(names)
        definiens = self._resolve(body.definiens)
        pid = self.db.fresh_id("pred")
        self.db.preds[pid] = PredDef(arity, definiens, body.expandable)
        self.scope.pred_names[(body.name, arity)] = pid
        if body.def_label:
            fact = mk_iff(Pred(pid, self._locus_args(arity)), definiens)
            self._bind(body.def_label, self._close_loci(fact, self.loci_types), pos)
        return {}

    # -- cluster registrations ----------------------------------------------------

    def _registration(self, it: ItRegistration) -> None:
        if it.lets:
            raise MizarError(it.pos, 90, "cluster registrations take no parameters")
        match it.body:
            case RegExistential():
                ty = self.resolver.type_expr(it.body.ty)
                base = self.db.round_up(TypeExpr(frozenset(), frozenset(), ty.mode, ty.args))
                goal = mk_exists(
                    base, mk_and([mk_is(bound(0), a) for a in sorted_attrs(ty.lower)])
                )
                self._correctness(it, {"existence": goal})
                self.db.existential.append(ExistentialCluster(ty.lower, base))
            case RegFunctor():
                t = self.resolver.term(it.body.term)
                attrs = frozenset(self.resolver.adjective(a) for a in it.body.adjs)
                goal = mk_and([mk_is(t, a) for a in sorted_attrs(attrs)])
                self._correctness(it, {"coherence": goal})
                self.db.functor_clusters.append(FunctorCluster(t, attrs))
            case RegConditional():
                guard = frozenset(self.resolver.adjective(a) for a in it.body.guard)
                target = frozenset(self.resolver.adjective(a) for a in it.body.target)
                ty = self.resolver.type_expr(it.body.ty)
                subject = self.db.round_up(
                    TypeExpr(ty.lower | guard, ty.upper | guard, ty.mode, ty.args)
                )
                goal = ForAll(
                    subject, mk_and([mk_is(bound(0), a) for a in sorted_attrs(target)])
                )
                self._correctness(it, {"coherence": goal})
                self.db.conditional.append(ConditionalCluster(guard, target, ty))
            case _:
                raise AssertionError(it.body)

    # -- term typing --------------------------------------------------------------

    def type_of(self, t: Term) -> TypeExpr:
        req, db = self.req, self.db
        match t:
            case Var(VarKind.CONST, i):
                return self.ctypes.get(i, req.set_type())
            case Var(VarKind.LOCUS, i):
                if i < len(self.loci_types):
                    return self.loci_types[i]
                return req.set_type()
            case Numeral(v):
                base = req.numeral_type()
                extra = []
                if v == 0 and req.present("ZeroAttr"):
                    extra.append(Attr(True, req.require("ZeroAttr")))
                if v > 0 and req.present("Positive"):
                    extra.append(Attr(True, req.require("Positive")))
                if extra:
                    more = frozenset(extra)
                    base = TypeExpr(base.lower | more, base.upper | more, base.mode, base.args)
                return db.round_up(base)
            case FunctorApp(_, _):
                ty = db.result_type(t.func, t.args)
                for fc in db.functor_clusters:
                    if fc.term == t:
                        ty = TypeExpr(
                            ty.lower | fc.attrs, ty.upper | fc.attrs, ty.mode, ty.args
                        )
                return db.round_up(ty)
            case PrivFunc(_, _, exp):
                return self.type_of(exp)
            case SchemeFunctorApp(fid, _):
                return self.scheme_results.get(fid, req.set_type())
            case Choice(ty):
                return ty
            case Fraenkel():
                return req.set_type()
            case Var(_, _):
                return req.set_type()
        raise TypeError(t)
