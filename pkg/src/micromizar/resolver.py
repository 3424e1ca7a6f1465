"""Name resolution: surface trees to kernel formulas.

The scope carries four constructor name tables (attributes, modes,
functors, predicates), the proof-local bindings (fixed constants, loci,
private definitions, scheme placeholders), and the current stack of
quantified variable names.  Bound variables are absolute levels: the
name's index in the stack is its level, so nothing is renumbered when
the stack grows.

Builtin spellings route through the requirement table; using one whose
group is switched off is error 95, a name nobody defined is 91, and an
arity that disagrees with the declaration is 92.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MizarError
from .flex import MalformedFlex, NonNumericBound, NoCommonShape, infer_flex_from_diff
from .logic import (
    Attr,
    Choice,
    FlexAnd,
    ForAll,
    Formula,
    Fraenkel,
    FunctorApp,
    FTrue,
    Neg,
    Numeral,
    Pred,
    PrivFunc,
    PrivPred,
    Qual,
    Is,
    SchemeFunctorApp,
    SchemePred,
    Term,
    ThesisMarker,
    TypeExpr,
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
    shift_term,
    shift_up,
    subst_loci,
    subst_loci_term,
)
from .requirements import RequirementTable
from .subtyping import DefinitionDb
from .surface import (
    SAdj,
    SAnd,
    SApp,
    SBinders,
    SBracketAtom,
    SContradiction,
    SDollar,
    SExists,
    SFlex,
    SForAll,
    SFormula,
    SFraenkel,
    SIff,
    SImplies,
    SIs,
    SNot,
    SNum,
    SOr,
    SPredAtom,
    SQual,
    STerm,
    SThe,
    SThesis,
    SType,
    SVar,
)

BUILTIN_PREDS = {
    ("=", 2): "Equality",
    ("in", 2): "Membership",
    ("c=", 2): "Subset",
    ("<=", 2): "LessOrEqual",
    ("meets", 2): "Meets",
}

BUILTIN_FUNCS = {
    ("+", 2): "Add",
    ("*", 2): "Mul",
    ("-", 2): "Sub",
    ("-", 1): "Neg",
    ("/", 2): "Div",
    ('"', 1): "Inv",
    ("succ", 1): "Succ",
    ("bool", 1): "PowerSet",
    ("{}", 0): "EmptySet",
    ("<i>", 0): "ImaginaryUnit",
    ("NAT", 0): "NatSet",
    ("\\/", 2): "Union",
    ("/\\", 2): "Intersection",
    ("\\", 2): "Difference",
    ("\\+\\", 2): "SymDiff",
}

BUILTIN_ATTRS = {
    "empty": "Empty",
    "natural": "Natural",
    "zero": "ZeroAttr",
    "positive": "Positive",
    "negative": "Negative",
    "complex": "Complex",
}

BUILTIN_MODES = {
    "object": ("Object", 0),
    "set": ("Set", 0),
    "Element": ("Element", 1),
    "Subset": ("SubsetMode", 1),
}


@dataclass
class PrivDef:
    ident: int
    arg_types: tuple[TypeExpr, ...]
    body: Term | Formula


@dataclass
class Scope:
    """Everything a name can currently mean."""

    req: RequirementTable
    db: DefinitionDb
    attr_names: dict[str, tuple[int, int]] = field(default_factory=dict)
    mode_names: dict[str, tuple[int, int]] = field(default_factory=dict)
    func_names: dict[tuple[str, int], int] = field(default_factory=dict)
    pred_names: dict[tuple[str, int], int] = field(default_factory=dict)
    consts: dict[str, tuple[int, TypeExpr]] = field(default_factory=dict)
    loci: dict[str, int] = field(default_factory=dict)
    bound_names: list[str] = field(default_factory=list)
    priv_funcs: dict[str, PrivDef] = field(default_factory=dict)
    priv_preds: dict[str, PrivDef] = field(default_factory=dict)
    scheme_funcs: dict[str, tuple[int, tuple[TypeExpr, ...], TypeExpr]] = field(
        default_factory=dict
    )
    scheme_preds: dict[str, tuple[int, tuple[TypeExpr, ...]]] = field(default_factory=dict)
    dollar_types: tuple[TypeExpr, ...] | None = None
    it_term: Term | None = None
    thesis_ok: bool = False
    next_const: int = 0
    next_priv: dict[str, int] = field(default_factory=lambda: {"func": 0, "pred": 0})

    def fresh_const(self) -> int:
        out = self.next_const
        self.next_const = out + 1
        return out

    def fresh_priv(self, kind: str) -> int:
        out = self.next_priv[kind]
        self.next_priv[kind] = out + 1
        return out

    def block_mark(self):
        return (
            dict(self.consts),
            dict(self.priv_funcs),
            dict(self.priv_preds),
            self.next_const,
        )

    def block_reset(self, mark) -> None:
        self.consts, self.priv_funcs, self.priv_preds, self.next_const = (
            dict(mark[0]),
            dict(mark[1]),
            dict(mark[2]),
            mark[3],
        )


class Resolver:
    def __init__(self, scope: Scope):
        self.scope = scope
        self.req = scope.req
        self.db = scope.db

    def _require(self, name: str, pos, spelling: str) -> int:
        cid = self.req.cid(name)
        if cid is None:
            raise MizarError(pos, 95, f"{spelling!r} needs an absent requirement")
        return cid

    # -- terms -----------------------------------------------------------

    def term(self, s: STerm) -> Term:
        sc = self.scope
        match s:
            case SNum(_, v):
                return Numeral(v)
            case SDollar(pos, i):
                if sc.dollar_types is None:
                    raise MizarError(pos, 91, "placeholder argument outside a definition body")
                if not 1 <= i <= len(sc.dollar_types):
                    raise MizarError(pos, 92, f"this definition has {len(sc.dollar_types)} arguments")
                return locus(i - 1)
            case SVar(pos, name):
                return self.name_term(name, pos)
            case SApp(pos, name, args):
                return self.apply(name, tuple(self.term(a) for a in args), pos)
            case SThe(pos, sty):
                ty = self.type_expr(sty)
                # a choice term denotes some member, so the type must be
                # known non-empty; quantifying over an empty type is fine
                if not self.db.inhabited(ty):
                    raise MizarError(pos, 53)
                return Choice(ty)
            case SFraenkel(_, body, binders, guard):
                tys, names = self._binder_types(binders)
                sc.bound_names.extend(names)
                try:
                    b = self.term(body)
                    g = self.formula(guard)
                finally:
                    del sc.bound_names[len(sc.bound_names) - len(names) :]
                return Fraenkel(tuple(tys), b, g)
        raise AssertionError(f"unhandled term {s!r}")

    def name_term(self, name: str, pos) -> Term:
        sc = self.scope
        if name == "it":
            if sc.it_term is None:
                raise MizarError(pos, 91, "'it' is only available inside a definiens")
            return sc.it_term
        for lvl in range(len(sc.bound_names) - 1, -1, -1):
            if sc.bound_names[lvl] == name:
                return bound(lvl)
        if name in sc.consts:
            return const(sc.consts[name][0])
        if name in sc.loci:
            return locus(sc.loci[name])
        return self.apply(name, (), pos)

    def apply(self, name: str, args: tuple[Term, ...], pos) -> Term:
        sc = self.scope
        if name in sc.priv_funcs:
            d = sc.priv_funcs[name]
            if len(args) != len(d.arg_types):
                raise MizarError(pos, 92, f"{name} takes {len(d.arg_types)} arguments")
            # body binders sit at level 0; lift them past the binders
            # enclosing the use site before plugging in the arguments
            body = shift_term(d.body, len(sc.bound_names))
            return PrivFunc(d.ident, args, subst_loci_term(body, args))
        if name in sc.scheme_funcs:
            fid, tys, _ = sc.scheme_funcs[name]
            if len(args) != len(tys):
                raise MizarError(pos, 92, f"{name} takes {len(tys)} arguments")
            return SchemeFunctorApp(fid, args)
        if (name, len(args)) in sc.func_names:
            return FunctorApp(sc.func_names[(name, len(args))], args)
        builtin = BUILTIN_FUNCS.get((name, len(args)))
        if builtin is not None:
            return FunctorApp(self._require(builtin, pos, name), args)
        if any(key[0] == name for key in BUILTIN_FUNCS) or any(
            key[0] == name for key in sc.func_names
        ):
            raise MizarError(pos, 92, f"no version of {name} takes {len(args)} arguments")
        raise MizarError(pos, 91, f"unknown identifier {name!r}")

    # -- types ----------------------------------------------------------------

    def adjective(self, s: SAdj) -> Attr:
        sc = self.scope
        args: tuple[Term, ...] = () if s.arg is None else (self.term(s.arg),)
        if s.name in sc.attr_names:
            aid, arity = sc.attr_names[s.name]
            if len(args) != arity:
                raise MizarError(s.pos, 92, f"adjective {s.name} takes {arity} arguments")
            return Attr(s.positive, aid, args)
        builtin = BUILTIN_ATTRS.get(s.name)
        if builtin is not None:
            if args:
                raise MizarError(s.pos, 92, f"adjective {s.name} takes no arguments")
            return Attr(s.positive, self._require(builtin, s.pos, s.name))
        raise MizarError(s.pos, 91, f"unknown adjective {s.name!r}")

    def _rounded(self, raw: TypeExpr, pos) -> TypeExpr:
        """Close a written type under the clusters and reject contradictions.

        A spelled-out type whose upward closure asserts some adjective both
        ways ("positive negative Nat") denotes nothing; letting it through
        would hand every proof a vacuously typed variable.
        """
        ty = self.db.round_up(raw)
        signs: dict[tuple[int, tuple[Term, ...]], bool] = {}
        for a in ty.upper:
            key = (a.attr_id, a.args)
            if signs.setdefault(key, a.positive) != a.positive:
                raise MizarError(pos, 52, "contradictory adjectives on one type")
        return ty

    def type_expr(self, s: SType) -> TypeExpr:
        sc = self.scope
        attrs = frozenset(self.adjective(a) for a in s.adjs)
        args: tuple[Term, ...] = () if s.arg is None else (self.term(s.arg),)
        if s.mode == "Nat":
            if args:
                raise MizarError(s.pos, 92, "Nat takes no arguments")
            self._require("Natural", s.pos, "Nat")
            base = self.req.nat_type()
            raw = TypeExpr(attrs | base.lower, attrs | base.upper, base.mode, base.args)
            return self._rounded(raw, s.pos)
        if s.mode in sc.mode_names:
            mid, arity = sc.mode_names[s.mode]
            if len(args) != arity:
                raise MizarError(s.pos, 92, f"mode {s.mode} takes {arity} arguments")
            return self._rounded(TypeExpr(attrs, attrs, mid, args), s.pos)
        builtin = BUILTIN_MODES.get(s.mode)
        if builtin is not None:
            name, arity = builtin
            if len(args) != arity:
                raise MizarError(s.pos, 92, f"mode {s.mode} takes {arity} arguments")
            return self._rounded(
                TypeExpr(attrs, attrs, self._require(name, s.pos, s.mode), args), s.pos
            )
        raise MizarError(s.pos, 91, f"unknown mode {s.mode!r}")

    def _binder_types(self, binders: tuple[SBinders, ...]) -> tuple[list[TypeExpr], list[str]]:
        """Types and names in binding order.

        Types are resolved left to right with earlier binders already in
        scope, so a later group's type may mention an earlier variable.
        """
        tys: list[TypeExpr] = []
        names: list[str] = []
        sc = self.scope
        added = 0
        try:
            for group in binders:
                for name in group.names:
                    tys.append(self.type_expr(group.ty))
                    sc.bound_names.append(name)
                    names.append(name)
                    added += 1
        finally:
            del sc.bound_names[len(sc.bound_names) - added :]
        return tys, names

    # -- formulas ---------------------------------------------------------------

    def formula(self, s: SFormula) -> Formula:
        sc = self.scope
        match s:
            case SContradiction(_):
                return Neg(FTrue())
            case SThesis(pos):
                if not sc.thesis_ok:
                    raise MizarError(pos, 51, "'thesis' has no meaning here")
                return ThesisMarker()
            case SNot(_, body):
                return mk_neg(self.formula(body))
            case SAnd(_, parts):
                return mk_and([self.formula(p) for p in parts])
            case SOr(_, parts):
                return mk_or([self.formula(p) for p in parts])
            case SImplies(_, a, b):
                return mk_imp(self.formula(a), self.formula(b))
            case SIff(_, a, b):
                return mk_iff(self.formula(a), self.formula(b))
            case SFlex(pos, left, right):
                return self._flex(pos, left, right)
            case SForAll(_, binders, guard, body):
                tys, names = self._binder_types(binders)
                sc.bound_names.extend(names)
                try:
                    inner = self.formula(body)
                    if guard is not None:
                        inner = mk_imp(self.formula(guard), inner)
                finally:
                    del sc.bound_names[len(sc.bound_names) - len(names) :]
                for ty in reversed(tys):
                    inner = ForAll(ty, inner)
                return inner
            case SExists(_, binders, body):
                tys, names = self._binder_types(binders)
                sc.bound_names.extend(names)
                try:
                    inner = self.formula(body)
                finally:
                    del sc.bound_names[len(sc.bound_names) - len(names) :]
                for ty in reversed(tys):
                    inner = mk_exists(ty, inner)
                return inner
            case SPredAtom(pos, name, sargs):
                return self.pred_atom(pos, name, sargs)
            case SBracketAtom(pos, name, sargs):
                return self.bracket_atom(pos, name, sargs)
            case SIs(pos, sterm, adjs):
                return self.is_clause(pos, sterm, adjs)
            case SQual(_, sterm, sty):
                return Qual(self.term(sterm), self.type_expr(sty))
        raise AssertionError(f"unhandled formula {s!r}")

    def _flex(self, pos, left: SFormula, right: SFormula) -> Formula:
        lo = self.formula(left)
        hi = self.formula(right)
        try:
            fc = infer_flex_from_diff(lo, hi, self.req, depth=len(self.scope.bound_names))
        except MalformedFlex as e:
            raise MizarError(pos, 95, str(e)) from None
        except (NoCommonShape, NonNumericBound) as e:
            raise MizarError(pos, 94, str(e)) from None
        return FlexAnd(fc)

    def pred_atom(self, pos, name: str, sargs) -> Formula:
        args = tuple(self.term(a) for a in sargs)
        match name:
            case "=":
                return Pred(self._require("Equality", pos, "="), args)
            case "<>":
                return mk_neg(Pred(self._require("Equality", pos, "="), args))
            case "<=":
                return Pred(self._require("LessOrEqual", pos, "<="), args)
            case ">=":
                return Pred(self._require("LessOrEqual", pos, ">="), (args[1], args[0]))
            case "<":
                le = self._require("LessOrEqual", pos, "<")
                eq = self._require("Equality", pos, "<")
                return mk_and([Pred(le, args), mk_neg(Pred(eq, args))])
            case ">":
                le = self._require("LessOrEqual", pos, ">")
                eq = self._require("Equality", pos, ">")
                back = (args[1], args[0])
                return mk_and([Pred(le, back), mk_neg(Pred(eq, back))])
            case "in":
                return Pred(self._require("Membership", pos, "in"), args)
            case "c=":
                return Pred(self._require("Subset", pos, "c="), args)
            case "meets":
                return Pred(self._require("Meets", pos, "meets"), args)
        sc = self.scope
        if (name, len(args)) in sc.pred_names:
            return Pred(sc.pred_names[(name, len(args))], args)
        if name in sc.priv_preds or name in sc.scheme_preds:
            raise MizarError(pos, 90, f"{name} is used with brackets")
        if any(key[0] == name for key in sc.pred_names):
            raise MizarError(pos, 92, f"no version of {name} takes {len(args)} arguments")
        if not args:
            # a bare identifier that resolves to nothing pred-like may
            # still be a nullary functor used as a malformed formula
            raise MizarError(pos, 91, f"unknown identifier {name!r}")
        raise MizarError(pos, 91, f"unknown predicate {name!r}")

    def bracket_atom(self, pos, name: str, sargs) -> Formula:
        sc = self.scope
        args = tuple(self.term(a) for a in sargs)
        if name in sc.priv_preds:
            d = sc.priv_preds[name]
            if len(args) != len(d.arg_types):
                raise MizarError(pos, 92, f"{name} takes {len(d.arg_types)} arguments")
            body = shift_up(d.body, len(sc.bound_names))
            return PrivPred(d.ident, args, subst_loci(body, args))
        if name in sc.scheme_preds:
            pid, tys = sc.scheme_preds[name]
            if len(args) != len(tys):
                raise MizarError(pos, 92, f"{name} takes {len(tys)} arguments")
            return SchemePred(pid, args)
        raise MizarError(pos, 91, f"unknown private predicate {name!r}")

    def is_clause(self, pos, sterm: STerm, adjs: tuple[SAdj, ...]) -> Formula:
        t = self.term(sterm)
        sc = self.scope
        last = adjs[-1]
        mode_tail = None
        if last.positive and last.arg is None:
            if last.name in sc.mode_names or last.name in BUILTIN_MODES or last.name == "Nat":
                if last.name not in sc.attr_names and last.name not in BUILTIN_ATTRS:
                    mode_tail = SType(last.pos, adjs[:-1], last.name, None)
        if mode_tail is not None:
            return Qual(t, self.type_expr(mode_tail))
        return mk_and([mk_is(t, self.adjective(a)) for a in adjs])
