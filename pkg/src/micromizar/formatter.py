"""Rendering internal formulas back into readable text.

The core language stores everything negation-normally with de Bruijn
levels, which is the worst possible shape for a human reading a debug
trace.  This module undoes both: bound variables print as b0, b1, ...
by level, and negations are pushed back out into implication and
disjunction sugar.  A negated conjunction whose trailing conjuncts are
themselves negated prints as "A ∧ B → C ∨ D"; a negated universal
prints as an existential.

Spellings come from the live name tables, so user-defined functors and
attributes print the way the article wrote them.  Anything without a
spelling falls back to an indexed form (K7, R4, V2, M1) so distinct
constructors never collide.

Levels are absolute, so bound(i) always prints as b{base+i} no matter
where it sits; `depth` (the number of binders enclosing the point being
rendered) is threaded only to name freshly introduced binders.  `base`
shifts the whole naming scheme up, used when a clause's outer binders
were already skolemized away and their constants print as b0..b{k-1}.
"""

from __future__ import annotations

from .logic import (
    And,
    Attr,
    Choice,
    FlexAnd,
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
    PrivPred,
    Qual,
    SchemeFunctorApp,
    SchemePred,
    Term,
    ThesisMarker,
    TypeExpr,
    Var,
    VarKind,
    sorted_attrs,
)

# builtin constructor spellings, keyed by requirement name
_INFIX_FUNCS = {
    "Add": "+",
    "Mul": "*",
    "Sub": "-",
    "Div": "/",
    "Union": "\\/",
    "Intersection": "/\\",
    "Difference": "\\",
    "SymDiff": "\\+\\",
}
_PREFIX_FUNCS = {"Succ": "succ", "PowerSet": "bool", "Neg": "-"}
_ATOM_FUNCS = {"EmptySet": "{}", "NatSet": "NAT", "ImaginaryUnit": "<i>", "Zero": "0"}
_INFIX_PREDS = {
    "Equality": "=",
    "Membership": "in",
    "Subset": "c=",
    "LessOrEqual": "<=",
    "Meets": "meets",
}
_ATTRS = {
    "Empty": "empty",
    "Natural": "natural",
    "ZeroAttr": "zero",
    "Positive": "positive",
    "Negative": "negative",
    "Complex": "complex",
}

WIDTH = 78


class Formatter:
    """Stateless renderer over a live resolution scope.

    ``names`` maps constant indices to display names (used to show
    skolem constants as the bound variables they stand for); any
    constant not in the map prints as cN.
    """

    def __init__(self, scope):
        self.scope = scope
        self.req = scope.req

    # -- spelling lookups (live: definitions added later still resolve) --

    def _func_spelling(self, fid: int) -> tuple[str, str]:
        for (name, _arity), ident in self.scope.func_names.items():
            if ident == fid:
                return "plain", name
        for rname, op in _INFIX_FUNCS.items():
            if self.req.cid(rname) == fid:
                return "infix", op
        for rname, op in _PREFIX_FUNCS.items():
            if self.req.cid(rname) == fid:
                return "prefix", op
        for rname, op in _ATOM_FUNCS.items():
            if self.req.cid(rname) == fid:
                return "atom", op
        if self.req.cid("Inv") == fid:
            return "postfix", '"'
        return "indexed", f"K{fid}"

    def _pred_spelling(self, pid: int) -> tuple[str, str]:
        for (name, _arity), ident in self.scope.pred_names.items():
            if ident == pid:
                return "plain", name
        for rname, op in _INFIX_PREDS.items():
            if self.req.cid(rname) == pid:
                return "infix", op
        return "indexed", f"R{pid}"

    def _attr_spelling(self, aid: int) -> str:
        for name, (ident, _arity) in self.scope.attr_names.items():
            if ident == aid:
                return name
        for rname, spelling in _ATTRS.items():
            if self.req.cid(rname) == aid:
                return spelling
        return f"V{aid}"

    def _mode_spelling(self, mid: int) -> str:
        for name, (ident, _arity) in self.scope.mode_names.items():
            if ident == mid:
                return name
        for rname, spelling in (
            ("Object", "object"),
            ("Set", "set"),
            ("Element", "Element"),
            ("SubsetMode", "Subset"),
        ):
            if self.req.cid(rname) == mid:
                return spelling
        return f"M{mid}"

    # -- terms ----------------------------------------------------------

    def format_term(
        self, t: Term, names: dict[int, str] | None = None, base: int = 0, depth: int = 0
    ) -> str:
        return self._term(t, names or {}, base, depth)

    def _term(self, t: Term, names, base: int, depth: int) -> str:
        match t:
            case Var(VarKind.BOUND, i):
                return f"b{base + i}"
            case Var(VarKind.CONST, i):
                return names.get(i, f"c{i}")
            case Var(VarKind.LOCUS, i):
                return f"${i + 1}"
            case Var(_, i):
                return f"?{i}"
            case Numeral(v):
                return str(v)
            case FunctorApp(fid, args):
                kind, op = self._func_spelling(fid)
                parts = [self._term(a, names, base, depth) for a in args]
                if kind == "infix" and len(parts) == 2:
                    return f"({parts[0]} {op} {parts[1]})"
                if kind == "prefix" and len(parts) == 1:
                    return f"({op} {parts[0]})"
                if kind == "postfix" and len(parts) == 1:
                    return f"({parts[0]} {op})"
                if not parts:
                    return op
                return f"{op}({', '.join(parts)})"
            case PrivFunc(fid, args, _):
                parts = ", ".join(self._term(a, names, base, depth) for a in args)
                return f"H{fid}({parts})"
            case SchemeFunctorApp(fid, args):
                parts = ", ".join(self._term(a, names, base, depth) for a in args)
                return f"F{fid}({parts})"
            case Choice(ty):
                return f"the {self._type(ty, names, base, depth)}"
            case Fraenkel(binders, body, guard):
                bs = ", ".join(
                    f"b{base + depth + i}: {self._type(ty, names, base, depth + i)}"
                    for i, ty in enumerate(binders)
                )
                inner = depth + len(binders)
                return (
                    "{ "
                    + self._term(body, names, base, inner)
                    + f" where {bs} : "
                    + self._fmt(guard, names, base, inner)
                    + " }"
                )
        raise TypeError(t)

    def _fmt_attr(self, a: Attr, names, base, depth) -> str:
        sign = "" if a.positive else "non "
        arg = f"{self._term(a.args[0], names, base, depth)}-" if a.args else ""
        return f"{sign}{arg}{self._attr_spelling(a.attr_id)}"

    def format_type(
        self, ty: TypeExpr, names: dict[int, str] | None = None, base: int = 0, depth: int = 0
    ) -> str:
        return self._type(ty, names or {}, base, depth)

    def _type(self, ty: TypeExpr, names, base: int, depth: int) -> str:
        attrs = [self._fmt_attr(a, names, base, depth) for a in sorted_attrs(ty.lower)]
        mode = self._mode_spelling(ty.mode)
        if ty.args:
            args = ", ".join(self._term(t, names, base, depth) for t in ty.args)
            mode = f"{mode} of {args}"
        return " ".join(attrs + [mode])

    # -- formulas ---------------------------------------------------------

    def format_formula(
        self, f: Formula, names: dict[int, str] | None = None, base: int = 0, depth: int = 0
    ) -> str:
        return self._fmt(f, names or {}, base, depth)

    def _collect_foralls(self, f: Formula) -> tuple[list[TypeExpr], Formula]:
        tys: list[TypeExpr] = []
        while isinstance(f, ForAll):
            tys.append(f.ty)
            f = f.body
        return tys, f

    def _binder_list(self, tys: list[TypeExpr], names, base: int, depth: int) -> str:
        return ", ".join(
            f"b{base + depth + i}: {self._type(ty, names, base, depth + i)}"
            for i, ty in enumerate(tys)
        )

    def _fmt(self, f: Formula, names, base: int, depth: int) -> str:
        match f:
            case FTrue():
                return "⊤"
            case ThesisMarker():
                return "thesis"
            case Neg(FTrue()):
                return "⊥"
            case Neg(ForAll() as body):
                tys, tail = self._collect_foralls(body)
                inner = depth + len(tys)
                if isinstance(tail, Neg):
                    rendered = self._fmt(tail.body, names, base, inner)
                else:
                    rendered = "¬" + self._fmt(tail, names, base, inner)
                return f"(∃ {self._binder_list(tys, names, base, depth)} st {rendered})"
            case Neg(And(cs)):
                m = 0
                while m < len(cs) and isinstance(cs[len(cs) - 1 - m], Neg):
                    m += 1
                if m == len(cs):
                    return (
                        "("
                        + " ∨ ".join(self._fmt(c.body, names, base, depth) for c in cs)
                        + ")"
                    )
                if m == 0:
                    lhs, rhs = cs[:-1], ["¬" + self._fmt(cs[-1], names, base, depth)]
                else:
                    lhs = cs[:-m]
                    rhs = [self._fmt(c.body, names, base, depth) for c in cs[-m:]]
                left = " ∧ ".join(self._fmt(c, names, base, depth) for c in lhs)
                return f"({left} → {' ∨ '.join(rhs)})"
            case Neg(b):
                return "¬" + self._fmt(b, names, base, depth)
            case And(cs):
                return "(" + " ∧ ".join(self._fmt(c, names, base, depth) for c in cs) + ")"
            case ForAll():
                tys, tail = self._collect_foralls(f)
                inner = depth + len(tys)
                return (
                    f"(∀ {self._binder_list(tys, names, base, depth)} st "
                    + self._fmt(tail, names, base, inner)
                    + ")"
                )
            case FlexAnd(fx):
                lo = self._fmt(fx.inst_lo, names, base, depth)
                hi = self._fmt(fx.inst_hi, names, base, depth)
                return f"({lo} ∧ ... ∧ {hi})"
            case Pred(pid, args):
                kind, op = self._pred_spelling(pid)
                parts = [self._term(a, names, base, depth) for a in args]
                if kind == "infix" and len(parts) == 2:
                    return f"({parts[0]} {op} {parts[1]})"
                if not parts:
                    return op
                return f"{op}({', '.join(parts)})"
            case SchemePred(pid, args):
                parts = ", ".join(self._term(a, names, base, depth) for a in args)
                return f"P{pid}[{parts}]"
            case PrivPred(pid, args, _):
                parts = ", ".join(self._term(a, names, base, depth) for a in args)
                return f"S{pid}[{parts}]"
            case Is(t, a):
                return (
                    f"({self._term(t, names, base, depth)} is "
                    + self._fmt_attr(a, names, base, depth)
                    + ")"
                )
            case Qual(t, ty):
                return (
                    f"({self._term(t, names, base, depth)} is "
                    + self._type(ty, names, base, depth)
                    + ")"
                )
        raise TypeError(f)

    # -- multi-line layout for the debug trace -----------------------------

    def _conjunction_lines(self, parts: list[str], indent: int) -> list[str]:
        pad = " " * indent
        inline = pad + " ∧ ".join(parts)
        if len(inline) <= WIDTH:
            return [inline]
        lines = [pad + parts[0] + " ∧"]
        deeper = " " * (indent + 2)
        for p in parts[1:-1]:
            lines.append(deeper + p + " ∧")
        lines.append(deeper + parts[-1])
        return lines

    def _block(self, f: Formula, names, base: int, indent: int, header_prefix: str) -> list[str]:
        """∃-header plus conjunction body, the shape both trace entries use."""
        if isinstance(f, Neg) and isinstance(f.body, ForAll):
            tys, tail = self._collect_foralls(f.body)
            inner = len(tys)
            if isinstance(tail, Neg):
                body = tail.body
                conjuncts = list(body.conjuncts) if isinstance(body, And) else [body]
                parts = [self._fmt(c, names, base, inner) for c in conjuncts]
            else:
                parts = ["¬" + self._fmt(tail, names, base, inner)]
            header = f"∃ {self._binder_list(tys, names, base, 0)} st"
            return [header_prefix + header] + self._conjunction_lines(parts, indent + 2)
        conjuncts = list(f.conjuncts) if isinstance(f, And) else [f]
        parts = [self._fmt(c, names, base, 0) for c in conjuncts]
        joined = header_prefix + " ∧ ".join(parts)
        if len(joined) <= WIDTH:
            return [joined]
        return [header_prefix.rstrip()] + self._conjunction_lines(parts, indent + 2)

    def trace_input(self, negated_goal: Formula) -> list[str]:
        return self._block(negated_goal, {}, 0, 0, "input: ")

    def trace_refuting(
        self,
        index: int,
        where: str,
        f: Formula,
        skolems: list[tuple[int, TypeExpr]],
    ) -> list[str]:
        names = {cid: f"b{i}" for i, (cid, _ty) in enumerate(skolems)}
        base = len(skolems)
        lines = [f"refuting {index} @ {where}:"]
        conjuncts = list(f.conjuncts) if isinstance(f, And) else [f]
        parts = [self._fmt(c, names, base, 0) for c in conjuncts]
        if skolems:
            binders = ", ".join(
                f"b{i}: {self._type(ty, names, base, 0)}" for i, (_cid, ty) in enumerate(skolems)
            )
            lines.append(f"  ∃ {binders} st")
            lines.extend(self._conjunction_lines(parts, 4))
        else:
            lines.extend(self._conjunction_lines(parts, 2))
        return lines
