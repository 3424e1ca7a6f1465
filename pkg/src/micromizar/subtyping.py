"""Type widening, adjective rounding, and the definition database.

A type is a mode application decorated with adjectives.  Subtyping has
two independent halves: the mode must widen along its parent chain to
the target mode with identical arguments, and every adjective the
target asks for must appear in the source's rounded-up cluster.
Rounding closes the written adjectives under the conditional cluster
registrations (builtin ones from the requirement table plus whatever
the article registered) and folds in adjectives inherited from parent
modes.

Attributed types are not self-evidently inhabited; ``inhabited`` says
whether some existential registration (or a builtin witness) covers the
written cluster.  Callers that introduce a constant of a type gate on
it, and the refutation machinery only strips vacuous quantifiers over
types that pass it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logic import (
    Attr,
    Formula,
    Term,
    TypeExpr,
    mk_neg,
    subst_loci,
    subst_loci_term,
    subst_loci_type,
)
from .requirements import RequirementTable


@dataclass(frozen=True)
class AttrDef:
    """``attr a-P for T means ...``: loci 0..arity-1 are the visible
    arguments, locus ``arity`` is the subject."""

    arity: int
    subject: TypeExpr
    definiens: Formula
    expandable: bool


@dataclass(frozen=True)
class ModeDef:
    """``mode M of X -> parent means ...``: loci 0..arity-1 are the
    arguments, locus ``arity`` the candidate inhabitant."""

    arity: int
    parent: TypeExpr
    definiens: Formula | None
    expandable: bool


@dataclass(frozen=True)
class FuncDef:
    arity: int
    result: TypeExpr
    equals: Term | None
    means: Formula | None  # locus arity stands for the result


@dataclass(frozen=True)
class PredDef:
    arity: int
    definiens: Formula
    expandable: bool


@dataclass(frozen=True)
class ExistentialCluster:
    attrs: frozenset[Attr]
    ty: TypeExpr


@dataclass(frozen=True)
class ConditionalCluster:
    guard: frozenset[Attr]
    target: frozenset[Attr]
    ty: TypeExpr


@dataclass(frozen=True)
class FunctorCluster:
    term: Term
    attrs: frozenset[Attr]


class DefinitionDb:
    """Everything an article has defined or registered so far."""

    def __init__(self, req: RequirementTable):
        self.req = req
        self.attrs: dict[int, AttrDef] = {}
        self.modes: dict[int, ModeDef] = {}
        self.funcs: dict[int, FuncDef] = {}
        self.preds: dict[int, PredDef] = {}
        self.existential: list[ExistentialCluster] = []
        self.conditional: list[ConditionalCluster] = []
        self.functor_clusters: list[FunctorCluster] = []
        self._next = {kind: req.max_id(kind) + 1 for kind in ("mode", "func", "pred", "attr")}

    def fresh_id(self, kind: str) -> int:
        out = self._next[kind]
        self._next[kind] = out + 1
        return out

    # -- mode ancestry -------------------------------------------------

    def mode_parent(self, mode: int, args: tuple[Term, ...]) -> TypeExpr | None:
        req = self.req
        if mode == req.cid("Object"):
            return None
        if mode == req.cid("Set"):
            return req.object_type()
        if mode == req.cid("Element") or mode == req.cid("SubsetMode"):
            return req.set_type()
        d = self.modes.get(mode)
        if d is None:
            return None
        return subst_loci_type(d.parent, args)

    def ancestry(self, ty: TypeExpr) -> list[TypeExpr]:
        out = [ty]
        mode, args = ty.mode, ty.args
        seen = {mode}
        while True:
            parent = self.mode_parent(mode, args)
            if parent is None or parent.mode in seen:
                return out
            out.append(parent)
            seen.add(parent.mode)
            mode, args = parent.mode, parent.args

    # -- adjective rounding ---------------------------------------------

    def round_up(self, ty: TypeExpr) -> TypeExpr:
        chain = self.ancestry(ty)
        upper = set(ty.lower) | set(ty.upper)
        for t in chain[1:]:
            upper |= t.lower
        rules: list[tuple[frozenset[Attr], frozenset[Attr], TypeExpr | None]] = [
            (g, t, None) for g, t in self.req.builtin_conditional_clusters()
        ]
        rules += [(c.guard, c.target, c.ty) for c in self.conditional]
        changed = True
        while changed:
            changed = False
            for guard, target, subject in rules:
                if target <= upper or not guard <= upper:
                    continue
                if subject is not None and not self._covers(chain, subject, upper):
                    continue
                upper |= target
                changed = True
        return TypeExpr(ty.lower, frozenset(upper), ty.mode, ty.args)

    def _covers(self, chain: list[TypeExpr], subject: TypeExpr, upper: set[Attr]) -> bool:
        return subject.lower <= upper and any(
            t.mode == subject.mode and t.args == subject.args for t in chain
        )

    # -- subtyping -------------------------------------------------------

    def subtype(self, a: TypeExpr, b: TypeExpr) -> bool:
        if not b.lower <= self.round_up(a).upper:
            return False
        return any(t.mode == b.mode and t.args == b.args for t in self.ancestry(a))

    def same_type(self, a: TypeExpr, b: TypeExpr) -> bool:
        return self.subtype(a, b) and self.subtype(b, a)

    # -- inhabitation ------------------------------------------------------

    def inhabited(self, ty: TypeExpr) -> bool:
        """Bare mode applications are inhabited by fiat; a written
        adjective cluster needs a covering existential registration."""
        if not ty.lower:
            return True
        return any(self.subtype(w, ty) for w in self._witnesses())

    def _witnesses(self) -> list[TypeExpr]:
        req = self.req
        st = req.set_type()
        out = []

        def builtin(names: list[str]) -> None:
            if all(req.present(n) for n in names):
                attrs = frozenset(Attr(True, req.require(n)) for n in names)
                out.append(TypeExpr(attrs, attrs, st.mode, st.args))

        builtin(["Natural"])
        builtin(["Natural", "ZeroAttr"])
        builtin(["Empty"])
        builtin(["Complex"])
        for c in self.existential:
            attrs = c.ty.lower | c.attrs
            out.append(TypeExpr(attrs, attrs, c.ty.mode, c.ty.args))
        return out

    # -- definiens instantiation -------------------------------------------

    def attr_definiens(self, attr: Attr, subject: Term) -> Formula | None:
        d = self.attrs.get(attr.attr_id)
        if d is None:
            return None
        f = subst_loci(d.definiens, attr.args + (subject,))
        return f if attr.positive else mk_neg(f)

    def mode_definiens(self, mode: int, args: tuple[Term, ...], subject: Term) -> Formula | None:
        d = self.modes.get(mode)
        if d is None or d.definiens is None:
            return None
        return subst_loci(d.definiens, args + (subject,))

    def pred_definiens(self, pred: int, args: tuple[Term, ...]) -> Formula | None:
        d = self.preds.get(pred)
        if d is None:
            return None
        return subst_loci(d.definiens, args)

    def func_equals(self, func: int, args: tuple[Term, ...]) -> Term | None:
        d = self.funcs.get(func)
        if d is None or d.equals is None:
            return None
        return subst_loci_term(d.equals, args)

    def expandable_attr(self, aid: int) -> bool:
        d = self.attrs.get(aid)
        return d is not None and d.expandable

    def expandable_mode(self, mid: int) -> bool:
        d = self.modes.get(mid)
        return d is not None and d.expandable and d.definiens is not None

    def expandable_pred(self, pid: int) -> bool:
        d = self.preds.get(pid)
        return d is not None and d.expandable

    # -- term typing (no constant context; callers resolve variables) ------

    def result_type(self, func: int, args: tuple[Term, ...]) -> TypeExpr:
        builtin = self.req.functor_result_type(func)
        if builtin is not None:
            return builtin
        d = self.funcs.get(func)
        if d is None:
            return self.req.set_type()
        return subst_loci_type(d.result, args)
