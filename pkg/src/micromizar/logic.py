"""Core first-order syntax: terms, attributes, types, formulas.

Everything is an immutable tree.  Formulas live in a fixed normal form
whose three invariants are enforced by the smart constructors below:

* no double negation anywhere (``mk_neg`` cancels),
* conjunctions are flat with at least two conjuncts (``mk_and`` splices
  nested ``And`` nodes and drops ``TRUE``),
* bound variables are de Bruijn *levels*: the outermost binder of a
  closed formula is 0, and deeper binders count up from there.

Levels rather than indices mean a subterm keeps its meaning when carried
under extra binders; the only renumbering ever needed is the uniform one
performed by ``subst_bound`` when a binder is removed and by ``shift_up``
when new outer binders are added.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class VarKind(Enum):
    BOUND = "bound"
    CONST = "const"
    INFER = "infer"
    EQCLASS = "eqclass"
    LOCUS = "locus"


# ---------------------------------------------------------------------------
# terms


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    kind: VarKind
    index: int


@dataclass(frozen=True)
class Numeral(Term):
    value: int  # arbitrary precision, never negative


@dataclass(frozen=True)
class FunctorApp(Term):
    func: int
    args: tuple[Term, ...]


@dataclass(frozen=True)
class PrivFunc(Term):
    """Application of a proof-local ``deffunc``; carries its expansion."""

    func: int
    args: tuple[Term, ...]
    expansion: Term


@dataclass(frozen=True)
class SchemeFunctorApp(Term):
    func: int
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Choice(Term):
    """``the T``: the canonical inhabitant of a (nonempty) type."""

    ty: "TypeExpr"


@dataclass(frozen=True)
class Fraenkel(Term):
    """Set comprehension ``{ t where binders : guard }``.

    Represented structurally only; the checker never reasons inside.
    Binder k of ``binders`` binds level ``depth + k`` where depth is the
    number of binders enclosing this term.
    """

    binders: tuple["TypeExpr", ...]
    body: Term
    guard: "Formula"


def bound(i: int) -> Var:
    return Var(VarKind.BOUND, i)


def const(i: int) -> Var:
    return Var(VarKind.CONST, i)


def locus(i: int) -> Var:
    return Var(VarKind.LOCUS, i)


# ---------------------------------------------------------------------------
# attributes and types


@dataclass(frozen=True)
class Attr:
    """A (possibly negated) adjective with visible arguments."""

    positive: bool
    attr_id: int
    args: tuple[Term, ...] = ()

    def negate(self) -> "Attr":
        return Attr(not self.positive, self.attr_id, self.args)


@dataclass(frozen=True)
class TypeExpr:
    """Adjective-decorated mode application.

    ``lower`` is the cluster as written, ``upper`` its rounding-up under
    the active conditional clusters.  Constructors outside the rounding
    machinery must keep ``lower <= upper``.
    """

    lower: frozenset[Attr]
    upper: frozenset[Attr]
    mode: int
    args: tuple[Term, ...] = ()


# ---------------------------------------------------------------------------
# formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class FTrue(Formula):
    pass


TRUE = FTrue()


@dataclass(frozen=True)
class Neg(Formula):
    body: Formula

    def __post_init__(self):
        assert not isinstance(self.body, Neg), "double negation"


@dataclass(frozen=True)
class And(Formula):
    conjuncts: tuple[Formula, ...]

    def __post_init__(self):
        assert len(self.conjuncts) >= 2, "And needs >= 2 conjuncts"
        assert not any(isinstance(c, And) for c in self.conjuncts), "nested And"


@dataclass(frozen=True)
class FlexConj:
    """The five pieces of a flexary conjunction ``P[lo] & ... & P[hi]``.

    ``expansion`` is the defining universal
    ``for i being natural set holds not (lo <= i & i <= hi & not P[i])``
    and ``inst_lo`` / ``inst_hi`` are the endpoint instances exactly as
    the user wrote them.
    """

    lo: Term
    hi: Term
    expansion: Formula
    inst_lo: Formula
    inst_hi: Formula


@dataclass(frozen=True)
class FlexAnd(Formula):
    flex: FlexConj


@dataclass(frozen=True)
class ForAll(Formula):
    ty: TypeExpr
    body: Formula


@dataclass(frozen=True)
class Pred(Formula):
    pred: int
    args: tuple[Term, ...]


@dataclass(frozen=True)
class SchemePred(Formula):
    pred: int
    args: tuple[Term, ...]


@dataclass(frozen=True)
class PrivPred(Formula):
    """Application of a proof-local ``defpred``; carries its expansion."""

    pred: int
    args: tuple[Term, ...]
    expansion: Formula


@dataclass(frozen=True)
class Is(Formula):
    """Adjective assertion ``term is attr``."""

    term: Term
    attr: Attr


@dataclass(frozen=True)
class Qual(Formula):
    """Type qualification ``term is T``."""

    term: Term
    ty: TypeExpr


@dataclass(frozen=True)
class ThesisMarker(Formula):
    """Placeholder for the ``thesis`` keyword; replaced by the analyzer
    before any formula leaves it."""


# ---------------------------------------------------------------------------
# smart constructors


def mk_neg(f: Formula) -> Formula:
    if isinstance(f, Neg):
        return f.body
    return Neg(f)


def mk_and(parts: list[Formula] | tuple[Formula, ...]) -> Formula:
    """Flatten one level of nesting, drop TRUE conjuncts."""
    flat: list[Formula] = []
    for p in parts:
        if isinstance(p, FTrue):
            continue
        if isinstance(p, And):
            flat.extend(p.conjuncts)
        else:
            flat.append(p)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def mk_imp(a: Formula, b: Formula) -> Formula:
    return mk_neg(mk_and([a, mk_neg(b)]))


def mk_or(parts: list[Formula]) -> Formula:
    return mk_neg(mk_and([mk_neg(p) for p in parts]))


def mk_iff(a: Formula, b: Formula) -> Formula:
    return mk_and([mk_imp(a, b), mk_imp(b, a)])


def mk_exists(ty: TypeExpr, body: Formula) -> Formula:
    return mk_neg(ForAll(ty, mk_neg(body)))


def mk_is(t: Term, attr: Attr) -> Formula:
    """Attribute literal, negative adjectives kept as outer negations.

    ``x is non empty`` and ``not x is empty`` must build the same tree,
    or thesis comparison would tell them apart.
    """
    if attr.positive:
        return Is(t, attr)
    return Neg(Is(t, attr.negate()))


# ---------------------------------------------------------------------------
# traversal: substitution and renumbering
#
# Levels are absolute, so neither function tracks depth: removing the
# binder at `level` renumbers every deeper binder down by one, uniformly
# across the whole tree, and adding k outer binders shifts everything up.


def subst_term(t: Term, level: int, repl: Term) -> Term:
    match t:
        case Var(VarKind.BOUND, i):
            if i == level:
                return repl
            if i > level:
                return Var(VarKind.BOUND, i - 1)
            return t
        case Var() | Numeral():
            return t
        case FunctorApp(f, args):
            return FunctorApp(f, tuple(subst_term(a, level, repl) for a in args))
        case PrivFunc(f, args, exp):
            return PrivFunc(
                f,
                tuple(subst_term(a, level, repl) for a in args),
                subst_term(exp, level, repl),
            )
        case SchemeFunctorApp(f, args):
            return SchemeFunctorApp(f, tuple(subst_term(a, level, repl) for a in args))
        case Choice(ty):
            return Choice(subst_type(ty, level, repl))
        case Fraenkel(binders, body, guard):
            return Fraenkel(
                tuple(subst_type(b, level, repl) for b in binders),
                subst_term(body, level, repl),
                subst_bound(guard, level, repl),
            )
    raise TypeError(t)


def subst_attr(a: Attr, level: int, repl: Term) -> Attr:
    if not a.args:
        return a
    return Attr(a.positive, a.attr_id, tuple(subst_term(t, level, repl) for t in a.args))


def subst_type(ty: TypeExpr, level: int, repl: Term) -> TypeExpr:
    if not ty.args and not any(a.args for a in ty.lower | ty.upper):
        return ty
    return TypeExpr(
        frozenset(subst_attr(a, level, repl) for a in ty.lower),
        frozenset(subst_attr(a, level, repl) for a in ty.upper),
        ty.mode,
        tuple(subst_term(t, level, repl) for t in ty.args),
    )


def subst_bound(f: Formula, level: int, repl: Term) -> Formula:
    """Replace bound level `level` by `repl`, renumbering deeper levels down.

    `level` must be the outermost open level of `f`; `repl` may only
    mention strictly more outer levels (ground terms always qualify).
    """
    match f:
        case FTrue():
            return f
        case Neg(b):
            return mk_neg(subst_bound(b, level, repl))
        case And(cs):
            return mk_and([subst_bound(c, level, repl) for c in cs])
        case FlexAnd(fx):
            return FlexAnd(
                FlexConj(
                    subst_term(fx.lo, level, repl),
                    subst_term(fx.hi, level, repl),
                    subst_bound(fx.expansion, level, repl),
                    subst_bound(fx.inst_lo, level, repl),
                    subst_bound(fx.inst_hi, level, repl),
                )
            )
        case ForAll(ty, body):
            return ForAll(subst_type(ty, level, repl), subst_bound(body, level, repl))
        case Pred(p, args):
            return Pred(p, tuple(subst_term(a, level, repl) for a in args))
        case SchemePred(p, args):
            return SchemePred(p, tuple(subst_term(a, level, repl) for a in args))
        case PrivPred(p, args, exp):
            return PrivPred(
                p,
                tuple(subst_term(a, level, repl) for a in args),
                subst_bound(exp, level, repl),
            )
        case Is(t, attr):
            return Is(subst_term(t, level, repl), subst_attr(attr, level, repl))
        case Qual(t, ty):
            return Qual(subst_term(t, level, repl), subst_type(ty, level, repl))
        case ThesisMarker():
            return f
    raise TypeError(f)


def shift_term(t: Term, k: int, floor: int = 0) -> Term:
    match t:
        case Var(VarKind.BOUND, i):
            return Var(VarKind.BOUND, i + k) if i >= floor else t
        case Var() | Numeral():
            return t
        case FunctorApp(f, args):
            return FunctorApp(f, tuple(shift_term(a, k, floor) for a in args))
        case PrivFunc(f, args, exp):
            return PrivFunc(
                f, tuple(shift_term(a, k, floor) for a in args), shift_term(exp, k, floor)
            )
        case SchemeFunctorApp(f, args):
            return SchemeFunctorApp(f, tuple(shift_term(a, k, floor) for a in args))
        case Choice(ty):
            return Choice(shift_type(ty, k, floor))
        case Fraenkel(binders, body, guard):
            return Fraenkel(
                tuple(shift_type(b, k, floor) for b in binders),
                shift_term(body, k, floor),
                shift_up(guard, k, floor),
            )
    raise TypeError(t)


def shift_attr(a: Attr, k: int, floor: int = 0) -> Attr:
    if not a.args:
        return a
    return Attr(a.positive, a.attr_id, tuple(shift_term(t, k, floor) for t in a.args))


def shift_type(ty: TypeExpr, k: int, floor: int = 0) -> TypeExpr:
    if not ty.args and not any(a.args for a in ty.lower | ty.upper):
        return ty
    return TypeExpr(
        frozenset(shift_attr(a, k, floor) for a in ty.lower),
        frozenset(shift_attr(a, k, floor) for a in ty.upper),
        ty.mode,
        tuple(shift_term(t, k, floor) for t in ty.args),
    )


def shift_up(f: Formula, k: int, floor: int = 0) -> Formula:
    """Renumber bound levels >= floor up by k (for inserting k binders
    at depth floor)."""
    if k == 0:
        return f
    match f:
        case FTrue() | ThesisMarker():
            return f
        case Neg(b):
            return Neg(shift_up(b, k, floor))
        case And(cs):
            return And(tuple(shift_up(c, k, floor) for c in cs))
        case FlexAnd(fx):
            return FlexAnd(
                FlexConj(
                    shift_term(fx.lo, k, floor),
                    shift_term(fx.hi, k, floor),
                    shift_up(fx.expansion, k, floor),
                    shift_up(fx.inst_lo, k, floor),
                    shift_up(fx.inst_hi, k, floor),
                )
            )
        case ForAll(ty, body):
            return ForAll(shift_type(ty, k, floor), shift_up(body, k, floor))
        case Pred(p, args):
            return Pred(p, tuple(shift_term(a, k, floor) for a in args))
        case SchemePred(p, args):
            return SchemePred(p, tuple(shift_term(a, k, floor) for a in args))
        case PrivPred(p, args, exp):
            return PrivPred(p, tuple(shift_term(a, k, floor) for a in args), shift_up(exp, k, floor))
        case Is(t, attr):
            return Is(shift_term(t, k, floor), shift_attr(attr, k, floor))
        case Qual(t, ty):
            return Qual(shift_term(t, k, floor), shift_type(ty, k, floor))
    raise TypeError(f)


# ---------------------------------------------------------------------------
# occurrence checks and const abstraction


def _occurs_term(t: Term, pred) -> bool:
    match t:
        case Var():
            return pred(t)
        case Numeral():
            return False
        case FunctorApp(_, args) | SchemeFunctorApp(_, args):
            return any(_occurs_term(a, pred) for a in args)
        case PrivFunc(_, args, exp):
            return any(_occurs_term(a, pred) for a in args) or _occurs_term(exp, pred)
        case Choice(ty):
            return _occurs_type(ty, pred)
        case Fraenkel(binders, body, guard):
            return (
                any(_occurs_type(b, pred) for b in binders)
                or _occurs_term(body, pred)
                or _occurs(guard, pred)
            )
    raise TypeError(t)


def _occurs_type(ty: TypeExpr, pred) -> bool:
    return any(_occurs_term(t, pred) for t in ty.args) or any(
        _occurs_term(t, pred) for a in ty.lower | ty.upper for t in a.args
    )


def _occurs(f: Formula, pred) -> bool:
    match f:
        case FTrue() | ThesisMarker():
            return False
        case Neg(b):
            return _occurs(b, pred)
        case And(cs):
            return any(_occurs(c, pred) for c in cs)
        case FlexAnd(fx):
            return (
                _occurs_term(fx.lo, pred)
                or _occurs_term(fx.hi, pred)
                or _occurs(fx.expansion, pred)
                or _occurs(fx.inst_lo, pred)
                or _occurs(fx.inst_hi, pred)
            )
        case ForAll(ty, body):
            return _occurs_type(ty, pred) or _occurs(body, pred)
        case Pred(_, args) | SchemePred(_, args):
            return any(_occurs_term(a, pred) for a in args)
        case PrivPred(_, args, exp):
            return any(_occurs_term(a, pred) for a in args) or _occurs(exp, pred)
        case Is(t, attr):
            return _occurs_term(t, pred) or any(_occurs_term(a, pred) for a in attr.args)
        case Qual(t, ty):
            return _occurs_term(t, pred) or _occurs_type(ty, pred)
    raise TypeError(f)


def uses_bound(f: Formula, level: int) -> bool:
    return _occurs(f, lambda v: v.kind is VarKind.BOUND and v.index == level)


def uses_const(f: Formula, index: int) -> bool:
    return _occurs(f, lambda v: v.kind is VarKind.CONST and v.index == index)


def term_uses_bound(t: Term, level: int) -> bool:
    return _occurs_term(t, lambda v: v.kind is VarKind.BOUND and v.index == level)


def _replace_term_everywhere(f: Formula, needle: Term, repl: Term) -> Formula:
    def rt(t: Term) -> Term:
        if t == needle:
            return repl
        match t:
            case Var() | Numeral():
                return t
            case FunctorApp(fn, args):
                return FunctorApp(fn, tuple(rt(a) for a in args))
            case PrivFunc(fn, args, exp):
                return PrivFunc(fn, tuple(rt(a) for a in args), rt(exp))
            case SchemeFunctorApp(fn, args):
                return SchemeFunctorApp(fn, tuple(rt(a) for a in args))
            case Choice(ty):
                return Choice(rty(ty))
            case Fraenkel(binders, body, guard):
                return Fraenkel(tuple(rty(b) for b in binders), rt(body), rf(guard))
        raise TypeError(t)

    def rattr(a: Attr) -> Attr:
        if not a.args:
            return a
        return Attr(a.positive, a.attr_id, tuple(rt(t) for t in a.args))

    def rty(ty: TypeExpr) -> TypeExpr:
        return TypeExpr(
            frozenset(rattr(a) for a in ty.lower),
            frozenset(rattr(a) for a in ty.upper),
            ty.mode,
            tuple(rt(t) for t in ty.args),
        )

    def rf(g: Formula) -> Formula:
        match g:
            case FTrue() | ThesisMarker():
                return g
            case Neg(b):
                return mk_neg(rf(b))
            case And(cs):
                return mk_and([rf(c) for c in cs])
            case FlexAnd(fx):
                return FlexAnd(
                    FlexConj(rt(fx.lo), rt(fx.hi), rf(fx.expansion), rf(fx.inst_lo), rf(fx.inst_hi))
                )
            case ForAll(ty, body):
                return ForAll(rty(ty), rf(body))
            case Pred(p, args):
                return Pred(p, tuple(rt(a) for a in args))
            case SchemePred(p, args):
                return SchemePred(p, tuple(rt(a) for a in args))
            case PrivPred(p, args, exp):
                return PrivPred(p, tuple(rt(a) for a in args), rf(exp))
            case Is(t, attr):
                return Is(rt(t), rattr(attr))
            case Qual(t, ty):
                return Qual(rt(t), rty(ty))
        raise TypeError(g)

    return rf(f)


def subst_loci_term(t: Term, terms: tuple[Term, ...]) -> Term:
    match t:
        case Var(VarKind.LOCUS, i):
            return terms[i]
        case Var() | Numeral():
            return t
        case FunctorApp(f, args):
            return FunctorApp(f, tuple(subst_loci_term(a, terms) for a in args))
        case PrivFunc(f, args, exp):
            return PrivFunc(
                f, tuple(subst_loci_term(a, terms) for a in args), subst_loci_term(exp, terms)
            )
        case SchemeFunctorApp(f, args):
            return SchemeFunctorApp(f, tuple(subst_loci_term(a, terms) for a in args))
        case Choice(ty):
            return Choice(subst_loci_type(ty, terms))
        case Fraenkel(binders, body, guard):
            return Fraenkel(
                tuple(subst_loci_type(b, terms) for b in binders),
                subst_loci_term(body, terms),
                subst_loci(guard, terms),
            )
    raise TypeError(t)


def subst_loci_attr(a: Attr, terms: tuple[Term, ...]) -> Attr:
    if not a.args:
        return a
    return Attr(a.positive, a.attr_id, tuple(subst_loci_term(t, terms) for t in a.args))


def subst_loci_type(ty: TypeExpr, terms: tuple[Term, ...]) -> TypeExpr:
    if not ty.args and not any(a.args for a in ty.lower | ty.upper):
        return ty
    return TypeExpr(
        frozenset(subst_loci_attr(a, terms) for a in ty.lower),
        frozenset(subst_loci_attr(a, terms) for a in ty.upper),
        ty.mode,
        tuple(subst_loci_term(t, terms) for t in ty.args),
    )


def subst_loci(f: Formula, terms: tuple[Term, ...]) -> Formula:
    """Replace locus i by terms[i] throughout a stored definiens.

    Loci are definition-time placeholders, never bound levels, so no
    renumbering happens; the replacement terms must already live at the
    use site's depth.
    """
    match f:
        case FTrue() | ThesisMarker():
            return f
        case Neg(b):
            return mk_neg(subst_loci(b, terms))
        case And(cs):
            return mk_and([subst_loci(c, terms) for c in cs])
        case FlexAnd(fx):
            return FlexAnd(
                FlexConj(
                    subst_loci_term(fx.lo, terms),
                    subst_loci_term(fx.hi, terms),
                    subst_loci(fx.expansion, terms),
                    subst_loci(fx.inst_lo, terms),
                    subst_loci(fx.inst_hi, terms),
                )
            )
        case ForAll(ty, body):
            return ForAll(subst_loci_type(ty, terms), subst_loci(body, terms))
        case Pred(p, args):
            return Pred(p, tuple(subst_loci_term(a, terms) for a in args))
        case SchemePred(p, args):
            return SchemePred(p, tuple(subst_loci_term(a, terms) for a in args))
        case PrivPred(p, args, exp):
            return PrivPred(
                p, tuple(subst_loci_term(a, terms) for a in args), subst_loci(exp, terms)
            )
        case Is(t, attr):
            return Is(subst_loci_term(t, terms), subst_loci_attr(attr, terms))
        case Qual(t, ty):
            return Qual(subst_loci_term(t, terms), subst_loci_type(ty, terms))
    raise TypeError(f)


def abstract_const(f: Formula, const_index: int, level: int) -> Formula:
    """Turn occurrences of a constant into bound level `level`.

    The caller must already have shifted `f` to make room for the new
    binder (see ``shift_up``).
    """
    return _replace_term_everywhere(f, const(const_index), bound(level))


def replace_thesis(f: Formula, thesis: Formula) -> Formula:
    match f:
        case ThesisMarker():
            return thesis
        case FTrue():
            return f
        case Neg(b):
            return mk_neg(replace_thesis(b, thesis))
        case And(cs):
            return mk_and([replace_thesis(c, thesis) for c in cs])
        case ForAll(ty, body):
            return ForAll(ty, replace_thesis(body, thesis))
        case _:
            return f


def has_thesis_marker(f: Formula) -> bool:
    match f:
        case ThesisMarker():
            return True
        case Neg(b):
            return has_thesis_marker(b)
        case And(cs):
            return any(has_thesis_marker(c) for c in cs)
        case ForAll(_, body):
            return has_thesis_marker(body)
        case _:
            return False


# ---------------------------------------------------------------------------
# deterministic sort keys (formatting, canonical iteration)


def term_key(t: Term) -> tuple:
    match t:
        case Var(kind, i):
            return (0, kind.value, i)
        case Numeral(v):
            return (1, v)
        case FunctorApp(f, args):
            return (2, f, tuple(term_key(a) for a in args))
        case PrivFunc(f, args, _):
            return (3, f, tuple(term_key(a) for a in args))
        case SchemeFunctorApp(f, args):
            return (4, f, tuple(term_key(a) for a in args))
        case Choice(ty):
            return (5, type_key(ty))
        case Fraenkel(binders, body, _):
            return (6, tuple(type_key(b) for b in binders), term_key(body))
    raise TypeError(t)


def attr_key(a: Attr) -> tuple:
    return (a.attr_id, not a.positive, tuple(term_key(t) for t in a.args))


def type_key(ty: TypeExpr) -> tuple:
    return (
        ty.mode,
        tuple(term_key(t) for t in ty.args),
        tuple(sorted(attr_key(a) for a in ty.lower)),
    )


def sorted_attrs(attrs: frozenset[Attr]) -> list[Attr]:
    return sorted(attrs, key=attr_key)
