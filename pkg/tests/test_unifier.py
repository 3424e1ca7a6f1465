"""Universal instantiation and flex-literal matching."""

from micromizar.flex import FlexMode, infer_flex_from_diff
from micromizar.logic import (
    Attr,
    FlexAnd,
    FlexConj,
    ForAll,
    FunctorApp,
    Is,
    Neg,
    Numeral,
    Pred,
    Qual,
    bound,
    const,
    mk_neg,
)
from micromizar.subtyping import DefinitionDb
from micromizar.unifier import Unifier, clause_refuted

FSET = frozenset()


def eq(req, a, b):
    return Pred(req.require("Equality"), (a, b))


def le(req, a, b):
    return Pred(req.require("LessOrEqual"), (a, b))


def check(req, lits, consts=None, mode=FlexMode.STRICT, cap=1000):
    return clause_refuted(DefinitionDb(req), lits, consts or {}, mode, cap)


def test_single_instantiation(req_all):
    req = req_all
    fa = ForAll(req.set_type(), Neg(eq(req, bound(0), bound(0))))
    refuted, limited = check(req, [fa], {0: req.set_type()})
    assert refuted and not limited


def test_pair_instantiation(req_all):
    req = req_all
    x, y = const(0), const(1)
    fa = ForAll(req.set_type(), ForAll(req.set_type(), Neg(le(req, bound(0), bound(1)))))
    lits = [le(req, x, y), fa]
    refuted, _ = check(req, lits, {0: req.set_type(), 1: req.set_type()})
    assert refuted


def test_numeric_instance(req_all):
    req = req_all
    x = const(0)
    body = Neg(eq(req, FunctorApp(req.require("Add"), (bound(0), Numeral(1))), Numeral(5)))
    lits = [eq(req, x, Numeral(4)), ForAll(req.nat_type(), body)]
    refuted, _ = check(req, lits, {0: req.set_type()})
    assert refuted


def test_type_gate_excludes_nonmatching_classes(req_all):
    req = req_all
    x = const(0)
    imag = FunctorApp(req.require("ImaginaryUnit"), ())
    fa = ForAll(req.nat_type(), Neg(eq(req, bound(0), bound(0))))
    lits = [eq(req, x, imag), fa]
    refuted, _ = check(req, lits, {0: req.set_type()})
    assert not refuted


def test_qual_disproved_by_adjective(req_all):
    req = req_all
    x = const(0)
    natural = Attr(True, req.require("Natural"))
    lits = [
        Neg(Is(x, natural)),
        ForAll(req.set_type(), Qual(bound(0), req.nat_type())),
    ]
    refuted, _ = check(req, lits, {0: req.set_type()})
    assert refuted


def _matching_pair(req):
    left = le(req, Numeral(1), Numeral(5))
    right = le(req, Numeral(2), Numeral(5))
    f1 = infer_flex_from_diff(left, right, req)
    f2 = FlexConj(Numeral(0), f1.hi, f1.expansion, f1.inst_lo, f1.inst_hi)
    return f1, f2


def test_flex_pair_strict_rejects_endpoint_match(req_all):
    req = req_all
    f1, f2 = _matching_pair(req)
    lits = [FlexAnd(f1), Neg(FlexAnd(f2))]
    refuted, _ = check(req, lits, mode=FlexMode.STRICT)
    assert not refuted


def test_flex_pair_compat_accepts_endpoint_match(req_all):
    req = req_all
    f1, f2 = _matching_pair(req)
    lits = [FlexAnd(f1), Neg(FlexAnd(f2))]
    refuted, _ = check(req, lits, mode=FlexMode.COMPAT)
    assert refuted


def test_flex_identical_literals_conflict_in_strict_mode(req_all):
    req = req_all
    f1, _ = _matching_pair(req)
    lits = [FlexAnd(f1), Neg(FlexAnd(f1))]
    refuted, _ = check(req, lits, mode=FlexMode.STRICT)
    assert refuted


def test_flex_fact_used_inside_instantiated_body(req_all):
    req = req_all
    f1, _ = _matching_pair(req)
    left = le(req, Numeral(1), Numeral(5))
    right = le(req, Numeral(2), Numeral(5))
    nested = infer_flex_from_diff(left, right, req, depth=1)
    lits = [
        Neg(FlexAnd(f1)),
        ForAll(req.set_type(), FlexAnd(nested)),
        eq(req, const(0), const(0)),
    ]
    refuted, _ = check(req, lits, {0: req.set_type()})
    assert refuted


def test_tuple_budget_caps_the_search(req_all):
    req = req_all
    fa = ForAll(req.set_type(), Neg(eq(req, bound(0), bound(0))))
    refuted, limited = check(req, [fa], {0: req.set_type()}, cap=0)
    assert not refuted
    assert limited


def test_instantiation_depth_is_bounded_to_pairs(req_all):
    req = req_all
    core = Neg(eq(req, bound(2), bound(2)))
    fa = ForAll(req.set_type(), ForAll(req.set_type(), ForAll(req.set_type(), core)))
    refuted, _ = check(req, [fa], {0: req.set_type()})
    assert not refuted


def test_search_is_deterministic(req_all):
    req = req_all
    x, y = const(0), const(1)
    fa = ForAll(req.set_type(), ForAll(req.set_type(), Neg(le(req, bound(0), bound(1)))))
    lits = [le(req, x, y), mk_neg(eq(req, x, y)), fa]
    consts = {0: req.set_type(), 1: req.set_type()}
    assert check(req, lits, consts) == check(req, lits, consts)
