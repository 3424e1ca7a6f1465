"""Clause refutation through the congruence graph."""

from micromizar.equalizer import EqGraph, refute_clause
from micromizar.logic import (
    Attr,
    FunctorApp,
    Is,
    Neg,
    Numeral,
    Pred,
    PrivFunc,
    Qual,
    TypeExpr,
    Var,
    VarKind,
    const,
)
from micromizar.requirements import enable_groups
from micromizar.subtyping import ConditionalCluster, DefinitionDb, FunctorCluster

FS = frozenset()


def eq(req, a, b):
    return Pred(req.require("Equality"), (a, b))


def neq(req, a, b):
    return Neg(eq(req, a, b))


def le(req, a, b):
    return Pred(req.require("LessOrEqual"), (a, b))


def member(req, x, a):
    return Pred(req.require("Membership"), (x, a))


def run_clause(req, lits, consts=None):
    db = DefinitionDb(req)
    return refute_clause(db, lits, consts or {})


def plus(req, a, b):
    return FunctorApp(req.require("Add"), (a, b))


def times(req, a, b):
    return FunctorApp(req.require("Mul"), (a, b))


def test_two_plus_two_is_four(req_all):
    g = run_clause(req_all, [neq(req_all, plus(req_all, Numeral(2), Numeral(2)), Numeral(4))])
    assert g.contradiction


def test_two_plus_two_is_not_five(req_all):
    g = run_clause(req_all, [eq(req_all, plus(req_all, Numeral(2), Numeral(2)), Numeral(5))])
    assert g.contradiction


def test_successor_chain_without_arithmetic(req_file):
    req, note = enable_groups(req_file, ["NUMERALS"])
    assert note is None
    succ = req.require("Succ")
    two = FunctorApp(succ, (FunctorApp(succ, (Numeral(0),)),))
    g = run_clause(req, [neq(req, two, Numeral(2))])
    assert g.contradiction


def test_numerals_opaque_without_group(req_file):
    req, _ = enable_groups(req_file, ["BOOLE"])
    g = run_clause(req, [eq(req, Numeral(1), Numeral(2))])
    assert not g.contradiction
    g = run_clause(req, [neq(req, Numeral(1), Numeral(1))])
    assert g.contradiction


def test_binomial_square_expansion(req_all):
    req = req_all
    x = const(0)
    lhs = times(req, plus(req, x, Numeral(1)), plus(req, x, Numeral(1)))
    rhs = plus(req, plus(req, times(req, x, x), times(req, Numeral(2), x)), Numeral(1))
    g = run_clause(req, [neq(req, lhs, rhs)], {0: req.object_type()})
    assert g.contradiction


def test_value_conflict(req_all):
    req = req_all
    x = const(0)
    g = run_clause(
        req,
        [eq(req, x, Numeral(2)), eq(req, x, Numeral(3))],
        {0: req.object_type()},
    )
    assert g.contradiction


def test_sign_adjective_from_value(req_all):
    req = req_all
    x = const(0)
    negative = Attr(True, req.require("Negative"))
    lits = [eq(req, x, Numeral(5)), Is(x, negative)]
    g = run_clause(req, lits, {0: req.object_type()})
    assert g.contradiction
    positive = Attr(True, req.require("Positive"))
    g = run_clause(req, [eq(req, x, Numeral(5)), Is(x, positive)], {0: req.object_type()})
    assert not g.contradiction


def test_order_value_violation(req_all):
    g = run_clause(req_all, [le(req_all, Numeral(5), Numeral(3))])
    assert g.contradiction


def test_order_reflexivity(req_all):
    x = const(0)
    g = run_clause(req_all, [Neg(le(req_all, x, x))], {0: req_all.object_type()})
    assert g.contradiction


def test_order_antisymmetry(req_all):
    req = req_all
    x, y = const(0), const(1)
    lits = [le(req, x, y), le(req, y, x), neq(req, x, y)]
    g = run_clause(req, lits, {0: req.object_type(), 1: req.object_type()})
    assert g.contradiction


def test_order_totality(req_all):
    req = req_all
    x, y = const(0), const(1)
    lits = [Neg(le(req, x, y)), Neg(le(req, y, x))]
    g = run_clause(req, lits, {0: req.object_type(), 1: req.object_type()})
    assert g.contradiction


def test_order_satisfiable(req_all):
    req = req_all
    x, y = const(0), const(1)
    g = run_clause(req, [le(req, x, y)], {0: req.object_type(), 1: req.object_type()})
    assert not g.contradiction


def test_union_with_empty_set(req_all):
    req = req_all
    a = const(0)
    empty = FunctorApp(req.require("EmptySet"), ())
    u = FunctorApp(req.require("Union"), (a, empty))
    g = run_clause(req, [neq(req, u, a)], {0: req.set_type()})
    assert g.contradiction


def test_meets_contradicts_empty_argument(req_all):
    req = req_all
    a, b = const(0), const(1)
    lits = [
        Pred(req.require("Meets"), (a, b)),
        eq(req, b, FunctorApp(req.require("EmptySet"), ())),
    ]
    g = run_clause(req, lits, {0: req.set_type(), 1: req.set_type()})
    assert g.contradiction


def test_nothing_is_in_the_empty_set(req_all):
    req = req_all
    x = const(0)
    empty = FunctorApp(req.require("EmptySet"), ())
    g = run_clause(req, [member(req, x, empty)], {0: req.set_type()})
    assert g.contradiction


def test_subset_antisymmetry(req_all):
    req = req_all
    a, b = const(0), const(1)
    sub = req.require("Subset")
    lits = [Pred(sub, (a, b)), Pred(sub, (b, a)), neq(req, a, b)]
    g = run_clause(req, lits, {0: req.set_type(), 1: req.set_type()})
    assert g.contradiction


def test_negated_subset_of_itself(req_all):
    req = req_all
    a = const(0)
    g = run_clause(req, [Neg(Pred(req.require("Subset"), (a, a)))], {0: req.set_type()})
    assert g.contradiction


def test_powerset_membership_types(req_all):
    req = req_all
    x, a, b = const(0), const(1), const(2)
    elem = req.require("Element")
    pow_b = FunctorApp(req.require("PowerSet"), (b,))
    lits = [
        member(req, x, a),
        Qual(a, TypeExpr(FS, FS, elem, (pow_b,))),
    ]
    g = run_clause(req, lits, {0: req.set_type(), 1: req.set_type(), 2: req.set_type()})
    assert not g.contradiction
    xr = g.lookup(x)
    br = g.lookup(b)
    assert (elem, (g.find(br),)) in g.types[g.find(xr)]
    assert g.attr_sign(br, req.require("Empty"), ()) is False


def test_membership_from_nonempty_element_type(req_all):
    req = req_all
    x, a = const(0), const(1)
    elem = req.require("Element")
    lits = [
        Qual(x, TypeExpr(FS, FS, elem, (a,))),
        Is(a, Attr(False, req.require("Empty"))),
        Neg(member(req, x, a)),
    ]
    g = run_clause(req, lits, {0: req.set_type(), 1: req.set_type()})
    assert g.contradiction


def test_negated_type_claim(req_all):
    req = req_all
    x = const(0)
    g = run_clause(req, [Neg(Qual(x, req.nat_type()))], {0: req.nat_type()})
    assert g.contradiction


def test_negated_type_claim_needs_the_adjective(req_all):
    req = req_all
    x = const(0)
    g = run_clause(req, [Neg(Qual(x, req.nat_type()))], {0: req.set_type()})
    assert not g.contradiction


def test_squaring_chain_stays_consistent(req_all):
    req = req_all
    x = const(0)
    lits = []
    prev = x
    squares = []
    for _ in range(6):
        prev = times(req, prev, prev)
        squares.append(prev)
    for i in range(len(squares)):
        for j in range(i + 1, len(squares)):
            lits.append(neq(req, squares[i], squares[j]))
    g = run_clause(req, lits, {0: req.object_type()})
    assert not g.contradiction
    assert not g.limited


def test_congruence_propagation(req_all):
    req = req_all
    x, y = const(0), const(1)
    lits = [eq(req, x, y), neq(req, times(req, x, x), times(req, y, y))]
    g = run_clause(req, lits, {0: req.object_type(), 1: req.object_type()})
    assert g.contradiction


def test_multiplication_commutes(req_all):
    req = req_all
    x, y = const(0), const(1)
    g = run_clause(
        req,
        [neq(req, times(req, x, y), times(req, y, x))],
        {0: req.object_type(), 1: req.object_type()},
    )
    assert g.contradiction


def test_imaginary_unit_squares_to_minus_one(req_all):
    req = req_all
    i = FunctorApp(req.require("ImaginaryUnit"), ())
    minus_one = FunctorApp(req.require("Sub"), (Numeral(0), Numeral(1)))
    g = run_clause(req, [neq(req, times(req, i, i), minus_one)])
    assert g.contradiction


def test_linear_equation_pins_the_unknown(req_all):
    req = req_all
    x = const(0)
    succ_x = FunctorApp(req.require("Succ"), (x,))
    lits = [eq(req, succ_x, Numeral(5)), neq(req, x, Numeral(4))]
    g = run_clause(req, lits, {0: req.nat_type()})
    assert g.contradiction


def test_zero_functor_is_the_zero_numeral(req_all):
    req = req_all
    zero = FunctorApp(req.require("Zero"), ())
    g = run_clause(req, [neq(req, zero, Numeral(0))])
    assert g.contradiction


def test_private_functor_unfolds(req_all):
    req = req_all
    x = const(0)
    body = plus(req, x, Numeral(1))
    pf = PrivFunc(0, (x,), body)
    g = run_clause(req, [neq(req, pf, body)], {0: req.object_type()})
    assert g.contradiction


def test_registered_conditional_cluster(req_all):
    req = req_all
    db = DefinitionDb(req)
    positive = Attr(True, req.require("Positive"))
    not_zero = Attr(False, req.require("ZeroAttr"))
    db.conditional.append(ConditionalCluster(frozenset([positive]), frozenset([not_zero]), req.set_type()))
    x = const(0)
    g = EqGraph(db)
    g.assume_const_type(0, req.set_type())
    g.assume(Is(x, positive))
    g.assume(Is(x, Attr(True, req.require("ZeroAttr"))))
    g.run()
    assert g.contradiction


def test_registered_functor_cluster(req_all):
    req = req_all
    db = DefinitionDb(req)
    fid = db.fresh_id("func")
    term = FunctorApp(fid, ())
    db.funcs[fid] = None  # placeholder entry unused by the graph
    db.functor_clusters.append(FunctorCluster(term, frozenset([Attr(False, req.require("Empty"))])))
    g = EqGraph(db)
    g.assume(Is(term, Attr(True, req.require("Empty"))))
    g.run()
    assert g.contradiction


def test_deterministic_replay(req_all):
    req = req_all
    x, y = const(0), const(1)
    lits = [
        le(req, x, y),
        eq(req, plus(req, x, y), Numeral(7)),
        Is(x, Attr(True, req.require("Natural"))),
    ]
    consts = {0: req.object_type(), 1: req.object_type()}
    g1 = run_clause(req, lits, consts)
    g2 = run_clause(req, lits, consts)
    assert g1.parent == g2.parent
    assert g1.atoms == g2.atoms
    assert sorted(g1.value.items(), key=lambda kv: kv[0]) == sorted(
        g2.value.items(), key=lambda kv: kv[0]
    )
    assert g1.contradiction == g2.contradiction


def test_round_budget_marks_limited(req_all):
    req = req_all
    g = EqGraph(DefinitionDb(req))
    g.assume(eq(req, Numeral(1), Numeral(1)))
    g.run(max_rounds=0)
    assert g.limited
    assert not g.contradiction
