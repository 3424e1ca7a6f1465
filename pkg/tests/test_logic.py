import random

import pytest

import _oracles as orc
from micromizar.logic import (
    And,
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
    ThesisMarker,
    TypeExpr,
    TRUE,
    Var,
    VarKind,
    abstract_const,
    bound,
    const,
    has_thesis_marker,
    mk_and,
    mk_exists,
    mk_iff,
    mk_imp,
    mk_neg,
    mk_or,
    replace_thesis,
    shift_up,
    subst_bound,
    term_key,
    uses_bound,
    uses_const,
)

P = Pred(10, (const(0),))
Q = Pred(11, (const(1),))
R = Pred(12, (const(2),))
SET = TypeExpr(frozenset(), frozenset(), 1)


def test_neg_cancels():
    assert mk_neg(mk_neg(P)) == P
    assert mk_neg(P) == Neg(P)
    with pytest.raises(AssertionError):
        Neg(Neg(P))


def test_and_flattens_and_drops_true():
    assert mk_and([P, mk_and([Q, R])]) == And((P, Q, R))
    assert mk_and([P]) == P
    assert mk_and([]) == TRUE
    assert mk_and([TRUE, P]) == P
    assert mk_and([TRUE, TRUE]) == TRUE
    with pytest.raises(AssertionError):
        And((P,))
    with pytest.raises(AssertionError):
        And((P, And((Q, R))))


def test_connective_desugaring():
    assert mk_imp(P, Q) == Neg(And((P, Neg(Q))))
    assert mk_or([P, Q]) == Neg(And((Neg(P), Neg(Q))))
    assert mk_or([P, mk_neg(P)]) == Neg(And((Neg(P), P)))
    assert mk_iff(P, Q) == And((mk_imp(P, Q), mk_imp(Q, P)))
    assert mk_exists(SET, P) == Neg(ForAll(SET, Neg(P)))


def test_subst_under_inner_binder():
    # body of an outer binder y: "for z holds z <= y"; the inner binder
    # sits at depth 1 so it binds level 1.  Substituting y at level 0
    # renumbers z down to level 0.
    le = 4
    f = ForAll(SET, Pred(le, (bound(1), bound(0))))
    got = subst_bound(f, 0, Numeral(5))
    assert got == ForAll(SET, Pred(le, (bound(0), Numeral(5))))


def test_subst_decrements_only_deeper_levels():
    f = And((Pred(0, (bound(0),)), Pred(1, (bound(1),)), Pred(2, (bound(2),))))
    got = subst_bound(f, 1, Numeral(9))
    assert got == And((Pred(0, (bound(0),)), Pred(1, (Numeral(9),)), Pred(2, (bound(1),))))


def test_subst_reaches_flex_fields():
    # thesis body "P[1] & ... & P[n]" with n at level 0; after `take 2+2`
    # every piece of the flex record sees the substitution and the
    # expansion binder drops from level 1 to level 0.
    le, eq, add = 4, 0, 9
    phi = lambda t: Pred(eq, (t, t))
    body = FlexAnd(
        FlexConj(
            Numeral(1),
            bound(0),
            ForAll(
                TypeExpr(frozenset(), frozenset(), 1),
                mk_neg(
                    mk_and(
                        [
                            Pred(le, (Numeral(1), bound(1))),
                            Pred(le, (bound(1), bound(0))),
                            mk_neg(phi(bound(1))),
                        ]
                    )
                ),
            ),
            phi(Numeral(1)),
            phi(bound(0)),
        )
    )
    four = FunctorApp(add, (Numeral(2), Numeral(2)))
    got = subst_bound(body, 0, four)
    want = FlexAnd(
        FlexConj(
            Numeral(1),
            four,
            ForAll(
                TypeExpr(frozenset(), frozenset(), 1),
                mk_neg(
                    mk_and(
                        [
                            Pred(le, (Numeral(1), bound(0))),
                            Pred(le, (bound(0), four)),
                            mk_neg(phi(bound(0))),
                        ]
                    )
                ),
            ),
            phi(Numeral(1)),
            phi(four),
        )
    )
    assert got == want


def test_subst_matches_named_variable_oracle():
    rng = random.Random(20260817)
    for _ in range(300):
        lvl = rng.randrange(3)
        f = orc.gen_formula(rng, lvl + 1, 4)
        t = orc.gen_term(rng, lvl, 2)
        env = [f"L{i}" for i in range(lvl + 1)]
        named = orc.named_subst(orc.named_of(f, env), f"L{lvl}", orc.named_of_term(t, env))
        want = orc.levels_of(named, {f"L{i}": i for i in range(lvl)}, lvl)
        assert subst_bound(f, lvl, t) == want


def test_named_oracle_roundtrip_identity():
    rng = random.Random(905)
    for _ in range(150):
        n = rng.randrange(3)
        f = orc.gen_formula(rng, n, 4)
        env = [f"L{i}" for i in range(n)]
        assert orc.levels_of(orc.named_of(f, env), {name: i for i, name in enumerate(env)}, n) == f


def test_shift_then_subst_is_identity():
    rng = random.Random(77)
    for _ in range(200):
        n = rng.randrange(3)
        f = orc.gen_formula(rng, n, 4)
        for floor in range(n + 1):
            g = shift_up(f, 1, floor)
            assert subst_bound(g, floor, Numeral(99)) == f


def test_abstract_const_builds_a_binder():
    rng = random.Random(31337)
    for _ in range(150):
        f = orc.gen_formula(rng, 0, 4)
        g = abstract_const(shift_up(f, 1), 1, 0)
        assert not uses_const(g, 1)
        assert subst_bound(g, 0, const(1)) == f


def test_occurrence_checks():
    f = ForAll(SET, Pred(0, (bound(0), bound(1), const(3))))
    assert uses_bound(f, 0)
    assert uses_bound(f, 1)
    assert not uses_bound(f, 2)
    assert uses_const(f, 3)
    assert not uses_const(f, 0)
    ty = TypeExpr(frozenset({Attr(True, 0, (const(5),))}), frozenset(), 1)
    assert uses_const(Qual(Numeral(1), ty), 5)


def test_replace_thesis():
    t = ThesisMarker()
    assert replace_thesis(And((t, P)), Q) == And((Q, P))
    assert replace_thesis(mk_neg(t), mk_neg(Q)) == Q
    assert replace_thesis(ForAll(SET, t), P) == ForAll(SET, P)
    assert replace_thesis(P, Q) == P
    assert has_thesis_marker(And((P, Neg(t))))
    assert not has_thesis_marker(And((P, Q)))


def test_term_key_orders_deterministically():
    rng = random.Random(4)
    terms = [orc.gen_term(rng, 2, 3) for _ in range(60)] + [Numeral(0), bound(1), const(0)]
    once = sorted(terms, key=term_key)
    rng.shuffle(terms)
    assert sorted(terms, key=term_key) == once
