"""Parser shape tests: token stream to surface tree."""

from micromizar.parser import parse_article
from micromizar.surface import (
    ItScheme,
    ItTheorem,
    SAnd,
    SBracketAtom,
    SExists,
    SFlex,
    SForAll,
    SIff,
    SImplies,
    SIs,
    SNot,
    SOr,
    SPredAtom,
    SQual,
    SSubProof,
    StAssume,
    StLet,
    StNow,
    StPerCases,
    StTakeEq,
    StThus,
)


def parse_formula(text: str):
    art, errs = parse_article(f"environ begin theorem {text};")
    assert errs == []
    (item,) = art.items
    return item.formula


def parse_ok(text: str):
    art, errs = parse_article(text)
    assert errs == [], errs
    return art


def test_environ_requirement_names():
    art = parse_ok("environ requirements NUMERALS, REAL; requirements ARITHM; begin")
    assert art.requirements == ("NUMERALS", "REAL", "ARITHM")
    assert art.items == ()


def test_scheme_article_shape():
    art = parse_ok(
        """environ requirements NUMERALS;
begin
scheme Twist{P[set, set]}: 1 = 1
 provided A: P[1, 1] and B: not P[1, 1]
proof thus 1 = 1; end;
theorem 1 = 2
proof A1: 1 = 1; thus 1 = 2 from Twist(A1, A1); end;
"""
    )
    scheme, theorem = art.items
    assert isinstance(scheme, ItScheme)
    assert isinstance(theorem, ItTheorem)
    (sig,) = scheme.sigs
    assert sig.kind == "pred" and len(sig.arg_types) == 2
    assert isinstance(scheme.provided[0].formula, SBracketAtom)
    assert isinstance(scheme.provided[1].formula, SNot)
    step = theorem.just.steps[1]
    assert step.just.scheme == "Twist"
    assert [r[0] for r in step.just.refs] == ["A1", "A1"]


def test_flex_conjunction_node():
    f = parse_formula("1 <= 1 & ... & 1 <= 3 implies 1 <= 2")
    assert isinstance(f, SImplies)
    assert isinstance(f.antecedent, SFlex)


def test_flex_keeps_outer_conjuncts():
    f = parse_formula("0 = 0 & 1 <= 1 & ... & 1 <= 3 & 2 = 2")
    assert isinstance(f, SAnd)
    kinds = [type(p).__name__ for p in f.parts]
    assert kinds == ["SPredAtom", "SFlex", "SPredAtom"]


def test_missing_semicolon_positions_error_at_next_token():
    art, errs = parse_article(
        """environ begin
theorem 1 = 1
proof
  let x be Nat
  thus 1 = 1;
end;
"""
    )
    assert len(errs) == 1
    assert errs[0].code == 90
    assert (errs[0].pos.line, errs[0].pos.col) == (5, 3)


def test_recovery_resumes_at_next_item():
    art, errs = parse_article(
        """environ begin
theorem 1 = + ;
theorem 2 = 2;
"""
    )
    assert len(errs) == 1
    assert len(art.items) == 1
    assert isinstance(art.items[0], ItTheorem)


def test_precedence_and_over_or_over_implies():
    f = parse_formula("1 = 1 & 2 = 2 or 3 = 3 implies 4 = 4")
    assert isinstance(f, SImplies)
    assert isinstance(f.antecedent, SOr)
    assert isinstance(f.antecedent.parts[0], SAnd)


def test_implies_right_associative_and_iff_loosest():
    f = parse_formula("1 = 1 implies 2 = 2 implies 3 = 3")
    assert isinstance(f, SImplies)
    assert isinstance(f.consequent, SImplies)
    g = parse_formula("1 = 1 implies 2 = 2 iff 3 = 3")
    assert isinstance(g, SIff)
    assert isinstance(g.left, SImplies)


def test_quantifier_scope_is_maximal():
    f = parse_formula("not ex x being Nat st x = 0 & x = 1")
    assert isinstance(f, SNot)
    assert isinstance(f.body, SExists)
    assert isinstance(f.body.body, SAnd)


def test_binder_groups_and_guard():
    f = parse_formula("for x, y being Nat, z being set st x = y holds x = x")
    assert isinstance(f, SForAll)
    assert [g.names for g in f.binders] == [("x", "y"), ("z",)]
    assert f.guard is not None


def test_paren_backtracking_term_vs_formula():
    t = parse_formula("(1 + 2) * 3 = 9")
    assert isinstance(t, SPredAtom) and t.name == "="
    g = parse_formula("(1 = 1 or 2 = 2) & 3 = 3")
    assert isinstance(g, SAnd)
    assert isinstance(g.parts[0], SOr)


def test_is_clause_and_qualification():
    f = parse_formula("x is non empty")
    assert isinstance(f, SIs)
    assert f.adjs[0].positive is False
    g = parse_formula("x is Element of bool B")
    assert isinstance(g, SQual)
    assert g.ty.mode == "Element"
    h = parse_formula("n is 1-ordered")
    assert isinstance(h, SIs)
    assert h.adjs[0].arg is not None


def test_step_forms_round_trip():
    art = parse_ok(
        """environ begin
theorem ex n being Nat st n = 0
proof
  take n = 0;
  thus n = 0;
end;
theorem 1 = 1
proof
  assume that A: 1 = 2 and B: 2 = 3;
  per cases by A;
  suppose 1 = 1;
    N: now
      let q be Nat;
      thus q = q;
    end;
    hence thesis by N;
  end;
end;
"""
    )
    first, second = art.items
    assert isinstance(first.just.steps[0], StTakeEq)
    body = second.just.steps
    assert isinstance(body[0], StAssume)
    assert [c.label for c in body[0].conds] == ["A", "B"]
    pc = body[1]
    assert isinstance(pc, StPerCases) and pc.kind == "suppose"
    inner = pc.blocks[0].steps
    assert isinstance(inner[0], StNow)
    assert isinstance(inner[0].steps[0], StLet)


def test_then_links_following_statement():
    art = parse_ok(
        """environ begin
theorem 1 = 1
proof
  A: 1 = 1;
  then B: 1 = 1 by A;
  then thus 1 = 1;
end;
"""
    )
    steps = art.items[0].just.steps
    assert steps[1].just.linked is True
    assert isinstance(steps[2], StThus)
    assert steps[2].just.linked is True


def test_hence_marks_linked_justification():
    art = parse_ok(
        """environ begin
theorem 1 = 1
proof
  1 = 1;
  hence thesis;
end;
"""
    )
    steps = art.items[0].just.steps
    assert steps[0].just.linked is False
    assert steps[1].just.linked is True


def test_definition_and_registration_bodies():
    art = parse_ok(
        """environ requirements BOOLE, SUBSET;
begin
definition
  let n be Nat;
  attr n is big means :DefBig: 2 <= n;
end;
definition
  let X be set;
  mode Part of X -> set means it c= X;
  existence;
end;
registration
  cluster non empty set;
  existence proof take bool {}; thus thesis; end;
end;
registration
  let n be Nat;
  cluster n + 1 -> positive;
  coherence;
end;
registration
  cluster empty -> natural for set;
  coherence;
end;
"""
    )
    kinds = [type(getattr(i, "body", i)).__name__ for i in art.items]
    assert kinds == [
        "DefAttr",
        "DefMode",
        "RegExistential",
        "RegFunctor",
        "RegConditional",
    ]
    attr = art.items[0].body
    assert attr.def_label == "DefBig" and attr.subject == "n"
    mode = art.items[1].body
    assert mode.args == ("X",)
    reg = art.items[2]
    assert isinstance(reg.correctness[0].just, SSubProof)
