from cutelim.syntax import (
    And, Atom, Const, Exists, Forall, Imp, Sequent, Var, free_vars, fresh_name,
    instantiate, is_propositional, size, subst,
)
from cutelim.textio import parse_formula

P, Q = Atom("P"), Atom("Q")


def test_alpha_equivalence():
    assert Forall("x", Atom("P", (Var("x"),))) == Forall("y", Atom("P", (Var("y"),)))
    assert Forall("x", Atom("P", (Var("x"),))) != Forall("x", Atom("P", (Var("z"),)))
    assert hash(parse_formula("forall x. P(x)")) == hash(parse_formula("forall y. P(y)"))


def test_size_counts_connectives_and_quantifiers():
    assert size(P) == 0
    assert size(And(P, Imp(P, Q))) == 2
    assert size(parse_formula("forall x. P(x) -> Q")) == 2


def test_capture_avoiding_substitution():
    f = Forall("y", Atom("R", (Var("x"), Var("y"))))
    g = subst(f, "x", Var("y"))
    assert free_vars(g) == {"y"}
    assert g.var != "y"


def test_instantiate():
    f = parse_formula("exists x. P(x) & Q")
    assert instantiate(f, Const("a")) == parse_formula("P(a) & Q")


def test_fresh_name_avoids():
    assert fresh_name("x", {"x", "x1"}) not in {"x", "x1"}


def test_sequent_is_a_multiset():
    a = Sequent([Q, P, P], P)
    assert a == Sequent([P, Q, P], P)
    assert a.counts()[P] == 2
    assert a.without(P) == Sequent([P, Q], P).context


def test_propositional():
    assert is_propositional(parse_formula("P -> Q | top"))
    assert not is_propositional(parse_formula("forall x. P(x)"))
    assert not is_propositional(Exists("x", P))
