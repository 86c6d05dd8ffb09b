import random

import pytest

from cutelim import gen, sequent
from cutelim.apds import from_fsa
from cutelim.syntax import And, Atom, Forall, Imp, Or, Sequent, TOP
from cutelim.textio import (
    KindError, ParseError, parse_apds, parse_fdl_model, parse_formula, parse_proof,
    parse_sequent, print_apds, print_fdl_model, print_formula, print_fsa, print_proof,
    print_sequent, tokenize,
)

P = Atom("P")


def test_worked_formula():
    f = parse_formula("(P -> (P -> P)) & ((P & P) -> P)")
    assert f == And(Imp(P, Imp(P, P)), Imp(And(P, P), P))


def test_units_and_precedence():
    assert parse_formula("top") == TOP
    assert parse_formula("P -> Q -> R") == Imp(P, Imp(Atom("Q"), Atom("R")))
    assert parse_formula("P | Q & R") == Or(P, And(Atom("Q"), Atom("R")))
    f = parse_formula("forall x. P(x) | exists x. Q(x)")
    assert isinstance(f, Forall) and isinstance(f.body, Or)
    assert parse_formula(print_formula(f)) == f


def test_rectified_output():
    f = parse_formula("(forall x. P(x)) & (forall x. Q(x))")
    assert f.left.var != f.right.var


def test_sequents():
    assert parse_sequent("P & Q |- P") == Sequent([And(P, Atom("Q"))], P)
    assert parse_sequent("|- P | (P -> Q)").context == ()
    assert len(parse_sequent("(P | (P -> Q)) -> Q |- Q").context) == 1


def test_print_parse_round_trip_random():
    rng = random.Random(0)
    for _ in range(300):
        f = gen.random_fo(rng, depth=4)
        assert parse_formula(print_formula(f)) == f
        s = gen.random_prop_sequent(rng)
        assert parse_sequent(print_sequent(s)) == s


@pytest.mark.parametrize("text", ["P &", "forall . P", "(P", "P |- ", "P ) Q", "[P", "~(P & Q)", "P $ Q"])
def test_parse_errors_carry_spans(text):
    with pytest.raises(ParseError) as exc:
        parse_sequent(text) if "|-" in text else parse_formula(text)
    sp = exc.value.span
    assert sp is not None and sp.line == 1 and 1 <= sp.column <= len(text) + 1


def test_fuzz_parsing_is_total():
    rng = random.Random(1)
    alphabet = "PQxy()[]&|~->.,: forallexiststopbot\n\t"
    for _ in range(3000):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 30)))
        for fn in (parse_formula, parse_sequent):
            try:
                fn(text)
            except ParseError:
                pass
    for _ in range(500):
        raw = bytes(rng.randrange(256) for _ in range(rng.randint(0, 20)))
        try:
            parse_formula(raw)
        except ParseError:
            pass


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(ParseError):
        parse_formula("(" * 5000 + "P" + ")" * 5000)


def test_apds_kinds(data):
    s = parse_apds((data / "s.apds").read_text())
    kinds = [r.kind for r in s.rules]
    assert kinds.count("push") == 4 and kinds.count("neutral") == 2 and kinds.count("elim") == 1
    assert sum(r.is_intro for r in s.rules) == 4
    assert parse_apds(print_apds(s)) == s


def test_apds_kind_error():
    with pytest.raises(KindError):
        parse_apds("predicates: P Q\nsymbols: g\nQ(x) <- P(g(x), y).")


def test_fsa_round_trip(data):
    m = parse_apds((data / "oddeven.fsa").read_text())
    assert parse_apds(print_fsa(m)) == m
    system = from_fsa(m)
    assert parse_apds(print_apds(system)) == system


def test_fdl_models(data):
    m = parse_fdl_model((data / "one.fdl").read_text())
    assert m.domain == ("c1",) and m.relations[("P", 1)] == {("c1",)}
    m2 = parse_fdl_model("domain: c1 c2\nrel R/2: (c1, c2) (c2, c2)\n")
    assert parse_fdl_model(print_fdl_model(m2)) == m2
    with pytest.raises(ParseError):
        parse_fdl_model("domain: c1\nrel P/1: (c9)")
    with pytest.raises(ParseError):
        parse_fdl_model("domain: c1\nrel P/2: (c1)")
    with pytest.raises(ParseError):
        parse_fdl_model("domain:\n")


def test_crlf_accepted():
    assert parse_fdl_model("domain: c1\r\nrel P/1: (c1)\r\n").domain == ("c1",)


def test_single_axiom_record():
    p = parse_proof("axiom :: P |- P", sequent.g_rule_table())
    assert p.rule.rule_id == "axiom" and not p.premises


def test_proof_round_trip_random():
    rng = random.Random(2)
    for p in gen.harvest_k(rng, 500, quantified=0.3):
        assert parse_proof(print_proof(p), sequent.k_rule_table()) == p


def test_record_errors():
    from cutelim.proof import CheckError
    with pytest.raises(ParseError):
        parse_proof("axiom P |- P", sequent.g_rule_table())
    with pytest.raises(ParseError):
        parse_proof("and_l [P & Q] :: P & Q |- P\n      axiom :: P, Q |- P", sequent.g_rule_table())
    with pytest.raises(CheckError):
        parse_proof("axiom :: P & Q |- P & Q", sequent.g_rule_table())


def test_text_style_has_bars():
    p = sequent.prove_g(parse_sequent("P & Q |- P"))
    text = print_proof(p, "text")
    assert "and_l" in text and "-----" in text and text.rstrip().endswith("P & Q |- P")


def test_tokens_have_offsets():
    toks = tokenize("P -> Q")
    assert [(t.text, t.start) for t in toks[:3]] == [("P", 0), ("->", 2), ("Q", 5)]
