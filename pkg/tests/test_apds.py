import itertools
import random

from cutelim import apds, gen
from cutelim.proof import check_proof, contains_only_intros
from cutelim.syntax import Atom, word
from cutelim.textio import parse_apds, parse_apds_atom, print_apds_atom


def system(data):
    return parse_apds((data / "s.apds").read_text())


def test_saturation_is_idempotent(data):
    sat = apds.saturate(system(data))
    assert apds.saturate(sat).rule_set() == sat.rule_set()
    assert len(apds.added_rules(system(data), sat)) == 8


def test_decide_example(data):
    s = system(data)
    assert apds.decide(s, parse_apds_atom("S(a b)"))
    assert not apds.decide(s, parse_apds_atom("S(eps)"))
    assert apds.prove(s, parse_apds_atom("S(eps)")) is None


def test_cut_free_proof(data):
    s = system(data)
    p = apds.prove(s, parse_apds_atom("S(a b)"))
    t = apds.apds_rule_table(apds.saturate(s))
    check_proof(p, t)
    assert contains_only_intros(p, t)
    assert print_apds_atom(p.conclusion) == "S(a b)"


def test_fixpoint_example(data):
    facts = apds.naive_fixpoint(system(data), 3)
    assert ("S", ("a", "b")) in facts and ("Q", ("b",)) in facts and ("S", ()) not in facts


def test_fsa_encoding(data):
    m = parse_apds((data / "oddeven.fsa").read_text())
    s = apds.from_fsa(m)
    assert {r.kind for r in s.rules} == {"push", "eps"}
    for n in range(12):
        w = ["a"] * n
        assert apds.decide(s, Atom("odd", (word(w),))) == m.accepts("odd", w) == (n % 2 == 1)


def test_random_agreement_with_fixpoint():
    rng = random.Random(12)
    for _ in range(60):
        s = gen.random_apds(rng)
        for n in range(4):
            facts = apds.naive_fixpoint(s, apds.default_max_len(s, n))
            for w in itertools.product(sorted(s.symbols), repeat=n):
                for p in s.predicates:
                    a = Atom(p, (word(w),))
                    got = apds.decide(s, a)
                    assert got == ((p, w) in facts)
                    if got:
                        proof = apds.prove(s, a)
                        check_proof(proof, apds.apds_rule_table(apds.saturate(s)))
