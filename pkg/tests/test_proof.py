import itertools
import random

import pytest

from cutelim import apds, fdl, gen, natded, sequent
from cutelim.proof import (
    CheckError, Proof, RuleInstance, check_proof, contains_only_intros, cut_paths,
    is_cut_free, is_general_cut, is_valid, leaf, multiset_order_less, node,
    respects_order, size_order_less,
)
from cutelim.syntax import And, Atom, Imp, Sequent
from cutelim.textio import parse_formula, parse_sequent

P, Q = Atom("P"), Atom("Q")


def test_multiset_order_examples():
    # the first premise of imp-left over a conjunction
    b = Sequent([Imp(And(P, Q), P)], Q)
    a = Sequent([Imp(P, P)], P)
    assert multiset_order_less(a, b)
    assert not multiset_order_less(Sequent([Imp(P, Imp(Q, P))], Q), b)
    assert not multiset_order_less(b, b)
    # adding a formula as large as the one removed is not a decrease
    assert not multiset_order_less(Sequent([And(P, Q)], P), Sequent([And(Q, P)], Q))


def test_orders_are_strict_partial_orders():
    fs = [P, Q, And(P, Q), Imp(P, Q), Imp(And(P, Q), P)]
    seqs = [Sequent(c, g) for n in range(3) for c in itertools.combinations_with_replacement(fs, n) for g in fs[:3]]
    for less in (multiset_order_less, size_order_less):
        for a in seqs:
            assert not less(a, a)
        for a, b in itertools.product(seqs[:40], repeat=2):
            if less(a, b):
                assert not less(b, a)
                for c in seqs[:40]:
                    if less(b, c):
                        assert less(a, c)


def test_check_reports_path():
    bad = node("and_l", parse_sequent("P & Q |- P"), [leaf("axiom", parse_sequent("P, Q |- Q"))],
               principal=And(P, Q))
    with pytest.raises(CheckError) as exc:
        check_proof(bad, sequent.g_rule_table())
    assert exc.value.path == (0,)
    assert not is_valid(bad, sequent.g_rule_table())


def test_axiom_needs_atomic_goal():
    with pytest.raises(CheckError):
        check_proof(leaf("axiom", parse_sequent("P & Q |- P & Q")), sequent.g_rule_table())


def test_missing_or_extra_instance_fields():
    with pytest.raises(CheckError):
        check_proof(leaf("axiom", parse_sequent("P |- P"), principal=P), sequent.g_rule_table())
    with pytest.raises(CheckError):
        check_proof(Proof(RuleInstance("and_l"), parse_sequent("P & Q |- P")), sequent.g_rule_table())


def test_unknown_rule():
    with pytest.raises(CheckError):
        check_proof(leaf("magic", parse_sequent("P |- P")), sequent.g_rule_table())


def test_nd_axiom_topped_elimination_is_a_general_cut():
    s = parse_sequent("P & Q |- P")
    pr = node("and_e1", s, [leaf("axiom", parse_sequent("P & Q |- P & Q"))], principal=And(P, Q))
    table = natded.nd_rule_table()
    check_proof(pr, table)
    assert is_general_cut(pr, table)
    assert not natded.is_specific_cut(pr)
    assert cut_paths(pr, table) == [()]


def _corpus():
    rng = random.Random(11)
    out = []
    for _ in range(60):
        m = gen.random_model(rng)
        out.append((gen.random_fdl_proof(rng, m), fdl.fdl_rule_table(m)))
    for system, p in gen.random_apds_proofs(rng, 60):
        out.append((p, apds.apds_rule_table(system)))
    out += [(p, sequent.g_rule_table()) for p in gen.harvest(rng, sequent.prove_g, 60, gen.random_prop_sequent)]
    out += [(p, sequent.k_rule_table()) for p in gen.harvest_k(rng, 60)]
    out += [(p, sequent.d_rule_table()) for p in gen.harvest_d(rng, 60)]
    out += [(p, natded.nd_rule_table()) for p in gen.random_nd_proofs(rng, 60)]
    return out


def test_key_lemma_and_intro_flags_respect_orders():
    for p, table in _corpus():
        check_proof(p, table)
        assert is_cut_free(p, table) == contains_only_intros(p, table)
        for _, n in p.nodes():
            if table.rule(n.rule.rule_id).intro:
                assert respects_order(n, table), (table.calculus, n.rule.rule_id)


def test_non_introductions_have_violating_instances():
    # contraction grows the context; contr-imp-left keeps its principal
    c = node("contraction", parse_sequent("P -> Q, P |- Q"),
             [leaf("axiom", parse_sequent("P -> Q, P -> Q, P |- Q"))], principal=Imp(P, Q))
    assert not respects_order(c, sequent.g_rule_table())
    s = parse_sequent("P -> Q, P |- Q")
    k = sequent.prove_k(s)
    assert k.rule.rule_id == "contr_imp_l" and not respects_order(k, sequent.k_rule_table())
    f = parse_sequent("forall x. P(x) |- P(a)")
    d = sequent.prove_d(f, sequent.SearchBudget(witness_universe=[parse_formula("P(a)").args[0]]))
    assert d.rule.rule_id == "contr_forall_l" and not respects_order(d, sequent.d_rule_table())
    nd = node("and_e1", parse_sequent("|- P"),
              [node("and_i", parse_sequent("|- P & (P -> P)"),
                    [leaf("axiom", parse_sequent("|- P")), leaf("axiom", parse_sequent("|- P -> P"))])],
              principal=parse_formula("P & (P -> P)"))
    assert not respects_order(nd, natded.nd_rule_table())
