import random

import pytest

from cutelim import gen, sequent
from cutelim.oracle import enumerate_formulas
from cutelim.proof import Proof, RuleInstance, check_proof, is_valid, leaf, multiset_order_less, node
from cutelim.sequent import (
    SearchBudget, contract_k, d_rule_table, equiv_check, equiv_line, g_rule_table, invert_k,
    k_rule_table, prove_d, prove_g, prove_k, strip_imp_k, weaken_d,
)
from cutelim.syntax import Atom, Const, Sequent, Var
from cutelim.textio import parse_formula, parse_sequent, parse_term

TABLES = {prove_g: g_rule_table(), prove_k: k_rule_table(), prove_d: d_rule_table()}


def test_inventories():
    g, k, d = g_rule_table(), k_rule_table(), d_rule_table()
    assert "contraction" in g.rules and "contraction" not in k.rules
    assert {"contr_imp_l", "contr_forall_l"} <= set(k.rules) and "imp_l" not in k.rules
    assert "contr_imp_l" not in d.rules
    assert {"imp_l_axiom", "imp_l_top", "imp_l_and", "imp_l_or1", "imp_l_or2", "imp_l_imp",
            "imp_l_forall", "imp_l_exists"} <= set(d.rules)
    assert not g.rule("contraction").intro
    assert not k.rule("contr_imp_l").intro and not k.rule("contr_forall_l").intro
    assert d.rule("imp_l_imp").intro and not d.rule("contr_forall_l").intro
    assert d.order == "multiset" and g.order == k.order == "size"


def test_imp_l_imp_node():
    s = parse_sequent("(C -> D) -> B |- G")
    n = node("imp_l_imp", s, [leaf("axiom", parse_sequent("D -> B, C |- D")),
                             leaf("axiom", parse_sequent("B |- G"))], principal=parse_formula("(C -> D) -> B"))
    from cutelim.proof import check_node, respects_order
    check_node(n, d_rule_table())
    assert respects_order(n, d_rule_table())


def test_contr_forall_keeps_principal():
    s = parse_sequent("forall x. P(x) |- P(a)")
    p = node("contr_forall_l", s, [leaf("axiom", parse_sequent("forall x. P(x), P(a) |- P(a)"))],
             principal=parse_formula("forall x. P(x)"), witness=Const("a"))
    check_proof(p, k_rule_table())


@pytest.mark.parametrize("text,want", [
    ("P & Q |- P", True),
    ("|- ((P -> Q) -> P) -> P", False),
    ("(P | (P -> Q)) -> Q |- Q", True),
    ("|- P | (P -> Q)", False),
    ("P, P -> Q |- Q", True),
    ("|- ((P | (P -> bot)) -> bot) -> bot", True),
    ("|- P -> P", True),
])
def test_named_instances(text, want):
    s = parse_sequent(text)
    for prover, table in TABLES.items():
        p = prover(s)
        assert (p is not None) == want
        if p is not None:
            check_proof(p, table)


def test_d_shapes():
    p = prove_d(parse_sequent("P, P -> Q |- Q"))
    assert p.rule.rule_id == "imp_l_axiom"
    p = prove_d(parse_sequent("(P | (P -> Q)) -> Q |- Q"))
    assert p.rule.rule_id in ("imp_l_or1", "imp_l_or2")


def test_g_quantified_example_uses_contraction():
    s = parse_sequent("forall x. (P(x) & (P(f(x)) -> Q)) |- Q")
    b = SearchBudget(witness_universe=[parse_term("c"), parse_term("f(c)")])
    p = prove_g(s, b)
    check_proof(p, g_rule_table())
    assert any(n.rule.rule_id == "contraction" for _, n in p.nodes())


def test_budget():
    with pytest.raises(ValueError):
        SearchBudget(max_depth=0)
    with pytest.raises(sequent.BudgetExhausted):
        prove_d(parse_sequent("forall x. (P(x) & (P(f(x)) -> Q)) |- Q"))


def test_d_edges_decrease():
    rng = random.Random(3)
    sequent.CHECK_MEASURE = True
    try:
        proofs = gen.harvest(rng, prove_d, 200, gen.random_prop_sequent)
    finally:
        sequent.CHECK_MEASURE = False
    for p in proofs:
        for _, n in p.nodes():
            for q in n.premises:
                assert multiset_order_less(q.conclusion, n.conclusion)


def test_k_agrees_with_g_exhaustively_small():
    for f in enumerate_formulas(["p", "q"], 2):
        s = Sequent((), f)
        assert (prove_k(s) is None) == (prove_g(s) is None)


def test_random_sequents_four_way():
    rng = random.Random(4)
    for _ in range(400):
        s = gen.random_prop_sequent(rng, connectives=5)
        r = equiv_check(s)
        assert len(set(r.values())) == 1, equiv_line(s, r)


def test_equiv_line_format():
    line = equiv_line(parse_sequent("|- P -> P"), equiv_check(parse_sequent("|- P -> P")))
    assert line == "|- P -> P\ttrue\ttrue\ttrue\ttrue"


# structural transformations ------------------------------------------------

def test_invert_principal_and_idle():
    p = prove_k(parse_sequent("P & Q |- P"))
    out = invert_k(p, parse_formula("P & Q"))
    assert out is p.premises[0]
    idle = sequent.weaken(prove_k(parse_sequent("R |- R")), parse_formula("P & Q"))
    out = invert_k(idle, parse_formula("P & Q"))
    assert out.conclusion == parse_sequent("R, P, Q |- R")
    check_proof(out, k_rule_table())


def test_invert_errors():
    p = prove_k(parse_sequent("P & Q |- P"))
    with pytest.raises(sequent.TargetNotPresent):
        invert_k(p, parse_formula("Q & P"))
    q = prove_k(parse_sequent("exists x. P(x), R(y) |- exists z. P(z)", {"y"}))
    with pytest.raises(sequent.EigenvariableCapture):
        invert_k(q, parse_formula("exists x. P(x)"), "y")
    out = invert_k(q, parse_formula("exists x. P(x)"), "w")
    check_proof(out, k_rule_table())
    assert parse_formula("P(w)", {"w"}) in out.conclusion.context


def test_strip_principal():
    p = prove_k(parse_sequent("P, P -> Q |- Q"))
    assert p.rule.rule_id == "contr_imp_l"
    assert strip_imp_k(p, parse_formula("P -> Q")) is p.premises[1]


def test_contract_and_case():
    s = parse_sequent("P & Q, P & Q |- P")
    p = prove_k(s)
    out = contract_k(p, parse_formula("P & Q"))
    check_proof(out, k_rule_table())
    assert out.conclusion == parse_sequent("P & Q |- P")
    assert out.height() <= p.height()
    with pytest.raises(sequent.TargetNotDuplicated):
        contract_k(out, parse_formula("P & Q"))


def test_weaken_renames_eigenvariables():
    p = prove_d(parse_sequent("|- forall x. P(x) -> P(x)"))
    eigen = p.rule.fresh_var
    extra = parse_formula(f"P({eigen})", {eigen})
    w = weaken_d(p, extra)
    check_proof(w, d_rule_table())
    assert w.rule.fresh_var != eigen and w.height() == p.height()
    ax = weaken_d(prove_d(parse_sequent("P |- P")), parse_formula("Q"))
    assert ax.conclusion == parse_sequent("P, Q |- P")
