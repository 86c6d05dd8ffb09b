"""Constructive natural deduction.

``nd_rule_table`` checks arbitrary proofs, with eliminations.
``pseudo_table`` is the pseudo-automaton made of the introduction rules,
the axiom and ``delay``, which closes any sequent with a frozen
hypothesis.  ``prove_delay`` searches that pseudo-automaton.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .proof import Mismatch, Proof, Rule, RuleInstance, RuleTable, subst_proof
from .syntax import (
    And, BOT, Const, Exists, Forall, Formula, Frozen, Imp, Or, Sequent, Top, Var,
    constants, free_vars, fresh_name, instantiate, is_atomic,
)


class NonAtomicContext(ValueError):
    pass


class UnsupportedFragment(Exception):
    pass


def _seq(c):
    if not isinstance(c, Sequent):
        raise Mismatch("conclusion is not a sequent")
    return c


def _ctx_vars(ctx):
    out = frozenset()
    for f in ctx:
        out |= free_vars(f)
    return out


# ---------------------------------------------------------------------------
# Rule expanders shared by both tables

def _axiom(c, i):
    s = _seq(c)
    if s.goal not in s.context:
        raise Mismatch("goal does not occur in the context")
    return []


def _top_i(c, i):
    if not isinstance(_seq(c).goal, Top):
        raise Mismatch("goal is not top")
    return []


def _and_i(c, i):
    s = _seq(c)
    if not isinstance(s.goal, And):
        raise Mismatch("goal is not a conjunction")
    return [Sequent(s.context, s.goal.left), Sequent(s.context, s.goal.right)]


def _or_i(side):
    def ex(c, i):
        s = _seq(c)
        if not isinstance(s.goal, Or):
            raise Mismatch("goal is not a disjunction")
        return [Sequent(s.context, s.goal.right if side else s.goal.left)]
    return ex


def _imp_i(c, i):
    s = _seq(c)
    if not isinstance(s.goal, Imp):
        raise Mismatch("goal is not an implication")
    return [Sequent(s.context + (s.goal.left,), s.goal.right)]


def _forall_i(c, i):
    s = _seq(c)
    if not isinstance(s.goal, Forall):
        raise Mismatch("goal is not universal")
    y = i.fresh_var
    if y in _ctx_vars(s.context) or y in free_vars(s.goal):
        raise Mismatch(f"eigenvariable {y} is free in the conclusion")
    return [Sequent(s.context, instantiate(s.goal, Var(y)))]


def _exists_i(c, i):
    s = _seq(c)
    if not isinstance(s.goal, Exists):
        raise Mismatch("goal is not existential")
    return [Sequent(s.context, instantiate(s.goal, i.witness))]


def _bot_e(c, i):
    s = _seq(c)
    return [Sequent(s.context, BOT)]


def _and_e(side):
    def ex(c, i):
        s = _seq(c)
        p = i.principal
        if not isinstance(p, And) or (p.right if side else p.left) != s.goal:
            raise Mismatch("principal is not a conjunction with the goal as conjunct")
        return [Sequent(s.context, p)]
    return ex


def _or_e(c, i):
    s = _seq(c)
    p = i.principal
    if not isinstance(p, Or):
        raise Mismatch("principal is not a disjunction")
    return [Sequent(s.context, p), Sequent(s.context + (p.left,), s.goal),
            Sequent(s.context + (p.right,), s.goal)]


def _imp_e(c, i):
    s = _seq(c)
    p = i.principal
    if not isinstance(p, Imp) or p.right != s.goal:
        raise Mismatch("principal is not an implication concluding the goal")
    return [Sequent(s.context, p), Sequent(s.context, p.left)]


def _forall_e(c, i):
    s = _seq(c)
    p = i.principal
    if not isinstance(p, Forall):
        raise Mismatch("principal is not universal")
    if instantiate(p, i.witness) != s.goal:
        raise Mismatch("goal is not the instance of the principal")
    return [Sequent(s.context, p)]


def _exists_e(c, i):
    s = _seq(c)
    p = i.principal
    if not isinstance(p, Exists):
        raise Mismatch("principal is not existential")
    y = i.fresh_var
    if y in _ctx_vars(s.context) or y in free_vars(s.goal) or y in free_vars(p):
        raise Mismatch(f"eigenvariable {y} is free in the conclusion")
    return [Sequent(s.context, p), Sequent(s.context + (instantiate(p, Var(y)),), s.goal)]


def _delay(c, i):
    s = _seq(c)
    if not any(isinstance(f, Frozen) for f in s.context):
        raise Mismatch("no frozen hypothesis in the context")
    return []


_P, _W, _F = frozenset({"principal"}), frozenset({"witness"}), frozenset({"fresh"})

INTROS = {"axiom", "top_i", "and_i", "or_i1", "or_i2", "imp_i", "forall_i", "exists_i"}
ELIMS = {"bot_e", "and_e1", "and_e2", "or_e", "imp_e", "forall_e", "exists_e"}

_INTRO_RULES = [
    Rule("axiom", True, _axiom),
    Rule("top_i", True, _top_i),
    Rule("and_i", True, _and_i),
    Rule("or_i1", True, _or_i(0)),
    Rule("or_i2", True, _or_i(1)),
    Rule("imp_i", True, _imp_i),
    Rule("forall_i", True, _forall_i, None, _F),
    Rule("exists_i", True, _exists_i, None, _W),
]

_ELIM_RULES = [
    Rule("bot_e", False, _bot_e, (0,)),
    Rule("and_e1", False, _and_e(0), (0,), _P),
    Rule("and_e2", False, _and_e(1), (0,), _P),
    Rule("or_e", False, _or_e, (0,), _P),
    Rule("imp_e", False, _imp_e, (0,), _P),
    Rule("forall_e", False, _forall_e, (0,), _P | _W),
    Rule("exists_e", False, _exists_e, (0,), _P | _F),
]


def nd_rule_table() -> RuleTable:
    return RuleTable("ND", {r.name: r for r in _INTRO_RULES + _ELIM_RULES})


def pseudo_table() -> RuleTable:
    rules = {r.name: r for r in _INTRO_RULES}
    rules["delay"] = Rule("delay", True, _delay)
    return RuleTable("PSEUDO_A", rules)


MATCHING_INTRO = {
    "and_e1": {"and_i"}, "and_e2": {"and_i"}, "or_e": {"or_i1", "or_i2"},
    "imp_e": {"imp_i"}, "forall_e": {"forall_i"}, "exists_e": {"exists_i"},
}


def is_specific_cut(node: Proof) -> bool:
    """An elimination whose major premise ends with the matching introduction."""
    want = MATCHING_INTRO.get(node.rule.rule_id)
    return bool(want) and node.premises[0].rule.rule_id in want


def has_specific_cut(proof: Proof) -> bool:
    return any(is_specific_cut(n) for _, n in proof.nodes())


# ---------------------------------------------------------------------------
# Freeze and unfreeze

def freeze(f: Formula) -> Formula:
    if isinstance(f, Imp):
        left = f.left if is_atomic(f.left) else Frozen(f.left)
        return Imp(left, freeze(f.right))
    if isinstance(f, (And, Or)):
        return type(f)(freeze(f.left), freeze(f.right))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, freeze(f.body))
    return f


def unfreeze(f: Formula) -> Formula:
    if isinstance(f, Frozen):
        return unfreeze(f.inner)
    if isinstance(f, (And, Or, Imp)):
        return type(f)(unfreeze(f.left), unfreeze(f.right))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, unfreeze(f.body))
    return f


def unfreeze_sequent(s: Sequent) -> Sequent:
    return Sequent([unfreeze(f) for f in s.context], unfreeze(s.goal))


# ---------------------------------------------------------------------------
# Search in the pseudo-automaton

@dataclass(frozen=True)
class DelayedLeaf:
    sequent: Sequent
    location: tuple


def default_universe(s: Sequent) -> list:
    found = set()
    names = set()
    for f in s.formulas():
        found |= constants(f)
        names |= {str(c) for c in constants(f)} | set(free_vars(f))
    if found:
        return sorted(found, key=str)
    return [Const(fresh_name("c", names))]


def prove_delay(sequent: Sequent, universe=None):
    """Return ``(proof, delayed_leaves)`` or None.

    The goal is expected to be frozen already; the context must consist
    of atoms.  Existential witnesses range over ``universe``.
    """
    for f in sequent.context:
        if not is_atomic(f):
            raise NonAtomicContext(f"{f} is not atomic")
    universe = list(universe) if universe is not None else default_universe(sequent)

    def go(s: Sequent):
        if any(isinstance(f, Frozen) for f in s.context):
            return Proof(RuleInstance("delay"), s)
        g = s.goal
        if g in s.context:
            return Proof(RuleInstance("axiom"), s)
        if isinstance(g, Top):
            return Proof(RuleInstance("top_i"), s)
        if isinstance(g, And):
            a = go(Sequent(s.context, g.left))
            b = go(Sequent(s.context, g.right)) if a else None
            return Proof(RuleInstance("and_i"), s, (a, b)) if b else None
        if isinstance(g, Or):
            for rid, part in (("or_i1", g.left), ("or_i2", g.right)):
                p = go(Sequent(s.context, part))
                if p:
                    return Proof(RuleInstance(rid), s, (p,))
            return None
        if isinstance(g, Imp):
            p = go(Sequent(s.context + (g.left,), g.right))
            return Proof(RuleInstance("imp_i"), s, (p,)) if p else None
        if isinstance(g, Forall):
            avoid = s.free_vars() | {str(t) for t in universe}
            y = fresh_name(g.var, avoid)
            p = go(Sequent(s.context, instantiate(g, Var(y))))
            return Proof(RuleInstance("forall_i", fresh_var=y), s, (p,)) if p else None
        if isinstance(g, Exists):
            for t in universe:
                p = go(Sequent(s.context, instantiate(g, t)))
                if p:
                    return Proof(RuleInstance("exists_i", witness=t), s, (p,))
            return None
        return None

    proof = go(sequent)
    if proof is None:
        return None
    leaves = [DelayedLeaf(n.conclusion, path) for path, n in proof.nodes() if n.rule.rule_id == "delay"]
    return proof, leaves


def intro_prefix_length(proof: Proof) -> int:
    """Number of successive introduction rules from the root along the first premise."""
    n = 0
    node = proof
    while node.rule.rule_id in INTROS | {"delay"}:
        n += 1
        if not node.premises:
            break
        node = node.premises[0]
    return n


# ---------------------------------------------------------------------------
# Disjunction property

class Disjunction(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    NOT_APPLICABLE = "not-applicable"
    VIOLATION = "violation"


def _split(goal):
    prefix = []
    while isinstance(goal, Forall):
        prefix.append(goal.var)
        goal = goal.body
    return prefix, goal


def _close(prefix, body):
    for v in reversed(prefix):
        body = Forall(v, body)
    return body


def check_disjunction_property(goal: Formula, prover=None, budget=None) -> Disjunction:
    """For a provable ``forall xs. B1 | B2`` report which ``forall xs. Bi`` is provable."""
    from .sequent import BudgetExhausted, SearchBudget, prove_d

    if free_vars(goal):
        raise ValueError("goal must be closed")
    prover = prover or prove_d
    budget = budget or SearchBudget()
    prefix, body = _split(goal)
    if not isinstance(body, Or):
        return Disjunction.NOT_APPLICABLE

    def provable(f):
        try:
            return prover(Sequent((), f), budget) is not None
        except BudgetExhausted as exc:
            raise UnsupportedFragment(str(exc)) from None

    if not provable(goal):
        return Disjunction.NOT_APPLICABLE
    if provable(_close(prefix, body.left)):
        return Disjunction.LEFT
    if provable(_close(prefix, body.right)):
        return Disjunction.RIGHT
    return Disjunction.VIOLATION


# ---------------------------------------------------------------------------
# Structural reduction of specific cuts (conjunction and universal pairs)

def reduce_specific_cuts(proof: Proof) -> Proof:
    """Remove conjunction and universal specific cuts, bottom-up."""
    prems = tuple(reduce_specific_cuts(p) for p in proof.premises)
    node = Proof(proof.rule, proof.conclusion, prems)
    rid = node.rule.rule_id
    if rid in ("and_e1", "and_e2") and prems[0].rule.rule_id == "and_i":
        return prems[0].premises[0 if rid == "and_e1" else 1]
    if rid == "forall_e" and prems[0].rule.rule_id == "forall_i":
        intro = prems[0]
        return reduce_specific_cuts(subst_proof(intro.premises[0], intro.rule.fresh_var, node.rule.witness))
    return node
