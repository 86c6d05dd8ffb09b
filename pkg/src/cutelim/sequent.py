"""The constructive sequent calculi G, K and D.

G is Gentzen style with an explicit contraction rule.  K builds
contraction into its implication-left and universal-left rules.  D
replaces K's implication-left by one rule per shape of the antecedent,
which makes every rule except contr-forall-left decrease the multiset
order on sequents, so propositional search terminates without loop
checks.

Provers return a :class:`Proof`, return None when the search space is
exhausted, and raise :class:`BudgetExhausted` when the answer depends on
a depth limit, a reuse cap, or the finite witness universe.
"""
from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass

from .proof import (
    Mismatch, Proof, Rule, RuleInstance, RuleTable, multiset_order_less,
    proof_vars, rename_eigenvariables, subst_proof,
)
from .syntax import (
    And, Atom, BOT, Bot, Const, Exists, Forall, Formula, Imp, Or, Sequent, Top, Var,
    constants, free_vars, fresh_name, instantiate, is_propositional,
)

CHECK_MEASURE = False  # assert the multiset decrease on every D search step


class BudgetExhausted(Exception):
    pass


class TargetNotPresent(ValueError):
    pass


class TargetNotDuplicated(ValueError):
    pass


class EigenvariableCapture(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 200
    witness_universe: tuple | None = None
    history_mode: bool = True
    reuse_cap: int = 3

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.witness_universe is not None:
            object.__setattr__(self, "witness_universe", tuple(self.witness_universe))


# ---------------------------------------------------------------------------
# Rule expanders

def _seq(c):
    if not isinstance(c, Sequent):
        raise Mismatch("conclusion is not a sequent")
    return c


def _take(s, p, kind):
    """Context with one occurrence of the principal ``p`` removed."""
    if not isinstance(p, kind):
        raise Mismatch(f"principal {p} has the wrong shape")
    if p not in s.context:
        raise Mismatch(f"principal {p} is not in the context")
    return s.without(p)


def _vars(ctx):
    out = frozenset()
    for f in ctx:
        out |= free_vars(f)
    return out


def axiom(c, i):
    s = _seq(c)
    if not isinstance(s.goal, Atom):
        raise Mismatch("axiom needs an atomic goal")
    if s.goal not in s.context:
        raise Mismatch("goal does not occur in the context")
    return []


def top_r(c, i):
    if not isinstance(_seq(c).goal, Top):
        raise Mismatch("goal is not top")
    return []


def bot_l(c, i):
    if BOT not in _seq(c).context:
        raise Mismatch("no bot in the context")
    return []


def contraction(c, i):
    s = _seq(c)
    if i.principal not in s.context:
        raise Mismatch("contracted formula is not in the context")
    return [Sequent(s.context + (i.principal,), s.goal)]


def and_l(c, i):
    s = _seq(c)
    g = _take(s, i.principal, And)
    return [Sequent(g + (i.principal.left, i.principal.right), s.goal)]


def and_r(c, i):
    s = _seq(c)
    if not isinstance(s.goal, And):
        raise Mismatch("goal is not a conjunction")
    return [Sequent(s.context, s.goal.left), Sequent(s.context, s.goal.right)]


def or_l(c, i):
    s = _seq(c)
    g = _take(s, i.principal, Or)
    return [Sequent(g + (i.principal.left,), s.goal), Sequent(g + (i.principal.right,), s.goal)]


def _or_r(side):
    def ex(c, i):
        s = _seq(c)
        if not isinstance(s.goal, Or):
            raise Mismatch("goal is not a disjunction")
        return [Sequent(s.context, s.goal.right if side else s.goal.left)]
    return ex


def imp_l(c, i):
    s = _seq(c)
    g = _take(s, i.principal, Imp)
    return [Sequent(g, i.principal.left), Sequent(g + (i.principal.right,), s.goal)]


def imp_r(c, i):
    s = _seq(c)
    if not isinstance(s.goal, Imp):
        raise Mismatch("goal is not an implication")
    return [Sequent(s.context + (s.goal.left,), s.goal.right)]


def forall_l(c, i):
    s = _seq(c)
    g = _take(s, i.principal, Forall)
    return [Sequent(g + (instantiate(i.principal, i.witness),), s.goal)]


def forall_r(c, i):
    s = _seq(c)
    if not isinstance(s.goal, Forall):
        raise Mismatch("goal is not universal")
    y = i.fresh_var
    if y in _vars(s.context) or y in free_vars(s.goal):
        raise Mismatch(f"eigenvariable {y} is free in the conclusion")
    return [Sequent(s.context, instantiate(s.goal, Var(y)))]


def exists_l(c, i):
    s = _seq(c)
    g = _take(s, i.principal, Exists)
    y = i.fresh_var
    if y in _vars(s.context) or y in free_vars(s.goal):
        raise Mismatch(f"eigenvariable {y} is free in the conclusion")
    return [Sequent(g + (instantiate(i.principal, Var(y)),), s.goal)]


def exists_r(c, i):
    s = _seq(c)
    if not isinstance(s.goal, Exists):
        raise Mismatch("goal is not existential")
    return [Sequent(s.context, instantiate(s.goal, i.witness))]


def contr_imp_l(c, i):
    s = _seq(c)
    g = _take(s, i.principal, Imp)
    return [Sequent(s.context, i.principal.left), Sequent(g + (i.principal.right,), s.goal)]


def contr_forall_l(c, i):
    s = _seq(c)
    _take(s, i.principal, Forall)
    return [Sequent(s.context + (instantiate(i.principal, i.witness),), s.goal)]


def _imp_with(s, p, kind):
    g = _take(s, p, Imp)
    if not isinstance(p.left, kind):
        raise Mismatch(f"antecedent of {p} has the wrong shape")
    return g


def imp_l_axiom(c, i):
    s = _seq(c)
    p = i.principal
    g = _imp_with(s, p, Atom)
    if p.left not in g:
        raise Mismatch(f"{p.left} is not in the context")
    return [Sequent(g + (p.right,), s.goal)]


def imp_l_top(c, i):
    s = _seq(c)
    g = _imp_with(s, i.principal, Top)
    return [Sequent(g + (i.principal.right,), s.goal)]


def imp_l_and(c, i):
    s = _seq(c)
    p = i.principal
    g = _imp_with(s, p, And)
    cc, d, b = p.left.left, p.left.right, p.right
    return [Sequent(g + (Imp(cc, b),), cc), Sequent(g + (Imp(d, b),), d), Sequent(g + (b,), s.goal)]


def _imp_l_or(side):
    def ex(c, i):
        s = _seq(c)
        p = i.principal
        g = _imp_with(s, p, Or)
        cc, d, b = p.left.left, p.left.right, p.right
        return [Sequent(g + (Imp(cc, b), Imp(d, b)), d if side else cc), Sequent(g + (b,), s.goal)]
    return ex


def imp_l_imp(c, i):
    s = _seq(c)
    p = i.principal
    g = _imp_with(s, p, Imp)
    cc, d, b = p.left.left, p.left.right, p.right
    return [Sequent(g + (Imp(d, b), cc), d), Sequent(g + (b,), s.goal)]


def imp_l_forall(c, i):
    s = _seq(c)
    p = i.principal
    g = _imp_with(s, p, Forall)
    y = i.fresh_var
    if y in _vars(g) or y in free_vars(p):
        raise Mismatch(f"eigenvariable {y} is free in the conclusion")
    return [Sequent(s.context, instantiate(p.left, Var(y))), Sequent(g + (p.right,), s.goal)]


def imp_l_exists(c, i):
    s = _seq(c)
    p = i.principal
    g = _imp_with(s, p, Exists)
    return [Sequent(s.context, instantiate(p.left, i.witness)), Sequent(g + (p.right,), s.goal)]


_P, _W, _F = frozenset({"principal"}), frozenset({"witness"}), frozenset({"fresh"})

_COMMON = [
    Rule("axiom", True, axiom),
    Rule("top_r", True, top_r),
    Rule("bot_l", True, bot_l),
    Rule("and_l", True, and_l, None, _P),
    Rule("and_r", True, and_r),
    Rule("or_l", True, or_l, None, _P),
    Rule("or_r1", True, _or_r(0)),
    Rule("or_r2", True, _or_r(1)),
    Rule("imp_r", True, imp_r),
    Rule("forall_r", True, forall_r, None, _F),
    Rule("exists_l", True, exists_l, None, _P | _F),
    Rule("exists_r", True, exists_r, None, _W),
]

_G_ONLY = [
    Rule("contraction", False, contraction, None, _P),
    Rule("imp_l", True, imp_l, None, _P),
    Rule("forall_l", True, forall_l, None, _P | _W),
]

_CONTR_IMP = Rule("contr_imp_l", False, contr_imp_l, (0,), _P)
_CONTR_FORALL = Rule("contr_forall_l", False, contr_forall_l, None, _P | _W)

_D_ONLY = [
    Rule("imp_l_axiom", True, imp_l_axiom, None, _P),
    Rule("imp_l_top", True, imp_l_top, None, _P),
    Rule("imp_l_and", True, imp_l_and, None, _P),
    Rule("imp_l_or1", True, _imp_l_or(0), None, _P),
    Rule("imp_l_or2", True, _imp_l_or(1), None, _P),
    Rule("imp_l_imp", True, imp_l_imp, None, _P),
    # these keep the principal and change the goal, so they need not decrease
    Rule("imp_l_forall", False, imp_l_forall, (0,), _P | _F),
    Rule("imp_l_exists", False, imp_l_exists, (0,), _P | _W),
]


def g_rule_table() -> RuleTable:
    return RuleTable("G", {r.name: r for r in _COMMON + _G_ONLY}, order="size")


def k_rule_table() -> RuleTable:
    return RuleTable("K", {r.name: r for r in _COMMON + [_CONTR_IMP, _CONTR_FORALL]}, order="size")


def d_rule_table() -> RuleTable:
    return RuleTable("D", {r.name: r for r in _COMMON + _D_ONLY + [_CONTR_FORALL]}, order="multiset")


TABLES = {"G": g_rule_table, "K": k_rule_table, "D": d_rule_table}


# ---------------------------------------------------------------------------
# Search

def default_witnesses(s: Sequent) -> tuple:
    """Closed subterms of the sequent plus one fresh constant."""
    found = set()
    names = set(s.free_vars())
    for f in s.formulas():
        found |= constants(f)
    names |= {str(t) for t in found}
    fresh = Const(fresh_name("c", names))
    return tuple(sorted(found, key=str)) + (fresh,)


class _Search:
    """Backward proof search shared by the three calculi."""

    def __init__(self, calculus, budget, root):
        self.calc = calculus
        self.budget = budget
        self.universe = budget.witness_universe if budget.witness_universe is not None \
            else default_witnesses(root)
        self.truncated = False
        self.success = {}
        self.failure = set()
        self.use_history = budget.history_mode and calculus != "D"

    # -- helpers
    def witnesses(self, s):
        extra = tuple(Var(v) for v in sorted(s.free_vars()))
        seen, out = set(), []
        for t in tuple(self.universe) + extra:
            if t not in seen:
                seen.add(t)
                out.append(t)
        return out

    def fresh(self, base, s):
        avoid = set(s.free_vars())
        for t in self.universe:
            avoid |= {str(t)}
        return fresh_name(base, avoid)

    # -- driver
    def run(self, s):
        proof, _ = self.search(s, 0, frozenset(), ())
        if proof is None and self.truncated:
            raise BudgetExhausted("search truncated by the budget")
        return proof

    def search(self, s, depth, hist, uses):
        """Return ``(proof or None, dirty)``; dirty failures depend on the branch history."""
        hit = self.success.get(s)
        if hit is not None:
            return hit, False
        key = (s, uses)
        if key in self.failure:
            return None, False
        if depth > self.budget.max_depth:
            self.truncated = True
            return None, True
        proof, dirty = self.expand(s, depth, hist, uses)
        if proof is not None:
            self.success[s] = proof
        elif not dirty:
            self.failure.add(key)
        return proof, dirty

    def premises(self, prems, depth, hist, uses):
        out, dirty = [], False
        for p in prems:
            r, d = self.search(p, depth + 1, hist, uses)
            dirty = dirty or d
            if r is None:
                return None, dirty
            out.append(r)
        return out, dirty

    def attempt(self, s, inst, prems, depth, hist, uses, wrap=None):
        if CHECK_MEASURE and self.calc == "D" and inst.rule_id != "contr_forall_l":
            for p in prems:
                assert multiset_order_less(p, s), f"{inst.rule_id} does not decrease: {p} vs {s}"
        got, dirty = self.premises(prems, depth, hist, uses)
        if got is None:
            return None, dirty
        proof = Proof(inst, s, tuple(got))
        if wrap is not None:
            proof = wrap(proof)
        return proof, dirty

    def expand(self, s, depth, hist, uses):
        ctx, goal = s.context, s.goal
        # closing rules
        if isinstance(goal, Atom) and goal in ctx:
            return Proof(RuleInstance("axiom"), s), False
        if isinstance(goal, Top):
            return Proof(RuleInstance("top_r"), s), False
        if BOT in ctx:
            return Proof(RuleInstance("bot_l"), s), False

        # invertible rules: commit to the first that applies
        for f in ctx:
            if isinstance(f, And):
                return self.attempt(s, RuleInstance("and_l", principal=f), and_l(s, RuleInstance("and_l", principal=f)), depth, hist, uses)
        for f in ctx:
            if isinstance(f, Exists):
                y = self.fresh(f.var, s)
                inst = RuleInstance("exists_l", principal=f, fresh_var=y)
                return self.attempt(s, inst, exists_l(s, inst), depth, hist, uses)
        for f in ctx:
            if isinstance(f, Or):
                inst = RuleInstance("or_l", principal=f)
                return self.attempt(s, inst, or_l(s, inst), depth, hist, uses)
        if self.calc == "D":
            for f in ctx:
                if isinstance(f, Imp) and (isinstance(f.left, Top) or (isinstance(f.left, Atom) and f.left in s.without(f))):
                    rid = "imp_l_top" if isinstance(f.left, Top) else "imp_l_axiom"
                    inst = RuleInstance(rid, principal=f)
                    ex = imp_l_top if rid == "imp_l_top" else imp_l_axiom
                    return self.attempt(s, inst, ex(s, inst), depth, hist, uses)
        if isinstance(goal, Imp):
            inst = RuleInstance("imp_r")
            return self.attempt(s, inst, imp_r(s, inst), depth, hist, uses)
        if isinstance(goal, And):
            inst = RuleInstance("and_r")
            return self.attempt(s, inst, and_r(s, inst), depth, hist, uses)
        if isinstance(goal, Forall):
            y = self.fresh(goal.var, s)
            inst = RuleInstance("forall_r", fresh_var=y)
            return self.attempt(s, inst, forall_r(s, inst), depth, hist, uses)

        # Loop check on supports, only at sequents where no invertible rule
        # applies: there multiplicities are immaterial (contraction and
        # weakening are admissible), while an invertible step on one copy of
        # a duplicated formula leaves the support unchanged.
        if self.use_history:
            loop = (frozenset(ctx), goal)
            if loop in hist:
                return None, True
            hist = hist | {loop}

        # choices, with backtracking
        dirty = False
        for inst, prems, wrap, uses2 in self.choices(s, uses):
            proof, d = self.attempt(s if wrap is None else wrap[0], inst, prems, depth, hist, uses2,
                                    None if wrap is None else wrap[1])
            dirty = dirty or d
            if proof is not None:
                return proof, dirty
        return None, dirty

    def choices(self, s, uses):
        ctx, goal = s.context, s.goal
        if isinstance(goal, Or):
            for rid in ("or_r1", "or_r2"):
                inst = RuleInstance(rid)
                yield inst, _or_r(rid == "or_r2")(s, inst), None, uses
        if isinstance(goal, Exists):
            self.truncated = self.truncated or bool(self.universe)  # finite witness set
            for t in self.witnesses(s):
                inst = RuleInstance("exists_r", witness=t)
                yield inst, exists_r(s, inst), None, uses
        seen = set()
        for f in ctx:
            if f in seen:
                continue
            seen.add(f)
            if isinstance(f, Imp):
                yield from self.imp_choices(s, f, uses)
            elif isinstance(f, Forall):
                yield from self.forall_choices(s, f, uses)

    def imp_choices(self, s, f, uses):
        if self.calc == "G":
            inst = RuleInstance("imp_l", principal=f)
            if s.counts()[f] >= 2:
                yield inst, imp_l(s, inst), None, uses
            else:
                # contract first so that the implication stays available
                s2 = Sequent(s.context + (f,), s.goal)
                wrap = (s2, lambda p, s=s, f=f: Proof(RuleInstance("contraction", principal=f), s, (p,)))
                yield inst, imp_l(s2, inst), wrap, uses
        elif self.calc == "K":
            inst = RuleInstance("contr_imp_l", principal=f)
            yield inst, contr_imp_l(s, inst), None, uses
        else:
            a = f.left
            if isinstance(a, And):
                inst = RuleInstance("imp_l_and", principal=f)
                yield inst, imp_l_and(s, inst), None, uses
            elif isinstance(a, Or):
                for rid, side in (("imp_l_or1", 0), ("imp_l_or2", 1)):
                    inst = RuleInstance(rid, principal=f)
                    yield inst, _imp_l_or(side)(s, inst), None, uses
            elif isinstance(a, Imp):
                inst = RuleInstance("imp_l_imp", principal=f)
                yield inst, imp_l_imp(s, inst), None, uses
            elif isinstance(a, Forall):
                n = dict(uses).get(f, 0)
                if n >= self.budget.reuse_cap:
                    self.truncated = True
                    return
                uses2 = _bump(uses, f)
                y = self.fresh(a.var, s)
                inst = RuleInstance("imp_l_forall", principal=f, fresh_var=y)
                yield inst, imp_l_forall(s, inst), None, uses2
            elif isinstance(a, Exists):
                n = dict(uses).get(f, 0)
                if n >= self.budget.reuse_cap:
                    self.truncated = True
                    return
                uses2 = _bump(uses, f)
                self.truncated = self.truncated or bool(self.universe)
                for t in self.witnesses(s):
                    inst = RuleInstance("imp_l_exists", principal=f, witness=t)
                    yield inst, imp_l_exists(s, inst), None, uses2

    def forall_choices(self, s, f, uses):
        n = dict(uses).get(f, 0)
        if n >= self.budget.reuse_cap:
            self.truncated = True
            return
        uses2 = _bump(uses, f)
        self.truncated = True  # witnesses come from a finite universe
        for t in self.witnesses(s):
            inst_t = instantiate(f, t)
            if inst_t in s.context:
                continue
            if self.calc == "G":
                inst = RuleInstance("forall_l", principal=f, witness=t)
                if s.counts()[f] >= 2:
                    yield inst, forall_l(s, inst), None, uses2
                else:
                    s2 = Sequent(s.context + (f,), s.goal)
                    wrap = (s2, lambda p, s=s, f=f: Proof(RuleInstance("contraction", principal=f), s, (p,)))
                    yield inst, forall_l(s2, inst), wrap, uses2
            else:
                inst = RuleInstance("contr_forall_l", principal=f, witness=t)
                yield inst, contr_forall_l(s, inst), None, uses2


def _bump(uses, f):
    d = dict(uses)
    d[f] = d.get(f, 0) + 1
    return tuple(sorted(d.items(), key=lambda kv: kv[0].key()))


def _prove(calc, sequent, budget):
    budget = budget or SearchBudget()
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        return _Search(calc, budget, sequent).run(sequent)
    finally:
        sys.setrecursionlimit(old)


def prove_g(sequent: Sequent, budget: SearchBudget | None = None) -> Proof | None:
    return _prove("G", sequent, budget)


def prove_k(sequent: Sequent, budget: SearchBudget | None = None) -> Proof | None:
    return _prove("K", sequent, budget)


def prove_d(sequent: Sequent, budget: SearchBudget | None = None) -> Proof | None:
    return _prove("D", sequent, budget)


PROVERS = {"G": prove_g, "K": prove_k, "D": prove_d}


# ---------------------------------------------------------------------------
# Structural transformations on K proofs

def _replace_one(ctx, old, new):
    out = list(ctx)
    out.remove(old)
    return out + list(new)


def _rebuild(node, concl, prems):
    return Proof(node.rule, concl, tuple(prems))


def _invert(proof, target, var):
    s = proof.conclusion
    inst = proof.rule
    if target not in s.context:
        raise TargetNotPresent(f"{target} not in {s}")
    if inst.principal == target and inst.rule_id in ("and_l", "or_l", "exists_l"):
        if inst.rule_id == "and_l":
            return proof.premises[0]
        if inst.rule_id == "or_l":
            return proof.premises[0], proof.premises[1]
        p = proof.premises[0]
        return p if inst.fresh_var == var else subst_proof(p, inst.fresh_var, Var(var))
    subs = [_invert(p, target, var) for p in proof.premises]
    if isinstance(target, Or):
        left = Sequent(_replace_one(s.context, target, [target.left]), s.goal)
        right = Sequent(_replace_one(s.context, target, [target.right]), s.goal)
        return (_rebuild(proof, left, [a for a, _ in subs]),
                _rebuild(proof, right, [b for _, b in subs]))
    if isinstance(target, And):
        new = [target.left, target.right]
    else:
        new = [instantiate(target, Var(var))]
    return _rebuild(proof, Sequent(_replace_one(s.context, target, new), s.goal), subs)


def invert_k(proof: Proof, target: Formula, var: str | None = None):
    """Kleene inversion for a conjunction, disjunction or existential hypothesis.

    Returns one proof (conjunction, existential) or a pair (disjunction),
    never higher than the input.
    """
    s = proof.conclusion
    if not isinstance(target, (And, Or, Exists)):
        raise ValueError("only conjunctions, disjunctions and existentials invert")
    if target not in s.context:
        raise TargetNotPresent(f"{target} not in {s}")
    if isinstance(target, Exists):
        if var is None:
            var = fresh_name(target.var, proof_vars(proof))
        elif var in s.free_vars():
            raise EigenvariableCapture(f"{var} is free in {s}")
        proof = rename_eigenvariables(proof, {var})
    out = _invert(proof, target, var)
    h = proof.height()
    for p in out if isinstance(out, tuple) else (out,):
        assert p.height() <= h, "inversion increased the height"
    return out


def _strip(proof, target):
    s = proof.conclusion
    inst = proof.rule
    if target not in s.context:
        raise TargetNotPresent(f"{target} not in {s}")
    if inst.rule_id == "contr_imp_l" and inst.principal == target:
        return proof.premises[1]
    prems = [_strip(p, target) for p in proof.premises]
    return _rebuild(proof, Sequent(_replace_one(s.context, target, [target.right]), s.goal), prems)


def strip_imp_k(proof: Proof, target: Imp) -> Proof:
    """From a proof of ``G, C -> D |- A`` build one of ``G, D |- A`` (no higher)."""
    if not isinstance(target, Imp):
        raise ValueError("target must be an implication")
    out = _strip(proof, target)
    assert out.height() <= proof.height(), "stripping increased the height"
    return out


def _contract(proof, a):
    s = proof.conclusion
    inst = proof.rule
    if s.counts()[a] < 2:
        raise TargetNotDuplicated(f"{a} occurs once in {s}")
    concl = Sequent(s.without(a), s.goal)
    rid = inst.rule_id
    if inst.principal == a:
        if rid == "and_l":
            inv = _invert(proof.premises[0], a, None)
            inv = _contract(_contract(inv, a.left), a.right)
            return _rebuild(proof, concl, [inv])
        if rid == "or_l":
            left = _contract(_invert(proof.premises[0], a, None)[0], a.left)
            right = _contract(_invert(proof.premises[1], a, None)[1], a.right)
            return _rebuild(proof, concl, [left, right])
        if rid == "exists_l":
            y = inst.fresh_var
            prem = rename_eigenvariables(proof.premises[0], {y})
            inv = _invert(prem, a, y)
            return _rebuild(proof, concl, [_contract(inv, instantiate(a, Var(y)))])
        if rid == "contr_imp_l":
            left = _contract(proof.premises[0], a)
            right = _contract(_strip(proof.premises[1], a), a.right)
            return _rebuild(proof, concl, [left, right])
        if rid == "contr_forall_l":
            return _rebuild(proof, concl, [_contract(proof.premises[0], a)])
    return _rebuild(proof, concl, [_contract(p, a) for p in proof.premises])


def contract_k(proof: Proof, target: Formula) -> Proof:
    """Contraction admissibility: from ``G, A, A |- C`` build ``G, A |- C`` (no higher)."""
    if proof.conclusion.counts()[target] < 2:
        raise TargetNotDuplicated(f"{target} is not duplicated")
    out = _contract(proof, target)
    assert out.height() <= proof.height(), "contraction increased the height"
    return out


def weaken(proof: Proof, extra: Formula) -> Proof:
    """Add ``extra`` to every context, renaming eigenvariables free in it."""
    proof = rename_eigenvariables(proof, free_vars(extra))

    def go(p):
        s = p.conclusion
        return Proof(p.rule, Sequent(s.context + (extra,), s.goal), tuple(go(q) for q in p.premises))

    return go(proof)


def weaken_d(proof: Proof, extra: Formula) -> Proof:
    out = weaken(proof, extra)
    assert out.height() == proof.height()
    return out


# ---------------------------------------------------------------------------
# Cross-calculus comparison

def equiv_check(sequent: Sequent, budget: SearchBudget | None = None) -> dict:
    from .oracle import decide_ipl

    if not all(is_propositional(f) for f in sequent.formulas()):
        raise ValueError("equiv_check takes propositional sequents")
    return {
        "g": prove_g(sequent, budget) is not None,
        "k": prove_k(sequent, budget) is not None,
        "d": prove_d(sequent, budget) is not None,
        "oracle": decide_ipl(sequent),
    }


def equiv_line(sequent: Sequent, report: dict) -> str:
    vals = ["true" if report[k] else "false" for k in ("g", "k", "d", "oracle")]
    return "\t".join([str(sequent)] + vals)
