"""Random generators for formulas, models, systems and proofs.

Every generator takes a ``random.Random`` so that test corpora are
reproducible from a seed.
"""
from __future__ import annotations

import itertools
import random

from . import fdl
from .apds import ApdsRule, ApdsSystem
from .proof import Proof, RuleInstance
from .sequent import BudgetExhausted, SearchBudget, prove_d, prove_k
from .syntax import (
    And, Atom, BOT, Const, Exists, Forall, Imp, NegAtom, Or, Sequent, TOP, Var,
    instantiate, word,
)


# ---------------------------------------------------------------------------
# Propositional formulas

def random_prop(rng: random.Random, atoms=("P", "Q"), connectives: int = 3, units: bool = True):
    """A random formula with exactly ``connectives`` binary connectives."""
    if connectives == 0:
        leaves = [Atom(a, ()) for a in atoms]
        if units and rng.random() < 0.15:
            return rng.choice([TOP, BOT])
        return rng.choice(leaves)
    left = rng.randrange(connectives)
    op = rng.choice([And, Or, Imp])
    return op(random_prop(rng, atoms, left, units), random_prop(rng, atoms, connectives - 1 - left, units))


def random_prop_sequent(rng, atoms=("P", "Q"), max_ctx: int = 3, connectives: int = 4):
    n = rng.randint(0, max_ctx)
    ctx = [random_prop(rng, atoms, rng.randint(0, max(0, connectives - 1))) for _ in range(n)]
    return Sequent(ctx, random_prop(rng, atoms, rng.randint(0, connectives)))


def random_fo(rng, preds=("P", "Q"), consts=("a",), depth: int = 3, bound=()):
    """A random first-order formula over unary predicates (and 0-ary ``R``)."""
    if depth == 0 or rng.random() < 0.2:
        terms = [Const(c) for c in consts] + [Var(v) for v in bound]
        r = rng.random()
        if r < 0.1:
            return rng.choice([TOP, BOT])
        if r < 0.25:
            return Atom("R", ())
        return Atom(rng.choice(preds), (rng.choice(terms),))
    r = rng.random()
    if r < 0.5:
        op = rng.choice([And, Or, Imp])
        return op(random_fo(rng, preds, consts, depth - 1, bound),
                  random_fo(rng, preds, consts, depth - 1, bound))
    v = f"x{len(bound)}"
    q = rng.choice([Forall, Exists])
    return q(v, random_fo(rng, preds, consts, depth - 1, bound + (v,)))


# ---------------------------------------------------------------------------
# Finite domain logic

def random_model(rng, max_elems: int = 3, max_rels: int = 2):
    n = rng.randint(1, max_elems)
    domain = [f"c{i + 1}" for i in range(n)]
    rels = {}
    for i in range(rng.randint(1, max_rels)):
        k = rng.randint(0, 2)
        rows = [r for r in itertools.product(domain, repeat=k) if rng.random() < 0.5]
        rels[("PQR"[i], k)] = rows
    return fdl.FdlModel(domain, rels)


def random_fdl_formula(rng, model, depth: int = 4, bound=(), implications: bool = True):
    """A closed formula over the model's relations, not yet normalized."""
    rels = sorted(model.relations)
    if depth == 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.08:
            return rng.choice([TOP, BOT])
        pred, k = rng.choice(rels)
        terms = [Const(c) for c in model.domain] + [Var(v) for v in bound]
        args = tuple(rng.choice(terms) for _ in range(k))
        return (NegAtom if rng.random() < 0.3 else Atom)(pred, args)
    r = rng.random()
    if r < 0.55:
        ops = [And, Or, Imp] if implications else [And, Or]
        op = rng.choice(ops)
        return op(random_fdl_formula(rng, model, depth - 1, bound, implications),
                  random_fdl_formula(rng, model, depth - 1, bound, implications))
    v = f"x{len(bound)}"
    q = rng.choice([Forall, Exists])
    return q(v, random_fdl_formula(rng, model, depth - 1, bound + (v,), implications))


def random_fdl_instance(rng, depth: int = 4):
    model = random_model(rng)
    return model, fdl.normalize(random_fdl_formula(rng, model, depth))


def _true_formula(rng, model, depth=2):
    for _ in range(50):
        f = fdl.normalize(random_fdl_formula(rng, model, depth))
        if fdl.eval(model, f):
            return f
    return TOP


def random_fdl_proof(rng, model, goal=None, elim_rate: float = 0.3, depth: int = 4):
    """A valid proof of a true closed formula mixing introductions and eliminations."""
    if goal is None:
        goal = _true_formula(rng, model, 3)
    return _fdl_gen(rng, model, (), goal, elim_rate, depth)


def _fdl_gen(rng, model, ctx, goal, rate, budget):
    s = Sequent(ctx, goal)
    if goal in ctx and rng.random() < 0.5:
        return Proof(RuleInstance("axiom"), s)
    if budget > 0 and rng.random() < rate:
        choice = rng.choice(["and_e1", "and_e2", "or_e", "exists_e"])
        other = _true_formula(rng, model, 1)
        if choice == "and_e1":
            p = And(goal, other)
            return Proof(RuleInstance("and_e1", principal=p), s,
                         (_fdl_gen(rng, model, ctx, p, rate, budget - 1),))
        if choice == "and_e2":
            p = And(other, goal)
            return Proof(RuleInstance("and_e2", principal=p), s,
                         (_fdl_gen(rng, model, ctx, p, rate, budget - 1),))
        if choice == "or_e":
            p = Or(other, fdl.normalize(random_fdl_formula(rng, model, 1)))
            if rng.random() < 0.5:
                p = Or(p.right, p.left)
            prems = (_fdl_gen(rng, model, ctx, p, rate, budget - 1),
                     _fdl_gen(rng, model, ctx + (p.left,), goal, rate, budget - 1),
                     _fdl_gen(rng, model, ctx + (p.right,), goal, rate, budget - 1))
            return Proof(RuleInstance("or_e", principal=p), s, prems)
        body = fdl.normalize(random_fdl_formula(rng, model, 1, ("x",)))
        p = Exists("x", body)
        if fdl.eval(model, p):
            prems = [_fdl_gen(rng, model, ctx, p, rate, budget - 1)]
            prems += [_fdl_gen(rng, model, ctx + (instantiate(p, c),), goal, rate, budget - 1)
                      for c in model.constants()]
            return Proof(RuleInstance("exists_e", principal=p), s, tuple(prems))
    return _fdl_intro(rng, model, ctx, goal, rate, budget)


def _fdl_intro(rng, model, ctx, goal, rate, budget):
    s = Sequent(ctx, goal)
    nxt = budget - 1
    if isinstance(goal, (Atom, NegAtom)):
        return Proof(RuleInstance("atom"), s)
    if goal == TOP:
        return Proof(RuleInstance("top_i"), s)
    if isinstance(goal, And):
        return Proof(RuleInstance("and_i"), s, (_fdl_gen(rng, model, ctx, goal.left, rate, nxt),
                                                _fdl_gen(rng, model, ctx, goal.right, rate, nxt)))
    if isinstance(goal, Or):
        sides = [i for i, g in enumerate((goal.left, goal.right)) if fdl.eval(model, g)]
        i = rng.choice(sides)
        return Proof(RuleInstance(f"or_i{i + 1}"), s,
                     (_fdl_gen(rng, model, ctx, (goal.left, goal.right)[i], rate, nxt),))
    if isinstance(goal, Forall):
        return Proof(RuleInstance("forall_i"), s,
                     tuple(_fdl_gen(rng, model, ctx, instantiate(goal, c), rate, nxt)
                           for c in model.constants()))
    if isinstance(goal, Exists):
        ws = [c for c in model.constants() if fdl.eval(model, instantiate(goal, c))]
        w = rng.choice(ws)
        return Proof(RuleInstance("exists_i", witness=w), s,
                     (_fdl_gen(rng, model, ctx, instantiate(goal, w), rate, nxt),))
    raise ValueError(f"{goal} is not true in the model")


# ---------------------------------------------------------------------------
# Pushdown systems

def random_apds(rng, max_preds: int = 4, max_syms: int = 2, max_rules: int = 6) -> ApdsSystem:
    preds = [f"P{i}" for i in range(rng.randint(1, max_preds))]
    syms = ["ab"[i] for i in range(rng.randint(1, max_syms))]
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        kind = rng.choices(["eps", "push", "elim", "neutral"], [2, 4, 2, 2])[0]
        head = rng.choice(preds)
        prems = rng.sample(preds, rng.randint(0, min(2, len(preds))))
        if kind == "eps":
            rules.append(ApdsRule("eps", head))
        elif kind == "push":
            rules.append(ApdsRule("push", head, prems, rng.choice(syms)))
        elif kind == "elim":
            first = rng.choice(preds)
            rules.append(ApdsRule("elim", head, [first] + prems[:1], rng.choice(syms)))
        else:
            rules.append(ApdsRule("neutral", head, prems or [rng.choice(preds)]))
    return ApdsSystem.build(rules, predicates=preds, symbols=syms)


def apds_derivations(system: ApdsSystem, max_len: int) -> dict:
    """Bottom-up fixpoint on words up to ``max_len`` recording one justification
    per fact: ``(pred, word) -> (rule, premise facts)``."""
    why = {}
    words = [()]
    for n in range(1, max_len + 1):
        words.extend(itertools.product(sorted(system.symbols), repeat=n))
    changed = True
    while changed:
        changed = False
        for r in system.rules:
            for w in words:
                if (r.head, w) in why:
                    continue
                if r.kind == "eps":
                    prem = [] if w == () else None
                elif r.kind == "push":
                    prem = [(p, w[1:]) for p in r.premises] if w and w[0] == r.symbol else None
                elif r.kind == "elim":
                    prem = [(r.premises[0], (r.symbol,) + w)] + [(p, w) for p in r.premises[1:]] \
                        if len(w) < max_len else None
                else:
                    prem = [(p, w) for p in r.premises]
                if prem is not None and all(f in why for f in prem):
                    why[(r.head, w)] = (r, prem)
                    changed = True
    return why


def apds_proof(why, fact) -> Proof:
    r, prem = why[fact]
    pred, w = fact
    return Proof(RuleInstance(r.name), Atom(pred, (word(w),)), tuple(apds_proof(why, f) for f in prem))


def random_apds_proofs(rng, count: int, max_len: int = 4):
    """Proofs in unsaturated random systems; these may contain cuts."""
    out = []
    while len(out) < count:
        system = random_apds(rng)
        why = apds_derivations(system, max_len)
        facts = sorted(why)
        for fact in rng.sample(facts, min(len(facts), 3)):
            out.append((system, apds_proof(why, fact)))
    return out[:count]


# ---------------------------------------------------------------------------
# Sequent proofs harvested from the provers

def harvest(rng, prover, count: int, make_sequent, budget=None):
    """Run ``prover`` on random sequents until ``count`` proofs are found."""
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 200 * count:
            raise RuntimeError("harvest found too few provable sequents")
        s = make_sequent(rng)
        try:
            p = prover(s, budget)
        except BudgetExhausted:
            continue
        if p is not None:
            out.append(p)
    return out


def random_fo_sequent(rng, max_ctx: int = 2, depth: int = 3):
    ctx = [random_fo(rng, depth=rng.randint(0, depth)) for _ in range(rng.randint(0, max_ctx))]
    return Sequent(ctx, random_fo(rng, depth=rng.randint(0, depth)))


FO_BUDGET = SearchBudget(max_depth=40, witness_universe=(Const("a"),), reuse_cap=2)


def harvest_k(rng, count: int, quantified: float = 0.2):
    def make(r):
        if r.random() < quantified:
            return random_fo_sequent(r)
        return random_prop_sequent(r)
    return harvest(rng, lambda s, b: prove_k(s, FO_BUDGET), count, make)


def harvest_d(rng, count: int, quantified: float = 0.3):
    def make(r):
        if r.random() < quantified:
            return random_fo_sequent(r)
        return random_prop_sequent(r)
    return harvest(rng, lambda s, b: prove_d(s, FO_BUDGET), count, make)


# ---------------------------------------------------------------------------
# Natural deduction proofs with atomic contexts

def random_nd_proofs(rng, count: int, atoms=("P", "Q"), steps: int = 12):
    """Forward random construction of ND proofs whose open hypotheses are atoms."""
    out = []
    while len(out) < count:
        ctx = tuple(Atom(a, ()) for a in atoms if rng.random() < 0.6)
        out.append(_nd_forward(rng, ctx, atoms, steps))
    return out


def _nd_forward(rng, ctx, atoms, steps, depth=0):
    s = lambda g: Sequent(ctx, g)
    pool = [Proof(RuleInstance("axiom"), s(a)) for a in ctx]
    pool.append(Proof(RuleInstance("top_i"), s(TOP)))
    for _ in range(steps):
        r = rng.random()
        a = rng.choice(pool)
        g = a.conclusion.goal
        if r < 0.25:
            b = rng.choice(pool)
            pool.append(Proof(RuleInstance("and_i"), s(And(g, b.conclusion.goal)), (a, b)))
        elif r < 0.4 and isinstance(g, And):
            side = rng.randrange(2)
            pool.append(Proof(RuleInstance(f"and_e{side + 1}", principal=g), s((g.left, g.right)[side]), (a,)))
        elif r < 0.55:
            other = random_prop(rng, atoms, rng.randint(0, 1), units=False)
            side = rng.randrange(2)
            f = Or(g, other) if side == 0 else Or(other, g)
            pool.append(Proof(RuleInstance(f"or_i{side + 1}"), s(f), (a,)))
        elif r < 0.7 and depth < 2:
            # discharge an atom that is not already open
            fresh = [Atom(x, ()) for x in atoms if Atom(x, ()) not in ctx]
            if fresh:
                h = rng.choice(fresh)
                sub = _nd_forward(rng, ctx + (h,), atoms, steps // 2, depth + 1)
                pool.append(Proof(RuleInstance("imp_i"), s(Imp(h, sub.conclusion.goal)), (sub,)))
        elif r < 0.85:
            imps = [p for p in pool if isinstance(p.conclusion.goal, Imp)]
            for p in imps:
                f = p.conclusion.goal
                args = [q for q in pool if q.conclusion.goal == f.left]
                if args:
                    pool.append(Proof(RuleInstance("imp_e", principal=f), s(f.right), (p, rng.choice(args))))
                    break
        else:
            ors = [p for p in pool if isinstance(p.conclusion.goal, Or)]
            if ors:
                p = rng.choice(ors)
                f = p.conclusion.goal
                goal = rng.choice(pool).conclusion.goal
                left = _nd_close(rng, ctx + (f.left,), goal)
                right = _nd_close(rng, ctx + (f.right,), goal)
                if left and right:
                    pool.append(Proof(RuleInstance("or_e", principal=f), s(goal), (p, left, right)))
    return rng.choice(pool[-max(1, len(pool) // 2):])


def _nd_close(rng, ctx, goal):
    """A short intro-only proof of ``ctx |- goal`` when one is easy to find."""
    if goal in ctx:
        return Proof(RuleInstance("axiom"), Sequent(ctx, goal))
    if goal == TOP:
        return Proof(RuleInstance("top_i"), Sequent(ctx, goal))
    if isinstance(goal, And):
        a, b = _nd_close(rng, ctx, goal.left), _nd_close(rng, ctx, goal.right)
        if a and b:
            return Proof(RuleInstance("and_i"), Sequent(ctx, goal), (a, b))
    if isinstance(goal, Or):
        for i, side in enumerate((goal.left, goal.right)):
            p = _nd_close(rng, ctx, side)
            if p:
                return Proof(RuleInstance(f"or_i{i + 1}"), Sequent(ctx, goal), (p,))
    if isinstance(goal, Imp):
        p = _nd_close(rng, ctx + (goal.left,), goal.right)
        if p:
            return Proof(RuleInstance("imp_i"), Sequent(ctx, goal), (p,))
    return None
