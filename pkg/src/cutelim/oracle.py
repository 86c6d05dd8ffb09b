"""Independent reference implementations used to cross-check the provers.

``decide_ipl`` is a separate decision procedure for propositional
intuitionistic logic: a G-style search with explicit, capped contraction
on implications and a per-branch loop check.  It shares no search code
with :mod:`cutelim.sequent`.
"""
from __future__ import annotations

import sys
from math import comb

from .syntax import And, Atom, BOT, Bot, Imp, Or, Sequent, TOP, Top, is_propositional


class QuantifiedInput(ValueError):
    pass


def decide_ipl(sequent: Sequent) -> bool:
    for f in sequent.formulas():
        if not is_propositional(f):
            raise QuantifiedInput(f"{f} is not propositional")
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        return _Decider().prove(tuple(sequent.context), sequent.goal)
    finally:
        sys.setrecursionlimit(old)


class _Decider:
    def __init__(self):
        self.proved = set()
        self.refuted = set()

    def prove(self, ctx, goal):
        ok, _ = self.go(_norm(ctx), goal, frozenset())
        return ok

    def go(self, ctx, goal, path):
        key = (ctx, goal)
        if key in self.proved:
            return True, False
        if key in self.refuted:
            return False, False
        if key in path:
            return False, True
        path = path | {key}
        ok, dirty = self.step(ctx, goal, path)
        if ok:
            self.proved.add(key)
        elif not dirty:
            self.refuted.add(key)
        return ok, dirty

    def step(self, ctx, goal, path):
        items = [f for f, _ in ctx]
        if isinstance(goal, Top) or BOT in items or (isinstance(goal, Atom) and goal in items):
            return True, False
        # invertible rules
        for f in items:
            if isinstance(f, And):
                return self.go(_add(_drop(ctx, f), f.left, f.right), goal, path)
            if isinstance(f, Or):
                a, d1 = self.go(_add(_drop(ctx, f), f.left), goal, path)
                if not a:
                    return False, d1
                b, d2 = self.go(_add(_drop(ctx, f), f.right), goal, path)
                return b, d1 or d2
        if isinstance(goal, Imp):
            return self.go(_add(ctx, goal.left), goal.right, path)
        if isinstance(goal, And):
            a, d1 = self.go(ctx, goal.left, path)
            if not a:
                return False, d1
            b, d2 = self.go(ctx, goal.right, path)
            return b, d1 or d2
        dirty = False
        if isinstance(goal, Or):
            for side in (goal.left, goal.right):
                ok, d = self.go(ctx, side, path)
                dirty = dirty or d
                if ok:
                    return True, dirty
        for f, n in ctx:
            if not isinstance(f, Imp):
                continue
            # contract (multiplicity at most 2) and apply implication-left
            left_ctx = ctx if n >= 2 else _add(ctx, f)
            left_ctx = _drop(left_ctx, f)
            ok, d = self.go(left_ctx, f.left, path)
            dirty = dirty or d
            if not ok:
                continue
            ok, d = self.go(_add(_drop(ctx, f), f.right), goal, path)
            dirty = dirty or d
            if ok:
                return True, dirty
        return False, dirty


def _norm(items):
    counts = {}
    for f in items:
        counts[f] = min(2, counts.get(f, 0) + 1)
    return tuple(sorted(counts.items(), key=lambda kv: kv[0].key()))


def _add(ctx, *fs):
    return _norm([f for f, n in ctx for _ in range(n)] + list(fs))


def _drop(ctx, f):
    out = []
    for g, n in ctx:
        if g == f:
            n -= 1
        out.extend([g] * n)
    return _norm(out)


# ---------------------------------------------------------------------------
# Enumeration

def _catalan(n):
    return comb(2 * n, n) // (n + 1)


def count_exact(atoms, n: int) -> int:
    """Number of formulas with exactly ``n`` binary connectives."""
    k = len(set(atoms))
    return 3 ** n * _catalan(n) * (k + 2) ** (n + 1)


def count_formulas(atoms, max_connectives: int) -> int:
    return sum(count_exact(atoms, n) for n in range(max_connectives + 1))


def enumerate_formulas(atoms, max_connectives: int):
    """Yield every formula over ``atoms``, top and bot with at most ``max_connectives``
    connectives, smallest first."""
    if not atoms:
        raise ValueError("need at least one atom")
    for n in range(max_connectives + 1):
        yield from enumerate_exact(atoms, n)


def enumerate_exact(atoms, n: int):
    names = sorted(set(atoms))
    if n == 0:
        for a in names:
            yield Atom(a, ())
        yield TOP
        yield BOT
        return
    for op in (And, Or, Imp):
        for i in range(n):
            for left in enumerate_exact(names, i):
                for right in enumerate_exact(names, n - 1 - i):
                    yield op(left, right)
