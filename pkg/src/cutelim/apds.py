"""Alternating pushdown systems: saturation, decision, cut-free proofs.

Rules come in four shapes over unary predicates and words
``g1(g2(...(eps)))``::

    push     Q(g x) <- P1(x), ..., Pn(x)
    eps      Q(eps)
    elim     R(x)   <- P1(g x), P2(x), ..., Pn(x)
    neutral  R(x)   <- P1(x), ..., Pn(x)

Push and eps rules are the introductions.  Saturating a system adds
derived rules until every provable atom has a proof made of
introductions only, after which provability of ``Q(w)`` is a
right-to-left run over ``w``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .proof import Mismatch, Proof, Rule, RuleInstance, RuleTable
from .syntax import App, Atom, EPS, word, word_symbols

KINDS = ("push", "eps", "elim", "neutral")


class NotAWord(ValueError):
    pass


@dataclass(frozen=True)
class ApdsRule:
    kind: str
    head: str
    premises: tuple = ()
    symbol: str | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"bad rule kind {self.kind}")
        prems = tuple(self.premises)
        if self.kind == "elim":
            if not prems or self.symbol is None:
                raise ValueError("an elimination needs a first premise and a symbol")
            prems = (prems[0],) + tuple(sorted(set(prems[1:])))
        else:
            prems = tuple(sorted(set(prems)))
        if self.kind == "eps" and prems:
            raise ValueError("Q(eps) rules have no premises")
        if (self.kind in ("push", "elim")) != (self.symbol is not None):
            raise ValueError(f"{self.kind} rule with wrong symbol field")
        object.__setattr__(self, "premises", prems)

    @property
    def is_intro(self):
        return self.kind in ("push", "eps")

    def renamed(self, name):
        return ApdsRule(self.kind, self.head, self.premises, self.symbol, name)

    def render(self) -> str:
        if self.kind == "eps":
            return f"{self.head}(eps)."
        if self.kind == "push":
            head = f"{self.head}({self.symbol} x)"
            prems = [f"{p}(x)" for p in self.premises]
        elif self.kind == "elim":
            head = f"{self.head}(x)"
            prems = [f"{self.premises[0]}({self.symbol} x)"] + [f"{p}(x)" for p in self.premises[1:]]
        else:
            head = f"{self.head}(x)"
            prems = [f"{p}(x)" for p in self.premises]
        if not prems:
            return f"{head}."
        return f"{head} <- {', '.join(prems)}."

    def __str__(self):
        return self.render()


@dataclass(frozen=True, eq=False)
class ApdsSystem:
    predicates: frozenset
    symbols: frozenset
    rules: tuple  # insertion order, duplicate free

    @classmethod
    def build(cls, rules, predicates=None, symbols=None) -> "ApdsSystem":
        rules = list(rules)
        used_p = set()
        used_s = set()
        for r in rules:
            used_p.add(r.head)
            used_p.update(r.premises)
            if r.symbol is not None:
                used_s.add(r.symbol)
        preds = set(predicates) if predicates is not None else used_p
        syms = set(symbols) if symbols is not None else used_s
        if not used_p <= preds:
            raise ValueError(f"undeclared predicates: {' '.join(sorted(used_p - preds))}")
        if not used_s <= syms:
            raise ValueError(f"undeclared symbols: {' '.join(sorted(used_s - syms))}")
        if "eps" in syms:
            raise ValueError("eps is not a symbol")
        names = {r.name for r in rules if r.name}
        out, seen = [], set()
        k = 0
        for r in rules:
            if r in seen:
                continue
            seen.add(r)
            if not r.name:
                k += 1
                while f"r{k}" in names:
                    k += 1
                r = r.renamed(f"r{k}")
                names.add(r.name)
            out.append(r)
        return cls(frozenset(preds), frozenset(syms), tuple(out))

    def rule_set(self) -> frozenset:
        return frozenset(self.rules)

    def __eq__(self, other):
        if not isinstance(other, ApdsSystem):
            return NotImplemented
        return (self.predicates, self.symbols, self.rule_set()) == \
            (other.predicates, other.symbols, other.rule_set())

    def __hash__(self):
        return hash((self.predicates, self.symbols, self.rule_set()))

    def by_name(self, name) -> ApdsRule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def intro_only(self) -> "ApdsSystem":
        return ApdsSystem(self.predicates, self.symbols, tuple(r for r in self.rules if r.is_intro))


# ---------------------------------------------------------------------------
# Finite automata

class Fsa:
    def __init__(self, states, alphabet, transitions, final):
        self.states = list(states)
        self.alphabet = list(alphabet)
        self.final = list(final)
        st, al = set(self.states), set(self.alphabet)
        if len(st) != len(self.states) or len(al) != len(self.alphabet):
            raise ValueError("repeated state or symbol")
        self.delta = {}
        for src, sym, dst in transitions:
            if src not in st or dst not in st:
                raise ValueError(f"transition {src} {sym} -> {dst} uses an undeclared state")
            if sym not in al:
                raise ValueError(f"transition {src} {sym} -> {dst} uses an undeclared symbol")
            self.delta.setdefault((src, sym), set()).add(dst)
        for f in self.final:
            if f not in st:
                raise ValueError(f"final state {f} undeclared")

    def transition_list(self):
        out = []
        for (src, sym), dsts in self.delta.items():
            out.extend((src, sym, d) for d in dsts)
        order = {s: i for i, s in enumerate(self.states)}
        sorder = {s: i for i, s in enumerate(self.alphabet)}
        return sorted(out, key=lambda t: (order[t[0]], sorder[t[1]], order[t[2]]))

    def accepts(self, state, symbols) -> bool:
        """Plain nondeterministic run from ``state`` reading ``symbols`` left to right."""
        current = {state}
        for g in symbols:
            current = set().union(*(self.delta.get((q, g), set()) for q in current))
        return bool(current & set(self.final))

    def __eq__(self, other):
        return (isinstance(other, Fsa) and self.states == other.states and self.alphabet == other.alphabet
                and set(self.final) == set(other.final) and self.delta == other.delta)


def from_fsa(m: Fsa) -> ApdsSystem:
    """One push rule ``P(g x) <- Q(x)`` per transition P -g-> Q, one ``F(eps)`` per final state."""
    rules = []
    for i, (src, sym, dst) in enumerate(m.transition_list(), 1):
        rules.append(ApdsRule("push", src, (dst,), sym, f"t{i}"))
    for f in m.final:
        rules.append(ApdsRule("eps", f, name=f"f_{f}"))
    return ApdsSystem.build(rules, predicates=m.states, symbols=m.alphabet)


# ---------------------------------------------------------------------------
# Saturation

def saturation_bound(system: ApdsSystem) -> int:
    """Number of distinct rules that saturation could ever produce."""
    p, s = len(system.predicates), len(system.symbols)
    subsets = 2 ** p
    return p + p * s * subsets + p * subsets + len(system.rules)


def _sat_step(rules, preds, syms):
    """Every rule derivable in one application of the three clauses."""
    push = {}
    eps = set()
    for r in rules:
        if r.kind == "push":
            push.setdefault((r.head, r.symbol), []).append(frozenset(r.premises))
        elif r.kind == "eps":
            eps.add(r.head)
    new = []
    for r in rules:
        if r.kind == "elim":
            for ps in push.get((r.premises[0], r.symbol), ()):
                new.append(ApdsRule("neutral", r.head, tuple(ps) + r.premises[1:]))
        elif r.kind == "neutral":
            for g in syms:
                combos = {frozenset()}
                for q in r.premises:
                    options = push.get((q, g))
                    if not options:
                        combos = set()
                        break
                    combos = {c | o for c in combos for o in options}
                for c in sorted(combos, key=sorted):
                    new.append(ApdsRule("push", r.head, tuple(c), g))
            if all(q in eps for q in r.premises):
                new.append(ApdsRule("eps", r.head))
    return new


def saturate(system: ApdsSystem) -> ApdsSystem:
    """Least fixpoint of the saturation clauses; added rules are named ``sat_k``."""
    return _saturate(system)


@lru_cache(maxsize=256)
def _saturate(system):
    rules = list(system.rules)
    present = set(rules)
    names = {r.name for r in rules}
    syms = sorted(system.symbols)
    bound = saturation_bound(system)
    k = 0
    rounds = 0
    while True:
        rounds += 1
        assert rounds <= bound, "saturation exceeded its termination bound"
        added = False
        for r in _sat_step(rules, system.predicates, syms):
            if r in present:
                continue
            k += 1
            while f"sat_{k}" in names:
                k += 1
            r = r.renamed(f"sat_{k}")
            names.add(r.name)
            present.add(r)
            rules.append(r)
            added = True
        assert len(rules) <= bound, "saturation produced more rules than possible"
        if not added:
            break
    return ApdsSystem(system.predicates, system.symbols, tuple(rules))


def added_rules(system: ApdsSystem, saturated: ApdsSystem) -> list:
    base = system.rule_set()
    return [r for r in saturated.rules if r not in base]


# ---------------------------------------------------------------------------
# Decision and proofs

def _query(atom: Atom):
    if not isinstance(atom, Atom) or len(atom.args) != 1:
        raise NotAWord(f"not a unary atom: {atom}")
    try:
        return atom.pred, word_symbols(atom.args[0])
    except ValueError as exc:
        raise NotAWord(str(exc)) from None


def _run(sat: ApdsSystem, syms):
    """Suffix sets from right to left, with one witnessing rule per (position, predicate)."""
    intros = [r for r in sat.rules if r.is_intro]
    current = {}
    for r in intros:
        if r.kind == "eps" and r.head not in current:
            current[r.head] = r
    layers = [current]
    for g in reversed(syms):
        prev = layers[-1]
        nxt = {}
        for r in intros:
            if r.kind == "push" and r.symbol == g and r.head not in nxt \
                    and all(p in prev for p in r.premises):
                nxt[r.head] = r
        layers.append(nxt)
    layers.reverse()  # layers[i] proves predicates of the suffix syms[i:]
    return layers


def decide(system: ApdsSystem, atom: Atom) -> bool:
    pred, syms = _query(atom)
    return pred in _run(saturate(system), syms)[0]


def prove(system: ApdsSystem, atom: Atom) -> Proof | None:
    """Cut-free proof in the saturated system, or None when unprovable."""
    pred, syms = _query(atom)
    layers = _run(saturate(system), syms)
    if pred not in layers[0]:
        return None

    def build(q, i):
        r = layers[i][q]
        concl = Atom(q, (word(syms[i:]),))
        prems = tuple(build(p, i + 1) for p in r.premises) if r.kind == "push" else ()
        return Proof(RuleInstance(r.name), concl, prems)

    return build(pred, 0)


def _expander(r: ApdsRule):
    def expand(concl, inst):
        if not isinstance(concl, Atom) or len(concl.args) != 1:
            raise Mismatch("conclusion is not a unary atom")
        if concl.pred != r.head:
            raise Mismatch(f"head should be {r.head}, not {concl.pred}")
        t = concl.args[0]
        try:
            word_symbols(t)
        except ValueError:
            raise Mismatch(f"{t} is not a word") from None
        if r.kind == "eps":
            if t != EPS:
                raise Mismatch("argument should be eps")
            return []
        if r.kind == "push":
            if not (isinstance(t, App) and t.symbol == r.symbol):
                raise Mismatch(f"argument should start with {r.symbol}")
            return [Atom(p, (t.args[0],)) for p in r.premises]
        if r.kind == "elim":
            first = Atom(r.premises[0], (App(r.symbol, (t,)),))
            return [first] + [Atom(p, (t,)) for p in r.premises[1:]]
        return [Atom(p, (t,)) for p in r.premises]
    return expand


def apds_rule_table(system: ApdsSystem) -> RuleTable:
    rules = {}
    for r in system.rules:
        major = (0,) if r.kind == "elim" else None
        rules[r.name] = Rule(r.name, r.is_intro, _expander(r), major)
    return RuleTable("APDS", rules, order="word")


# ---------------------------------------------------------------------------
# Oracle: bottom-up fixpoint of the unsaturated rules on bounded words

def default_max_len(system: ApdsSystem, query_len: int, cap: int = 8) -> int:
    p = len(system.predicates)
    return query_len + min(p * 2 ** p, cap)


def naive_fixpoint(system: ApdsSystem, max_len: int) -> set:
    """All ``(pred, word)`` derivable using only words of length <= max_len."""
    syms = sorted(system.symbols)
    preds = sorted(system.predicates)
    if not system.rules:
        return set()
    words = [()]
    for n in range(1, max_len + 1):
        words.extend(w for w in itertools.product(syms, repeat=n))
    index = {w: i for i, w in enumerate(words)}
    nw = len(words)
    child = {g: np.array([index.get((g,) + w, -1) for w in words]) for g in syms}
    pidx = {p: i for i, p in enumerate(preds)}
    facts = np.zeros((len(preds), nw), dtype=bool)
    all_true = np.ones(nw, dtype=bool)

    def conj(names):
        acc = all_true.copy()
        for q in names:
            acc &= facts[pidx[q]]
        return acc

    changed = True
    while changed:
        changed = False
        for r in system.rules:
            h = pidx[r.head]
            before = facts[h].copy()
            if r.kind == "eps":
                facts[h, 0] = True
            elif r.kind == "push":
                c = child[r.symbol]
                ok = conj(r.premises) & (c >= 0)
                facts[h, c[ok]] = True
            elif r.kind == "elim":
                c = child[r.symbol]
                first = np.zeros(nw, dtype=bool)
                valid = c >= 0
                first[valid] = facts[pidx[r.premises[0]], c[valid]]
                facts[h] |= first & conj(r.premises[1:])
            else:
                facts[h] |= conj(r.premises)
            if not np.array_equal(before, facts[h]):
                changed = True
    return {(preds[i], words[j]) for i, j in zip(*np.nonzero(facts))}
