"""First-order syntax: terms, formulas and sequents.

Formulas compare and hash up to renaming of bound variables, so two
alpha-equivalent formulas are interchangeable everywhere (contexts,
dictionaries, proof checking).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Union


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple

    def __str__(self):
        return f"{self.symbol}({', '.join(str(a) for a in self.args)})"


Term = Union[Var, Const, App]

EPS = Const("eps")


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, App):
        out = frozenset()
        for a in t.args:
            out |= term_vars(a)
        return out
    return frozenset()


def term_subst(t: Term, name: str, value: Term) -> Term:
    if isinstance(t, Var):
        return value if t.name == name else t
    if isinstance(t, App):
        return App(t.symbol, tuple(term_subst(a, name, value) for a in t.args))
    return t


def term_size(t: Term) -> int:
    if isinstance(t, App):
        return 1 + sum(term_size(a) for a in t.args)
    return 0


def term_constants(t: Term) -> set:
    if isinstance(t, Const):
        return {t}
    if isinstance(t, App):
        out = set()
        for a in t.args:
            out |= term_constants(a)
        return out
    return set()


def closed_subterms(t: Term) -> set:
    if isinstance(t, Const):
        return {t}
    if isinstance(t, App):
        out = set()
        for a in t.args:
            out |= closed_subterms(a)
        if not term_vars(t):
            out.add(t)
        return out
    return set()


def word(symbols: Iterable[str]) -> Term:
    """The unary term g1(g2(...(eps))) for the symbol sequence g1 g2 ..."""
    t: Term = EPS
    for g in reversed(list(symbols)):
        t = App(g, (t,))
    return t


def word_symbols(t: Term) -> tuple:
    """Inverse of :func:`word`; raises ValueError if ``t`` is not a word."""
    out = []
    while isinstance(t, App):
        if len(t.args) != 1:
            raise ValueError(f"not a word: {t}")
        out.append(t.symbol)
        t = t.args[0]
    if t != EPS:
        raise ValueError(f"not a word: {t}")
    return tuple(out)


def _term_key(t: Term, env: dict):
    if isinstance(t, Var):
        if t.name in env:
            return ("b", env[t.name])
        return ("v", t.name)
    if isinstance(t, Const):
        return ("c", t.name)
    return ("f", t.symbol, tuple(_term_key(a, env) for a in t.args))


# ---------------------------------------------------------------------------
# Formulas

class Formula:
    """Base class; equality is alpha-equivalence."""

    def key(self):
        k = self.__dict__.get("_key")
        if k is None:
            k = self._key_in({}, 0)
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self.key())
            object.__setattr__(self, "_hash", h)
        return h

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        from .textio import print_formula
        return print_formula(self)


@dataclass(frozen=True, eq=False, repr=True)
class Atom(Formula):
    pred: str
    args: tuple = ()

    def _key_in(self, env, depth):
        return ("atom", self.pred, tuple(_term_key(a, env) for a in self.args))


@dataclass(frozen=True, eq=False)
class NegAtom(Formula):
    pred: str
    args: tuple = ()

    def _key_in(self, env, depth):
        return ("neg", self.pred, tuple(_term_key(a, env) for a in self.args))


@dataclass(frozen=True, eq=False)
class Top(Formula):
    def _key_in(self, env, depth):
        return ("top",)


@dataclass(frozen=True, eq=False)
class Bot(Formula):
    def _key_in(self, env, depth):
        return ("bot",)


TOP = Top()
BOT = Bot()


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula
    right: Formula

    def _key_in(self, env, depth):
        return ("and", self.left._key_in(env, depth), self.right._key_in(env, depth))


@dataclass(frozen=True, eq=False)
class Or(Formula):
    left: Formula
    right: Formula

    def _key_in(self, env, depth):
        return ("or", self.left._key_in(env, depth), self.right._key_in(env, depth))


@dataclass(frozen=True, eq=False)
class Imp(Formula):
    left: Formula
    right: Formula

    def _key_in(self, env, depth):
        return ("imp", self.left._key_in(env, depth), self.right._key_in(env, depth))


@dataclass(frozen=True, eq=False)
class Forall(Formula):
    var: str
    body: Formula

    def _key_in(self, env, depth):
        inner = dict(env)
        inner[self.var] = depth
        return ("all", self.body._key_in(inner, depth + 1))


@dataclass(frozen=True, eq=False)
class Exists(Formula):
    var: str
    body: Formula

    def _key_in(self, env, depth):
        inner = dict(env)
        inner[self.var] = depth
        return ("ex", self.body._key_in(inner, depth + 1))


@dataclass(frozen=True, eq=False)
class Frozen(Formula):
    inner: Formula

    def _key_in(self, env, depth):
        return ("frz", self.inner._key_in(env, depth))


BINARY = (And, Or, Imp)
QUANT = (Forall, Exists)


def is_atomic(f: Formula) -> bool:
    return isinstance(f, Atom)


def size(f: Formula) -> int:
    """Number of connectives and quantifiers."""
    if isinstance(f, BINARY):
        return 1 + size(f.left) + size(f.right)
    if isinstance(f, QUANT):
        return 1 + size(f.body)
    if isinstance(f, Frozen):
        return size(f.inner)
    return 0


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, (Atom, NegAtom)):
        out = frozenset()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANT):
        return free_vars(f.body) - {f.var}
    if isinstance(f, Frozen):
        return free_vars(f.inner)
    return frozenset()


def all_vars(f: Formula) -> frozenset:
    """Free and bound variable names."""
    if isinstance(f, QUANT):
        return all_vars(f.body) | {f.var}
    if isinstance(f, BINARY):
        return all_vars(f.left) | all_vars(f.right)
    if isinstance(f, Frozen):
        return all_vars(f.inner)
    return free_vars(f)


def fresh_name(base: str, avoid) -> str:
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789") or base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def subst(f: Formula, name: str, value: Term) -> Formula:
    """Capture-avoiding substitution of ``value`` for free ``name``."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(term_subst(a, name, value) for a in f.args))
    if isinstance(f, NegAtom):
        return NegAtom(f.pred, tuple(term_subst(a, name, value) for a in f.args))
    if isinstance(f, BINARY):
        return type(f)(subst(f.left, name, value), subst(f.right, name, value))
    if isinstance(f, QUANT):
        if f.var == name:
            return f
        if name not in free_vars(f.body):
            return f
        vv = term_vars(value)
        if f.var in vv:
            new = fresh_name(f.var, vv | all_vars(f.body) | {name})
            body = subst(f.body, f.var, Var(new))
            return type(f)(new, subst(body, name, value))
        return type(f)(f.var, subst(f.body, name, value))
    if isinstance(f, Frozen):
        return Frozen(subst(f.inner, name, value))
    return f


def instantiate(q: Formula, value: Term) -> Formula:
    """Body of a quantified formula with ``value`` for the bound variable."""
    return subst(q.body, q.var, value)


def constants(f: Formula) -> set:
    """Closed terms occurring in the formula (constants and ground applications)."""
    if isinstance(f, (Atom, NegAtom)):
        out = set()
        for a in f.args:
            out |= closed_subterms(a)
        return out
    if isinstance(f, BINARY):
        return constants(f.left) | constants(f.right)
    if isinstance(f, QUANT):
        return constants(f.body)
    if isinstance(f, Frozen):
        return constants(f.inner)
    return set()


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANT):
        yield from subformulas(f.body)
    elif isinstance(f, Frozen):
        yield from subformulas(f.inner)


def is_propositional(f: Formula) -> bool:
    for g in subformulas(f):
        if isinstance(g, (QUANT, Frozen, NegAtom)):
            return False
        if isinstance(g, Atom) and g.args:
            return False
    return True


# ---------------------------------------------------------------------------
# Sequents

@dataclass(frozen=True, init=False)
class Sequent:
    """``context |- goal`` with the context held as a sorted multiset."""
    context: tuple
    goal: Formula

    def __init__(self, context: Iterable[Formula], goal: Formula):
        object.__setattr__(self, "context", tuple(sorted(context, key=Formula.key)))
        object.__setattr__(self, "goal", goal)

    def counts(self) -> Counter:
        return Counter(self.context)

    def formulas(self) -> list:
        return list(self.context) + [self.goal]

    def free_vars(self) -> frozenset:
        out = free_vars(self.goal)
        for f in self.context:
            out |= free_vars(f)
        return out

    def without(self, f: Formula) -> tuple:
        """Context with one occurrence of ``f`` removed."""
        ctx = list(self.context)
        ctx.remove(f)
        return tuple(ctx)

    def size(self) -> int:
        return sum(size(f) for f in self.context) + size(self.goal)

    def __str__(self):
        from .textio import print_sequent
        return print_sequent(self)


def context_minus(ctx: Iterable[Formula], f: Formula) -> list:
    out = list(ctx)
    out.remove(f)
    return out
