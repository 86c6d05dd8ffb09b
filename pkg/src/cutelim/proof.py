"""Proof trees, rule tables, the two well-founded orders, and cut detection.

A rule table maps rule ids to :class:`Rule` objects.  Each rule knows how
to compute the premises it expects from a conclusion and the instance
data stored at the node, so checking a proof is a local comparison at
every node.  Whether a rule counts as an introduction is a property of
the rule (every instance must decrease the table's order), not of the
individual node.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .syntax import (
    Atom, Formula, Sequent, Term, Var, free_vars, fresh_name, size, subst,
    term_size, term_subst, term_vars,
)


class CheckError(Exception):
    """A node that is not a correct rule instance.  ``path`` lists premise indices from the root."""

    def __init__(self, path, reason):
        self.path = tuple(path)
        self.reason = reason
        where = "/".join(str(i) for i in self.path) or "root"
        super().__init__(f"at {where}: {reason}")


class Mismatch(Exception):
    """Raised by rule expanders when a conclusion does not fit the schema."""


@dataclass(frozen=True)
class RuleInstance:
    rule_id: str
    principal: Optional[Formula] = None
    witness: Optional[Term] = None
    fresh_var: Optional[str] = None


@dataclass(frozen=True)
class Proof:
    rule: RuleInstance
    conclusion: object  # Sequent, or Atom for pushdown systems
    premises: tuple = ()

    def height(self) -> int:
        # iterative so that long chains do not hit the recursion limit
        best = {}
        stack = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done:
                best[id(node)] = 1 + max((best[id(p)] for p in node.premises), default=0)
                continue
            stack.append((node, True))
            stack.extend((p, False) for p in node.premises)
        return best[id(self)]

    def nodes(self) -> Iterator[tuple]:
        """Yield ``(path, node)`` in pre-order."""
        stack = [((), self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for i in reversed(range(len(node.premises))):
                stack.append((path + (i,), node.premises[i]))

    def at(self, path) -> "Proof":
        node = self
        for i in path:
            node = node.premises[i]
        return node

    def count(self) -> int:
        return sum(1 for _ in self.nodes())


def leaf(rule_id, conclusion, **kw) -> Proof:
    return Proof(RuleInstance(rule_id, **kw), conclusion, ())


def node(rule_id, conclusion, premises, **kw) -> Proof:
    return Proof(RuleInstance(rule_id, **kw), conclusion, tuple(premises))


# ---------------------------------------------------------------------------
# Orders

def measure(x) -> int:
    if isinstance(x, Sequent):
        return x.size()
    if isinstance(x, Formula):
        return size(x)
    raise TypeError(f"no size for {x!r}")


def size_order_less(a, b) -> bool:
    return measure(a) < measure(b)


def multiset_order_less(a: Sequent, b: Sequent) -> bool:
    """Dershowitz-Manna extension of the formula size order to sequents."""
    ma, mb = Counter(a.formulas()), Counter(b.formulas())
    added = ma - mb
    removed = mb - ma
    if not removed:
        return False
    return all(any(size(y) < size(x) for x in removed) for y in added)


def word_order_less(a: Atom, b: Atom) -> bool:
    return term_size(a.args[0]) < term_size(b.args[0])


ORDERS = {"size": size_order_less, "multiset": multiset_order_less, "word": word_order_less}


# ---------------------------------------------------------------------------
# Rule tables

@dataclass(frozen=True)
class Rule:
    name: str
    intro: bool
    expand: Callable  # (conclusion, RuleInstance) -> list of premise conclusions
    major: Optional[tuple] = None  # premise indices; None means every premise
    needs: frozenset = frozenset()  # subset of {"principal", "witness", "fresh"}

    def major_indices(self, n):
        if self.major is None:
            return tuple(range(n))
        return tuple(i for i in self.major if i < n)


@dataclass
class RuleTable:
    calculus: str
    rules: dict
    order: str = "size"
    extra: dict = field(default_factory=dict)

    def rule(self, rule_id) -> Rule:
        return self.rules[rule_id]

    def less(self, a, b) -> bool:
        return ORDERS[self.order](a, b)

    def intro_ids(self):
        return sorted(r for r, v in self.rules.items() if v.intro)


_FIELDS = (("principal", "principal"), ("witness", "witness"), ("fresh_var", "fresh"))


def check_node(node: Proof, table: RuleTable, path=()):
    inst = node.rule
    rule = table.rules.get(inst.rule_id)
    if rule is None:
        raise CheckError(path, f"unknown rule {inst.rule_id!r} in {table.calculus}")
    for attr, tag in _FIELDS:
        present = getattr(inst, attr) is not None
        if present and tag not in rule.needs:
            raise CheckError(path, f"{inst.rule_id} takes no {tag}")
        if not present and tag in rule.needs:
            raise CheckError(path, f"{inst.rule_id} needs a {tag}")
    try:
        expected = rule.expand(node.conclusion, inst)
    except Mismatch as exc:
        raise CheckError(path, f"{inst.rule_id}: {exc}") from None
    if len(expected) != len(node.premises):
        raise CheckError(path, f"{inst.rule_id} expects {len(expected)} premises, got {len(node.premises)}")
    for i, (want, prem) in enumerate(zip(expected, node.premises)):
        if prem.conclusion != want:
            raise CheckError(path + (i,), f"premise {i} of {inst.rule_id} should conclude {want}, not {prem.conclusion}")


def check_proof(proof: Proof, table: RuleTable) -> None:
    """Raise :class:`CheckError` at the first bad node (pre-order)."""
    for path, n in proof.nodes():
        check_node(n, table, path)


def is_valid(proof: Proof, table: RuleTable) -> bool:
    try:
        check_proof(proof, table)
    except CheckError:
        return False
    return True


# ---------------------------------------------------------------------------
# Introductions and cuts

def is_introduction(node: Proof, table: RuleTable) -> bool:
    return table.rule(node.rule.rule_id).intro


def respects_order(node: Proof, table: RuleTable) -> bool:
    """Whether this particular node has every premise below its conclusion."""
    return all(table.less(p.conclusion, node.conclusion) for p in node.premises)


def is_general_cut(node: Proof, table: RuleTable) -> bool:
    rule = table.rule(node.rule.rule_id)
    if rule.intro:
        return False
    return all(is_introduction(node.premises[i], table)
               for i in rule.major_indices(len(node.premises)))


def cut_paths(proof: Proof, table: RuleTable) -> list:
    return [path for path, n in proof.nodes() if is_general_cut(n, table)]


def is_cut_free(proof: Proof, table: RuleTable) -> bool:
    return not any(is_general_cut(n, table) for _, n in proof.nodes())


def contains_only_intros(proof: Proof, table: RuleTable) -> bool:
    return all(is_introduction(n, table) for _, n in proof.nodes())


def map_conclusions(proof: Proof, fn, inst_fn=None) -> Proof:
    """Rebuild a proof applying ``fn`` to every conclusion (and ``inst_fn`` to instances)."""
    prems = tuple(map_conclusions(p, fn, inst_fn) for p in proof.premises)
    inst = inst_fn(proof.rule) if inst_fn else proof.rule
    return Proof(inst, fn(proof.conclusion), prems)


# ---------------------------------------------------------------------------
# Variables in sequent proofs

def proof_vars(proof: Proof) -> frozenset:
    """Every free variable of every conclusion, plus every eigenvariable."""
    out = set()
    for _, n in proof.nodes():
        c = n.conclusion
        if isinstance(c, Sequent):
            out |= c.free_vars()
        if n.rule.fresh_var is not None:
            out.add(n.rule.fresh_var)
        if n.rule.witness is not None:
            out |= term_vars(n.rule.witness)
    return frozenset(out)


def _subst_inst(inst, name, value):
    return RuleInstance(
        inst.rule_id,
        subst(inst.principal, name, value) if inst.principal is not None else None,
        term_subst(inst.witness, name, value) if inst.witness is not None else None,
        inst.fresh_var,
    )


def subst_proof(proof: Proof, name: str, value: Term) -> Proof:
    """Substitute ``value`` for the free variable ``name`` in a sequent proof.

    Eigenvariables that would capture a variable of ``value`` are renamed.
    """
    inst = proof.rule
    if inst.fresh_var == name:
        return proof  # name is not free below an eigenvariable binding it
    prems = proof.premises
    vv = term_vars(value)
    if inst.fresh_var is not None and inst.fresh_var in vv:
        new = fresh_name(inst.fresh_var, proof_vars(proof) | vv | {name})
        prems = tuple(subst_proof(p, inst.fresh_var, Var(new)) for p in prems)
        inst = RuleInstance(inst.rule_id, inst.principal, inst.witness, new)
    s = proof.conclusion
    concl = Sequent([subst(f, name, value) for f in s.context], subst(s.goal, name, value))
    return Proof(_subst_inst(inst, name, value), concl,
                 tuple(subst_proof(p, name, value) for p in prems))


def rename_eigenvariables(proof: Proof, avoid) -> Proof:
    """Rename every eigenvariable that belongs to ``avoid``."""
    avoid = frozenset(avoid)
    inst = proof.rule
    prems = proof.premises
    if inst.fresh_var is not None and inst.fresh_var in avoid:
        new = fresh_name(inst.fresh_var, proof_vars(proof) | avoid)
        prems = tuple(subst_proof(p, inst.fresh_var, Var(new)) for p in prems)
        inst = RuleInstance(inst.rule_id, inst.principal, inst.witness, new)
    return Proof(inst, proof.conclusion, tuple(rename_eigenvariables(p, avoid) for p in prems))
