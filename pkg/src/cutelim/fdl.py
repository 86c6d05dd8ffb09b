"""Finite domain logic: Tarski evaluation, the introduction-only prover,
and the full rule table (with eliminations) for checking arbitrary proofs.

Implication is an abbreviation: ``normalize`` rewrites ``A -> B`` to
``~A | B`` and pushes negation down to the atoms.
"""
from __future__ import annotations

from dataclasses import dataclass

from .proof import Mismatch, Proof, Rule, RuleInstance, RuleTable
from .syntax import (
    And, Atom, Bot, BOT, Const, Exists, Forall, Formula, Frozen, Imp, NegAtom, Or,
    Sequent, Top, TOP, Var, context_minus, free_vars, instantiate, subformulas,
)


class NotClosed(ValueError):
    pass


class NotFdlNormalized(ValueError):
    pass


class UnknownRelation(ValueError):
    pass


@dataclass(frozen=True)
class FdlModel:
    domain: tuple
    relations: dict  # (pred, arity) -> set of tuples of constant names

    def __init__(self, domain, relations):
        domain = tuple(domain)
        if not domain:
            raise ValueError("empty domain")
        if len(set(domain)) != len(domain):
            raise ValueError("repeated domain element")
        rels = {}
        for (pred, k), rows in relations.items():
            rows = frozenset(tuple(r) for r in rows)
            for r in rows:
                if len(r) != k:
                    raise ValueError(f"tuple {r} does not have arity {k}")
                for c in r:
                    if c not in domain:
                        raise ValueError(f"constant {c} not in domain")
            rels[(pred, k)] = rows
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "relations", rels)

    def __hash__(self):
        return hash((self.domain, frozenset(self.relations.items())))

    def holds(self, pred, args) -> bool:
        key = (pred, len(args))
        if key not in self.relations:
            raise UnknownRelation(f"no relation {pred}/{len(args)} in the model")
        names = []
        for a in args:
            if not isinstance(a, Const) or a.name not in self.domain:
                raise NotClosed(f"{a} is not a domain constant")
            names.append(a.name)
        return tuple(names) in self.relations[key]

    def in_literals(self, lit) -> bool:
        """Membership in the literal set: P(c) if the tuple is in P, ~P(c) otherwise."""
        if isinstance(lit, Atom):
            return self.holds(lit.pred, lit.args)
        if isinstance(lit, NegAtom):
            return not self.holds(lit.pred, lit.args)
        return False

    def constants(self):
        return [Const(c) for c in self.domain]


def negate(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return NegAtom(f.pred, f.args)
    if isinstance(f, NegAtom):
        return Atom(f.pred, f.args)
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, And):
        return Or(negate(f.left), negate(f.right))
    if isinstance(f, Or):
        return And(negate(f.left), negate(f.right))
    if isinstance(f, Imp):
        return And(normalize(f.left), negate(f.right))
    if isinstance(f, Forall):
        return Exists(f.var, negate(f.body))
    if isinstance(f, Exists):
        return Forall(f.var, negate(f.body))
    raise NotFdlNormalized(f"cannot negate {f}")


def normalize(f: Formula) -> Formula:
    """Expand implications and push negations onto atoms."""
    if isinstance(f, Imp):
        return Or(negate(f.left), normalize(f.right))
    if isinstance(f, (And, Or)):
        return type(f)(normalize(f.left), normalize(f.right))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, normalize(f.body))
    if isinstance(f, Frozen):
        raise NotFdlNormalized("frozen formulas are not part of finite domain logic")
    return f


def _require(f: Formula):
    if free_vars(f):
        raise NotClosed(f"free variables {', '.join(sorted(free_vars(f)))}")
    for g in subformulas(f):
        if isinstance(g, (Imp, Frozen)):
            raise NotFdlNormalized(f"{g} is not normalized")


def eval(model: FdlModel, f: Formula) -> bool:  # noqa: A001 - the natural name
    _require(f)
    return _eval(model, f)


def _eval(model, f):
    if isinstance(f, Atom):
        return model.holds(f.pred, f.args)
    if isinstance(f, NegAtom):
        return not model.holds(f.pred, f.args)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return _eval(model, f.left) and _eval(model, f.right)
    if isinstance(f, Or):
        return _eval(model, f.left) or _eval(model, f.right)
    if isinstance(f, Forall):
        return all(_eval(model, instantiate(f, c)) for c in model.constants())
    if isinstance(f, Exists):
        return any(_eval(model, instantiate(f, c)) for c in model.constants())
    raise NotFdlNormalized(str(f))


def prove_fdl(model: FdlModel, goal: Formula) -> Proof | None:
    """Backward search with introduction rules only and empty contexts.

    Disjunctions try the left branch first, existentials try witnesses in
    domain order.  Returns None when no proof exists.
    """
    _require(goal)
    memo = {}

    def go(f):
        if f in memo:
            return memo[f]
        s = Sequent((), f)
        out = None
        if isinstance(f, (Atom, NegAtom)):
            if model.in_literals(f):
                out = Proof(RuleInstance("atom"), s)
        elif isinstance(f, Top):
            out = Proof(RuleInstance("top_i"), s)
        elif isinstance(f, And):
            a = go(f.left)
            b = go(f.right) if a else None
            if a and b:
                out = Proof(RuleInstance("and_i"), s, (a, b))
        elif isinstance(f, Or):
            a = go(f.left)
            if a:
                out = Proof(RuleInstance("or_i1"), s, (a,))
            else:
                b = go(f.right)
                if b:
                    out = Proof(RuleInstance("or_i2"), s, (b,))
        elif isinstance(f, Forall):
            prems = []
            for c in model.constants():
                p = go(instantiate(f, c))
                if p is None:
                    break
                prems.append(p)
            else:
                out = Proof(RuleInstance("forall_i"), s, tuple(prems))
        elif isinstance(f, Exists):
            for c in model.constants():
                p = go(instantiate(f, c))
                if p:
                    out = Proof(RuleInstance("exists_i", witness=c), s, (p,))
                    break
        memo[f] = out
        return out

    return go(goal)


# ---------------------------------------------------------------------------
# Rule table

def _seq(concl):
    if not isinstance(concl, Sequent):
        raise Mismatch("conclusion is not a sequent")
    return concl


def fdl_rule_table(model: FdlModel) -> RuleTable:
    consts = model.constants()

    def in_domain(t):
        if not (isinstance(t, Const) and t.name in model.domain):
            raise Mismatch(f"witness {t} is not in the domain")

    def axiom(c, i):
        s = _seq(c)
        if s.goal not in s.context:
            raise Mismatch("goal does not occur in the context")
        return []

    def atom(c, i):
        s = _seq(c)
        if not isinstance(s.goal, (Atom, NegAtom)):
            raise Mismatch("goal is not a literal")
        try:
            ok = model.in_literals(s.goal)
        except ValueError as exc:
            raise Mismatch(str(exc)) from None
        if not ok:
            raise Mismatch(f"{s.goal} is not in the literal set")
        return []

    def top_i(c, i):
        if not isinstance(_seq(c).goal, Top):
            raise Mismatch("goal is not top")
        return []

    def bot_e(c, i):
        s = _seq(c)
        return [Sequent(s.context, BOT)]

    def and_i(c, i):
        s = _seq(c)
        if not isinstance(s.goal, And):
            raise Mismatch("goal is not a conjunction")
        return [Sequent(s.context, s.goal.left), Sequent(s.context, s.goal.right)]

    def and_e(side):
        def ex(c, i):
            s = _seq(c)
            p = i.principal
            if not isinstance(p, And) or (p.left if side == 0 else p.right) != s.goal:
                raise Mismatch("principal is not a conjunction with the goal as conjunct")
            return [Sequent(s.context, p)]
        return ex

    def or_i(side):
        def ex(c, i):
            s = _seq(c)
            if not isinstance(s.goal, Or):
                raise Mismatch("goal is not a disjunction")
            return [Sequent(s.context, s.goal.left if side == 0 else s.goal.right)]
        return ex

    def or_e(c, i):
        s = _seq(c)
        p = i.principal
        if not isinstance(p, Or):
            raise Mismatch("principal is not a disjunction")
        return [Sequent(s.context, p), Sequent(s.context + (p.left,), s.goal),
                Sequent(s.context + (p.right,), s.goal)]

    def forall_i(c, i):
        s = _seq(c)
        if not isinstance(s.goal, Forall):
            raise Mismatch("goal is not universal")
        return [Sequent(s.context, instantiate(s.goal, k)) for k in consts]

    def forall_e(c, i):
        s = _seq(c)
        p = i.principal
        if not isinstance(p, Forall):
            raise Mismatch("principal is not universal")
        in_domain(i.witness)
        if instantiate(p, i.witness) != s.goal:
            raise Mismatch("goal is not the instance of the principal")
        return [Sequent(s.context, p)]

    def exists_i(c, i):
        s = _seq(c)
        if not isinstance(s.goal, Exists):
            raise Mismatch("goal is not existential")
        in_domain(i.witness)
        return [Sequent(s.context, instantiate(s.goal, i.witness))]

    def exists_e(c, i):
        s = _seq(c)
        p = i.principal
        if not isinstance(p, Exists):
            raise Mismatch("principal is not existential")
        return [Sequent(s.context, p)] + [Sequent(s.context + (instantiate(p, k),), s.goal) for k in consts]

    P, W = frozenset({"principal"}), frozenset({"witness"})
    rules = [
        Rule("axiom", True, axiom),
        Rule("atom", True, atom),
        Rule("top_i", True, top_i),
        Rule("bot_e", False, bot_e, (0,)),
        Rule("and_i", True, and_i),
        Rule("and_e1", False, and_e(0), (0,), P),
        Rule("and_e2", False, and_e(1), (0,), P),
        Rule("or_i1", True, or_i(0)),
        Rule("or_i2", True, or_i(1)),
        Rule("or_e", False, or_e, (0,), P),
        Rule("forall_i", True, forall_i),
        Rule("forall_e", False, forall_e, (0,), P | W),
        Rule("exists_i", True, exists_i, None, W),
        Rule("exists_e", False, exists_e, (0,), P),
    ]
    return RuleTable("FDL", {r.name: r for r in rules}, order="size", extra={"model": model})
