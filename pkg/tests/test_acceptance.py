"""Acceptance criteria 1-8.  Each test prints one PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or under pytest.
CUTELIM_EQUIV_DEADLINE (seconds, default 600) bounds criterion 6.
"""
import itertools
import os
import random
import sys
import time
from pathlib import Path

import pytest

from cutelim import apds, fdl, gen, natded, oracle, sequent
from cutelim.proof import check_proof, contains_only_intros, is_cut_free
from cutelim.syntax import Atom, Exists, Forall, Or, Sequent, Var, free_vars, word
from cutelim.textio import parse_apds, parse_apds_atom, parse_formula, parse_sequent

DATA = Path(__file__).parent / "data"


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line, file=sys.__stdout__, flush=True)
    return line


# ---------------------------------------------------------------------------

EXPECTED_SAT = """
n3: S(x) <- Q(x).
i5: T(eps).
i6: T(a x).
i7: Q(a x) <- Q(x), T(x).
i8: S(a x) <- Q(x), T(x).
i9: T(b x).
i10: Q(b x) <- T(x).
i11: S(b x) <- T(x).
"""


def criterion_1():
    t0 = time.perf_counter()
    text = (DATA / "s.apds").read_text()
    s = parse_apds(text)
    sat = apds.saturate(s)
    expected = parse_apds(text + EXPECTED_SAT)
    same = sat.rule_set() == expected.rule_set()
    q = parse_apds_atom("S(a b)")
    true = apds.decide(s, q)
    proof = apds.prove(s, q)
    table = apds.apds_rule_table(sat)
    check_proof(proof, table)
    intro = contains_only_intros(proof, table) and all(
        sat.by_name(n.rule.rule_id).is_intro for _, n in proof.nodes())
    root_i8 = sat.by_name(proof.rule.rule_id) == expected.by_name("i8") and proof.count() == 4
    dt = time.perf_counter() - t0
    ok = same and true and intro and root_i8 and dt < 1.0
    return ok, (f"saturated set equal={same}, S(a b)={true}, intro-only proof={intro}, "
                f"root is i8={root_i8}, {dt:.3f}s")


def criterion_2():
    t0 = time.perf_counter()
    m = parse_apds((DATA / "oddeven.fsa").read_text())
    system = apds.from_fsa(m)
    wrong = [n for n in range(21)
             if apds.decide(system, Atom("odd", (word(["a"] * n),))) != (n % 2 == 1)]
    dt = time.perf_counter() - t0
    return not wrong and dt < 1.0, f"mismatches={wrong}, {dt:.3f}s"


def criterion_3():
    t0 = time.perf_counter()
    rng = random.Random(3)
    bad = errors = 0
    for _ in range(1000):
        try:
            model, f = gen.random_fdl_instance(rng, depth=4)
            p = fdl.prove_fdl(model, f)
            if (p is not None) != fdl.eval(model, f):
                bad += 1
            elif p is not None:
                table = fdl.fdl_rule_table(model)
                check_proof(p, table)
                if not contains_only_intros(p, table):
                    bad += 1
        except Exception:
            errors += 1
    dt = time.perf_counter() - t0
    return bad == 0 and errors == 0 and dt < 30, f"disagreements={bad}, exceptions={errors}, {dt:.1f}s"


def criterion_4():
    t0 = time.perf_counter()
    rng = random.Random(4)
    bad = 0
    queries = 0
    for _ in range(300):
        system = gen.random_apds(rng, max_preds=4, max_syms=2, max_rules=6)
        syms = sorted(system.symbols)
        for n in range(5):
            facts = apds.naive_fixpoint(system, apds.default_max_len(system, n))
            for w in itertools.product(syms, repeat=n):
                for pred in system.predicates:
                    queries += 1
                    got = apds.decide(system, Atom(pred, (word(w),)))
                    if got != ((pred, w) in facts):
                        bad += 1
    dt = time.perf_counter() - t0
    return bad == 0 and dt < 60, f"queries={queries}, disagreements={bad}, {dt:.1f}s"


def criterion_5():
    rng = random.Random(5)
    corpus = []
    for _ in range(250):
        m = gen.random_model(rng)
        corpus.append((gen.random_fdl_proof(rng, m), fdl.fdl_rule_table(m)))
    for system, p in gen.random_apds_proofs(rng, 250):
        corpus.append((p, apds.apds_rule_table(system)))
    ktab, dtab = sequent.k_rule_table(), sequent.d_rule_table()
    corpus += [(p, ktab) for p in gen.harvest_k(rng, 250)]
    corpus += [(p, dtab) for p in gen.harvest_d(rng, 250)]
    bad = errors = cuts = 0
    for p, table in corpus:
        try:
            check_proof(p, table)
            cf = is_cut_free(p, table)
            cuts += not cf
            if cf != contains_only_intros(p, table):
                bad += 1
        except Exception:
            errors += 1
    return bad == 0 and errors == 0 and len(corpus) == 1000, \
        f"proofs={len(corpus)}, with cuts={cuts}, mismatches={bad}, exceptions={errors}"


NAMED = [("(P | (P -> Q)) -> Q |- Q", True), ("|- P | (P -> Q)", False)]


def criterion_6(deadline=None):
    if deadline is None:
        deadline = float(os.environ.get("CUTELIM_EQUIV_DEADLINE", "600"))
    t0 = time.perf_counter()
    named_ok = all(all(v == want for v in sequent.equiv_check(parse_sequent(s)).values())
                   for s, want in NAMED)
    atoms = ["p", "q"]
    total = oracle.count_formulas(atoms, 6)
    count = bad = 0
    finished = True
    for f in oracle.enumerate_formulas(atoms, 6):
        r = sequent.equiv_check(Sequent((), f))
        count += 1
        if len(set(r.values())) > 1:
            bad += 1
        if count % 1000 == 0 and time.perf_counter() - t0 > deadline:
            finished = False
            break
    dt = time.perf_counter() - t0
    complete = finished and count == total
    ok = named_ok and bad == 0 and complete
    return ok, (f"checked {count} of {total} formulas ({100.0 * count / total:.4f}%), "
                f"disagreements={bad}, named instances ok={named_ok}, {dt:.0f}s"
                + ("" if finished else f", stopped at the {deadline:.0f}s deadline"))


def _with_target(rng, kinds, count, duplicate=False):
    """Harvest K proofs of sequents whose context holds a target of the given kinds."""
    out = []
    budget = gen.FO_BUDGET
    tries = 0
    while len(out) < count:
        tries += 1
        assert tries < 100000, "too few provable instances"
        quantified = rng.random() < 0.25
        base = gen.random_fo_sequent(rng) if quantified else gen.random_prop_sequent(rng)
        target = gen.random_fo(rng, depth=3) if quantified else gen.random_prop(rng, connectives=rng.randint(1, 3))
        if not isinstance(target, kinds):
            continue
        extra = (target, target) if duplicate else (target,)
        s = Sequent(base.context + extra, base.goal)
        try:
            p = sequent.prove_k(s, budget)
        except sequent.BudgetExhausted:
            continue
        if p is None:
            continue
        if rng.random() < 0.3 and not duplicate:
            # make the target idle by weakening a proof of the base sequent
            try:
                q = sequent.prove_k(base, budget)
            except sequent.BudgetExhausted:
                q = None
            if q is not None:
                p = sequent.weaken(q, target)
        out.append((p, target))
    return out


def criterion_7():
    from cutelim.syntax import And, Imp

    rng = random.Random(7)
    ktab, dtab = sequent.k_rule_table(), sequent.d_rule_table()
    violations = 0

    def ok(proofs, h, want):
        nonlocal violations
        for q in proofs if isinstance(proofs, tuple) else (proofs,):
            try:
                check_proof(q, ktab)
            except Exception:
                violations += 1
                continue
            if q.height() > h:
                violations += 1
        got = tuple(q.conclusion for q in proofs) if isinstance(proofs, tuple) else proofs.conclusion
        if got != want:
            violations += 1

    for p, t in _with_target(rng, (And, Or, Exists), 300):
        s = p.conclusion
        rest = list(s.without(t))
        try:
            if isinstance(t, And):
                ok(sequent.invert_k(p, t), p.height(), Sequent(rest + [t.left, t.right], s.goal))
            elif isinstance(t, Or):
                ok(sequent.invert_k(p, t), p.height(),
                   (Sequent(rest + [t.left], s.goal), Sequent(rest + [t.right], s.goal)))
            else:
                from cutelim.syntax import fresh_name, instantiate
                v = fresh_name("v", s.free_vars())
                ok(sequent.invert_k(p, t, v), p.height(), Sequent(rest + [instantiate(t, Var(v))], s.goal))
        except Exception:
            violations += 1
    for p, t in _with_target(rng, (Imp,), 300):
        s = p.conclusion
        try:
            ok(sequent.strip_imp_k(p, t), p.height(), Sequent(list(s.without(t)) + [t.right], s.goal))
        except Exception:
            violations += 1
    for p, t in _with_target(rng, (And, Or, Imp, Exists, Forall, Atom), 300, duplicate=True):
        s = p.conclusion
        try:
            ok(sequent.contract_k(p, t), p.height(), Sequent(s.without(t), s.goal))
        except Exception:
            violations += 1
    for p in gen.harvest_d(rng, 300, quantified=0.4):
        extra = gen.random_fo(rng, depth=2, bound=("y", "x")) if rng.random() < 0.5 else gen.random_prop(rng)
        try:
            w = sequent.weaken_d(p, extra)
            check_proof(w, dtab)
            if w.height() != p.height() or w.conclusion != Sequent(p.conclusion.context + (extra,), p.conclusion.goal):
                violations += 1
        except Exception:
            violations += 1
    return violations == 0, f"1200 transformations, violations={violations}"


def criterion_8():
    rng = random.Random(8)
    problems = []
    for _ in range(1000):
        f = gen.random_fo(rng, depth=4) if rng.random() < 0.5 else gen.random_prop(rng, connectives=5)
        if natded.unfreeze(natded.freeze(f)) != f:
            problems.append("round-trip")
    goal = natded.freeze(parse_formula("(P -> (P -> P)) & ((P & P) -> P)"))
    proof, leaves = natded.prove_delay(Sequent((), goal))
    check_proof(proof, natded.pseudo_table())
    if [str(l.sequent) for l in leaves] != ["[P & P] |- P"]:
        problems.append(f"delayed leaves {[str(l.sequent) for l in leaves]}")

    disj = 0
    while disj < 500:
        f = Or(gen.random_prop(rng, connectives=rng.randint(0, 3)), gen.random_prop(rng, connectives=rng.randint(0, 3)))
        r = natded.check_disjunction_property(f)
        if r is natded.Disjunction.NOT_APPLICABLE:
            continue
        disj += 1
        if r is natded.Disjunction.VIOLATION:
            problems.append(f"violation on {f}")

    budget = sequent.SearchBudget(max_depth=60, witness_universe=(parse_formula("P(a)").args[0],))
    shocking = 0
    tries = 0
    while shocking < 100 and tries < 20000:
        tries += 1
        b1 = gen.random_fo(rng, depth=2, bound=("x",))
        b2 = gen.random_fo(rng, depth=2, bound=("x",))
        if "x" not in (free_vars(b1) | free_vars(b2)):
            continue
        goal = Forall("x", Or(b1, b2))
        try:
            r = natded.check_disjunction_property(goal, sequent.prove_d, budget)
        except natded.UnsupportedFragment:
            continue
        if r is natded.Disjunction.NOT_APPLICABLE:
            continue
        shocking += 1
        split = Or(Forall("x", b1), Forall("x", b2))
        try:
            provable = sequent.prove_d(Sequent((), split), budget) is not None
        except sequent.BudgetExhausted:
            provable = False
        if r is natded.Disjunction.VIOLATION or not provable:
            problems.append(f"shocking equality fails on {goal}")
    if shocking < 100:
        problems.append(f"only {shocking} decidable forall-or instances")
    return not problems, f"disjunctions={disj}, forall-or instances={shocking}, problems={problems[:3]}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("n", range(1, 9))
def test_criterion(n):
    ok, detail = CRITERIA[n - 1]()
    report(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, c in enumerate(CRITERIA, 1):
        ok, detail = c()
        report(i, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
