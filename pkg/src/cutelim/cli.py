"""Command line front end.

Exit codes: 0 success (true, provable, accepted), 1 false (unprovable,
rejected, check failure), 2 search budget exhausted, 3 input error,
4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import apds, fdl, natded, oracle, sequent
from .proof import CheckError, check_proof, cut_paths
from .syntax import Sequent
from .textio import (
    ParseError, parse_apds, parse_apds_atom, parse_fdl_model, parse_formula,
    parse_proof, parse_sequent, parse_term, print_apds, print_proof, print_sequent,
)

OK, FALSE, BUDGET, INPUT, INTERNAL = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(INPUT)


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _inline(arg):
    return _read(arg[1:]) if arg.startswith("@") else arg


def _emit(text, out=None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _format(args):
    if args.format:
        return args.format
    return "tree" if sys.stdout.isatty() else "records"


def _budget(args, s):
    kw = {"max_depth": args.depth}
    if args.witnesses:
        kw["witness_universe"] = tuple(parse_term(t.strip(), s.free_vars())
                                       for t in args.witnesses.split(",") if t.strip())
    return sequent.SearchBudget(**kw)


def _table(calculus, args):
    calculus = calculus.lower()
    if calculus in ("g", "k", "d"):
        return sequent.TABLES[calculus.upper()]()
    if calculus == "nd":
        return natded.nd_rule_table()
    if calculus == "delay":
        return natded.pseudo_table()
    if calculus == "fdl":
        if not args.model:
            raise InputError("--model is required for fdl")
        return fdl.fdl_rule_table(parse_fdl_model(_read(args.model)))
    if calculus == "apds":
        if not args.system:
            raise InputError("--system is required for apds")
        return apds.apds_rule_table(apds.saturate(_load_apds(args.system)))
    raise InputError(f"unknown calculus {calculus}")


def _load_apds(path):
    system = parse_apds(_read(path))
    if isinstance(system, apds.Fsa):
        return apds.from_fsa(system)
    return system


# ---------------------------------------------------------------------------
# Subcommands

def cmd_prove(args):
    s = parse_sequent(_inline(args.sequent))
    calc = args.calculus
    leaves = []
    if calc == "fdl":
        if not args.model:
            raise InputError("--model is required for fdl")
        if s.context:
            raise InputError("fdl proofs have an empty context")
        model = parse_fdl_model(_read(args.model))
        goal = fdl.normalize(s.goal)
        proof = fdl.prove_fdl(model, goal)
    elif calc == "delay":
        universe = None
        if args.witnesses:
            universe = _budget(args, s).witness_universe
        target = Sequent(s.context, natded.freeze(s.goal))
        found = natded.prove_delay(target, universe)
        proof, leaves = found if found else (None, [])
    else:
        proof = sequent.PROVERS[calc.upper()](s, _budget(args, s))
    if proof is None:
        print("UNPROVABLE")
        return FALSE
    text = print_proof(proof, _format(args))
    text += "".join(f"# delayed: {print_sequent(leaf.sequent)}\n" for leaf in leaves)
    _emit(text, args.output)
    return OK


def cmd_check(args):
    table = _table(args.calculus, args)
    proof = parse_proof(_read(args.file), table, check=False)
    try:
        check_proof(proof, table)
    except CheckError as exc:
        print(f"ERROR {exc}")
        return FALSE
    print("OK")
    if args.report_cuts:
        for path in cut_paths(proof, table):
            print(f"general cut at {_where(path)}")
        if table.calculus == "ND":
            for path, n in proof.nodes():
                if natded.is_specific_cut(n):
                    print(f"specific cut at {_where(path)}")
    return OK


def _where(path):
    return "/".join(str(i) for i in path) or "root"


def cmd_saturate(args):
    system = _load_apds(args.file)
    sat = apds.saturate(system)
    flagged = {r.name for r in apds.added_rules(system, sat)}
    _emit(print_apds(sat, flagged), args.output)
    return OK


def cmd_decide(args):
    system = _load_apds(args.file)
    atom = parse_apds_atom(args.atom)
    if args.proof:
        proof = apds.prove(system, atom)
        if proof is None:
            print("FALSE")
            return FALSE
        print("TRUE")
        text = print_proof(proof, args.format or "records")
        _emit(text, args.output)
        return OK
    ok = apds.decide(system, atom)
    print("TRUE" if ok else "FALSE")
    return OK if ok else FALSE


def cmd_fdl_eval(args):
    model = parse_fdl_model(_read(args.model))
    f = fdl.normalize(parse_formula(_inline(args.formula)))
    ok = fdl.eval(model, f)
    print("TRUE" if ok else "FALSE")
    return OK if ok else FALSE


def cmd_compare(args):
    if args.file:
        seqs = [parse_sequent(line) for line in _read(args.file).splitlines()
                if line.strip() and not line.lstrip().startswith("#")]
    else:
        atoms = [a.strip() for a in args.atoms.split(",") if a.strip()]
        if not atoms:
            raise InputError("--atoms needs at least one atom")
        seqs = (Sequent((), f) for f in oracle.enumerate_formulas(atoms, args.max_connectives))
    bad = []
    for s in seqs:
        report = sequent.equiv_check(s)
        line = sequent.equiv_line(s, report)
        print(line)
        if len(set(report.values())) > 1:
            bad.append(line)
    for line in sorted(bad):
        print(f"DISAGREE\t{line}", file=sys.stderr)
    return INTERNAL if bad else OK


def cmd_fsa(args):
    m = parse_apds(_read(args.file))
    if not isinstance(m, apds.Fsa):
        raise InputError(f"{args.file} is not an automaton")
    if args.state not in m.states:
        raise InputError(f"unknown state {args.state}")
    word = args.word.split()
    unknown = [w for w in word if w not in m.alphabet]
    if unknown:
        raise InputError(f"symbol {unknown[0]} is not in the alphabet")
    text = f"{args.state}({' '.join(word) if word else 'eps'})"
    ok = apds.decide(apds.from_fsa(m), parse_apds_atom(text))
    print("ACCEPT" if ok else "REJECT")
    return OK if ok else FALSE


# ---------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="cutelim", description="Cut elimination and proof search tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("prove", help="search for a proof of a sequent")
    q.add_argument("--calculus", choices=["g", "k", "d", "fdl", "delay"], default="d")
    q.add_argument("--model", help="finite model file (fdl)")
    q.add_argument("--depth", type=int, default=200)
    q.add_argument("--witnesses", help="comma separated witness terms")
    q.add_argument("--format", choices=["tree", "records"])
    q.add_argument("-o", "--output", help="write the proof here instead of standard output")
    q.add_argument("sequent", help="sequent text or @file.seq")
    q.set_defaults(run=cmd_prove)

    q = sub.add_parser("check", help="check a proof file")
    q.add_argument("--calculus", required=True,
                   choices=["g", "k", "d", "nd", "delay", "fdl", "apds"])
    q.add_argument("--model", help="finite model file (fdl)")
    q.add_argument("--system", help="pushdown system file (apds)")
    q.add_argument("--report-cuts", action="store_true")
    q.add_argument("file")
    q.set_defaults(run=cmd_check)

    q = sub.add_parser("saturate", help="saturate a pushdown system")
    q.add_argument("file")
    q.add_argument("-o", "--output")
    q.set_defaults(run=cmd_saturate)

    q = sub.add_parser("decide", help="decide an atom in a pushdown system")
    q.add_argument("file")
    q.add_argument("atom", help='for example "S(a b)"')
    q.add_argument("--proof", action="store_true", help="also emit the cut-free proof")
    q.add_argument("-o", "--output", help="write the proof here instead of standard output")
    q.add_argument("--format", choices=["tree", "records"])
    q.set_defaults(run=cmd_decide)

    q = sub.add_parser("fdl-eval", help="evaluate a closed formula in a finite model")
    q.add_argument("--model", required=True)
    q.add_argument("formula")
    q.set_defaults(run=cmd_fdl_eval)

    q = sub.add_parser("compare", help="four-way provability comparison")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--atoms")
    g.add_argument("--file")
    q.add_argument("--max-connectives", type=int, default=2)
    q.set_defaults(run=cmd_compare)

    q = sub.add_parser("fsa", help="run a finite automaton through its pushdown encoding")
    q.add_argument("--file", required=True)
    q.add_argument("--word", required=True)
    q.add_argument("--state", required=True)
    q.set_defaults(run=cmd_fsa)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else INPUT
    if getattr(args, "depth", 1) < 1:
        print("cutelim: error: --depth must be at least 1", file=sys.stderr)
        return INPUT
    try:
        return args.run(args)
    except sequent.BudgetExhausted:
        print("BUDGET")
        return BUDGET
    except natded.UnsupportedFragment as exc:
        print(f"cutelim: {exc}", file=sys.stderr)
        return BUDGET
    except CheckError as exc:
        print(f"ERROR {exc}")
        return FALSE
    except (ParseError, InputError, ValueError) as exc:
        print(f"cutelim: error: {exc}", file=sys.stderr)
        return INPUT
    except AssertionError as exc:
        print(f"cutelim: internal error: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
