"""Command line front end: ``slptm {ground,solve,encode,run,oracle,check} FILE``."""

from __future__ import annotations

import argparse
import json
import sys

from .encoding import build_edb, describe_run, model_to_run, p_trg, run_key, verify_bijection
from .errors import BoundExceeded, GroundingTooLarge, NotDomainRestricted, ParseError, SemanticError
from .grounder import compute_split, relational_ground
from .logic import ground_program
from .solver import SolveLimits, iter_stable_models
from .syntax import format_model, format_program, parse_machine, parse_program_file
from .turing import enumerate_valid_runs, normalize_machine

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_program(path):
    parsed = parse_program_file(_read(path))
    return parsed.program, compute_split(parsed.program, parsed.edb, parsed.idb)


def _ground(program, split, naive, limit):
    if naive:
        return ground_program(program, limit=limit)
    return relational_ground(program, split)


def _load_machine(path):
    m, p, word = parse_machine(_read(path))
    return normalize_machine(m), p, word


def format_run_table(run) -> str:
    rows = [("time", "state", "head", "tape", "instruction")]
    for t, c in enumerate(run):
        rows.append((str(t), c.instr.q, str(c.head), " ".join(c.tape), str(c.instr)))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    return "".join(
        "  ".join(cell.ljust(w) for cell, w in zip(r[:4], widths)) + "  " + r[4] + "\n" for r in rows
    )


def format_runs(runs) -> str:
    if not runs:
        return "no valid runs\n"
    return "\n".join(f"run {k}\n{format_run_table(r)}" for k, r in enumerate(sorted(runs, key=run_key), 1))


def cmd_ground(args, out):
    program, split = _load_program(args.file)
    pg = _ground(program, split, args.naive, args.limit)
    out.write(format_program(pg.clauses))
    return EXIT_OK


def cmd_solve(args, out):
    program, split = _load_program(args.file)
    try:
        pg = _ground(program, split, args.naive, args.limit)
    except NotDomainRestricted:
        pg = ground_program(program, limit=args.limit)
    limits = SolveLimits(max_models=args.max_models)
    models = []
    for m in iter_stable_models(pg, limits):
        models.append(m)
        if not args.json:
            out.write(format_model(m) + "\n")
            out.flush()
    if args.json:
        json.dump({"models": [sorted(str(a) for a in m) for m in models]}, out)
        out.write("\n")
    elif not models:
        out.write("UNSATISFIABLE\n")
    return EXIT_OK


def cmd_encode(args, out):
    m, p, word = _load_machine(args.file)
    inst = build_edb(m, p, word)
    out.write(format_program(inst.edb))
    out.write(format_program(p_trg()))
    return EXIT_OK


def _emit_runs(runs, args, out):
    runs = sorted(runs, key=run_key)
    if args.json:
        json.dump([describe_run(r) for r in runs], out)
        out.write("\n")
    else:
        out.write(format_runs(runs))


def cmd_run(args, out):
    m, p, word = _load_machine(args.file)
    inst = build_edb(m, p, word)
    _emit_runs([model_to_run(inst, model) for model in inst.solve()], args, out)
    return EXIT_OK


def cmd_oracle(args, out):
    m, p, word = _load_machine(args.file)
    _emit_runs(enumerate_valid_runs(m, p, word, max_horizon=args.max_horizon), args, out)
    return EXIT_OK


def cmd_check(args, out):
    m, p, word = _load_machine(args.file)
    report, _, _ = verify_bijection(m, p, word, max_horizon=args.max_horizon)
    if args.json:
        json.dump(report.as_json(), out)
        out.write("\n")
    else:
        out.write(f"runs={report.runs} models={report.models} bijection={str(report.bijection).lower()}\n")
        if report.counterexample is not None:
            out.write("counterexample:\n" + json.dumps(report.counterexample, indent=2) + "\n")
    return EXIT_OK if report.bijection else EXIT_MISMATCH


def build_parser():
    ap = argparse.ArgumentParser(prog="slptm", description="Stable models, grounding and Turing machine encodings.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="input file, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("ground", cmd_ground, "print the ground program")
    p.add_argument("--naive", action="store_true", help="substitute every constant for every variable")
    p.add_argument("--limit", type=int, default=1_000_000, help="cap on naive ground instances")
    p = add("solve", cmd_solve, "enumerate stable models")
    p.add_argument("--max-models", type=int, default=None)
    p.add_argument("--naive", action="store_true")
    p.add_argument("--limit", type=int, default=1_000_000)
    add("encode", cmd_encode, "print edb and the fixed program for a machine")
    add("run", cmd_run, "decode the stable models of a machine's encoding into runs")
    for name, fn, help_ in (("oracle", cmd_oracle, "enumerate valid runs directly"), ("check", cmd_check, "compare runs with decoded models")):
        p = add(name, fn, help_)
        p.add_argument("--max-horizon", type=int, default=12, help="largest p(n) the run enumerator accepts")
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args, out)
    except (ParseError, SemanticError, OSError, NotDomainRestricted, GroundingTooLarge, BoundExceeded, ValueError) as exc:
        msg = exc.msg if isinstance(exc, ParseError) else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
