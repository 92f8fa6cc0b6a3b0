"""Measure extensional database size against (|M| + |sigma| + p(n) + 3)^2 over a grid of horizons."""

import argparse
from pathlib import Path

from slptm.encoding import build_edb, edb_size_bound
from slptm.syntax import parse_machine
from slptm.turing import RuntimePolynomial, normalize_machine

MACHINES = Path(__file__).resolve().parent.parent / "machines"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("machine", nargs="?", default=str(MACHINES / "two_choice.tm"))
    ap.add_argument("--horizons", type=int, nargs="+", default=[2, 4, 8, 16, 32])
    args = ap.parse_args()

    m, _, word = parse_machine(Path(args.machine).read_text())
    m = normalize_machine(m)
    print(f"|M| = {m.size}, |sigma| = {len(word)}")
    print(f"{'p(n)':>5} {'facts':>7} {'(u+v+w+3)^2':>12} {'ratio':>7}")
    worst = 0.0
    for pn in args.horizons:
        inst = build_edb(m, RuntimePolynomial.constant(pn), word)
        q = edb_size_bound(inst, 1.0)
        ratio = len(inst.edb) / q
        worst = max(worst, ratio)
        print(f"{pn:>5} {len(inst.edb):>7} {int(q):>12} {ratio:>7.3f}")
    print(f"smallest c that fits the grid: {worst:.3f}")


if __name__ == "__main__":
    main()
