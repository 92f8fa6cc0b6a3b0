"""Check the run/model correspondence on the bundled machines and a batch of random ones.

    python3 scripts/bijection_sweep.py --count 30 --seed 1
"""

import argparse
import json
import random
import time
from pathlib import Path

from slptm.encoding import verify_bijection
from slptm.generators import MachineSpace, random_machine
from slptm.syntax import parse_machine
from slptm.turing import normalize_machine

MACHINES = Path(__file__).resolve().parent.parent / "machines"


def instances(count, seed, budget):
    for path in sorted(MACHINES.glob("*.tm")):
        m, p, word = parse_machine(path.read_text())
        yield path.stem, normalize_machine(m), p, word
    rng = random.Random(seed)
    space = MachineSpace(ground_budget=budget)
    for k in range(count):
        yield f"random_{k:02d}", *random_machine(rng, space)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=15, help="number of random machines")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--budget", type=int, default=250_000, help="grounding-size budget for random machines")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    start = time.perf_counter()
    for name, m, p, word in instances(args.count, args.seed, args.budget):
        t = time.perf_counter()
        report, _, _ = verify_bijection(m, p, word)
        rows.append(
            {
                "machine": name,
                "states": len(m.states),
                "sigma": len(m.input_alphabet),
                "horizon": p(len(word)),
                "input": len(word),
                **report.as_json(),
                "seconds": round(time.perf_counter() - t, 3),
            }
        )
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'machine':<18} {'|Q|':>3} {'|S|':>3} {'p(n)':>4} {'n':>2} {'runs':>4} {'models':>6} {'ok':>5} {'sec':>6}")
    for r in rows:
        print(
            f"{r['machine']:<18} {r['states']:>3} {r['sigma']:>3} {r['horizon']:>4} {r['input']:>2} "
            f"{r['runs']:>4} {r['models']:>6} {str(r['bijection']):>5} {r['seconds']:>6.2f}"
        )
    bad = [r["machine"] for r in rows if not r["bijection"]]
    print(f"{len(rows)} machines, {time.perf_counter() - start:.1f}s, mismatches: {bad or 'none'}")


if __name__ == "__main__":
    main()
