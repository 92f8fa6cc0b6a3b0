"""Compare relational grounding with the size naive grounding would need, per bundled machine."""

import time
from pathlib import Path

from slptm.encoding import build_edb
from slptm.logic import naive_ground_size
from slptm.syntax import parse_machine
from slptm.turing import normalize_machine

MACHINES = Path(__file__).resolve().parent.parent / "machines"


def main():
    print(f"{'machine':<18} {'constants':>9} {'naive':>10} {'relational':>10} {'atoms':>7} {'sec':>6}")
    for path in sorted(MACHINES.glob("*.tm")):
        m, p, word = parse_machine(path.read_text())
        inst = build_edb(normalize_machine(m), p, word)
        program = inst.program()
        t = time.perf_counter()
        pg = inst.ground
        secs = time.perf_counter() - t
        print(
            f"{path.stem:<18} {len(program.constants):>9} {naive_ground_size(program):>10.2e} "
            f"{len(pg):>10} {len(pg.atoms):>7} {secs:>6.2f}"
        )


if __name__ == "__main__":
    main()
