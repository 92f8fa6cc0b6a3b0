from pathlib import Path

from slptm.logic import GroundProgram
from slptm.syntax import parse_machine, parse_program
from slptm.turing import normalize_machine

MACHINES = Path(__file__).resolve().parent.parent / "machines"


def gp(text):
    """Ground program from source text."""
    return GroundProgram(parse_program(text).clauses)


def atoms(*names):
    return frozenset(parse_program(f"{n}.").clauses[0].head for n in names)


def load_machine(name):
    m, p, word = parse_machine((MACHINES / f"{name}.tm").read_text())
    return normalize_machine(m), p, word
