"""Nondeterministic Turing machines on a tape truncated to p(n) cells.

Machines follow the padded semantics used by the encoding: the final state
``f`` loops on every symbol without moving, so an accepting computation runs
for exactly p(n) steps.  A configuration carries the instruction that is
about to be executed, which is what the ``instr`` atoms of the logic program
record.  :func:`enumerate_valid_runs` is a plain depth-first search and serves
as the independent oracle for the encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import BoundExceeded, HorizonError, InputTooLong

DIRECTIONS = ("l", "r", "lambda")


class Instruction(NamedTuple):
    q: str
    a: str
    q1: str
    a1: str
    d: str

    def __str__(self):
        return f"({self.q},{self.a},{self.q1},{self.a1},{self.d})"


class Configuration(NamedTuple):
    instr: Instruction
    tape: tuple
    head: int


@dataclass(frozen=True)
class Run:
    configs: tuple

    def __len__(self):
        return len(self.configs)

    def __iter__(self):
        return iter(self.configs)

    def __getitem__(self, i):
        return self.configs[i]

    def instructions(self):
        return tuple(c.instr for c in self.configs)


@dataclass(frozen=True)
class RuntimePolynomial:
    """p(n) = sum(coeffs[i] * n**i), constant term first."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        if any(c < 0 for c in coeffs):
            raise ValueError("coefficients must be nonnegative")
        if len(coeffs) > 1 and coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    def __call__(self, n):
        return sum(c * n**i for i, c in enumerate(self.coeffs))

    @classmethod
    def constant(cls, value):
        return cls((value,))


@dataclass(frozen=True)
class Machine:
    states: tuple
    input_alphabet: tuple
    delta: frozenset
    start: str
    final: str
    blank: str = "B"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "input_alphabet", tuple(self.input_alphabet))
        object.__setattr__(self, "delta", frozenset(Instruction(*t) for t in self.delta))
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate states")
        if self.blank in self.input_alphabet:
            raise ValueError("blank must not belong to the input alphabet")
        if self.start not in self.states or self.final not in self.states:
            raise ValueError("start and final states must be declared")
        gamma = set(self.tape_alphabet)
        for t in self.delta:
            if t.q not in self.states or t.q1 not in self.states:
                raise ValueError(f"unknown state in {t}")
            if t.a not in gamma or t.a1 not in gamma:
                raise ValueError(f"unknown symbol in {t}")
            if t.d not in DIRECTIONS:
                raise ValueError(f"unknown direction in {t}")

    @property
    def tape_alphabet(self):
        return self.input_alphabet + (self.blank,)

    def _order(self):
        sq = {s: i for i, s in enumerate(self.states)}
        sa = {s: i for i, s in enumerate(self.tape_alphabet)}
        sd = {s: i for i, s in enumerate(DIRECTIONS)}
        return lambda t: (sq[t.q], sa[t.a], sq[t.q1], sa[t.a1], sd[t.d])

    def sorted_delta(self):
        return sorted(self.delta, key=self._order())

    def transitions(self, q, a):
        """Instructions applicable in state ``q`` reading ``a``, ordered by (q1, a1, d)."""
        return [t for t in self.sorted_delta() if t.q == q and t.a == a]

    def is_normalized(self):
        f = self.final
        return {t for t in self.delta if t.q == f} == {
            Instruction(f, a, f, a, "lambda") for a in self.tape_alphabet
        }

    @property
    def size(self):
        """|M|: states plus tape symbols plus transition tuples."""
        return len(self.states) + len(self.tape_alphabet) + len(self.delta)


def normalize_machine(m: Machine) -> Machine:
    f = m.final
    kept = {t for t in m.delta if t.q != f}
    kept |= {Instruction(f, a, f, a, "lambda") for a in m.tape_alphabet}
    return Machine(m.states, m.input_alphabet, frozenset(kept), m.start, m.final, m.blank)


def horizon(p: RuntimePolynomial, word) -> int:
    """p(n) for this input, rejecting tapes that cannot hold it."""
    n = len(word)
    pn = p(n)
    if pn == 0:
        raise HorizonError("p(n) = 0 leaves no tape cells")
    if n > pn:
        raise InputTooLong(f"input of length {n} does not fit on a tape of {pn} cells")
    return pn


def initial_configuration_tape(m: Machine, p: RuntimePolynomial, word) -> tuple:
    pn = horizon(p, word)
    for s in word:
        if s not in m.input_alphabet:
            raise ValueError(f"input symbol {s!r} not in the input alphabet")
    return tuple(word) + (m.blank,) * (pn - len(word))


def _move(head, d, p_n):
    if d == "lambda":
        return head
    if d == "l":
        return head - 1 if head != 0 else None
    return head + 1 if head != p_n - 1 else None


def successors(m: Machine, p_n: int, c: Configuration) -> list:
    i, tape, k = c
    m_head = _move(k, i.d, p_n)
    if m_head is None:
        return []
    new_tape = tape[:k] + (i.a1,) + tape[k + 1 :]
    return [Configuration(j, new_tape, m_head) for j in m.transitions(i.q1, new_tape[m_head])]


def is_final_instruction(m: Machine, i: Instruction) -> bool:
    return i.q == m.final and i.q1 == m.final and i.a == i.a1 and i.d == "lambda"


def initial_configurations(m: Machine, tape) -> list:
    return [Configuration(i, tape, 0) for i in m.transitions(m.start, tape[0])]


def enumerate_valid_runs(m: Machine, p: RuntimePolynomial, word, max_horizon=12) -> list:
    """All valid runs, in depth-first order of the per-step instruction choice."""
    if not m.is_normalized():
        raise ValueError("machine must be normalized first")
    tape = initial_configuration_tape(m, p, word)
    p_n = len(tape)
    if p_n > max_horizon:
        raise BoundExceeded(f"p(n) = {p_n} exceeds the oracle bound {max_horizon}")

    runs = []
    stack = [(c,) for c in reversed(initial_configurations(m, tape))]
    while stack:
        prefix = stack.pop()
        if len(prefix) == p_n + 1:
            if is_final_instruction(m, prefix[-1].instr):
                runs.append(Run(prefix))
            continue
        for nxt in reversed(successors(m, p_n, prefix[-1])):
            stack.append(prefix + (nxt,))
    return runs


def is_valid_run(m: Machine, p: RuntimePolynomial, word, run: Run) -> bool:
    try:
        tape = initial_configuration_tape(m, p, word)
    except (HorizonError, ValueError):
        return False
    p_n = len(tape)
    configs = tuple(run)
    if len(configs) != p_n + 1:
        return False
    first = configs[0]
    if first.head != 0 or tuple(first.tape) != tape or first.instr.q != m.start:
        return False
    for c in configs:
        if c.instr not in m.delta or len(c.tape) != p_n or not 0 <= c.head < p_n:
            return False
        if c.tape[c.head] != c.instr.a:
            return False
    for prev, nxt in zip(configs, configs[1:]):
        if nxt not in successors(m, p_n, prev):
            return False
    return is_final_instruction(m, configs[-1].instr)
