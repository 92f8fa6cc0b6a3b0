"""Seeded random instances: ground programs for the solver, machines for the encoding."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .logic import Atom, Clause, GroundProgram
from .turing import DIRECTIONS, Instruction, Machine, RuntimePolynomial, normalize_machine


def random_ground_program(rng: random.Random, max_atoms=14, max_clauses=25, max_body=3) -> GroundProgram:
    n = rng.randint(1, max_atoms)
    atoms = [Atom(f"a{i}") for i in range(n)]
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        k = rng.randint(0, max_body)
        body = rng.sample(atoms, min(k, n))
        cut = rng.randint(0, len(body))
        clauses.append(Clause(rng.choice(atoms), tuple(body[:cut]), tuple(body[cut:])))
    return GroundProgram(clauses)


@dataclass(frozen=True)
class MachineSpace:
    """Bounds for random machines; the grounding budget caps max(|Q|^2 |Gamma|^2 * 3)^2 * (p(n)+1)."""

    max_states: int = 4
    max_input_symbols: int = 2
    min_horizon: int = 1
    max_horizon: int = 6
    max_input: int = 3
    max_transitions: int = 6
    ground_budget: int | None = 250_000


def instruction_space(m: Machine) -> int:
    return len(m.states) ** 2 * len(m.tape_alphabet) ** 2 * len(DIRECTIONS)


def grounding_estimate(m: Machine, pn: int) -> int:
    """Rough count of distinct clauses contributed by the instruction-exclusion rules."""
    return instruction_space(m) ** 2 * (pn + 1)


def random_machine(rng: random.Random, space: MachineSpace = MachineSpace()):
    """Sample ``(machine, polynomial, input)`` within ``space``.

    The machine is normalized; the start state always has at least one
    instruction for the first input cell so that runs are not trivially empty.
    """
    while True:
        nq = rng.randint(2, space.max_states)
        ns = rng.randint(0, space.max_input_symbols)
        states = tuple(["s0"] + [f"s{i}" for i in range(1, nq - 1)] + ["f"])
        sigma = tuple("abc"[:ns])
        gamma = sigma + ("B",)
        pn = rng.randint(space.min_horizon, space.max_horizon)
        n = rng.randint(0, min(space.max_input, pn)) if sigma else 0
        word = tuple(rng.choice(sigma) for _ in range(n))
        first = word[0] if word else "B"
        nonfinal = states[:-1]
        delta = {Instruction("s0", first, rng.choice(states), rng.choice(gamma), rng.choice(DIRECTIONS))}
        for _ in range(rng.randint(0, space.max_transitions - 1)):
            delta.add(
                Instruction(rng.choice(nonfinal), rng.choice(gamma), rng.choice(states), rng.choice(gamma), rng.choice(DIRECTIONS))
            )
        m = normalize_machine(Machine(states, sigma, frozenset(delta), "s0", "f"))
        if space.ground_budget is not None and grounding_estimate(m, pn) > space.ground_budget:
            continue
        return m, RuntimePolynomial.constant(pn), word
