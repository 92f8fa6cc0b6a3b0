import random

import pytest
from hypothesis import given, settings

from slptm.errors import BaseTooLarge
from slptm.generators import random_ground_program
from slptm.logic import Atom, Clause, GroundProgram, is_stable
from slptm.solver import (
    SearchStats,
    SolveLimits,
    enumerate_stable_models,
    enumerate_stable_models_bruteforce,
    enumerate_supported_models,
    enumerate_supported_models_bruteforce,
    is_antichain,
    iter_stable_models,
)

from .helpers import atoms, gp
from .strategies import ground_programs


class TestExamples:
    def test_even_loop(self):
        ms = enumerate_stable_models(gp("a :- not b. b :- not a."))
        assert ms.complete
        assert ms.as_set() == {atoms("a"), atoms("b")}

    def test_odd_loop(self):
        ms = enumerate_stable_models(gp("a :- not a."))
        assert ms.complete and len(ms) == 0

    def test_positive_loop(self):
        pg = gp("a :- a.")
        assert enumerate_stable_models(pg).as_set() == {frozenset()}
        assert enumerate_supported_models(pg).as_set() == {frozenset(), atoms("a")}

    def test_empty_program(self):
        assert enumerate_stable_models(GroundProgram()).as_set() == {frozenset()}

    def test_constraint_idiom(self):
        pg = gp("a :- not b. b :- not a. x :- a, not x.")
        assert enumerate_stable_models(pg).as_set() == {atoms("b")}

    def test_enumeration_order(self):
        # b is the first negated atom and is tried absent first
        models = list(iter_stable_models(gp("a :- not b. b :- not a.")))
        assert models == [atoms("a"), atoms("b")]


class TestBruteForce:
    def test_supported_examples(self):
        assert enumerate_supported_models_bruteforce(gp("a :- a.")).as_set() == {frozenset(), atoms("a")}
        assert enumerate_supported_models_bruteforce(gp("a :- not b. b :- not a.")).as_set() == {atoms("a"), atoms("b")}
        assert enumerate_supported_models_bruteforce(gp("a.")).as_set() == {atoms("a")}

    def test_guard(self):
        pg = GroundProgram(Clause(Atom(f"a{i}")) for i in range(23))
        with pytest.raises(BaseTooLarge):
            enumerate_supported_models_bruteforce(pg)


class TestLimits:
    def test_max_models(self):
        pg = gp("a :- not b. b :- not a. c :- not d. d :- not c.")
        ms = enumerate_stable_models(pg, SolveLimits(max_models=3))
        assert len(ms) == 3 and not ms.complete
        assert all(is_stable(pg, m) for m in ms)

    def test_max_decisions(self):
        pg = gp("a :- not b. b :- not a. c :- not d. d :- not c.")
        ms = enumerate_stable_models(pg, SolveLimits(max_decisions=1))
        assert not ms.complete
        assert all(is_stable(pg, m) for m in ms)

    def test_negative(self):
        with pytest.raises(ValueError):
            SolveLimits(max_models=-1)

    def test_stats(self):
        stats = SearchStats()
        enumerate_stable_models(gp("a :- not b. b :- not a."), stats=stats)
        assert stats.leaves >= 2 and stats.decisions >= 1


class TestAntichain:
    def test_examples(self):
        assert is_antichain([atoms("a"), atoms("b")])
        assert not is_antichain([atoms("a"), atoms("a", "b")])
        assert is_antichain([])


# --- properties -------------------------------------------------------------


@settings(max_examples=400, deadline=None)
@given(ground_programs(max_atoms=10, max_clauses=16))
def test_matches_bruteforce(pg):
    got = enumerate_stable_models(pg)
    assert got.complete
    assert len(set(got.models)) == len(got.models)
    assert got.as_set() == enumerate_stable_models_bruteforce(pg).as_set()
    assert all(is_stable(pg, m) for m in got)
    assert is_antichain(got)


@settings(max_examples=300, deadline=None)
@given(ground_programs(max_atoms=10, max_clauses=16))
def test_supported_search_matches_bruteforce(pg):
    supported = enumerate_supported_models(pg).as_set()
    assert supported == enumerate_supported_models_bruteforce(pg).as_set()
    assert enumerate_stable_models(pg).as_set() <= supported


def test_seeded_programs_up_to_18_atoms():
    rng = random.Random(7)
    for _ in range(60):
        pg = random_ground_program(rng, max_atoms=18, max_clauses=30)
        assert enumerate_stable_models(pg).as_set() == enumerate_stable_models_bruteforce(pg).as_set()
