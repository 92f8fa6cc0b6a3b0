"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import io
import itertools
import json
import random
import time

import pytest

from slptm.cli import main
from slptm.encoding import build_edb, edb_size_bound, edb_split, p_trg
from slptm.errors import GroundingTooLarge
from slptm.generators import MachineSpace, random_ground_program, random_machine
from slptm.grounder import check_domain_restricted, relational_ground
from slptm.logic import ground_program, is_stable, is_supported, naive_ground_size
from slptm.solver import (
    enumerate_stable_models,
    enumerate_stable_models_bruteforce,
    enumerate_supported_models,
    is_antichain,
)
from slptm.syntax import format_machine, format_program
from slptm.turing import RuntimePolynomial, enumerate_valid_runs

from .helpers import MACHINES, atoms, gp, load_machine

HAND_WRITTEN = ["one_run", "flip_bits", "guess_word", "walk_right_short", "walk_right", "bounce", "two_choice"]
RANDOM_SEED = 2024
N_RANDOM = 15
SUITE_SECONDS = 120
NAIVE_LIMIT = 5_000_000
EDB_C = 2.0


def _random_instances():
    rng = random.Random(RANDOM_SEED)
    space = MachineSpace(max_states=4, max_input_symbols=2, min_horizon=1, max_horizon=6, max_input=3)
    return [random_machine(rng, space) for _ in range(N_RANDOM)]


@pytest.fixture(scope="module")
def instances(tmp_path_factory):
    """(name, path, machine, poly, word) for every instance of the bijection suite."""
    out = [(name, MACHINES / f"{name}.tm", *load_machine(name)) for name in HAND_WRITTEN]
    tmp = tmp_path_factory.mktemp("random_machines")
    for k, (m, p, word) in enumerate(_random_instances()):
        path = tmp / f"random_{k:02d}.tm"
        path.write_text(format_machine(m, p, word))
        out.append((path.stem, path, m, p, word))
    return out


@pytest.fixture(scope="module")
def check_results(instances):
    results = {}
    start = time.perf_counter()
    for name, path, *_ in instances:
        out = io.StringIO()
        code = main(["check", str(path), "--json"], out)
        results[name] = (code, json.loads(out.getvalue()) if out.getvalue() else None)
    return results, time.perf_counter() - start


@pytest.fixture(scope="module")
def solved(instances):
    """name -> (instance, complete stable-model set)."""
    out = {}
    for name, _, m, p, word in instances:
        inst = build_edb(m, p, word)
        out[name] = (inst, inst.solve())
    return out


def test_criterion_1_bijection_suite(criterion, instances, check_results):
    with criterion(1, "decoded stable models equal valid runs") as line:
        results, seconds = check_results
        assert len(instances) >= 20
        assert sum(1 for name, *_ in instances if name in HAND_WRITTEN) >= 5
        bad = {name: r for name, r in results.items() if r[0] != 0 or not r[1]["bijection"]}
        assert not bad, f"mismatch on {sorted(bad)}"
        for name, _, m, p, word in instances:
            if name.startswith("random"):
                assert len(m.states) <= 4 and len(m.input_alphabet) <= 2
                assert 1 <= p(len(word)) <= 6 and len(word) <= 3
        assert seconds < SUITE_SECONDS, f"suite took {seconds:.1f}s"
        total_runs = sum(r[1]["runs"] for r in results.values())
        line.detail = f"{len(instances)} machines, {total_runs} runs matched, {seconds:.1f}s"


def test_criterion_2_rejection(criterion):
    with criterion(2, "unreachable final state gives no models, deterministic acceptance gives one") as line:
        m, p, w = load_machine("walk_right_short")
        assert enumerate_valid_runs(m, p, w) == []
        assert len(build_edb(m, p, w).solve()) == 0
        m, p, w = load_machine("flip_bits")
        assert all(len(m.transitions(q, a)) <= 1 for q in m.states for a in m.tape_alphabet)
        assert len(build_edb(m, p, w).solve()) == 1
        line.detail = "0 and 1 models"


def _stable_by_subset_filter(pg):
    base = sorted(pg.atoms, key=str)
    found = set()
    for bits in itertools.product((False, True), repeat=len(base)):
        m = frozenset(a for a, b in zip(base, bits) if b)
        if is_stable(pg, m):
            found.add(m)
    return found


def test_criterion_3_solver_ground_truth(criterion):
    with criterion(3, "search equals 2^n filter on random ground programs") as line:
        rng = random.Random(3)
        programs = [random_ground_program(rng, max_atoms=14, max_clauses=25) for _ in range(200)]
        total = 0
        for pg in programs:
            assert len(pg.atoms) <= 14 and len(pg) <= 25
            got = enumerate_stable_models(pg)
            assert got.complete
            expected = _stable_by_subset_filter(pg)
            assert got.as_set() == expected
            assert len(got) == len(expected)
            assert enumerate_stable_models_bruteforce(pg).as_set() == expected
            assert is_antichain(got)
            total += len(expected)
        line.detail = f"200 programs, {total} models"


def test_criterion_4_classic_programs(criterion):
    with criterion(4, "classic programs") as line:
        even = enumerate_stable_models(gp("a :- not b. b :- not a."))
        assert even.complete and even.as_set() == {atoms("a"), atoms("b")}
        odd = enumerate_stable_models(gp("a :- not a."))
        assert odd.complete and odd.as_set() == set()
        loop = gp("a :- a.")
        assert enumerate_stable_models(loop).as_set() == {frozenset()}
        assert enumerate_supported_models(loop).as_set() == {frozenset(), atoms("a")}
        for ms in (even, odd, enumerate_stable_models(loop)):
            assert is_antichain(ms)
        line.detail = "{a},{b} / none / stable {} vs supported {},{a}"


def test_criterion_5_supported_equals_stable(criterion, solved):
    with criterion(5, "stable models of encodings are supported, and no other supported models exist") as line:
        checked = 0
        for inst, models in solved.values():
            for model in models:
                assert is_supported(inst.ground, model)
                checked += 1
        small = ["one_run", "two_choice", "walk_right_short", "walk_right"]
        for name in small:
            inst, models = solved[name]
            supported = enumerate_supported_models(inst.ground)
            assert supported.complete
            assert all(is_stable(inst.ground, m) for m in supported)
            assert supported.as_set() == models.as_set()
        line.detail = f"{checked} models supported; exhaustive supported search on {len(small)} instances"


def test_criterion_6_antichain(criterion, solved):
    with criterion(6, "stable-model sets are antichains") as line:
        for inst, models in solved.values():
            assert models.complete
            assert is_antichain(models)
        line.detail = f"{len(solved)} encoded instances (criteria 3 and 4 check their own sets)"


def test_criterion_7_edb_size(criterion):
    with criterion(7, "edb size is quadratic") as line:
        m, _, word = load_machine("two_choice")
        ratios = []
        for pn in (2, 4, 8, 16):
            inst = build_edb(m, RuntimePolynomial.constant(pn), word)
            count = len(inst.edb)
            assert count <= edb_size_bound(inst, EDB_C), (pn, count)
            ratios.append(count / edb_size_bound(inst, 1.0))
        line.detail = f"c = {EDB_C}, observed max count/(u+v+w+3)^2 = {max(ratios):.3f}"


def test_criterion_8_uniformity(criterion, solved):
    with criterion(8, "fixed program is instance independent and domain-restricted") as line:
        texts = set()
        for inst, _ in solved.values():
            program = inst.program()
            assert check_domain_restricted(program, edb_split(program))
            texts.add(format_program(p_trg()).encode())
            texts.add(format_program(program.clauses[len(inst.edb) :]).encode())
        assert len(texts) == 1
        line.detail = f"{len(solved)} instances, one serialization"


def test_criterion_9_grounding_equivalence(criterion, solved):
    with criterion(9, "relational and naive grounding agree") as line:
        sizes = []
        for name, (inst, models) in solved.items():
            program = inst.program()
            rel = relational_ground(program, edb_split(program))
            naive_size = naive_ground_size(program)
            assert len(rel) <= naive_size
            sizes.append((naive_size, name))
        smallest, name = min(sizes)
        inst, models = solved[name]
        try:
            naive = ground_program(inst.program(), limit=NAIVE_LIMIT)
        except GroundingTooLarge as exc:
            pytest.fail(
                f"naive grounding is infeasible: the smallest instance ({name}) needs {exc.size:.2e} "
                f"clause instances (limit {exc.limit:.0e}); relational grounding was never larger"
            )
        assert enumerate_stable_models(naive).as_set() == models.as_set()
        line.detail = "all instances"
