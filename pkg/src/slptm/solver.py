"""Stable and supported model enumeration for ground programs.

The enumerator is a chronological backtracking search.  Decision variables
are the atoms that occur under negation; each is tried absent first, then
present.  Once all of them are fixed, the reduct is determined, its least
model is the only possible candidate, and the candidate is kept iff it agrees
with the guessed negative atoms (which is exactly stability).

Between decisions a three-valued assignment over all atoms is propagated with
rules that every supported model obeys (and hence every stable model):

* a clause whose body is true makes its head true;
* an atom whose clauses all have false bodies is false;
* a false atom falsifies the last open literal of each of its clauses;
* a true atom with a single remaining clause makes that body true.

Atoms whose every defining clause contains their own negation (the
``A :- body, not A`` constraint idiom) are fixed false before search, so such
clauses act as integrity constraints on ``body``.  No clause learning and no
restarts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import BaseTooLarge
from .logic import GroundProgram, least_model_ids, reduct_rules

UNKNOWN, TRUE, FALSE = 0, 1, 2
MAX_BRUTEFORCE_ATOMS = 22


@dataclass(frozen=True)
class SolveLimits:
    max_models: int | None = None
    max_decisions: int | None = None

    def __post_init__(self):
        for v in (self.max_models, self.max_decisions):
            if v is not None and v < 0:
                raise ValueError("limits must be nonnegative")


@dataclass(frozen=True)
class ModelSet:
    models: tuple
    complete: bool = True

    def __len__(self):
        return len(self.models)

    def __iter__(self):
        return iter(self.models)

    def __contains__(self, m):
        return frozenset(m) in self.as_set()

    def as_set(self):
        return frozenset(self.models)


@dataclass
class SearchStats:
    decisions: int = 0
    conflicts: int = 0
    leaves: int = 0


class _Engine:
    def __init__(self, pg: GroundProgram):
        rules = pg.rules
        n = len(pg.atoms)
        self.n = n
        self.rules = rules
        self.head = [r[0] for r in rules]
        self.pos = [r[1] for r in rules]
        self.neg = [r[2] for r in rules]
        self.unsat = [len(p) + len(q) for _, p, q in rules]
        self.falsified = [0] * len(rules)
        self.support = [0] * n
        self.pos_occ = [[] for _ in range(n)]
        self.neg_occ = [[] for _ in range(n)]
        self.head_occ = [[] for _ in range(n)]
        for ci, (h, p, q) in enumerate(rules):
            self.support[h] += 1
            self.head_occ[h].append(ci)
            for a in p:
                self.pos_occ[a].append(ci)
            for a in q:
                self.neg_occ[a].append(ci)
        self.val = bytearray(n)
        self.trail = []
        self.qhead = 0

    def assign(self, a, v):
        cur = self.val[a]
        if cur == UNKNOWN:
            self.val[a] = v
            self.trail.append(a)
            return True
        return cur == v

    def undo(self, mark):
        val, trail = self.val, self.trail
        unsat, falsified, support, head = self.unsat, self.falsified, self.support, self.head
        for i in range(len(trail) - 1, mark - 1, -1):
            a = trail[i]
            if i < self.qhead:
                if val[a] == TRUE:
                    sat_occ, fal_occ = self.pos_occ[a], self.neg_occ[a]
                else:
                    sat_occ, fal_occ = self.neg_occ[a], self.pos_occ[a]
                for c in sat_occ:
                    unsat[c] += 1
                for c in fal_occ:
                    falsified[c] -= 1
                    if falsified[c] == 0:
                        support[head[c]] += 1
            val[a] = UNKNOWN
        del trail[mark:]
        self.qhead = min(self.qhead, mark)

    def _close(self, c):
        """Falsify the single open literal of a clause whose head is false.

        The counters lag behind ``val`` for atoms still queued, so the literal
        may already carry a value; a queued satisfying value surfaces as a
        conflict when that atom is processed.
        """
        val = self.val
        for a in self.pos[c]:
            if val[a] != TRUE:
                return self.assign(a, FALSE)
        for a in self.neg[c]:
            if val[a] != FALSE:
                return self.assign(a, TRUE)
        return True

    def _force_body(self, h):
        """``h`` is true with exactly one clause left that could support it."""
        for c in self.head_occ[h]:
            if self.falsified[c] == 0:
                for a in self.pos[c]:
                    if not self.assign(a, TRUE):
                        return False
                for a in self.neg[c]:
                    if not self.assign(a, FALSE):
                        return False
                return True
        return False

    def propagate(self):
        val, trail = self.val, self.trail
        unsat, falsified, support, head = self.unsat, self.falsified, self.support, self.head
        while self.qhead < len(trail):
            a = trail[self.qhead]
            self.qhead += 1
            if val[a] == TRUE:
                sat_occ, fal_occ = self.pos_occ[a], self.neg_occ[a]
            else:
                sat_occ, fal_occ = self.neg_occ[a], self.pos_occ[a]
            # counter updates first, so that undo stays exact even on conflict
            for c in sat_occ:
                unsat[c] -= 1
            killed = []
            for c in fal_occ:
                falsified[c] += 1
                if falsified[c] == 1:
                    support[head[c]] -= 1
                    killed.append(c)

            for c in sat_occ:
                if falsified[c]:
                    continue
                h = head[c]
                if unsat[c] == 0:
                    if not self.assign(h, TRUE):
                        return False
                elif unsat[c] == 1 and val[h] == FALSE:
                    if not self._close(c):
                        return False
            for c in killed:
                h = head[c]
                if support[h] == 0:
                    if not self.assign(h, FALSE):
                        return False
                elif support[h] == 1 and val[h] == TRUE:
                    if not self._force_body(h):
                        return False
            if val[a] == TRUE:
                if support[a] == 0:
                    return False
                if support[a] == 1 and not self._force_body(a):
                    return False
            else:
                for c in self.head_occ[a]:
                    if falsified[c]:
                        continue
                    if unsat[c] == 0:
                        return False
                    if unsat[c] == 1 and not self._close(c):
                        return False
        return True

    def root_assignments(self):
        """Facts, unsupported atoms and self-blocking atoms; returns False on conflict."""
        for ci, (h, p, q) in enumerate(self.rules):
            if not p and not q and not self.assign(h, TRUE):
                return False
        for a in range(self.n):
            if self.support[a] == 0:
                if not self.assign(a, FALSE):
                    return False
            elif all(a in self.neg[c] for c in self.head_occ[a]):
                if not self.assign(a, FALSE):
                    return False
        return True


def _first_occurrence(rules, which):
    order = {}
    for h, p, q in rules:
        if which == "neg":
            atoms = q
        else:
            atoms = p + q
        for a in atoms:
            order.setdefault(a, None)
    return list(order)


def _search(pg: GroundProgram, limits: SolveLimits, mode: str, stats: SearchStats | None = None):
    """Generator of model id-sets; the final value reports whether search was exhaustive."""
    stats = stats if stats is not None else SearchStats()
    eng = _Engine(pg)
    decision_atoms = _first_occurrence(pg.rules, "neg" if mode == "stable" else "body")
    neg_atoms = decision_atoms
    found = 0
    ok = eng.root_assignments() and eng.propagate()
    # stack entries: (trail mark, decision index, tried_true)
    stack = []
    cursor = 0
    val = eng.val
    while True:
        if ok:
            while cursor < len(decision_atoms) and val[decision_atoms[cursor]] != UNKNOWN:
                cursor += 1
            if cursor == len(decision_atoms):
                stats.leaves += 1
                true_set = {a for a in neg_atoms if val[a] == TRUE}
                if mode == "stable":
                    cand = least_model_ids(reduct_rules(eng.rules, true_set), eng.n)
                else:
                    cand = {h for h, p, q in eng.rules if all(val[a] == TRUE for a in p) and not any(val[a] == TRUE for a in q)}
                if all((a in cand) == (val[a] == TRUE) for a in neg_atoms):
                    found += 1
                    yield cand
                    if limits.max_models is not None and found >= limits.max_models:
                        return False
                ok = False
            else:
                if limits.max_decisions is not None and stats.decisions >= limits.max_decisions:
                    return False
                stats.decisions += 1
                stack.append((len(eng.trail), cursor, False))
                eng.assign(decision_atoms[cursor], FALSE)
                ok = eng.propagate()
                continue
        else:
            stats.conflicts += 1
        # backtrack
        while stack:
            mark, idx, tried_true = stack.pop()
            eng.undo(mark)
            cursor = idx
            if not tried_true:
                stack.append((mark, idx, True))
                eng.assign(decision_atoms[idx], TRUE)
                ok = eng.propagate()
                break
        else:
            return True


def iter_stable_models(pg: GroundProgram, limits: SolveLimits = SolveLimits(), stats=None) -> Iterator[frozenset]:
    for ids in _search(pg, limits, "stable", stats):
        yield pg.decode(ids)


def _collect(pg, limits, mode, stats=None):
    gen = _search(pg, limits, mode, stats)
    models = []
    while True:
        try:
            models.append(pg.decode(next(gen)))
        except StopIteration as stop:
            return ModelSet(tuple(models), complete=bool(stop.value))


def enumerate_stable_models(pg: GroundProgram, limits: SolveLimits = SolveLimits(), stats=None) -> ModelSet:
    return _collect(pg, limits, "stable", stats)


def enumerate_supported_models(pg: GroundProgram, limits: SolveLimits = SolveLimits(), stats=None) -> ModelSet:
    """Supported models by search; decisions range over every atom occurring in a body."""
    return _collect(pg, limits, "supported", stats)


def _bitmask_rules(pg):
    base = sorted(pg.used_atoms())
    if len(base) > MAX_BRUTEFORCE_ATOMS:
        raise BaseTooLarge(f"{len(base)} atoms, brute force is capped at {MAX_BRUTEFORCE_ATOMS}")
    bit = {a: 1 << i for i, a in enumerate(base)}

    def mask(ids):
        m = 0
        for a in ids:
            m |= bit[a]
        return m

    return base, [(bit[h], mask(p), mask(q)) for h, p, q in pg.rules]


def _decode_mask(pg, base, m):
    return frozenset(pg.atoms[a] for i, a in enumerate(base) if m >> i & 1)


def enumerate_supported_models_bruteforce(pg: GroundProgram) -> ModelSet:
    base, rules = _bitmask_rules(pg)
    models = []
    for m in range(1 << len(base)):
        t = 0
        for h, p, q in rules:
            if p & m == p and not q & m:
                t |= h
        if t == m:
            models.append(_decode_mask(pg, base, m))
    return ModelSet(tuple(models), complete=True)


def enumerate_stable_models_bruteforce(pg: GroundProgram) -> ModelSet:
    """Filter all 2^n subsets of the base through the Gelfond-Lifschitz fixpoint test."""
    base, rules = _bitmask_rules(pg)
    models = []
    for m in range(1 << len(base)):
        reduct = [(h, p) for h, p, q in rules if not q & m]
        lm = 0
        changed = True
        while changed:
            changed = False
            for h, p in reduct:
                if p & lm == p and not h & lm:
                    lm |= h
                    changed = True
        if lm == m:
            models.append(_decode_mask(pg, base, m))
    return ModelSet(tuple(models), complete=True)


def is_antichain(models) -> bool:
    ms = list({frozenset(m) for m in models})
    return not any(a < b for a in ms for b in ms)
