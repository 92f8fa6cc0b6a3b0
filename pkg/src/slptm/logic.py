"""Syntax and semantics of function-free logic programs with negation.

Constants are plain strings (numerals included), variables are :class:`Var`
instances.  Ground programs intern their atoms to dense integer ids; the
semantic operators (reduct, least model, one-step provability) work on those
ids and translate back to symbolic atoms at the API boundary.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import GroundingTooLarge, NotHorn, UnboundVariable


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


class Atom(NamedTuple):
    name: str
    args: tuple = ()

    @property
    def predicate(self):
        return (self.name, len(self.args))

    def is_ground(self):
        return not any(isinstance(t, Var) for t in self.args)

    def variables(self):
        return [t for t in self.args if isinstance(t, Var)]

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(t) for t in self.args)})"


class Clause(NamedTuple):
    head: Atom
    pos: tuple = ()
    neg: tuple = ()

    def is_fact(self):
        return not self.pos and not self.neg

    def is_ground(self):
        return all(a.is_ground() for a in self.atoms())

    def atoms(self):
        yield self.head
        yield from self.pos
        yield from self.neg

    def variables(self):
        """Variables in order of first occurrence (head, then positive, then negative body)."""
        seen = {}
        for a in self.atoms():
            for v in a.variables():
                seen.setdefault(v, None)
        return list(seen)

    def __str__(self):
        if self.is_fact():
            return f"{self.head}."
        lits = [str(a) for a in self.pos] + [f"not {a}" for a in self.neg]
        return f"{self.head} :- {', '.join(lits)}."


Interpretation = frozenset  # of ground Atom


def atom(name, *args):
    """Shorthand constructor: uppercase-initial strings become variables."""
    return Atom(name, tuple(Var(a) if isinstance(a, str) and a[:1].isupper() else str(a) for a in args))


def rule(head, pos=(), neg=()):
    return Clause(head, tuple(pos), tuple(neg))


def _canonical(c):
    return (c.head, frozenset(c.pos), frozenset(c.neg))


class Program:
    """A finite set of clauses.  Insertion order is kept for deterministic output."""

    def __init__(self, clauses: Iterable[Clause] = ()):
        self.clauses = tuple(dict.fromkeys(clauses))

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self):
        return len(self.clauses)

    def __eq__(self, other):
        if not isinstance(other, Program):
            return NotImplemented
        return {_canonical(c) for c in self} == {_canonical(c) for c in other}

    def __hash__(self):
        return hash(frozenset(_canonical(c) for c in self))

    def __add__(self, other):
        return Program(self.clauses + tuple(other))

    def __repr__(self):
        return f"Program({len(self.clauses)} clauses)"

    @property
    def constants(self):
        return frozenset(t for c in self for a in c.atoms() for t in a.args if not isinstance(t, Var))

    @property
    def predicates(self):
        return frozenset(a.predicate for c in self for a in c.atoms())

    @property
    def herbrand_universe(self):
        return self.constants

    def herbrand_base(self) -> Iterator[Atom]:
        """Lazily enumerate the (untyped) Herbrand base; it is finite but can be huge."""
        universe = sorted(self.herbrand_universe, key=constant_key)
        for name, arity in sorted(self.predicates):
            for args in itertools.product(universe, repeat=arity):
                yield Atom(name, args)

    def herbrand_base_size(self):
        u = len(self.herbrand_universe)
        return sum(u**arity for _, arity in self.predicates)

    def is_ground(self):
        return all(c.is_ground() for c in self)


def constant_key(c):
    """Sort key for terms: numerals numerically, then names, then variables."""
    if isinstance(c, Var):
        return (2, 0, c.name)
    return (0, int(c), "") if c.isdigit() else (1, 0, c)


def atom_key(a):
    return (a.name, len(a.args), tuple(constant_key(t) for t in a.args))


def ground_instance(clause: Clause, subst) -> Clause:
    def inst(a):
        args = []
        for t in a.args:
            if isinstance(t, Var):
                if t not in subst:
                    raise UnboundVariable(f"no binding for {t} in {clause}")
                args.append(subst[t])
            else:
                args.append(t)
        return Atom(a.name, tuple(args))

    return Clause(inst(clause.head), tuple(map(inst, clause.pos)), tuple(map(inst, clause.neg)))


class GroundProgram:
    """A variable-free program whose atoms are interned to ids ``0..n-1``.

    ``rules`` holds ``(head, pos, neg)`` triples of ids; bodies are stored
    duplicate-free so that set semantics on clauses is preserved.
    """

    def __init__(self, clauses: Iterable[Clause] = ()):
        self.atoms: list[Atom] = []
        self.index: dict[Atom, int] = {}
        rules = {}
        for c in clauses:
            if not c.is_ground():
                raise ValueError(f"clause is not ground: {c}")
            rules.setdefault(self._encode(c), None)
        self.rules = tuple(rules)

    @classmethod
    def from_rules(cls, atoms, index, rules):
        pg = cls.__new__(cls)
        pg.atoms = atoms
        pg.index = index
        pg.rules = tuple(rules)
        return pg

    def atom_id(self, a):
        i = self.index.get(a)
        if i is None:
            i = self.index[a] = len(self.atoms)
            self.atoms.append(a)
        return i

    def _encode(self, c):
        ids = self.atom_id
        return (ids(c.head), tuple(dict.fromkeys(map(ids, c.pos))), tuple(dict.fromkeys(map(ids, c.neg))))

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.clauses)

    @property
    def clauses(self):
        at = self.atoms
        return tuple(Clause(at[h], tuple(at[i] for i in p), tuple(at[i] for i in n)) for h, p, n in self.rules)

    def canonical(self):
        at = self.atoms
        return frozenset(
            (at[h], frozenset(at[i] for i in p), frozenset(at[i] for i in n)) for h, p, n in self.rules
        )

    def __eq__(self, other):
        if not isinstance(other, GroundProgram):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __repr__(self):
        return f"GroundProgram({len(self.rules)} clauses, {len(self.atoms)} atoms)"

    def used_atoms(self):
        used = set()
        for h, p, n in self.rules:
            used.add(h)
            used.update(p)
            used.update(n)
        return used

    def herbrand_base(self):
        """Atoms occurring in the program (the propositional Herbrand base)."""
        return frozenset(self.atoms[i] for i in self.used_atoms())

    def ids_of(self, m):
        """Ids of the atoms of ``m`` known to this program; unknown atoms are dropped."""
        get = self.index.get
        return {i for i in map(get, m) if i is not None}

    def decode(self, ids):
        at = self.atoms
        return frozenset(at[i] for i in ids)

    def is_horn(self):
        return all(not n for _, _, n in self.rules)


# --- id-level operators, shared with the solver -----------------------------


def least_model_ids(rules, n_atoms):
    """Least model of a Horn rule list via counter-based unit propagation.

    Negative bodies are ignored, so callers must pass a Horn program (or a
    reduct they have already filtered).  Linear in the program size.
    """
    waiting = [0] * len(rules)
    watch = [[] for _ in range(n_atoms)]
    true = bytearray(n_atoms)
    queue = deque()
    for ci, (h, pos, _) in enumerate(rules):
        if pos:
            waiting[ci] = len(pos)
            for a in pos:
                watch[a].append(ci)
        elif not true[h]:
            true[h] = 1
            queue.append(h)
    while queue:
        a = queue.popleft()
        for ci in watch[a]:
            waiting[ci] -= 1
            if waiting[ci] == 0:
                h = rules[ci][0]
                if not true[h]:
                    true[h] = 1
                    queue.append(h)
    return {i for i in range(n_atoms) if true[i]}


def reduct_rules(rules, m_ids):
    return [(h, p, ()) for h, p, n in rules if not any(a in m_ids for a in n)]


def tp_ids(rules, m_ids):
    return {
        h
        for h, p, n in rules
        if all(a in m_ids for a in p) and not any(a in m_ids for a in n)
    }


# --- public operators -------------------------------------------------------


def ground_program(program: Program, limit=None) -> GroundProgram:
    """All ground instances of every clause over the program's own constants.

    ``limit`` bounds the number of instances that may be generated; the count
    is computed up front so an oversized grounding fails fast.
    """
    universe = sorted(program.herbrand_universe, key=constant_key)
    if limit is not None:
        size = naive_ground_size(program)
        if size > limit:
            raise GroundingTooLarge(size, limit)

    def instances():
        for c in program:
            vs = c.variables()
            if not vs:
                yield c
                continue
            for values in itertools.product(universe, repeat=len(vs)):
                yield ground_instance(c, dict(zip(vs, values)))

    return GroundProgram(instances())


def naive_ground_size(program: Program):
    """Number of substitution instances naive grounding enumerates (before set collapse)."""
    u = len(program.herbrand_universe)
    return sum(u ** len(c.variables()) for c in program)


def gl_reduct(pg: GroundProgram, m) -> GroundProgram:
    m_ids = pg.ids_of(m)
    return GroundProgram.from_rules(pg.atoms, pg.index, reduct_rules(pg.rules, m_ids))


def least_model(horn: GroundProgram) -> Interpretation:
    if not horn.is_horn():
        raise NotHorn("least_model needs a program without negative literals")
    return horn.decode(least_model_ids(horn.rules, len(horn.atoms)))


def tp_step(pg: GroundProgram, m) -> Interpretation:
    return pg.decode(tp_ids(pg.rules, pg.ids_of(m)))


def is_stable(pg: GroundProgram, m) -> bool:
    m = frozenset(m)
    m_ids = pg.ids_of(m)
    if len(m_ids) != len(m):
        return False
    return least_model_ids(reduct_rules(pg.rules, m_ids), len(pg.atoms)) == m_ids


def is_supported(pg: GroundProgram, m) -> bool:
    m = frozenset(m)
    m_ids = pg.ids_of(m)
    if len(m_ids) != len(m):
        return False
    return tp_ids(pg.rules, m_ids) == m_ids


def iterate_tp(pg: GroundProgram, limit=None):
    """Kleene iteration of T_P from the empty set; yields each stage until a fixpoint."""
    m = set()
    steps = 0
    while True:
        nxt = tp_ids(pg.rules, m)
        yield pg.decode(nxt)
        steps += 1
        if nxt == m or (limit is not None and steps >= limit):
            return
        m = nxt

