"""Grounding of domain-restricted programs by joining extensional relations.

Every variable of a domain-restricted clause occurs in a positive body atom
over an extensional predicate, so the substitutions that can matter are
exactly the tuples of the join of those atoms.  The join runs left to right
over the positive extensional atoms, indexing each relation on the argument
positions already bound.  Extensional body atoms are true by construction and
are dropped from the emitted clauses; negated extensional atoms are decided
on the spot.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import itemgetter

from .errors import NotDomainRestricted
from .logic import Atom, GroundProgram, Program, Var


@dataclass(frozen=True)
class EdbSplit:
    edb: frozenset
    idb: frozenset

    def is_edb(self, atom):
        return atom.predicate in self.edb


def compute_split(program: Program, edb=(), idb=()) -> EdbSplit:
    """A predicate is extensional iff all its clauses are ground facts.

    ``edb``/``idb`` force predicates to one side (as the ``#edb``/``#idb``
    directives of a program file do).
    """
    preds = program.predicates
    rule_defined = {c.head.predicate for c in program if not (c.is_fact() and c.head.is_ground())}
    ext = (preds - rule_defined) | (set(edb) & preds)
    ext -= set(idb)
    for c in program:
        if c.head.predicate in ext and not (c.is_fact() and c.head.is_ground()):
            raise ValueError(f"{c.head.name}/{len(c.head.args)} is declared extensional but has a rule")
    return EdbSplit(frozenset(ext), frozenset(preds - ext))


def _restricted(clause, split):
    bound = {v for a in clause.pos if split.is_edb(a) for v in a.variables()}
    return all(v in bound for v in clause.variables())


def check_domain_restricted(program: Program, split: EdbSplit | None = None) -> bool:
    split = split or compute_split(program)
    return all(_restricted(c, split) for c in program)


def relations_of(program: Program, split: EdbSplit):
    rels = {p: set() for p in split.edb}
    for c in program:
        if c.head.predicate in split.edb:
            rels[c.head.predicate].add(c.head.args)
    return rels


class _Index:
    """Lazily built hash indexes over edb relations.

    An index is keyed by the argument positions already bound and maps each
    key to the values of the newly bound positions, with repeated-variable
    checks applied up front.
    """

    def __init__(self, rels):
        self.rels = rels
        self.cache = {}

    def get(self, pred, key_pos, bind_pos, checks):
        key = (pred, key_pos, bind_pos, checks)
        idx = self.cache.get(key)
        if idx is None:
            idx = {}
            for t in sorted(self.rels.get(pred, ())):
                if all(t[i] == t[j] for i, j in checks):
                    idx.setdefault(tuple(t[i] for i in key_pos), []).append(tuple(t[i] for i in bind_pos))
            self.cache[key] = idx
        return idx


def _getter(spec):
    """env -> tuple, for a spec mixing slot numbers and constants."""
    if not spec:
        return lambda env: ()
    if all(type(s) is int for s in spec):
        if len(spec) == 1:
            (i,) = spec
            return lambda env: (env[i],)
        return itemgetter(*spec)
    return lambda env: tuple([env[s] if type(s) is int else s for s in spec])


def _template(a, slot):
    return a.name, _getter(tuple(slot[t] if isinstance(t, Var) else t for t in a.args))


def _compile(clause, split, index):
    slot = {}
    steps = []
    for a in clause.pos:
        if not split.is_edb(a):
            continue
        key_pos, key_src, checks = [], [], []
        fresh = {}
        for i, t in enumerate(a.args):
            if not isinstance(t, Var):
                key_pos.append(i)
                key_src.append(t)
            elif t in slot:
                key_pos.append(i)
                key_src.append(slot[t])
            elif t in fresh:
                checks.append((fresh[t], i))
            else:
                fresh[t] = i
        for v in fresh:
            slot[v] = len(slot)
        idx = index.get(a.predicate, tuple(key_pos), tuple(fresh.values()), tuple(checks))
        steps.append((idx, _getter(tuple(key_src)) if key_src else None))
    head = _template(clause.head, slot)
    idb_pos = [_template(a, slot) for a in clause.pos if not split.is_edb(a)]
    edb_neg = [_template(a, slot) for a in clause.neg if split.is_edb(a)]
    idb_neg = [_template(a, slot) for a in clause.neg if not split.is_edb(a)]
    return steps, head, idb_pos, edb_neg, idb_neg


def _substitutions(steps):
    """All joins of the compiled steps, one level at a time; envs are value tuples indexed by slot."""
    envs = [()]
    for idx, key in steps:
        if key is None:
            rows = idx.get((), ())
            envs = [env + r for env in envs for r in rows]
            continue
        out = []
        extend = out.extend
        get = idx.get
        for env in envs:
            rows = get(key(env))
            if rows:
                extend([env + r for r in rows])
        envs = out
        if not envs:
            break
    return envs


def relational_ground(program: Program, split: EdbSplit | None = None) -> GroundProgram:
    split = split or compute_split(program)
    for c in program:
        if not _restricted(c, split):
            raise NotDomainRestricted(f"clause is not domain-restricted: {c}")
    rels = relations_of(program, split)
    index = _Index(rels)

    pg = GroundProgram()
    atom_id = pg.atom_id
    rules = {}
    for pred in sorted(rels):
        for args in sorted(rels[pred]):
            rules[(atom_id(Atom(pred[0], args)), (), ())] = None

    index_get = pg.index.get

    def intern(tmpl, env):
        name, args = tmpl
        a = Atom(name, args(env))
        i = index_get(a)
        return atom_id(a) if i is None else i

    for clause in program:
        if clause.head.predicate in split.edb:
            continue
        steps, head, idb_pos, edb_neg, idb_neg = _compile(clause, split, index)
        for env in _substitutions(steps):
            if edb_neg and any(args(env) in rels[(name, len(args(env)))] for name, args in edb_neg):
                continue
            h = intern(head, env)
            pos = tuple(dict.fromkeys([intern(t, env) for t in idb_pos]))
            neg = tuple(dict.fromkeys([intern(t, env) for t in idb_neg]))
            rules[(h, pos, neg)] = None
    return GroundProgram.from_rules(pg.atoms, pg.index, rules)
