"""Uniform encoding of padded nondeterministic Turing machines.

A single constant-free program (:func:`p_trg`) simulates every machine; all
machine-, polynomial- and input-specific data lives in the extensional
database built by :func:`build_edb`.  Stable models of the union correspond
one-to-one to valid runs; :func:`run_to_model` and :func:`model_to_run`
convert between the two and :func:`verify_bijection` checks the
correspondence against the brute-force run enumerator.

Beyond the machine description facts, the database carries parameter facts
that keep the program free of constants: ``zero/1``, ``lastCell/1``,
``lastTime/1``, ``initState/1``, ``finalState/1``, the direction markers
``left/1``, ``right/1``, ``stay/1`` and direction inequality ``dirNeq/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidRun, MalformedModel
from .grounder import EdbSplit, compute_split, relational_ground
from .logic import Atom, Clause, GroundProgram, Program, atom_key, least_model_ids, reduct_rules
from .solver import SolveLimits, enumerate_stable_models
from .syntax import format_program, parse_program
from .turing import (
    DIRECTIONS,
    Configuration,
    Instruction,
    Machine,
    Run,
    RuntimePolynomial,
    enumerate_valid_runs,
    horizon,
    initial_configuration_tape,
    is_valid_run,
)

CONSTRAINT = "contradiction"

P_TRG_SOURCE = """\
% group 1: position of the read-write head
position(P,T) :- time(T), cell(P), zero(T), i_position(P).
position(P1,T1) :- time(T;T1), cell(P;P1), state(S;S1), dir(D), symb(Q;Q1), succ(T,T1), succ(P1,P),
    position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T), left(D), zero(Z), neq(P,Z).
position(P1,T1) :- time(T;T1), cell(P;P1), state(S;S1), dir(D), symb(Q;Q1), succ(T,T1), succ(P,P1),
    position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T), right(D), lastCell(L), neq(P,L).
position(P1,T1) :- time(T;T1), cell(P;P1), state(S;S1), symb(Q;Q1), dir(D), succ(T,T1), eq(P,P1),
    position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T), stay(D).
% group 2: tape contents
tape(P,Q,T) :- time(T), cell(P), symb(Q), zero(T), data(P,Q).
tape(P,Q1,T1) :- time(T;T1), cell(P), state(S;S1), symb(Q;Q1), dir(D), succ(T,T1),
    position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T).
tape(P,Q,T1) :- time(T;T1), cell(P;P1), symb(Q), succ(T,T1), tape(P,Q,T), position(P1,T), neq(P,P1).
% group 3: state of the head
state(S,T) :- time(T), state(S), zero(T), initState(S).
state(S1,T1) :- time(T;T1), cell(P), symb(Q;Q1), state(S;S1), dir(D), succ(T,T1),
    position(P,T), state(S,T), tape(P,Q,T), instr(S,Q,S1,Q1,D,T).
% group 4: instruction selection
instr(S,Q,S1,Q1,D,T) :- state(S;S1), symb(Q;Q1), dir(D), time(T), zero(T), initState(S), i_position(P),
    tape(P,Q,T), delta(S,Q,S1,Q1,D), not otherInstr(S,Q,S1,Q1,D,T).
instr(S,Q,S1,Q1,D,T) :- state(S;S1), symb(Q;Q1), dir(D), time(T), zero(Z), neq(T,Z), cell(P),
    position(P,T), state(S,T), tape(P,Q,T), delta(S,Q,S1,Q1,D), not otherInstr(S,Q,S1,Q1,D,T).
% group 5: at most one instruction per step, and at least one
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2),
    instr(Sp,Qp,S2,Q2,D2,T), neq(S2,S1).
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2),
    instr(Sp,Qp,S2,Q2,D2,T), neq(Q2,Q1).
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2),
    instr(Sp,Qp,S2,Q2,D2,T), dirNeq(D2,D1).
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2),
    instr(Sp,Qp,S2,Q2,D2,T), neq(Sp,S).
otherInstr(S,Q,S1,Q1,D1,T) :- state(S;Sp;S1;S2), symb(Q;Qp;Q1;Q2), time(T), dir(D1;D2),
    instr(Sp,Qp,S2,Q2,D2,T), neq(Qp,Q).
instr_def(T) :- state(S;S1), symb(Q;Q1), dir(D), time(T), instr(S,Q,S1,Q1,D,T).
contradiction :- time(T), not instr_def(T), not contradiction.
% group 6: the run must end executing the final padding instruction
completion :- symb(Q), finalState(F), lastTime(T), stay(D), instr(F,Q,F,Q,D,T).
contradiction :- not completion, not contradiction.
"""

GROUP_SIZES = (4, 3, 2, 2, 7, 2)

EDB_PREDICATES = frozenset(
    {
        ("state", 1), ("symb", 1), ("delta", 5), ("succ", 2), ("time", 1), ("cell", 1),
        ("data", 2), ("dir", 1), ("i_position", 1), ("neq", 2), ("eq", 2),
        ("zero", 1), ("lastCell", 1), ("lastTime", 1), ("initState", 1), ("finalState", 1),
        ("left", 1), ("right", 1), ("stay", 1), ("dirNeq", 2),
    }
)  # fmt: skip

_P_TRG = None


def p_trg() -> Program:
    """The fixed program shared by every machine, polynomial and input."""
    global _P_TRG
    if _P_TRG is None:
        _P_TRG = parse_program(P_TRG_SOURCE)
    return _P_TRG


def p_trg_groups():
    clauses = p_trg().clauses
    out, i = [], 0
    for size in GROUP_SIZES:
        out.append(clauses[i : i + size])
        i += size
    return out


def edb_split(program: Program) -> EdbSplit:
    return compute_split(program, edb=EDB_PREDICATES & program.predicates)


@dataclass(frozen=True)
class ConstantTable:
    """Injective naming of machine objects as program constants.

    Integers are numerals, directions keep their names, states are prefixed
    ``st_`` and tape symbols ``sym_``; the prefixes keep the four kinds of
    constants pairwise distinct.
    """

    states: dict = field(default_factory=dict)
    symbols: dict = field(default_factory=dict)

    @classmethod
    def for_machine(cls, m: Machine):
        return cls({q: f"st_{q}" for q in m.states}, {a: f"sym_{a}" for a in m.tape_alphabet})

    @cached_property
    def state_of(self):
        return {v: k for k, v in self.states.items()}

    @cached_property
    def symbol_of(self):
        return {v: k for k, v in self.symbols.items()}

    def instr_args(self, i: Instruction):
        return (self.states[i.q], self.symbols[i.a], self.states[i.q1], self.symbols[i.a1], i.d)

    def decode_instr(self, args):
        q, a, q1, a1, d = args
        try:
            return Instruction(self.state_of[q], self.symbol_of[a], self.state_of[q1], self.symbol_of[a1], d)
        except KeyError as exc:
            raise MalformedModel(f"unknown constant {exc.args[0]!r} in instruction atom") from None


def _fact(name, *args):
    return Clause(Atom(name, tuple(str(a) for a in args)))


@dataclass(frozen=True, eq=False)
class EncodingInstance:
    machine: Machine
    poly: RuntimePolynomial
    input: tuple
    horizon: int
    edb: tuple
    constants: ConstantTable

    @property
    def n(self):
        return len(self.input)

    def program(self) -> Program:
        return Program(self.edb + p_trg().clauses)

    @cached_property
    def ground(self) -> GroundProgram:
        program = self.program()
        return relational_ground(program, edb_split(program))

    def edb_text(self):
        return format_program(self.edb)

    def solve(self, limits=SolveLimits()):
        return enumerate_stable_models(self.ground, limits)


def build_edb(m: Machine, p: RuntimePolynomial, word) -> EncodingInstance:
    if not m.is_normalized():
        raise ValueError("machine must be normalized first")
    word = tuple(word)
    initial_configuration_tape(m, p, word)  # validates the input and the horizon
    pn = horizon(p, word)
    ct = ConstantTable.for_machine(m)
    st, sy = ct.states, ct.symbols
    facts = []
    facts += [_fact("state", st[q]) for q in m.states]
    facts += [_fact("symb", sy[a]) for a in m.tape_alphabet]
    facts += [_fact("delta", *ct.instr_args(t)) for t in m.sorted_delta()]
    facts += [_fact("succ", i, i + 1) for i in range(pn)]
    facts += [_fact("time", i) for i in range(pn + 1)]
    facts += [_fact("cell", i) for i in range(pn)]
    facts += [_fact("data", i, sy[s]) for i, s in enumerate(word)]
    facts += [_fact("data", i, sy[m.blank]) for i in range(len(word), pn)]
    facts += [_fact("dir", d) for d in DIRECTIONS]
    facts.append(_fact("i_position", 0))
    objects = [st[q] for q in m.states] + [sy[a] for a in m.tape_alphabet] + [str(i) for i in range(pn + 1)]
    facts += [_fact("neq", a, b) for a in objects for b in objects if a != b]
    facts += [_fact("eq", a, a) for a in objects]
    facts += [
        _fact("zero", 0),
        _fact("lastCell", pn - 1),
        _fact("lastTime", pn),
        _fact("initState", st[m.start]),
        _fact("finalState", st[m.final]),
        _fact("left", "l"),
        _fact("right", "r"),
        _fact("stay", "lambda"),
    ]
    facts += [_fact("dirNeq", a, b) for a in DIRECTIONS for b in DIRECTIONS if a != b]
    facts.sort(key=lambda c: atom_key(c.head))
    return EncodingInstance(m, p, word, pn, tuple(facts), ct)


def edb_size_bound(inst: EncodingInstance, c: float):
    """c * (|M| + |sigma| + p(n) + 3)^2."""
    return c * (inst.machine.size + inst.n + inst.horizon + 3) ** 2


# --- runs <-> models --------------------------------------------------------


def _assumption(inst: EncodingInstance, run: Run):
    """Negative-body atoms a model of ``run`` must contain: every competing instruction is excluded."""
    ct = inst.constants
    out = {Atom("completion")}
    for t, c in enumerate(run):
        out.add(Atom("instr_def", (str(t),)))
        chosen = c.instr
        for i in inst.machine.delta:
            if i != chosen:
                out.add(Atom("otherInstr", ct.instr_args(i) + (str(t),)))
    return out


def run_to_model(inst: EncodingInstance, run: Run) -> frozenset:
    """The stable model coding ``run``.

    Fixing the negated atoms as the run dictates determines the reduct; its
    least model is the model.  The result is checked against that guess.
    """
    if not is_valid_run(inst.machine, inst.poly, inst.input, run):
        raise InvalidRun("not a valid run of this machine on this input")
    pg = inst.ground
    guess = pg.ids_of(_assumption(inst, run))
    model = least_model_ids(reduct_rules(pg.rules, guess), len(pg.atoms))
    negated = {a for _, _, q in pg.rules for a in q}
    if model & negated != guess & negated:
        raise InvalidRun("run does not induce a consistent model")
    return pg.decode(model)


def model_to_run(inst: EncodingInstance, model) -> Run:
    """Read the run off a stable model in one pass over its atoms."""
    pn = inst.horizon
    ct = inst.constants
    instrs, heads = {}, {}
    tape = [[None] * pn for _ in range(pn + 1)]
    has_completion = False
    for a in model:
        name = a.name
        if name == "instr":
            t = int(a.args[5])
            if t in instrs:
                raise MalformedModel(f"two instr atoms at time {t}")
            instrs[t] = ct.decode_instr(a.args[:5])
        elif name == "position":
            p, t = int(a.args[0]), int(a.args[1])
            if t in heads:
                raise MalformedModel(f"two position atoms at time {t}")
            heads[t] = p
        elif name == "tape":
            p, t = int(a.args[0]), int(a.args[2])
            if tape[t][p] is not None:
                raise MalformedModel(f"two tape atoms for cell {p} at time {t}")
            tape[t][p] = ct.symbol_of.get(a.args[1])
        elif name == "completion":
            has_completion = True
        elif name == CONSTRAINT:
            raise MalformedModel("constraint atom present")
    if not has_completion:
        raise MalformedModel("completion atom missing")
    configs = []
    for t in range(pn + 1):
        if t not in instrs or t not in heads or any(s is None for s in tape[t]):
            raise MalformedModel(f"incomplete configuration at time {t}")
        configs.append(Configuration(instrs[t], tuple(tape[t]), heads[t]))
    return Run(tuple(configs))


# --- the correspondence -----------------------------------------------------


@dataclass
class BijectionReport:
    runs: int
    models: int
    bijection: bool
    counterexample: dict | None = None
    complete: bool = True

    def as_json(self):
        return {"runs": self.runs, "models": self.models, "bijection": self.bijection, "counterexample": self.counterexample}


def run_key(run: Run):
    return tuple((tuple(c.instr), c.tape, c.head) for c in run)


def verify_bijection(m: Machine, p: RuntimePolynomial, word, limits=SolveLimits(), max_horizon=12):
    """Compare decoded stable models with the oracle's valid runs.

    Returns ``(report, runs, models)``; runs and models are sorted by run.
    """
    inst = build_edb(m, p, word)
    runs = enumerate_valid_runs(m, p, word, max_horizon=max_horizon)
    solved = inst.solve(limits)
    models = list(solved)
    report = BijectionReport(len(runs), len(models), True, None, solved.complete)

    def fail(kind, **detail):
        report.bijection = False
        report.counterexample = {"kind": kind, **detail}
        return report, runs, models

    if not solved.complete:
        return fail("incomplete-enumeration")
    decoded = []
    for model in models:
        try:
            decoded.append(model_to_run(inst, model))
        except MalformedModel as exc:
            return fail("malformed-model", error=str(exc))
    run_set = set(runs)
    for r, model in zip(decoded, models):
        if r not in run_set:
            return fail("model-without-run", run=describe_run(r))
        back = run_to_model(inst, r)
        if back != model:
            return fail("model-round-trip", run=describe_run(r))
    if len(set(decoded)) != len(decoded):
        return fail("decoding-not-injective")
    model_set = set(models)
    images = set()
    for r in runs:
        try:
            img = run_to_model(inst, r)
        except InvalidRun as exc:
            return fail("run-not-encodable", run=describe_run(r), error=str(exc))
        if img not in model_set:
            return fail("run-without-model", run=describe_run(r))
        if model_to_run(inst, img) != r:
            return fail("run-round-trip", run=describe_run(r))
        images.add(img)
    if len(images) != len(runs):
        return fail("encoding-not-injective")
    order = sorted(range(len(decoded)), key=lambda i: run_key(decoded[i]))
    return report, sorted(runs, key=run_key), [models[i] for i in order]


def describe_run(run: Run):
    return [
        {"time": t, "state": c.instr.q, "head": c.head, "tape": list(c.tape), "instruction": list(c.instr)}
        for t, c in enumerate(run)
    ]

