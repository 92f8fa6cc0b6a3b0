"""Textual formats: DATALOG-with-negation programs and machine description files.

Program grammar::

    program   := (clause | directive)*
    clause    := atom "." | atom ":-" literal ("," literal)* "."
    directive := ("#edb" | "#idb") pred ("," pred)* "."      pred := name "/" arity
    literal   := atom | "not" atom
    atom      := name | name "(" args (";" args)* ")"        args := term ("," term)*
    term      := Variable | constant | numeral

``p(X;Y)`` pools argument tuples and expands to ``p(X), p(Y)``; pools are
only legal in bodies.  ``%`` starts a comment that runs to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, SemanticError
from .logic import Atom, Clause, Program, Var, atom_key
from .turing import DIRECTIONS, Machine, RuntimePolynomial

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<implies>:-)
  | (?P<directive>\#[a-z]+)
  | (?P<num>[0-9]+)
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<name>[a-z][A-Za-z0-9_]*)
  | (?P<punct>[(),;./])
    """,
    re.VERBOSE,
)


@dataclass
class ParsedProgram:
    program: Program
    edb: set = field(default_factory=set)
    idb: set = field(default_factory=set)


def _tokenize(text):
    line, col_start = 1, 0
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - col_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append((kind, m.group(), line, m.start() - col_start + 1))
        pos = m.end()
    out.append(("eof", "", line, pos - col_start + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(f"{msg}, got {tok[1]!r}" if tok[0] != "eof" else f"{msg}, got end of input", tok[2], tok[3])

    def expect(self, value):
        tok = self.next()
        if tok[1] != value:
            self.fail(f"expected {value!r}", tok)
        return tok

    def program(self):
        clauses, edb, idb = [], set(), set()
        while self.peek()[0] != "eof":
            if self.peek()[0] == "directive":
                kind, preds = self.directive()
                (edb if kind == "#edb" else idb).update(preds)
            else:
                clauses.append(self.clause())
        return ParsedProgram(Program(clauses), edb, idb)

    def directive(self):
        tok = self.next()
        if tok[1] not in ("#edb", "#idb"):
            self.fail("unknown directive", tok)
        preds = []
        while True:
            name = self.next()
            if name[0] != "name":
                self.fail("expected predicate name", name)
            self.expect("/")
            arity = self.next()
            if arity[0] != "num":
                self.fail("expected arity", arity)
            preds.append((name[1], int(arity[1])))
            if self.peek()[1] == ",":
                self.next()
                continue
            self.expect(".")
            return tok[1], preds

    def clause(self):
        head_tok = self.peek()
        heads = self.pooled_atom()
        if len(heads) != 1:
            self.fail("pooling is not allowed in clause heads", head_tok)
        head = heads[0]
        pos, neg = [], []
        tok = self.next()
        if tok[1] == ":-":
            while True:
                negated = False
                tok = self.peek()
                if tok[0] == "name" and tok[1] == "not" and self.toks[self.i + 1][0] == "name":
                    self.next()
                    negated = True
                (neg if negated else pos).extend(self.pooled_atom())
                tok = self.next()
                if tok[1] == ",":
                    continue
                if tok[1] == ".":
                    break
                self.fail("expected ',' or '.'", tok)
        elif tok[1] != ".":
            self.fail("expected ':-' or '.'", tok)
        return Clause(head, tuple(pos), tuple(neg))

    def term(self):
        tok = self.next()
        if tok[0] == "var":
            return Var(tok[1])
        if tok[0] in ("name", "num"):
            return tok[1]
        self.fail("expected a term", tok)

    def pooled_atom(self):
        tok = self.next()
        if tok[0] != "name":
            self.fail("expected an atom", tok)
        if self.peek()[1] != "(":
            return [Atom(tok[1], ())]
        self.next()
        pools = [[self.term()]]
        while True:
            sep = self.next()
            if sep[1] == ",":
                pools[-1].append(self.term())
            elif sep[1] == ";":
                pools.append([self.term()])
            elif sep[1] == ")":
                break
            else:
                self.fail("expected ',', ';' or ')'", sep)
        return [Atom(tok[1], tuple(args)) for args in pools]


def parse_program(text: str) -> Program:
    return _Parser(text).program().program


def parse_program_file(text: str) -> ParsedProgram:
    """Like :func:`parse_program` but also returns ``#edb``/``#idb`` overrides."""
    return _Parser(text).program()


def parse_atom(text: str) -> Atom:
    p = _Parser(text)
    atoms = p.pooled_atom()
    if len(atoms) != 1 or p.peek()[0] != "eof":
        p.fail("expected a single atom")
    return atoms[0]


def format_atom(a: Atom) -> str:
    return str(a)


def format_clause(c: Clause) -> str:
    return str(c)


def format_program(program, sort=False) -> str:
    clauses = list(program)
    if sort:
        clauses.sort(key=lambda c: (atom_key(c.head), str(c)))
    return "".join(f"{c}\n" for c in clauses)


def format_model(model) -> str:
    return " ".join(str(a) for a in sorted(model, key=atom_key))


# --- machine files ----------------------------------------------------------

_MACHINE_KEYS = ("states", "start", "final", "alphabet", "blank", "delta", "poly", "input")
_SYMBOL = re.compile(r"^[A-Za-z0-9_]+$")


def parse_machine(text: str):
    """Parse a machine description; returns ``(machine, polynomial, input_word)``."""
    fields = {}
    deltas = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError("expected 'key: value'", lineno, 1)
        if key not in _MACHINE_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
        words = value.split()
        for w in words:
            if w != "->" and not _SYMBOL.match(w):
                raise ParseError(f"bad token {w!r}", lineno, raw.find(w) + 1)
        if key == "delta":
            if len(words) != 6 or words[2] != "->":
                raise ParseError("delta line must read 'q a -> q1 a1 d'", lineno, 1)
            q, a, _, q1, a1, d = words
            if d not in DIRECTIONS:
                raise ParseError(f"direction must be one of l, r, lambda, got {d!r}", lineno, raw.find(d) + 1)
            deltas.append((q, a, q1, a1, d, lineno))
            continue
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        fields[key] = (words, lineno)

    for required in ("states", "start", "final", "poly"):
        if required not in fields:
            raise ParseError(f"missing key {required!r}")

    def single(key):
        words, lineno = fields[key]
        if len(words) != 1:
            raise ParseError(f"{key} takes exactly one value", lineno, 1)
        return words[0]

    states = tuple(fields["states"][0])
    start, final = single("start"), single("final")
    alphabet = tuple(fields.get("alphabet", ([], 0))[0])
    blank = single("blank") if "blank" in fields else "B"
    word = tuple(fields.get("input", ([], 0))[0])
    try:
        coeffs = tuple(int(w) for w in fields["poly"][0])
    except ValueError:
        raise ParseError("poly coefficients must be nonnegative integers", fields["poly"][1], 1) from None
    if not coeffs:
        raise ParseError("poly needs at least one coefficient", fields["poly"][1], 1)

    if len(set(states)) != len(states):
        raise SemanticError("duplicate state names")
    if len(set(alphabet)) != len(alphabet):
        raise SemanticError("duplicate alphabet symbols")
    if blank in alphabet:
        raise SemanticError("blank symbol must not be in the input alphabet")
    for name, value in (("start", start), ("final", final)):
        if value not in states:
            raise SemanticError(f"{name} state {value!r} is not declared in states")
    gamma = set(alphabet) | {blank}
    for q, a, q1, a1, d, lineno in deltas:
        for s in (q, q1):
            if s not in states:
                raise SemanticError(f"line {lineno}: unknown state {s!r}")
        for s in (a, a1):
            if s not in gamma:
                raise SemanticError(f"line {lineno}: symbol {s!r} is not in alphabet or blank")
    for s in word:
        if s not in alphabet:
            raise SemanticError(f"input symbol {s!r} is not in the input alphabet")
    if len(coeffs) > 1 and coeffs[-1] == 0:
        raise SemanticError("leading polynomial coefficient must be nonzero")

    machine = Machine(
        states=states,
        input_alphabet=alphabet,
        delta=frozenset(d[:5] for d in deltas),
        start=start,
        final=final,
        blank=blank,
    )
    return machine, RuntimePolynomial(coeffs), word


def format_machine(machine: Machine, poly: RuntimePolynomial, word=()) -> str:
    lines = [
        f"states: {' '.join(machine.states)}",
        f"start: {machine.start}",
        f"final: {machine.final}",
        f"alphabet: {' '.join(machine.input_alphabet)}".rstrip(),
        f"blank: {machine.blank}",
    ]
    for q, a, q1, a1, d in machine.sorted_delta():
        lines.append(f"delta: {q} {a} -> {q1} {a1} {d}")
    lines.append(f"poly: {' '.join(map(str, poly.coeffs))}")
    lines.append(f"input: {' '.join(word)}".rstrip())
    return "\n".join(lines) + "\n"

