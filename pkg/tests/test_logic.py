import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slptm.errors import GroundingTooLarge, NotHorn, UnboundVariable
from slptm.logic import (
    Atom,
    GroundProgram,
    Var,
    atom,
    gl_reduct,
    ground_instance,
    ground_program,
    is_stable,
    is_supported,
    iterate_tp,
    least_model,
    naive_ground_size,
    rule,
    tp_step,
)
from slptm.syntax import parse_program

from .helpers import atoms, gp
from .strategies import ground_programs, horn_programs, interpretations


def test_atom_helper_makes_variables_from_uppercase():
    a = atom("p", "X", "c", 3)
    assert a.args == (Var("X"), "c", "3")
    assert not a.is_ground()
    assert str(a) == "p(X,c,3)"


def test_same_name_different_arity_are_different_predicates():
    prog = parse_program("state(s0). state(s0,0).")
    assert prog.predicates == {("state", 1), ("state", 2)}


def test_program_is_a_set():
    p = parse_program("a :- b, not c. a :- b, not c. b.")
    assert len(p) == 2
    assert p == parse_program("b. a :- b, not c.")


def test_herbrand_base_untyped():
    p = parse_program("p(a). q(a,b).")
    assert p.herbrand_base_size() == 2 + 4
    assert len(list(p.herbrand_base())) == 6


class TestGroundInstance:
    def test_single_variable(self):
        c = rule(atom("p", "X"), [atom("q", "X")])
        assert ground_instance(c, {Var("X"): "c"}) == rule(atom("p", "c"), [atom("q", "c")])

    def test_keeps_negative_body(self):
        c = rule(atom("p", "X", "Y"), [atom("q", "X")], [atom("r", "Y")])
        got = ground_instance(c, {Var("X"): "a", Var("Y"): "b"})
        assert got == rule(atom("p", "a", "b"), [atom("q", "a")], [atom("r", "b")])

    def test_unbound(self):
        with pytest.raises(UnboundVariable):
            ground_instance(rule(atom("p", "X"), [atom("q", "X")]), {})


class TestGroundProgram:
    def test_two_constants(self):
        got = ground_program(parse_program("p(X) :- q(X). q(c). q(d)."))
        assert got == gp("p(c) :- q(c). p(d) :- q(d). q(c). q(d).")

    def test_ground_input_is_identity(self):
        src = "a :- not b. b :- c."
        assert ground_program(parse_program(src)) == gp(src)

    def test_two_variables_three_constants(self):
        prog = parse_program("p(X,Y) :- r(X), r(Y). r(a). r(b). r(c).")
        got = ground_program(prog)
        assert sum(1 for c in got.clauses if c.head.name == "p") == 9
        assert naive_ground_size(prog) == 9 + 3

    def test_limit(self):
        prog = parse_program("p(X,Y,Z) :- r(X), r(Y), r(Z). r(a). r(b). r(c).")
        with pytest.raises(GroundingTooLarge) as err:
            ground_program(prog, limit=10)
        assert err.value.size == 27 + 3

    def test_rejects_nonground_clauses(self):
        with pytest.raises(ValueError):
            GroundProgram([rule(atom("p", "X"))])


class TestReduct:
    def test_examples(self):
        pg = gp("a :- not b. b :- not a.")
        assert gl_reduct(pg, atoms("a")) == gp("a.")
        assert gl_reduct(gp("a :- not a."), frozenset()) == gp("a.")

    def test_empty_interpretation_strips_all(self):
        pg = gp("a :- b, not c. c :- not a, d.")
        assert gl_reduct(pg, frozenset()) == gp("a :- b. c :- d.")


class TestLeastModel:
    def test_examples(self):
        assert least_model(gp("a. b :- a.")) == atoms("a", "b")
        assert least_model(gp("")) == frozenset()
        assert least_model(gp("a :- b. b :- a.")) == frozenset()

    def test_not_horn(self):
        with pytest.raises(NotHorn):
            least_model(gp("a :- not b."))


class TestTp:
    def test_examples(self):
        pg = gp("a. b :- a.")
        assert tp_step(pg, frozenset()) == atoms("a")
        assert tp_step(pg, atoms("a", "b")) == atoms("a", "b")
        assert tp_step(gp("a :- not a."), atoms("a")) == frozenset()


class TestStableSupported:
    def test_stable_examples(self):
        assert is_stable(gp("a :- not b. b :- not a."), atoms("a"))
        assert not is_stable(gp("a :- not a."), atoms("a"))
        assert not is_stable(gp("a :- not a."), frozenset())

    def test_supported_examples(self):
        assert is_supported(gp("a :- a."), atoms("a"))
        assert is_supported(gp("a :- not b. b :- not a."), atoms("a"))
        assert not is_stable(gp("a :- a."), atoms("a"))

    def test_foreign_atoms_are_neither(self):
        pg = gp("a.")
        assert not is_stable(pg, atoms("a", "z"))
        assert not is_supported(pg, atoms("a", "z"))


# --- properties -------------------------------------------------------------


@settings(max_examples=300)
@given(st.data())
def test_stable_implies_supported(data):
    pg = data.draw(ground_programs())
    m = data.draw(interpretations(pg))
    if is_stable(pg, m):
        assert is_supported(pg, m)


@given(st.data())
def test_reduct_is_horn(data):
    pg = data.draw(ground_programs())
    m = data.draw(interpretations(pg))
    assert gl_reduct(pg, m).is_horn()


@given(horn_programs(), horn_programs())
def test_least_model_monotone_in_clauses(p, q):
    union = GroundProgram(p.clauses + q.clauses)
    assert least_model(p) <= least_model(union)


@given(horn_programs())
def test_tp_iteration_reaches_least_model(pg):
    stages = list(iterate_tp(pg))
    assert stages[-1] == least_model(pg)
    assert len(stages) <= len(pg.atoms) + 1


@settings(max_examples=50)
@given(
    st.lists(st.sampled_from(["a", "b"]), min_size=1, max_size=3),
    st.lists(st.sampled_from(["X", "Y"]), min_size=0, max_size=2),
)
def test_nonground_stable_models_match_predicate_level_definition(facts, head_args):
    src = " ".join(f"q({f})." for f in facts) + " r(a). "
    args = ",".join(head_args) if head_args else "X"
    src += f"p({args}) :- q(X), q(Y), not r(Y)."
    pg = ground_program(parse_program(src))
    # r/1 is a fact relation, so the unique stable model can be written down directly
    m = {Atom("q", (f,)) for f in facts} | {Atom("r", ("a",))}
    for x in facts:
        for y in facts:
            if y != "a":
                env = {"X": x, "Y": y}
                m.add(Atom("p", tuple(env[v] for v in (head_args or ["X"]))))
    assert is_stable(pg, frozenset(m))
    assert not is_stable(pg, frozenset(m) - {Atom("r", ("a",))})
