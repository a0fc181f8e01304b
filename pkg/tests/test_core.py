import pickle

import numpy as np
import pytest
from hypothesis import given, settings

from orthologic.core import (
    B2, EMPTY, M4, O6, One, Zero, L, R, And, Atom, Not, Or, Problem, Sequent, SequentError,
    SignatureError, Var, boolean, check_ortholattice, conj, disj, evaluate, evaluate_many,
    find_law_violation, height, intern, interpret, sequent_size, substitute, variables,
)
from orthologic.core.lattices import assignments
from strategies import formulas, sequents


# -- hash-consing ---------------------------------------------------------------

def test_interning_gives_identical_objects():
    x, y = Var("x"), Var("y")
    assert And(x, Not(y)) is And(Var("x"), Not(Var("y")))
    assert And(x, y) is not And(y, x)


def test_intern_description():
    f = intern(("and", "x", ("not", "y")))
    assert f is And(Var("x"), Not(Var("y")))
    assert intern(0) is Zero and intern(1) is One
    assert intern(("atom", "p", ("a", "X"))) is Atom("p", ("a", "X"))


@given(formulas())
def test_pickle_round_trip_reinterns(f):
    assert pickle.loads(pickle.dumps(f)) is f


def test_conj_disj_are_right_nested():
    x, y, z = Var("x"), Var("y"), Var("z")
    assert conj([x, y, z]) is And(x, And(y, z))
    assert disj([x]) is x


def test_height_and_variables():
    f = Or(Not(Var("x")), And(Var("y"), Var("x")))
    assert height(f) == 3
    assert variables(f) == {"x", "y"}


def test_substitute_replaces_subformulas():
    x, y = Var("x"), Var("y")
    f = And(Not(x), x)
    assert substitute(f, {x: y}) is And(Not(y), y)


# -- sequents -------------------------------------------------------------------

def test_sequent_is_a_set_of_at_most_two():
    x, y, z = Var("x"), Var("y"), Var("z")
    assert len(Sequent([(x, L), (x, L)])) == 1
    assert Sequent([(x, L), (y, R)]) == Sequent([(y, R), (x, L)])
    with pytest.raises(SequentError):
        Sequent([(x, L), (y, R), (z, R)])


def test_trivial_axiom_rejected():
    x = Var("x")
    with pytest.raises(SequentError):
        Problem((Sequent([(x, L), (x, R)]),), EMPTY)


def test_interpretation_of_each_shape():
    x, y = Var("x"), Var("y")
    assert interpret(EMPTY) == (One, Zero)
    assert interpret(Sequent([(x, L)])) == (x, Zero)
    assert interpret(Sequent([(x, R)])) == (One, x)
    assert interpret(Sequent([(x, L), (y, R)])) == (x, y)
    a, b = interpret(Sequent([(x, L), (y, L)]))
    assert {a, b} in ({x, Not(y)}, {y, Not(x)})


def test_sequent_size_counts_distinct_subformulas():
    x, y = Var("x"), Var("y")
    s = Sequent([(And(x, y), L), (Or(x, y), R)])
    assert sequent_size([s]) == 4


def test_atoms_need_consistent_terms():
    with pytest.raises((SignatureError, TypeError, ValueError)):
        Atom("p", (1,))


# -- lattices -------------------------------------------------------------------

@pytest.mark.parametrize("lat", [O6, M4, B2, boolean(2), boolean(3)])
def test_standard_lattices_satisfy_the_laws(lat):
    assert check_ortholattice(lat)
    assert find_law_violation(lat) is None


def test_o6_and_m4_are_not_distributive():
    for lat in (O6, M4):
        x, y, z = Var("x"), Var("y"), Var("z")
        lhs = And(x, Or(y, z))
        rhs = Or(And(x, y), And(x, z))
        env, n = assignments(lat, ["x", "y", "z"])
        a = evaluate_many(lat, lhs, env)
        b = evaluate_many(lat, rhs, env)
        assert not np.all(lat.leq[a, b])


def test_broken_table_is_reported():
    bad = O6.replace(neg=np.arange(O6.n))
    assert not check_ortholattice(bad)


@settings(max_examples=60)
@given(formulas(("x", "y")))
def test_evaluate_many_matches_pointwise(f):
    env, n = assignments(O6, ["x", "y"])
    col = np.broadcast_to(evaluate_many(O6, f, env), (n,))
    for i in range(0, n, 5):
        assert col[i] == evaluate(O6, f, {"x": int(env["x"][i]), "y": int(env["y"][i])})


@given(formulas(("x", "y")))
def test_boolean_two_is_classical(f):
    for bx in (0, 1):
        for by in (0, 1):
            expect = _classical(f, {"x": bx, "y": by})
            assert evaluate(B2, f, {"x": B2.top if bx else B2.bottom,
                                    "y": B2.top if by else B2.bottom}) == (B2.top if expect else B2.bottom)


def _classical(f, env):
    k = f.kind
    if k == "var":
        return env[f.args[0]]
    if k == "not":
        return not _classical(f.args[0], env)
    a, b = (_classical(c, env) for c in f.args)
    return (a and b) if k == "and" else (a or b)


@given(sequents())
def test_sequent_members_are_canonical(s):
    assert Sequent(reversed(s.members)) == s
    assert hash(Sequent(reversed(s.members))) == hash(s)
