import numpy as np
import pytest
from hypothesis import given, settings

from orthologic.core import (
    EMPTY, O6, One, Zero, L, R, And, Not, Or, Problem, Sequent, Var, evaluate_many, height,
    iter_subformulas, variables,
)
from orthologic.core.lattices import assignments
from orthologic.oracles import classical_verdict
from orthologic.preprocess import (
    BOUND_VAR, TSEITIN_PREFIX, RenameSet, eliminate_bounds, member_key, merge_axioms,
    merge_problem, nnf, rename, rename_formula, tseitin, tseitin_shape,
)
from orthologic.prover import is_provable
from strategies import formulas, problems

x, y, z = Var("x"), Var("y"), Var("z")


# -- merging --------------------------------------------------------------------

def test_two_right_partners_merge_into_a_conjunction():
    a = Sequent([(x, L), (y, R)])
    b = Sequent([(x, L), (z, R)])
    assert merge_axioms([a, b]) == [Sequent([(x, L), (And(y, z), R)])]


def test_two_left_partners_merge_into_a_disjunction():
    a = Sequent([(x, R), (y, L)])
    b = Sequent([(x, R), (z, L)])
    assert merge_axioms([a, b]) == [Sequent([(x, R), (Or(y, z), L)])]


def test_singletons_merge_into_one():
    out = merge_axioms([Sequent([(x, R)]), Sequent([(y, R)]), Sequent([(z, L)])])
    assert len(out) == 1 and len(out[0]) == 1


def test_empty_axiom_absorbs_everything():
    assert merge_axioms([Sequent([(x, R)]), EMPTY]) == [EMPTY]


@settings(max_examples=120, deadline=None)
@given(problems(max_axioms=4, max_leaves=4))
def test_merging_keeps_verdicts_and_separates_members(p):
    q = merge_problem(p)
    assert is_provable(p) == is_provable(q)
    keys = [k for a in q.axioms if len(a) == 2 for k in {member_key(m) for m in a}]
    assert len(keys) == len(set(keys))
    assert sum(len(a) == 1 for a in q.axioms) <= 1


# -- bounds ---------------------------------------------------------------------

def test_bound_elimination_examples():
    assert is_provable(eliminate_bounds(Problem((), Sequent([(One, R)]))))
    assert is_provable(eliminate_bounds(Problem((), Sequent([(Zero, L)]))))
    assert not is_provable(eliminate_bounds(Problem((), Sequent([(x, L), (Zero, R)]))))
    q = eliminate_bounds(Problem((Sequent([(Or(x, One), R)]),), Sequent([(And(Zero, x), L)])))
    assert BOUND_VAR in q.variables() and not q.has_bounds


def test_problem_without_bounds_is_untouched():
    p = Problem((), Sequent([(x, R)]))
    assert eliminate_bounds(p) is p


# -- renaming ---------------------------------------------------------------------

def test_rename_flips_literals():
    assert rename_formula(And(x, Not(y)), {"x", "y"}) is And(Not(x), y)
    assert rename_formula(Not(Not(x)), {"x"}) is Not(Not(Not(x)))


@given(formulas())
def test_rename_is_an_involution(f):
    names = {"x", "z"}
    assert rename_formula(rename_formula(f, names), names) is f


@settings(max_examples=80, deadline=None)
@given(problems(max_axioms=2, max_leaves=4))
def test_renaming_keeps_verdicts(p):
    assert is_provable(p) == is_provable(rename(p, RenameSet({"x", "y"})))


# -- nnf and Tseitin -------------------------------------------------------------

@settings(max_examples=80)
@given(formulas(("x", "y", "z")))
def test_nnf_is_equivalent_in_the_hexagon(f):
    g = nnf(f)
    assert all(h.kind != "not" or h.args[0].kind == "var" for h in iter_subformulas(g))
    env, n = assignments(O6, ["x", "y", "z"])
    a = np.broadcast_to(evaluate_many(O6, f, env), (n,))
    b = np.broadcast_to(evaluate_many(O6, g, env), (n,))
    assert np.array_equal(a, b)


def test_tseitin_names_are_reserved():
    f = Or(And(x, y), And(Not(x), z))
    q, names = tseitin(Problem((Sequent([(f, R)]),), Sequent([(And(f, y), L), (z, R)])))
    assert names and all(n.startswith(TSEITIN_PREFIX) for n in names)
    assert all(tseitin_shape(s) for s in q.sequents())
    for n, g in names.items():
        assert not any(v.startswith(TSEITIN_PREFIX) for v in variables(g))


def test_flat_problem_is_unchanged():
    p = Problem((Sequent([(x, L), (y, R)]),), Sequent([(x, L), (Or(x, y), R)]))
    q, names = tseitin(p)
    assert q == p and names == {}


def test_shape_predicate():
    assert tseitin_shape(Sequent([(x, L), (And(y, Not(z)), R)]))
    assert tseitin_shape(Sequent([(And(x, y), R)]))
    assert not tseitin_shape(Sequent([(And(x, y), L), (Or(y, z), R)]))
    assert not tseitin_shape(Sequent([(And(And(x, y), z), R)]))


@settings(max_examples=100, deadline=None)
@given(problems(max_axioms=3, max_leaves=6))
def test_tseitin_keeps_verdicts(p):
    q, _ = tseitin(p)
    assert all(tseitin_shape(s) for s in q.sequents())
    assert is_provable(p) == is_provable(q)


@settings(max_examples=60, deadline=None)
@given(problems(max_axioms=2, max_leaves=4))
def test_classical_meaning_survives_bound_elimination(p):
    p = p.with_goal(Sequent([(Or(p.goal.formulas()[0], One), R)])) if len(p.goal) else p
    assert classical_verdict(p).holds == classical_verdict(eliminate_bounds(p)).holds
