import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orthologic.core import EMPTY, One, L, R, And, Atom, Not, Or, Problem, Sequent, Var
from orthologic.errors import NotGroundError, NotPreprocessedError, ResourceError
from orthologic.generators import chain_problem, random_problem
from orthologic.oracles import ortholattice_verdict
from orthologic.core import O6
from orthologic.proofkit import Rule, audit_subformula, check_proof
from orthologic.prover import (
    _RULE_CODES, SearchSpace, Verdict, _Exploration, _FastExploration, decide_many, is_provable,
    possible_parents, prove, provable_set,
)
from orthologic import _kernels
from strategies import problems, sequents

x, y, z, u = (Var(n) for n in "xyzu")


def test_excluded_middle_and_non_distributivity():
    assert prove(Problem((), Sequent([(Or(x, Not(x)), R)])))
    assert prove(Problem((), Sequent([(x, L), (Not(Not(x)), R)])))
    dist = Sequent([(And(x, Or(y, z)), L), (Or(And(x, y), And(x, z)), R)])
    assert not prove(Problem((), dist))


def test_axiom_strengthens():
    lhs = And(x, Or(Not(x), u))
    goal = Sequent([(u, R)])
    res = prove(Problem((Sequent([(lhs, R)]),), goal))
    assert res.verdict is Verdict.PROVABLE and str(res.verdict) == "Provable"
    assert check_proof(res.proof, [Sequent([(lhs, R)])])
    assert prove(Problem((), goal)).verdict is Verdict.NOT_PROVABLE


def test_empty_goal_needs_contradictory_axioms():
    assert not prove(Problem((Sequent([(x, R)]),), EMPTY))
    assert prove(Problem((Sequent([(x, R)]), Sequent([(x, L)])), EMPTY))


def test_unground_and_unpreprocessed_inputs_are_refused():
    with pytest.raises(NotGroundError):
        prove(Problem((), Sequent([(Atom("p", ("a",)), R)])))
    with pytest.raises(NotPreprocessedError):
        prove(Problem((), Sequent([(One, R)])))
    with pytest.raises(ValueError):
        prove(Problem((), Sequent([(x, R)])), engine="nope")


def test_node_cap():
    with pytest.raises(ResourceError):
        prove(chain_problem(10), max_nodes=20)
    with pytest.raises(ResourceError):
        prove(chain_problem(10), engine="backward", max_nodes=20)


def test_parent_order_of_a_pair():
    p = Problem((Sequent([(Or(x, y), L), (z, R)]),), Sequent([(x, L), (z, R)]))
    rules = [ri.rule for ri in possible_parents(p.goal, p)]
    # HYP is absent (different formulas), then AX absent, two weakenings, no logical rule, cuts
    assert rules[:2] == [Rule.WEAKEN, Rule.WEAKEN]
    assert set(rules[2:]) == {Rule.CUT}
    assert len(rules) <= 7 + 4 * len(p.axioms)


def test_stats_within_envelopes():
    rng = random.Random(3)
    for _ in range(50):
        p = random_problem(rng, n_axioms=rng.randint(0, 3))
        st = prove(p).stats
        assert st.visitedCount <= st.sizeBound == 4 * p.size ** 2
        assert st.maxParents <= st.parentBound == 7 + 4 * len(p.axioms)


def test_chain_is_quadratic_in_nodes():
    a = prove(chain_problem(8), want_proof=False).stats.visitedCount
    b = prove(chain_problem(16), want_proof=False).stats.visitedCount
    assert 3.0 < b / a < 5.0


@settings(max_examples=150, deadline=None)
@given(problems())
def test_engines_agree_and_proofs_check(p):
    a = prove(p)
    b = prove(p, engine="backward")
    assert bool(a) == bool(b)
    if a:
        assert check_proof(a.proof, p.axioms) and check_proof(b.proof, p.axioms)
        assert a.proof.conclusion == p.goal
        assert audit_subformula(a.proof, p)


@settings(max_examples=60, deadline=None)
@given(problems(max_axioms=2, max_leaves=4))
def test_provable_set_matches_single_queries(p):
    got = provable_set(p)
    assert (p.goal in got) == is_provable(p)


@settings(max_examples=80, deadline=None)
@given(problems(names=("x", "y"), max_axioms=2, max_leaves=4))
def test_provable_goals_hold_in_the_hexagon(p):
    if is_provable(p):
        assert ortholattice_verdict(p, O6).holds


def _same(a, b):
    names = [str(_RULE_CODES[r]) for r in b.rule]
    return (list(a.keys) == b.keys.tolist() and list(a.first) == b.first.tolist()
            and list(a.ep1) == b.ep1.tolist() and list(a.ep2) == b.ep2.tolist()
            and list(a.ecut) == b.ecut.tolist() and [str(r) for r in a.erule] == names
            and list(a.solve(stop_at=0)) == b.solve(stop_at=0).tolist()
            and list(a.solve()) == b.solve().tolist() and a.stats() == b.stats())


BACKENDS = ["numpy"] + (["compiled"] if _kernels.AVAILABLE else [])


@pytest.mark.parametrize("backend", BACKENDS)
def test_array_engines_reproduce_the_reference_exactly(backend):
    rng = random.Random(1)
    for _ in range(120):
        p = random_problem(rng, n_axioms=rng.randint(0, 3), depth=rng.randint(1, 3))
        sp = SearchSpace(p)
        g = sp.key_of(p.goal)
        assert _same(_Exploration(sp, [g]), _FastExploration(sp, g, backend=backend))


def test_fast_engine_node_cap():
    sp = SearchSpace(chain_problem(12))
    g = sp.key_of(sp.problem.goal)
    for backend in BACKENDS:
        with pytest.raises(ResourceError):
            _FastExploration(sp, g, max_nodes=30, backend=backend)


@settings(max_examples=60, deadline=None)
@given(problems(max_axioms=2, max_leaves=4), st.lists(sequents(max_leaves=4), min_size=1, max_size=4))
def test_shared_search_matches_separate_calls(p, goals):
    goals = [p.goal] + goals
    got, stats = decide_many(p.axioms, goals)
    assert got == [is_provable(p.with_goal(g)) for g in goals]
    # the size bound says nothing when every sequent is empty
    assert stats.visitedCount <= stats.sizeBound or stats.sizeBound == 0
    assert decide_many(p.axioms, goals, engine="backward")[0] == got
