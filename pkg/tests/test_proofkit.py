import random

import pytest

from orthologic.core import EMPTY, L, R, And, Not, Or, Problem, Sequent, Var
from orthologic.errors import ProofError, ResourceError
from orthologic.generators import random_problem, random_proof
from orthologic.proofkit import (
    EliminationStats, Proof, Rule, admissible_substitution_check, ax, check_proof, cut,
    cut_nodes, cut_rank, cut_violations, dag_size, eliminate_cuts, find_proof_error, format_path,
    hyp, is_normal, normal_search, same_proof, tree_size,
)
from orthologic.prover import is_provable

x, y, z = Var("x"), Var("y"), Var("z")


def test_small_proof_checks():
    h = hyp(Sequent([(x, L), (x, R)]))
    s = Proof(Sequent([(x, L), (Or(x, y), R)]), Rule.RIGHT_OR, (h,))
    assert check_proof(s, [])
    bad = Proof(Sequent([(x, L), (And(x, y), R)]), Rule.RIGHT_OR, (h,))
    path, msg = find_proof_error(bad, [])
    assert format_path(path) == "root" and msg


def test_error_path_points_at_the_bad_premise():
    h = hyp(Sequent([(x, L), (x, R)]))
    wrong = Proof(Sequent([(y, L), (x, R)]), Rule.AX)  # not an axiom
    top = Proof(Sequent([(Or(x, y), L), (x, R)]), Rule.LEFT_OR, (h, wrong))
    path, msg = find_proof_error(top, [])
    assert format_path(path) == "root.1"


def test_axiom_leaf_must_be_an_axiom():
    a = Sequent([(x, R)])
    assert check_proof(ax(a), [a])
    assert not check_proof(ax(a), [])


def test_cut_rank():
    a = Sequent([(x, R)])
    h = hyp(Sequent([(x, L), (y, R)]))
    c1 = cut(Sequent([(y, R)]), ax(a), Proof(Sequent([(x, L), (y, R)]), Rule.AX), x)
    assert cut_rank(c1) == 1
    with pytest.raises(ValueError):
        cut_rank(h)


def test_dag_and_tree_sizes():
    h = hyp(Sequent([(x, L), (x, R)]))
    both = Proof(Sequent([(Or(x, x), L), (x, R)]), Rule.LEFT_OR, (h, h))
    assert dag_size(both) == 2 and tree_size(both) == 3
    assert same_proof(both, Proof(both.conclusion, Rule.LEFT_OR, (h, h)))


def test_elimination_rejects_invalid_input():
    with pytest.raises(ProofError):
        eliminate_cuts(Proof(Sequent([(x, R)]), Rule.AX), [])


@pytest.mark.parametrize("seed", range(40))
def test_elimination_normalizes(seed):
    rng = random.Random(seed)
    axioms = list(random_problem(rng, ("x", "y"), n_axioms=rng.randint(0, 2), depth=1).axioms)
    pr = random_proof(rng, axioms, names=("x", "y"), max_nodes=14)
    assert not is_normal(pr, axioms)
    st = EliminationStats()
    out = eliminate_cuts(pr, axioms, stats=st)
    assert out.conclusion == pr.conclusion
    assert check_proof(out, axioms)
    assert cut_violations(out, axioms) == []
    assert st.cuts_reduced >= 1


def test_elimination_cap():
    rng = random.Random(0)
    pr = random_proof(rng, [], names=("x", "y"), max_nodes=14)
    with pytest.raises(ResourceError):
        eliminate_cuts(pr, [], cap=1)


@pytest.mark.parametrize("seed", range(30))
def test_normal_search_agrees_with_prover(seed):
    rng = random.Random(seed)
    p = random_problem(rng, ("x", "y"), n_axioms=rng.randint(0, 2), depth=2)
    pr = normal_search(p.goal, p.axioms)
    assert (pr is not None) == is_provable(p)
    if pr is not None:
        assert check_proof(pr, p.axioms) and is_normal(pr, p.axioms)


def test_equivalent_formulas_substitute():
    p = Problem((Sequent([(x, L), (y, R)]), Sequent([(y, L), (x, R)])), EMPTY)
    assert admissible_substitution_check(p, x, y, samples=20)
    # not equivalent without axioms: vacuous
    assert admissible_substitution_check(Problem((), EMPTY), x, y)
    assert admissible_substitution_check(Problem((), EMPTY), Not(Not(x)), x, samples=20)
