import random

import pytest
from hypothesis import given, settings, strategies as st

from orthologic.core import EMPTY, L, R, And, Atom, Not, Or, Problem, Sequent, SignatureError, Var
from orthologic.epr import (
    INJECTED_CONSTANT, EprProblem, Signature, Substitution, congruence_axioms, datalog_solve,
    degree, epr_size, ground, ground_bound, ground_instances, ground_name, instantiate, mgu,
    universe,
)
from orthologic.errors import ShapeError
from orthologic.generators import random_datalog, random_epr, random_ground_atom
from orthologic.oracles import datalog_naive
from orthologic.prover import is_provable


def A(p, *args):
    return Atom(p, args)


def fact(a):
    return Sequent([(a, R)])


def rule(body, head):
    b = body[0]
    for c in body[1:]:
        b = And(b, c)
    return Sequent([(b, L), (head, R)])


PATH = EprProblem(Signature(), (
    fact(A("edge", "a", "b")), fact(A("edge", "b", "c")),
    rule([A("edge", "X", "Y")], A("path", "X", "Y")),
    rule([A("path", "X", "Y"), A("edge", "Y", "Z")], A("path", "X", "Z")),
))


def test_signature_completion_and_checks():
    assert PATH.signature.predicates == {"edge": 2, "path": 2}
    assert PATH.signature.constants == {"a", "b", "c"}
    with pytest.raises(SignatureError):
        EprProblem(Signature(), (fact(A("p", "a")), fact(A("p", "a", "b"))))
    with pytest.raises(SignatureError):
        Signature({}, frozenset({"Bad"}))


def test_degree_and_bound():
    assert degree(PATH) == 3
    g = ground(PATH)
    assert len(g.axioms) <= ground_bound(PATH)


def test_path_queries():
    assert datalog_solve(PATH, A("path", "a", "c"))
    assert not datalog_solve(PATH, A("path", "c", "a"))
    with pytest.raises(ShapeError):
        datalog_solve(PATH, A("path", "a", "X"))


def test_non_datalog_program_is_refused():
    bad = PATH.with_axioms(PATH.axioms + (Sequent([(A("edge", "a", "a"), L)]),))
    with pytest.raises(ShapeError):
        datalog_solve(bad, A("path", "a", "b"))


def test_mgu_examples():
    assert mgu(A("p", "X", "a"), A("p", "b", "Y")).bindings == {"X": "b", "Y": "a"}
    assert mgu(A("p", "X", "X"), A("p", "a", "b")) is None
    assert mgu(A("p", "X"), A("q", "X")) is None
    s = mgu(A("p", "X", "Y"), A("p", "Y", "a"))
    assert s.apply(A("p", "X", "Y")) is s.apply(A("p", "Y", "a")) is A("p", "a", "a")
    with pytest.raises(TypeError):
        mgu(Var("x"), A("p", "a"))


TERMS = st.sampled_from(["X", "Y", "Z", "a", "b"])


@given(st.lists(TERMS, min_size=2, max_size=2), st.lists(TERMS, min_size=2, max_size=2))
def test_mgu_unifies_and_is_most_general(xs, ys):
    a, b = A("p", *xs), A("p", *ys)
    s = mgu(a, b)
    # brute force over ground substitutions into {a, b, c}
    vs = sorted({t for t in xs + ys if t[0].isupper()})
    import itertools
    unifiers = []
    for combo in itertools.product("abc", repeat=len(vs)):
        th = Substitution(dict(zip(vs, combo)))
        if th.apply(a) is th.apply(b):
            unifiers.append(th)
    if s is None:
        assert not unifiers
    else:
        assert s.apply(a) is s.apply(b)
        for th in unifiers:
            # every ground unifier factors through the mgu
            assert th.compose(s).apply(a) is th.apply(a)


def test_substitution_must_be_idempotent():
    with pytest.raises(ValueError):
        Substitution({"X": "Y", "Y": "a"})


def test_instantiate_and_names():
    s = rule([A("edge", "X", "Y")], A("path", "X", "Y"))
    t = instantiate(s, Substitution({"X": "a", "Y": "b"}))
    assert t == rule([A("edge", "a", "b")], A("path", "a", "b"))
    assert ground_name(A("edge", "a", "b")) == "edge(a,b)"


def test_universe_fallbacks():
    p = EprProblem(Signature({"p": 1}), (fact(A("p", "X")),), Sequent([(A("p", "W"), R)]))
    assert universe(p) == ["W"]
    q = EprProblem(Signature({"p": 1}), (fact(A("p", "X")),))
    assert universe(q) == [INJECTED_CONSTANT]
    r = EprProblem(Signature({"p": 1}, frozenset({"k", "c"})), (fact(A("p", "X")),))
    assert universe(r) == ["c"]


def test_goal_variables_are_rigid():
    p = EprProblem(Signature(), (fact(A("p", "X")),), Sequent([(A("p", "W"), R)]))
    assert is_provable(ground(p))
    q = EprProblem(Signature(), (fact(A("p", "a")),), Sequent([(A("p", "W"), R)]))
    assert not is_provable(ground(q))


def test_congruence_axioms():
    sig = Signature({"eq": 2, "p": 2})
    ax = congruence_axioms(sig)
    assert len(ax) == 5 and degree(ax) == 3
    with pytest.raises(SignatureError):
        congruence_axioms(Signature({"p": 1}))


def test_congruence_moves_facts():
    sig = Signature({"eq": 2, "p": 1})
    axioms = tuple(congruence_axioms(sig)) + (fact(A("eq", "a", "b")), fact(A("p", "a")))
    p = EprProblem(sig, axioms, fact(A("p", "b")))
    assert is_provable(ground(p))
    assert not is_provable(ground(p.with_axioms(axioms[:-2] + axioms[-1:])))


@pytest.mark.parametrize("seed", range(25))
def test_datalog_matches_naive_evaluation(seed):
    rng = random.Random(seed)
    prog = random_datalog(rng, max_rules=6)
    for _ in range(4):
        q = random_ground_atom(rng, prog)
        assert datalog_solve(prog, q) == datalog_naive(prog, q)


def test_batched_queries():
    qs = [A("path", "a", "c"), A("path", "c", "a"), A("edge", "a", "b"), A("path", "d", "d")]
    assert datalog_solve(PATH, qs) == [True, False, True, False]
    with pytest.raises(ShapeError):
        datalog_solve(PATH, [A("path", "a", "X")])


@pytest.mark.parametrize("seed", range(15))
def test_batched_and_single_queries_agree(seed):
    rng = random.Random(100 + seed)
    prog = random_datalog(rng, max_rules=6)
    qs = [random_ground_atom(rng, prog) for _ in range(5)]
    assert datalog_solve(prog, qs) == [datalog_solve(prog, q) for q in qs]


@pytest.mark.parametrize("seed", range(20))
def test_grounding_respects_the_bound(seed):
    rng = random.Random(seed)
    p = random_epr(rng, n_constants=rng.randint(1, 3), n_axioms=rng.randint(1, 3))
    assert len(ground_instances(p)) <= ground_bound(p)
    assert epr_size(p.axioms) > 0
