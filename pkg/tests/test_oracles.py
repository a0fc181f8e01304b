import pytest

from orthologic.core import B2, EMPTY, M4, O6, L, R, And, Atom, Not, Or, Problem, Sequent, Var
from orthologic.encoders import CnfInstance
from orthologic.epr import EprProblem, Signature
from orthologic.errors import NotGroundError, ResourceError, ShapeError
from orthologic.oracles import (
    classical_satisfiable, classical_verdict, datalog_model, datalog_naive, ortholattice_verdict,
)

x, u = Var("x"), Var("u")
LHS = And(x, Or(Not(x), u))


def test_axiom_example_holds_in_every_lattice():
    p = Problem((Sequent([(LHS, R)]),), Sequent([(u, R)]))
    for lat in (O6, M4, B2):
        assert ortholattice_verdict(p, lat).holds
    assert classical_verdict(p).holds


def test_inequality_fails_in_non_distributive_lattices():
    p = Problem((), Sequent([(LHS, L), (u, R)]))
    assert classical_verdict(p).holds and ortholattice_verdict(p, B2).holds
    for lat in (O6, M4):
        v = ortholattice_verdict(p, lat)
        assert not v.holds and set(v.witness) == {"u", "x"}
    assert ortholattice_verdict(p, O6).witness == {"u": "a", "x": "b"}


def test_classical_countermodel():
    v = classical_verdict(Problem((), Sequent([(x, L), (u, R)])))
    assert not v.holds and v.witness == {"u": 0, "x": 1}


def test_caps_and_atoms():
    with pytest.raises(ResourceError):
        classical_verdict(Problem((), Sequent([(Or(Var("a"), Var("b")), R)])), max_vars=1)
    with pytest.raises(ResourceError):
        ortholattice_verdict(Problem((), Sequent([(Or(Var("a"), Var("b")), R)])), O6, max_vars=1)
    with pytest.raises(NotGroundError):
        classical_verdict(Problem((), Sequent([(Atom("p", ("a",)), R)])))


def test_satisfiability():
    assert classical_satisfiable(CnfInstance(2, ([1], [-1, 2]))).witness == {1: 1, 2: 1}
    assert not classical_satisfiable(CnfInstance(1, ([1], [-1]))).holds
    assert classical_satisfiable(CnfInstance(0, ())).holds
    assert not classical_satisfiable(CnfInstance(0, ([],))).holds


def test_datalog_model():
    A = lambda p, *a: Atom(p, a)
    prog = EprProblem(Signature(), (
        Sequent([(A("e", "a", "b"), R)]),
        Sequent([(A("e", "X", "Y"), L), (A("e", "Y", "X"), R)]),
        Sequent([(A("t", "X"), R)]),
    ))
    m = datalog_model(prog)
    assert ("e", ("b", "a")) in m and ("t", ("a",)) in m and len(m) == 4
    assert datalog_naive(prog, A("t", "z"))
    with pytest.raises(ShapeError):
        datalog_naive(prog, A("t", "Z"))
    bad = EprProblem(Signature(), (Sequent([(A("e", "a", "b"), L)]),))
    with pytest.raises(ShapeError):
        datalog_model(bad)
