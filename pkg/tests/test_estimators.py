import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from orthologic.core import EMPTY, L, R, And, Not, Or, Problem, Sequent, Var
from orthologic.encoders import CnfInstance
from orthologic.errors import InputError
from orthologic.estimators import (
    AxiomMerger, BoundEliminator, CnfEncoder, Grounder, OrthologicProver, Renamer,
    TseitinTransformer,
)
from orthologic.preprocess import tseitin_shape
from orthologic.prover import is_provable


def test_prover_fit_predict():
    m = OrthologicProver().fit(["|- x & (~x | u)"])
    assert m.n_axioms_ == 1
    assert m.predict(["|- u", "|- x", "|- y"]).tolist() == [True, True, False]
    assert m.prove("|- u").proof is not None
    assert m.score(["|- u", "|- y"], [True, False]) == 1.0


def test_params_and_clone():
    m = OrthologicProver(engine="backward", merge_axioms=True)
    assert m.get_params() == {"engine": "backward", "merge_axioms": True, "max_nodes": None}
    c = clone(m)
    assert c.get_params() == m.get_params() and not hasattr(c, "axioms_")


def test_not_fitted_and_bad_input():
    with pytest.raises(NotFittedError):
        OrthologicProver().predict(["|- x"])
    with pytest.raises(InputError):
        OrthologicProver().fit([42])
    with pytest.raises(InputError):
        OrthologicProver().fit(["x |- x"])


def test_merged_and_predicate_axioms():
    axioms = ["x |- y", "x |- u"]
    a = OrthologicProver().fit(axioms).predict(["x |- y & u"])
    b = OrthologicProver(merge_axioms=True).fit(axioms).predict(["x |- y & u"])
    assert a.tolist() == b.tolist() == [True]
    m = OrthologicProver().fit(["|- edge(a,b)", "edge(X,Y) |- path(X,Y)"])
    assert m.predict(["|- path(a,b)", "|- path(b,a)"]).tolist() == [True, False]


def test_transformers_in_a_pipeline():
    x, y = Var("x"), Var("y")
    f = Or(And(x, y), And(Not(x), y))
    probs = [Problem((Sequent([(f, R)]),), Sequent([(y, R)])),
             "axiom |- 1 & x\ngoal |- x"]
    pipe = make_pipeline(BoundEliminator(), AxiomMerger(), Renamer(["x"]), TseitinTransformer())
    out = pipe.fit_transform(probs)
    assert all(tseitin_shape(s) for q in out for s in q.sequents())
    assert [is_provable(q) for q in out] == [is_provable(q) for q in
                                            BoundEliminator().transform(probs)]
    assert len(pipe[-1].maps_) == 2


def test_grounder_and_encoder():
    g = Grounder().fit_transform(["axiom |- p(a)\naxiom p(X) |- q(X)\ngoal |- q(a)"])
    assert is_provable(g[0])
    enc = CnfEncoder().fit_transform([CnfInstance(1, ([1], [-1]))])
    assert enc[0].goal == EMPTY and is_provable(enc[0])
