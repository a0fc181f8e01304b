"""scikit-learn style wrappers: a prover fitted on axioms, and problem transformers."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from orthologic import preprocess
from orthologic.core import Problem
from orthologic.validation import check_axioms, check_problem, check_sequent, has_atoms


class OrthologicProver(BaseEstimator):
    """Decide goals against a fixed axiom set.

    ``fit`` takes the axioms; ``predict`` takes goal sequents and returns a
    boolean array.  Axioms with predicate atoms are grounded per goal.
    """

    def __init__(self, engine="fixpoint", merge_axioms=False, max_nodes=None):
        self.engine = engine
        self.merge_axioms = merge_axioms
        self.max_nodes = max_nodes

    def fit(self, X, y=None):
        axioms = check_axioms(X)
        self.epr_ = has_atoms(axioms)
        if self.merge_axioms and not self.epr_:
            axioms = tuple(preprocess.merge_axioms(axioms))
        self.axioms_ = axioms
        self.n_axioms_ = len(axioms)
        return self

    def _problem(self, goal):
        goal = check_sequent(goal)
        if self.epr_ or has_atoms([goal]):
            from orthologic.epr import EprProblem, Signature, ground

            p = ground(EprProblem(Signature(), self.axioms_, goal))
            if self.merge_axioms:
                p = preprocess.merge_problem(p)
        else:
            p = Problem(self.axioms_, goal)
        return preprocess.eliminate_bounds(p)

    def prove(self, goal):
        from orthologic.prover import prove

        check_is_fitted(self, "axioms_")
        return prove(self._problem(goal), engine=self.engine, max_nodes=self.max_nodes)

    def predict(self, X):
        from orthologic.prover import prove

        check_is_fitted(self, "axioms_")
        return np.array([bool(prove(self._problem(g), engine=self.engine, want_proof=False,
                                    max_nodes=self.max_nodes)) for g in X], dtype=bool)

    def score(self, X, y):
        return float(np.mean(self.predict(X) == np.asarray(y, dtype=bool)))


class _ProblemTransformer(TransformerMixin, BaseEstimator):
    """Stateless map over a list of problems."""

    def fit(self, X, y=None):
        return self

    def _one(self, p):
        raise NotImplementedError

    def transform(self, X):
        return [self._one(check_problem(p)) for p in X]


class AxiomMerger(_ProblemTransformer):
    def _one(self, p):
        return preprocess.merge_problem(p)


class BoundEliminator(_ProblemTransformer):
    def _one(self, p):
        return preprocess.eliminate_bounds(p)


class Renamer(_ProblemTransformer):
    def __init__(self, variables=()):
        self.variables = variables

    def _one(self, p):
        return preprocess.rename(p, preprocess.RenameSet(frozenset(self.variables)))


class TseitinTransformer(_ProblemTransformer):
    """Flatten problems; the name maps of the last call are kept in ``maps_``."""

    def transform(self, X):
        out, self.maps_ = [], []
        for p in X:
            q, names = preprocess.tseitin(check_problem(p))
            out.append(q)
            self.maps_.append(names)
        return out


class Grounder(_ProblemTransformer):
    def _one(self, p):
        from orthologic.epr import ground

        return ground(p)


class CnfEncoder(TransformerMixin, BaseEstimator):
    """Clause sets to problems with the empty goal."""

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        from orthologic.encoders import encode_instance

        return [encode_instance(i) for i in X]
