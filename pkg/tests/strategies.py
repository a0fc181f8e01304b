"""Hypothesis strategies shared by the property tests."""

import hypothesis.strategies as st

from orthologic.core import L, R, And, Not, Or, Problem, Sequent, Var

NAMES = ("x", "y", "z", "u")


def formulas(names=NAMES, max_leaves=6):
    leaf = st.sampled_from(names).map(Var)
    return st.recursive(
        leaf,
        lambda kid: st.one_of(
            kid.map(Not),
            st.tuples(kid, kid).map(lambda t: And(*t)),
            st.tuples(kid, kid).map(lambda t: Or(*t)),
        ),
        max_leaves=max_leaves,
    )


def annotated(names=NAMES, max_leaves=6):
    return st.tuples(formulas(names, max_leaves), st.sampled_from((L, R)))


def sequents(names=NAMES, min_size=0, max_size=2, max_leaves=6):
    return (st.lists(annotated(names, max_leaves), min_size=min_size, max_size=max_size)
            .map(Sequent).filter(lambda s: not s.is_trivial))


def problems(names=NAMES, max_axioms=3, max_leaves=5):
    return st.builds(
        Problem,
        st.lists(sequents(names, 1, 2, max_leaves), max_size=max_axioms).map(tuple),
        sequents(names, 0, 2, max_leaves),
    )
