"""Input checks shared by the estimator wrappers and the CLI."""

from __future__ import annotations

from orthologic.core import Problem, Sequent
from orthologic.errors import InputError


def check_sequent(s) -> Sequent:
    if isinstance(s, Sequent):
        return s
    if isinstance(s, str):
        from orthologic.io import parse_sequent

        return parse_sequent(s)
    raise InputError(f"expected a Sequent or sequent text, got {type(s).__name__}")


def check_axioms(axioms) -> tuple:
    if isinstance(axioms, (Sequent, str)):
        axioms = [axioms]
    out = tuple(check_sequent(a) for a in axioms)
    for a in out:
        if a.is_trivial:
            raise InputError(f"trivial axiom {a} is not allowed")
    return out


def check_problem(p):
    """A Problem or EprProblem; problem text is parsed."""
    from orthologic.epr import EprProblem

    if isinstance(p, (Problem, EprProblem)):
        return p
    if isinstance(p, str):
        from orthologic.io import parse_problem

        return parse_problem(p)
    raise InputError(f"expected a problem, got {type(p).__name__}")


def has_atoms(sequents) -> bool:
    from orthologic.core import has_atoms as _has

    return any(_has(f) for s in sequents for f, _ in s)
