from orthologic.core.terms import (
    AND, ATOM, NOT, ONE, OR, VAR, ZERO, And, Atom, Formula, Not, One, Or,
    SignatureError, Var, Zero, atoms, by_id, conj, disj, has_atoms, has_bounds,
    height, intern, iter_subformulas, map_leaves, substitute, subformulas, variables,
)
from orthologic.core.sequents import (
    EMPTY, L, R, Problem, Sequent, SequentError, Side, formula_size, interpret,
    sequent_size, subformula_set,
)
from orthologic.core.lattices import (
    B2, M4, O6, STANDARD_LATTICES, EvaluationError, FiniteOrtholattice, boolean,
    check_ortholattice, evaluate, evaluate_many, find_law_violation, law_violations,
)

# spec-facing alias; ``eval`` itself would shadow the builtin
eval_formula = evaluate

__all__ = [
    "AND", "ATOM", "NOT", "ONE", "OR", "VAR", "ZERO", "And", "Atom", "Formula", "Not",
    "One", "Or", "SignatureError", "Var", "Zero", "atoms", "by_id", "conj", "disj",
    "has_atoms", "has_bounds", "height", "intern", "iter_subformulas", "map_leaves",
    "substitute", "subformulas", "variables", "EMPTY", "L", "R", "Problem", "Sequent",
    "SequentError", "Side", "formula_size", "interpret", "sequent_size", "subformula_set",
    "B2", "M4", "O6", "STANDARD_LATTICES", "EvaluationError", "FiniteOrtholattice",
    "boolean", "check_ortholattice", "evaluate", "evaluate_many", "find_law_violation",
    "law_violations", "eval_formula",
]
