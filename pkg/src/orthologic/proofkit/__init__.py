from orthologic.proofkit.proofs import (
    ARITY, LOGICAL_RULES, Proof, Rule, ax, cut, cut_nodes, dag_size, hyp, iter_nodes,
    same_proof, sequents_of, tree_size,
)
from orthologic.proofkit.checker import (
    audit_subformula, check_proof, cut_rank, cut_violations, find_proof_error, format_path,
    is_normal,
)
from orthologic.proofkit.cuts import NODE_CAP, EliminationStats, eliminate_cuts, normal_search
from orthologic.proofkit.audit import admissible_substitution_check

__all__ = [
    "ARITY", "LOGICAL_RULES", "Proof", "Rule", "ax", "cut", "cut_nodes", "dag_size", "hyp",
    "iter_nodes", "same_proof", "sequents_of", "tree_size", "audit_subformula", "check_proof",
    "cut_rank", "cut_violations", "find_proof_error", "format_path", "is_normal", "NODE_CAP",
    "EliminationStats", "eliminate_cuts", "normal_search", "admissible_substitution_check",
]
