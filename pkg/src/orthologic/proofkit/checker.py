"""Independent checker for proofs in the two-formula sequent calculus.

Sequents are sets, so a rule's context may coincide with its principal
formula; that is how contraction shows up.
"""

from __future__ import annotations

from typing import Iterable

from orthologic.core import AND, NOT, OR, L, R, Formula, Problem, Sequent, subformula_set
from orthologic.proofkit.proofs import ARITY, Proof, Rule, iter_nodes

# rule -> (connective, side of the principal formula)
SHAPE = {
    Rule.LEFT_AND: (AND, L), Rule.RIGHT_AND: (AND, R),
    Rule.LEFT_OR: (OR, L), Rule.RIGHT_OR: (OR, R),
    Rule.LEFT_NOT: (NOT, L), Rule.RIGHT_NOT: (NOT, R),
}


def rule_premise_options(rule: Rule, principal):
    """Possible premise member lists (besides the context) for a principal formula.

    Returns a list of alternatives; each alternative lists one annotated child
    per premise.
    """
    f, side = principal
    if rule in (Rule.LEFT_NOT, Rule.RIGHT_NOT):
        return [[(f.args[0], side.flip())]]
    a, b = f.args
    if rule in (Rule.LEFT_AND, Rule.RIGHT_OR):
        return [[(a, side)], [(b, side)]]
    return [[(a, side), (b, side)]]


def contexts(conclusion: Sequent, principal) -> list[Sequent]:
    rest = conclusion.without(principal)
    out = [rest]
    if len(conclusion) == 1:
        out.append(conclusion)
    return out


def match_logical(node: Proof, principal):
    """``(context, alternative index)`` if ``node`` reads as its rule with this principal."""
    conn, side = SHAPE[node.rule]
    f, s = principal
    if f.kind != conn or s != side or principal not in node.conclusion:
        return None
    prem = [p.conclusion for p in node.premises]
    for ctx in contexts(node.conclusion, principal):
        for j, kids in enumerate(rule_premise_options(node.rule, principal)):
            try:
                expected = [Sequent(ctx.members + (k,)) for k in kids]
            except ValueError:
                continue
            if expected == prem:
                return ctx, j
    return None


def principals(node: Proof) -> list:
    """Every reading of a logical node as ``(principal, context, alternative)``."""
    out = []
    for m in node.conclusion:
        hit = match_logical(node, m)
        if hit is not None:
            out.append((m, hit[0], hit[1]))
    return out


def _cut_ok(node: Proof) -> str | None:
    psi = node.cut_formula
    a, b = (p.conclusion for p in node.premises)
    pr, pl = (psi, R), (psi, L)
    if pr not in a:
        return f"left premise lacks the cut formula on the right ({psi}^R)"
    if pl not in b:
        return f"right premise lacks the cut formula on the left ({psi}^L)"
    target = set(node.conclusion.key)
    for g in contexts(a, pr):
        for d in contexts(b, pl):
            if set(g.key) | set(d.key) == target:
                return None
    return "conclusion is not the union of the premise contexts"


def _node_error(node: Proof, axioms: set[Sequent]) -> str | None:
    rule = node.rule
    if len(node.premises) != ARITY[rule]:
        return f"{rule} takes {ARITY[rule]} premises, got {len(node.premises)}"
    c = node.conclusion
    if len(c) > 2:
        return "sequent with more than two members"
    if rule == Rule.HYP:
        if len(c) == 2 and c.members[0][0] is c.members[1][0]:
            return None
        return "Hyp must conclude {phi^L, phi^R}"
    if rule == Rule.AX:
        return None if c in axioms else f"{c} is not an axiom"
    if rule == Rule.CUT:
        return _cut_ok(node)
    if rule == Rule.WEAKEN:
        p = node.premises[0].conclusion
        if not p.issubset(c):
            return "Weaken premise is not a subset of its conclusion"
        if len(p) > 1 and p != c:
            return "Weaken premise has too many members"
        if len(c) - len(p) > 1:
            return "Weaken adds more than one formula"
        return None
    if principals(node):
        return None
    return f"no member of the conclusion is a valid principal formula for {rule}"


def find_proof_error(pr: Proof, axioms: Iterable[Sequent]):
    """``None`` if ``pr`` is a valid derivation, else ``(path, message)``.

    ``path`` lists premise indices from the root to the offending node.
    """
    axioms = set(axioms)
    bad: dict[int, str] = {}
    for node in iter_nodes(pr):
        err = _node_error(node, axioms)
        if err is not None:
            bad[id(node)] = err
    if not bad:
        return None
    # locate a shortest path to an offending node
    frontier = [(pr, ())]
    seen = set()
    while frontier:
        nxt = []
        for node, path in frontier:
            if id(node) in bad:
                return path, bad[id(node)]
            if id(node) in seen:
                continue
            seen.add(id(node))
            for i, p in enumerate(node.premises):
                nxt.append((p, path + (i,)))
        frontier = nxt
    raise AssertionError("unreachable")


def check_proof(pr: Proof, axioms: Iterable[Sequent]) -> bool:
    return find_proof_error(pr, axioms) is None


def format_path(path) -> str:
    return "root" + "".join(f".{i}" for i in path)


def cut_rank(node: Proof) -> int:
    """1 if a premise is Ax, 2 if a premise is a rank-1 Cut, otherwise 3 (meaning 3+)."""
    if node.rule != Rule.CUT:
        raise ValueError(f"cut_rank needs a Cut node, got {node.rule}")
    if any(p.rule == Rule.AX for p in node.premises):
        return 1
    for p in node.premises:
        if p.rule == Rule.CUT and any(q.rule == Rule.AX for q in p.premises):
            return 2
    return 3


def axiom_formula_set(axioms: Iterable[Sequent]) -> set[Formula]:
    return {f for a in axioms for f, _ in a}


def cut_violations(pr: Proof, axioms: Iterable[Sequent]) -> list[tuple[Proof, str]]:
    """Cuts breaking either normal-form property: axiom cut formulas, rank at most 2."""
    axf = axiom_formula_set(axioms)
    out = []
    for node in iter_nodes(pr):
        if node.rule != Rule.CUT:
            continue
        if node.cut_formula not in axf:
            out.append((node, "cut formula is not an axiom formula"))
        elif cut_rank(node) > 2:
            out.append((node, "cut rank exceeds 2"))
    return out


def is_normal(pr: Proof, axioms: Iterable[Sequent]) -> bool:
    return not cut_violations(pr, axioms)


def audit_subformula(pr: Proof, p: Problem) -> bool:
    """Every formula in the proof is a subformula of the goal or of an axiom."""
    allowed = subformula_set(p.sequents())
    return all(f in allowed for node in iter_nodes(pr) for f, _ in node.conclusion)
