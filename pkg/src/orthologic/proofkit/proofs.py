from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from orthologic.core import Formula, Sequent


class Rule(str, Enum):
    HYP = "Hyp"
    AX = "Ax"
    CUT = "Cut"
    WEAKEN = "Weaken"
    LEFT_AND = "LeftAnd"
    RIGHT_AND = "RightAnd"
    LEFT_OR = "LeftOr"
    RIGHT_OR = "RightOr"
    LEFT_NOT = "LeftNot"
    RIGHT_NOT = "RightNot"

    def __str__(self):
        return self.value


ARITY = {
    Rule.HYP: 0, Rule.AX: 0,
    Rule.WEAKEN: 1, Rule.LEFT_AND: 1, Rule.RIGHT_OR: 1, Rule.LEFT_NOT: 1, Rule.RIGHT_NOT: 1,
    Rule.CUT: 2, Rule.RIGHT_AND: 2, Rule.LEFT_OR: 2,
}

LOGICAL_RULES = frozenset({
    Rule.LEFT_AND, Rule.RIGHT_AND, Rule.LEFT_OR, Rule.RIGHT_OR, Rule.LEFT_NOT, Rule.RIGHT_NOT})


@dataclass(frozen=True, eq=False, slots=True)
class Proof:
    """A derivation node.  Premises may be shared, so a proof is a DAG in memory."""

    conclusion: Sequent
    rule: Rule
    premises: tuple["Proof", ...] = ()
    cut_formula: Formula | None = None

    def __post_init__(self):
        rule = Rule(self.rule)
        object.__setattr__(self, "rule", rule)
        object.__setattr__(self, "premises", tuple(self.premises))
        if rule == Rule.CUT and self.cut_formula is None:
            raise ValueError("a Cut node needs its cut formula")
        if rule != Rule.CUT and self.cut_formula is not None:
            raise ValueError(f"{rule} does not take a cut formula")

    def __repr__(self):
        extra = f" on {self.cut_formula}" if self.cut_formula is not None else ""
        return f"Proof({self.rule}{extra} |- {self.conclusion}, {len(self.premises)} premises)"


def hyp(s: Sequent) -> Proof:
    return Proof(s, Rule.HYP)


def ax(s: Sequent) -> Proof:
    return Proof(s, Rule.AX)


def cut(conclusion: Sequent, left: Proof, right: Proof, formula: Formula) -> Proof:
    return Proof(conclusion, Rule.CUT, (left, right), formula)


def iter_nodes(pr: Proof) -> Iterator[Proof]:
    """Distinct nodes of the DAG, premises before conclusions."""
    seen: set[int] = set()
    stack = [(pr, False)]
    while stack:
        node, done = stack.pop()
        if id(node) in seen:
            continue
        if done or not node.premises:
            seen.add(id(node))
            yield node
            continue
        stack.append((node, True))
        for p in reversed(node.premises):
            if id(p) not in seen:
                stack.append((p, False))


def dag_size(pr: Proof) -> int:
    return sum(1 for _ in iter_nodes(pr))


def tree_size(pr: Proof, cap: int | None = None) -> int:
    """Node count of the fully expanded tree; saturates at ``cap`` when given."""
    sizes: dict[int, int] = {}
    for node in iter_nodes(pr):
        n = 1 + sum(sizes[id(p)] for p in node.premises)
        if cap is not None and n > cap:
            n = cap + 1
        sizes[id(node)] = n
    return sizes[id(pr)]


def same_proof(a: Proof, b: Proof) -> bool:
    """Structural equality of two proofs (as trees)."""
    memo: dict[tuple[int, int], bool] = {}
    stack = [(a, b, False)]
    while stack:
        x, y, done = stack.pop()
        k = (id(x), id(y))
        if k in memo:
            continue
        if x.conclusion != y.conclusion or x.rule != y.rule or x.cut_formula is not y.cut_formula \
                or len(x.premises) != len(y.premises):
            return False
        if done or not x.premises:
            memo[k] = True
            continue
        stack.append((x, y, True))
        for p, q in zip(x.premises, y.premises):
            stack.append((p, q, False))
    return True


def cut_nodes(pr: Proof) -> list[Proof]:
    return [n for n in iter_nodes(pr) if n.rule == Rule.CUT]


def sequents_of(pr: Proof) -> set[Sequent]:
    return {n.conclusion for n in iter_nodes(pr)}
