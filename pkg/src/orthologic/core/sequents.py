from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Iterator

from orthologic.errors import InputError
from orthologic.core.terms import (
    Formula, Not, One, Zero, has_atoms, has_bounds, iter_subformulas, variables,
)


class Side(IntEnum):
    L = 0
    R = 1

    def flip(self) -> "Side":
        return Side(1 - self)

    def __str__(self):
        return self.name


L = Side.L
R = Side.R

Annotated = tuple  # (Formula, Side)


class SequentError(InputError):
    pass


class Sequent:
    """A set of at most two annotated formulas, kept in canonical order.

    Members are sorted by formula id, then L before R.  Duplicates collapse.
    """

    __slots__ = ("members", "_key")

    def __init__(self, members: Iterable[Annotated] = ()):
        uniq = {}
        for f, s in members:
            if not isinstance(f, Formula):
                raise TypeError(f"expected an interned Formula, got {type(f).__name__}")
            s = Side(s)
            uniq[(f.id, int(s))] = (f, s)
        if len(uniq) > 2:
            raise SequentError(f"a sequent holds at most two members, got {len(uniq)}")
        keys = sorted(uniq)
        self.members: tuple[Annotated, ...] = tuple(uniq[k] for k in keys)
        self._key = tuple(keys)

    @classmethod
    def of(cls, *members: Annotated) -> "Sequent":
        return cls(members)

    @property
    def key(self) -> tuple:
        return self._key

    def __eq__(self, other):
        return isinstance(other, Sequent) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other: "Sequent"):
        return self._key < other._key

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[Annotated]:
        return iter(self.members)

    def __contains__(self, item):
        f, s = item
        return (f.id, int(s)) in self._key

    def issubset(self, other: "Sequent") -> bool:
        return set(self._key) <= set(other._key)

    def formulas(self) -> list[Formula]:
        return [f for f, _ in self.members]

    def without(self, item: Annotated) -> "Sequent":
        f, s = item
        return Sequent(m for m in self.members if not (m[0] is f and m[1] == s))

    def union(self, other: "Sequent") -> "Sequent":
        return Sequent(self.members + other.members)

    @property
    def is_trivial(self) -> bool:
        """True for {phi^L, phi^R}."""
        return len(self.members) == 2 and self.members[0][0] is self.members[1][0]

    def __repr__(self):
        from orthologic.io import format_sequent

        return f"Sequent[{format_sequent(self)}]"

    def __str__(self):
        from orthologic.io import format_sequent

        return format_sequent(self)


EMPTY = Sequent()


def formula_size(formulas: Iterable[Formula]) -> int:
    """Number of distinct subformulas across ``formulas``."""
    seen: set[int] = set()
    for f in formulas:
        if f.id in seen:
            continue
        for g in iter_subformulas(f):
            seen.add(g.id)
    return len(seen)


def sequent_size(sequents: Iterable[Sequent]) -> int:
    return formula_size(f for s in sequents for f, _ in s)


def subformula_set(sequents: Iterable[Sequent]) -> set[Formula]:
    out: set[Formula] = set()
    for s in sequents:
        for f, _ in s:
            if f not in out:
                out.update(iter_subformulas(f))
    return out


@dataclass(frozen=True)
class Problem:
    """Axioms plus a goal sequent.

    Duplicate axioms are dropped (first occurrence wins) and axioms of the
    shape {phi^L, phi^R} are rejected.
    """

    axioms: tuple[Sequent, ...]
    goal: Sequent
    signature: object = field(default=None, compare=False)

    def __post_init__(self):
        seen = {}
        for a in self.axioms:
            if not isinstance(a, Sequent):
                raise TypeError("axioms must be Sequent instances")
            if a.is_trivial:
                raise SequentError(f"trivial axiom {a} is not allowed")
            seen.setdefault(a, None)
        if not isinstance(self.goal, Sequent):
            raise TypeError("goal must be a Sequent")
        object.__setattr__(self, "axioms", tuple(seen))

    @property
    def axiom_size(self) -> int:
        return sequent_size(self.axioms)

    @property
    def goal_size(self) -> int:
        return sequent_size([self.goal])

    @property
    def size(self) -> int:
        """``||S|| + ||A||``, the quantity the search-space bounds are stated in."""
        return self.goal_size + self.axiom_size

    def sequents(self) -> tuple[Sequent, ...]:
        return self.axioms + (self.goal,)

    def formulas(self) -> list[Formula]:
        return [f for s in self.sequents() for f, _ in s]

    def variables(self) -> set[str]:
        out: set[str] = set()
        for f in self.formulas():
            out |= variables(f)
        return out

    @property
    def has_bounds(self) -> bool:
        return any(has_bounds(f) for f in self.formulas())

    @property
    def has_atoms(self) -> bool:
        return any(has_atoms(f) for f in self.formulas())

    def axiom_formulas(self) -> list[Formula]:
        """Distinct formulas occurring in axioms, in first-occurrence order."""
        return list(dict.fromkeys(f for a in self.axioms for f, _ in a))

    def with_axioms(self, axioms: Iterable[Sequent]) -> "Problem":
        return Problem(tuple(axioms), self.goal, self.signature)

    def with_goal(self, goal: Sequent) -> "Problem":
        return Problem(self.axioms, goal, self.signature)


def interpret(s: Sequent) -> tuple[Formula, Formula]:
    """The inequality ``lhs <= rhs`` a sequent stands for."""
    m = s.members
    if not m:
        return One, Zero
    if len(m) == 1:
        f, side = m[0]
        return (f, Zero) if side == L else (One, f)
    (f, sf), (g, sg) = m
    if sf == L and sg == R:
        return f, g
    if sf == R and sg == L:
        return g, f
    if sf == L:
        return f, Not(g)
    return Not(f), g
