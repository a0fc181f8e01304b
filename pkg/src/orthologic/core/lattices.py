"""Finite ortholattices given by explicit operation tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from orthologic.core.terms import (
    AND, ATOM, NOT, ONE, OR, VAR, ZERO, Formula, iter_subformulas,
)


class EvaluationError(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteOrtholattice:
    name: str
    elements: tuple[str, ...]
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    neg: np.ndarray
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return len(self.elements)

    def element(self, e) -> int:
        if isinstance(e, (int, np.integer)):
            if not 0 <= e < self.n:
                raise ValueError(f"element index {e} out of range for {self.name}")
            return int(e)
        try:
            return self.elements.index(e)
        except ValueError:
            raise ValueError(f"{self.name} has no element {e!r}") from None

    def label(self, i: int) -> str:
        return self.elements[i]

    def le(self, a, b) -> bool:
        return bool(self.leq[self.element(a), self.element(b)])

    def __repr__(self):
        return f"FiniteOrtholattice({self.name!r}, n={self.n})"

    @classmethod
    def from_order(cls, name: str, elements: Sequence[str],
                   covers: Sequence[tuple[str, str]], neg: Mapping[str, str]):
        """Build the tables from a Hasse diagram (``covers`` lists ``a < b`` edges)."""
        n = len(elements)
        idx = {e: i for i, e in enumerate(elements)}
        leq = np.eye(n, dtype=bool)
        for a, b in covers:
            leq[idx[a], idx[b]] = True
        # reflexive-transitive closure
        for k in range(n):
            leq |= leq[:, [k]] & leq[[k], :]
        meet = np.empty((n, n), dtype=np.int64)
        join = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                lower = [c for c in range(n) if leq[c, a] and leq[c, b]]
                upper = [c for c in range(n) if leq[a, c] and leq[b, c]]
                glb = [c for c in lower if all(leq[d, c] for d in lower)]
                lub = [c for c in upper if all(leq[c, d] for d in upper)]
                if len(glb) != 1 or len(lub) != 1:
                    raise ValueError(f"{name}: order is not a lattice at ({elements[a]}, {elements[b]})")
                meet[a, b] = glb[0]
                join[a, b] = lub[0]
        negt = np.array([idx[neg[e]] for e in elements], dtype=np.int64)
        bottom = [i for i in range(n) if leq[i].all()]
        top = [i for i in range(n) if leq[:, i].all()]
        return cls(name, tuple(elements), leq, meet, join, negt, bottom[0], top[0])

    def replace(self, **changes) -> "FiniteOrtholattice":
        fields = dict(name=self.name, elements=self.elements, leq=self.leq.copy(),
                      meet=self.meet.copy(), join=self.join.copy(), neg=self.neg.copy(),
                      bottom=self.bottom, top=self.top)
        fields.update(changes)
        return FiniteOrtholattice(**fields)


def o6() -> FiniteOrtholattice:
    """The hexagon: 0 < a < b < 1 and 0 < ~b < ~a < 1."""
    return FiniteOrtholattice.from_order(
        "O6", ["0", "a", "b", "~b", "~a", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "~b"), ("~b", "~a"), ("~a", "1")],
        {"0": "1", "1": "0", "a": "~a", "~a": "a", "b": "~b", "~b": "b"})


def m4() -> FiniteOrtholattice:
    """Four pairwise incomparable atoms between 0 and 1."""
    atoms = ["a", "~a", "b", "~b"]
    return FiniteOrtholattice.from_order(
        "M4", ["0"] + atoms + ["1"],
        [("0", x) for x in atoms] + [(x, "1") for x in atoms],
        {"0": "1", "1": "0", "a": "~a", "~a": "a", "b": "~b", "~b": "b"})


def boolean(k: int = 1) -> FiniteOrtholattice:
    """The Boolean algebra of subsets of a k-element set (elements are bitmasks)."""
    if not 0 <= k <= 3:
        raise ValueError("boolean lattices are built for 0 <= k <= 3")
    n = 1 << k
    full = n - 1
    xs = np.arange(n)
    a, b = np.meshgrid(xs, xs, indexing="ij")
    meet = a & b
    join = a | b
    leq = meet == a
    neg = full ^ xs
    names = tuple(format(i, f"0{k}b") if k > 1 else str(i) for i in range(n)) if k else ("0",)
    return FiniteOrtholattice(f"B{n}", names, leq, meet, join, neg, 0, full)


O6 = o6()
M4 = m4()
B2 = boolean(1)

STANDARD_LATTICES = (O6, M4, B2)


def evaluate(lattice: FiniteOrtholattice, f: Formula, assignment: Mapping) -> int:
    """Evaluate ``f`` bottom-up in ``lattice``; returns an element index.

    ``assignment`` maps variable names (or Var formulas) to element indices or labels.
    """
    env = {}
    for k, v in assignment.items():
        env[k.name if isinstance(k, Formula) else k] = lattice.element(v)
    val: dict[int, int] = {}
    for g in iter_subformulas(f):
        k = g.kind
        if k == VAR:
            try:
                val[g.id] = env[g.args[0]]
            except KeyError:
                raise EvaluationError(f"variable {g.args[0]!r} is unassigned") from None
        elif k == ATOM:
            raise EvaluationError("predicate atoms cannot be evaluated; ground the problem first")
        elif k == NOT:
            val[g.id] = int(lattice.neg[val[g.args[0].id]])
        elif k == AND:
            val[g.id] = int(lattice.meet[val[g.args[0].id], val[g.args[1].id]])
        elif k == OR:
            val[g.id] = int(lattice.join[val[g.args[0].id], val[g.args[1].id]])
        elif k == ZERO:
            val[g.id] = lattice.bottom
        elif k == ONE:
            val[g.id] = lattice.top
    return val[f.id]


def evaluate_many(lattice: FiniteOrtholattice, f: Formula,
                  env: Mapping[str, np.ndarray]) -> np.ndarray:
    """Vectorized ``evaluate``: every variable maps to an array of elements."""
    shape = np.broadcast_shapes(*(np.shape(v) for v in env.values())) if env else ()
    val: dict[int, np.ndarray] = {}
    for g in iter_subformulas(f):
        k = g.kind
        if k == VAR:
            try:
                val[g.id] = np.asarray(env[g.args[0]])
            except KeyError:
                raise EvaluationError(f"variable {g.args[0]!r} is unassigned") from None
        elif k == ATOM:
            raise EvaluationError("predicate atoms cannot be evaluated; ground the problem first")
        elif k == NOT:
            val[g.id] = lattice.neg[val[g.args[0].id]]
        elif k == AND:
            val[g.id] = lattice.meet[val[g.args[0].id], val[g.args[1].id]]
        elif k == OR:
            val[g.id] = lattice.join[val[g.args[0].id], val[g.args[1].id]]
        elif k == ZERO:
            val[g.id] = np.full(shape, lattice.bottom)
        elif k == ONE:
            val[g.id] = np.full(shape, lattice.top)
    return np.broadcast_to(val[f.id], shape)


def _laws(l: FiniteOrtholattice):
    n = l.n
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    M, J, N = l.meet, l.join, l.neg
    zero = np.full_like(x, l.bottom)
    one = np.full_like(x, l.top)
    yield "V1", J[x, y], J[y, x]
    yield "V1'", M[x, y], M[y, x]
    yield "V2", J[x, J[y, z]], J[J[x, y], z]
    yield "V2'", M[x, M[y, z]], M[M[x, y], z]
    yield "V3", J[x, x], x
    yield "V3'", M[x, x], x
    yield "V4", J[x, one], one
    yield "V4'", M[x, zero], zero
    yield "V5", J[x, zero], x
    yield "V5'", M[x, one], x
    yield "V6", N[N[x]], x
    yield "V7", J[x, N[x]], one
    yield "V7'", M[x, N[x]], zero
    yield "V8", N[J[x, y]], M[N[x], N[y]]
    yield "V8'", N[M[x, y]], J[N[x], N[y]]
    yield "V9", J[x, M[x, y]], x
    yield "V9'", M[x, J[x, y]], x
    yield "order", l.leq[x, y], M[x, y] == x


def find_law_violation(l: FiniteOrtholattice):
    """Return ``None`` or ``(law, (x, y, z))`` for the first violated law."""
    n = l.n
    shapes_ok = (
        l.meet.shape == (n, n) and l.join.shape == (n, n)
        and l.leq.shape == (n, n) and l.neg.shape == (n,))
    if not shapes_ok:
        return ("tables", ())
    for t in (l.meet, l.join, l.neg):
        if t.size and (t.min() < 0 or t.max() >= n):
            return ("tables", ())
    if not (0 <= l.bottom < n and 0 <= l.top < n):
        return ("tables", ())
    for law, lhs, rhs in _laws(l):
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return (law, tuple(int(i) for i in bad[0]))
    return None


def law_violations(l: FiniteOrtholattice) -> dict:
    """Every violated law mapped to its first witness tuple."""
    first = find_law_violation(l)
    if first is None or first[0] == "tables":
        return {} if first is None else dict([first])
    out = {}
    for law, lhs, rhs in _laws(l):
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            out[law] = tuple(int(i) for i in bad[0])
    return out


def check_ortholattice(l: FiniteOrtholattice) -> bool:
    return find_law_violation(l) is None


def assignments(lattice: FiniteOrtholattice, names: Sequence[str]):
    """Every assignment of ``names`` into the lattice, as a dict of index columns."""
    k = len(names)
    if k == 0:
        return {}, 1
    grid = np.array(list(itertools.product(range(lattice.n), repeat=k)), dtype=np.int64)
    return {v: grid[:, i] for i, v in enumerate(names)}, len(grid)
