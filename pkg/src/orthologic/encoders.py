"""Clause sets as deduction problems, and recognizers for the classes the prover decides exactly."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from orthologic.core import EMPTY, L, R, Problem, Sequent, Var, conj, disj
from orthologic.errors import InputError
from orthologic.preprocess import RenameSet

TWO_CNF = "TwoCnf"
HORN = "Horn"
RENAMED_HORN = "RenamedHorn"
GENERAL = "General"


def var_name(i: int) -> str:
    return f"x{i}"


@dataclass(frozen=True)
class CnfInstance:
    """Clauses as frozensets of non-zero DIMACS literals over variables ``1..num_vars``.

    Tautological clauses are dropped with a warning.
    """

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if self.num_vars < 0:
            raise InputError("num_vars must be non-negative")
        kept = []
        for c in self.clauses:
            c = frozenset(int(x) for x in c)
            if 0 in c:
                raise InputError("literal 0 is not allowed inside a clause")
            if any(abs(x) > self.num_vars for x in c):
                raise InputError(f"clause {sorted(c)} mentions a variable beyond {self.num_vars}")
            if any(-x in c for x in c):
                warnings.warn(f"dropping tautological clause {sorted(c)}", stacklevel=3)
                continue
            kept.append(c)
        object.__setattr__(self, "clauses", tuple(kept))

    def rename(self, v: Iterable[int]) -> "CnfInstance":
        """Flip the polarity of every literal over a variable in ``v``."""
        v = set(v)
        return CnfInstance(self.num_vars, tuple(
            frozenset(-x if abs(x) in v else x for x in c) for c in self.clauses))


def encode_clause(c: Iterable[int]) -> Sequent:
    """``{~a1, .., ~an, b1, .., bm}`` becomes ``(a1 & .. & an)^L, (b1 | .. | bm)^R``."""
    c = set(c)
    neg = sorted(-x for x in c if x < 0)
    pos = sorted(x for x in c if x > 0)
    members = []
    if neg:
        members.append((conj(Var(var_name(i)) for i in neg), L))
    if pos:
        members.append((disj(Var(var_name(i)) for i in pos), R))
    return Sequent(members) if members else EMPTY


def encode_instance(inst: CnfInstance) -> Problem:
    """One axiom per clause, goal the empty sequent (provable iff refuted)."""
    return Problem(tuple(encode_clause(c) for c in inst.clauses), EMPTY)


class Classification(frozenset):
    """Class flags of an instance; ``witness`` is a renaming making it Horn, if any."""

    witness: RenameSet | None

    def __new__(cls, flags, witness=None):
        obj = super().__new__(cls, flags)
        obj.witness = witness
        return obj

    def __repr__(self):
        return f"Classification({sorted(self)}, witness={self.witness})"


def is_horn(inst: CnfInstance) -> bool:
    return all(sum(1 for x in c if x > 0) <= 1 for c in inst.clauses)


def is_two_cnf(inst: CnfInstance) -> bool:
    return all(len(c) <= 2 for c in inst.clauses)


def horn_renaming(inst: CnfInstance) -> set[int] | None:
    """Variables whose complementing makes every clause Horn, via 2SAT; None if impossible.

    Boolean ``r_v`` means "rename v".  A literal is positive after renaming
    iff it is ``v`` and not ``r_v``, or ``~v`` and ``r_v``; two literals of
    the same clause may not both be positive.
    """
    g = nx.DiGraph()

    def pos_after(lit):  # 2SAT literal over r-variables: +v means r_v, -v means not r_v
        return -abs(lit) if lit > 0 else abs(lit)

    used = set()
    for c in inst.clauses:
        lits = sorted(c)
        used.update(abs(x) for x in lits)
        for i in range(len(lits)):
            for j in range(i + 1, len(lits)):
                a, b = pos_after(lits[i]), pos_after(lits[j])
                # clause (~a | ~b): a -> ~b, b -> ~a
                g.add_edge(a, -b)
                g.add_edge(b, -a)
    for v in used:
        g.add_node(v)
        g.add_node(-v)
    dag = nx.condensation(g)
    comp = dag.graph["mapping"]
    for v in used:
        if comp[v] == comp[-v]:
            return None
    order = {c: i for i, c in enumerate(nx.topological_sort(dag))}
    return {v for v in used if order[comp[v]] > order[comp[-v]]}


def classify(inst: CnfInstance) -> Classification:
    flags = set()
    if is_two_cnf(inst):
        flags.add(TWO_CNF)
    if is_horn(inst):
        flags.add(HORN)
    ren = set() if HORN in flags else horn_renaming(inst)
    witness = RenameSet(frozenset(var_name(v) for v in ren)) if ren is not None else None
    if ren is not None:
        flags.add(RENAMED_HORN)
    if not flags or not inst.clauses:
        flags.add(GENERAL)
    return Classification(flags, witness)
