"""Reference deciders used to referee the prover.  Brute force by design."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from orthologic.core import (
    AND, ATOM, NOT, ONE, OR, VAR, ZERO, L, R, FiniteOrtholattice, Formula, Problem, interpret,
    iter_subformulas,
)
from orthologic.core.lattices import assignments, evaluate_many
from orthologic.core.terms import RESERVED_PREFIX
from orthologic.errors import NotGroundError, ResourceError, ShapeError

MAX_CLASSICAL_VARS = 20
MAX_LATTICE_VARS = 4
_BLOCK = 1 << 16
INJECTED_CONSTANT = RESERVED_PREFIX + "c0"  # same fallback constant grounding uses


@dataclass(frozen=True)
class OracleVerdict:
    holds: bool
    witness: dict | None = None

    def __bool__(self):
        return self.holds


def _bool_eval(f: Formula, cols: dict[str, np.ndarray], n: int) -> np.ndarray:
    val: dict[int, np.ndarray] = {}
    for g in iter_subformulas(f):
        k = g.kind
        if k == VAR:
            val[g.id] = cols[g.args[0]]
        elif k == NOT:
            val[g.id] = ~val[g.args[0].id]
        elif k == AND:
            val[g.id] = val[g.args[0].id] & val[g.args[1].id]
        elif k == OR:
            val[g.id] = val[g.args[0].id] | val[g.args[1].id]
        elif k == ZERO:
            val[g.id] = np.zeros(n, dtype=bool)
        elif k == ONE:
            val[g.id] = np.ones(n, dtype=bool)
        else:
            raise NotGroundError("predicate atoms must be grounded before evaluation")
    return np.broadcast_to(val[f.id], (n,))


def _names(p: Problem) -> list[str]:
    if p.has_atoms:
        raise NotGroundError("predicate atoms must be grounded before evaluation")
    return sorted(p.variables())


def classical_verdict(p: Problem, max_vars: int = MAX_CLASSICAL_VARS) -> OracleVerdict:
    """Does the goal hold in every {0,1} assignment satisfying all axioms?

    The witness of a failure is a countermodel mapping variable names to 0/1.
    """
    names = _names(p)
    k = len(names)
    if k > max_vars:
        raise ResourceError(f"{k} variables exceed the truth-table cap of {max_vars}")
    ineqs = [interpret(a) for a in p.axioms]
    glhs, grhs = interpret(p.goal)
    total = 1 << k
    for start in range(0, total, _BLOCK):
        idx = np.arange(start, min(total, start + _BLOCK), dtype=np.int64)
        n = len(idx)
        cols = {v: ((idx >> i) & 1).astype(bool) for i, v in enumerate(names)}
        ok = np.ones(n, dtype=bool)
        for lhs, rhs in ineqs:
            ok &= ~_bool_eval(lhs, cols, n) | _bool_eval(rhs, cols, n)
        bad = ok & _bool_eval(glhs, cols, n) & ~_bool_eval(grhs, cols, n)
        hits = np.flatnonzero(bad)
        if len(hits):
            row = int(idx[hits[0]])
            return OracleVerdict(False, {v: (row >> i) & 1 for i, v in enumerate(names)})
    return OracleVerdict(True)


def classical_satisfiable(inst, max_vars: int = MAX_CLASSICAL_VARS) -> OracleVerdict:
    """Truth-table satisfiability of a CNF instance; the witness is a model."""
    k = inst.num_vars
    if k > max_vars:
        raise ResourceError(f"{k} variables exceed the truth-table cap of {max_vars}")
    total = 1 << k
    for start in range(0, total, _BLOCK):
        idx = np.arange(start, min(total, start + _BLOCK), dtype=np.int64)
        bits = [((idx >> (v - 1)) & 1).astype(bool) for v in range(1, k + 1)]
        ok = np.ones(len(idx), dtype=bool)
        for c in inst.clauses:
            sat = np.zeros(len(idx), dtype=bool)
            for lit in c:
                sat |= bits[lit - 1] if lit > 0 else ~bits[-lit - 1]
            ok &= sat
        hits = np.flatnonzero(ok)
        if len(hits):
            row = int(idx[hits[0]])
            return OracleVerdict(True, {v: (row >> (v - 1)) & 1 for v in range(1, k + 1)})
    return OracleVerdict(False)


def ortholattice_verdict(p: Problem, lattice: FiniteOrtholattice,
                         max_vars: int = MAX_LATTICE_VARS) -> OracleVerdict:
    """Does the goal hold under every assignment into ``lattice`` satisfying the axioms?

    The witness of a failure maps variable names to element labels.
    """
    names = _names(p)
    if len(names) > max_vars:
        raise ResourceError(f"{len(names)} variables exceed the lattice cap of {max_vars}")
    env, n = assignments(lattice, names)
    leq = lattice.leq

    def holds(s):
        lhs, rhs = interpret(s)
        a = np.broadcast_to(evaluate_many(lattice, lhs, env), (n,))
        b = np.broadcast_to(evaluate_many(lattice, rhs, env), (n,))
        return leq[a, b]

    ok = np.ones(n, dtype=bool)
    for ax in p.axioms:
        ok &= holds(ax)
    bad = np.flatnonzero(ok & ~holds(p.goal))
    if len(bad):
        row = int(bad[0])
        return OracleVerdict(False, {v: lattice.label(int(env[v][row])) for v in names})
    return OracleVerdict(True)


# -- Datalog ---------------------------------------------------------------------

def _rules(program):
    rules = []
    for s in program.axioms:
        lefts = [f for f, side in s if side == L]
        rights = [f for f, side in s if side == R]
        if len(rights) != 1 or rights[0].kind != ATOM or len(lefts) > 1:
            raise ShapeError(f"{s} is not a Datalog rule")
        body, stack = [], list(lefts)
        while stack:
            g = stack.pop()
            if g.kind == AND:
                stack.extend(g.args)
            elif g.kind == ATOM:
                body.append(g.args)
            else:
                raise ShapeError(f"{s} is not a Datalog rule")
        rules.append((body, rights[0].args))
    return rules


def _is_var(t: str) -> bool:
    return t[:1].isupper()


def _match(body, facts, env):
    if not body:
        yield env
        return
    (pred, args), rest = body[0], body[1:]
    for fact in facts.get(pred, ()):
        e = dict(env)
        for t, c in zip(args, fact):
            if _is_var(t):
                if e.setdefault(t, c) != c:
                    break
            elif t != c:
                break
        else:
            yield from _match(rest, facts, e)


def datalog_model(program, extra_constants=()) -> set[tuple[str, tuple]]:
    """Least model by naive bottom-up iteration over the program's constants."""
    rules = _rules(program)
    consts = set(extra_constants)
    for body, head in rules:
        for _, args in body + [head]:
            consts.update(t for t in args if not _is_var(t))
    if not consts:
        declared = getattr(getattr(program, "signature", None), "constants", ())
        consts = {min(declared)} if declared else {INJECTED_CONSTANT}
    consts = sorted(consts)
    facts: dict[str, set[tuple]] = {}
    changed = True
    while changed:
        changed = False
        new = []
        for body, (pred, args) in rules:
            for env in _match(body, facts, {}):
                free = sorted({t for t in args if _is_var(t) and t not in env})
                for combo in itertools.product(consts, repeat=len(free)):
                    e = dict(env, **dict(zip(free, combo)))
                    new.append((pred, tuple(e.get(t, t) for t in args)))
        for pred, tup in new:
            if tup not in facts.setdefault(pred, set()):
                facts[pred].add(tup)
                changed = True
    return {(pred, t) for pred, ts in facts.items() for t in ts}


def datalog_naive(program, query: Formula) -> bool:
    """Membership of a ground atom in the least model of the program."""
    pred, args = query.args
    if any(_is_var(t) for t in args):
        raise ShapeError("the query must be a ground atom")
    return (pred, tuple(args)) in datalog_model(program, args)
