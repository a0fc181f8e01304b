"""Problem-level rewrites that keep the set of provable goals unchanged."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from orthologic.core import (
    AND, NOT, ONE, OR, VAR, ZERO, EMPTY, L, R, And, Formula, Not, One, Or, Problem, Sequent,
    Var, Zero, height, interpret, iter_subformulas, substitute, variables,
)
from orthologic.core.terms import RESERVED_PREFIX

BOUND_VAR = RESERVED_PREFIX + "v0"
TSEITIN_PREFIX = RESERVED_PREFIX + "t"


# -- axiom merging -------------------------------------------------------------

def _as_right(m):
    """An annotated formula equivalent to ``m`` with side R."""
    f, side = m
    if side == R:
        return f
    return f.args[0] if f.kind == NOT else Not(f)


def _combine(o1, o2):
    """The single member equivalent to having both ``{m, o1}`` and ``{m, o2}``."""
    if o1[1] == L and o2[1] == L:
        return (Or(o1[0], o2[0]), L)
    return (And(_as_right(o1), _as_right(o2)), R)


def member_key(m):
    """Strip outer negations by flipping the side: ``(~b)^R`` stands for ``b^L``."""
    f, side = m
    while f.kind == NOT:
        f, side = f.args[0], side.flip()
    return f, side


def merge_axioms(axioms: Iterable[Sequent]) -> list[Sequent]:
    """Merge axioms that share a member until no two axioms share one.

    ``{m, b1^R}`` and ``{m, b2^R}`` become ``{m, (b1 & b2)^R}``; two left
    partners merge into a disjunction; mixed partners go through negation.
    Members are compared up to outer negations (``(~b)^R`` matches ``b^L``),
    which covers rewriting ``a <= ~b`` into ``b <= ~a``.  Singleton axioms all
    share the implicit bound and merge the same way.  A singleton ``{m}``
    absorbs every ``{m, o}``, and the empty axiom absorbs everything.
    """
    axs = list(dict.fromkeys(axioms))
    if EMPTY in axs:
        return [EMPTY]
    changed = True
    while changed:
        changed = False
        singles = [a for a in axs if len(a) == 1]
        if len(singles) > 1:
            acc = singles[0].members[0]
            for s in singles[1:]:
                acc = _combine(acc, s.members[0])
            axs = [a for a in axs if len(a) != 1] + [Sequent((acc,))]
            changed = True
        single_keys = {member_key(a.members[0]) for a in axs if len(a) == 1}
        kept = [a for a in axs
                if len(a) != 2 or not any(member_key(m) in single_keys for m in a)]
        if len(kept) != len(axs):
            axs = kept
            changed = True
        owner: dict = {}
        for i, a in enumerate(axs):
            if len(a) != 2:
                continue
            for m in a:
                k = member_key(m)
                j = owner.get(k)
                if j is None:
                    owner[k] = (i, m)
                    continue
                j, m_other = j
                if j == i:
                    continue
                o1 = axs[j].without(m_other).members[0]
                o2 = a.without(m).members[0]
                merged = Sequent((k, _combine(o1, o2)))
                rest = [b for n, b in enumerate(axs) if n not in (i, j)]
                if not merged.is_trivial:
                    rest.insert(j, merged)
                axs = list(dict.fromkeys(rest))
                changed = True
                break
            if changed:
                break
    return axs


def merge_problem(p: Problem) -> Problem:
    return p.with_axioms(merge_axioms(p.axioms))


def _tree(f: Formula) -> int:
    memo: dict[int, int] = {}
    for g in iter_subformulas(f):
        memo[g.id] = 1 + sum(memo[c.id] for c in g.children)
    return memo[f.id]


def symbol_size(sequents: Iterable[Sequent]) -> int:
    """Symbols of the inequalities the sequents stand for, counted with repetition."""
    return sum(_tree(a) + _tree(b) for a, b in map(interpret, sequents))


# -- bounds ----------------------------------------------------------------------

def eliminate_bounds(p: Problem) -> Problem:
    """Replace 0 by ``v & ~v`` and 1 by ``v | ~v`` for one reserved variable ``v``."""
    if not p.has_bounds:
        return p
    v = Var(BOUND_VAR)
    mapping = {Zero: And(v, Not(v)), One: Or(v, Not(v))}

    def tr(s: Sequent) -> Sequent:
        return Sequent((substitute(f, mapping), side) for f, side in s)
    return Problem(tuple(tr(a) for a in p.axioms), tr(p.goal), p.signature)


# -- renaming --------------------------------------------------------------------

@dataclass(frozen=True)
class RenameSet:
    vars: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vars", frozenset(self.vars))

    def __contains__(self, name):
        return name in self.vars

    def __iter__(self):
        return iter(sorted(self.vars))

    def __len__(self):
        return len(self.vars)


def _chain(f: Formula):
    """``(k, leaf)`` for ``f = ~^k leaf``."""
    k = 0
    while f.kind == NOT:
        f = f.args[0]
        k += 1
    return k, f


def rename_formula(f: Formula, names) -> Formula:
    memo: dict[int, Formula] = {}
    for g in iter_subformulas(f):
        k, leaf = _chain(g)
        if leaf.kind == VAR and leaf.name in names:
            # complement: x <-> ~x, and generally flip the parity of the chain
            k = k + 1 if k % 2 == 0 else k - 1
            out = leaf
            for _ in range(k):
                out = Not(out)
        elif g.kind == NOT:
            out = Not(memo[g.args[0].id])
        elif g.kind == AND:
            out = And(memo[g.args[0].id], memo[g.args[1].id])
        elif g.kind == OR:
            out = Or(memo[g.args[0].id], memo[g.args[1].id])
        else:
            out = g
        memo[g.id] = out
    return memo[f.id]


def rename(p: Problem, v) -> Problem:
    """Complement every literal occurrence of the variables in ``v``."""
    names = v.vars if isinstance(v, RenameSet) else frozenset(v)
    if not names:
        return p

    def tr(s: Sequent) -> Sequent:
        return Sequent((rename_formula(f, names), side) for f, side in s)
    return Problem(tuple(tr(a) for a in p.axioms), tr(p.goal), p.signature)


# -- negation normal form and Tseitin --------------------------------------------

def nnf(f: Formula) -> Formula:
    """Push negations to the leaves with double negation and De Morgan."""
    memo: dict[tuple[int, bool], Formula] = {}
    stack = [(f, False, False)]
    while stack:
        g, neg, ready = stack.pop()
        key = (g.id, neg)
        if key in memo:
            continue
        kind = g.kind
        if kind == NOT:
            inner = (g.args[0].id, not neg)
            if inner in memo:
                memo[key] = memo[inner]
            else:
                stack.append((g, neg, True))
                stack.append((g.args[0], not neg, False))
            continue
        if kind in (AND, OR):
            kids = [(c.id, neg) for c in g.args]
            if all(k in memo for k in kids):
                a, b = (memo[k] for k in kids)
                conj_ = (kind == AND) != neg
                memo[key] = And(a, b) if conj_ else Or(a, b)
            else:
                stack.append((g, neg, True))
                for c in reversed(g.args):
                    stack.append((c, neg, False))
            continue
        if not neg:
            memo[key] = g
        elif kind == ZERO:
            memo[key] = One
        elif kind == ONE:
            memo[key] = Zero
        else:
            memo[key] = Not(g)
    return memo[(f.id, False)]


def _is_lit(f: Formula) -> bool:
    return f.is_literal or f.kind in (ZERO, ONE)


class _Namer:
    def __init__(self, taken: set[str]):
        self.taken = taken
        self.counter = 0
        self.names: dict[int, Formula] = {}   # defined expression id -> name
        self.defs: list[tuple[Formula, Formula]] = []  # (name, expression)

    def name_for(self, e: Formula) -> Formula:
        c = self.names.get(e.id)
        if c is not None:
            return c
        while f"{TSEITIN_PREFIX}{self.counter}" in self.taken:
            self.counter += 1
        c = Var(f"{TSEITIN_PREFIX}{self.counter}")
        self.counter += 1
        self.names[e.id] = c
        self.defs.append((c, e))
        return c

    def flatten(self, f: Formula) -> Formula:
        """Name every strict subexpression over literals, innermost-leftmost first."""
        memo: dict[int, Formula] = {}
        for g in iter_subformulas(f):
            if _is_lit(g):
                memo[g.id] = g
                continue
            a, b = (memo[c.id] for c in g.args)
            e = And(a, b) if g.kind == AND else Or(a, b)
            memo[g.id] = e if g is f else self.name_for(e)
        return memo[f.id]


def tseitin_shape(s: Sequent) -> bool:
    """One of {a, (b & c)}, {a, (b | c)}, {a, b}, {a}, {} with literals a, b, c.

    A lone ``{(b & c)}`` or ``{(b | c)}`` is accepted as well.
    """
    heights = [1 if _is_lit(f) else height(f) for f, _ in s]
    return all(h <= 2 for h in heights) and sum(h == 2 for h in heights) <= 1


def tseitin(p: Problem) -> tuple[Problem, dict[str, Formula]]:
    """Flatten ``p`` by naming subexpressions with fresh reserved variables.

    Returns the new problem and a map from each fresh name to the formula of
    the original problem it stands for.
    """
    taken = set()
    for f in p.formulas():
        taken |= variables(f)
    namer = _Namer(taken)
    new_seqs = []
    for s in p.sequents():
        members = [(namer.flatten(nnf(f)), side) for f, side in s]
        # at most one member may keep a connective
        if len(members) == 2 and not _is_lit(members[0][0]) and not _is_lit(members[1][0]):
            members[1] = (namer.name_for(members[1][0]), members[1][1])
        new_seqs.append(Sequent(members))
    if not namer.defs and all(a == b for a, b in zip(new_seqs, p.sequents())):
        return p, {}
    defs = []
    for c, e in namer.defs:
        defs.append(Sequent(((c, L), (e, R))))
        defs.append(Sequent(((e, L), (c, R))))
    axioms = tuple(new_seqs[:-1]) + tuple(defs)
    out = Problem(tuple(a for a in axioms if not a.is_trivial), new_seqs[-1], p.signature)
    # expand names back to original formulas
    expansion: dict[Formula, Formula] = {}
    for c, e in namer.defs:
        expansion[c] = substitute(e, expansion)
    return out, {c.name: f for c, f in expansion.items()}
