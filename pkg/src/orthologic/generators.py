"""Random instances for tests and benchmarks."""

from __future__ import annotations

import random

from orthologic.core import (
    And, L, Not, Or, R, Formula, Problem, Sequent, Var, conj, disj,
)
from orthologic.proofkit.proofs import Proof, Rule


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_formula(rng, names=("x", "y", "z"), depth: int = 3) -> Formula:
    rng = _rng(rng)
    if depth <= 0 or rng.random() < 0.3:
        return Var(rng.choice(names))
    r = rng.random()
    if r < 0.25:
        return Not(random_formula(rng, names, depth - 1))
    a = random_formula(rng, names, depth - 1)
    b = random_formula(rng, names, depth - 1)
    return And(a, b) if r < 0.625 else Or(a, b)


def random_sequent(rng, names=("x", "y", "z"), depth: int = 2, size: int | None = None) -> Sequent:
    rng = _rng(rng)
    n = rng.choice((0, 1, 2, 2, 2)) if size is None else size
    while True:
        s = Sequent((random_formula(rng, names, depth), rng.choice((L, R))) for _ in range(n))
        if not s.is_trivial:
            return s


def random_problem(rng, names=("x", "y", "z"), n_axioms: int = 2, depth: int = 2) -> Problem:
    rng = _rng(rng)
    axioms = []
    for _ in range(n_axioms):
        s = random_sequent(rng, names, depth, size=rng.choice((1, 2, 2)))
        axioms.append(s)
    return Problem(tuple(axioms), random_sequent(rng, names, depth, size=rng.choice((1, 2, 2))))


def chain_problem(k: int) -> Problem:
    """Goal (x1 & ... & xk) |- (y1 | ... | yk) with no axioms.

    Not provable; the search has to visit the whole quadratic product of
    the conjunction and disjunction spines.  ``||S|| = 4k - 2``.
    """
    xs = [Var(f"x{i}") for i in range(1, k + 1)]
    ys = [Var(f"y{i}") for i in range(1, k + 1)]
    goal = Sequent(((conj(xs), L), (disj(ys), R)))
    return Problem((), goal)


def _pool_formula(rng, pool, names):
    if pool and rng.random() < 0.6:
        return rng.choice(pool)
    return random_formula(rng, names, 1)


def random_proof(rng, axioms=(), names=("x", "y"), max_nodes: int = 12,
                 min_foreign_cuts: int = 1, attempts: int = 200) -> Proof:
    """A valid proof built by forward rule application with gratuitous cuts.

    At least ``min_foreign_cuts`` cuts are on formulas that do not occur in
    any axiom.  Proof size (distinct nodes) stays within ``max_nodes``.
    """
    rng = _rng(rng)
    axioms = list(axioms)
    axf = {f for a in axioms for f, _ in a}
    for _ in range(attempts):
        pr = _grow(rng, axioms, names, max_nodes)
        if pr is None:
            continue
        n = _count_foreign(pr, axf)
        if n >= min_foreign_cuts:
            return pr
    raise RuntimeError("could not generate a proof with the requested cuts")


def _count_foreign(pr, axf):
    from orthologic.proofkit.proofs import iter_nodes

    return sum(1 for n in iter_nodes(pr) if n.rule == Rule.CUT and n.cut_formula not in axf)


def _size(pr):
    from orthologic.proofkit.proofs import dag_size

    return dag_size(pr)


def _grow(rng, axioms, names, max_nodes):
    pool: list[Proof] = []
    formulas: list[Formula] = []
    for a in axioms:
        pool.append(Proof(a, Rule.AX))
        formulas.extend(f for f, _ in a)
    for _ in range(2):
        f = random_formula(rng, names, 1)
        formulas.append(f)
        pool.append(Proof(Sequent(((f, L), (f, R))), Rule.HYP))
    best = None
    for _ in range(6 * max_nodes):
        new = _step(rng, pool, formulas, names)
        if new is None:
            continue
        if _size(new) > max_nodes:
            continue
        pool.append(new)
        formulas.extend(f for f, _ in new.conclusion)
        if best is None or _size(new) >= _size(best):
            best = new
    return best


def _step(rng, pool, formulas, names):
    r = rng.random()
    p = rng.choice(pool)
    members = list(p.conclusion)
    if r < 0.3:
        # cut on any formula that appears with opposite sides in two proofs
        rights = [(q, f) for q in pool for f, s in q.conclusion if s == R]
        rng.shuffle(rights)
        for q, f in rights[:20]:
            lefts = [t for t in pool if (f, L) in t.conclusion]
            if not lefts:
                continue
            t = rng.choice(lefts)
            c = Sequent(q.conclusion.without((f, R)).members + t.conclusion.without((f, L)).members)
            return Proof(c, Rule.CUT, (q, t), f)
        return None
    if r < 0.4:
        if len(members) > 1:
            return None
        g = _pool_formula(rng, formulas, names)
        return Proof(Sequent(members + [(g, rng.choice((L, R)))]), Rule.WEAKEN, (p,))
    if not members:
        return None
    a = rng.choice(members)
    ctx = p.conclusion.without(a).members
    f, side = a
    if r < 0.55:
        if side == L:
            return Proof(Sequent(ctx + ((Not(f), R),)), Rule.RIGHT_NOT, (p,))
        return Proof(Sequent(ctx + ((Not(f), L),)), Rule.LEFT_NOT, (p,))
    g = _pool_formula(rng, formulas, names)
    if r < 0.75:
        if side == L:
            h = And(f, g) if rng.random() < 0.5 else And(g, f)
            return Proof(Sequent(ctx + ((h, L),)), Rule.LEFT_AND, (p,))
        h = Or(f, g) if rng.random() < 0.5 else Or(g, f)
        return Proof(Sequent(ctx + ((h, R),)), Rule.RIGHT_OR, (p,))
    # binary rule: needs a partner sharing the context
    partners = []
    for q in pool:
        for b in q.conclusion:
            if b[1] == side and Sequent(ctx) == q.conclusion.without(b):
                partners.append((q, b[0]))
    if not partners:
        return None
    q, g = rng.choice(partners)
    if side == L:
        return Proof(Sequent(ctx + ((Or(f, g), L),)), Rule.LEFT_OR, (p, q))
    return Proof(Sequent(ctx + ((And(f, g), R),)), Rule.RIGHT_AND, (p, q))


# -- clause sets -----------------------------------------------------------------

def random_clause(rng, num_vars: int, width: int) -> frozenset:
    """``width`` distinct variables with random signs (fewer if there are not enough)."""
    rng = _rng(rng)
    vs = rng.sample(range(1, num_vars + 1), min(width, num_vars))
    return frozenset(v if rng.random() < 0.5 else -v for v in vs)


def random_cnf(rng, num_vars: int, num_clauses: int, width: int = 3, exact: bool = True):
    """Random clauses of ``width`` literals (of 1..width literals if not ``exact``)."""
    from orthologic.encoders import CnfInstance

    rng = _rng(rng)
    clauses = []
    for _ in range(num_clauses):
        w = width if exact else rng.randint(1, width)
        clauses.append(random_clause(rng, num_vars, w))
    return CnfInstance(num_vars, tuple(clauses))


def random_two_cnf(rng, max_vars: int = 12, max_clauses: int | None = None):
    rng = _rng(rng)
    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_clauses or 3 * n)
    return random_cnf(rng, n, m, width=2, exact=False)


def random_horn(rng, max_vars: int = 12, max_clauses: int = 30, max_width: int = 4):
    """Clauses with at most one positive literal."""
    from orthologic.encoders import CnfInstance

    rng = _rng(rng)
    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), min(n, rng.randint(1, max_width)))
        head = rng.choice(vs + [None]) if rng.random() < 0.85 else None
        clauses.append(frozenset(v if v == head else -v for v in vs))
    return CnfInstance(n, tuple(clauses))


def random_renaming(rng, num_vars: int) -> set[int]:
    rng = _rng(rng)
    return {v for v in range(1, num_vars + 1) if rng.random() < 0.5}


# -- Datalog ---------------------------------------------------------------------

def random_datalog(rng, max_constants: int = 4, max_predicates: int = 3, max_arity: int = 2,
                   max_rules: int = 10, n_facts: int | None = None):
    """A random Horn program: ground facts plus rules whose head variables occur in the body.

    Constant, predicate and rule counts are drawn uniformly up to the maxima.
    """
    from orthologic.core import Atom
    from orthologic.epr import EprProblem, Signature

    rng = _rng(rng)
    consts = [chr(ord("a") + i) for i in range(rng.randint(1, max_constants))]
    preds = {f"p{i}": rng.randint(1, max_arity) for i in range(rng.randint(1, max_predicates))}
    names = sorted(preds)
    varpool = ["X", "Y", "Z"]
    axioms = []
    for _ in range(n_facts if n_facts is not None else rng.randint(1, 5)):
        q = rng.choice(names)
        axioms.append(Sequent(((Atom(q, [rng.choice(consts) for _ in range(preds[q])]), R),)))
    for _ in range(rng.randint(0, max_rules)):
        body = []
        for _ in range(rng.randint(1, 2)):
            q = rng.choice(names)
            body.append(Atom(q, [rng.choice(varpool + consts[:1]) for _ in range(preds[q])]))
        bound = sorted({t for a in body for t in a.args[1] if t[:1].isupper()}) or consts[:1]
        h = rng.choice(names)
        head = Atom(h, [rng.choice(bound) for _ in range(preds[h])])
        s = Sequent(((conj(body), L), (head, R)))
        if not s.is_trivial:
            axioms.append(s)
    return EprProblem(Signature(preds, frozenset(consts)), tuple(axioms))


def random_ground_atom(rng, program):
    from orthologic.core import Atom

    rng = _rng(rng)
    sig = program.signature
    consts = sorted(sig.constants)
    q = rng.choice(sorted(sig.predicates))
    return Atom(q, [rng.choice(consts) for _ in range(sig.predicates[q])])


def random_epr(rng, n_constants: int = 2, n_predicates: int = 2, depth: int = 1,
               n_axioms: int = 2):
    """Small EPR problem over unary/binary atoms, axiom degree at most 2."""
    from orthologic.core import Atom
    from orthologic.epr import EprProblem, Signature

    rng = _rng(rng)
    consts = [chr(ord("a") + i) for i in range(n_constants)]
    preds = {f"q{i}": rng.randint(1, 2) for i in range(n_predicates)}
    names = sorted(preds)

    def atom(terms):
        q = rng.choice(names)
        return Atom(q, [rng.choice(terms) for _ in range(preds[q])])

    def formula(terms, d):
        if d <= 0 or rng.random() < 0.35:
            return atom(terms)
        r = rng.random()
        if r < 0.25:
            return Not(formula(terms, d - 1))
        a, b = formula(terms, d - 1), formula(terms, d - 1)
        return And(a, b) if r < 0.6 else Or(a, b)

    def sequent(terms):
        while True:
            s = Sequent((formula(terms, depth), rng.choice((L, R)))
                        for _ in range(rng.choice((1, 2, 2))))
            if not s.is_trivial:
                return s
    axioms = [sequent(["X", "Y"] + consts) for _ in range(n_axioms)]
    goal = sequent(["W"] + consts)
    return EprProblem(Signature(preds, frozenset(consts)), tuple(axioms), goal)
