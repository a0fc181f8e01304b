"""Sampling check that provably equivalent formulas can replace each other."""

from __future__ import annotations

import random

from orthologic.core import L, R, And, Formula, Not, Or, Problem, Sequent, subformula_set, substitute


def _contexts(rng, phi: Formula, pool: list[Formula], n: int):
    for _ in range(n):
        f = phi
        for _ in range(rng.randint(0, 2)):
            g = rng.choice(pool)
            f = rng.choice((lambda a, b: And(a, b), lambda a, b: Or(b, a), lambda a, b: Not(a)))(f, g)
        members = [(f, rng.choice((L, R)))]
        if rng.random() < 0.7:
            members.append((rng.choice(pool), rng.choice((L, R))))
        s = Sequent(members)
        if not s.is_trivial:
            yield s


def admissible_substitution_check(p: Problem, phi: Formula, psi: Formula,
                                  samples: int = 30, seed=0) -> bool:
    """If phi and psi are provably equivalent under the axioms of ``p``, every
    sampled provable sequent containing phi stays provable with psi in its place.

    Vacuously true when the equivalence itself is not provable.
    """
    from orthologic.prover import is_provable

    def provable(goal: Sequent) -> bool:
        return is_provable(p.with_goal(goal))

    if not (provable(Sequent(((phi, L), (psi, R)))) and provable(Sequent(((psi, L), (phi, R))))):
        return True
    rng = random.Random(seed)
    pool = sorted(subformula_set(p.sequents()) | {phi, psi}, key=lambda f: f.id)
    for s in _contexts(rng, phi, pool, samples):
        if not provable(s):
            continue
        t = Sequent((substitute(f, {phi: psi}), side) for f, side in s)
        if not provable(t):
            return False
    return True
