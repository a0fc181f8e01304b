"""Cut elimination down to axiom cuts of rank at most 2.

Cuts are normalized innermost first.  A violating cut between two normal
proofs is pushed upwards by the classic case analysis:

* a premise already fits inside the conclusion: weaken it (covers Hyp)
* a premise ends in Weaken: cut above the weakening or drop the cut
* the cut formula is not principal on one side: permute the cut into the premises
* a premise ends in a Cut: rotate so the violating cut moves into the premise
  holding the cut formula, then rebuild the rotated axiom cut
* both sides principal: cut on the immediate subformulas

If the case analysis ever gets stuck, a rank-restricted proof search over the
subformulas of the conclusion and the axioms is used instead.  ``stats``
reports how often that happened.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable

from orthologic.core import L, R, Formula, Sequent, subformula_set
from orthologic.errors import ProofError, ResourceError
from orthologic.proofkit.checker import (
    SHAPE, axiom_formula_set, find_proof_error, format_path, match_logical, principals,
    rule_premise_options,
)
from orthologic.proofkit.proofs import LOGICAL_RULES, Proof, Rule, iter_nodes

NODE_CAP = 10 ** 6


@dataclass
class EliminationStats:
    cuts_reduced: int = 0
    nodes_built: int = 0
    fallbacks: int = 0


class _Stuck(Exception):
    pass


def _is_r1(p: Proof) -> bool:
    return p.rule == Rule.CUT and any(q.rule == Rule.AX for q in p.premises)


class _Eliminator:
    def __init__(self, axioms, cap: int):
        self.axioms = list(dict.fromkeys(axioms))
        self.axiom_set = set(self.axioms)
        self.axf = axiom_formula_set(self.axioms)
        self.cap = cap
        self.stats = EliminationStats()
        self.depth = 0

    # -- construction ------------------------------------------------------
    def mk(self, concl: Sequent, rule: Rule, premises=(), cut: Formula | None = None) -> Proof:
        self.stats.nodes_built += 1
        if self.stats.nodes_built > self.cap:
            raise ResourceError(f"cut elimination exceeded {self.cap} nodes")
        return Proof(concl, rule, tuple(premises), cut)

    def weaken_to(self, p: Proof, target: Sequent) -> Proof:
        c = p.conclusion
        if c == target:
            return p
        if not c.issubset(target):
            raise AssertionError(f"cannot weaken {c} to {target}")
        if len(c) == 0 and len(target) == 2:
            p = self.mk(Sequent(target.members[:1]), Rule.WEAKEN, (p,))
        return self.mk(target, Rule.WEAKEN, (p,))

    def normal_cut(self, a: Proof, b: Proof, psi: Formula) -> bool:
        if psi not in self.axf:
            return False
        return any(q.rule == Rule.AX or _is_r1(q) for q in (a, b))

    # -- driver ------------------------------------------------------------
    def normalize(self, pr: Proof) -> Proof:
        memo: dict[int, Proof] = {}
        for node in iter_nodes(pr):
            prem = tuple(memo[id(q)] for q in node.premises)
            if node.rule == Rule.CUT:
                a, b = prem
                if self.normal_cut(a, b, node.cut_formula):
                    out = node if prem == node.premises else \
                        self.mk(node.conclusion, Rule.CUT, prem, node.cut_formula)
                else:
                    self.stats.cuts_reduced += 1
                    out = self.cut(a, b, node.cut_formula, node.conclusion)
            elif all(x is y for x, y in zip(prem, node.premises)):
                out = node
            else:
                out = self.mk(node.conclusion, node.rule, prem)
            memo[id(node)] = out
        return memo[id(pr)]

    def cut(self, a: Proof, b: Proof, psi: Formula, target: Sequent) -> Proof:
        """A normal proof of ``target`` from normal proofs of ``G, psi^R`` and ``psi^L, D``."""
        try:
            out = self.reduce(a, b, psi)
        except (_Stuck, RecursionError):
            self.stats.fallbacks += 1
            out = self.fallback(a.conclusion.without((psi, R)).union(
                b.conclusion.without((psi, L))))
        return self.weaken_to(out, target)

    # -- the case analysis -------------------------------------------------
    def reduce(self, a: Proof, b: Proof, psi: Formula) -> Proof:
        self.depth += 1
        try:
            return self._reduce(a, b, psi)
        finally:
            self.depth -= 1

    def sub(self, a: Proof, b: Proof, psi: Formula, target: Sequent) -> Proof:
        return self.weaken_to(self.reduce(a, b, psi), target)

    def _reduce(self, a: Proof, b: Proof, psi: Formula) -> Proof:
        pr_, pl_ = (psi, R), (psi, L)
        gamma = a.conclusion.without(pr_)
        delta = b.conclusion.without(pl_)
        c = gamma.union(delta)
        # premise already inside the conclusion (includes Hyp and contraction)
        for q in (a, b):
            if q.conclusion.issubset(c):
                return self.weaken_to(q, c)
        if self.normal_cut(a, b, psi):
            return self.mk(c, Rule.CUT, (a, b), psi)
        # Weaken on either side
        if a.rule == Rule.WEAKEN:
            a1 = a.premises[0]
            if pr_ not in a1.conclusion:
                return self.weaken_to(a1, c)
            return self.sub(a1, b, psi, c)
        if b.rule == Rule.WEAKEN:
            b1 = b.premises[0]
            if pl_ not in b1.conclusion:
                return self.weaken_to(b1, c)
            return self.sub(a, b1, psi, c)
        # cut formula not principal: permute upwards
        if a.rule in LOGICAL_RULES:
            reading = next((r for r in principals(a) if r[0] != pr_), None)
            if reading is not None:
                return self.permute(a, reading, lambda q, t: self.sub(q, b, psi, t), delta)
        if b.rule in LOGICAL_RULES:
            reading = next((r for r in principals(b) if r[0] != pl_), None)
            if reading is not None:
                return self.permute(b, reading, lambda q, t: self.sub(a, q, psi, t), gamma)
        # a premise ends in an (axiom) cut: rotate
        if a.rule == Rule.CUT:
            return self.rotate_left(a, b, psi, c)
        if b.rule == Rule.CUT:
            return self.rotate_right(a, b, psi, c)
        if a.rule in LOGICAL_RULES and b.rule in LOGICAL_RULES:
            return self.principal(a, b, psi, c)
        raise _Stuck(f"no case applies to {a.rule} / {b.rule}")

    def permute(self, node: Proof, reading, cut_into, other: Sequent) -> Proof:
        x, _ctx, j = reading
        kids = rule_premise_options(node.rule, x)[j]
        prem = []
        for q, k in zip(node.premises, kids):
            prem.append(cut_into(q, Sequent((k,) + other.members)))
        return self.mk(Sequent((x,) + other.members), node.rule, prem)

    def rotate_left(self, a: Proof, b: Proof, psi: Formula, c: Sequent) -> Proof:
        # a = Cut(p, q) on phi; psi^R may come from either premise (or both)
        p, q = a.premises
        phi = a.cut_formula
        delta = b.conclusion.without((psi, L))
        if (psi, R) in p.conclusion.without((phi, R)):
            p = self.sub(p, b, psi, Sequent(((phi, R),) + delta.members))
        if (psi, R) in q.conclusion.without((phi, L)):
            q = self.sub(q, b, psi, Sequent(((phi, L),) + delta.members))
        return self.rebuild(p, q, phi, c)

    def rotate_right(self, a: Proof, b: Proof, psi: Formula, c: Sequent) -> Proof:
        p, q = b.premises
        phi = b.cut_formula
        gamma = a.conclusion.without((psi, R))
        if (psi, L) in p.conclusion.without((phi, R)):
            p = self.sub(a, p, psi, Sequent(gamma.members + ((phi, R),)))
        if (psi, L) in q.conclusion.without((phi, L)):
            q = self.sub(a, q, psi, Sequent(gamma.members + ((phi, L),)))
        return self.rebuild(p, q, phi, c)

    def rebuild(self, x: Proof, y: Proof, phi: Formula, c: Sequent) -> Proof:
        """Cut on an axiom formula ``phi`` that came from a normal cut; restore its rank."""
        nat = x.conclusion.without((phi, R)).union(y.conclusion.without((phi, L)))
        for q in (x, y):
            if q.conclusion.issubset(c):
                return self.weaken_to(q, c)
        if self.normal_cut(x, y, phi):
            return self.weaken_to(self.mk(nat, Rule.CUT, (x, y), phi), c)
        if self.depth > 400:
            raise _Stuck("rotation too deep")
        return self.weaken_to(self.reduce(x, y, phi), c)

    def principal(self, a: Proof, b: Proof, psi: Formula, c: Sequent) -> Proof:
        pr_, pl_ = (psi, R), (psi, L)
        ra = match_logical(a, pr_) if SHAPE[a.rule][1] == R else None
        rb = match_logical(b, pl_) if SHAPE[b.rule][1] == L else None
        if ra is None or rb is None:
            raise _Stuck("expected both cut formulas to be principal")
        gamma = a.conclusion.without(pr_)
        delta = b.conclusion.without(pl_)
        # contraction on psi: first cut the copy kept in the premises
        if pr_ in ra[0]:
            kids = rule_premise_options(a.rule, pr_)[ra[1]]
            prem = [self.sub(q, b, psi, Sequent((k,) + delta.members)) for q, k in zip(a.premises, kids)]
            a = self.mk(Sequent((pr_,) + delta.members), a.rule, prem)
            ra = (delta, ra[1])
            gamma = delta
        if pl_ in rb[0]:
            kids = rule_premise_options(b.rule, pl_)[rb[1]]
            prem = [self.sub(a, q, psi, Sequent((k,) + gamma.members)) for q, k in zip(b.premises, kids)]
            b = self.mk(Sequent((pl_,) + gamma.members), b.rule, prem)
            rb = (gamma, rb[1])
        if a.rule == Rule.RIGHT_NOT:
            # a: G, alpha^L    b: alpha^R, D
            alpha = psi.args[0]
            return self.sub(b.premises[0], a.premises[0], alpha, c)
        if a.rule == Rule.RIGHT_OR:
            j = ra[1]
            return self.sub(a.premises[0], b.premises[j], psi.args[j], c)
        if a.rule == Rule.RIGHT_AND:
            j = rb[1]
            return self.sub(a.premises[j], b.premises[0], psi.args[j], c)
        raise _Stuck(f"unexpected principal pair {a.rule} / {b.rule}")

    # -- fallback ------------------------------------------------------------
    def fallback(self, target: Sequent) -> Proof:
        pr = normal_search(target, self.axioms)
        if pr is None:
            raise AssertionError(f"no normal proof of {target}; input was not a derivation")
        return self.copy(pr)

    def copy(self, pr: Proof) -> Proof:
        self.stats.nodes_built += sum(1 for _ in iter_nodes(pr))
        if self.stats.nodes_built > self.cap:
            raise ResourceError(f"cut elimination exceeded {self.cap} nodes")
        return pr


def eliminate_cuts(pr: Proof, axioms: Iterable[Sequent], cap: int = NODE_CAP,
                   stats: EliminationStats | None = None) -> Proof:
    """Rewrite ``pr`` so every Cut is on an axiom formula and has rank 1 or 2."""
    axioms = list(axioms)
    err = find_proof_error(pr, axioms)
    if err is not None:
        raise ProofError(f"input is not a valid proof at {format_path(err[0])}: {err[1]}")
    el = _Eliminator(axioms, cap)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        out = el.normalize(pr)
    finally:
        sys.setrecursionlimit(old)
    if stats is not None:
        stats.cuts_reduced = el.stats.cuts_reduced
        stats.nodes_built = el.stats.nodes_built
        stats.fallbacks = el.stats.fallbacks
    return out


# -- rank-restricted proof search ------------------------------------------

def _splits(s: Sequent):
    m = s.members
    if not m:
        return [((), ())]
    if len(m) == 1:
        a = m[0]
        return [((a,), ()), ((), (a,)), ((a,), (a,))]
    a, b = m
    return [((a,), (b,)), ((b,), (a,))]


def normal_search(goal: Sequent, axioms: Iterable[Sequent]) -> Proof | None:
    """Search directly for a proof whose cuts are axiom cuts of rank 1 or 2.

    Nodes are ``("P", S)`` (any such proof of S) and ``("R1", S)`` (S is the
    conclusion of a cut with an axiom premise).  Least fixpoint over the
    subformulas of ``goal`` and the axioms.
    """
    axioms = list(dict.fromkeys(axioms))
    axset = set(axioms)
    axf = list(dict.fromkeys(f for a in axioms for f, _ in a))
    universe = subformula_set(list(axioms) + [goal])

    def parents(node):
        kind, s = node
        out = []
        if kind == "R1":
            for x in axf:
                for g, d in _splits(s):
                    left = Sequent(g + ((x, R),))
                    right = Sequent(((x, L),) + d)
                    if left in axset:
                        out.append((Rule.CUT, x, ((None, left), ("P", right))))
                    if right in axset:
                        out.append((Rule.CUT, x, (("P", left), (None, right))))
            return out
        m = s.members
        if s.is_trivial:
            out.append((Rule.HYP, None, ()))
        if s in axset:
            out.append((Rule.AX, None, ()))
        for a in m:
            out.append((Rule.WEAKEN, None, (("P", s.without(a)),)))
        for a in m:
            f, side = a
            for rule, (conn, rside) in SHAPE.items():
                if f.kind != conn or side != rside:
                    continue
                ctxs = [s.without(a)] + ([s] if len(m) == 1 else [])
                for ctx in ctxs:
                    for kids in rule_premise_options(rule, a):
                        out.append((rule, None, tuple(("P", Sequent(ctx.members + (k,))) for k in kids)))
        out.append(("R1", None, (("R1", s),)))
        for x in axf:
            for g, d in _splits(s):
                left = Sequent(g + ((x, R),))
                right = Sequent(((x, L),) + d)
                out.append((Rule.CUT, x, (("R1", left), ("P", right))))
                out.append((Rule.CUT, x, (("P", left), ("R1", right))))
        return out

    root = ("P", goal)
    if any(f not in universe for f, _ in goal):
        return None
    index = {root: 0}
    nodes = [root]
    edges = []  # (target, rule, cut, premise refs)
    i = 0
    while i < len(nodes):
        for rule, x, prem in parents(nodes[i]):
            refs = []
            for pn in prem:
                if pn[0] is None:
                    refs.append(pn)
                    continue
                j = index.get(pn)
                if j is None:
                    j = index[pn] = len(nodes)
                    nodes.append(pn)
                refs.append(j)
            edges.append((i, rule, x, refs))
        i += 1
    waiting: dict[int, list[int]] = {}
    remaining = []
    just: dict[int, int] = {}
    frontier = []
    for e, (t, rule, x, refs) in enumerate(edges):
        deps = {r for r in refs if isinstance(r, int)}
        remaining.append(len(deps))
        for r in deps:
            waiting.setdefault(r, []).append(e)
        if not deps and t not in just:
            just[t] = e
            frontier.append(t)
    while frontier and 0 not in just:
        nxt = []
        for n in frontier:
            for e in waiting.get(n, ()):
                remaining[e] -= 1
                t = edges[e][0]
                if remaining[e] == 0 and t not in just:
                    just[t] = e
                    nxt.append(t)
        frontier = nxt
    if 0 not in just:
        return None
    memo: dict[int, Proof] = {}
    stack = [(0, False)]
    while stack:
        n, ready = stack.pop()
        if n in memo:
            continue
        t, rule, x, refs = edges[just[n]]
        deps = [r for r in refs if isinstance(r, int)]
        if not ready:
            stack.append((n, True))
            stack.extend((r, False) for r in deps if r not in memo)
            continue
        if rule == "R1":
            memo[n] = memo[refs[0]]
            continue
        prem = tuple(memo[r] if isinstance(r, int) else Proof(r[1], Rule.AX) for r in refs)
        memo[n] = Proof(nodes[n][1], rule, prem, x)
    return memo[0]
