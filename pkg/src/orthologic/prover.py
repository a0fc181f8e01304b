"""Decision procedure for sequents derivable from ground axioms.

The search space is the set of sequents over annotated subformulas of the
goal and the axioms.  Annotated formulas are coded as ``2 * i + side`` where
``i`` is a dense local index; ``M = 2k`` stands for "no formula".  A sequent
is keyed by the integer ``lo * (M + 1) + hi`` with ``lo <= hi``.  Besides the
ordinary set-sequents there is one auxiliary node per annotated formula ``a``,
the doubled key ``(a, a)``: it collects rule instances whose context equals
their principal formula, which is how a one-member sequent is concluded with
contraction under set semantics.
"""

from __future__ import annotations

import logging
import time
from array import array
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from orthologic.core import (
    AND, ATOM, NOT, ONE, OR, VAR, ZERO, EMPTY, L, R, Formula, Problem, Sequent,
    sequent_size, subformula_set,
)
from orthologic import _kernels
from orthologic.errors import NotGroundError, NotPreprocessedError, ResourceError
from orthologic.proofkit.proofs import Proof, Rule

log = logging.getLogger(__name__)

CONTRACT = "contract"  # internal edge: singleton {a} <- doubled node (a, a)

ENGINES = ("fixpoint", "backward")


class Verdict(str, Enum):
    PROVABLE = "Provable"
    NOT_PROVABLE = "NotProvable"

    def __bool__(self):
        return self is Verdict.PROVABLE

    def __str__(self):
        return self.value


@dataclass
class Stats:
    visitedCount: int = 0
    expandedEdges: int = 0
    elapsed: float = 0.0
    maxParents: int = 0
    sizeBound: int = 0
    parentBound: int = 0

    def as_dict(self) -> dict:
        return {
            "visitedCount": self.visitedCount,
            "expandedEdges": self.expandedEdges,
            "elapsed": self.elapsed,
            "maxParents": self.maxParents,
            "sizeBound": self.sizeBound,
            "parentBound": self.parentBound,
        }


@dataclass
class ProveResult:
    verdict: Verdict
    proof: Proof | None = None
    stats: Stats = field(default_factory=Stats)

    def __bool__(self):
        return bool(self.verdict)


@dataclass(frozen=True)
class RuleInstance:
    rule: Rule
    premises: tuple[Sequent, ...]
    cut_formula: Formula | None = None


def check_searchable(p: Problem):
    for g in subformula_set(p.sequents()):
        if g.kind == ATOM:
            raise NotGroundError("problem contains predicate atoms; ground it first")
        if g.kind in (ZERO, ONE):
            raise NotPreprocessedError("problem contains 0/1; run eliminate_bounds first")


class SearchSpace:
    """Integer-coded view of the sequents relevant to one problem."""

    def __init__(self, p: Problem, extra_goals=()):
        self.problem = p
        extra_goals = tuple(extra_goals)
        self.formulas: list[Formula] = sorted(subformula_set(p.sequents() + extra_goals),
                                              key=lambda f: f.id)
        # bounds are stated for all goals sharing this space
        self.size = p.size + (sequent_size(extra_goals) if extra_goals else 0)
        self.local = {f.id: i for i, f in enumerate(self.formulas)}
        k = len(self.formulas)
        self.M = M = 2 * k
        self.W = M + 1
        self.empty_key = M * self.W + M
        self.axiom_keys = {self.key_of(a) for a in p.axioms}
        self.ax_formulas = [self.local[f.id] for f in p.axiom_formulas()]
        self._templates = [self._template(c) for c in range(M)]

    # -- coding ------------------------------------------------------------
    def code(self, f: Formula, side) -> int:
        return 2 * self.local[f.id] + int(side)

    def annotated(self, c: int):
        return self.formulas[c >> 1], (R if c & 1 else L)

    def pair(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        if a == b:
            return a * self.W + self.M
        return a * self.W + b

    def key_of(self, s: Sequent) -> int:
        codes = [self.code(f, side) for f, side in s]
        codes += [self.M] * (2 - len(codes))
        return self.pair(*codes)

    def sequent_of(self, key: int) -> Sequent:
        lo, hi = divmod(key, self.W)
        return Sequent(self.annotated(c) for c in (lo, hi) if c != self.M)

    def is_doubled(self, key: int) -> bool:
        lo, hi = divmod(key, self.W)
        return lo == hi != self.M

    def base_key(self, key: int) -> int:
        """The set-sequent a key stands for (doubled nodes map to their singleton)."""
        lo, hi = divmod(key, self.W)
        return lo * self.W + self.M if lo == hi else key

    def all_keys(self):
        M, W = self.M, self.W
        yield M * W + M
        for a in range(M):
            yield a * W + M
            for b in range(a + 1, M):
                yield a * W + b

    @property
    def size_bound(self) -> int:
        return 4 * self.size ** 2

    @property
    def parent_bound(self) -> int:
        return 7 + 4 * len(self.problem.axioms)

    # -- rule instances ------------------------------------------------------
    def _template(self, c: int):
        f = self.formulas[c >> 1]
        right = c & 1
        kind = f.kind
        if kind == NOT:
            j = self.local[f.args[0].id]
            return [(Rule.RIGHT_NOT, (2 * j,))] if right else [(Rule.LEFT_NOT, (2 * j + 1,))]
        if kind in (AND, OR):
            j1 = self.local[f.args[0].id]
            j2 = self.local[f.args[1].id]
            if kind == AND and not right:
                return [(Rule.LEFT_AND, (2 * j1,)), (Rule.LEFT_AND, (2 * j2,))]
            if kind == AND:
                return [(Rule.RIGHT_AND, (2 * j1 + 1, 2 * j2 + 1))]
            if not right:
                return [(Rule.LEFT_OR, (2 * j1, 2 * j2))]
            return [(Rule.RIGHT_OR, (2 * j1 + 1,)), (Rule.RIGHT_OR, (2 * j2 + 1,))]
        return []

    def _decompose(self, c: int, ctx: int, out: list):
        pair = self.pair
        for rule, kids in self._templates[c]:
            out.append((rule, tuple(pair(k, ctx) for k in kids), -1))

    def parents(self, key: int) -> list[tuple]:
        """Rule instances concluding ``key`` as ``(rule, premise keys, cut index)``.

        Order: Hyp, Ax, Weaken, rules on the first member, rules on the second
        member, then Cuts in axiom-formula order.
        """
        M, W, pair = self.M, self.W, self.pair
        lo, hi = divmod(key, W)
        out: list[tuple] = []
        if lo == M:
            if key in self.axiom_keys:
                out.append((Rule.AX, (), -1))
            for x in self.ax_formulas:
                out.append((Rule.CUT, (pair(2 * x + 1, M), pair(2 * x, M)), x))
        elif hi == M:
            if key in self.axiom_keys:
                out.append((Rule.AX, (), -1))
            out.append((Rule.WEAKEN, (self.empty_key,), -1))
            self._decompose(lo, M, out)
            if self._templates[lo] or self.ax_formulas:
                out.append((CONTRACT, (lo * W + lo,), -1))
        elif lo == hi:
            self._decompose(lo, lo, out)
            for x in self.ax_formulas:
                out.append((Rule.CUT, (pair(lo, 2 * x + 1), pair(2 * x, lo)), x))
        else:
            if not lo & 1 and hi == lo + 1:
                out.append((Rule.HYP, (), -1))
            if key in self.axiom_keys:
                out.append((Rule.AX, (), -1))
            out.append((Rule.WEAKEN, (lo * W + M,), -1))
            out.append((Rule.WEAKEN, (hi * W + M,), -1))
            self._decompose(lo, hi, out)
            self._decompose(hi, lo, out)
            for x in self.ax_formulas:
                out.append((Rule.CUT, (pair(lo, 2 * x + 1), pair(2 * x, hi)), x))
                out.append((Rule.CUT, (pair(hi, 2 * x + 1), pair(2 * x, lo)), x))
        return out

    def set_parents(self, key: int) -> list[tuple]:
        """Parents of a set-sequent with contraction instances inlined."""
        out = []
        for e in self.parents(key):
            if e[0] == CONTRACT:
                out.extend(self.parents(e[1][0]))
            else:
                out.append(e)
        return out


def possible_parents(s: Sequent, p: Problem) -> list[RuleInstance]:
    """All rule instances within the search space whose conclusion is ``s``."""
    space = SearchSpace(p)
    if any(f.id not in space.local for f, _ in s):
        raise ValueError(f"{s} is outside the search space of the problem")
    out = []
    for rule, prem, x in space.set_parents(space.key_of(s)):
        out.append(RuleInstance(
            rule, tuple(space.sequent_of(k) for k in prem),
            space.formulas[x] if x >= 0 else None))
    return out


# -- engines ----------------------------------------------------------------

class _Exploration:
    """Backward-reachable part of the space with edges in flat arrays."""

    def __init__(self, space: SearchSpace, roots, max_nodes: int | None = None):
        index: dict[int, int] = {}
        keys: list[int] = []
        for r in roots:
            if r not in index:
                index[r] = len(keys)
                keys.append(r)
        first = array("l")
        ep1 = array("l")
        ep2 = array("l")
        erule: list = []
        ecut = array("l")
        parents = space.parents
        i = 0
        while i < len(keys):
            if max_nodes is not None and len(keys) > max_nodes:
                raise ResourceError(f"search exceeded {max_nodes} nodes")
            first.append(len(erule))
            for rule, prem, x in parents(keys[i]):
                ids = []
                for k in prem:
                    j = index.get(k)
                    if j is None:
                        j = index[k] = len(keys)
                        keys.append(k)
                    ids.append(j)
                # ep2 == -2 marks a binary rule whose two premises coincide
                ep1.append(ids[0] if ids else -1)
                ep2.append(-1 if len(ids) < 2 else (-2 if ids[1] == ids[0] else ids[1]))
                erule.append(rule)
                ecut.append(x)
            i += 1
        first.append(len(erule))
        self.space = space
        self.index = index
        self.keys = keys
        self.first = first
        self.ep1, self.ep2, self.erule, self.ecut = ep1, ep2, erule, ecut

    def stats(self) -> Stats:
        sp = self.space
        per_set: dict[int, int] = {}
        visited = 0
        for i, k in enumerate(self.keys):
            b = sp.base_key(k)
            n = self.first[i + 1] - self.first[i]
            if b == k:
                visited += 1
            per_set[b] = per_set.get(b, 0) + n
        # the contraction edge itself is bookkeeping, not a rule instance
        maxp = 0
        for i, k in enumerate(self.keys):
            if sp.base_key(k) == k:
                n = per_set[k]
                if self.first[i + 1] > self.first[i] and self.erule[self.first[i + 1] - 1] == CONTRACT:
                    n -= 1
                maxp = max(maxp, n)
        return Stats(visitedCount=visited, expandedEdges=len(self.erule), maxParents=maxp,
                     sizeBound=sp.size_bound, parentBound=sp.parent_bound)

    def solve(self, stop_at: int | None = None):
        """Layered least fixpoint.  Returns per-node justification edge (-1 if unproven).

        A node proven in round r+1 has a rule instance whose premises were all
        proven in rounds <= r; among those the first in enumeration order wins.
        """
        N = len(self.keys)
        E = len(self.erule)
        first, ep1, ep2 = self.first, self.ep1, self.ep2
        target = array("l", bytes(8 * E)) if E else array("l")
        for i in range(N):
            for e in range(first[i], first[i + 1]):
                target[e] = i
        head = array("l", [-1]) * N
        nxt = array("l")
        redge = array("l")
        remaining = array("l", bytes(8 * E)) if E else array("l")
        just = array("l", [-1]) * N
        frontier = []
        for e in range(E):
            p1 = ep1[e]
            if p1 < 0:
                t = target[e]
                if just[t] < 0:
                    just[t] = e
                    frontier.append(t)
                continue
            for p in (p1, ep2[e]):
                if p >= 0:
                    remaining[e] += 1
                    nxt.append(head[p])
                    redge.append(e)
                    head[p] = len(redge) - 1
        while frontier:
            if stop_at is not None and just[stop_at] >= 0:
                break
            cand: dict[int, int] = {}
            for n in frontier:
                s = head[n]
                while s >= 0:
                    e = redge[s]
                    remaining[e] -= 1
                    if remaining[e] == 0:
                        t = target[e]
                        if just[t] < 0:
                            prev = cand.get(t)
                            if prev is None or e < prev:
                                cand[t] = e
                    s = nxt[s]
            frontier = []
            for t in sorted(cand):
                just[t] = cand[t]
                frontier.append(t)
        return just

    def justification(self, just):
        keys, erule, ep1, ep2, ecut = self.keys, self.erule, self.ep1, self.ep2, self.ecut
        index = self.index

        def get(key):
            e = just[index[key]]
            if e < 0:
                return None
            p1, p2 = ep1[e], ep2[e]
            if p1 < 0:
                prem = ()
            elif p2 == -1:
                prem = (keys[p1],)
            else:
                prem = (keys[p1], keys[p1 if p2 == -2 else p2])
            return erule[e], prem, ecut[e]
        return get


# same numbering as the compiled kernels
_RULE_CODES = (Rule.HYP, Rule.AX, Rule.WEAKEN, Rule.LEFT_NOT, Rule.RIGHT_NOT, Rule.LEFT_AND,
               Rule.RIGHT_AND, Rule.LEFT_OR, Rule.RIGHT_OR, Rule.CUT, CONTRACT)
_RCODE = {r: i for i, r in enumerate(_RULE_CODES)}
_C_HYP, _C_AX, _C_WEAKEN, _C_CUT, _C_CONTRACT = (
    _RCODE[Rule.HYP], _RCODE[Rule.AX], _RCODE[Rule.WEAKEN], _RCODE[Rule.CUT], _RCODE[CONTRACT])

# dense key -> node index tables above this many entries fall back to the dict engine
DENSE_LIMIT = 1 << 25
_CHUNK = 1 << 14


def _ranges(starts, lens):
    """Concatenation of ``range(s, s + n)`` for each pair, vectorized."""
    total = int(lens.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    offs = np.repeat(np.cumsum(lens) - lens, lens)
    return np.arange(total, dtype=np.int64) - offs + np.repeat(starts, lens)


class _FastExploration:
    """Array version of :class:`_Exploration`.

    Expands whole breadth-first layers at once.  Nodes, edges and their order
    are exactly those of the sequential exploration, so justifications and
    reconstructed proofs agree with it.
    """

    def __init__(self, space: SearchSpace, root: int, max_nodes: int | None = None,
                 backend: str = "auto"):
        if backend == "auto":
            backend = "compiled" if _kernels.AVAILABLE else "numpy"
        if backend == "compiled" and not _kernels.AVAILABLE:
            raise ValueError("the compiled backend needs numba")
        self.backend = backend
        self.space = space
        M, W = space.M, space.W
        self.idx = np.full((M + 1) * W, -1, dtype=np.int32)
        t_cnt = np.zeros(M + 1, dtype=np.int64)
        t_rule = np.zeros((M + 1, 2), dtype=np.int64)
        t_k = np.full((M + 1, 2, 2), -1, dtype=np.int64)
        for c, tmpl in enumerate(space._templates):
            t_cnt[c] = len(tmpl)
            for a, (rule, kids) in enumerate(tmpl):
                t_rule[c, a] = _RCODE[rule]
                t_k[c, a, :len(kids)] = kids
        self._t = (t_cnt, t_rule, t_k)
        self._X = np.array(space.ax_formulas, dtype=np.int64)
        self._axkeys = np.array(sorted(space.axiom_keys), dtype=np.int64)
        roots = np.atleast_1d(np.asarray(root, dtype=np.int64))
        _, at = np.unique(roots, return_index=True)
        roots = roots[np.sort(at)]
        if backend == "compiled":
            status, keys, first, ep1, ep2, rule, ecut = _kernels.explore(
                roots, M, W, t_cnt, t_rule, t_k, self._X, self._axkeys, self.idx,
                -1 if max_nodes is None else max_nodes)
            if status:
                raise ResourceError(f"search exceeded {max_nodes} nodes")
            self.keys, self.first, self.ep1, self.ep2 = keys, first, ep1, ep2
            self.rule, self.ecut = rule, ecut
            self.target = np.repeat(np.arange(len(keys), dtype=np.int64), np.diff(first))
            return

        key_chunks = [roots]
        self.idx[roots] = np.arange(len(roots), dtype=np.int32)
        n_keys = len(roots)
        cols = {k: [] for k in ("node", "rule", "p1", "p2", "x")}
        done = 0
        frontier = key_chunks[0]
        while len(frontier):
            new_chunks = []
            for s in range(0, len(frontier), _CHUNK):
                part = frontier[s:s + _CHUNK]
                node, rule, pk1, pk2, x = self._expand(part, done)
                done += len(part)
                prem = np.stack([pk1, pk2], axis=1).ravel()
                prem = prem[prem >= 0]
                fresh = prem[self.idx[prem] < 0]
                if len(fresh):
                    uniq, first = np.unique(fresh, return_index=True)
                    uniq = uniq[np.argsort(first, kind="stable")]
                    self.idx[uniq] = np.arange(n_keys, n_keys + len(uniq), dtype=np.int32)
                    n_keys += len(uniq)
                    new_chunks.append(uniq)
                    if max_nodes is not None and n_keys > max_nodes:
                        raise ResourceError(f"search exceeded {max_nodes} nodes")
                p1 = np.where(pk1 >= 0, self.idx[np.maximum(pk1, 0)], -1)
                p2 = np.where(pk2 >= 0, self.idx[np.maximum(pk2, 0)], -1)
                # -2 marks a binary rule whose two premises coincide
                p2 = np.where((p2 >= 0) & (p2 == p1), -2, p2)
                for k, v in zip(("node", "rule", "p1", "p2", "x"), (node, rule, p1, p2, x)):
                    cols[k].append(v)
            frontier = np.concatenate(new_chunks) if new_chunks else np.zeros(0, dtype=np.int64)
            key_chunks.extend(new_chunks)
        self.keys = np.concatenate(key_chunks)
        cat = {k: (np.concatenate(v) if v else np.zeros(0, dtype=np.int64)) for k, v in cols.items()}
        self.target = cat["node"].astype(np.int64)
        self.rule = cat["rule"].astype(np.int8)
        self.ep1 = cat["p1"].astype(np.int64)
        self.ep2 = cat["p2"].astype(np.int64)
        self.ecut = cat["x"].astype(np.int64)
        N = len(self.keys)
        self.first = np.zeros(N + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.target, minlength=N), out=self.first[1:])

    def _expand(self, K, base):
        """Parent edges of keys ``K`` (node ids ``base, base+1, ..``) in enumeration order."""
        sp = self.space
        M, W = sp.M, sp.W
        t_cnt, t_rule, t_k = self._t
        X = self._X
        node = np.arange(base, base + len(K), dtype=np.int64)
        lo, hi = np.divmod(K, W)
        empty = lo == M
        single = (hi == M) & ~empty
        doubled = (lo == hi) & ~empty
        pair2 = (lo < hi) & (hi < M)
        is_ax = np.isin(K, self._axkeys)
        none = np.int64(-1)
        parts = []

        def pair(a, b):
            a, b = np.minimum(a, b), np.maximum(a, b)
            return np.where(a == b, a * W + M, a * W + b)

        def add(mask, g, s, rule, p1, p2, x=None):
            n = int(np.count_nonzero(mask))
            if not n:
                return
            full = lambda v: np.broadcast_to(v, mask.shape)[mask] if np.ndim(v) else np.full(n, v)
            parts.append((node[mask], np.full(n, g), full(s), full(rule), full(p1), full(p2),
                          full(-1 if x is None else x)))

        add(pair2 & (lo % 2 == 0) & (hi == lo + 1), 0, 0, _C_HYP, none, none)
        add(is_ax & ~doubled, 1, 0, _C_AX, none, none)
        add(single, 2, 0, _C_WEAKEN, sp.empty_key, none)
        add(pair2, 2, 0, _C_WEAKEN, lo * W + M, none)
        add(pair2, 2, 1, _C_WEAKEN, hi * W + M, none)
        for g, c, ctx, mask in ((3, lo, np.where(single, M, hi), ~empty),
                                (4, hi, lo, pair2)):
            cc = np.minimum(c, M)
            for a in range(2):
                m = mask & (t_cnt[cc] > a)
                k1, k2 = t_k[cc, a, 0], t_k[cc, a, 1]
                p2 = np.where(k2 >= 0, pair(np.maximum(k2, 0), ctx), -1)
                add(m, g, a, t_rule[cc, a], pair(np.maximum(k1, 0), ctx), p2)
        add(single & ((t_cnt[np.minimum(lo, M)] > 0) | (len(X) > 0)), 5, 0, _C_CONTRACT,
            lo * W + lo, none)
        if len(X):
            nx_ = len(X)
            i = np.arange(nx_, dtype=np.int64)

            def cuts(mask, s_of, a_of, b_of):
                sel = np.flatnonzero(mask)
                if not len(sel):
                    return
                nn = np.repeat(node[sel], nx_)
                ii = np.tile(i, len(sel))
                xx = np.tile(X, len(sel))
                l_, h_ = np.repeat(lo[sel], nx_), np.repeat(hi[sel], nx_)
                parts.append((nn, np.full(len(nn), 6), s_of(ii), np.full(len(nn), _C_CUT),
                              a_of(l_, h_, xx), b_of(l_, h_, xx), xx))
            cuts(empty, lambda ii: ii,
                 lambda l_, h_, x: pair(2 * x + 1, M), lambda l_, h_, x: pair(2 * x, M))
            cuts(doubled, lambda ii: ii,
                 lambda l_, h_, x: pair(l_, 2 * x + 1), lambda l_, h_, x: pair(2 * x, l_))
            cuts(pair2, lambda ii: 2 * ii,
                 lambda l_, h_, x: pair(l_, 2 * x + 1), lambda l_, h_, x: pair(2 * x, h_))
            cuts(pair2, lambda ii: 2 * ii + 1,
                 lambda l_, h_, x: pair(h_, 2 * x + 1), lambda l_, h_, x: pair(2 * x, l_))
        if not parts:
            z = np.zeros(0, dtype=np.int64)
            return z, z, z, z, z
        nd, g, s, rule, p1, p2, x = (np.concatenate([p[j] for p in parts]) for j in range(7))
        span = 2 * len(X) + 2
        order = np.argsort(((nd - base) * 7 + g) * span + s, kind="stable")
        return nd[order], rule[order], p1[order], p2[order], x[order]

    def stats(self) -> Stats:
        sp = self.space
        lo, hi = np.divmod(self.keys, sp.W)
        doubled = (lo == hi) & (lo < sp.M)
        n = np.diff(self.first)
        per = np.where(doubled, 0, n)
        if doubled.any():
            base = self.idx[lo[doubled] * sp.W + sp.M].astype(np.int64)
            np.add.at(per, base, n[doubled])
        last = np.maximum(self.first[1:] - 1, 0)
        contract = (n > 0) & (self.rule[last] == _C_CONTRACT) if len(self.rule) else n < 0
        per = per - contract
        plain = ~doubled
        return Stats(visitedCount=int(plain.sum()), expandedEdges=len(self.rule),
                     maxParents=int(per[plain].max()) if plain.any() else 0,
                     sizeBound=sp.size_bound, parentBound=sp.parent_bound)

    def solve(self, stop_at: int | None = None):
        if self.backend == "compiled":
            return _kernels.solve(self.first, self.ep1, self.ep2, -1 if stop_at is None else stop_at)
        N, E = len(self.keys), len(self.rule)
        ep1, ep2, target = self.ep1, self.ep2, self.target
        just = np.full(N, -1, dtype=np.int64)
        has1 = ep1 >= 0
        has2 = ep2 >= 0
        remaining = has1.astype(np.int64) + has2
        eids = np.arange(E, dtype=np.int64)
        occ_node = np.concatenate([ep1[has1], ep2[has2]])
        occ_edge = np.concatenate([eids[has1], eids[has2]])
        order = np.argsort(occ_node, kind="stable")
        rev_edges = occ_edge[order]
        rev_ptr = np.zeros(N + 1, dtype=np.int64)
        np.cumsum(np.bincount(occ_node, minlength=N), out=rev_ptr[1:])

        def settle(cand):
            t = target[cand]
            keep = just[t] < 0
            cand, t = cand[keep], t[keep]
            if not len(cand):
                return np.zeros(0, dtype=np.int64)
            o = np.lexsort((cand, t))
            t_u, pos = np.unique(t[o], return_index=True)
            just[t_u] = cand[o][pos]
            return t_u

        frontier = settle(eids[~has1])
        while len(frontier):
            if stop_at is not None and just[stop_at] >= 0:
                break
            es = rev_edges[_ranges(rev_ptr[frontier], rev_ptr[frontier + 1] - rev_ptr[frontier])]
            np.subtract.at(remaining, es, 1)
            frontier = settle(np.unique(es[remaining[es] == 0]))
        return just

    def justification(self, just):
        keys, ep1, ep2, ecut, rule = self.keys, self.ep1, self.ep2, self.ecut, self.rule
        idx = self.idx

        def get(key):
            i = idx[key]
            e = just[i] if i >= 0 else -1
            if e < 0:
                return None
            p1, p2 = ep1[e], ep2[e]
            if p1 < 0:
                prem = ()
            elif p2 == -1:
                prem = (int(keys[p1]),)
            else:
                prem = (int(keys[p1]), int(keys[p1 if p2 == -2 else p2]))
            return _RULE_CODES[rule[e]], prem, int(ecut[e])
        return get


def _backward(space: SearchSpace, goal: int, max_nodes: int | None = None):
    """Memoized depth-first search in the style of the classic recursive procedure.

    Runs on an explicit stack.  A failure that depended on a sequent still on
    the stack is tentative: it is committed when that ancestor fails as well
    and discarded when the ancestor succeeds.
    """
    PROVEN, FAILED, ONSTACK, TENTATIVE = 1, 2, 3, 4
    state: dict[int, int] = {}
    depth_of: dict[int, int] = {}
    tlow: dict[int, int] = {}
    just: dict[int, tuple] = {}
    tried: dict[int, int] = {}
    tent: list[int] = []
    parents = space.parents

    def frame(key):
        for n, edge in enumerate(parents(key)):
            tried[key] = max(tried.get(key, 0), n + 1)
            ok = True
            for p in edge[1]:
                if not (yield p):
                    ok = False
                    break
            if ok:
                return edge
        return None

    # stack entries: [key, generator, depth, low, tentative mark]
    stack = []

    def push(key):
        if max_nodes is not None and len(tried) > max_nodes:
            raise ResourceError(f"search exceeded {max_nodes} nodes")
        d = len(stack)
        state[key] = ONSTACK
        depth_of[key] = d
        tried.setdefault(key, 0)
        stack.append([key, frame(key), d, d, len(tent)])

    push(goal)
    send = None
    result = False
    while stack:
        fr = stack[-1]
        try:
            req = fr[1].send(send)
        except StopIteration as stop:
            edge = stop.value
            stack.pop()
            key, _, d, low, mark = fr
            if edge is not None:
                state[key] = PROVEN
                just[key] = edge
                for k in tent[mark:]:
                    del state[k]
                    tlow.pop(k, None)
                del tent[mark:]
                send = True
            else:
                if low < d:
                    state[key] = TENTATIVE
                    tlow[key] = low
                    tent.append(key)
                    if stack:
                        stack[-1][3] = min(stack[-1][3], low)
                else:
                    for k in tent[mark:]:
                        state[k] = FAILED
                        tlow.pop(k, None)
                    del tent[mark:]
                    state[key] = FAILED
                send = False
            if not stack:
                result = send
            continue
        st = state.get(req)
        if st == PROVEN:
            send = True
        elif st == FAILED:
            send = False
        elif st == ONSTACK:
            fr[3] = min(fr[3], depth_of[req])
            send = False
        elif st == TENTATIVE:
            fr[3] = min(fr[3], tlow[req])
            send = False
        else:
            push(req)
            send = None

    visited = {space.base_key(k) for k in tried}
    per_set: dict[int, int] = {}
    for k, n in tried.items():
        b = space.base_key(k)
        per_set[b] = per_set.get(b, 0) + n
    stats = Stats(visitedCount=len(visited), expandedEdges=sum(tried.values()),
                  maxParents=max(per_set.values(), default=0),
                  sizeBound=space.size_bound, parentBound=space.parent_bound)

    def get(key):
        e = just.get(key)
        if e is None:
            return None
        return e[0], e[1], e[2]
    return result, get, stats


def _reconstruct(space: SearchSpace, root: int, get) -> Proof:
    """Rebuild a proof DAG from per-key justifications."""
    memo: dict[int, Proof] = {}
    stack = [(root, False)]
    while stack:
        key, ready = stack.pop()
        if key in memo:
            continue
        j = get(key)
        if j is None:
            raise AssertionError("reconstruction reached an unproven sequent")
        rule, prem, x = j
        if rule == CONTRACT:
            rule, prem, x = get(prem[0])
        if not ready:
            stack.append((key, True))
            for p in prem:
                if p not in memo:
                    stack.append((p, False))
            continue
        memo[key] = Proof(space.sequent_of(key), rule, tuple(memo[p] for p in prem),
                          space.formulas[x] if x >= 0 else None)
    return memo[root]


def prove(p: Problem, engine: str = "fixpoint", want_proof: bool = True,
          max_nodes: int | None = None) -> ProveResult:
    """Decide whether the goal of ``p`` is derivable from its axioms."""
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    check_searchable(p)
    t0 = time.perf_counter()
    space = SearchSpace(p)
    goal = space.key_of(p.goal)
    if engine == "fixpoint":
        if (space.M + 1) * space.W <= DENSE_LIMIT:
            ex = _FastExploration(space, goal, max_nodes)
        else:
            ex = _Exploration(space, [goal], max_nodes)
        just = ex.solve(stop_at=0)
        ok = just[0] >= 0
        stats = ex.stats()
        get = ex.justification(just) if ok else None
    else:
        ok, get, stats = _backward(space, goal, max_nodes)
    proof = _reconstruct(space, goal, get) if ok and want_proof else None
    stats.elapsed = time.perf_counter() - t0
    log.debug("prove: %s in %.3fs, visited=%d edges=%d", ok, stats.elapsed,
              stats.visitedCount, stats.expandedEdges)
    return ProveResult(Verdict.PROVABLE if ok else Verdict.NOT_PROVABLE, proof, stats)


def decide_many(axioms, goals, engine: str = "fixpoint",
                max_nodes: int | None = None) -> tuple[list[bool], Stats]:
    """Decide several goals against the same axioms.

    The fixpoint engine explores from all goals at once and solves the shared
    graph a single time; verdicts equal those of separate ``prove`` calls.
    """
    goals = list(goals)
    base = Problem(tuple(axioms), EMPTY)
    for g in goals:
        check_searchable(base.with_goal(g))
    if engine != "fixpoint":
        res = [prove(base.with_goal(g), engine=engine, want_proof=False, max_nodes=max_nodes)
               for g in goals]
        st = max((r.stats for r in res), key=lambda t: t.visitedCount, default=Stats())
        return [bool(r) for r in res], st
    t0 = time.perf_counter()
    space = SearchSpace(base, goals)
    roots = [space.key_of(g) for g in goals]
    if (space.M + 1) * space.W <= DENSE_LIMIT:
        ex = _FastExploration(space, roots, max_nodes)
        pos = [int(ex.idx[k]) for k in roots]
    else:
        ex = _Exploration(space, roots, max_nodes)
        pos = [ex.index[k] for k in roots]
    just = ex.solve()
    stats = ex.stats()
    stats.elapsed = time.perf_counter() - t0
    return [bool(just[i] >= 0) for i in pos], stats


def provable_set(p: Problem) -> set[Sequent]:
    """Every sequent of the search space derivable from the axioms."""
    check_searchable(p)
    space = SearchSpace(p)
    ex = _Exploration(space, space.all_keys())
    just = ex.solve()
    return {space.sequent_of(k) for i, k in enumerate(ex.keys)
            if just[i] >= 0 and not space.is_doubled(k)}


def is_provable(p: Problem, engine: str = "fixpoint") -> bool:
    return bool(prove(p, engine=engine, want_proof=False).verdict)
