"""Compiled loops for the fixpoint engine.

Same enumeration order as ``SearchSpace.parents`` and the same layered
fixpoint as ``_Exploration.solve``, on flat integer arrays.
"""

from __future__ import annotations

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

# rule codes shared with prover._RULE_CODES
HYP, AX, WEAKEN, LEFT_NOT, RIGHT_NOT, LEFT_AND, RIGHT_AND, LEFT_OR, RIGHT_OR, CUT, CONTRACT = range(11)

AVAILABLE = numba is not None


def _jit(fn):
    return numba.njit(cache=True, nogil=True)(fn) if AVAILABLE else fn


@_jit
def _grow(a, n):
    b = np.empty(max(2 * len(a), n, 16), dtype=a.dtype)
    b[:len(a)] = a
    return b


@_jit
def _pair(a, b, M, W):
    if a > b:
        a, b = b, a
    if a == b:
        return a * W + M
    return a * W + b


@_jit
def explore(roots, M, W, t_cnt, t_rule, t_k, X, axkeys, idx, max_nodes):
    """Breadth-first closure of ``roots`` under premise edges.

    Returns ``(status, keys, first, ep1, ep2, erule, ecut)``; status 1 means
    ``max_nodes`` was exceeded.
    """
    keys = np.empty(max(1024, len(roots)), dtype=np.int64)
    first = np.empty(len(keys) + 1, dtype=np.int64)
    ep1 = np.empty(4096, dtype=np.int64)
    ep2 = np.empty(4096, dtype=np.int64)
    erule = np.empty(4096, dtype=np.int8)
    ecut = np.empty(4096, dtype=np.int64)
    nk = 0
    for r in roots:
        if idx[r] < 0:
            idx[r] = nk
            keys[nk] = r
            nk += 1
    ne = 0
    nx = len(X)
    empty_key = M * W + M
    prem = np.empty(2, dtype=np.int64)
    # per-node scratch: up to 9 non-cut edges plus 2 per axiom formula
    cap = 9 + 2 * nx
    s_rule = np.empty(cap, dtype=np.int8)
    s_p = np.empty((cap, 2), dtype=np.int64)
    s_x = np.empty(cap, dtype=np.int64)
    i = 0
    while i < nk:
        if max_nodes >= 0 and nk > max_nodes:
            return 1, keys[:nk], first[:i + 1], ep1[:ne], ep2[:ne], erule[:ne], ecut[:ne]
        if i + 1 >= len(first):
            first = _grow(first, i + 2)
        first[i] = ne
        key = keys[i]
        lo = key // W
        hi = key % W
        m = 0
        j = np.searchsorted(axkeys, key)
        is_ax = j < len(axkeys) and axkeys[j] == key
        if lo == M:
            if is_ax:
                s_rule[m] = AX; s_p[m, 0] = -1; s_p[m, 1] = -1; s_x[m] = -1; m += 1
            for t in range(nx):
                x = X[t]
                s_rule[m] = CUT; s_p[m, 0] = _pair(2 * x + 1, M, M, W)
                s_p[m, 1] = _pair(2 * x, M, M, W); s_x[m] = x; m += 1
        elif hi == M:
            if is_ax:
                s_rule[m] = AX; s_p[m, 0] = -1; s_p[m, 1] = -1; s_x[m] = -1; m += 1
            s_rule[m] = WEAKEN; s_p[m, 0] = empty_key; s_p[m, 1] = -1; s_x[m] = -1; m += 1
            for a in range(t_cnt[lo]):
                s_rule[m] = t_rule[lo, a]
                s_p[m, 0] = _pair(t_k[lo, a, 0], M, M, W)
                s_p[m, 1] = _pair(t_k[lo, a, 1], M, M, W) if t_k[lo, a, 1] >= 0 else -1
                s_x[m] = -1; m += 1
            if t_cnt[lo] > 0 or nx > 0:
                s_rule[m] = CONTRACT; s_p[m, 0] = lo * W + lo; s_p[m, 1] = -1; s_x[m] = -1; m += 1
        elif lo == hi:
            for a in range(t_cnt[lo]):
                s_rule[m] = t_rule[lo, a]
                s_p[m, 0] = _pair(t_k[lo, a, 0], lo, M, W)
                s_p[m, 1] = _pair(t_k[lo, a, 1], lo, M, W) if t_k[lo, a, 1] >= 0 else -1
                s_x[m] = -1; m += 1
            for t in range(nx):
                x = X[t]
                s_rule[m] = CUT; s_p[m, 0] = _pair(lo, 2 * x + 1, M, W)
                s_p[m, 1] = _pair(2 * x, lo, M, W); s_x[m] = x; m += 1
        else:
            if lo % 2 == 0 and hi == lo + 1:
                s_rule[m] = HYP; s_p[m, 0] = -1; s_p[m, 1] = -1; s_x[m] = -1; m += 1
            if is_ax:
                s_rule[m] = AX; s_p[m, 0] = -1; s_p[m, 1] = -1; s_x[m] = -1; m += 1
            s_rule[m] = WEAKEN; s_p[m, 0] = lo * W + M; s_p[m, 1] = -1; s_x[m] = -1; m += 1
            s_rule[m] = WEAKEN; s_p[m, 0] = hi * W + M; s_p[m, 1] = -1; s_x[m] = -1; m += 1
            for side in range(2):
                c = lo if side == 0 else hi
                ctx = hi if side == 0 else lo
                for a in range(t_cnt[c]):
                    s_rule[m] = t_rule[c, a]
                    s_p[m, 0] = _pair(t_k[c, a, 0], ctx, M, W)
                    s_p[m, 1] = _pair(t_k[c, a, 1], ctx, M, W) if t_k[c, a, 1] >= 0 else -1
                    s_x[m] = -1; m += 1
            for t in range(nx):
                x = X[t]
                s_rule[m] = CUT; s_p[m, 0] = _pair(lo, 2 * x + 1, M, W)
                s_p[m, 1] = _pair(2 * x, hi, M, W); s_x[m] = x; m += 1
                s_rule[m] = CUT; s_p[m, 0] = _pair(hi, 2 * x + 1, M, W)
                s_p[m, 1] = _pair(2 * x, lo, M, W); s_x[m] = x; m += 1
        if ne + m > len(ep1):
            ep1 = _grow(ep1, ne + m)
            ep2 = _grow(ep2, ne + m)
            erule = _grow(erule, ne + m)
            ecut = _grow(ecut, ne + m)
        for e in range(m):
            for q in range(2):
                k = s_p[e, q]
                if k < 0:
                    prem[q] = -1
                    continue
                r = idx[k]
                if r < 0:
                    if nk >= len(keys):
                        keys = _grow(keys, nk + 1)
                    r = nk
                    idx[k] = r
                    keys[nk] = k
                    nk += 1
                prem[q] = r
            ep1[ne] = prem[0]
            if prem[1] >= 0 and prem[1] == prem[0]:
                ep2[ne] = -2
            else:
                ep2[ne] = prem[1]
            erule[ne] = s_rule[e]
            ecut[ne] = s_x[e]
            ne += 1
        i += 1
    if nk + 1 > len(first):
        first = _grow(first, nk + 1)
    first[nk] = ne
    return 0, keys[:nk], first[:nk + 1], ep1[:ne], ep2[:ne], erule[:ne], ecut[:ne]


@_jit
def solve(first, ep1, ep2, stop_at):
    """Layered least fixpoint; ``stop_at < 0`` runs to completion."""
    N = len(first) - 1
    E = len(ep1)
    target = np.empty(E, dtype=np.int64)
    for i in range(N):
        for e in range(first[i], first[i + 1]):
            target[e] = i
    head = np.full(N, -1, dtype=np.int64)
    nxt = np.empty(2 * E, dtype=np.int64)
    redge = np.empty(2 * E, dtype=np.int64)
    nr = 0
    remaining = np.zeros(E, dtype=np.int64)
    just = np.full(N, -1, dtype=np.int64)
    frontier = np.empty(N, dtype=np.int64)
    nf = 0
    for e in range(E):
        p1 = ep1[e]
        if p1 < 0:
            t = target[e]
            if just[t] < 0:
                just[t] = e
                frontier[nf] = t
                nf += 1
            continue
        for q in range(2):
            p = p1 if q == 0 else ep2[e]
            if p >= 0:
                remaining[e] += 1
                nxt[nr] = head[p]
                redge[nr] = e
                head[p] = nr
                nr += 1
    cand = np.full(N, -1, dtype=np.int64)
    touched = np.empty(N, dtype=np.int64)
    while nf > 0:
        if stop_at >= 0 and just[stop_at] >= 0:
            break
        nt = 0
        for f in range(nf):
            s = head[frontier[f]]
            while s >= 0:
                e = redge[s]
                remaining[e] -= 1
                if remaining[e] == 0:
                    t = target[e]
                    if just[t] < 0:
                        if cand[t] < 0:
                            touched[nt] = t
                            nt += 1
                            cand[t] = e
                        elif e < cand[t]:
                            cand[t] = e
                s = nxt[s]
        ts = np.sort(touched[:nt])
        for f in range(nt):
            t = ts[f]
            just[t] = cand[t]
            cand[t] = -1
            frontier[f] = t
        nf = nt
    return just
