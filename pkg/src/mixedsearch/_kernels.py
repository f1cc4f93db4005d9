"""Bit-mask kernels for the exhaustive solvers.

Vertex sets and edge sets are encoded as ``int64`` masks. The fugitive-space
routine is written in the numba-compatible subset of Python so the same source
serves as the jitted kernel and as the interpreted fallback (which also
accepts unbounded Python ints). The fixpoint and cover kernels have separate
vectorised numpy fallbacks.

Set ``MIXEDSEARCH_DISABLE_NUMBA=1`` to force the numpy path.
"""
from __future__ import annotations

import os
import types

import numpy as np

_DISABLED = os.environ.get("MIXEDSEARCH_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by environment")
    from numba import njit
    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_ENABLED = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


BACKEND = "numba" if NUMBA_ENABLED else "numpy"


def _low_bit_index(v):
    i = 0
    while (v >> i) & 1 == 0:
        i += 1
    return i


def _is_single_bit(v):
    return v != 0 and (v & (v - 1)) == 0


def _clear_mask(inc, eu, ev, s, s2):
    added = s2 & ~s
    if not _is_single_bit(added):
        return added & 0
    y = _low_bit_index(added)
    out = added & 0
    rest = inc[y]
    j = 0
    while rest != 0:
        if rest & 1:
            other = ev[j] if eu[j] == y else eu[j]
            if (s >> other) & 1:
                out |= (added & 0 | 1) << j
        rest >>= 1
        j += 1
    return out


def _closure(inc, eu, ev, start, banned, blocked):
    """Edges reachable from ``start`` along non-banned edges through unblocked vertices."""
    reached = start
    seen_v = blocked
    frontier = start
    while frontier != 0:
        verts = frontier & 0
        j = 0
        f = frontier
        while f != 0:
            if f & 1:
                verts |= (1 << eu[j]) | (1 << ev[j])
            f >>= 1
            j += 1
        verts &= ~seen_v
        seen_v |= verts
        grow = frontier & 0
        v = 0
        while verts != 0:
            if verts & 1:
                grow |= inc[v]
            verts >>= 1
            v += 1
        grow &= ~banned
        frontier = grow & ~reached
        reached |= grow
    return reached


def _inside(eu, ev, m, vmask):
    out = vmask & 0
    for j in range(m):
        if (vmask >> eu[j]) & 1 and (vmask >> ev[j]) & 1:
            out |= 1 << j
    return out


def _accessible(inc, eu, ev, m, s, s2, e, literal, trivial):
    """Edges reachable from edge ``e`` by an (S, S')-avoiding pathway, minus edges inside S'."""
    blocked = s & s2
    added = s2 & ~s
    removed = s & ~s2
    zero = s & 0
    one = zero + 1
    sigma = -1
    x = -1
    y = -1
    if _is_single_bit(added) and _is_single_bit(removed):
        x = _low_bit_index(removed)
        y = _low_bit_index(added)
        both = inc[x] & inc[y]
        if both != 0:
            sigma = _low_bit_index(both)
    if sigma < 0:
        reach = _closure(inc, eu, ev, one << e, zero, blocked)
        if not trivial:
            # e itself needs a genuine detour e, f, ..., e
            back = zero
            for w in (eu[e], ev[e]):
                if not (blocked >> w) & 1 and (inc[w] & ~(one << e)) != 0:
                    back = one
            if back == 0:
                reach &= ~(one << e)
        return reach & ~_inside(eu, ev, m, s2)
    smask = one << sigma
    if e != sigma:
        reach = _closure(inc, eu, ev, one << e, smask, blocked)
        enter = inc[x] | inc[y] if literal else inc[x]
        if reach & enter & ~smask != 0:
            reach |= smask
        if not trivial:
            back = zero
            for w in (eu[e], ev[e]):
                if not (blocked >> w) & 1 and (inc[w] & ~(one << e) & ~smask) != 0:
                    back = one
            if back == 0:
                reach &= ~(one << e)
    else:
        exits = (inc[x] | inc[y]) if literal else inc[y]
        start = exits & ~smask
        reach = _closure(inc, eu, ev, start, smask, blocked)
        back_ok = reach != 0 if literal else (reach & inc[x]) != 0
        if back_ok:
            reach |= smask
    return reach & ~_inside(eu, ev, m, s2)


def _fugitive_space(inc, eu, ev, m, s, s2, e, literal, trivial):
    one = (s & 0) + 1
    acc = _accessible(inc, eu, ev, m, s, s2, e, literal, trivial)
    clr = _clear_mask(inc, eu, ev, s, s2)
    return ((one << e) & ~clr) | acc


def _fsp_table(inc, eu, ev, m, src, dst, literal, trivial):
    out = np.zeros((src.shape[0], m), dtype=np.int64)
    for j in range(src.shape[0]):
        for e in range(m):
            out[j, e] = _fugitive_space(inc, eu, ev, m, src[j], dst[j], e, literal, trivial)
    return out


def _clear_table(inc, eu, ev, src, dst):
    out = np.zeros(src.shape[0], dtype=np.int64)
    for j in range(src.shape[0]):
        out[j] = _clear_mask(inc, eu, ev, src[j], dst[j])
    return out


def _avms_fixpoint_loop(src, dst, fsp, nstates):
    m = fsp.shape[1]
    win = np.zeros(nstates, dtype=np.int64)
    changed = True
    while changed:
        new = win.copy()
        for j in range(src.shape[0]):
            s = src[j]
            lose = ~win[dst[j]]
            for e in range(m):
                if (fsp[j, e] & lose) == 0:
                    new[s] |= np.int64(1) << e
        changed = False
        for i in range(nstates):
            if new[i] != win[i]:
                changed = True
        win = new
    return win


def _avms_fixpoint_numpy(src, dst, fsp, nstates):
    m = fsp.shape[1]
    weights = np.left_shift(np.int64(1), np.arange(m, dtype=np.int64))
    win = np.zeros(nstates, dtype=np.int64)
    while True:
        ok = (fsp & ~win[dst][:, None]) == 0
        gained = (ok * weights).sum(axis=1)
        new = win.copy()
        np.bitwise_or.at(new, src, gained)
        if np.array_equal(new, win):
            return win
        win = new


def _mavms_fixpoint_loop(src, dst, clr, fsp, nstates, m):
    ncl = 1 << m
    win = np.zeros((ncl, nstates), dtype=np.int64)
    changed = True
    while changed:
        new = win.copy()
        for c in range(ncl):
            for j in range(src.shape[0]):
                c2 = c | clr[j]
                lose = ~win[c2, dst[j]] | c2
                s = src[j]
                for e in range(m):
                    if (c >> e) & 1:
                        continue
                    if (fsp[j, e] & lose) == 0:
                        new[c, s] |= np.int64(1) << e
        changed = False
        for c in range(ncl):
            for i in range(nstates):
                if new[c, i] != win[c, i]:
                    changed = True
        win = new
    return win


def _mavms_fixpoint_numpy(src, dst, clr, fsp, nstates, m):
    ncl = 1 << m
    cl = np.arange(ncl, dtype=np.int64)
    weights = np.left_shift(np.int64(1), np.arange(m, dtype=np.int64))
    # positions whose fugitive edge was already cleared are never winning
    allowed = ~cl
    win = np.zeros((ncl, nstates), dtype=np.int64)
    while True:
        new = win.copy()
        for j in range(src.shape[0]):
            c2 = cl | clr[j]
            lose = ~win[c2, dst[j]] | c2
            ok = (fsp[j][None, :] & lose[:, None]) == 0
            gained = (ok * weights).sum(axis=1) & allowed
            new[:, src[j]] |= gained
        if np.array_equal(new, win):
            return win
        win = new


def _min_cover_loop(elements, n):
    best = n + 1
    for mask in range(1 << n):
        size = 0
        v = mask
        while v:
            size += v & 1
            v >>= 1
        if size >= best:
            continue
        hit = True
        for b in elements:
            if b & mask == 0:
                hit = False
                break
        if hit:
            best = size
    return best


def _min_cover_numpy(elements, n):
    masks = np.arange(1 << n, dtype=np.int64)
    hits = np.ones(masks.shape[0], dtype=bool)
    for b in elements:
        hits &= (masks & b) != 0
    sizes = np.zeros(masks.shape[0], dtype=np.int64)
    for i in range(n):
        sizes += (masks >> i) & 1
    return int(sizes[hits].min())


fugitive_space_py = _fugitive_space
accessible_py = _accessible
clear_py = _clear_mask


def _jit_all(funcs):
    """Compile ``funcs`` in a private namespace so the interpreted originals stay pure Python."""
    ns = {"np": np}
    for f in funcs:
        clone = types.FunctionType(f.__code__, ns, f.__name__, f.__defaults__)
        clone.__module__ = f.__module__
        clone.__qualname__ = f.__qualname__
        ns[f.__name__] = njit(cache=True)(clone)
    return ns


if NUMBA_ENABLED:
    _jitted = _jit_all([
        _low_bit_index, _is_single_bit, _clear_mask, _closure, _inside, _accessible, _fugitive_space,
        _fsp_table, _clear_table, _avms_fixpoint_loop, _mavms_fixpoint_loop, _min_cover_loop,
    ])
    fugitive_space_jit = _jitted["_fugitive_space"]
    fsp_table = _jitted["_fsp_table"]
    clear_table = _jitted["_clear_table"]
    avms_fixpoint = _jitted["_avms_fixpoint_loop"]
    mavms_fixpoint = _jitted["_mavms_fixpoint_loop"]
    min_cover = _jitted["_min_cover_loop"]
else:
    fugitive_space_jit = _fugitive_space
    fsp_table = _fsp_table
    clear_table = _clear_table
    avms_fixpoint = _avms_fixpoint_numpy
    mavms_fixpoint = _mavms_fixpoint_numpy
    min_cover = _min_cover_numpy

NUMPY_IMPLEMENTATIONS = {
    "fsp_table": _fsp_table,
    "avms_fixpoint": _avms_fixpoint_numpy,
    "mavms_fixpoint": _mavms_fixpoint_numpy,
    "min_cover": _min_cover_numpy,
}


def graph_arrays(g):
    """``(inc, eu, ev)`` int64 arrays describing a graph for the kernels."""
    if g.m > 62:
        raise ValueError("kernel masks hold at most 62 edges")
    inc = np.array(g.incidence, dtype=np.int64) if g.n else np.zeros(0, dtype=np.int64)
    eu = np.array([g.index(u) for u, _ in g.edges], dtype=np.int64)
    ev = np.array([g.index(v) for _, v in g.edges], dtype=np.int64)
    return inc, eu, ev
