"""Bitset kernels behind the hot loops: closures, monotonicity sweeps, composition.

A relation on {0, ..., n-1} is stored as n uint64 rows; bit j of row i means
the pair (i, j) is present.  All kernels exist twice: a loop form compiled
with numba's @njit and a vectorized pure-numpy form.  The active backend is
chosen once at import time from the SPLITPRE_BACKEND environment variable
("numba" or "numpy"); the default is numba when it is importable.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


# ---------------------------------------------------------------------------
# Loop forms (numba sources)
# ---------------------------------------------------------------------------

def _closure_loops(rows: np.ndarray) -> np.ndarray:
    # Warshall over bitmask rows: once node k is reachable from i, everything
    # reachable from k is merged into row i.
    n = rows.shape[0]
    out = rows.copy()
    for k in range(n):
        bit = np.uint64(1) << np.uint64(k)
        for i in range(n):
            if out[i] & bit:
                out[i] |= out[k]
    return out


def _is_transitive_loops(rows: np.ndarray) -> bool:
    n = rows.shape[0]
    for i in range(n):
        row = rows[i]
        for j in range(n):
            if (row >> np.uint64(j)) & np.uint64(1):
                if rows[j] & ~row:
                    return False
    return True


def _monotone_mask_loops(rows: np.ndarray, p: int) -> np.ndarray:
    # For every function f: {0..w-1} -> {0..p-1}, encoded base-p with index 0
    # least significant, decide whether (i, j) in R implies f(i) <= f(j).
    w = rows.shape[0]
    total = 1
    for _ in range(w):
        total *= p
    out = np.empty(total, dtype=np.bool_)
    vals = np.empty(w, dtype=np.int64)
    for code in range(total):
        c = code
        for u in range(w):
            vals[u] = c % p
            c //= p
        ok = True
        for u in range(w):
            row = rows[u]
            if row == np.uint64(0):
                continue
            for v in range(w):
                if (row >> np.uint64(v)) & np.uint64(1):
                    if vals[u] > vals[v]:
                        ok = False
                        break
            if not ok:
                break
        out[code] = ok
    return out


def _compose_loops(r_rows: np.ndarray, m: int, n: int,
                   p_rows: np.ndarray, k: int) -> np.ndarray:
    # Working universe [0..m) source zone, [m..m+n) middle, [m+n..m+n+k) target.
    # r (an m->n arrow) already sits on [0..m+n); p (n->k) is shifted up by m.
    w = m + n + k
    work = np.zeros(w, dtype=np.uint64)
    for i in range(m + n):
        work[i] = r_rows[i]
    for i in range(n + k):
        work[m + i] |= p_rows[i] << np.uint64(m)
    for kk in range(w):
        bit = np.uint64(1) << np.uint64(kk)
        for i in range(w):
            if work[i] & bit:
                work[i] |= work[kk]
    # Restrict to source + target zones and squeeze the middle out of the masks.
    low = (np.uint64(1) << np.uint64(m)) - np.uint64(1)
    high = (np.uint64(1) << np.uint64(k)) - np.uint64(1)
    out = np.empty(m + k, dtype=np.uint64)
    for i in range(m):
        row = work[i]
        out[i] = (row & low) | (((row >> np.uint64(m + n)) & high) << np.uint64(m))
    for j in range(k):
        row = work[m + n + j]
        out[m + j] = (row & low) | (((row >> np.uint64(m + n)) & high) << np.uint64(m))
    return out


# ---------------------------------------------------------------------------
# Vectorized forms (pure-numpy fallback)
# ---------------------------------------------------------------------------

def _closure_numpy(rows: np.ndarray) -> np.ndarray:
    out = rows.copy()
    n = out.shape[0]
    for k in range(n):
        reach = ((out >> np.uint64(k)) & np.uint64(1)).astype(bool)
        out[reach] |= out[k]
    return out


def _is_transitive_numpy(rows: np.ndarray) -> bool:
    return bool(np.array_equal(_closure_numpy(rows), rows))


def _monotone_mask_numpy(rows: np.ndarray, p: int) -> np.ndarray:
    w = rows.shape[0]
    total = p ** w
    mask = np.ones(total, dtype=np.bool_)
    if w == 0:
        return mask
    codes = np.arange(total, dtype=np.int64)
    digits = (codes[:, None] // (p ** np.arange(w, dtype=np.int64))) % p
    for u in range(w):
        row = int(rows[u])
        for v in range(w):
            if (row >> v) & 1:
                mask &= digits[:, u] <= digits[:, v]
    return mask


def _compose_numpy(r_rows: np.ndarray, m: int, n: int,
                   p_rows: np.ndarray, k: int) -> np.ndarray:
    w = m + n + k
    work = np.zeros(w, dtype=np.uint64)
    work[:m + n] = r_rows
    work[m:] |= p_rows << np.uint64(m)
    work = _closure_numpy(work)
    low = np.uint64((1 << m) - 1)
    high = np.uint64((1 << k) - 1)
    kept = np.concatenate([work[:m], work[m + n:]])
    return (kept & low) | (((kept >> np.uint64(m + n)) & high) << np.uint64(m))


# ---------------------------------------------------------------------------
# Backend selection
# ---------------------------------------------------------------------------

_NUMPY_IMPL = SimpleNamespace(
    name="numpy",
    closure_rows=_closure_numpy,
    is_transitive_rows=_is_transitive_numpy,
    monotone_mask=_monotone_mask_numpy,
    compose_rows=_compose_numpy,
)

if njit is not None:
    _NUMBA_IMPL = SimpleNamespace(
        name="numba",
        closure_rows=njit(cache=True)(_closure_loops),
        is_transitive_rows=njit(cache=True)(_is_transitive_loops),
        monotone_mask=njit(cache=True)(_monotone_mask_loops),
        compose_rows=njit(cache=True)(_compose_loops),
    )
else:  # pragma: no cover
    _NUMBA_IMPL = None


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if _NUMBA_IMPL is not None else ("numpy",)


def get_impl(name: str) -> SimpleNamespace:
    """Return the kernel namespace for an explicit backend name."""
    if name == "numpy":
        return _NUMPY_IMPL
    if name == "numba":
        if _NUMBA_IMPL is None:
            raise RuntimeError("numba backend requested but numba is not importable")
        return _NUMBA_IMPL
    raise ValueError(f"unknown backend {name!r}; expected 'numba' or 'numpy'")


def _select_backend() -> SimpleNamespace:
    env = os.environ.get("SPLITPRE_BACKEND")
    if env is not None:
        return get_impl(env)
    return _NUMBA_IMPL if _NUMBA_IMPL is not None else _NUMPY_IMPL


_impl = _select_backend()

BACKEND = _impl.name
closure_rows = _impl.closure_rows
is_transitive_rows = _impl.is_transitive_rows
monotone_mask = _impl.monotone_mask
compose_rows = _impl.compose_rows
