"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The backend is chosen once at import time:

* ``CLIFFDEPTH_BACKEND=numba`` (default when numba imports) compiles the
  kernels with ``@njit``.
* ``CLIFFDEPTH_BACKEND=numpy`` forces the plain numpy implementations,
  which are semantically identical and used as the reference in tests.

Kernels operate on bit-packed ``uint64`` words; packing layout is owned by
the callers (``gf2`` packs matrices row-major, ``clifford`` packs tableau
columns).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        """No-op decorator stand-in when numba is unavailable."""

        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


_ENV = os.environ.get("CLIFFDEPTH_BACKEND", "").strip().lower()
if _ENV not in ("", "numba", "numpy"):
    raise ValueError(f"CLIFFDEPTH_BACKEND must be 'numba' or 'numpy', got {_ENV!r}")
USE_NUMBA = HAS_NUMBA and _ENV != "numpy"


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# GF(2) packed matrix product
# ---------------------------------------------------------------------------

def _matmul_words_np(a_words: np.ndarray, bt_words: np.ndarray) -> np.ndarray:
    """out[i, j] = parity(popcount(a_words[i] & bt_words[j]))."""
    r = a_words.shape[0]
    c = bt_words.shape[0]
    out = np.empty((r, c), dtype=np.uint8)
    # Chunk rows so the (chunk, c, w) intermediate stays small.
    step = max(1, (1 << 22) // max(1, c * a_words.shape[1]))
    for lo in range(0, r, step):
        hi = min(r, lo + step)
        anded = a_words[lo:hi, None, :] & bt_words[None, :, :]
        out[lo:hi] = (np.bitwise_count(anded).sum(axis=2) & 1).astype(np.uint8)
    return out


@njit(cache=True)
def _popcount64(x: np.uint64) -> np.int64:
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
    )
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def _matmul_words_nb(a_words, bt_words):
    r = a_words.shape[0]
    c = bt_words.shape[0]
    w = a_words.shape[1]
    out = np.empty((r, c), dtype=np.uint8)
    for i in range(r):
        for j in range(c):
            acc = np.int64(0)
            for t in range(w):
                acc += _popcount64(a_words[i, t] & bt_words[j, t])
            out[i, j] = np.uint8(acc & 1)
    return out


def matmul_words(a_words: np.ndarray, bt_words: np.ndarray) -> np.ndarray:
    """GF(2) product of packed rows `a` against packed rows of b-transpose."""
    if USE_NUMBA:
        return _matmul_words_nb(a_words, bt_words)
    return _matmul_words_np(a_words, bt_words)


# ---------------------------------------------------------------------------
# Tableau simulation
#
# Column-major packed tableau: X[q] / Z[q] are 2n-bit vectors (one bit per
# tableau row) stored as uint64 words; ph is the packed phase column.
# Gate encoding: (code, a, b) with codes CZ=0, CNOT=1, H=2, P=3, X=4, Z=5.
# ---------------------------------------------------------------------------

GATE_CODES = {"CZ": 0, "CNOT": 1, "H": 2, "P": 3, "X": 4, "Z": 5}


@njit(cache=True)
def _tableau_run_nb(gates, X, Z, ph):
    w = X.shape[1]
    for g in range(gates.shape[0]):
        code = gates[g, 0]
        a = gates[g, 1]
        b = gates[g, 2]
        if code == 1:  # CNOT a->b
            for t in range(w):
                xa = X[a, t]
                za = Z[a, t]
                xb = X[b, t]
                zb = Z[b, t]
                ph[t] ^= xa & zb & ~(xb ^ za)
                X[b, t] = xb ^ xa
                Z[a, t] = za ^ zb
        elif code == 0:  # CZ a,b  ==  H(b) CNOT(a,b) H(b)
            for t in range(w):
                xa = X[a, t]
                za = Z[a, t]
                xb = X[b, t]
                zb = Z[b, t]
                ph[t] ^= xb & zb
                xb, zb = zb, xb
                ph[t] ^= xa & zb & ~(xb ^ za)
                xb ^= xa
                za ^= zb
                ph[t] ^= xb & zb
                X[b, t] = zb
                Z[b, t] = xb
                Z[a, t] = za
        elif code == 2:  # H
            for t in range(w):
                xa = X[a, t]
                za = Z[a, t]
                ph[t] ^= xa & za
                X[a, t] = za
                Z[a, t] = xa
        elif code == 3:  # P
            for t in range(w):
                xa = X[a, t]
                ph[t] ^= xa & Z[a, t]
                Z[a, t] ^= xa
        elif code == 4:  # X
            for t in range(w):
                ph[t] ^= Z[a, t]
        else:  # Z
            for t in range(w):
                ph[t] ^= X[a, t]


def _tableau_run_np(gates, X, Z, ph):
    for code, a, b in gates:
        if code == 1:
            xa = X[a]
            za = Z[a]
            ph ^= xa & Z[b] & ~(X[b] ^ za)
            X[b] ^= xa
            Z[a] ^= Z[b]
        elif code == 0:
            xa = X[a]
            za = Z[a]
            xb = X[b].copy()
            zb = Z[b].copy()
            ph ^= xb & zb
            xb, zb = zb, xb
            ph ^= xa & zb & ~(xb ^ za)
            xb ^= xa
            za ^= zb
            ph ^= xb & zb
            X[b] = zb
            Z[b] = xb
            Z[a] = za
        elif code == 2:
            xa = X[a].copy()
            ph ^= xa & Z[a]
            X[a] = Z[a]
            Z[a] = xa
        elif code == 3:
            ph ^= X[a] & Z[a]
            Z[a] ^= X[a]
        elif code == 4:
            ph ^= Z[a]
        else:
            ph ^= X[a]


def tableau_run(gates: np.ndarray, X: np.ndarray, Z: np.ndarray, ph: np.ndarray) -> None:
    """Apply an encoded gate list to a packed tableau in place."""
    if gates.shape[0] == 0:
        return
    if USE_NUMBA:
        _tableau_run_nb(gates, X, Z, ph)
    else:
        _tableau_run_np(gates, X, Z, ph)


# ---------------------------------------------------------------------------
# Depth recursion tables (bottom-up fills)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _fill_cz_nb(N, with_twostep):
    d = np.zeros(N + 1, dtype=np.int64)
    if N >= 2:
        d[2] = 1
    if N >= 3:
        d[3] = 3
    for n in range(4, N + 1):
        # ceil-log2 of n
        cl = 0
        while (1 << cl) < n:
            cl += 1
        best = n - 1 if n % 2 == 0 else n
        h = (n + 1) // 2
        v = d[h] + h // 2 + 2 * (cl - 1)
        if v < best:
            best = v
        if with_twostep:
            q = (h + 1) // 2
            clq = 0
            while (1 << clq) < q:
                clq += 1
            v = d[q] + h // 2 + q // 2 + 2 * clq + 6
            if v < best:
                best = v
        d[n] = best
    return d


@njit(cache=True)
def _fill_cnot_nb(N, first_branch_only):
    d = np.zeros(N + 1, dtype=np.int64)
    if N >= 2:
        d[2] = 1
    if N >= 3:
        d[3] = 2
    for n in range(4, N + 1):
        h = (n + 1) // 2
        cost = h
        if not first_branch_only:
            cl = 0
            while (1 << cl) < h:
                cl += 1
            alt = h // 2 + 2 * cl
            if alt < cost:
                cost = alt
        d[n] = d[h] + cost
    return d


def _ceil_log2_arr(n: np.ndarray) -> np.ndarray:
    out = np.zeros_like(n)
    nz = n > 1
    out[nz] = np.ceil(np.log2(n[nz].astype(np.float64))).astype(n.dtype)
    # guard against float fuzz at exact powers of two
    pow2 = (1 << np.minimum(out, 62)) < n
    out[pow2] += 1
    over = (out > 0) & ((1 << np.maximum(out - 1, 0)) >= n)
    out[over] -= 1
    return out


def _fill_cz_np(N, with_twostep):
    d = np.zeros(N + 1, dtype=np.int64)
    if N >= 2:
        d[2] = 1
    if N >= 3:
        d[3] = 3
    # process (m, 2m] blocks: for every n in the block, ceil(n/2) <= m is
    # already filled, so the block evaluates vectorized
    m = 3
    while m < N:
        lo = m + 1
        hi = min(N, 2 * m)
        n = np.arange(lo, hi + 1, dtype=np.int64)
        cl = _ceil_log2_arr(n)
        h = (n + 1) // 2
        best = np.where(n % 2 == 0, n - 1, n)
        v = d[h] + h // 2 + 2 * (cl - 1)
        best = np.minimum(best, v)
        if with_twostep:
            q = (h + 1) // 2
            v = d[q] + h // 2 + q // 2 + 2 * _ceil_log2_arr(q) + 6
            best = np.minimum(best, v)
        d[lo:hi + 1] = best
        m = hi
    return d


def _fill_cnot_np(N, first_branch_only):
    d = np.zeros(N + 1, dtype=np.int64)
    if N >= 2:
        d[2] = 1
    if N >= 3:
        d[3] = 2
    m = 3
    while m < N:
        lo = m + 1
        hi = min(N, 2 * m)
        n = np.arange(lo, hi + 1, dtype=np.int64)
        h = (n + 1) // 2
        cost = h.copy()
        if not first_branch_only:
            cost = np.minimum(cost, h // 2 + 2 * _ceil_log2_arr(h))
        d[lo:hi + 1] = d[h] + cost
        m = hi
    return d


def fill_cz_table(N: int, with_twostep: bool = True) -> np.ndarray:
    if USE_NUMBA:
        return _fill_cz_nb(N, with_twostep)
    return _fill_cz_np(N, with_twostep)


def fill_cnot_table(N: int, first_branch_only: bool = False) -> np.ndarray:
    if USE_NUMBA:
        return _fill_cnot_nb(N, first_branch_only)
    return _fill_cnot_np(N, first_branch_only)


# ---------------------------------------------------------------------------
# ASAP two-qubit depth
# ---------------------------------------------------------------------------

@njit(cache=True)
def _depth_nb(pairs, n):
    d = np.zeros(n, dtype=np.int64)
    for g in range(pairs.shape[0]):
        a = pairs[g, 0]
        b = pairs[g, 1]
        t = d[a] + 1 if d[a] > d[b] else d[b] + 1
        d[a] = t
        d[b] = t
    best = np.int64(0)
    for q in range(n):
        if d[q] > best:
            best = d[q]
    return best


def _depth_np(pairs, n):
    d = [0] * n
    for a, b in pairs:
        t = max(d[a], d[b]) + 1
        d[a] = t
        d[b] = t
    return max(d) if d else 0


def asap_depth(pairs: np.ndarray, n: int) -> int:
    """ASAP schedule length of a (G, 2) array of two-qubit gate supports."""
    if pairs.shape[0] == 0:
        return 0
    if USE_NUMBA:
        return int(_depth_nb(pairs, n))
    return int(_depth_np(pairs, n))
