"""Bit-packed GF(2) linear algebra.

``BitMatrix`` stores rows as packed ``uint64`` words.  Elimination-style
routines (inverse, solve, LU) work on the packed words with vectorized row
xors; the dense ``uint8`` view is used where per-entry bookkeeping is
simpler (LU factor construction, reduced row echelon form).
"""

from __future__ import annotations

import numpy as np

from . import _kernels

WORD = 64


def _nwords(cols: int) -> int:
    return (cols + WORD - 1) // WORD


def _pack(dense: np.ndarray) -> np.ndarray:
    """Pack a (r, c) 0/1 array into (r, ceil(c/64)) uint64 words."""
    r, c = dense.shape
    w = _nwords(c)
    padded = np.zeros((r, w * WORD), dtype=np.uint8)
    padded[:, :c] = dense & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(r, w)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    r, w = words.shape
    as_bytes = np.ascontiguousarray(words).view(np.uint8).reshape(r, w * 8)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :cols]


class BitMatrix:
    """Dense matrix over GF(2), rows packed into machine words."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        if rows < 1 or cols < 1:
            raise ValueError("BitMatrix dimensions must be positive")
        self.rows = rows
        self.cols = cols
        if words is None:
            words = np.zeros((rows, _nwords(cols)), dtype=np.uint64)
        self.words = words

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        m = cls(n, n)
        for i in range(n):
            m.words[i, i >> 6] |= np.uint64(1) << np.uint64(i & 63)
        return m

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "BitMatrix":
        dense = np.asarray(dense, dtype=np.uint8) & 1
        if dense.ndim != 2:
            raise ValueError("expected 2-D array")
        return cls(dense.shape[0], dense.shape[1], _pack(dense))

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        r, c = (int(t) for t in lines[0].split())
        if len(lines) - 1 != r:
            raise ValueError(f"expected {r} matrix rows, got {len(lines) - 1}")
        dense = np.zeros((r, c), dtype=np.uint8)
        for i, ln in enumerate(lines[1:]):
            row = ln.strip()
            if len(row) != c or set(row) - {"0", "1"}:
                raise ValueError(f"bad matrix row {i}: {row!r}")
            dense[i] = [int(ch) for ch in row]
        return cls.from_dense(dense)

    # -- access ------------------------------------------------------------

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def set(self, i: int, j: int, v: int) -> None:
        bit = np.uint64(1) << np.uint64(j & 63)
        if v:
            self.words[i, j >> 6] |= bit
        else:
            self.words[i, j >> 6] &= ~bit

    def column(self, j: int) -> np.ndarray:
        """Column j as a 0/1 uint8 vector."""
        return ((self.words[:, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)).astype(np.uint8)

    def to_dense(self) -> np.ndarray:
        return _unpack(self.words, self.cols)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.words.copy())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self):
        raise TypeError("BitMatrix is not hashable")

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        dense = self.to_dense()
        head = f"{self.rows} {self.cols}"
        body = "\n".join("".join("1" if b else "0" for b in row) for row in dense)
        return head + "\n" + body + "\n"

    # -- algebra -----------------------------------------------------------

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def is_symmetric(self) -> bool:
        d = self.to_dense()
        return self.rows == self.cols and bool(np.array_equal(d, d.T))

    def is_upper_triangular(self) -> bool:
        d = self.to_dense()
        return bool(np.array_equal(np.triu(d), d))

    def is_lower_triangular(self) -> bool:
        d = self.to_dense()
        return bool(np.array_equal(np.tril(d), d))


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """GF(2) matrix product."""
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.cols} vs {b.rows}")
    bt = b.transpose()
    return BitMatrix.from_dense(_kernels.matmul_words(a.words, bt.words))


def mat_vec(a: BitMatrix, v: np.ndarray) -> np.ndarray:
    """a @ v over GF(2) for a 0/1 vector v."""
    vv = np.asarray(v, dtype=np.uint8) & 1
    return ((a.to_dense().astype(np.int64) @ vv.astype(np.int64)) & 1).astype(np.uint8)


class SingularMatrixError(ValueError):
    """Raised when an inverse or solve hits a rank-deficient matrix."""


def solve_right(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Solve a @ X = b for square invertible a (Gauss-Jordan on packed rows)."""
    if a.rows != a.cols:
        raise ValueError("coefficient matrix must be square")
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    n = a.rows
    wa = a.words.shape[1]
    aug = np.concatenate([a.words.copy(), b.words.copy()], axis=1)
    for j in range(n):
        col = (aug[:, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)
        cand = np.nonzero(col[j:])[0]
        if cand.size == 0:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {j})")
        piv = j + int(cand[0])
        if piv != j:
            aug[[j, piv]] = aug[[piv, j]]
            col[[j, piv]] = col[[piv, j]]
        mask = col.astype(bool)
        mask[j] = False
        aug[mask] ^= aug[j]
    return BitMatrix(n, b.cols, np.ascontiguousarray(aug[:, wa:]))


def mat_inverse(a: BitMatrix) -> BitMatrix:
    if a.rows != a.cols:
        raise ValueError("only square matrices can be inverted")
    return solve_right(a, BitMatrix.identity(a.rows))


def rank_and_pivots(a: BitMatrix) -> tuple[int, list[int]]:
    """Rank and pivot-column indices from row reduction."""
    words = a.words.copy()
    r = 0
    pivots: list[int] = []
    for j in range(a.cols):
        col = (words[:, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)
        cand = np.nonzero(col[r:])[0]
        if cand.size == 0:
            continue
        piv = r + int(cand[0])
        if piv != r:
            words[[r, piv]] = words[[piv, r]]
            col[[r, piv]] = col[[piv, r]]
        mask = col.astype(bool)
        mask[r] = False
        words[mask] ^= words[r]
        pivots.append(j)
        r += 1
        if r == a.rows:
            break
    return r, pivots


class Permutation:
    """Bijection on 0..n-1; map[i] is the image of i."""

    __slots__ = ("map",)

    def __init__(self, mapping):
        arr = np.asarray(mapping, dtype=np.int64)
        if sorted(arr.tolist()) != list(range(len(arr))):
            raise ValueError("not a permutation")
        self.map = arr

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.map)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and bool(np.array_equal(self.map, other.map))

    def __repr__(self) -> str:
        return f"Permutation({self.map.tolist()})"

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.map, np.arange(len(self.map))))

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.map)
        inv[self.map] = np.arange(len(self.map))
        return Permutation(inv)

    def matrix(self) -> BitMatrix:
        """Q with Q[map[i], i] = 1, i.e. (Q x)[map[i]] = x[i]."""
        n = len(self.map)
        dense = np.zeros((n, n), dtype=np.uint8)
        dense[self.map, np.arange(n)] = 1
        return BitMatrix.from_dense(dense)


def lu_decompose(r: BitMatrix) -> tuple[Permutation, BitMatrix, BitMatrix]:
    """Row-pivoted LU: row i of L@U equals row perm[i] of r.

    Returns:
        (perm, l, u) with l lower unitriangular and u upper triangular
        (unit diagonal, since any invertible triangular GF(2) matrix has
        ones on the diagonal).
    """
    if r.rows != r.cols:
        raise ValueError("LU requires a square matrix")
    n = r.rows
    a = r.to_dense().copy()
    low = np.eye(n, dtype=np.uint8)
    perm = np.arange(n, dtype=np.int64)
    for k in range(n):
        cand = np.nonzero(a[k:, k])[0]
        if cand.size == 0:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {k})")
        piv = k + int(cand[0])
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            perm[[k, piv]] = perm[[piv, k]]
            low[[k, piv], :k] = low[[piv, k], :k]
        below = np.nonzero(a[k + 1:, k])[0] + k + 1
        low[below, k] = 1
        a[below] ^= a[k]
    return Permutation(perm), BitMatrix.from_dense(low), BitMatrix.from_dense(a)


def perm_to_transposition_layers(p: Permutation) -> list[list[tuple[int, int]]]:
    """Decompose p into at most two layers of disjoint transpositions.

    Each cycle (v0 v1 ... v_{k-1}) factors as two reflections: layer one
    swaps v_i with v_{k-1-i}, layer two swaps v_j with v_{k-j}; applying
    layer one then layer two maps v_i to v_{i+1 mod k}.
    """
    n = len(p.map)
    seen = [False] * n
    layer1: list[tuple[int, int]] = []
    layer2: list[tuple[int, int]] = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        cur = int(p.map[start])
        while cur != start:
            cyc.append(cur)
            seen[cur] = True
            cur = int(p.map[cur])
        k = len(cyc)
        if k == 1:
            continue
        for i in range(k):
            if i < k - 1 - i:
                layer1.append((cyc[i], cyc[k - 1 - i]))
        for j in range(1, k):
            if j < k - j:
                layer2.append((cyc[j], cyc[k - j]))
    layers = [ly for ly in (layer1, layer2) if ly]
    return layers


def random_matrix(rng: np.random.Generator, rows: int, cols: int) -> BitMatrix:
    return BitMatrix.from_dense(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))


def random_invertible(rng: np.random.Generator, n: int) -> BitMatrix:
    """Random invertible matrix as L @ P @ U (unitriangular L, U; random P)."""
    low = np.tril(rng.integers(0, 2, size=(n, n), dtype=np.uint8), -1) + np.eye(n, dtype=np.uint8)
    up = np.triu(rng.integers(0, 2, size=(n, n), dtype=np.uint8), 1) + np.eye(n, dtype=np.uint8)
    p = np.zeros((n, n), dtype=np.uint8)
    p[rng.permutation(n), np.arange(n)] = 1
    prod = (low.astype(np.int64) @ p.astype(np.int64) @ up.astype(np.int64)) & 1
    return BitMatrix.from_dense(prod.astype(np.uint8))
