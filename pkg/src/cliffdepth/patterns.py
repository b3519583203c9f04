"""Arbitrary 0/1 CZ patterns on A x B: weight halving plus edge coloring.

The halving step complements rows/columns until every row weight is at
most m/2 and every column weight at most k/2; the complement corrections
are two parallel rectangles, and the reduced pattern is scheduled as CZ
layers given by a bipartite edge coloring with max-degree many colors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, cz
from .gf2 import BitMatrix
from .rectangles import RectangleParts, check_qubit_set, rectangle_parts


@dataclass
class M01Pattern:
    """k x m bipartite 0/1 pattern; bit (i, j) marks CZ(a_i, b_j)."""

    k: int
    m: int
    bits: np.ndarray  # (k, m) uint8

    @classmethod
    def from_dense(cls, bits: np.ndarray) -> "M01Pattern":
        bits = np.asarray(bits, dtype=np.uint8) & 1
        return cls(bits.shape[0], bits.shape[1], bits)

    @classmethod
    def from_bitmatrix(cls, mat: BitMatrix) -> "M01Pattern":
        return cls.from_dense(mat.to_dense())

    @classmethod
    def random(cls, rng: np.random.Generator, k: int, m: int) -> "M01Pattern":
        return cls.from_dense(rng.integers(0, 2, size=(k, m), dtype=np.uint8))

    def total_ones(self) -> int:
        return int(self.bits.sum())


@dataclass
class HalvingResult:
    reduced: M01Pattern
    row_flips: list[int]  # A'
    col_flips: list[int]  # B'


def halve_weights(p: M01Pattern) -> HalvingResult:
    """Greedy line complementing until all weights are at most half.

    Cycles rows 0..k-1 then columns 0..m-1; a line is flipped only when
    that strictly reduces the number of ones, which bounds the number of
    flips by the initial weight and guarantees termination.
    """
    k, m = p.k, p.m
    bits = p.bits.copy()
    rowflip = np.zeros(k, dtype=np.uint8)
    colflip = np.zeros(m, dtype=np.uint8)
    changed = True
    guard = k * m * (k + m) + k + m + 1
    passes = 0
    while changed:
        changed = False
        passes += 1
        if passes > guard:  # pragma: no cover - termination is proven
            raise RuntimeError("halving failed to terminate")
        for i in range(k):
            w = int(bits[i].sum())
            if m - w < w:
                bits[i] ^= 1
                rowflip[i] ^= 1
                changed = True
        for j in range(m):
            w = int(bits[:, j].sum())
            if k - w < w:
                bits[:, j] ^= 1
                colflip[j] ^= 1
                changed = True
    assert bits.sum(axis=1).max(initial=0) <= m // 2
    assert bits.sum(axis=0).max(initial=0) <= k // 2
    return HalvingResult(
        M01Pattern.from_dense(bits),
        [int(i) for i in np.nonzero(rowflip)[0]],
        [int(j) for j in np.nonzero(colflip)[0]],
    )


def bipartite_edge_color(
    p: M01Pattern, max_colors: int | None = None
) -> list[list[tuple[int, int]]]:
    """Partition the 1-entries into matchings using Delta colors.

    Kempe-chain coloring: when the first free colors at the two endpoints
    differ, swap them along the maximal alternating path starting at the
    column endpoint, which frees a common color.

    Args:
        p: bipartite pattern (rows vs columns).
        max_colors: optional cap; a max degree above the cap is an error.
    """
    deg_r = p.bits.sum(axis=1).astype(int)
    deg_c = p.bits.sum(axis=0).astype(int)
    delta = int(max(deg_r.max(initial=0), deg_c.max(initial=0)))
    if delta == 0:
        return []
    if max_colors is not None and delta > max_colors:
        raise ValueError(f"max degree {delta} exceeds allowed colors {max_colors}")
    at_row: list[dict[int, int]] = [dict() for _ in range(p.k)]  # color -> col
    at_col: list[dict[int, int]] = [dict() for _ in range(p.m)]  # color -> row

    def first_free(used: dict[int, int]) -> int:
        c = 0
        while c in used:
            c += 1
        return c

    for i in range(p.k):
        for j in np.nonzero(p.bits[i])[0]:
            j = int(j)
            fi = first_free(at_row[i])
            fj = first_free(at_col[j])
            if fi != fj:
                # swap colors fi/fj along the alternating path from column j;
                # rows on the path are always entered by fi-edges, so row i
                # (where fi is free) is never reached and the swap is safe
                path: list[tuple[int, int]] = []
                on_col, v, want = True, j, fi
                while True:
                    table = at_col[v] if on_col else at_row[v]
                    if want not in table:
                        break
                    u = table[want]
                    path.append((u, v) if on_col else (v, u))
                    on_col, v, want = not on_col, u, fj if want == fi else fi
                # swap atomically: consecutive path edges share vertices, so
                # edge-by-edge reassignment would clobber neighbouring entries
                olds = [
                    next(c for c, other in at_row[ri].items() if other == cj)
                    for (ri, cj) in path
                ]
                for (ri, cj), old in zip(path, olds):
                    del at_row[ri][old]
                    del at_col[cj][old]
                for (ri, cj), old in zip(path, olds):
                    new = fj if old == fi else fi
                    at_row[ri][new] = cj
                    at_col[cj][new] = ri
            at_row[i][fi] = j
            at_col[j][fi] = i

    classes: list[list[tuple[int, int]]] = [[] for _ in range(delta)]
    for i in range(p.k):
        for color, j in at_row[i].items():
            classes[color].append((i, j))
    return [cl for cl in classes if cl]


def m01_parts(
    a: list[int], b: list[int], p: M01Pattern
) -> tuple[RectangleParts, RectangleParts, list[list[tuple[int, int]]]]:
    """Halve, and return the two correction rectangles plus color classes."""
    hr = halve_weights(p)
    a1 = [a[i] for i in hr.row_flips]
    a2 = [q for i, q in enumerate(a) if i not in set(hr.row_flips)]
    b1 = [b[j] for j in hr.col_flips]
    b2 = [q for j, q in enumerate(b) if j not in set(hr.col_flips)]
    r1 = rectangle_parts(a1, b2) if a1 and b2 else RectangleParts()
    r2 = rectangle_parts(a2, b1) if a2 and b1 else RectangleParts()
    cap = max(p.m // 2, p.k // 2)
    classes = bipartite_edge_color(hr.reduced, max_colors=cap if cap else None)
    return r1, r2, classes


def synth_m01(a: list[int], b: list[int], p: M01Pattern, n: int | None = None) -> Circuit:
    """Circuit applying exactly the CZ gates marked in p between a and b."""
    check_qubit_set(a)
    check_qubit_set(b)
    if set(a) & set(b):
        raise ValueError("qubit sets overlap")
    if p.k != len(a) or p.m != len(b):
        raise ValueError("pattern dimensions do not match qubit sets")
    if n is None:
        n = max(max(a), max(b)) + 1
    r1, r2, classes = m01_parts(a, b, p)
    gates: list[Gate] = []
    gates += r1.trees + r2.trees
    gates += r1.middle + r2.middle
    gates += r1.uncompute + r2.uncompute
    for cl in classes:
        gates += [cz(a[i], b[j]) for (i, j) in cl]
    return Circuit(n, gates)


def complete_bipartite_rounds(s: int, t: int) -> list[list[tuple[int, int]]]:
    """Edge coloring of K_{s,t} into max(s, t) perfect-as-possible matchings."""
    if s == 0 or t == 0:
        return []
    swap = s > t
    if swap:
        s, t = t, s
    rounds = [[(i, (i + r) % t) for i in range(s)] for r in range(t)]
    if swap:
        rounds = [[(j, i) for (i, j) in rnd] for rnd in rounds]
    return rounds
