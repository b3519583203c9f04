"""Depth-optimized synthesis of CZ-only circuits.

A CZ pattern is a symmetric zero-diagonal 0/1 matrix; the synthesized
circuit applies CZ on exactly the marked pairs.  Synthesis picks, per
instance size, the cheapest of three constructions:

* ``coloring``  - schedule the pairs directly via round-robin matchings,
  depth at most n-1 (n even) or n (n odd);
* ``onestep``   - halve the register, clear the cross block with weight
  halving + rectangles + colored layers, recurse on both halves in
  parallel;
* ``twostep``   - two nested halvings whose correction rectangles share
  one pool of parity trees, then recurse on the four quarters.

The realized two-qubit depth never exceeds the recursion table value for
the register size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bounds
from .circuit import Circuit, Gate, cz
from .gf2 import BitMatrix
from .patterns import M01Pattern, bipartite_edge_color, halve_weights
from .rectangles import tree_layers


@dataclass
class CzSpec:
    """Symmetric zero-diagonal 0/1 pattern of CZ pairs on n qubits."""

    n: int
    bits: np.ndarray  # (n, n) uint8

    def __post_init__(self) -> None:
        self.bits = np.asarray(self.bits, dtype=np.uint8) & 1
        if self.bits.shape != (self.n, self.n):
            raise ValueError("pattern shape does not match qubit count")
        if not np.array_equal(self.bits, self.bits.T):
            raise ValueError("pattern must be symmetric")
        if self.bits.diagonal().any():
            raise ValueError("pattern diagonal must be zero")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "CzSpec":
        bits = np.zeros((n, n), dtype=np.uint8)
        for (i, j) in pairs:
            if i == j:
                raise ValueError("diagonal pair")
            bits[i, j] = bits[j, i] = 1
        return cls(n, bits)

    @classmethod
    def from_bitmatrix(cls, mat: BitMatrix) -> "CzSpec":
        if mat.rows != mat.cols:
            raise ValueError("pattern matrix must be square")
        return cls(mat.rows, mat.to_dense())

    def to_bitmatrix(self) -> BitMatrix:
        return BitMatrix.from_dense(self.bits)

    @classmethod
    def all_ones(cls, n: int) -> "CzSpec":
        bits = np.ones((n, n), dtype=np.uint8)
        np.fill_diagonal(bits, 0)
        return cls(n, bits)

    @classmethod
    def random(cls, rng: np.random.Generator, n: int) -> "CzSpec":
        u = np.triu(rng.integers(0, 2, size=(n, n), dtype=np.uint8), 1)
        return cls(n, u | u.T)

    def pairs(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.bits, 1))
        return list(zip(i.tolist(), j.tolist()))


def _coloring_classes(n: int) -> list[list[tuple[int, int]]]:
    """Round-robin partition of all pairs on n points into matchings.

    Odd n: class r holds pairs with a+b = r (mod n), giving n classes.
    Even n: point n-1 is a hub paired with r in class r; the remaining
    pairs satisfy a+b = 2r (mod n-1), giving n-1 classes.
    """
    if n < 2:
        return []
    classes: list[list[tuple[int, int]]] = []
    if n % 2:
        for r in range(n):
            cl = []
            for a in range(n):
                b = (r - a) % n
                if a < b:
                    cl.append((a, b))
            classes.append(cl)
    else:
        m = n - 1
        for r in range(m):
            cl = [(r, n - 1)]
            for a in range(m):
                b = (2 * r - a) % m
                if a < b:
                    cl.append((a, b))
            classes.append(cl)
    return classes


def synth_cz_coloring(spec: CzSpec) -> Circuit:
    """Direct scheduling of the pattern pairs into matching layers."""
    gates: list[Gate] = []
    for cl in _coloring_classes(spec.n):
        gates += [cz(i, j) for (i, j) in cl if spec.bits[i, j]]
    return Circuit(spec.n, gates)


def _coloring_gates(qubits: list[int], bits: np.ndarray) -> list[Gate]:
    k = len(qubits)
    out: list[Gate] = []
    for cl in _coloring_classes(k):
        out += [cz(qubits[i], qubits[j]) for (i, j) in cl if bits[i, j]]
    return out


def _tree_gates(sets: list[list[int]]) -> tuple[list[Gate], list[int | None]]:
    """Parallel parity-tree CNOTs for disjoint sets, plus representatives."""
    gates: list[Gate] = []
    reps: list[int | None] = []
    for s in sets:
        if not s:
            reps.append(None)
            continue
        gates += [Gate("CNOT", c, t) for layer in tree_layers(s) for (c, t) in layer]
        reps.append(s[-1])
    return gates, reps


def _bipartite_cz(left: list[int], right: list[int]) -> list[Gate]:
    """All-pairs CZ between two representative sets, in matching rounds.

    Emitting round by round keeps the ASAP depth at max(|left|, |right|)
    instead of |left| + |right| - 1.
    """
    from .patterns import complete_bipartite_rounds

    out: list[Gate] = []
    for rnd in complete_bipartite_rounds(len(left), len(right)):
        out += [cz(left[i], right[j]) for (i, j) in rnd]
    return out


def _onestep_gates(qubits: list[int], bits: np.ndarray) -> list[Gate]:
    k = len(qubits)
    h = (k + 1) // 2
    a_idx, b_idx = list(range(h)), list(range(h, k))
    hr = halve_weights(M01Pattern.from_dense(bits[:h, h:]))
    in_a1 = set(hr.row_flips)
    in_b1 = {h + j for j in hr.col_flips}
    a1 = [qubits[i] for i in a_idx if i in in_a1]
    a2 = [qubits[i] for i in a_idx if i not in in_a1]
    b1 = [qubits[j] for j in b_idx if j in in_b1]
    b2 = [qubits[j] for j in b_idx if j not in in_b1]

    from .rectangles import RectangleParts, rectangle_parts

    r1 = rectangle_parts(a1, b2) if a1 and b2 else RectangleParts()
    r2 = rectangle_parts(a2, b1) if a2 and b1 else RectangleParts()
    gates = r1.trees + r2.trees + r1.middle + r2.middle + r1.uncompute + r2.uncompute
    cap = max(h // 2, (k - h) // 2)
    for cl in bipartite_edge_color(hr.reduced, max_colors=cap if cap else None):
        gates += [cz(qubits[i], qubits[h + j]) for (i, j) in cl]
    gates += _synth_gates([qubits[i] for i in a_idx], bits[:h, :h])
    gates += _synth_gates([qubits[j] for j in b_idx], bits[h:, h:])
    return gates


def _twostep_gates(qubits: list[int], bits: np.ndarray) -> list[Gate]:
    k = len(qubits)
    h = (k + 1) // 2
    m = k - h
    hr1 = halve_weights(M01Pattern.from_dense(bits[:h, h:]))
    flip1_a = set(hr1.row_flips)          # positions within 0..h-1
    flip1_b = {h + j for j in hr1.col_flips}

    qa = (h + 1) // 2
    qb = (m + 1) // 2
    hr2a = halve_weights(M01Pattern.from_dense(bits[:qa, qa:h]))
    hr2b = halve_weights(M01Pattern.from_dense(bits[h:h + qb, h + qb:]))
    flip2_a = set(hr2a.row_flips) | {qa + j for j in hr2a.col_flips}
    flip2_b = {h + i for i in hr2b.row_flips} | {h + qb + j for j in hr2b.col_flips}

    # classify every position: side (0=A, 1=B), level-1 flip membership
    # (0=in flip set), level-2 quadrant class
    #   0: first level-2 half, flipped    1: first half, unflipped
    #   2: second level-2 half, flipped   3: second half, unflipped
    sets: dict[tuple[int, int, int], list[int]] = {
        (s, j, c): [] for s in (0, 1) for j in (0, 1) for c in range(4)
    }
    for pos in range(k):
        side = 0 if pos < h else 1
        j = 0 if (pos in flip1_a or pos in flip1_b) else 1
        if side == 0:
            first = pos < qa
            flipped = pos in flip2_a
        else:
            first = pos < h + qb
            flipped = pos in flip2_b
        c = (0 if first else 2) + (0 if flipped else 1)
        sets[(side, j, c)].append(qubits[pos])

    order = [(s, j, c) for s in (0, 1) for j in (0, 1) for c in range(4)]
    trees, reps = _tree_gates([sets[key] for key in order])
    rep = {key: reps[i] for i, key in enumerate(order)}

    def live(side: int, j: int, cs) -> list[int]:
        return [rep[(side, j, c)] for c in cs if rep[(side, j, c)] is not None]

    gates = list(trees)
    # level-1 corrections: A' x (B \ B') and (A \ A') x B', as complete
    # bipartite CZ between at most 4 representatives per side
    gates += _bipartite_cz(live(0, 0, range(4)), live(1, 1, range(4)))
    gates += _bipartite_cz(live(0, 1, range(4)), live(1, 0, range(4)))
    # level-2 corrections inside each half, at most 2x2 each
    for side in (0, 1):
        gates += _bipartite_cz(live(side, 0, (0,)) + live(side, 1, (0,)),
                               live(side, 0, (3,)) + live(side, 1, (3,)))
        gates += _bipartite_cz(live(side, 0, (1,)) + live(side, 1, (1,)),
                               live(side, 0, (2,)) + live(side, 1, (2,)))
    gates += [Gate(g.kind, g.a, g.b) for g in reversed(trees)]

    # reduced patterns as colored matching layers on the actual qubits
    cap1 = max(h // 2, m // 2)
    for cl in bipartite_edge_color(hr1.reduced, max_colors=cap1 if cap1 else None):
        gates += [cz(qubits[i], qubits[h + j]) for (i, j) in cl]
    cap2 = max(qa // 2, (h - qa) // 2, qb // 2, (m - qb) // 2)
    for cl in bipartite_edge_color(hr2a.reduced, max_colors=cap2 if cap2 else None):
        gates += [cz(qubits[i], qubits[qa + j]) for (i, j) in cl]
    for cl in bipartite_edge_color(hr2b.reduced, max_colors=cap2 if cap2 else None):
        gates += [cz(qubits[h + i], qubits[h + qb + j]) for (i, j) in cl]

    # recurse on the four quarters in parallel
    gates += _synth_gates(qubits[:qa], bits[:qa, :qa])
    gates += _synth_gates(qubits[qa:h], bits[qa:h, qa:h])
    gates += _synth_gates(qubits[h:h + qb], bits[h:h + qb, h:h + qb])
    gates += _synth_gates(qubits[h + qb:], bits[h + qb:, h + qb:])
    return gates


def _synth_gates(
    qubits: list[int], bits: np.ndarray, strategy: str | None = None
) -> list[Gate]:
    k = len(qubits)
    if k <= 1 or not bits.any():
        return []
    choice = strategy or (bounds.COLORING if k <= 3 else bounds.cz_choice(k))
    if choice == bounds.COLORING:
        return _coloring_gates(qubits, bits)
    if choice == bounds.ONESTEP:
        return _onestep_gates(qubits, bits)
    if choice == bounds.TWOSTEP:
        return _twostep_gates(qubits, bits)
    raise ValueError(f"unknown strategy {choice!r}")


def synth_cz(spec: CzSpec, strategy: str = "auto") -> Circuit:
    """CZ circuit for the pattern, depth at most the recursion table value.

    The strategy argument forces the top-level construction only; inner
    recursions always pick the per-size argmin.
    """
    forced = None if strategy == "auto" else strategy
    if forced not in (None, bounds.COLORING, bounds.ONESTEP, bounds.TWOSTEP):
        raise ValueError(f"unknown strategy {strategy!r}")
    if forced in (bounds.ONESTEP, bounds.TWOSTEP) and spec.n < 4:
        forced = bounds.COLORING
    gates = _synth_gates(list(range(spec.n)), spec.bits, strategy=forced)
    return Circuit(spec.n, gates)
