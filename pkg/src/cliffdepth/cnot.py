"""Depth-optimized synthesis of CNOT (linear reversible) circuits.

Convention: ``CNOT c t`` maps x_t ^= x_c, so a CNOT circuit acts on the
state labels as x -> R x for an invertible 0/1 matrix R.  Triangular
matrices are synthesized by a halving recursion; a general invertible
matrix is split as permutation * lower * upper via LU decomposition.
"""

from __future__ import annotations

import numpy as np

from . import bounds
from .circuit import Circuit, Gate, cnot, h
from .gf2 import BitMatrix, Permutation, lu_decompose, perm_to_transposition_layers
from .patterns import M01Pattern, bipartite_edge_color, m01_parts
from .circuit import cz as _cz


# depth-2 realizations of the 8 upper unitriangular 3x3 matrices, keyed by
# (R01, R02, R12); gate order is application order, product is last*...*first
_BASE3 = {
    (0, 0, 0): [],
    (1, 0, 0): [(1, 0)],
    (0, 1, 0): [(2, 0)],
    (0, 0, 1): [(2, 1)],
    (1, 1, 0): [(1, 0), (2, 0)],
    (1, 0, 1): [(1, 0), (2, 1)],
    (0, 1, 1): [(2, 0), (2, 1)],
    (1, 1, 1): [(2, 1), (1, 0)],
}


def _solve_upper_unitri(r: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Solve R C = W (mod 2) for upper unitriangular R by back substitution."""
    k = r.shape[0]
    c = w.copy()
    for i in range(k - 2, -1, -1):
        for j in range(i + 1, k):
            if r[i, j]:
                c[i] ^= c[j]
    return c


def _block_add_gates(a: list[int], b: list[int], c: np.ndarray) -> list[Gate]:
    """Gates realizing x_A += C x_B, cheaper of two stagings per instance.

    Either schedule the commuting CNOTs (control in B, target in A)
    directly via edge coloring, or conjugate a CZ-pattern circuit for C by
    Hadamards on A and strip them again.  The second is asymptotically
    shallower but loses on small or sparse blocks, so both are built and
    the shallower one (measured, ties to the direct form) is kept.
    """
    if not c.any():
        return []
    p = M01Pattern.from_dense(c)
    direct: list[Gate] = []
    for cl in bipartite_edge_color(p):
        direct += [cnot(b[j], a[i]) for (i, j) in cl]

    r1, r2, classes = m01_parts(a, b, p)
    via_cz: list[Gate] = [h(q) for q in a]
    via_cz += r1.trees + r2.trees + r1.middle + r2.middle
    via_cz += r1.uncompute + r2.uncompute
    for cl in classes:
        via_cz += [_cz(a[i], b[j]) for (i, j) in cl]
    via_cz += [h(q) for q in a]

    n = max(max(a), max(b)) + 1
    d_direct = Circuit(n, direct).two_qubit_depth()
    d_via = Circuit(n, via_cz).two_qubit_depth()
    return direct if d_direct <= d_via else via_cz


def _tri_gates(qubits: list[int], r: np.ndarray) -> list[Gate]:
    k = len(qubits)
    if k <= 1:
        return []
    if k == 2:
        return [cnot(qubits[1], qubits[0])] if r[0, 1] else []
    if k == 3:
        key = (int(r[0, 1]), int(r[0, 2]), int(r[1, 2]))
        return [cnot(qubits[c], qubits[t]) for (c, t) in _BASE3[key]]
    h_ = (k + 1) // 2
    a, b = qubits[:h_], qubits[h_:]
    c = _solve_upper_unitri(r[:h_, :h_], r[:h_, h_:])
    gates = _block_add_gates(a, b, c)
    gates += _tri_gates(a, r[:h_, :h_])
    gates += _tri_gates(b, r[h_:, h_:])
    return gates


def synth_triangular(r: BitMatrix) -> Circuit:
    """Circuit over {CNOT, CZ, H} for an upper-triangular invertible matrix.

    Block-add stages that route through a CZ pattern keep their literal
    Hadamard-conjugated form; run the result through remove_hadamards for
    a CNOT-only circuit of identical two-qubit count and depth.
    """
    dense = r.to_dense()
    if r.rows != r.cols:
        raise ValueError("matrix must be square")
    if not np.array_equal(np.tril(dense), np.eye(r.rows, dtype=np.uint8)):
        raise ValueError("matrix must be upper triangular with unit diagonal")
    return Circuit(r.rows, _tri_gates(list(range(r.rows)), dense))


def remove_hadamards(c: Circuit) -> Circuit:
    """Strip H gates by propagating them through CNOT/CZ.

    Tracks an H parity per qubit.  A CNOT with both ends conjugated flips
    control and target; a CZ with exactly one end conjugated becomes a
    CNOT controlled on the bare end.  Other combinations (and any other
    single-qubit gate) have no CNOT-only rewrite and raise ValueError.
    All H parities must cancel by the end of the circuit.
    """
    par = [0] * c.n
    out: list[Gate] = []
    for g in c.gates:
        if g.kind == "H":
            par[g.a] ^= 1
        elif g.kind == "CNOT":
            pa, pb = par[g.a], par[g.b]
            if pa and pb:
                out.append(cnot(g.b, g.a))
            elif not pa and not pb:
                out.append(g)
            else:
                raise ValueError("CNOT with one conjugated end has no rewrite")
        elif g.kind == "CZ":
            pa, pb = par[g.a], par[g.b]
            if pa ^ pb:
                out.append(cnot(g.b, g.a) if pa else cnot(g.a, g.b))
            else:
                raise ValueError("CZ needs exactly one conjugated end")
        else:
            raise ValueError(f"cannot remove H around {g.kind} gate")
    if any(par):
        raise ValueError("unmatched H gates remain")
    return Circuit(c.n, out)


EXACT = "exact"
REORDER = "reorder"


def _transpose_trick(gates: list[Gate]) -> list[Gate]:
    """Reverse order and swap control/target: realizes the transpose."""
    return [cnot(g.b, g.a) for g in reversed(gates)]


def synth_linear(r: BitMatrix, mode: str = EXACT) -> Circuit:
    """CNOT circuit for an invertible matrix, exactly or up to reordering.

    In ``reorder`` mode the trailing qubit permutation is reported via the
    circuit's ``perm`` attribute instead of being synthesized: the circuit
    action r satisfies r[i, :] == M[perm[i], :].  Exact mode appends the
    permutation as at most two layers of disjoint swaps (depth <= 6).
    """
    if mode not in (EXACT, REORDER):
        raise ValueError(f"unknown mode {mode!r}")
    n = r.rows
    if r.rows != r.cols:
        raise ValueError("matrix must be square")
    perm, low, up = lu_decompose(r)
    gates = _tri_gates(list(range(n)), up.to_dense())
    # lower factor: synthesize the transpose (upper triangular), strip its
    # H-conjugated stages, then reverse with controls and targets flipped
    l_gates = remove_hadamards(
        Circuit(n, _tri_gates(list(range(n)), low.transpose().to_dense()))
    ).gates
    gates += _transpose_trick(l_gates)
    if mode == REORDER:
        return Circuit(n, gates, perm=perm)
    for layer in perm_to_transposition_layers(perm):
        for (i, j) in layer:
            gates += [cnot(i, j), cnot(j, i), cnot(i, j)]
    return Circuit(n, gates)
