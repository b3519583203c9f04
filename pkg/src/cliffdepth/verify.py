"""Independent correctness oracles.

These deliberately avoid the synthesis code paths: the linear oracle
replays gates on an identity matrix, the phase oracle tracks the diagonal
action over all basis labels, and tableau equality compares packed
simulator state.  Convention used throughout: circuits act left to right,
so linear_action(compose(a, b)) == linear_action(b) @ linear_action(a).
"""

from __future__ import annotations

import numpy as np

from .circuit import Circuit
from .gf2 import BitMatrix


def linear_action(c: Circuit) -> BitMatrix:
    """Basis-label action x -> R x of a linear-reversible circuit.

    Accepts CNOT directly and the Hadamard-conjugated CZ form emitted by
    triangular synthesis: per-qubit H parity is tracked, a CZ with exactly
    one conjugated end is a CNOT targeting that end, and a CNOT with both
    ends conjugated acts flipped.  All H parities must cancel by the end.
    """
    m = BitMatrix.identity(c.n)
    par = [0] * c.n
    for g in c.gates:
        if g.kind == "H":
            par[g.a] ^= 1
        elif g.kind == "CNOT":
            pa, pb = par[g.a], par[g.b]
            if pa and pb:
                m.words[g.a] ^= m.words[g.b]
            elif not pa and not pb:
                m.words[g.b] ^= m.words[g.a]
            else:
                raise ValueError("CNOT with one conjugated end is not linear")
        elif g.kind == "CZ":
            pa, pb = par[g.a], par[g.b]
            if pa ^ pb:
                if pa:
                    m.words[g.a] ^= m.words[g.b]
                else:
                    m.words[g.b] ^= m.words[g.a]
            else:
                raise ValueError("CZ without exactly one conjugated end is not linear")
        else:
            raise ValueError(f"linear oracle cannot handle {g.kind} gate")
    if any(par):
        raise ValueError("unmatched H gates; circuit is not linear")
    return m


def phase_oracle(c: Circuit, max_qubits: int = 12) -> np.ndarray:
    """Diagonal phase exponent per input basis label, exhaustively.

    Supports CNOT, CZ, X, Z.  The circuit's permutation action on labels
    must be the identity overall (CZ synthesis with compute/uncompute
    stages satisfies this); otherwise phases would not be attributable to
    input labels and a ValueError is raised.
    """
    if c.n > max_qubits:
        raise ValueError(f"phase oracle limited to {max_qubits} qubits")
    labels = np.arange(1 << c.n, dtype=np.uint32)
    cur = labels.copy()
    phase = np.zeros(labels.shape, dtype=np.uint8)
    for g in c.gates:
        if g.kind == "CNOT":
            cur ^= ((cur >> np.uint32(g.a)) & np.uint32(1)) << np.uint32(g.b)
        elif g.kind == "CZ":
            phase ^= ((cur >> np.uint32(g.a)) & (cur >> np.uint32(g.b)) & np.uint32(1)).astype(np.uint8)
        elif g.kind == "Z":
            phase ^= ((cur >> np.uint32(g.a)) & np.uint32(1)).astype(np.uint8)
        elif g.kind == "X":
            cur ^= np.uint32(1 << g.a)
        else:
            raise ValueError(f"phase oracle cannot handle {g.kind} gate")
    if not np.array_equal(cur, labels):
        raise ValueError("circuit permutes basis labels; phases not diagonal")
    return phase


def cz_pattern_phases(bits: np.ndarray) -> np.ndarray:
    """Predicted phase exponents (-1)^{sum m_ij x_i x_j} of a CZ pattern."""
    n = bits.shape[0]
    labels = np.arange(1 << n, dtype=np.uint32)
    phase = np.zeros(labels.shape, dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            if bits[i, j]:
                phase ^= ((labels >> np.uint32(i)) & (labels >> np.uint32(j)) & np.uint32(1)).astype(np.uint8)
    return phase


def tableaux_equal(a, b) -> bool:
    """Bitwise equality of two tableaux (symplectic part and phases)."""
    if a.n != b.n:
        raise ValueError("tableau sizes differ")
    return a == b
