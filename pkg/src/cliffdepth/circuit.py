"""Gate-level circuit representation and the two-qubit depth metric.

Only two-qubit gates occupy schedule steps; single-qubit gates are free.
Depth is computed by an ASAP scan over per-qubit counters, so synthesis
code is responsible for emitting gates in an order that realizes the
claimed parallelism.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from . import _kernels
from .gf2 import Permutation


class Gate(NamedTuple):
    kind: str  # CZ | CNOT | H | P | X | Z
    a: int
    b: int = -1


TWO_QUBIT = ("CZ", "CNOT")
ONE_QUBIT = ("H", "P", "X", "Z")


def cz(i: int, j: int) -> Gate:
    if i == j:
        raise ValueError("CZ needs two distinct qubits")
    return Gate("CZ", min(i, j), max(i, j))


def cnot(c: int, t: int) -> Gate:
    if c == t:
        raise ValueError("CNOT needs two distinct qubits")
    return Gate("CNOT", c, t)


def h(q: int) -> Gate:
    return Gate("H", q)


def p(q: int) -> Gate:
    return Gate("P", q)


def x(q: int) -> Gate:
    return Gate("X", q)


def z(q: int) -> Gate:
    return Gate("Z", q)


class Circuit:
    """Ordered gate list over a fixed qubit register."""

    __slots__ = ("n", "gates", "perm")

    def __init__(self, n: int, gates: Iterable[Gate] = (), perm: Permutation | None = None):
        self.n = n
        self.gates: list[Gate] = list(gates)
        # Output qubit reordering reported by up-to-reordering synthesis.
        self.perm = perm
        for g in self.gates:
            hi = max(g.a, g.b)
            if g.a < 0 or hi >= n:
                raise ValueError(f"gate {g} out of range for {n} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def __eq__(self, other) -> bool:
        return isinstance(other, Circuit) and self.n == other.n and self.gates == other.gates

    def __repr__(self) -> str:
        return f"Circuit(n={self.n}, gates={len(self.gates)})"

    def append(self, g: Gate) -> None:
        self.gates.append(g)

    def extend(self, gs: Iterable[Gate]) -> None:
        self.gates.extend(gs)

    def count_two_qubit(self) -> int:
        return sum(1 for g in self.gates if g.kind in TWO_QUBIT)

    def two_qubit_pairs(self) -> np.ndarray:
        pairs = [(g.a, g.b) for g in self.gates if g.kind in TWO_QUBIT]
        return np.asarray(pairs, dtype=np.int64).reshape(len(pairs), 2)

    def two_qubit_depth(self) -> int:
        return _kernels.asap_depth(self.two_qubit_pairs(), self.n)

    def encode(self) -> np.ndarray:
        """(G, 3) int64 gate array for the tableau kernel."""
        out = np.empty((len(self.gates), 3), dtype=np.int64)
        for i, g in enumerate(self.gates):
            out[i, 0] = _kernels.GATE_CODES[g.kind]
            out[i, 1] = g.a
            out[i, 2] = g.b
        return out


def compose(a: Circuit, b: Circuit) -> Circuit:
    if a.n != b.n:
        raise ValueError("qubit counts differ")
    return Circuit(a.n, a.gates + b.gates)


def invert(c: Circuit) -> Circuit:
    """Inverse circuit: reversed order; P becomes P,P,P (= P dagger)."""
    out: list[Gate] = []
    for g in reversed(c.gates):
        if g.kind == "P":
            out.extend([g, g, g])
        else:
            out.append(g)
    return Circuit(c.n, out)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def to_text(c: Circuit) -> str:
    lines = [f"qubits {c.n}"]
    if c.perm is not None:
        lines.append("perm " + " ".join(str(int(i)) for i in c.perm.map))
    for g in c.gates:
        if g.kind in TWO_QUBIT:
            lines.append(f"{g.kind} {g.a} {g.b}")
        else:
            lines.append(f"{g.kind} {g.a}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("qubits "):
        raise ValueError("circuit file must start with 'qubits n'")
    n = int(lines[0].split()[1])
    perm = None
    body = lines[1:]
    if body and body[0].startswith("perm "):
        perm = Permutation([int(t) for t in body[0].split()[1:]])
        body = body[1:]
    gates: list[Gate] = []
    for ln in body:
        parts = ln.split()
        kind = parts[0]
        if kind in TWO_QUBIT:
            a, b = int(parts[1]), int(parts[2])
            gates.append(cz(a, b) if kind == "CZ" else cnot(a, b))
        elif kind in ONE_QUBIT:
            gates.append(Gate(kind, int(parts[1])))
        else:
            raise ValueError(f"unknown gate line: {ln!r}")
    return Circuit(n, gates, perm=perm)


_QASM_NAMES = {"CZ": "cz", "CNOT": "cx", "H": "h", "P": "s", "X": "x", "Z": "z"}


def to_qasm2(c: Circuit) -> str:
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{c.n}];",
    ]
    for g in c.gates:
        name = _QASM_NAMES[g.kind]
        if g.kind in TWO_QUBIT:
            lines.append(f"{name} q[{g.a}],q[{g.b}];")
        else:
            lines.append(f"{name} q[{g.a}];")
    return "\n".join(lines) + "\n"
