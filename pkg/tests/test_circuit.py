import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffdepth.circuit import (
    Circuit,
    cnot,
    compose,
    cz,
    from_text,
    h,
    invert,
    p,
    to_qasm2,
    to_text,
    x,
    z,
)
from cliffdepth.clifford import tableau_of_circuit
from cliffdepth.gf2 import Permutation


def random_circuit(rng, n, g):
    gates = []
    for _ in range(g):
        kind = rng.integers(0, 6)
        a = int(rng.integers(0, n))
        if kind < 2 and n > 1:
            b = int(rng.integers(0, n - 1))
            b += b >= a
            gates.append(cz(a, b) if kind == 0 else cnot(a, b))
        else:
            gates.append([h, p, x, z][int(kind) % 4](a))
    return Circuit(n, gates)


def test_cz_canonical_order():
    assert cz(5, 2) == cz(2, 5)
    assert cz(2, 5).a == 2


def test_cz_rejects_equal():
    with pytest.raises(ValueError):
        cz(3, 3)
    with pytest.raises(ValueError):
        cnot(1, 1)


def test_depth_counts_only_two_qubit_gates():
    c = Circuit(3, [h(0), cz(0, 1), p(1), cnot(1, 2), x(2)])
    assert c.two_qubit_depth() == 2
    assert c.count_two_qubit() == 2


def test_depth_parallel_layers():
    c = Circuit(4, [cz(0, 1), cz(2, 3), cnot(0, 2), cnot(1, 3)])
    assert c.two_qubit_depth() == 2


def test_depth_asap_reordering():
    # gate on fresh qubits slides past a busy pair
    c = Circuit(4, [cz(0, 1), cz(0, 1), cz(2, 3)])
    assert c.two_qubit_depth() == 2


def test_empty_circuit():
    c = Circuit(2)
    assert len(c) == 0
    assert c.two_qubit_depth() == 0


def test_text_roundtrip():
    rng = np.random.default_rng(10)
    for _ in range(50):
        c = random_circuit(rng, int(rng.integers(1, 9)), int(rng.integers(0, 40)))
        assert from_text(to_text(c)) == c


def test_text_roundtrip_with_perm():
    c = Circuit(3, [cnot(0, 1)], perm=Permutation([2, 0, 1]))
    back = from_text(to_text(c))
    assert back.perm == c.perm
    assert back.gates == c.gates


def test_from_text_rejects_garbage():
    with pytest.raises(ValueError):
        from_text("3\nCZ 0 1")
    with pytest.raises(ValueError):
        from_text("qubits 2\nRX 0")


def test_qasm_output():
    q = to_qasm2(Circuit(2, [h(0), cnot(0, 1), p(1), cz(0, 1)]))
    assert q.startswith("OPENQASM 2.0;")
    assert "qreg q[2];" in q
    assert "cx q[0],q[1];" in q
    assert "s q[1];" in q
    assert "cz q[0],q[1];" in q


def test_compose_and_invert_cancel():
    rng = np.random.default_rng(11)
    for _ in range(40):
        n = int(rng.integers(1, 7))
        c = random_circuit(rng, n, 30)
        t = tableau_of_circuit(compose(c, invert(c)))
        ident = tableau_of_circuit(Circuit(n))
        assert t == ident


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose(Circuit(2), Circuit(3))


_GATE = st.sampled_from(["CZ", "CNOT", "H", "P", "X", "Z"])


@st.composite
def circuits(draw, max_n=6, max_g=25):
    n = draw(st.integers(2, max_n))
    g = draw(st.integers(0, max_g))
    gates = []
    for _ in range(g):
        kind = draw(_GATE)
        a = draw(st.integers(0, n - 1))
        if kind in ("CZ", "CNOT"):
            b = draw(st.integers(0, n - 2))
            b += b >= a
            gates.append(cz(a, b) if kind == "CZ" else cnot(a, b))
        else:
            gates.append({"H": h, "P": p, "X": x, "Z": z}[kind](a))
    return Circuit(n, gates)


@settings(max_examples=1000, deadline=None)
@given(circuits())
def test_every_circuit_tableau_is_symplectic(c):
    assert tableau_of_circuit(c).is_symplectic()


@settings(max_examples=300, deadline=None)
@given(circuits())
def test_depth_never_exceeds_gate_count(c):
    d = c.two_qubit_depth()
    assert 0 <= d <= c.count_two_qubit()
