import numpy as np
import pytest

from cliffdepth import bounds
from cliffdepth.circuit import Circuit, cnot, cz, h, p, x, z
from cliffdepth.clifford import (
    CliffordTableau,
    decompose_tableau,
    random_clifford_circuit,
    random_tableau,
    recompose_layers,
    synth_clifford,
    tableau_of_circuit,
    tableau_product,
)
from cliffdepth.verify import tableaux_equal

from sv_oracle import tableau_matches_unitary


def test_identity_tableau():
    t = CliffordTableau.identity(4)
    assert t.is_symplectic()
    assert t == tableau_of_circuit(Circuit(4))


def test_single_gate_tableaus_match_unitaries():
    for mk in (h(0), p(0), x(0), z(0)):
        c = Circuit(1, [mk])
        assert tableau_matches_unitary(tableau_of_circuit(c), c)
    for mk in (cnot(0, 1), cnot(1, 0), cz(0, 1)):
        c = Circuit(2, [mk])
        assert tableau_matches_unitary(tableau_of_circuit(c), c)


def test_random_circuit_tableaus_match_unitaries():
    rng = np.random.default_rng(40)
    for _ in range(25):
        n = int(rng.integers(1, 5))
        c = random_clifford_circuit(rng, n)
        assert tableau_matches_unitary(tableau_of_circuit(c), c)


def test_text_roundtrip():
    rng = np.random.default_rng(41)
    for n in (1, 3, 7, 20):
        t = random_tableau(rng, n)
        assert CliffordTableau.from_text(t.to_text()) == t


def test_tableau_product_is_composition():
    rng = np.random.default_rng(42)
    for _ in range(60):
        n = int(rng.integers(1, 8))
        a = random_clifford_circuit(rng, n)
        b = random_clifford_circuit(rng, n)
        combined = Circuit(n, a.gates + b.gates)
        prod = tableau_product(tableau_of_circuit(a), tableau_of_circuit(b))
        assert prod == tableau_of_circuit(combined)


def test_decompose_recompose_exact():
    rng = np.random.default_rng(43)
    for _ in range(80):
        n = int(rng.integers(1, 13))
        t = random_tableau(rng, n)
        layers = decompose_tableau(t)
        back = tableau_of_circuit(recompose_layers(layers))
        assert tableaux_equal(back, t)


def test_synth_clifford_exact_small():
    rng = np.random.default_rng(44)
    for _ in range(60):
        n = int(rng.integers(1, 11))
        t = random_tableau(rng, n)
        c = synth_clifford(t)
        assert tableaux_equal(tableau_of_circuit(c), t)


def test_synth_clifford_unitary_check():
    rng = np.random.default_rng(45)
    for _ in range(15):
        n = int(rng.integers(1, 5))
        t = random_tableau(rng, n)
        c = synth_clifford(t)
        assert tableau_matches_unitary(t, c)


def test_synth_clifford_depth_bound():
    rng = np.random.default_rng(46)
    for n in (43, 64, 96):
        for _ in range(2):
            t = random_tableau(rng, n)
            c = synth_clifford(t)
            assert tableaux_equal(tableau_of_circuit(c), t)
            assert c.two_qubit_depth() <= bounds.CLIFFORD_BOUND.value(n)


def test_tableaux_equal_size_mismatch():
    with pytest.raises(ValueError):
        tableaux_equal(CliffordTableau.identity(2), CliffordTableau.identity(3))


def test_non_symplectic_rejected():
    t = CliffordTableau.identity(2)
    d, ph = t.to_dense()
    d[0] ^= d[1]
    d[0, 0] = d[0, 0]  # keep dtype
    bad = d.copy()
    bad[0] = 0
    t2 = CliffordTableau.from_dense(bad, ph)
    assert not t2.is_symplectic()
    with pytest.raises(ValueError):
        decompose_tableau(t2)
