import numpy as np
import pytest

from cliffdepth.circuit import Circuit, cnot, cz, h, p, x, z
from cliffdepth.gf2 import BitMatrix
from cliffdepth.verify import (
    cz_pattern_phases,
    linear_action,
    phase_oracle,
    tableaux_equal,
)


def test_linear_action_single_cnot():
    m = linear_action(Circuit(2, [cnot(0, 1)])).to_dense()
    assert np.array_equal(m, [[1, 0], [1, 1]])


def test_linear_action_composition_order():
    a = Circuit(3, [cnot(0, 1)])
    b = Circuit(3, [cnot(1, 2)])
    from cliffdepth.circuit import compose
    from cliffdepth.gf2 import mat_mul

    lhs = linear_action(compose(a, b))
    rhs = mat_mul(linear_action(b), linear_action(a))
    assert lhs == rhs


def test_linear_action_h_conjugated_forms():
    # H b; CZ a b; H b  ==  CNOT a->b
    c = Circuit(2, [h(1), cz(0, 1), h(1)])
    assert linear_action(c) == linear_action(Circuit(2, [cnot(0, 1)]))
    # H both ends flips a CNOT
    c = Circuit(2, [h(0), h(1), cnot(0, 1), h(0), h(1)])
    assert linear_action(c) == linear_action(Circuit(2, [cnot(1, 0)]))


def test_linear_action_rejects_nonlinear():
    with pytest.raises(ValueError):
        linear_action(Circuit(2, [cz(0, 1)]))
    with pytest.raises(ValueError):
        linear_action(Circuit(2, [h(0), cnot(0, 1)]))
    with pytest.raises(ValueError):
        linear_action(Circuit(1, [h(0)]))
    with pytest.raises(ValueError):
        linear_action(Circuit(1, [p(0)]))


def test_phase_oracle_single_cz():
    ph = phase_oracle(Circuit(2, [cz(0, 1)]))
    assert list(ph) == [0, 0, 0, 1]


def test_phase_oracle_z_and_x():
    # X 0; Z 0; X 0 flips which labels pick up the Z phase
    ph = phase_oracle(Circuit(1, [x(0), z(0), x(0)]))
    assert list(ph) == [1, 0]


def test_phase_oracle_compute_uncompute():
    c = Circuit(3, [cnot(0, 1), cz(1, 2), cnot(0, 1)])
    ph = phase_oracle(c)
    labels = np.arange(8)
    expect = (((labels >> 0) ^ (labels >> 1)) & (labels >> 2) & 1).astype(np.uint8)
    assert np.array_equal(ph, expect)


def test_phase_oracle_rejects_permuting_circuit():
    with pytest.raises(ValueError):
        phase_oracle(Circuit(2, [cnot(0, 1)]))


def test_phase_oracle_size_limit():
    with pytest.raises(ValueError):
        phase_oracle(Circuit(13))


def test_cz_pattern_phases_matches_direct_circuit():
    rng = np.random.default_rng(50)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        u = np.triu(rng.integers(0, 2, size=(n, n), dtype=np.uint8), 1)
        bits = u | u.T
        gates = [cz(i, j) for i in range(n) for j in range(i + 1, n) if bits[i, j]]
        assert np.array_equal(
            phase_oracle(Circuit(n, gates)), cz_pattern_phases(bits)
        )


def test_tableaux_equal():
    from cliffdepth.clifford import CliffordTableau, tableau_of_circuit

    a = tableau_of_circuit(Circuit(2, [h(0)]))
    b = tableau_of_circuit(Circuit(2, [h(0)]))
    assert tableaux_equal(a, b)
    c = tableau_of_circuit(Circuit(2, [h(1)]))
    assert not tableaux_equal(a, c)
    with pytest.raises(ValueError):
        tableaux_equal(a, CliffordTableau.identity(3))
