import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cliffdepth.patterns import (
    M01Pattern,
    bipartite_edge_color,
    complete_bipartite_rounds,
    halve_weights,
    synth_m01,
)
from cliffdepth.verify import phase_oracle


patterns = st.builds(
    M01Pattern.from_dense,
    st.integers(1, 12).flatmap(
        lambda k: st.integers(1, 12).flatmap(
            lambda m: arrays(np.uint8, (k, m), elements=st.integers(0, 1))
        )
    ),
)


@settings(max_examples=1000, deadline=None)
@given(patterns)
def test_halving_postconditions(p):
    hr = halve_weights(p)
    red = hr.reduced.bits
    assert red.sum(axis=1).max(initial=0) <= p.m // 2
    assert red.sum(axis=0).max(initial=0) <= p.k // 2
    # reduced pattern differs from the original exactly by the flipped lines
    recon = red.copy()
    for i in hr.row_flips:
        recon[i] ^= 1
    for j in hr.col_flips:
        recon[:, j] ^= 1
    assert np.array_equal(recon, p.bits)


@settings(max_examples=1000, deadline=None)
@given(patterns)
def test_edge_coloring_is_partition_into_matchings(p):
    classes = bipartite_edge_color(p)
    delta = int(
        max(p.bits.sum(axis=1).max(initial=0), p.bits.sum(axis=0).max(initial=0))
    )
    assert len(classes) <= delta
    seen = set()
    for cl in classes:
        rows = [i for (i, _) in cl]
        cols = [j for (_, j) in cl]
        assert len(rows) == len(set(rows))
        assert len(cols) == len(set(cols))
        for e in cl:
            assert p.bits[e] == 1
            assert e not in seen
            seen.add(e)
    assert len(seen) == p.total_ones()


def test_edge_coloring_respects_cap():
    p = M01Pattern.from_dense(np.ones((3, 3), dtype=np.uint8))
    with pytest.raises(ValueError):
        bipartite_edge_color(p, max_colors=2)
    assert len(bipartite_edge_color(p, max_colors=3)) == 3


def test_synth_m01_phases_exhaustive():
    rng = np.random.default_rng(14)
    for _ in range(120):
        n = int(rng.integers(2, 10))
        qubits = list(rng.permutation(n))
        k = int(rng.integers(1, n))
        m = int(rng.integers(1, n - k + 1))
        a = [int(q) for q in qubits[:k]]
        b = [int(q) for q in qubits[k:k + m]]
        p = M01Pattern.random(rng, k, m)
        circ = synth_m01(a, b, p, n)
        labels = np.arange(1 << n, dtype=np.uint32)
        expect = np.zeros(labels.shape, dtype=np.uint8)
        for i in range(k):
            for j in range(m):
                if p.bits[i, j]:
                    expect ^= (
                        (labels >> np.uint32(a[i]))
                        & (labels >> np.uint32(b[j]))
                        & np.uint32(1)
                    ).astype(np.uint8)
        assert np.array_equal(phase_oracle(circ), expect)


def test_synth_m01_validation():
    p = M01Pattern.from_dense(np.ones((2, 2), dtype=np.uint8))
    with pytest.raises(ValueError):
        synth_m01([0, 1], [1, 2], p)
    with pytest.raises(ValueError):
        synth_m01([0], [1, 2], p)


def test_complete_bipartite_rounds():
    for s in range(1, 9):
        for t in range(1, 9):
            rounds = complete_bipartite_rounds(s, t)
            assert len(rounds) == max(s, t)
            edges = set()
            for r in rounds:
                left = [i for (i, _) in r]
                right = [j for (_, j) in r]
                assert len(left) == len(set(left))
                assert len(right) == len(set(right))
                edges |= set(r)
            assert edges == {(i, j) for i in range(s) for j in range(t)}
