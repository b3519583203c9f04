import numpy as np
import pytest

from cliffdepth.gf2 import (
    BitMatrix,
    Permutation,
    SingularMatrixError,
    lu_decompose,
    mat_inverse,
    mat_mul,
    mat_vec,
    perm_to_transposition_layers,
    random_invertible,
    random_matrix,
    rank_and_pivots,
    solve_right,
)


def dense_mul(a, b):
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def test_pack_roundtrip():
    rng = np.random.default_rng(0)
    for _ in range(50):
        r = int(rng.integers(1, 100))
        c = int(rng.integers(1, 200))
        d = rng.integers(0, 2, size=(r, c), dtype=np.uint8)
        assert np.array_equal(BitMatrix.from_dense(d).to_dense(), d)


def test_text_roundtrip():
    rng = np.random.default_rng(1)
    m = random_matrix(rng, 7, 13)
    assert BitMatrix.from_text(m.to_text()) == m


def test_text_rejects_bad_rows():
    with pytest.raises(ValueError):
        BitMatrix.from_text("2 2\n10\n1")
    with pytest.raises(ValueError):
        BitMatrix.from_text("1 3\n012")


def test_mat_mul_against_dense():
    rng = np.random.default_rng(2)
    for _ in range(30):
        k, l, m = (int(v) for v in rng.integers(1, 90, size=3))
        a = random_matrix(rng, k, l)
        b = random_matrix(rng, l, m)
        assert np.array_equal(
            mat_mul(a, b).to_dense(), dense_mul(a.to_dense(), b.to_dense())
        )


def test_mat_vec():
    rng = np.random.default_rng(3)
    a = random_matrix(rng, 9, 17)
    v = rng.integers(0, 2, 17, dtype=np.uint8)
    assert np.array_equal(mat_vec(a, v), dense_mul(a.to_dense(), v.reshape(-1, 1)).ravel())


def test_inverse():
    rng = np.random.default_rng(4)
    for n in (1, 2, 3, 8, 33, 64, 100):
        a = random_invertible(rng, n)
        assert mat_mul(a, mat_inverse(a)) == BitMatrix.identity(n)


def test_singular_raises():
    z = BitMatrix.zeros(3, 3)
    with pytest.raises(SingularMatrixError):
        mat_inverse(z)
    with pytest.raises(SingularMatrixError):
        lu_decompose(z)


def test_solve_right():
    rng = np.random.default_rng(5)
    a = random_invertible(rng, 20)
    b = random_matrix(rng, 20, 7)
    x = solve_right(a, b)
    assert mat_mul(a, x) == b


def test_lu_identity():
    perm, low, up = lu_decompose(BitMatrix.identity(5))
    assert perm.is_identity()
    assert low == BitMatrix.identity(5)
    assert up == BitMatrix.identity(5)


def test_lu_upper_triangular_input_trivial():
    # already-triangular input needs no pivoting at all
    l14 = np.eye(14, dtype=np.uint8)
    l14[:7, 7:] = 1
    perm, low, up = lu_decompose(BitMatrix.from_dense(l14))
    assert perm.is_identity()
    assert low == BitMatrix.identity(14)
    assert np.array_equal(up.to_dense(), l14)


def test_lu_reconstruction():
    rng = np.random.default_rng(6)
    for _ in range(40):
        n = int(rng.integers(1, 40))
        r = random_invertible(rng, n)
        perm, low, up = lu_decompose(r)
        prod = mat_mul(low, up).to_dense()
        rd = r.to_dense()
        for i in range(n):
            assert np.array_equal(prod[i], rd[int(perm.map[i])])
        assert low.is_lower_triangular()
        assert up.is_upper_triangular()


def test_random_invertible_is_invertible():
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(1, 60))
        mat_inverse(random_invertible(rng, n))  # raises if singular


def test_rank_and_pivots():
    rng = np.random.default_rng(8)
    for _ in range(40):
        r = int(rng.integers(1, 25))
        c = int(rng.integers(1, 25))
        a = random_matrix(rng, r, c)
        rank, pivots = rank_and_pivots(a)
        assert rank == len(pivots)
        # GF(2) rank cross-check by elimination on the dense form
        d = a.to_dense().copy()
        rr = 0
        for j in range(c):
            nz = [i for i in range(rr, r) if d[i, j]]
            if not nz:
                continue
            d[[rr, nz[0]]] = d[[nz[0], rr]]
            for i in range(r):
                if i != rr and d[i, j]:
                    d[i] ^= d[rr]
            rr += 1
        assert rank == rr


def apply_layers(layers, n):
    out = list(range(n))
    for layer in layers:
        for (i, j) in layer:
            out[i], out[j] = out[j], out[i]
    return out


def test_perm_transposition_layers():
    rng = np.random.default_rng(9)
    for _ in range(200):
        n = int(rng.integers(1, 30))
        p = Permutation(rng.permutation(n))
        layers = perm_to_transposition_layers(p)
        assert len(layers) <= 2
        for layer in layers:
            flat = [q for pair in layer for q in pair]
            assert len(flat) == len(set(flat))
        # wire relabeling: the value starting at i must end on wire map[i]
        wires = apply_layers(layers, n)
        ends = [0] * n
        for pos, val in enumerate(wires):
            ends[val] = pos
        assert ends == list(p.map)


def test_permutation_matrix():
    p = Permutation([2, 0, 1])
    q = p.matrix().to_dense()
    for i in range(3):
        v = np.zeros(3, dtype=np.uint8)
        v[i] = 1
        assert np.argmax(dense_mul(q, v.reshape(-1, 1)).ravel()) == p.map[i]


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
