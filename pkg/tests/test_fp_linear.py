import random

import pytest

from morava_emss import fp_linear as fl
from morava_emss.fp_linear import FpMatrix


def test_rank_identity():
    assert fl.rank(FpMatrix.identity(3, 3)) == 3


def test_rank_zero_matrix():
    assert fl.rank(FpMatrix.zero(3, 2, 5)) == 0


def test_rank_dependent_rows_f5():
    m = FpMatrix.from_rows(5, [[1, 2], [2, 4]])
    assert fl.rank(m) == 1


def test_kernel_identity_empty():
    assert fl.kernel_basis(FpMatrix.identity(3, 4)) == []


def test_kernel_zero_map():
    basis = fl.kernel_basis(FpMatrix.zero(3, 2, 2))
    assert basis == [{0: 1}, {1: 1}]


def test_kernel_sum_of_coordinates_f3():
    # x + y = 0 over F_3: kernel spanned by (1, 2)
    m = FpMatrix.from_rows(3, [[1, 1]])
    basis = fl.kernel_basis(m)
    assert basis == [{1: 1, 0: 2}]


def test_homology_both_maps_zero():
    z = FpMatrix.zero(3, 1, 1)
    d_in = FpMatrix.zero(3, 1, 0)
    assert fl.homology(d_in, z).dimension == 1


def test_homology_identity_then_zero():
    for k in (1, 3):
        d_in = FpMatrix.identity(5, k)
        d_out = FpMatrix.zero(5, 2, k)
        assert fl.homology(d_in, d_out).dimension == 0


def test_homology_kernel_of_sum():
    d_in = FpMatrix.zero(3, 2, 0)
    d_out = FpMatrix.from_rows(3, [[1, 1]])
    h = fl.homology(d_in, d_out)
    assert h.dimension == 1
    assert len(h.representatives) == 1


def test_not_a_complex():
    d_in = FpMatrix.identity(3, 2)
    d_out = FpMatrix.identity(3, 2)
    with pytest.raises(fl.NotAComplexError, match="not a complex"):
        fl.homology(d_in, d_out)


def _random_matrix(rng, p, rows, cols, density=0.4):
    ent = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                ent[(r, c)] = rng.randrange(1, p)
    return FpMatrix(p, rows, cols, ent)


def test_rank_nullity_random():
    rng = random.Random(11)
    for _ in range(40):
        p = rng.choice([3, 5])
        m = _random_matrix(rng, p, rng.randrange(1, 8), rng.randrange(1, 8))
        assert fl.rank(m) + len(fl.kernel_basis(m)) == m.cols


def test_rank_permutation_invariance():
    rng = random.Random(23)
    for _ in range(25):
        p = rng.choice([3, 5])
        rows, cols = rng.randrange(2, 7), rng.randrange(2, 7)
        m = _random_matrix(rng, p, rows, cols)
        rp = list(range(rows))
        cp = list(range(cols))
        rng.shuffle(rp)
        rng.shuffle(cp)
        permuted = FpMatrix(p, rows, cols, {
            (rp[r], cp[c]): v for (r, c), v in m.entries.items()})
        assert fl.rank(m) == fl.rank(permuted)


def test_kernel_vectors_are_in_kernel():
    rng = random.Random(5)
    for _ in range(20):
        p = rng.choice([3, 5])
        m = _random_matrix(rng, p, rng.randrange(1, 7), rng.randrange(1, 7))
        for vec in fl.kernel_basis(m):
            assert m.apply(vec) == {}


def _random_complex(rng, p):
    """A pair (d_in, d_out) with d_out . d_in = 0, built from a left kernel."""
    mid = rng.randrange(2, 7)
    d_in = _random_matrix(rng, p, mid, rng.randrange(1, 6))
    left_kernel = fl.kernel_basis(d_in.transpose())
    out_rows = rng.randrange(1, 5)
    ent = {}
    for r in range(out_rows):
        for vec in left_kernel:
            c = rng.randrange(0, p)
            for col, v in vec.items():
                ent[(r, col)] = (ent.get((r, col), 0) + c * v) % p
    d_out = FpMatrix(p, out_rows, mid, {k: v for k, v in ent.items() if v})
    return d_in, d_out


def test_homology_agrees_with_rank_arithmetic():
    rng = random.Random(77)
    for _ in range(30):
        p = rng.choice([3, 5])
        d_in, d_out = _random_complex(rng, p)
        h = fl.homology(d_in, d_out)
        expected = (d_out.cols - fl.rank(d_out)) - fl.rank(d_in)
        assert h.dimension == expected
        # representatives are cycles, independent modulo the image
        image = d_in.col_dicts()
        span = list(image)
        for rep in h.representatives:
            assert d_out.apply(rep) == {}
            assert fl.reduce_mod_span(rep, span, p) != {}
            span.append(rep)


def test_homology_deterministic():
    rng = random.Random(3)
    d_in, d_out = _random_complex(rng, 5)
    h1 = fl.homology(d_in, d_out)
    h2 = fl.homology(d_in, d_out)
    assert h1.representatives == h2.representatives
