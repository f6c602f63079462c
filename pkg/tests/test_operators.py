import math

import numpy as np
import pytest

from conftest import random_series
from fockalg.fock import FockVector, inner, random_vector
from fockalg.operators import (
    FreeSeries,
    adjoint,
    adjoint_power_orbit,
    cesaro_sum,
    commutant_residual,
    compose,
    creation_op,
    decompose_at,
    defect_ranks,
    fourier_of,
    identity_op,
    op_from_matrix,
    op_norm,
    range_complement_level_dims,
    recompose,
    series_to_op,
)
from fockalg.words import BasisIndexer, Word, concat, enumerate_words, word


def delta(n, w, c=1.0):
    return FreeSeries.delta(n, w, c)


# -- creation and symbols -------------------------------------------------------


def test_creation_left_action():
    L = creation_op("left", word(1), 2, 3)
    out = L.apply(FockVector.basis(2, 3, word(2)))
    assert out.coeffs == {word(1, 2): 1.0}


def test_creation_right_action():
    R = creation_op("right", word(1), 2, 3)
    out = R.apply(FockVector.basis(2, 3, word(2)))
    assert out.coeffs == {word(2, 1): 1.0}


def test_creation_overflow_drops():
    L = creation_op("left", word(1), 2, 1)
    assert L.apply(FockVector.basis(2, 1, word(1))).coeffs == {}


def test_creation_word_too_long():
    with pytest.raises(ValueError):
        creation_op("left", word(1, 1), 2, 1)


def test_series_to_op_identity_and_delta():
    I = series_to_op(FreeSeries.one(2), 2, 3)
    assert np.allclose(I.dense(), np.eye(15))
    D = series_to_op(delta(2, word(1)), 2, 3)
    assert np.allclose(D.dense(), creation_op("left", word(1), 2, 3).dense())


def test_series_to_op_mixed_column():
    s = FreeSeries.make(2, {Word(): 0.3, word(1, 2): 0.5})
    X = series_to_op(s, 2, 3)
    col = X.apply(FockVector.basis(2, 3, Word()))
    assert col.coeffs == {Word(): 0.3, word(1, 2): 0.5}


def test_series_degree_overflow():
    with pytest.raises(ValueError):
        series_to_op(delta(2, word(1, 1, 1)), 2, 2)


def test_fourier_roundtrip(rng):
    for _ in range(10):
        s = random_series(rng, 2, 3, 5)
        X = series_to_op(s, 2, 5)
        assert (fourier_of(X, 5) - s).sup_abs() == 0


def test_fourier_of_matrix_backed():
    s = FreeSeries.make(2, {Word(): 0.5, word(2, 1): -1j})
    X = series_to_op(s, 2, 4)
    M = op_from_matrix(X.dense(), 2, 4, frontier=X.frontier)
    assert (fourier_of(M, 4) - s).sup_abs() <= 1e-15
    assert (fourier_of(M, 1) - s.truncate(1)).sup_abs() <= 1e-15
    with pytest.raises(ValueError):
        fourier_of(M, 5)


# -- graded decomposition -------------------------------------------------------


def brute_reconstruct(n, k, scalars, corners):
    """Independent reassembly: scalars plus prefix-concatenated corners."""
    coeffs = {}
    for w, c in scalars.items():
        coeffs[w] = coeffs.get(w, 0) + c
    for w, Xw in corners.items():
        for v, c in Xw.coeffs.items():
            t = concat(w, v)
            coeffs[t] = coeffs.get(t, 0) + c
    return FreeSeries.make(n, coeffs)


def test_decompose_examples():
    s = delta(2, Word())
    scalars, corners = decompose_at(s, 1)
    assert scalars == {Word(): 1}
    assert all(not c.coeffs for c in corners.values())

    s = FreeSeries.make(2, {Word(): 1, word(1): 2, word(1, 2): 3})
    scalars, corners = decompose_at(s, 1)
    assert scalars == {Word(): 1}
    assert corners[word(1)].coeffs == {Word(): 2, word(2): 3}
    assert corners[word(2)].coeffs == {}


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_decompose_reconstruction_exact(rng, k):
    for _ in range(20):
        n = int(rng.integers(1, 4))
        s = random_series(rng, n, 5, 8)
        scalars, corners = decompose_at(s, k)
        assert (brute_reconstruct(n, k, scalars, corners) - s).sup_abs() == 0
        assert (recompose(n, k, scalars, corners) - s).sup_abs() == 0


# -- adjoints and products ------------------------------------------------------


def test_adjoint_strips_prefix():
    L = creation_op("left", word(1), 2, 3)
    assert L.apply_adjoint(FockVector.basis(2, 3, word(1, 2))).coeffs == {word(2): 1.0}
    assert L.apply_adjoint(FockVector.basis(2, 3, word(2))).coeffs == {}


def test_adjoint_involution(rng):
    s = random_series(rng, 2, 2, 4)
    X = series_to_op(s, 2, 4)
    assert np.allclose(adjoint(adjoint(X)).dense(), X.dense())


def test_compose_words():
    n, N = 2, 4
    prod = compose(creation_op("left", word(1), n, N), creation_op("left", word(2), n, N))
    direct = creation_op("left", word(1, 2), n, N)
    assert (prod.symbol - direct.symbol).sup_abs() == 0
    assert np.allclose(prod.dense(), direct.dense())


def test_compose_identity(rng):
    s = random_series(rng, 2, 2, 4)
    X = series_to_op(s, 2, 4)
    assert np.allclose(compose(X, identity_op(2, 4)).dense(), X.dense())


def test_row_isometry_on_frontier():
    n, N = 2, 4
    s = FreeSeries.make(n, {word(1): 1 / math.sqrt(2), word(2): 1 / math.sqrt(2)})
    L = series_to_op(s, n, N)
    prod = compose(adjoint(L), L).dense()
    idx = BasisIndexer(n, N)
    cols = idx.level_offset(L.frontier + 1)
    assert np.allclose(prod[:, :cols], np.eye(idx.size)[:, :cols], atol=1e-12)


def test_right_compose_order():
    n, N = 2, 4
    prod = compose(creation_op("right", word(1), n, N), creation_op("right", word(2), n, N))
    # R_a R_b xi_v = xi_{v b a}
    out = prod.apply(FockVector.basis(n, N, Word()))
    assert out.coeffs == {word(2, 1): 1.0}


def test_apply_matches_matrix(rng):
    s = random_series(rng, 2, 2, 5)
    X = series_to_op(s, 2, 4)
    xi = random_vector(2, 4, 3)
    idx = BasisIndexer(2, 4)
    direct = X.apply(xi).to_dense(idx)
    via_matrix = X.dense() @ xi.to_dense(idx)
    assert np.max(np.abs(direct - via_matrix)) <= 1e-12


# -- norms ------------------------------------------------------------------


def brute_row_sum_matrix(n, N):
    """Independent dense build of L_1 + L_2 from the definition."""
    idx = BasisIndexer(n, N)
    m = np.zeros((idx.size, idx.size), dtype=complex)
    for j in range(idx.size):
        v = idx.word_at(j)
        for i in (1, 2):
            t = Word((i,) + v.letters)
            if len(t) <= N:
                m[idx.index_of(t), j] += 1
    return m


def test_op_norm_examples():
    assert abs(op_norm(creation_op("left", word(1), 2, 3)) - 1.0) <= 1e-12
    zero = series_to_op(FreeSeries.zero(2), 2, 3)
    assert op_norm(zero) == 0.0
    s = FreeSeries.make(2, {word(1): 1.0, word(2): 1.0})
    X = series_to_op(s, 2, 3)
    oracle = np.linalg.svd(brute_row_sum_matrix(2, 3), compute_uv=False)[0]
    assert abs(op_norm(X) - math.sqrt(2)) <= 1e-12
    assert abs(op_norm(X) - oracle) <= 1e-12


def test_op_norm_monotone_in_level(rng):
    s = random_series(rng, 2, 2, 5)
    norms = [op_norm(series_to_op(s, 2, N)) for N in (2, 3, 4, 5)]
    for a, b in zip(norms, norms[1:]):
        assert b >= a - 1e-12


def test_sparse_materialization_path():
    X = creation_op("left", word(1), 2, 12)  # basis 8191 > dense cap
    import scipy.sparse as sp

    assert sp.issparse(X.matrix)
    assert abs(op_norm(X) - 1.0) <= 1e-9
    with pytest.raises(Exception):
        X.dense()


# -- commutant ----------------------------------------------------------------


def test_commutant_symbols_commute(rng):
    assert commutant_residual(creation_op("left", word(1, 2), 2, 4)) <= 1e-12
    for _ in range(5):
        s = random_series(rng, 2, 2, 5)
        assert commutant_residual(series_to_op(s, 2, 5)) <= 1e-12


def test_commutant_rejects_non_symbols(rng):
    idx = BasisIndexer(2, 4)
    d = rng.standard_normal(idx.size)
    X = op_from_matrix(np.diag(d).astype(complex), 2, 4)
    assert commutant_residual(X) > 1e-3


def test_commutant_right_generator():
    assert commutant_residual(creation_op("right", word(1), 2, 4)) > 1e-3
    assert commutant_residual(creation_op("right", word(1), 1, 5)) <= 1e-12


# -- adjoint orbits ---------------------------------------------------------


def make_scalar_shift(lam, N=4):
    mu = math.sqrt(1 - abs(lam) ** 2)
    return series_to_op(FreeSeries.make(2, {Word(): lam, word(1): mu}), 2, N)


def test_orbit_scalar_part_exact():
    with pytest.warns(UserWarning):
        orbit = adjoint_power_orbit(make_scalar_shift(0.5), FockVector.basis(2, 4, Word()), 12)
    for k, val in enumerate(orbit):
        assert abs(val - 0.5**k) <= 1e-12
    assert abs(orbit[10] - 9.765625e-4) <= 1e-12


def test_orbit_shift_terminates():
    L = creation_op("left", word(1), 2, 4)
    orbit = adjoint_power_orbit(L, FockVector.basis(2, 4, word(1, 1, 1)), 6)
    assert orbit[:4] == [1.0, 1.0, 1.0, 1.0]
    assert orbit[4:] == [0.0, 0.0, 0.0]


@pytest.mark.parametrize("lam", [0.3, 0.6 + 0.2j])
def test_orbit_binomial_bound(lam):
    # bound sum_j C(k,j) |lam|^{k-j} ||(A*)^j xi_w|| with ||A|| < 2, per the
    # falling-factorial expansion of (conj(lam) I + A*)^k
    N = 4
    L = make_scalar_shift(lam, N)
    mu = math.sqrt(1 - abs(lam) ** 2)
    A = series_to_op(FreeSeries.make(2, {word(1): mu}), 2, N)
    for w in [Word(), word(1), word(1, 1), word(2, 1)]:
        xi = FockVector.basis(2, N, w)
        with pytest.warns(UserWarning):
            orbit = adjoint_power_orbit(L, xi, 60)
        anorms = [1.0]
        vec = xi
        for _ in range(len(w)):
            vec = A.apply_adjoint(vec)
            anorms.append(vec.norm())
        for k, val in enumerate(orbit):
            bound = sum(
                math.comb(k, j) * abs(lam) ** (k - j) * anorms[j]
                for j in range(min(k, len(w)) + 1)
            )
            loose = sum(
                math.comb(k, j) * abs(lam) ** (k - j) * 2**j
                for j in range(min(k, len(w)) + 1)
            )
            assert val <= bound + 1e-12
            assert bound <= loose + 1e-12


# -- cesaro ------------------------------------------------------------------


def test_cesaro_weights():
    out = cesaro_sum(delta(2, word(1)), 2)
    assert out.coeffs == {word(1): 0.5}
    assert cesaro_sum(delta(2, Word()), 5).coeffs == {Word(): 1.0}


def test_cesaro_vacuum_convergence(rng):
    s = random_series(rng, 2, 3, 6)
    errs = [(cesaro_sum(s, k) - s).l2_norm() for k in range(1, 40)]
    # oracle: error^2 = sum_{|v|<k} (|v|/k)^2 |a_v|^2 + tail mass
    for k in (5, 20):
        exact = math.sqrt(
            sum((len(v) / k) ** 2 * abs(c) ** 2 for v, c in s.coeffs.items() if len(v) < k)
            + sum(abs(c) ** 2 for v, c in s.coeffs.items() if len(v) >= k)
        )
        assert abs(errs[k - 1] - exact) <= 1e-12
    assert errs[-1] < errs[3]


# -- defect ranks and codimension ---------------------------------------------


def test_defect_ranks_shift():
    L = creation_op("left", word(1), 2, 2)
    assert defect_ranks(L) == (4, 4)


def test_defect_ranks_overflow_count():
    n, N = 2, 3
    w = word(1, 2)
    L = creation_op("left", w, n, N)
    killed = sum(n**k for k in range(N + 1) if len(w) + k > N)
    assert defect_ranks(L)[1] == killed


def test_defect_ranks_scalar_unitary():
    U = series_to_op(FreeSeries.make(2, {Word(): np.exp(0.3j)}), 2, 2)
    assert defect_ranks(U) == (0, 0)


def test_range_complement_examples():
    L1 = creation_op("left", word(1), 2, 4)
    assert range_complement_level_dims(L1, 2) == 2
    s = FreeSeries.make(2, {word(1): 1 / math.sqrt(2), word(2): 1 / math.sqrt(2)})
    assert range_complement_level_dims(series_to_op(s, 2, 4), 1) == 1


def test_range_complement_bound(rng):
    n, N = 2, 4
    s = FreeSeries.make(n, {word(1): 0.6, word(2): 0.8})
    L = series_to_op(s, n, N)
    for k in range(1, L.frontier + 1):
        comp = range_complement_level_dims(L, k)
        assert comp >= n**k - (n**k - 1) // (n - 1) > 0


def test_range_complement_hypothesis_flagged():
    with pytest.raises(ValueError):
        range_complement_level_dims(identity_op(2, 3), 1)


# -- structural invariants ------------------------------------------------------


def test_compression_consistency(rng):
    n, N = 2, 5
    s = random_series(rng, n, 2, 5)
    X = series_to_op(s, n, N)
    for v in [Word(), word(2), word(1, 2), word(2, 2, 1)]:
        if len(v) > N - s.degree():
            continue
        got = X.apply(FockVector.basis(n, N, v))
        want = {concat(w, v): c for w, c in s.coeffs.items()}
        assert set(got.coeffs) == set(want)
        assert max(abs(got.coeffs[w] - want[w]) for w in want) <= 1e-15


def test_word_isometry_on_frontier():
    n, N = 2, 4
    w = word(1, 2)
    L = creation_op("left", w, n, N)
    for k in range(N - len(w) + 1):
        for v in enumerate_words(n, k):
            xi = FockVector.basis(n, N, v)
            assert abs(L.apply(xi).norm() - 1.0) <= 1e-15


def test_unitary_rigidity_bessel(rng):
    # normalized symbol: coefficient mass off the unit splits as 1 - |a_0|^2
    for _ in range(10):
        s = random_series(rng, 2, 3, 6)
        s = s.scale(1.0 / s.l2_norm())
        a0 = abs(s.coeff(Word())) ** 2
        rest = sum(abs(c) ** 2 for w, c in s.coeffs.items() if len(w) > 0)
        assert abs(rest - (1.0 - a0)) <= 1e-12


def test_series_records_roundtrip():
    s = FreeSeries.make(2, {Word(): 0.5, word(2, 1): -1j, word(1): 2.0})
    back = FreeSeries.from_records(2, s.to_records())
    assert (back - s).sup_abs() == 0


def test_frontier_rules():
    n, N = 2, 6
    X = series_to_op(delta(n, word(1, 2)), n, N)
    assert X.frontier == N - 2
    prod = compose(X, X)
    assert prod.frontier == N - 4
    A = op_from_matrix(X.dense(), n, N, frontier=3)
    B = op_from_matrix(X.dense(), n, N, frontier=2)
    assert compose(A, B).frontier == 2
    assert adjoint(X).frontier == N
