import numpy as np
import pytest

from gapfill import DimensionTooLarge, inf_input_upper, op_norm, spectral_norm
from gapfill.opnorms import _phase_grid, vec_norm

ALL_NORMS = (1, 2, np.inf)


def random_matrix(rng, n, complex_entries=True):
    real = rng.standard_normal((n, n))
    if not complex_entries:
        return real
    return real + 1j * rng.standard_normal((n, n))


def sampled_lower_bound(S, r1, r2, rng, n_samples=4000):
    """Brute-force oracle: max ||Sv||_{r2} over random unit-r1 vectors."""
    n = S.shape[1]
    best = 0.0
    for _ in range(n_samples):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= vec_norm(v, r1)
        best = max(best, vec_norm(S @ v, r2))
    return best


def test_one_by_one_is_entry_modulus():
    c = 0.3 - 1.2j
    S = np.array([[c]])
    for r1 in ALL_NORMS:
        for r2 in ALL_NORMS:
            assert op_norm(S, r1, r2).value == pytest.approx(abs(c), rel=1e-12)


def test_identity_and_row_example():
    assert op_norm(np.eye(2), 2, 2).value == pytest.approx(1.0, rel=1e-10)
    rep = op_norm(np.array([[1.0, 1.0], [0.0, 0.0]]), np.inf, np.inf)
    assert rep.value == pytest.approx(2.0, abs=1e-14)
    assert rep.method == "enumerated"


def test_exact_formulas_against_svd_and_columns():
    rng = np.random.default_rng(31)
    for n in (2, 3, 5):
        S = random_matrix(rng, n)
        # largest singular value via an independent decomposition
        assert op_norm(S, 2, 2).value == pytest.approx(
            np.linalg.svd(S, compute_uv=False)[0], rel=1e-8
        )
        # from l1: max column norm
        for r2 in ALL_NORMS:
            want = max(vec_norm(S[:, j], r2) for j in range(n))
            assert op_norm(S, 1, r2).value == pytest.approx(want, rel=1e-13)
        # to max-norm from l2: max row norm
        want = max(vec_norm(S[i, :], 2) for i in range(n))
        assert op_norm(S, 2, np.inf).value == pytest.approx(want, rel=1e-13)


def test_real_sign_enumeration_is_exact():
    rng = np.random.default_rng(17)
    for n in (2, 3, 4):
        S = random_matrix(rng, n, complex_entries=False)
        # (inf, inf) has the closed form max row absolute sum
        want = np.abs(S).sum(axis=1).max()
        rep = op_norm(S, np.inf, np.inf)
        assert rep.method == "enumerated"
        assert rep.value == pytest.approx(want, rel=1e-13)
        # enumeration dominates any sampled probe for the other targets
        for r2 in ALL_NORMS:
            rep = op_norm(S, np.inf, r2)
            probe = sampled_lower_bound(S, np.inf, r2, rng, 500)
            assert rep.value >= probe - 1e-9


def test_sampled_bounds_bracket_complex_norms():
    rng = np.random.default_rng(23)
    for n in (2, 3, 4, 6):
        S = random_matrix(rng, n)
        for r1, r2 in [(np.inf, 1), (np.inf, 2), (np.inf, np.inf), (2, 1)]:
            rep = op_norm(S, r1, r2)
            lower = sampled_lower_bound(S, r1, r2, rng, 1500)
            assert rep.value >= lower * (1 - 1e-6)
            if r1 == np.inf:
                assert rep.method == "sampled"
                assert rep.value <= inf_input_upper(S, r2) * (1 + 1e-9)


def test_phase_grid_monotone_under_refinement():
    rng = np.random.default_rng(41)
    for _ in range(5):
        S = random_matrix(rng, 3)
        values = [_phase_grid(S, 2.0, p) for p in (8, 16, 32, 64)]
        assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))


def test_submultiplicative_spectral_norm():
    rng = np.random.default_rng(29)
    for _ in range(10):
        S = random_matrix(rng, 4)
        T = random_matrix(rng, 4)
        lhs = op_norm(S @ T, 2, 2).value
        rhs = op_norm(S, 2, 2).value * op_norm(T, 2, 2).value
        assert lhs <= rhs * (1 + 1e-9)


def test_spectral_norm_matches_svd_on_awkward_matrices():
    rng = np.random.default_rng(37)
    # repeated top singular values stall the vector but not the value
    S = np.diag([3.0, 3.0, 1.0]).astype(complex)
    assert spectral_norm(S) == pytest.approx(3.0, rel=1e-10)
    S = random_matrix(rng, 7)
    assert spectral_norm(S) == pytest.approx(
        np.linalg.svd(S, compute_uv=False)[0], rel=1e-8
    )
    assert spectral_norm(np.zeros((3, 3))) == 0.0


def test_dimension_guards():
    with pytest.raises(DimensionTooLarge):
        op_norm(np.eye(18), 2, 2)
    with pytest.raises(ValueError):
        op_norm(np.ones((2, 3)), 2, 2)
    with pytest.raises(ValueError):
        op_norm(np.eye(2), 3, 2)
