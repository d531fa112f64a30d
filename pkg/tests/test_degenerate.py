import numpy as np
import pytest

from gapfill import (
    DimensionTooLarge,
    FiniteSequence,
    GapSpec,
    InvalidGap,
    MissingGroundTruth,
    clear_gap,
    constraint_matrix,
    from_pairs,
    make_degenerate,
    minimax_error_identity,
    recover_deg,
    recover_deg_single,
    scale,
    synth_ell1,
    weighted_moment,
    z_derivatives,
)


# --- constraint matrix ----------------------------------------------------


def test_constraint_matrix_examples():
    B = constraint_matrix(np.pi, GapSpec(3, 0)).entries
    assert B.shape == (1, 1)
    assert B[0, 0] == pytest.approx(-1.0, abs=1e-15)

    omega = 0.9
    B = constraint_matrix(omega, GapSpec(0, 1)).entries
    e = np.exp(-1j * omega)
    np.testing.assert_allclose(B, [[1.0, e], [0.0, -1j * e]], rtol=1e-14)
    assert np.linalg.det(B) == pytest.approx(-1j * e, rel=1e-14)

    B = constraint_matrix(1.234, GapSpec(0, 0)).entries
    assert B[0, 0] == pytest.approx(1.0, abs=1e-15)


def test_constraint_matrix_unit_modulus_single():
    for s in (-4, 0, 9):
        B = constraint_matrix(2.2, GapSpec(s, 0)).entries
        assert abs(B[0, 0]) == pytest.approx(1.0, rel=1e-15)


def test_constraint_matrix_determinant_modulus_frequency_free():
    # B factors as a Vandermonde times a diagonal of unit phases, so |det|
    # cannot depend on the probe frequency
    gap = GapSpec(0, 3)
    mags = [abs(np.linalg.det(constraint_matrix(w, gap).entries))
            for w in np.linspace(-3.0, np.pi, 17)]
    ref = mags[0]
    assert ref > 0
    for v in mags:
        assert abs(v - ref) <= 1e-10 * ref


def test_constraint_matrix_validation():
    with pytest.raises(InvalidGap):
        constraint_matrix(np.pi, GapSpec(2, 1))
    with pytest.raises(ValueError):
        constraint_matrix(3.5, GapSpec(0, 0))
    with pytest.raises(ValueError):
        constraint_matrix(-np.pi, GapSpec(0, 0))


# --- recovery -------------------------------------------------------------


def test_recover_examples():
    x = from_pairs([(1, 1.0)])
    res = recover_deg(x, GapSpec(0, 0), np.pi)
    assert res.recovered[0] == pytest.approx(1.0, abs=1e-14)
    # completed sequence really is degenerate: X(-1) = 1*1 + 1*(-1) = 0
    assert abs(res.residual_probe.derivs[0]) <= 1e-14

    x = from_pairs([(1, 1.0), (-1, 1.0)])
    res = recover_deg(x, GapSpec(0, 0), np.pi)
    assert res.recovered[0] == pytest.approx(2.0, abs=1e-14)

    zero = FiniteSequence(-4, np.zeros(9))
    res = recover_deg(zero, GapSpec(0, 2), np.pi)
    np.testing.assert_array_equal(res.recovered, np.zeros(3))


def test_single_formula_examples():
    assert recover_deg_single(from_pairs([(1, 1.0)]), 0, np.pi) == pytest.approx(1.0)
    got = recover_deg_single(from_pairs([(2, 1.0), (4, 1.0)]), 0, np.pi)
    assert got == pytest.approx(-2.0, abs=1e-14)
    assert recover_deg_single(FiniteSequence(), 0, 1.0) == 0


def test_single_and_matrix_paths_agree():
    rng = np.random.default_rng(303)
    for _ in range(20):
        x = FiniteSequence(-30, rng.standard_normal(61) + 1j * rng.standard_normal(61))
        s = int(rng.integers(-10, 11))
        omega0 = float(rng.uniform(-3.0, np.pi))
        full = recover_deg(x, GapSpec(s, 0), omega0).recovered[0]
        single = recover_deg_single(x, s, omega0)
        assert abs(full - single) <= 1e-12 * (1 + abs(full))


def test_completed_sequence_passes_degeneracy_probe():
    rng = np.random.default_rng(13)
    for m, omega0 in [(0, np.pi), (1, np.pi / 2), (3, -1.1)]:
        x = clear_gap(synth_ell1(40, rng), GapSpec(0, m))
        res = recover_deg(x, GapSpec(0, m), omega0)
        tol = 1e-10 * (1 + weighted_moment(x, m))
        assert np.abs(res.residual_probe.derivs).max() <= tol
        # linear-system residual obeys the same contract
        B = constraint_matrix(omega0, GapSpec(0, m)).entries
        resid = np.abs(B @ res.recovered - res.rhs).max()
        assert resid <= 1e-10 * (1 + np.abs(res.rhs).max())


def test_recovery_idempotent_on_degenerate_class():
    rng = np.random.default_rng(29)
    for m in (0, 1, 2, 3):
        gap = GapSpec(0, m)
        member = make_degenerate(synth_ell1(50, rng), gap, np.pi)
        truth = np.array([member.at(t) for t in gap.indices])
        rec = recover_deg(clear_gap(member, gap), gap, np.pi).recovered
        np.testing.assert_allclose(rec, truth, atol=1e-12)
        # running the estimator again on its own completion changes nothing
        again = recover_deg(clear_gap(member, gap), gap, np.pi).recovered
        np.testing.assert_allclose(again, rec, atol=1e-12)


def test_validation_and_order_cap():
    x = from_pairs([(20, 1.0)])
    with pytest.raises(InvalidGap):
        recover_deg(x, GapSpec(1, 1), np.pi)
    with pytest.raises(ValueError):
        recover_deg(x, GapSpec(0, 0), 7.0)
    with pytest.raises(DimensionTooLarge):
        recover_deg(x, GapSpec(0, 17), np.pi)
    # override accepted (zero off-gap input keeps the big system trivial)
    zero = FiniteSequence(18, np.zeros(5))
    res = recover_deg(zero, GapSpec(0, 17), np.pi, allow_high_order=True)
    np.testing.assert_array_equal(res.recovered, np.zeros(18))


# --- minimax error identity -----------------------------------------------


def test_error_identity_examples():
    # degenerate input: probe vanishes, so recovery is error-free
    member = make_degenerate(synth_ell1(30, 7), GapSpec(0, 0), np.pi)
    err, probe = minimax_error_identity(member, 0, np.pi)
    assert abs(probe) <= 1e-12
    assert abs(err) <= 1e-12

    # single spike at the missing index: estimate 0, truth 1
    err, probe = minimax_error_identity(from_pairs([(0, 1.0)]), 0, np.pi)
    assert probe == pytest.approx(1.0)
    assert err == pytest.approx(-1.0)


def test_error_identity_random():
    rng = np.random.default_rng(99)
    for _ in range(30):
        x = FiniteSequence(-25, rng.standard_normal(51) + 1j * rng.standard_normal(51))
        s = int(rng.integers(-20, 21))
        omega0 = float(rng.uniform(-3.1, np.pi))
        err, probe = minimax_error_identity(x, s, omega0)
        locked = -np.exp(1j * omega0 * s) * probe
        assert abs(err - locked) <= 1e-12 * (1 + abs(err))
        assert abs(err) == pytest.approx(abs(probe), rel=1e-12)


def test_error_scales_linearly():
    x = from_pairs([(0, 1.0), (3, 2.0 - 1j)])
    err1, _ = minimax_error_identity(x, 0, np.pi)
    err2, _ = minimax_error_identity(scale(x, 2.5j), 0, np.pi)
    assert err2 == pytest.approx(2.5j * err1, rel=1e-13)


def test_error_identity_requires_ground_truth():
    x = from_pairs([(1, 1.0)])
    with pytest.raises(MissingGroundTruth):
        minimax_error_identity(x, 5, np.pi)


# --- generator interplay ----------------------------------------------------


def test_make_degenerate_examples():
    out = make_degenerate(from_pairs([(1, 1.0)]), GapSpec(0, 0), np.pi)
    assert out.at(0) == pytest.approx(1.0) and out.at(1) == 1.0

    member = make_degenerate(synth_ell1(25, 3), GapSpec(0, 1), np.pi)
    twice = make_degenerate(member, GapSpec(0, 1), np.pi)
    for t in (0, 1):
        assert abs(twice.at(t) - member.at(t)) <= 1e-12

    zero = FiniteSequence(-3, np.zeros(7))
    out = make_degenerate(zero, GapSpec(0, 0), np.pi)
    assert np.all(out.values == 0)


def test_degeneracy_probe_of_member_vanishes():
    member = make_degenerate(synth_ell1(30, 11), GapSpec(0, 2), np.pi / 2)
    probe = z_derivatives(member, np.pi / 2, 2)
    assert np.abs(probe.derivs).max() <= 1e-10
