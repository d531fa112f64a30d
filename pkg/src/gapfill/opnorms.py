"""Mixed operator norms ||S||_{r1->r2} for the small recovery matrices.

Exact formulas are used where they exist; the from-infinity norms are
maximized over unit-modulus inputs, which is an exact enumeration for real
matrices and a sampled lower bound for complex ones.  A cheap entrywise
upper bound is provided for checks that need one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge
from .sequences import normalize_norm_order

__all__ = [
    "NormReport",
    "MAX_DIM",
    "vec_norm",
    "spectral_norm",
    "op_norm",
    "inf_input_upper",
]

MAX_DIM = 17

_POWER_SEED = 0x5EED
_SAMPLE_SEED = 0xA11CE


@dataclass(frozen=True)
class NormReport:
    """Operator norm value with the computation method that produced it.

    method is "exact" for closed forms and the power iteration, "enumerated"
    for sign enumeration (exact on real matrices), and "sampled" for
    phase-sampled lower bounds on complex matrices.
    """

    matrix_id: str
    from_norm: float
    to_norm: float
    value: float
    method: str


def vec_norm(v: np.ndarray, r) -> float:
    r = normalize_norm_order(r)
    mags = np.abs(np.asarray(v).ravel())
    if mags.size == 0:
        return 0.0
    if r == 1.0:
        return float(mags.sum())
    if r == 2.0:
        return float(np.sqrt(np.sum(mags * mags)))
    return float(mags.max())


def _colwise_norm(Y: np.ndarray, r: float) -> np.ndarray:
    mags = np.abs(Y)
    if r == 1.0:
        return mags.sum(axis=0)
    if r == 2.0:
        return np.sqrt((mags * mags).sum(axis=0))
    return mags.max(axis=0)


def spectral_norm(S: np.ndarray, tol: float = 1e-10, max_iter: int = 100_000) -> float:
    """Largest singular value by power iteration on the normal matrix.

    Deterministic (fixed internal start vector); stops when successive
    value estimates agree to ``tol``.  The estimates form a nondecreasing
    sequence of lower bounds in exact arithmetic, so the result never
    overshoots the true value beyond roundoff.
    """
    S = np.asarray(S, dtype=np.complex128)
    if S.size == 0:
        return 0.0
    if S.shape == (1, 1):
        return float(abs(S[0, 0]))
    B = S.conj().T @ S
    scale = float(np.abs(B).max())
    if scale == 0.0:
        return 0.0
    # two power steps per update: iterate the squared (scaled) normal matrix
    B = B / scale
    B = B @ B
    rng = np.random.default_rng(_POWER_SEED)
    v = rng.standard_normal(S.shape[1]) + 1j * rng.standard_normal(S.shape[1])
    v /= np.linalg.norm(v)
    prev = -1.0
    sigma = 0.0
    for _ in range(max_iter):
        w = B @ v
        nw = np.sqrt(np.vdot(w, w).real)
        if nw == 0.0:
            return 0.0
        v = w / nw
        sigma = float(np.sqrt(scale * np.sqrt(nw)))
        if abs(sigma - prev) <= tol * max(1.0, sigma):
            break
        prev = sigma
    return sigma


def _sign_enumeration(S: np.ndarray, to_norm: float) -> float:
    """Exact max over v in {-1,+1}^n of ||S v||_theta (real matrices)."""
    n = S.shape[1]
    count = 1 << n
    bits = (np.arange(count)[:, None] >> np.arange(n)[None, :]) & 1
    V = 1.0 - 2.0 * bits
    return float(_colwise_norm(S.real @ V.T, to_norm).max())


def _phase_grid(S: np.ndarray, to_norm: float, phases: int) -> float:
    """Max of ||S v||_theta over a phase grid with the global phase fixed."""
    n = S.shape[1]
    if n == 1:
        return vec_norm(S[:, 0], to_norm)
    roots = np.exp(2j * np.pi * np.arange(phases) / phases)
    grids = np.meshgrid(*([roots] * (n - 1)), indexing="ij")
    count = phases ** (n - 1)
    V = np.empty((count, n), dtype=np.complex128)
    V[:, 0] = 1.0
    for k, g in enumerate(grids, start=1):
        V[:, k] = g.ravel()
    best = 0.0
    step = 65536
    for lo in range(0, count, step):
        best = max(best, float(_colwise_norm(S @ V[lo : lo + step].T, to_norm).max()))
    return best


def _phase_sampling(S: np.ndarray, to_norm: float, samples: int) -> float:
    """Random unit-modulus restarts; includes the sign vectors as candidates."""
    rng = np.random.default_rng(_SAMPLE_SEED)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=(samples, S.shape[1]))
    V = np.exp(1j * angles)
    best = 0.0
    step = 65536
    for lo in range(0, samples, step):
        best = max(best, float(_colwise_norm(S @ V[lo : lo + step].T, to_norm).max()))
    return max(best, _sign_enumeration(S, to_norm))


def _unit_modulus_max(
    S: np.ndarray, to_norm: float, phases: int, samples: int
) -> tuple[float, str]:
    if np.all(S.imag == 0.0):
        return _sign_enumeration(S, to_norm), "enumerated"
    if S.shape[1] <= 4:
        return _phase_grid(S, to_norm, phases), "sampled"
    return _phase_sampling(S, to_norm, samples), "sampled"


def op_norm(
    S: np.ndarray,
    from_norm,
    to_norm,
    matrix_id: str = "S",
    tol: float = 1e-10,
    phases: int = 64,
    samples: int = 32768,
) -> NormReport:
    """Operator norm of a small square matrix between the supported norms."""
    S = np.asarray(S, dtype=np.complex128)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError(f"matrix must be square, got shape {S.shape}")
    if S.shape[0] > MAX_DIM:
        raise DimensionTooLarge(f"dimension {S.shape[0]} exceeds the supported {MAX_DIM}")
    r1 = normalize_norm_order(from_norm)
    r2 = normalize_norm_order(to_norm)

    if r1 == 1.0:
        value, method = float(_colwise_norm(S, r2).max()), "exact"
    elif r1 == 2.0 and r2 == 2.0:
        value, method = spectral_norm(S, tol=tol), "exact"
    elif r1 == 2.0 and r2 == np.inf:
        value, method = float(np.sqrt((np.abs(S) ** 2).sum(axis=1)).max()), "exact"
    elif r1 == 2.0 and r2 == 1.0:
        # duality: ||S||_{2,1} equals the unit-modulus maximum of ||S^H u||_2
        value, method = _unit_modulus_max(S.conj().T, 2.0, phases, samples)
    else:
        value, method = _unit_modulus_max(S, r2, phases, samples)
    return NormReport(matrix_id=matrix_id, from_norm=r1, to_norm=r2, value=value, method=method)


def inf_input_upper(S: np.ndarray, to_norm) -> float:
    """Entrywise upper bound on ||S||_{inf,theta}: theta-norm of the row absolute sums."""
    S = np.asarray(S, dtype=np.complex128)
    return vec_norm(np.abs(S).sum(axis=1), to_norm)
