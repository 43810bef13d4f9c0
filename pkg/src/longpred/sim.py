"""Exact Gaussian simulation and Monte-Carlo error estimation.

Sample paths provide the end-to-end check of every analytic error formula:
simulate, forecast with the constructed weights, and compare empirical
squared errors against the quadratic-form values.

Two samplers are available.  Circulant embedding is the default and exact:
the length-n covariance is embedded into a 2(n-1)-circulant whose FFT gives
the sampling spectrum.  Moving-average truncation is the fallback and
cross-check; it carries a certified covariance error.

Randomness is counter-based: each replication draws from its own Philox
stream keyed by (seed, replication index), so results are reproducible
regardless of execution order and safe to parallelize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, NumericError
from .predict import PredictorWeights
from .process import FARIMA, FRAC_NOISE, ProcessModel, acvf, ma_coeffs

__all__ = [
    "CIRCULANT_EMBEDDING",
    "MA_TRUNCATION",
    "SimulationPlan",
    "McEstimate",
    "simulate",
    "empirical_mse",
]

CIRCULANT_EMBEDDING = "circulant_embedding"
MA_TRUNCATION = "ma_truncation"

_EIGENVALUE_TOL_REL = 1e-10
_MAX_MA_ORDER = 1 << 21


@dataclass(frozen=True)
class SimulationPlan:
    """Reproducible description of a batch of Gaussian sample paths.

    ``ma_cov_tol`` is the certified relative covariance error allowed for
    the MA-truncation sampler (relative to sigma(0)); power-law tails make
    tight tolerances unattainable there, in which case construction of the
    sampler raises a :class:`~longpred.errors.CertificationError`.
    """

    model: ProcessModel
    length: int
    replications: int
    seed: int
    method: str = CIRCULANT_EMBEDDING
    ma_order: int | None = None
    ma_cov_tol: float = 1e-6

    def __post_init__(self) -> None:
        if self.length < 1 or self.replications < 1:
            raise ValueError("length and replications must be >= 1")
        if self.method not in (CIRCULANT_EMBEDDING, MA_TRUNCATION):
            raise ValueError(f"unknown simulation method {self.method!r}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class McEstimate:
    """Monte-Carlo mean with its standard error.

    Estimates are only reported from at least 30 replications so the
    standard error itself is meaningful.
    """

    mean: float
    std_error: float
    replications: int

    def __post_init__(self) -> None:
        if self.replications < 30:
            raise ValueError("reported estimates need at least 30 replications")


def _stream(seed: int, rep: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed, rep],
                                                             dtype=np.uint64)))


def _circulant_spectrum(model: ProcessModel, n: int) -> np.ndarray:
    g = np.asarray(acvf(model, n - 1).prefix(n - 1))
    if n == 1:
        return g[:1].copy()
    c = np.concatenate([g, g[n - 2: 0: -1]])
    lam = np.fft.fft(c).real
    floor = -_EIGENVALUE_TOL_REL * g[0]
    if np.min(lam) < floor:
        raise NumericError(
            f"circulant embedding produced eigenvalue {np.min(lam):.3e}, "
            "beyond the nonnegativity tolerance")
    return np.maximum(lam, 0.0)


def _ma_tail_sq_bound(model: ProcessModel, order: int) -> float | None:
    """Certified bound on sum_{m > order} b_m^2."""
    support = model.finite_ma_support
    if support is not None:
        return 0.0 if order >= support else None
    if model.kind == FRAC_NOISE:
        # b_m * m^(1-d) increases towards 1/Gamma(d), so b_m <= m^(d-1)/Gamma(d)
        d = model.d
        c = 1.0 / math.gamma(d)
        return c * c * order ** (2.0 * d - 1.0) / (1.0 - 2.0 * d)
    if model.kind == FARIMA:
        d = model.d
        b = ma_coeffs(model, order).prefix(order)
        half = order // 2
        j = np.arange(half, order + 1, dtype=float)
        c = float(np.max(np.abs(b[half:]) * j ** (1.0 - d)))
        return c * c * order ** (2.0 * d - 1.0) / (1.0 - 2.0 * d)
    # generic stream: geometric block certification
    b = np.asarray(model.ma_stream(2 * order), dtype=float)
    s1 = float(np.sum(b[order // 2: order] ** 2))
    s2 = float(np.sum(b[order: 2 * order] ** 2))
    if s2 == 0.0 and np.all(b[order:] == 0.0):
        return 0.0
    if s1 > 0.0 and s2 < 0.7 * s1:
        q = s2 / s1
        return s2 / (1.0 - q)
    return None


def _ma_truncation_order(plan: SimulationPlan) -> int:
    """Smallest certified order meeting ma_cov_tol, or raise."""
    model = plan.model
    sigma0 = acvf(model, 0)[0]
    tol_abs = plan.ma_cov_tol * sigma0 / model.noise_variance
    if plan.ma_order is not None:
        bound = _ma_tail_sq_bound(model, plan.ma_order)
        if bound is None or bound > tol_abs:
            raise CertificationError(
                f"MA truncation at order {plan.ma_order} not certified below "
                f"{plan.ma_cov_tol:g} * sigma(0)",
                achieved_bound=None if bound is None else bound / (sigma0 / model.noise_variance))
        return plan.ma_order
    order = max(64, 4 * plan.length)
    while order <= _MAX_MA_ORDER:
        bound = _ma_tail_sq_bound(model, order)
        if bound is not None and bound <= tol_abs:
            return order
        order *= 2
    bound = _ma_tail_sq_bound(model, _MAX_MA_ORDER)
    raise CertificationError(
        f"MA truncation covariance error not certified below "
        f"{plan.ma_cov_tol:g} * sigma(0) within {_MAX_MA_ORDER} terms",
        achieved_bound=None if bound is None else bound / (sigma0 / model.noise_variance))


def simulate(plan: SimulationPlan) -> np.ndarray:
    """Draw ``replications`` independent zero-mean Gaussian rows of length
    ``length`` whose covariance is the model's Toeplitz autocovariance.

    Deterministic given the seed: row r depends only on (seed, r).
    """
    n, reps = plan.length, plan.replications
    out = np.empty((reps, n))
    if plan.method == CIRCULANT_EMBEDDING:
        lam = _circulant_spectrum(plan.model, n)
        if n == 1:
            scale = math.sqrt(lam[0])
            for r in range(reps):
                out[r, 0] = scale * _stream(plan.seed, r).standard_normal()
            return out
        m = 2 * n - 2
        amp = np.sqrt(lam / m)
        for r in range(reps):
            rng = _stream(plan.seed, r)
            z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
            out[r] = np.fft.fft(z * amp).real[:n]
        return out
    order = _ma_truncation_order(plan)
    b = np.asarray(ma_coeffs(plan.model, order).prefix(order))
    scale = math.sqrt(plan.model.noise_variance)
    for r in range(reps):
        eps = scale * _stream(plan.seed, r).standard_normal(n + order)
        out[r] = np.convolve(eps, b)[order: order + n]
    return out


def empirical_mse(plan: SimulationPlan, weights: PredictorWeights) -> McEstimate:
    """Monte-Carlo squared prediction error of a weight vector.

    Each replication forecasts X_{k+h} from (X_1..X_k); the estimate is the
    sample mean of squared errors with its standard error.
    """
    k, h = weights.k, weights.h
    if plan.length < k + h:
        raise ValueError(
            f"plan length {plan.length} too short for k + h = {k + h}")
    if plan.replications < 30:
        raise ValueError("empirical MSE estimation needs at least 30 replications")
    paths = simulate(plan)
    preds = paths[:, k - 1::-1][:, :k] @ weights.weights
    errs = (paths[:, k + h - 1] - preds) ** 2
    r = plan.replications
    return McEstimate(mean=float(np.mean(errs)),
                      std_error=float(np.std(errs, ddof=1) / math.sqrt(r)),
                      replications=r)
