"""Exact mean-squared prediction errors as finite quadratic forms.

Every production MSE here is a finite computation in the autocovariances:
for a predictor with weights w_1..w_k at horizon h,

    E[(X_{k+h} - sum_j w_j X_{k+1-j})^2]
        = sigma(0) - 2 sum_j w_j sigma(h-1+j) + sum_{j,l} w_j w_l sigma(j-l).

Infinite-series representations of the same quantities survive only as test
oracles with certified remainders.  Each report splits the total into the
method floor (the h-step error given the infinite past, noise_variance *
sum_{l<h} b_l^2) and the excess attributable to truncation or to the finite
observation span.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, ModelError
from .fit import FittedAr, closed_form_log_inflation
from .predict import PROJECTION, PredictorWeights
from .process import FRAC_NOISE, ProcessModel, acvf, ar_coeffs, ma_coeffs

__all__ = [
    "MseReport",
    "ErrorDecomposition",
    "toeplitz_quadratic_form",
    "mse_of_weights",
    "infinite_past_mse",
    "spectral_contrast_mse",
    "error_decomposition",
]

INFINITE_PAST = "infinite_past"


@dataclass(frozen=True)
class MseReport:
    """Decomposed mean-squared prediction error.

    ``total = floor + excess`` with ``floor`` the infinite-past h-step error
    and ``excess >= 0`` the finite-sample penalty.  ``certified_tol`` carries
    the certified relative accuracy of the autocovariances that entered the
    computation (0 for exact paths).
    """

    total: float
    floor: float
    excess: float
    method: str
    k: int | None
    h: int
    certified_tol: float = 0.0


def _make_report(total: float, floor: float, method: str, k: int | None,
                 h: int, certified_tol: float) -> MseReport:
    excess = total - floor
    if excess < 0.0:
        # the decomposition is exact in exact arithmetic; only rounding can
        # push the excess below zero, and then only at machine scale
        if excess < -1e-12 * max(total, floor):
            raise ArithmeticError(
                f"negative excess {excess:.3e} exceeds rounding tolerance")
        excess = 0.0
    return MseReport(total=float(total), floor=float(floor), excess=float(excess),
                     method=method, k=k, h=h, certified_tol=certified_tol)


def toeplitz_quadratic_form(gamma: np.ndarray, w: np.ndarray) -> float:
    """sum_{j,l} w_j w_l gamma(|j-l|) without forming the Toeplitz matrix.

    Uses the lag autocorrelation of ``w``: the form equals
    c_0 gamma(0) + 2 sum_{m>=1} c_m gamma(m) with c_m = sum_j w_j w_{j+m}.
    """
    w = np.asarray(w, dtype=float)
    k = w.size
    if k == 0:
        return 0.0
    c = np.convolve(w, w[::-1])[k - 1:]
    return float(c[0] * gamma[0] + 2.0 * np.dot(c[1:k], gamma[1:k]))


def _floor(model: ProcessModel, h: int) -> float:
    b = ma_coeffs(model, h - 1).prefix(h - 1)
    return model.noise_variance * float(np.dot(b, b))


def mse_of_weights(model: ProcessModel, weights: PredictorWeights) -> MseReport:
    """Exact MSE of an arbitrary finite predictor under the model."""
    k, h = weights.k, weights.h
    seq = acvf(model, k + h - 1)
    g = seq.prefix(k + h - 1)
    w = weights.weights
    total = g[0] - 2.0 * float(np.dot(w, g[h: h + k])) \
        + toeplitz_quadratic_form(g, w)
    return _make_report(total, _floor(model, h), weights.method, k, h,
                        seq.certified_tol)


def infinite_past_mse(model: ProcessModel, h: int) -> MseReport:
    """h-step error of the optimal predictor given the infinite past."""
    if h < 1:
        raise ValueError("horizon must be >= 1")
    floor = _floor(model, h)
    return MseReport(total=floor, floor=floor, excess=0.0,
                     method=INFINITE_PAST, k=None, h=h)


# ---------------------------------------------------------------------------
# spectral-contrast evaluation of the one-step AR(k) error


def spectral_contrast_mse(model: ProcessModel, ar_fit: FittedAr,
                          n_terms: int = 1 << 20, tail_tol: float = 1e-8) -> float:
    """One-step error of an AR(k) fit evaluated through the spectral contrast.

    Filtering the process by the fitted operator gives residuals with
    moving-average coefficients t(j) = sum_{m<=min(j,k)} a_fit_m b_{j-m};
    the prediction error is noise_variance * sum_j t(j)^2.  The series is
    summed to ``n_terms`` and closed with a power-law tail estimate fitted on
    the trailing window; evaluation fails unless the certified residual
    uncertainty of that estimate is below ``tail_tol`` relative to the value.

    This is an independent computational route from
    :func:`mse_of_weights`; the two must agree within combined tolerances.
    """
    k = ar_fit.order
    phi_op = ar_fit.a_fit
    s2 = model.noise_variance
    support = model.finite_ma_support
    if support is not None:
        b = ma_coeffs(model, support + k).prefix(support + k)
        t = np.convolve(phi_op, b)
        return s2 * float(np.dot(t, t))
    if model.d is None:
        raise CertificationError(
            "tail estimation requires a known power-law decay (model.d)")
    d = model.d
    b = ma_coeffs(model, n_terms).prefix(n_terms)
    t = np.convolve(phi_op, b)[: n_terms + 1]
    partial = s2 * float(np.dot(t, t))
    # trailing-window fit of t(j)^2 ~ j^(2d-2) (c + e/j)
    lo = max(n_terms // 2, 8 * k, 1024)
    if lo >= n_terms:
        raise CertificationError("n_terms too small for tail estimation")
    j = np.arange(lo, n_terms + 1, dtype=float)
    y = t[lo:] ** 2 * j ** (2.0 - 2.0 * d)
    design = np.column_stack([np.ones_like(j), 1.0 / j])
    (c, e), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = float(np.max(np.abs(y - design @ np.array([c, e]))))
    edge = n_terms + 0.5
    int_c = edge ** (2.0 * d - 1.0) / (1.0 - 2.0 * d)
    int_e = edge ** (2.0 * d - 2.0) / (2.0 - 2.0 * d)
    tail_est = s2 * (c * int_c + e * int_e)
    value = partial + tail_est
    bound = 2.0 * s2 * resid * int_c
    if not bound <= tail_tol * abs(value):
        raise CertificationError(
            f"spectral tail uncertainty {bound:.3e} exceeds "
            f"{tail_tol:g} * value", achieved_bound=bound / abs(value))
    return float(value)


# ---------------------------------------------------------------------------
# three-term decomposition of the AR(k) excess


@dataclass(frozen=True)
class ErrorDecomposition:
    """Split of the fitted-AR one-step excess for fractional noise.

    With delta_j = a_{j,k} - a_j and S(j) = sum_{l>k} a_l sigma(j-l):

    * ``term_quad``  = sum_{j,l<=k} delta_j (-delta_l) sigma(j-l)   (negative)
    * ``term_cross`` = 2 sum_{j<=k} delta_j S(j)                    (positive)
    * ``term_trunc`` = sum_{j<=k} a_j S(j)                          (negative)

    ``term_trunc`` equals minus the truncation excess, and the three terms
    sum to minus the fitted-AR excess.
    """

    term_quad: float
    term_cross: float
    term_trunc: float
    k: int

    @property
    def ar_excess(self) -> float:
        return -(self.term_quad + self.term_cross + self.term_trunc)

    @property
    def truncation_excess(self) -> float:
        return -self.term_trunc


def error_decomposition(model: ProcessModel, k: int) -> ErrorDecomposition:
    """Exact three-term split of the order-k fitted-AR excess.

    Restricted to fractional noise, whose sign structure makes each term
    single-signed.  The inner sums over lags beyond k reduce exactly to
    finite form through the orthogonality identity
    sum_{l>=0} a_l sigma(l-j) = noise_variance * [j == 0], so no series
    truncation enters; the brute-force tail summation survives as a test
    oracle.
    """
    if model.kind != FRAC_NOISE:
        raise ModelError("error decomposition is defined for fractional noise only")
    if k < 1:
        raise ValueError("order k must be >= 1")
    d = model.d
    a = ar_coeffs(model, k).prefix(k)
    g = acvf(model, k).prefix(k)
    # delta_j = a_{j,k} - a_j = a_j expm1(log inflation), no cancellation
    delta = np.concatenate([[0.0], a[1:] * np.expm1(closed_form_log_inflation(d, k))])
    # S(j) = noise_variance [j=0] - sum_{l=0..k} a_l sigma(|l-j|)
    g_sym = np.concatenate([g[:0:-1], g])          # lags -k..k
    s = -np.convolve(a, g_sym)[k: 2 * k + 1]       # -(Toeplitz(sigma) a)_j
    s[0] += model.noise_variance
    term_quad = -toeplitz_quadratic_form(g, delta[1:])
    term_cross = 2.0 * float(np.dot(delta[1:], s[1:]))
    term_trunc = float(np.dot(a, s))
    if not (term_quad <= 0.0 and term_cross >= 0.0 and term_trunc <= 0.0):
        raise ArithmeticError(
            "decomposition violated its sign pattern "
            f"({term_quad:.3e}, {term_cross:.3e}, {term_trunc:.3e})")
    return ErrorDecomposition(term_quad=term_quad, term_cross=term_cross,
                              term_trunc=term_trunc, k=k)


def truncated_one_step_excess(model: ProcessModel, k: int) -> float:
    """Truncation excess at h = 1 computed directly from the quadratic form.

    Equals sum_{i,j=0..k} a_i a_j sigma(i-j) - noise_variance; kept separate
    from the decomposition so the two routes can cross-check each other.
    """
    a = ar_coeffs(model, k).prefix(k)
    g = acvf(model, k).prefix(k)
    return toeplitz_quadratic_form(g, a) - model.noise_variance


def fitted_ar_mse(model: ProcessModel, k: int) -> MseReport:
    """One-step MSE of the Yule-Walker AR(k) fit, as a report."""
    from .fit import yule_walker

    fit = yule_walker(acvf(model, k), k)
    total = fit.innovation_variance
    return _make_report(total, _floor(model, 1), PROJECTION, k, 1, 0.0)
