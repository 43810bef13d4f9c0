"""Finite linear predictors and their application to observed series.

A predictor of ``X_{k+h}`` from observations ``X_1 .. X_k`` is stored as a
weight vector ``w_1 .. w_k`` with the convention

    prediction = sum_{j=1..k} w_j * X_{k+1-j}

so ``w_1`` multiplies the most recent observation.  Two constructions are
supported: the truncated Wiener-Kolmogorov predictor (infinite-past optimal
weights cut off at lag k, extended to horizon h by unrolling its one-step
recursion) and the exact finite-past projection, built in :mod:`longpred.fit`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .process import ProcessModel, ar_coeffs, ma_coeffs

__all__ = [
    "TRUNCATED_WK",
    "PROJECTION",
    "PredictorWeights",
    "truncated_wk_weights",
    "forecast",
    "infinite_past_coeffs",
]

TRUNCATED_WK = "truncated_wk"
PROJECTION = "projection"


@dataclass(frozen=True)
class PredictorWeights:
    """Weights w_1..w_k of a finite linear predictor at horizon h."""

    weights: np.ndarray
    k: int
    h: int
    method: str

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (self.k,):
            raise ValueError(f"expected {self.k} weights, got shape {w.shape}")
        if self.h < 1:
            raise ValueError("horizon must be >= 1")
        if self.method not in (TRUNCATED_WK, PROJECTION):
            raise ValueError(f"unknown predictor method {self.method!r}")
        object.__setattr__(self, "weights", w)


def truncated_wk_weights(model: ProcessModel, k: int, h: int = 1) -> PredictorWeights:
    """Truncated Wiener-Kolmogorov weights of order k at horizon h.

    For h = 1 the weights are -a_1..-a_k.  For larger horizons the
    recursive definition

        pred(h) = - sum_{j=1..h-1} a_j pred(h-j) - sum_{j=1..k} a_{h-1+j} X_{k+1-j}

    is unrolled into a single weight vector over X_1..X_k, which allows both
    O(k) forecasting and exact quadratic-form error evaluation.
    """
    if k < 1 or h < 1:
        raise ValueError("k and h must be >= 1")
    a = ar_coeffs(model, h - 1 + k).prefix(h - 1 + k)
    stack = np.empty((h + 1, k))
    stack[1] = -a[1: k + 1]
    for g in range(2, h + 1):
        w = -a[g: g + k].copy()
        for j in range(1, g):
            w -= a[j] * stack[g - j]
        stack[g] = w
    return PredictorWeights(stack[h], k=k, h=h, method=TRUNCATED_WK)


def forecast(weights: PredictorWeights, observations: np.ndarray) -> float:
    """Apply a weight vector to observations ordered X_1..X_k."""
    obs = np.asarray(observations, dtype=float)
    if obs.shape != (weights.k,):
        raise ValueError(
            f"expected {weights.k} observations, got shape {obs.shape}")
    return float(np.dot(weights.weights, obs[::-1]))


def infinite_past_coeffs(model: ProcessModel, h: int, n: int) -> np.ndarray:
    """Innovation-domain coefficients (b_h, ..., b_{h+n}) of the h-step
    infinite-past predictor.

    The infinite-past predictor is not expressible over finitely many
    observations, so only its moving-average representation is returned; it
    feeds the error-floor computation in :mod:`longpred.mse`.
    """
    if h < 1:
        raise ValueError("horizon must be >= 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    b = ma_coeffs(model, h + n).prefix(h + n)
    return b[h:].copy()
