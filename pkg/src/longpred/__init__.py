"""Linear prediction of long-memory time series.

Quantitative machinery for two finite-past predictors of long-memory
processes, the truncated Wiener-Kolmogorov predictor and the fitted AR(k)
(Yule-Walker) predictor: exact mean-squared errors as quadratic forms in the
autocovariance, h-step generalizations, the asymptotic constants of the
O(1/k) excess decay, and exact Gaussian simulation for Monte-Carlo
cross-validation.
"""

from .asymptotics import RateFit, improvement_ratio, rate_fit, truncation_constant
from .errors import (CertificationError, ConfigError, IllConditionedError,
                     ModelError, NotPositiveDefiniteError, NumericError, PoleError)
from .fit import (FittedAr, ToeplitzSystem, closed_form_ar_fit, levinson_durbin,
                  projection_weights, solve_toeplitz, yule_walker)
from .mse import (ErrorDecomposition, MseReport, error_decomposition,
                  infinite_past_mse, mse_of_weights, spectral_contrast_mse)
from .predict import (PROJECTION, TRUNCATED_WK, PredictorWeights, forecast,
                      infinite_past_coeffs, truncated_wk_weights)
from .process import (CoefSeq, DecayReport, ProcessModel, acvf, ar_coeffs,
                      ma_coeffs, verify_decay)
from .sim import McEstimate, SimulationPlan, empirical_mse, simulate
from .special import SignedLogValue, gamma_ratio, log_gamma

__version__ = "0.1.0"

__all__ = [
    "CertificationError", "CoefSeq", "ConfigError", "DecayReport",
    "ErrorDecomposition", "FittedAr", "IllConditionedError", "McEstimate",
    "ModelError", "MseReport", "NotPositiveDefiniteError", "NumericError",
    "PoleError", "PredictorWeights", "ProcessModel", "PROJECTION", "RateFit",
    "SignedLogValue", "SimulationPlan", "ToeplitzSystem", "TRUNCATED_WK",
    "acvf", "ar_coeffs", "closed_form_ar_fit", "empirical_mse",
    "error_decomposition", "forecast", "gamma_ratio", "improvement_ratio",
    "infinite_past_coeffs", "infinite_past_mse", "levinson_durbin",
    "log_gamma", "ma_coeffs", "mse_of_weights", "projection_weights",
    "rate_fit", "simulate", "solve_toeplitz", "spectral_contrast_mse",
    "truncated_wk_weights", "truncation_constant", "verify_decay",
    "yule_walker",
]
