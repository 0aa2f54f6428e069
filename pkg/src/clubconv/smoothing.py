"""Optional pre-smoothing of panel series.

The only filter offered is the Hodrick-Prescott trend, solved exactly as
the unique minimiser of

    sum_t (y_t - g_t)^2 + lam * sum_t (g_{t+1} - 2 g_t + g_{t-1})^2.

Writing D for the (T-2) x T second-difference operator, the minimiser is
g = (I + lam D'D)^{-1} y.  We compute it through the equivalent reduced
system

    g = y - D' z,      (DD' + I/lam) z = D y,

whose matrix is a well-conditioned pentadiagonal Toeplitz band for every
lam > 0, so the trend stays accurate even in the lam -> infinity limit
(where it approaches the least-squares line of the series).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solveh_banded

from .errors import InvalidConfig, SmoothingBrokePositivity
from .panel import Panel

METHODS = ("none", "hp_filter")

# Ravn-Uhlig value for annual data
DEFAULT_ANNUAL_LAMBDA = 6.25


@dataclass(frozen=True)
class SmoothingConfig:
    """Smoothing method and its parameter."""

    method: str = "none"
    lam: float = DEFAULT_ANNUAL_LAMBDA

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise InvalidConfig(f"unknown smoothing method {self.method!r}, expected one of {METHODS}")
        if self.method == "hp_filter" and not self.lam > 0.0:
            raise InvalidConfig(f"hp_filter needs lambda > 0, got {self.lam!r}")

    @classmethod
    def none(cls) -> "SmoothingConfig":
        return cls(method="none")

    @classmethod
    def hp(cls, lam: float = DEFAULT_ANNUAL_LAMBDA) -> "SmoothingConfig":
        return cls(method="hp_filter", lam=lam)


def hp_trend(series: np.ndarray, lam: float) -> np.ndarray:
    """Hodrick-Prescott trend component of a 1-D series.

    Parameters
    ----------
    series : array_like, shape (T,)
    lam : float
        Smoothing parameter; 6.25 is customary for annual data.

    Returns
    -------
    numpy.ndarray
        Trend of the same length.  The trend preserves the series mean
        exactly and reproduces any affine series unchanged.
    """
    y = np.asarray(series, dtype=float)
    t = y.size
    if t < 3:
        return y.copy()
    dy = y[:-2] - 2.0 * y[1:-1] + y[2:]
    # DD' is Toeplitz(1, -4, 6, -4, 1) of order T-2; add I/lam on the diagonal
    m = t - 2
    ab = np.zeros((3, m))
    ab[0, 2:] = 1.0
    ab[1, 1:] = -4.0
    ab[2, :] = 6.0 + 1.0 / lam
    z = solveh_banded(ab, dy)
    trend = y.copy()
    trend[:-2] -= z
    trend[1:-1] += 2.0 * z
    trend[2:] -= z
    return trend


def smooth(panel: Panel, cfg: SmoothingConfig) -> Panel:
    """Apply the configured smoothing to every unit series of a panel.

    ``method='none'`` returns the panel unchanged.  The HP trend of a
    positive series can in principle dip below zero; that is reported as
    :class:`SmoothingBrokePositivity` rather than silently clipped.
    """
    if cfg.method == "none":
        return panel
    trends = np.empty_like(panel.values)
    for i in range(panel.n_units):
        trends[i] = hp_trend(panel.values[i], cfg.lam)
        if np.any(trends[i] <= 0.0):
            raise SmoothingBrokePositivity(
                f"HP trend of unit {panel.units[i].code} is not strictly positive at lambda={cfg.lam}"
            )
    return panel.with_values(trends)
