"""Relative transition paths and the log-t convergence regression.

Given a panel y_it, the relative transition parameter of Phillips and Sul
(2007, Econometrica 75) is

    h_it = y_it / (N^{-1} sum_j y_jt),

the unit's position relative to the cross-sectional average, and

    H_t = N^{-1} sum_i (h_it - 1)^2

is the cross-sectional variance of those positions.  Under convergence
H_t -> 0, and the OLS regression

    log(H_1 / H_t) - 2 log(log t) = a + b log t + eps_t,
    t = [rT], ..., T   (t is the 1-based period index),

has slope b converging to twice the speed-of-convergence parameter.  The
null of convergence (b >= 0) is tested one-sided with a Newey-West HAC
standard error; it is rejected when t_b falls below the critical value
(-1.65 at the 5% level).  b >= 2 indicates convergence in levels,
0 <= b < 2 convergence of growth rates only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import BandwidthTooLarge, DegenerateVariance, InvalidConfig, SampleTooSmall
from .panel import Panel, UnitId
from .smoothing import SmoothingConfig, smooth

DEFAULT_TRIM = 0.3
DEFAULT_CRITICAL_VALUE = -1.65

# tolerance under which a cross-sectional variance counts as zero
_H_TINY = 1e-300


class Decision(str, Enum):
    NOT_REJECTED = "ConvergenceNotRejected"
    REJECTED = "Rejected"


class ConvergenceClass(str, Enum):
    ABSOLUTE = "Absolute"
    CONDITIONAL = "Conditional"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class HacConfig:
    """Bartlett-kernel Newey-West configuration.

    ``bandwidth=None`` selects the automatic rule floor(4 (S/100)^{2/9})
    where S is the regression sample size.
    """

    bandwidth: int | None = None

    def __post_init__(self) -> None:
        if self.bandwidth is not None and self.bandwidth < 0:
            raise InvalidConfig(f"bandwidth must be >= 0, got {self.bandwidth}")

    def resolve(self, sample_size: int) -> int:
        if self.bandwidth is None:
            return int(math.floor(4.0 * (sample_size / 100.0) ** (2.0 / 9.0)))
        if self.bandwidth >= sample_size:
            raise BandwidthTooLarge(f"bandwidth {self.bandwidth} >= sample size {sample_size}")
        return self.bandwidth


@dataclass(frozen=True)
class TransitionPaths:
    """Relative transition parameters h_it and their variance series H_t."""

    h: np.ndarray
    H: np.ndarray
    units: tuple[UnitId, ...]
    periods: tuple[int, ...]

    def __post_init__(self) -> None:
        h = np.array(self.h, dtype=float)
        H = np.array(self.H, dtype=float)
        h.setflags(write=False)
        H.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "H", H)
        if h.shape != (len(self.units), len(self.periods)) or H.shape != (len(self.periods),):
            raise InvalidConfig("transition path shapes do not match units/periods")
        if h.size and float(np.max(np.abs(h.mean(axis=0) - 1.0))) > 1e-9:
            raise InvalidConfig("cross-sectional mean of h must equal 1 at every period")
        if np.any(H < 0.0):
            raise InvalidConfig("cross-sectional variances must be non-negative")


@dataclass(frozen=True)
class LogTResult:
    """Outcome of one log-t regression.

    ``alpha_hat`` is always ``b_hat / 2`` (the implied speed of
    convergence).  ``first_t``/``n_obs`` locate the trimmed regression
    sample in 1-based period indices.  ``degenerate`` marks groups whose
    members are all bitwise identical: they are convergent by inspection
    and carry no regression numbers.
    """

    a_hat: float
    b_hat: float
    se_hac: float
    t_stat: float
    alpha_hat: float
    r: float
    first_t: int
    n_obs: int
    critical_value: float
    decision: Decision
    convergence_class: ConvergenceClass
    bandwidth: int = 0
    degenerate: bool = False

    @classmethod
    def degenerate_convergent(cls, r: float, critical_value: float) -> "LogTResult":
        """Sentinel for an all-identical group: convergent in levels, no regression."""
        nan = math.nan
        return cls(
            a_hat=nan,
            b_hat=nan,
            se_hac=nan,
            t_stat=math.inf,
            alpha_hat=nan,
            r=r,
            first_t=0,
            n_obs=0,
            critical_value=critical_value,
            decision=Decision.NOT_REJECTED,
            convergence_class=ConvergenceClass.ABSOLUTE,
            degenerate=True,
        )


@dataclass(frozen=True)
class LogTConfig:
    """Everything convergence_test needs besides the panel itself."""

    r: float = DEFAULT_TRIM
    hac: HacConfig = field(default_factory=HacConfig)
    critical_value: float = DEFAULT_CRITICAL_VALUE
    smoothing: SmoothingConfig = field(default_factory=SmoothingConfig.none)

    def __post_init__(self) -> None:
        if not 0.0 < self.r < 1.0:
            raise InvalidConfig(f"trimming fraction must be in (0, 1), got {self.r}")


def relative_transitions(panel: Panel) -> TransitionPaths:
    """Compute h_it and H_t for a panel.

    The cross-sectional mean of h is identically 1, and H_t = 0 exactly
    when all units coincide at t.
    """
    mean = panel.values.mean(axis=0)
    h = panel.values / mean
    H = np.mean((h - 1.0) ** 2, axis=0)
    return TransitionPaths(h=h, H=H, units=panel.units, periods=panel.periods)


def newey_west_lrv(residuals: np.ndarray, regressor: np.ndarray, bandwidth: int) -> float:
    """Bartlett-kernel long-run variance of the score series.

    The score is ``residual * (regressor - mean(regressor))``; the
    estimate is

        Omega = gamma(0) + 2 sum_{l=1}^{L} (1 - l/(L+1)) gamma(l)

    with gamma(l) the lag-l autocovariance (1/n normalisation) of the
    scores.  Bandwidth 0 collapses to the heteroskedasticity-robust
    (White) variance, the mean of squared scores.  The Bartlett weights
    make the result non-negative for every score series.
    """
    u = np.asarray(residuals, dtype=float)
    x = np.asarray(regressor, dtype=float)
    if u.shape != x.shape or u.ndim != 1:
        raise InvalidConfig("residuals and regressor must be 1-D series of equal length")
    n = u.size
    if n < 2:
        raise SampleTooSmall(f"need at least 2 observations, got {n}")
    if not 0 <= bandwidth < n:
        raise BandwidthTooLarge(f"bandwidth {bandwidth} outside [0, {n - 1}]")
    scores = u * (x - x.mean())
    omega = float(np.mean(scores**2))
    for lag in range(1, bandwidth + 1):
        w = 1.0 - lag / (bandwidth + 1.0)
        gamma = float(np.sum(scores[lag:] * scores[:-lag])) / n
        omega += 2.0 * w * gamma
    return omega


def _classify(b_hat: float, decision: Decision) -> ConvergenceClass:
    if decision is Decision.REJECTED:
        return ConvergenceClass.NOT_APPLICABLE
    if b_hat >= 2.0:
        return ConvergenceClass.ABSOLUTE
    if b_hat >= 0.0:
        return ConvergenceClass.CONDITIONAL
    return ConvergenceClass.NOT_APPLICABLE


def logt_regress(
    paths: TransitionPaths,
    r: float = DEFAULT_TRIM,
    hac: HacConfig | None = None,
    critical_value: float = DEFAULT_CRITICAL_VALUE,
) -> LogTResult:
    """Run the trimmed log-t regression on a variance series.

    Parameters
    ----------
    paths : TransitionPaths
    r : float
        Trimming fraction; the sample starts at the 1-based index
        floor(r T), never before t = 2 so log(log t) exists.
    hac : HacConfig, optional
    critical_value : float
        One-sided rejection threshold for t_b.

    Raises
    ------
    DegenerateVariance
        If H_1 or any in-sample H_t is zero.
    SampleTooSmall
        If fewer than 3 observations remain after trimming.
    """
    if not 0.0 < r < 1.0:
        raise InvalidConfig(f"trimming fraction must be in (0, 1), got {r}")
    hac = hac or HacConfig()
    H = paths.H
    T = H.size
    first_t = max(int(math.floor(r * T)), 2)
    n = T - first_t + 1
    if n < 3:
        raise SampleTooSmall(f"log-t sample has {n} observations, need >= 3")
    if H[0] <= _H_TINY:
        raise DegenerateVariance("H_1 is zero: the cross-section is identical in the first period")
    sample = H[first_t - 1 :]
    if np.any(sample <= _H_TINY):
        bad = first_t + int(np.argmax(sample <= _H_TINY))
        raise DegenerateVariance(f"H_t is zero at period index {bad}; identical cross-sections admit no log-t regression")

    t_idx = np.arange(first_t, T + 1, dtype=float)
    x = np.log(t_idx)
    dep = np.log(H[0] / sample) - 2.0 * np.log(np.log(t_idx))

    design = np.column_stack([np.ones(n), x])
    coef, *_ = np.linalg.lstsq(design, dep, rcond=None)
    a_hat, b_hat = float(coef[0]), float(coef[1])
    resid = dep - design @ coef

    bandwidth = hac.resolve(n)
    omega = newey_west_lrv(resid, x, bandwidth)
    sxx = float(np.sum((x - x.mean()) ** 2))
    se = math.sqrt(n * omega) / sxx
    if se > 0.0:
        t_stat = b_hat / se
    else:
        t_stat = 0.0 if b_hat == 0.0 else math.copysign(math.inf, b_hat)

    decision = Decision.REJECTED if t_stat < critical_value else Decision.NOT_REJECTED
    return LogTResult(
        a_hat=a_hat,
        b_hat=b_hat,
        se_hac=se,
        t_stat=t_stat,
        alpha_hat=b_hat / 2.0,
        r=r,
        first_t=first_t,
        n_obs=n,
        critical_value=critical_value,
        decision=decision,
        convergence_class=_classify(b_hat, decision),
        bandwidth=bandwidth,
    )


def convergence_test(panel: Panel, cfg: LogTConfig | None = None) -> LogTResult:
    """Smooth (optionally), build transition paths, and run the log-t test.

    This is the single entry point used by the clustering layer and the
    CLI; it is a pure function of its inputs.
    """
    cfg = cfg or LogTConfig()
    smoothed = smooth(panel, cfg.smoothing)
    paths = relative_transitions(smoothed)
    return logt_regress(paths, r=cfg.r, hac=cfg.hac, critical_value=cfg.critical_value)
