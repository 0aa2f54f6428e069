"""Binary probit estimation with robust (sandwich) covariance.

The coefficient vector maximises

    l(beta) = sum_i [ y_i log Phi(x_i'beta) + (1 - y_i) log(1 - Phi(x_i'beta)) ]

by Newton-Raphson on the analytic score and Hessian, with step halving so
only likelihood-improving steps are taken.  The log-likelihood is
globally concave, so a zero start always converges on data that admit a
maximiser; iteration stops at the gradient/step tolerances or at the
numerically stationary point once no float-resolvable improvement
remains.  Complete separation is detected and reported instead of
emitting runaway coefficients; quasi-separated flat directions (a
covariate positive only within one outcome class) stop at the
likelihood plateau with finite reported estimates, matching how
standard econometrics packages behave on such data.

Reported standard errors come from the quasi-ML sandwich

    H^{-1} (sum_i g_i g_i') H^{-1}

evaluated at the optimum (no degrees-of-freedom correction by default).
Diagnostics cover the null log-likelihood, McFadden's pseudo R-squared,
the likelihood-ratio test against the intercept-only model, information
criteria and the in-sample classification count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr, ndtr
from scipy.stats import chi2

from .errors import (
    DimensionMismatch,
    NoConvergence,
    SeparationError,
    SingularDesign,
)

MAX_ITER = 100
GRAD_TOL = 1e-8
STEP_TOL = 1e-10

# all correctly-signed linear predictors beyond this mark complete separation
_SEPARATION_ZBOUND = 30.0
_BETA_BOUND = 1e8
# a log-likelihood this close to zero means every observation is fitted
# perfectly: the supremum is not attained at any finite coefficient vector
_LL_SUPREMUM_TOL = 1e-9
# once no strictly improving step exists, a proposed Newton step below this
# bound marks the float-representable optimum
_STATIONARY_STEP_BOUND = 1e-6

_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class DesignMatrix:
    """Named design matrix with a binary outcome.

    The first column must be a constant; the outcome must contain both
    classes and the matrix must have full column rank with more rows than
    columns.
    """

    names: tuple[str, ...]
    X: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        X = np.array(self.X, dtype=float)
        y = np.array(self.y, dtype=int)
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "names", tuple(self.names))
        n, p = X.shape
        if len(self.names) != p:
            raise DimensionMismatch(f"{len(self.names)} names for {p} columns")
        if y.shape != (n,):
            raise DimensionMismatch(f"outcome length {y.shape} does not match {n} rows")
        if not np.all(np.isfinite(X)):
            raise SingularDesign("design contains non-finite values")
        if n <= p:
            raise SingularDesign(f"need more observations than parameters, got n={n}, p={p}")
        if not np.all((y == 0) | (y == 1)):
            raise SingularDesign("outcome must be coded 0/1")
        if y.min() == y.max():
            raise SingularDesign("outcome must contain both classes")
        if not np.allclose(X[:, 0], 1.0):
            raise SingularDesign("first design column must be the constant")
        if np.linalg.matrix_rank(X) < p:
            raise SingularDesign("design matrix is rank deficient")

    @property
    def n_obs(self) -> int:
        return self.X.shape[0]

    @property
    def n_params(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class ProbitFit:
    """Fitted probit model with robust inference and diagnostics."""

    names: tuple[str, ...]
    beta: np.ndarray
    cov_robust: np.ndarray
    se: np.ndarray
    z: np.ndarray
    p_value: np.ndarray
    loglik: float
    loglik_null: float
    mcfadden_r2: float
    lr_stat: float
    lr_df: int
    lr_pvalue: float
    n_correct: int
    n_obs: int
    aic: float
    bic: float
    n_iter: int


@dataclass(frozen=True)
class ClassificationTable:
    tp: int
    tn: int
    fp: int
    fn: int
    accuracy: float


def _loglik(z: np.ndarray, y: np.ndarray) -> float:
    return float(np.sum(np.where(y == 1, log_ndtr(z), log_ndtr(-z))))


def _score_weights(z: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Generalised residual s_i and Hessian weight w_i = s_i (s_i + z_i)."""
    logpdf = -0.5 * z**2 - math.log(_SQRT2PI)
    s = np.where(y == 1, np.exp(logpdf - log_ndtr(z)), -np.exp(logpdf - log_ndtr(-z)))
    w = s * (s + z)
    return s, w


def fit_probit(design: DesignMatrix, *, dof_correction: bool = False) -> ProbitFit:
    """Maximum-likelihood probit fit.

    Parameters
    ----------
    design : DesignMatrix
    dof_correction : bool
        Multiply the sandwich covariance by n/(n-p) (off by default).

    Raises
    ------
    SeparationError
        When a direction separates the classes and the likelihood has no
        interior maximum.
    NoConvergence
        When 100 Newton iterations do not reach the tolerances.
    """
    raw_X, y = design.X, design.y
    n, p = raw_X.shape
    # optimise on column-standardised covariates: the fit is equivariant
    # (beta_j scales by 1/k_j, likelihood unchanged) and both the Newton
    # system's conditioning and the gradient tolerance are meaningful only
    # at O(1) column scale
    col_scale = np.maximum(np.abs(raw_X).max(axis=0), 1e-300)
    col_scale[0] = 1.0
    X = raw_X / col_scale
    beta = np.zeros(p)
    z = X @ beta
    ll = _loglik(z, y)

    converged = False
    n_iter = 0
    for n_iter in range(1, MAX_ITER + 1):
        s, w = _score_weights(z, y)
        grad = X.T @ s
        hess = X.T @ (w[:, None] * X)  # negated Hessian, positive definite

        signed = (2 * y - 1) * z
        if np.all(signed > _SEPARATION_ZBOUND) or ll > -_LL_SUPREMUM_TOL:
            raise SeparationError(
                "complete separation: every observation is fitted perfectly; "
                "the likelihood has no interior maximum"
            )
        if float(np.linalg.norm(beta)) > _BETA_BOUND:
            raise SeparationError("coefficients diverge; the likelihood has no interior maximum")

        try:
            step = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            raise SeparationError(
                "singular Hessian at the current iterate; a separating direction "
                "has saturated the likelihood"
            ) from None

        # backtracking: accept only strictly improving steps
        full_norm = float(np.linalg.norm(step))
        taken = 0.0
        scale = 1.0
        for _ in range(60):
            cand = beta + scale * step
            cand_ll = _loglik(X @ cand, y)
            if cand_ll > ll:
                beta = cand
                ll = cand_ll
                z = X @ beta
                taken = scale
                break
            scale *= 0.5
        step_norm = full_norm * taken

        s_new, _ = _score_weights(z, y)
        grad_now = float(np.max(np.abs(X.T @ s_new)))
        if grad_now < GRAD_TOL and step_norm < STEP_TOL:
            converged = True
            break
        if taken == 0.0:
            # no resolvable improvement left: the iterate is the numerical
            # maximum (tiny proposed step), or the remaining movement lies
            # along a flat separating direction already driven to zero score
            if full_norm <= _STATIONARY_STEP_BOUND or grad_now < GRAD_TOL:
                converged = True
                break

    if not converged:
        raise NoConvergence(f"probit did not converge in {MAX_ITER} iterations")

    s, w = _score_weights(z, y)
    hess = X.T @ (w[:, None] * X)
    try:
        hinv = np.linalg.inv(hess)
    except np.linalg.LinAlgError:
        raise SeparationError("Hessian singular at the optimum") from None
    scores = X * s[:, None]
    meat = scores.T @ scores
    cov = hinv @ meat @ hinv
    if dof_correction:
        cov = cov * (n / (n - p))
    # back to the raw covariate scale
    beta = beta / col_scale
    cov = cov / np.outer(col_scale, col_scale)
    se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    with np.errstate(divide="ignore", invalid="ignore"):
        zstat = np.where(se > 0, beta / se, np.inf * np.sign(beta))
    pval = 2.0 * ndtr(-np.abs(zstat))

    ybar = float(y.mean())
    ll0 = n * (ybar * math.log(ybar) + (1.0 - ybar) * math.log(1.0 - ybar))
    probs = ndtr(z)
    n_correct = int(np.sum((y == 1) & (probs > 0.5)) + np.sum((y == 0) & (probs < 0.5)))
    lr = max(2.0 * (ll - ll0), 0.0)
    return ProbitFit(
        names=design.names,
        beta=beta,
        cov_robust=cov,
        se=se,
        z=zstat,
        p_value=pval,
        loglik=ll,
        loglik_null=ll0,
        mcfadden_r2=1.0 - ll / ll0,
        lr_stat=lr,
        lr_df=p - 1,
        lr_pvalue=float(chi2.sf(lr, p - 1)) if p > 1 else math.nan,
        n_correct=n_correct,
        n_obs=n,
        aic=2.0 * p - 2.0 * ll,
        bic=p * math.log(n) - 2.0 * ll,
        n_iter=n_iter,
    )


def predict_prob(fit: ProbitFit, x: np.ndarray) -> float:
    """Probability of outcome 1 at covariate vector ``x``."""
    x = np.asarray(x, dtype=float)
    if x.shape != fit.beta.shape:
        raise DimensionMismatch(f"covariate vector has shape {x.shape}, expected {fit.beta.shape}")
    return float(ndtr(float(x @ fit.beta)))


def classification_table(fit: ProbitFit, design: DesignMatrix, threshold: float = 0.5) -> ClassificationTable:
    """Confusion counts of fitted probabilities against a threshold.

    An observation is predicted positive when its fitted probability
    strictly exceeds the threshold.
    """
    probs = ndtr(design.X @ fit.beta)
    pred = probs > threshold
    y = design.y.astype(bool)
    tp = int(np.sum(pred & y))
    tn = int(np.sum(~pred & ~y))
    fp = int(np.sum(pred & ~y))
    fn = int(np.sum(~pred & y))
    return ClassificationTable(tp=tp, tn=tn, fp=fp, fn=fn, accuracy=(tp + tn) / design.n_obs)
