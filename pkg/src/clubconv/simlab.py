"""Synthetic panels with known club structure, for validation.

Panels are generated from the single-factor form y_it = delta_it * mu_t
with a deterministic common trend mu_t = mu0 (1+g)^t and club-specific
transition parameters

    delta_it = delta_c + sigma_c * xi_it * t^{-alpha_c},

xi_it i.i.d. standard normal (redrawn while delta would go non-positive).
Units inside one club share delta_c, so their relative positions collapse
at rate t^{-alpha}; units of different clubs keep distinct limits and the
panel as a whole does not converge.  An optional slowly-varying factor
divides the noise by log(t+1), matching the decay form under which the
log-t regression slope estimates twice the decay rate without the
small-sample drift of the pure-power form.

The Monte Carlo driver replays a config over seeds seed, seed+1, ... and
summarises rejection rates, slope estimates and (for clustering runs)
membership recovery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .clustering import ClusterConfig, identify_clubs, merge_clubs
from .errors import InvalidConfig
from .logt import Decision, LogTConfig, convergence_test
from .panel import Panel, UnitId

_MAX_REDRAWS = 100


@dataclass(frozen=True)
class ClubSpec:
    """One club of the data-generating process."""

    n_units: int
    delta_limit: float
    alpha: float
    noise_sd: float

    def __post_init__(self) -> None:
        if self.n_units < 1:
            raise InvalidConfig(f"club needs at least 1 unit, got {self.n_units}")
        if not self.delta_limit > 0.0:
            raise InvalidConfig(f"delta limit must be > 0, got {self.delta_limit}")
        if self.alpha < 0.0 or self.noise_sd < 0.0:
            raise InvalidConfig("alpha and noise sd must be >= 0")


@dataclass(frozen=True)
class DgpConfig:
    """Full data-generating configuration."""

    clubs: tuple[ClubSpec, ...]
    n_periods: int
    mu0: float = 1.0
    growth: float = 0.02
    seed: int = 0
    slowly_varying: bool = False
    first_period: int = 2001

    def __post_init__(self) -> None:
        object.__setattr__(self, "clubs", tuple(self.clubs))
        if self.n_periods < 10:
            raise InvalidConfig(f"need at least 10 periods, got {self.n_periods}")
        if self.growth < 0.0 or not self.mu0 > 0.0:
            raise InvalidConfig("growth must be >= 0 and mu0 > 0")
        if sum(c.n_units for c in self.clubs) < 2:
            raise InvalidConfig("total units must be >= 2")


def generate_panel(cfg: DgpConfig) -> tuple[Panel, list[int]]:
    """Draw one panel; returns it with the true club index of every unit.

    Identical configs (including the seed) produce bit-identical panels.
    """
    rng = np.random.default_rng(cfg.seed)
    t_idx = np.arange(1, cfg.n_periods + 1, dtype=float)
    mu = cfg.mu0 * (1.0 + cfg.growth) ** t_idx
    seen = 0
    rows = []
    membership: list[int] = []
    units: list[UnitId] = []
    for c_idx, club in enumerate(cfg.clubs):
        decay = t_idx ** (-club.alpha)
        if cfg.slowly_varying:
            decay = decay / np.log(t_idx + 1.0)
        for _ in range(club.n_units):
            seen += 1
            delta = np.empty(cfg.n_periods)
            for t in range(cfg.n_periods):
                val = 0.0
                for attempt in range(_MAX_REDRAWS + 1):
                    val = club.delta_limit + club.noise_sd * rng.standard_normal() * decay[t]
                    if val > 0.0:
                        break
                else:
                    raise InvalidConfig(
                        f"could not draw a positive transition parameter for club {c_idx} "
                        f"after {_MAX_REDRAWS} attempts; noise sd too large"
                    )
                delta[t] = val
            rows.append(delta * mu)
            membership.append(c_idx)
            units.append(UnitId(f"U{seen:03d}"))
    panel = Panel(tuple(units), tuple(range(cfg.first_period, cfg.first_period + cfg.n_periods)), np.array(rows))
    return panel, membership


def adjusted_rand_index(labels_a: Sequence[int], labels_b: Sequence[int]) -> float:
    """Adjusted Rand index between two labelings of the same units."""
    a = list(labels_a)
    b = list(labels_b)
    if len(a) != len(b):
        raise InvalidConfig("labelings must have equal length")
    n = len(a)
    cats_a = sorted(set(a))
    cats_b = sorted(set(b))
    table = np.zeros((len(cats_a), len(cats_b)), dtype=int)
    for x, y in zip(a, b):
        table[cats_a.index(x), cats_b.index(y)] += 1

    def comb2(v: np.ndarray) -> float:
        return float(np.sum(v * (v - 1) / 2.0))

    sum_ij = comb2(table)
    sum_i = comb2(table.sum(axis=1))
    sum_j = comb2(table.sum(axis=0))
    total = n * (n - 1) / 2.0
    expected = sum_i * sum_j / total if total else 0.0
    maximum = 0.5 * (sum_i + sum_j)
    if maximum == expected:
        return 1.0
    return (sum_ij - expected) / (maximum - expected)


@dataclass(frozen=True)
class MonteCarloSummary:
    """Replication summary for one configuration cell."""

    label: str
    replications: int
    rejection_rate: float
    b_mean: float
    b_sd: float
    recovery_rate: float
    ari_mean: float


def _partition_labels(panel: Panel, partition) -> list[int]:
    labels = {}
    for k, club in enumerate(partition.clubs):
        for code in club:
            labels[code] = k
    next_label = len(partition.clubs)
    for code in partition.divergent:
        labels[code] = next_label
        next_label += 1
    return [labels[c] for c in panel.codes]


def _same_partition(panel: Panel, partition, truth: list[int]) -> bool:
    found = {frozenset(club) for club in partition.clubs}
    want: dict[int, set[str]] = {}
    for code, lab in zip(panel.codes, truth):
        want.setdefault(lab, set()).add(code)
    return not partition.divergent and found == {frozenset(v) for v in want.values()}


def monte_carlo(
    cfgs: Sequence[DgpConfig],
    analysis: str = "logt",
    replications: int = 100,
    logt_cfg: LogTConfig | None = None,
    cluster_cfg: ClusterConfig | None = None,
    labels: Sequence[str] | None = None,
) -> list[MonteCarloSummary]:
    """Replicate each config and summarise the chosen analysis.

    ``analysis='logt'`` runs the convergence test on the whole panel and
    reports rejection frequency plus the slope distribution.
    ``analysis='clustering'`` additionally identifies and merges clubs,
    reporting the exact-recovery rate of the true membership and the mean
    adjusted Rand index.  Replication r of a cell uses seed ``seed + r``,
    so summaries are reproducible and order-independent.
    """
    if analysis not in ("logt", "clustering"):
        raise InvalidConfig(f"unknown analysis {analysis!r}")
    if replications < 1:
        raise InvalidConfig("need at least 1 replication")
    logt_cfg = logt_cfg or LogTConfig()
    cluster_cfg = cluster_cfg or ClusterConfig(logt=logt_cfg)

    out = []
    for idx, cfg in enumerate(cfgs):
        rejections = 0
        b_hats = []
        recovered = 0
        aris = []
        for rep in range(replications):
            panel, truth = generate_panel(replace(cfg, seed=cfg.seed + rep))
            res = convergence_test(panel, logt_cfg)
            rejections += res.decision is Decision.REJECTED
            b_hats.append(res.b_hat)
            if analysis == "clustering":
                part = merge_clubs(panel, identify_clubs(panel, cluster_cfg), cluster_cfg)
                recovered += _same_partition(panel, part, truth)
                aris.append(adjusted_rand_index(truth, _partition_labels(panel, part)))
        b = np.array(b_hats)
        out.append(
            MonteCarloSummary(
                label=labels[idx] if labels else f"cell{idx}",
                replications=replications,
                rejection_rate=rejections / replications,
                b_mean=float(b.mean()),
                b_sd=float(b.std(ddof=1)) if replications > 1 else 0.0,
                recovery_rate=recovered / replications if analysis == "clustering" else math.nan,
                ari_mean=float(np.mean(aris)) if aris else math.nan,
            )
        )
    return out
