"""Endogenous convergence-club detection.

Implements the Phillips-Sul (2007) clustering algorithm on top of the
log-t test, plus the club-merging pass of Phillips and Sul (2009) and
cross-boundary transition tests:

1.  Test the whole group.  If convergence is not rejected, everything is
    one club.
2.  Order units by the ordering statistic (final-period value by
    default).
3.  Core group: scan group sizes k = 2..N over the ordered units and keep
    the top-k* units, k* maximising the log-t statistic t_k among sizes
    with t_k above the core threshold.  If the top pair already fails,
    drop the leading unit and retry on the remainder.
4.  Sieve: every unit outside the core joins the club when adding it to
    the core keeps the trial log-t statistic above the sieve threshold c.
    If the finished club fails its own log-t test, raise c by 0.05 and
    sieve again.
5.  Repeat from 1 on the leftover units.  A leftover group that neither
    converges nor yields a core is declared divergent.

Merging re-tests unions of adjacent clubs and fuses them while the union
passes, restarting the scan from the top after every fusion; it corrects
the algorithm's tendency to split too finely.

Units with bitwise-identical series are fused into one representative
before clustering and re-expanded afterwards, so trial regressions never
see a degenerate cross-section made of duplicates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import InvalidConfig, InvalidSubset, NoConvergence
from .logt import (
    DEFAULT_CRITICAL_VALUE,
    Decision,
    LogTConfig,
    LogTResult,
    logt_regress,
    relative_transitions,
)
from .panel import Panel
from .smoothing import SmoothingConfig, smooth

ORDERINGS = ("final_period", "mean_last_fraction")

SIEVE_STEP = 0.05
_MAX_SIEVE_ROUNDS = 400


@dataclass(frozen=True)
class ClusterConfig:
    """Tuning constants for club detection.

    ``sieve_threshold`` is the membership hurdle c (0 is the conservative
    small-T choice); ``core_threshold`` gates the core-group scan.  The
    embedded :class:`LogTConfig` supplies trimming, HAC and smoothing for
    every trial regression; smoothing is applied once to the input panel,
    not per trial.
    """

    ordering: str = "final_period"
    ordering_fraction: float = 1.0 / 3.0
    sieve_threshold: float = 0.0
    core_threshold: float = DEFAULT_CRITICAL_VALUE
    logt: LogTConfig = field(default_factory=LogTConfig)

    def __post_init__(self) -> None:
        if self.ordering not in ORDERINGS:
            raise InvalidConfig(f"unknown ordering {self.ordering!r}, expected one of {ORDERINGS}")
        if not 0.0 < self.ordering_fraction <= 1.0:
            raise InvalidConfig(f"ordering fraction must be in (0, 1], got {self.ordering_fraction}")
        if not (math.isfinite(self.sieve_threshold) and math.isfinite(self.core_threshold)):
            raise InvalidConfig("thresholds must be finite")

    def without_smoothing(self) -> "ClusterConfig":
        return replace(self, logt=replace(self.logt, smoothing=SmoothingConfig.none()))


@dataclass(frozen=True)
class MergeRecord:
    """One adjacent-pair merge test; club indices are 1-based."""

    clubs: tuple[int, int]
    result: LogTResult
    merged: bool


@dataclass(frozen=True)
class TransitionRecord:
    """One cross-boundary transition test."""

    subset: tuple[str, ...]
    result: LogTResult


@dataclass(frozen=True)
class ClubPartition:
    """Ordered clubs plus divergent units, with their test records.

    Club 1 holds the units with the highest ordering statistic.  Clubs
    and the divergent set partition the panel's units exactly.
    """

    clubs: tuple[tuple[str, ...], ...]
    divergent: tuple[str, ...]
    per_club: tuple[LogTResult, ...]
    merge_tests: tuple[MergeRecord, ...] = ()
    transition_tests: tuple[TransitionRecord, ...] = ()

    def __post_init__(self) -> None:
        if len(self.clubs) != len(self.per_club):
            raise InvalidConfig("one LogTResult is required per club")
        for club, res in zip(self.clubs, self.per_club):
            if len(club) < 2:
                raise InvalidConfig(f"club {club} has fewer than 2 units")
            if res.decision is not Decision.NOT_REJECTED:
                raise InvalidConfig(f"club {club} does not pass its own convergence test")

    def check_partition(self, codes: tuple[str, ...] | list[str]) -> None:
        """Assert clubs + divergent partition ``codes`` exactly."""
        seen: list[str] = [c for club in self.clubs for c in club] + list(self.divergent)
        if len(seen) != len(set(seen)):
            raise InvalidConfig("clubs and divergent set overlap")
        if set(seen) != set(codes):
            raise InvalidConfig("clubs and divergent set do not cover the panel")

    def club_of(self, code: str) -> int | None:
        """1-based club index of a unit, or None if divergent."""
        for k, club in enumerate(self.clubs, start=1):
            if code in club:
                return k
        return None

    @property
    def all_codes(self) -> list[str]:
        return [c for club in self.clubs for c in club] + list(self.divergent)


# ---------------------------------------------------------------------------
# ordering and trial statistics
# ---------------------------------------------------------------------------


def _ordering_stat(panel: Panel, cfg: ClusterConfig) -> dict[str, float]:
    if cfg.ordering == "final_period":
        stats = panel.values[:, -1]
    else:
        k = max(1, math.ceil(cfg.ordering_fraction * panel.n_periods))
        stats = panel.values[:, -k:].mean(axis=1)
    return {u.code: float(s) for u, s in zip(panel.units, stats)}


def order_units(panel: Panel, cfg: ClusterConfig | None = None) -> list[str]:
    """Unit codes sorted by decreasing ordering statistic (stable ties)."""
    cfg = cfg or ClusterConfig()
    stat = _ordering_stat(panel, cfg)
    return sorted(panel.codes, key=lambda c: -stat[c])


def _group_result(panel: Panel, codes: list[str] | tuple[str, ...], cfg: ClusterConfig) -> LogTResult:
    """Log-t test of a unit subset (panel is assumed already smoothed)."""
    sub = panel.subpanel(codes)
    paths = relative_transitions(sub)
    return logt_regress(paths, r=cfg.logt.r, hac=cfg.logt.hac, critical_value=cfg.logt.critical_value)


def form_core_group(panel: Panel, cfg: ClusterConfig | None = None, ordered: list[str] | None = None) -> list[str]:
    """Find the core group among ordered units.

    Returns the top-k* ordered units whose log-t statistic is maximal
    among sizes k with t_k above the core threshold; empty when no pair
    of leading units converges.
    """
    cfg = cfg or ClusterConfig()
    codes = ordered if ordered is not None else order_units(panel, cfg)
    for start in range(len(codes) - 1):
        tail = codes[start:]
        t2 = _group_result(panel, tail[:2], cfg).t_stat
        if t2 <= cfg.core_threshold:
            continue
        best_k, best_t = 2, t2
        for k in range(3, len(tail) + 1):
            tk = _group_result(panel, tail[:k], cfg).t_stat
            if tk > cfg.core_threshold and tk > best_t:
                best_k, best_t = k, tk
        return tail[:best_k]
    return []


def sieve_membership(
    panel: Panel,
    core: list[str],
    candidates: list[str],
    cfg: ClusterConfig | None = None,
) -> tuple[list[str], LogTResult]:
    """Grow a club from a core group.

    Each candidate (kept in its ordered position) joins when the log-t
    statistic of core + candidate exceeds the sieve threshold; a
    candidate whose series is bitwise identical to a core member joins
    outright.  The finished club must pass the log-t test at the
    configured critical value, otherwise the threshold is raised by 0.05
    and the sieve repeats.

    Returns the club (core first, accepted candidates after, in candidate
    order) and its log-t result.
    """
    cfg = cfg or ClusterConfig()
    if not core:
        raise InvalidConfig("sieve needs a non-empty core group")
    core_rows = {panel.row(c).tobytes() for c in core}
    c = cfg.sieve_threshold
    for _ in range(_MAX_SIEVE_ROUNDS):
        accepted = []
        for cand in candidates:
            if panel.row(cand).tobytes() in core_rows:
                accepted.append(cand)
                continue
            trial = _group_result(panel, core + [cand], cfg)
            if trial.t_stat > c:
                accepted.append(cand)
        club = core + accepted
        result = _group_result(panel, club, cfg)
        if result.decision is Decision.NOT_REJECTED:
            return club, result
        if not any(panel.row(a).tobytes() not in core_rows for a in accepted):
            # only duplicates (or nothing) joined: raising c cannot change
            # the club, so the core itself fails the convergence test
            raise InvalidConfig("core group does not pass the convergence test; sieve cannot proceed")
        c += SIEVE_STEP
    raise NoConvergence("sieve threshold escalation did not produce a passing club")


# ---------------------------------------------------------------------------
# duplicate-series pre-grouping
# ---------------------------------------------------------------------------


def _fuse_duplicates(panel: Panel) -> tuple[list[str], dict[str, list[str]]]:
    """Representative codes plus rep -> clones map (bitwise-identical series)."""
    reps: list[str] = []
    first_of: dict[bytes, str] = {}
    clones: dict[str, list[str]] = {}
    for code in panel.codes:
        key = panel.row(code).tobytes()
        if key in first_of:
            clones[first_of[key]].append(code)
        else:
            first_of[key] = code
            reps.append(code)
            clones[code] = []
    return reps, clones


def _dedup(panel: Panel, codes: list[str] | tuple[str, ...]) -> list[str]:
    seen: set[bytes] = set()
    out = []
    for c in codes:
        key = panel.row(c).tobytes()
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def _expand(group: list[str] | tuple[str, ...], clones: dict[str, list[str]]) -> list[str]:
    out: list[str] = []
    for code in group:
        out.append(code)
        out.extend(clones.get(code, []))
    return out


def _sort_club(club: list[str] | tuple[str, ...], stat: dict[str, float], original: tuple[str, ...]) -> tuple[str, ...]:
    pos = {c: i for i, c in enumerate(original)}
    return tuple(sorted(club, key=lambda c: (-stat[c], pos[c])))


# ---------------------------------------------------------------------------
# full identification, merging, transitions
# ---------------------------------------------------------------------------


def identify_clubs(panel: Panel, cfg: ClusterConfig | None = None) -> ClubPartition:
    """Partition a panel into convergence clubs and a divergent remainder.

    Deterministic: identical inputs and configuration always yield the
    same partition, and rescaling the whole panel by a positive constant
    leaves it unchanged.
    """
    cfg = cfg or ClusterConfig()
    work = smooth(panel, cfg.logt.smoothing)
    cfg = cfg.without_smoothing()

    stat = _ordering_stat(work, cfg)
    reps, clones = _fuse_duplicates(work)

    if len(reps) == 1:
        # every unit identical: one club, convergent by inspection
        club = _sort_club(list(panel.codes), stat, panel.codes)
        sentinel = LogTResult.degenerate_convergent(cfg.logt.r, cfg.logt.critical_value)
        part = ClubPartition(clubs=(club,), divergent=(), per_club=(sentinel,))
        part.check_partition(panel.codes)
        return part

    rep_panel = work.subpanel(reps) if any(clones.values()) else work

    clubs: list[list[str]] = []
    results: list[LogTResult] = []
    divergent: list[str] = []
    remaining = list(rep_panel.codes)

    while remaining:
        if len(remaining) == 1:
            divergent.extend(remaining)
            break
        group_res = _group_result(rep_panel, remaining, cfg)
        if group_res.decision is Decision.NOT_REJECTED:
            clubs.append(list(remaining))
            results.append(group_res)
            break
        ordered = sorted(remaining, key=lambda c: -stat[c])
        core = form_core_group(rep_panel, cfg, ordered=ordered)
        if not core:
            divergent.extend(remaining)
            break
        candidates = [c for c in ordered if c not in core]
        club, club_res = sieve_membership(rep_panel, core, candidates, cfg)
        clubs.append(club)
        results.append(club_res)
        remaining = [c for c in remaining if c not in club]

    expanded = [_expand(c, clones) for c in clubs]
    divergent_full = _expand(divergent, clones)
    part = ClubPartition(
        clubs=tuple(_sort_club(c, stat, panel.codes) for c in expanded),
        divergent=tuple(divergent_full),
        per_club=tuple(results),
    )
    part.check_partition(panel.codes)
    return part


def merge_clubs(panel: Panel, partition: ClubPartition, cfg: ClusterConfig | None = None) -> ClubPartition:
    """Fuse adjacent clubs whose union passes the log-t test.

    After every fusion the scan restarts from club 1, so the pass
    terminates with a partition in which no adjacent union converges.
    All tests run are recorded in ``merge_tests``.  The club count never
    increases.
    """
    cfg = cfg or ClusterConfig()
    work = smooth(panel, cfg.logt.smoothing)
    cfg = cfg.without_smoothing()
    stat = _ordering_stat(work, cfg)

    clubs = [list(c) for c in partition.clubs]
    results = list(partition.per_club)
    records = list(partition.merge_tests)

    k = 0
    while k < len(clubs) - 1:
        union = clubs[k] + clubs[k + 1]
        dedup = _dedup(work, union)
        if len(dedup) == 1:
            res = LogTResult.degenerate_convergent(cfg.logt.r, cfg.logt.critical_value)
        else:
            res = _group_result(work, dedup, cfg)
        merged = res.decision is Decision.NOT_REJECTED
        records.append(MergeRecord(clubs=(k + 1, k + 2), result=res, merged=merged))
        if merged:
            clubs[k] = union
            results[k] = res
            del clubs[k + 1]
            del results[k + 1]
            k = 0
        else:
            k += 1

    original_codes = partition.all_codes
    part = ClubPartition(
        clubs=tuple(_sort_club(c, stat, panel.codes) for c in clubs),
        divergent=partition.divergent,
        per_club=tuple(results),
        merge_tests=tuple(records),
        transition_tests=partition.transition_tests,
    )
    part.check_partition(original_codes)
    return part


def transition_test(
    panel: Panel,
    partition: ClubPartition,
    subset: list[str] | tuple[str, ...],
    cfg: ClusterConfig | None = None,
) -> tuple[LogTResult, ClubPartition]:
    """Test a cross-boundary subset for convergence.

    The subset must name at least two units drawn from exactly two
    adjacent clubs; a non-rejection flags units possibly in transit
    between the clubs.  Returns the test result and a partition with the
    record appended.

    Raises
    ------
    InvalidSubset
        If the subset does not span exactly two adjacent clubs.
    """
    cfg = cfg or ClusterConfig()
    subset = list(subset)
    if len(subset) < 2:
        raise InvalidSubset("transition subset needs at least 2 units")
    homes = []
    for code in subset:
        club = partition.club_of(code)
        if club is None:
            raise InvalidSubset(f"unit {code} is divergent, not in any club")
        homes.append(club)
    spanned = sorted(set(homes))
    if len(spanned) != 2 or spanned[1] - spanned[0] != 1:
        raise InvalidSubset(f"subset spans clubs {spanned}; exactly two adjacent clubs are required")

    work = smooth(panel, cfg.logt.smoothing)
    cfg = cfg.without_smoothing()
    dedup = _dedup(work, subset)
    if len(dedup) == 1:
        res = LogTResult.degenerate_convergent(cfg.logt.r, cfg.logt.critical_value)
    else:
        res = _group_result(work, dedup, cfg)
    record = TransitionRecord(subset=tuple(subset), result=res)
    new_part = replace(partition, transition_tests=partition.transition_tests + (record,))
    return res, new_part


def default_transition_subsets(partition: ClubPartition) -> list[tuple[str, ...]]:
    """Heuristic boundary subsets: bottom half of club k with top half of club k+1.

    This is a convenience for exploratory runs, not a canonical rule; any
    substantive analysis should name its subsets explicitly.
    """
    out = []
    for k in range(len(partition.clubs) - 1):
        upper = partition.clubs[k]
        lower = partition.clubs[k + 1]
        take_u = upper[len(upper) - math.ceil(len(upper) / 2) :]
        take_l = lower[: math.ceil(len(lower) / 2)]
        out.append(tuple(take_u) + tuple(take_l))
    return out
