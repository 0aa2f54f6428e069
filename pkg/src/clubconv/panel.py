"""Panel data model and CSV ingestion.

A :class:`Panel` is an N-by-T block of strictly positive indicator values
(shares in percent, or dimensionless ratios) observed for N units over T
consecutive yearly periods.  Positivity matters because the relative
transition paths divide by the cross-sectional mean, and downstream tests
take logs of variance ratios.

Two text layouts are accepted:

* wide  -- header ``unit,<year1>,<year2>,...``, one row per unit;
* long  -- header ``unit,year,value``, one observation per row.

Lines starting with ``#`` are comments.  Empty cells, ``NA`` and ``:``
(the Eurostat convention) mark missing observations.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import IO, Iterable, Mapping

import numpy as np

from .errors import (
    EmptyPanel,
    MalformedInput,
    MissingTarget,
    NonPositiveValue,
)

MISSING_MARKERS = frozenset({"", "na", ":"})

MIN_UNITS = 2
MIN_PERIODS = 5


@dataclass(frozen=True)
class UnitId:
    """Identifier of a cross-sectional unit (e.g. a country code)."""

    code: str
    name: str = ""

    def __post_init__(self) -> None:
        if not self.code or not self.code.isascii():
            raise MalformedInput(f"unit code must be non-empty ASCII, got {self.code!r}")


@dataclass(frozen=True)
class Panel:
    """Immutable N x T panel of strictly positive indicator values.

    Attributes
    ----------
    units : tuple of UnitId
        Cross-sectional units, in panel row order.
    periods : tuple of int
        Consecutive integer years, strictly increasing with step 1.
    values : numpy.ndarray
        Read-only float array of shape (N, T); ``values[i, t]`` is the
        indicator for ``units[i]`` in ``periods[t]``.
    """

    units: tuple[UnitId, ...]
    periods: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "units", tuple(self.units))
        object.__setattr__(self, "periods", tuple(int(p) for p in self.periods))

        n, t = len(self.units), len(self.periods)
        if n < MIN_UNITS or t < MIN_PERIODS:
            raise EmptyPanel(f"panel needs >= {MIN_UNITS} units and >= {MIN_PERIODS} periods, got {n} x {t}")
        if vals.shape != (n, t):
            raise MalformedInput(f"values shape {vals.shape} does not match {n} units x {t} periods")
        codes = [u.code for u in self.units]
        if len(set(codes)) != n:
            raise MalformedInput("duplicate unit codes in panel")
        for a, b in zip(self.periods, self.periods[1:]):
            if b != a + 1:
                raise MalformedInput(f"periods must be consecutive, found {a} -> {b}")
        if not np.all(np.isfinite(vals)):
            raise MalformedInput("panel contains non-finite values")
        if np.any(vals <= 0.0):
            i, t_bad = np.argwhere(vals <= 0.0)[0]
            raise NonPositiveValue(
                f"value {vals[i, t_bad]!r} for unit {codes[i]} in {self.periods[t_bad]} is not strictly positive"
            )

    @property
    def n_units(self) -> int:
        return len(self.units)

    @property
    def n_periods(self) -> int:
        return len(self.periods)

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(u.code for u in self.units)

    def row(self, code: str) -> np.ndarray:
        """Series for one unit, identified by code."""
        return self.values[self._index(code)]

    def _index(self, code: str) -> int:
        for i, u in enumerate(self.units):
            if u.code == code:
                return i
        raise KeyError(code)

    def subpanel(self, codes: Iterable[str]) -> "Panel":
        """New panel restricted to ``codes``, in the given order."""
        idx = [self._index(c) for c in codes]
        return Panel(tuple(self.units[i] for i in idx), self.periods, self.values[idx])

    def window(self, first: int, last: int) -> "Panel":
        """New panel restricted to periods ``first..last`` inclusive."""
        keep = [j for j, p in enumerate(self.periods) if first <= p <= last]
        if not keep:
            raise EmptyPanel(f"no periods in {first}..{last}")
        return Panel(self.units, tuple(self.periods[j] for j in keep), self.values[:, keep])

    def with_values(self, values: np.ndarray) -> "Panel":
        """New panel with the same units/periods and replaced values."""
        return Panel(self.units, self.periods, values)


@dataclass(frozen=True)
class TargetVector:
    """Per-unit positive targets (e.g. national 2020 renewable shares)."""

    targets: Mapping[str, float]

    def __post_init__(self) -> None:
        frozen = MappingProxyType({str(k): float(v) for k, v in self.targets.items()})
        object.__setattr__(self, "targets", frozen)
        for code, val in self.targets.items():
            if not (val > 0.0 and math.isfinite(val)):
                raise NonPositiveValue(f"target for {code} must be finite and > 0, got {val!r}")

    def __getitem__(self, code: str) -> float:
        return self.targets[code]

    def inverted(self) -> "TargetVector":
        return TargetVector({c: 1.0 / v for c, v in self.targets.items()})


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------


def _read_rows(source: str | Path | IO[str]) -> list[list[str]]:
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    rows = []
    for row in csv.reader(io.StringIO(text)):
        if not row or row[0].lstrip().startswith("#"):
            continue
        rows.append([cell.strip() for cell in row])
    if not rows:
        raise MalformedInput("no data rows found")
    return rows


def _parse_cell(cell: str, where: str) -> float:
    if cell.lower() in MISSING_MARKERS:
        return math.nan
    try:
        return float(cell)
    except ValueError:
        raise MalformedInput(f"cannot parse value {cell!r} {where}") from None


def _parse_wide(rows: list[list[str]]) -> tuple[list[str], list[int], np.ndarray]:
    header = rows[0]
    if len(header) < 2 or header[0].lower() != "unit":
        raise MalformedInput("wide layout expects header 'unit,<year1>,<year2>,...'")
    try:
        years = [int(y) for y in header[1:]]
    except ValueError:
        raise MalformedInput("wide header years must be integers") from None
    if sorted(years) != years or len(set(years)) != len(years):
        raise MalformedInput("wide header years must be strictly increasing")
    codes: list[str] = []
    data = []
    for row in rows[1:]:
        if len(row) != len(header):
            raise MalformedInput(f"row for {row[0]!r} has {len(row)} cells, expected {len(header)}")
        code = row[0]
        if code in codes:
            raise MalformedInput(f"duplicate unit row {code!r}")
        codes.append(code)
        data.append([_parse_cell(c, f"for unit {code}") for c in row[1:]])
    return codes, years, np.array(data, dtype=float)


def _parse_long(rows: list[list[str]]) -> tuple[list[str], list[int], np.ndarray]:
    header = [h.lower() for h in rows[0]]
    if header != ["unit", "year", "value"]:
        raise MalformedInput("long layout expects header 'unit,year,value'")
    obs: dict[tuple[str, int], float] = {}
    codes: list[str] = []
    years_seen: set[int] = set()
    for row in rows[1:]:
        if len(row) != 3:
            raise MalformedInput(f"long row {row!r} must have 3 cells")
        code = row[0]
        try:
            year = int(row[1])
        except ValueError:
            raise MalformedInput(f"bad year {row[1]!r} for unit {code}") from None
        if (code, year) in obs:
            raise MalformedInput(f"duplicate observation for {code}, {year}")
        if code not in codes:
            codes.append(code)
        years_seen.add(year)
        obs[(code, year)] = _parse_cell(row[2], f"for unit {code}, year {year}")
    years = list(range(min(years_seen), max(years_seen) + 1))
    mat = np.full((len(codes), len(years)), math.nan)
    for (code, year), val in obs.items():
        mat[codes.index(code), years.index(year)] = val
    return codes, years, mat


def _contiguous_runs(years: list[int]) -> list[tuple[int, int]]:
    """Index ranges [a, b) of consecutive-integer stretches of ``years``."""
    runs = []
    a = 0
    for j in range(1, len(years) + 1):
        if j == len(years) or years[j] != years[j - 1] + 1:
            runs.append((a, j))
            a = j
    return runs


def load_panel(source: str | Path | IO[str], layout: str = "wide", *, lenient: bool = False) -> Panel:
    """Load a panel from a text stream or path.

    The returned panel covers the longest contiguous year range over which
    the retained units are complete.  In strict mode (default) every input
    unit must be complete on that range; a unit with holes that prevent any
    usable range is an error.  In lenient mode incomplete units are dropped
    with a warning and the range is re-chosen to keep as many units as
    possible.

    Parameters
    ----------
    source : path or text stream
    layout : {'wide', 'long'}
    lenient : bool
        Drop units with missing values instead of raising.

    Raises
    ------
    MalformedInput, NonPositiveValue, EmptyPanel
    """
    rows = _read_rows(source)
    if layout == "wide":
        codes, years, mat = _parse_wide(rows)
    elif layout == "long":
        codes, years, mat = _parse_long(rows)
    else:
        raise MalformedInput(f"unknown layout {layout!r}")

    runs = _contiguous_runs(years)
    complete = ~np.isnan(mat)

    if not lenient:
        # longest contiguous range on which every unit is complete
        best: tuple[int, tuple[int, int]] | None = None
        for a, b in runs:
            length = _longest_all_complete(complete[:, a:b])
            if length is not None:
                start, span = length
                cand = (span, (a + start, a + start + span))
                if best is None or cand[0] > best[0]:
                    best = cand
        if best is None or best[0] < MIN_PERIODS:
            holed = [codes[i] for i in range(len(codes)) if not complete[i].all()]
            if holed:
                raise MalformedInput(
                    f"units with missing values prevent a usable contiguous range: {', '.join(holed)} "
                    "(use lenient mode to drop them)"
                )
            raise EmptyPanel("fewer than 5 contiguous periods available")
        lo, hi = best[1]
        keep_units = list(range(len(codes)))
    else:
        # keep as many units as possible, then as many periods as possible
        best_l: tuple[tuple[int, int, int], tuple[int, int], list[int]] | None = None
        for a, b in runs:
            for lo in range(a, b):
                for hi in range(lo + MIN_PERIODS, b + 1):
                    ok = [i for i in range(len(codes)) if complete[i, lo:hi].all()]
                    if len(ok) < MIN_UNITS:
                        continue
                    score = (len(ok), hi - lo, -lo)
                    if best_l is None or score > best_l[0]:
                        best_l = (score, (lo, hi), ok)
        if best_l is None:
            raise EmptyPanel("no contiguous range with at least 2 complete units and 5 periods")
        (_, (lo, hi), keep_units) = best_l
        dropped = [codes[i] for i in range(len(codes)) if i not in keep_units]
        if dropped:
            warnings.warn(
                f"dropping units with missing values in {years[lo]}-{years[hi - 1]}: {', '.join(dropped)}",
                stacklevel=2,
            )

    sel = mat[np.ix_(keep_units, range(lo, hi))]
    kept_codes = [codes[i] for i in keep_units]
    if np.any(np.nan_to_num(sel, nan=1.0) <= 0.0):
        i, t = np.argwhere(np.nan_to_num(sel, nan=1.0) <= 0.0)[0]
        raise NonPositiveValue(
            f"value {sel[i, t]!r} for unit {kept_codes[i]} in {years[lo + t]} is not strictly positive"
        )
    if len(kept_codes) < MIN_UNITS or hi - lo < MIN_PERIODS:
        raise EmptyPanel(f"only {len(kept_codes)} units x {hi - lo} periods survive ingestion")
    units = tuple(UnitId(c) for c in kept_codes)
    return Panel(units, tuple(years[lo:hi]), sel)


def _longest_all_complete(block: np.ndarray) -> tuple[int, int] | None:
    """(start, length) of the longest stretch of columns complete for all rows."""
    col_ok = block.all(axis=0)
    best = None
    run = 0
    for j, ok in enumerate(list(col_ok) + [False]):
        if ok:
            run += 1
        else:
            if run > 0 and (best is None or run > best[1]):
                best = (j - run, run)
            run = 0
    return best


def load_targets(source: str | Path | IO[str]) -> TargetVector:
    """Load a target vector from a 'unit,target' CSV."""
    rows = _read_rows(source)
    header = [h.lower() for h in rows[0]]
    if header != ["unit", "target"]:
        raise MalformedInput("target file expects header 'unit,target'")
    targets: dict[str, float] = {}
    for row in rows[1:]:
        if len(row) != 2:
            raise MalformedInput(f"target row {row!r} must have 2 cells")
        if row[0] in targets:
            raise MalformedInput(f"duplicate target for {row[0]!r}")
        targets[row[0]] = _parse_cell(row[1], f"target for {row[0]}")
    return TargetVector(targets)


def write_wide(panel: Panel, dest: str | Path | IO[str]) -> None:
    """Write a panel in the wide layout; values round-trip bit-exactly."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["unit", *panel.periods])
    for i, unit in enumerate(panel.units):
        writer.writerow([unit.code, *(repr(float(v)) for v in panel.values[i])])
    text = out.getvalue()
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------


def rescale_to_targets(panel: Panel, targets: TargetVector) -> Panel:
    """Divide each unit's series by its target.

    The result measures each unit's distance to its own goal; a value of
    1 means the target is exactly met.

    Raises
    ------
    MissingTarget
        If some panel unit has no target.
    """
    missing = [u.code for u in panel.units if u.code not in targets.targets]
    if missing:
        raise MissingTarget(f"no target for: {', '.join(missing)}")
    divisors = np.array([targets[u.code] for u in panel.units])
    return panel.with_values(panel.values / divisors[:, None])
