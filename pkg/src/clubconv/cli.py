"""End-to-end driver: config file, analysis recipes, JSON report, CSV series.

Recipes
-------
overall
    Log-t test on the raw panel, then club identification, merging and
    any configured transition tests.
target_ratio
    The same pipeline on the panel rescaled by per-unit targets.
sector
    The overall pipeline run per sector panel (``sector.<NAME> = path``).
probit
    Builds a design matrix from long-format covariate files (averaged
    over per-variable year windows), takes the outcome from a previous
    run's club partition, and fits the membership probit.
montecarlo
    Synthetic-panel replication study driven by ``mc.*`` keys.

Configuration is a flat ``key = value`` text file; ``#`` starts a
comment.  Command-line flags override file values.  Reports serialise to
a stable JSON layout (sorted keys, shortest round-trip floats) that is
byte-identical across runs up to the timestamp field.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .clustering import (
    ClubPartition,
    ClusterConfig,
    default_transition_subsets,
    identify_clubs,
    merge_clubs,
    transition_test,
)
from .errors import ClubConvError, InvalidConfig, MalformedInput
from .logt import HacConfig, LogTConfig, LogTResult, relative_transitions
from .panel import Panel, load_panel, load_targets, rescale_to_targets
from .probit import DesignMatrix, classification_table, fit_probit
from .simlab import ClubSpec, DgpConfig, monte_carlo
from .smoothing import SmoothingConfig, smooth

RECIPES = ("overall", "target_ratio", "sector", "probit", "montecarlo")

# covariate averaging windows (inclusive year ranges); overridable via
# window.<NAME> = first:last
DEFAULT_WINDOWS = {
    "GDPCAP": (2010, 2018),
    "ENVEXPGDP": (2014, 2016),
    "ENIMPDEP": (2009, 2018),
    "NUCLENCAP": (2010, 2018),
}

COVARIATE_ORDER = ("GDPCAP", "SQ_GDPCAP", "ENVEXPGDP", "ENIMPDEP", "NUCLENCAP")


@dataclass(frozen=True)
class AnalysisConfig:
    """Everything one run needs; built from a config file plus overrides."""

    recipe: str = "overall"
    panel_path: str | None = None
    panel_layout: str = "wide"
    targets_path: str | None = None
    partition_path: str | None = None
    covariate_paths: dict[str, str] = field(default_factory=dict)
    windows: dict[str, tuple[int, int]] = field(default_factory=dict)
    sector_paths: dict[str, str] = field(default_factory=dict)
    transitions: dict[str, tuple[str, ...]] = field(default_factory=dict)
    transition_heuristic: bool = False
    out_dir: str = "out"
    lenient: bool = False
    period_start: int | None = None
    period_end: int | None = None
    r: float = 0.3
    critical_value: float = -1.65
    hac_bandwidth: int | None = None
    smoothing: str = "none"
    hp_lambda: float = 6.25
    ordering: str = "final_period"
    ordering_fraction: float = 1.0 / 3.0
    sieve_threshold: float = 0.0
    core_threshold: float = -1.65
    seed: int = 0
    mc_clubs: tuple[ClubSpec, ...] = ()
    mc_periods: int = 40
    mc_growth: float = 0.02
    mc_replications: int = 100
    mc_analysis: str = "logt"
    mc_slowly_varying: bool = False

    def logt_config(self) -> LogTConfig:
        return LogTConfig(
            r=self.r,
            hac=HacConfig(bandwidth=self.hac_bandwidth),
            critical_value=self.critical_value,
            smoothing=self.smoothing_config(),
        )

    def smoothing_config(self) -> SmoothingConfig:
        if self.smoothing in ("hp", "hp_filter"):
            return SmoothingConfig.hp(self.hp_lambda)
        return SmoothingConfig.none()

    def cluster_config(self) -> ClusterConfig:
        return ClusterConfig(
            ordering=self.ordering,
            ordering_fraction=self.ordering_fraction,
            sieve_threshold=self.sieve_threshold,
            core_threshold=self.core_threshold,
            logt=self.logt_config(),
        )


def _parse_bool(raw: str, key: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise InvalidConfig(f"cannot parse boolean {raw!r} for key {key}")


def _parse_club_specs(raw: str) -> tuple[ClubSpec, ...]:
    """'n:delta:alpha:sd, n:delta:alpha:sd, ...' -> ClubSpec tuple."""
    specs = []
    for chunk in raw.split(","):
        parts = chunk.strip().split(":")
        if len(parts) != 4:
            raise InvalidConfig(f"club spec {chunk!r} must be n:delta:alpha:sd")
        specs.append(
            ClubSpec(
                n_units=int(parts[0]),
                delta_limit=float(parts[1]),
                alpha=float(parts[2]),
                noise_sd=float(parts[3]),
            )
        )
    return tuple(specs)


def parse_config(path: str | Path) -> AnalysisConfig:
    """Read a flat key = value config file into an AnalysisConfig."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise InvalidConfig(f"{path}:{lineno}: expected 'key = value', got {stripped!r}")
        key, _, val = stripped.partition("=")
        values[key.strip()] = val.strip()
    return config_from_mapping(values, base_dir=Path(path).parent)


def config_from_mapping(values: dict[str, str], base_dir: Path | None = None) -> AnalysisConfig:
    base_dir = base_dir or Path(".")

    def resolve(p: str) -> str:
        q = Path(p)
        return str(q if q.is_absolute() else base_dir / q)

    kw: dict = {}
    covariates: dict[str, str] = {}
    windows: dict[str, tuple[int, int]] = {}
    sectors: dict[str, str] = {}
    transitions: dict[str, tuple[str, ...]] = {}

    simple = {
        "recipe": ("recipe", str),
        "layout": ("panel_layout", str),
        "out": ("out_dir", str),
        "r": ("r", float),
        "critical_value": ("critical_value", float),
        "smoothing": ("smoothing", str),
        "hp_lambda": ("hp_lambda", float),
        "ordering": ("ordering", str),
        "ordering_fraction": ("ordering_fraction", float),
        "sieve_threshold": ("sieve_threshold", float),
        "core_threshold": ("core_threshold", float),
        "seed": ("seed", int),
        "period_start": ("period_start", int),
        "period_end": ("period_end", int),
        "mc.periods": ("mc_periods", int),
        "mc.growth": ("mc_growth", float),
        "mc.replications": ("mc_replications", int),
        "mc.analysis": ("mc_analysis", str),
    }
    for key, raw in values.items():
        if key in simple:
            name, conv = simple[key]
            kw[name] = conv(raw)
        elif key == "panel":
            kw["panel_path"] = resolve(raw)
        elif key == "targets":
            kw["targets_path"] = resolve(raw)
        elif key == "partition":
            kw["partition_path"] = resolve(raw)
        elif key == "lenient":
            kw["lenient"] = _parse_bool(raw, key)
        elif key == "transition_heuristic":
            kw["transition_heuristic"] = _parse_bool(raw, key)
        elif key == "mc.slowly_varying":
            kw["mc_slowly_varying"] = _parse_bool(raw, key)
        elif key == "hac_bandwidth":
            kw["hac_bandwidth"] = None if raw.lower() == "auto" else int(raw)
        elif key == "mc.clubs":
            kw["mc_clubs"] = _parse_club_specs(raw)
        elif key.startswith("covariate."):
            covariates[key.split(".", 1)[1]] = resolve(raw)
        elif key.startswith("window."):
            first, _, last = raw.partition(":")
            windows[key.split(".", 1)[1]] = (int(first), int(last))
        elif key.startswith("sector."):
            sectors[key.split(".", 1)[1]] = resolve(raw)
        elif key.startswith("transition."):
            transitions[key.split(".", 1)[1]] = tuple(c.strip() for c in raw.split(",") if c.strip())
        else:
            raise InvalidConfig(f"unknown config key {key!r}")

    kw["covariate_paths"] = covariates
    kw["windows"] = windows
    kw["sector_paths"] = sectors
    kw["transitions"] = transitions
    cfg = AnalysisConfig(**kw)
    if cfg.recipe not in RECIPES:
        raise InvalidConfig(f"unknown recipe {cfg.recipe!r}, expected one of {RECIPES}")
    return cfg


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


@dataclass
class Report:
    """Structured result of one run; serialises losslessly to JSON."""

    payload: dict

    def to_json(self) -> str:
        return json.dumps(self.payload, sort_keys=True, indent=2, allow_nan=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(payload=json.loads(text))

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")


def _logt_dict(res: LogTResult) -> dict:
    return {
        "a_hat": _num(res.a_hat),
        "b_hat": _num(res.b_hat),
        "se_hac": _num(res.se_hac),
        "t_stat": _num(res.t_stat),
        "alpha_hat": _num(res.alpha_hat),
        "r": res.r,
        "first_t": res.first_t,
        "n_obs": res.n_obs,
        "bandwidth": res.bandwidth,
        "critical_value": res.critical_value,
        "decision": res.decision.value,
        "class": res.convergence_class.value,
        "degenerate": res.degenerate,
    }


def _num(x: float):
    """JSON-safe number: NaN/inf become strings so the layout stays portable."""
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


def _partition_dict(part: ClubPartition) -> dict:
    return {
        "clubs": [
            {
                "members": list(club),
                "b_hat": _num(res.b_hat),
                "t_stat": _num(res.t_stat),
                "alpha_hat": _num(res.alpha_hat),
                "decision": res.decision.value,
                "class": res.convergence_class.value,
            }
            for club, res in zip(part.clubs, part.per_club)
        ],
        "divergent": list(part.divergent),
        "merges": [
            {
                "clubs": list(rec.clubs),
                "t_stat": _num(rec.result.t_stat),
                "b_hat": _num(rec.result.b_hat),
                "decision": rec.result.decision.value,
                "merged": rec.merged,
            }
            for rec in part.merge_tests
        ],
        "transitions": [
            {
                "subset": list(rec.subset),
                "t_stat": _num(rec.result.t_stat),
                "b_hat": _num(rec.result.b_hat),
                "decision": rec.result.decision.value,
            }
            for rec in part.transition_tests
        ],
    }


def _sha256(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _fingerprint(cfg: AnalysisConfig) -> dict[str, str]:
    paths = []
    if cfg.panel_path:
        paths.append(cfg.panel_path)
    if cfg.targets_path:
        paths.append(cfg.targets_path)
    if cfg.partition_path:
        paths.append(cfg.partition_path)
    paths.extend(cfg.covariate_paths.values())
    paths.extend(cfg.sector_paths.values())
    return {Path(p).name: _sha256(p) for p in paths}


def _config_echo(cfg: AnalysisConfig) -> dict:
    echo = asdict(cfg)
    echo["mc_clubs"] = [asdict(c) for c in cfg.mc_clubs]
    echo["windows"] = {k: list(v) for k, v in cfg.windows.items()}
    echo["transitions"] = {k: list(v) for k, v in cfg.transitions.items()}
    return echo


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------


def _load_main_panel(cfg: AnalysisConfig, path: str | None = None) -> Panel:
    src = path or cfg.panel_path
    if not src:
        raise InvalidConfig("this recipe needs a 'panel' input path")
    panel = load_panel(src, layout=cfg.panel_layout, lenient=cfg.lenient)
    if cfg.period_start is not None or cfg.period_end is not None:
        panel = panel.window(cfg.period_start or panel.periods[0], cfg.period_end or panel.periods[-1])
    return panel


def _club_pipeline(panel: Panel, cfg: AnalysisConfig) -> dict:
    from .logt import convergence_test

    logt_cfg = cfg.logt_config()
    cluster_cfg = cfg.cluster_config()
    overall = convergence_test(panel, logt_cfg)
    part = identify_clubs(panel, cluster_cfg)
    part = merge_clubs(panel, part, cluster_cfg)
    subsets = list(cfg.transitions.values())
    if cfg.transition_heuristic:
        subsets.extend(default_transition_subsets(part))
    for subset in subsets:
        _, part = transition_test(panel, part, subset, cluster_cfg)
    out = {"logt": _logt_dict(overall)}
    out.update(_partition_dict(part))
    return out


def run(cfg: AnalysisConfig) -> Report:
    """Execute one recipe and assemble its report."""
    body: dict = {}
    emitted_panel: Panel | None = None
    emitted_partition: ClubPartition | None = None

    if cfg.recipe == "overall":
        panel = _load_main_panel(cfg)
        body = _club_pipeline(panel, cfg)
        emitted_panel = panel
    elif cfg.recipe == "target_ratio":
        if not cfg.targets_path:
            raise InvalidConfig("target_ratio recipe needs a 'targets' input path")
        panel = rescale_to_targets(_load_main_panel(cfg), load_targets(cfg.targets_path))
        body = _club_pipeline(panel, cfg)
        emitted_panel = panel
    elif cfg.recipe == "sector":
        if not cfg.sector_paths:
            raise InvalidConfig("sector recipe needs at least one 'sector.<NAME> = path' entry")
        body = {"sectors": {}}
        for name in sorted(cfg.sector_paths):
            panel = _load_main_panel(cfg, cfg.sector_paths[name])
            body["sectors"][name] = _club_pipeline(panel, cfg)
    elif cfg.recipe == "probit":
        body = {"probit": _probit_recipe(cfg)}
    elif cfg.recipe == "montecarlo":
        body = {"montecarlo": _montecarlo_recipe(cfg)}
    else:
        raise InvalidConfig(f"unknown recipe {cfg.recipe!r}")

    payload = {
        "meta": {
            "version": __version__,
            "config": _config_echo(cfg),
            "data_hash": _fingerprint(cfg),
            "timestamp": datetime.now(timezone.utc).isoformat(),
        },
        **body,
    }
    report = Report(payload=payload)

    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report.write(out_dir / "report.json")
    if emitted_panel is not None:
        paths = relative_transitions(smooth(emitted_panel, cfg.smoothing_config()))
        if emitted_partition is None and cfg.recipe in ("overall", "target_ratio"):
            emitted_partition = _partition_from_payload(body, emitted_panel)
        emit_paths(paths, emitted_partition, out_dir)
    if cfg.recipe == "montecarlo":
        _write_montecarlo_csv(body["montecarlo"], out_dir / "montecarlo.csv")
    return report


def _partition_from_payload(body: dict, panel: Panel) -> ClubPartition | None:
    """Rebuild a minimal partition view (members only) from the report body."""
    clubs = body.get("clubs")
    if not clubs:
        return None
    return _MembersOnly(tuple(tuple(c["members"]) for c in clubs), tuple(body.get("divergent", ())))


class _MembersOnly:
    """Duck-typed stand-in for ClubPartition when only memberships matter."""

    def __init__(self, clubs: tuple[tuple[str, ...], ...], divergent: tuple[str, ...]):
        self.clubs = clubs
        self.divergent = divergent


def _probit_recipe(cfg: AnalysisConfig) -> dict:
    missing = [name for name in DEFAULT_WINDOWS if name not in cfg.covariate_paths]
    if missing:
        raise InvalidConfig(f"probit recipe needs covariate paths for: {', '.join(missing)}")
    if not cfg.partition_path:
        raise InvalidConfig("probit recipe needs a 'partition' report path for the outcome")

    prior = Report.from_json(Path(cfg.partition_path).read_text(encoding="utf-8")).payload
    clubs = prior.get("clubs") or []
    if len(clubs) != 2:
        raise InvalidConfig(f"membership outcome needs exactly 2 clubs in the prior partition, found {len(clubs)}")
    club1 = list(clubs[0]["members"])
    club2 = list(clubs[1]["members"])
    units = club1 + club2

    means: dict[str, dict[str, float]] = {}
    for name in DEFAULT_WINDOWS:
        window = cfg.windows.get(name, DEFAULT_WINDOWS[name])
        means[name] = covariate_window_means(cfg.covariate_paths[name], window, units)

    X = []
    y = []
    for code in units:
        gdp = means["GDPCAP"][code]
        X.append([1.0, gdp, gdp * gdp, means["ENVEXPGDP"][code], means["ENIMPDEP"][code], means["NUCLENCAP"][code]])
        y.append(0 if code in club1 else 1)
    design = DesignMatrix(names=("const", *COVARIATE_ORDER), X=np.array(X), y=np.array(y))
    fit = fit_probit(design)
    table = classification_table(fit, design)
    return {
        "coef": [
            {
                "name": name,
                "beta": float(b),
                "se": float(s),
                "z": _num(float(zv)),
                "p": float(pv),
            }
            for name, b, s, zv, pv in zip(fit.names, fit.beta, fit.se, fit.z, fit.p_value)
        ],
        "loglik": fit.loglik,
        "loglik_null": fit.loglik_null,
        "mcfadden_r2": fit.mcfadden_r2,
        "lr": {"stat": fit.lr_stat, "df": fit.lr_df, "p": fit.lr_pvalue},
        "classified": {"correct": fit.n_correct, "total": fit.n_obs},
        "classification_table": asdict(table),
        "aic": fit.aic,
        "bic": fit.bic,
        "outcome": {code: int(val) for code, val in zip(units, y)},
    }


def covariate_window_means(path: str | Path, window: tuple[int, int], units: list[str]) -> dict[str, float]:
    """Mean of a long-format covariate over an inclusive year window.

    Unlike panel ingestion this reader accepts zero and negative values
    (covariates are not indicator shares).  Years missing inside the
    window are skipped; a unit with no observation at all in the window
    is an error.
    """
    from .panel import MISSING_MARKERS, _read_rows

    rows = _read_rows(path)
    header = [h.lower() for h in rows[0]]
    if header != ["unit", "year", "value"]:
        raise MalformedInput(f"covariate file {path} expects header 'unit,year,value'")
    acc: dict[str, list[float]] = {}
    for row in rows[1:]:
        if len(row) != 3:
            raise MalformedInput(f"covariate row {row!r} must have 3 cells")
        code, year_raw, val_raw = row
        if val_raw.lower() in MISSING_MARKERS:
            continue
        try:
            year = int(year_raw)
            val = float(val_raw)
        except ValueError:
            raise MalformedInput(f"bad covariate row {row!r} in {path}") from None
        if window[0] <= year <= window[1]:
            acc.setdefault(code, []).append(val)
    out = {}
    for code in units:
        if code not in acc:
            raise MalformedInput(f"covariate file {path} has no data for unit {code} in {window[0]}-{window[1]}")
        out[code] = float(np.mean(acc[code]))
    return out


def _montecarlo_recipe(cfg: AnalysisConfig) -> list[dict]:
    if not cfg.mc_clubs:
        raise InvalidConfig("montecarlo recipe needs 'mc.clubs = n:delta:alpha:sd, ...'")
    dgp = DgpConfig(
        clubs=cfg.mc_clubs,
        n_periods=cfg.mc_periods,
        growth=cfg.mc_growth,
        seed=cfg.seed,
        slowly_varying=cfg.mc_slowly_varying,
    )
    summaries = monte_carlo(
        [dgp],
        analysis=cfg.mc_analysis,
        replications=cfg.mc_replications,
        logt_cfg=cfg.logt_config(),
        cluster_cfg=cfg.cluster_config(),
    )
    return [
        {
            "label": s.label,
            "replications": s.replications,
            "rejection_rate": s.rejection_rate,
            "b_mean": _num(s.b_mean),
            "b_sd": _num(s.b_sd),
            "recovery_rate": _num(s.recovery_rate),
            "ari_mean": _num(s.ari_mean),
        }
        for s in summaries
    ]


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def emit_paths(paths, grouping, out_dir: str | Path) -> list[Path]:
    """Write transition-path CSVs: h_it, H_t and, with a grouping, per-club
    mean paths plus each unit's path relative to its club mean."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    h_path = out_dir / "transition_paths.csv"
    with h_path.open("w", encoding="utf-8") as fh:
        fh.write("unit," + ",".join(str(p) for p in paths.periods) + "\n")
        for unit, row in zip(paths.units, paths.h):
            fh.write(unit.code + "," + ",".join(_fmt(v) for v in row) + "\n")
    written.append(h_path)

    H_path = out_dir / "cross_sectional_variance.csv"
    with H_path.open("w", encoding="utf-8") as fh:
        fh.write("year,H\n")
        for year, val in zip(paths.periods, paths.H):
            fh.write(f"{year},{_fmt(val)}\n")
    written.append(H_path)

    if grouping is not None and getattr(grouping, "clubs", None):
        codes = [u.code for u in paths.units]
        club_means = {}
        mean_path = out_dir / "club_mean_paths.csv"
        with mean_path.open("w", encoding="utf-8") as fh:
            fh.write("club," + ",".join(str(p) for p in paths.periods) + "\n")
            for k, club in enumerate(grouping.clubs, start=1):
                idx = [codes.index(c) for c in club]
                mean = paths.h[idx].mean(axis=0)
                club_means[k] = mean
                fh.write(f"club{k}," + ",".join(_fmt(v) for v in mean) + "\n")
        written.append(mean_path)

        rel_path = out_dir / "within_club_relative_paths.csv"
        with rel_path.open("w", encoding="utf-8") as fh:
            fh.write("unit,club," + ",".join(str(p) for p in paths.periods) + "\n")
            for k, club in enumerate(grouping.clubs, start=1):
                for c in club:
                    rel = paths.h[codes.index(c)] / club_means[k]
                    fh.write(f"{c},club{k}," + ",".join(_fmt(v) for v in rel) + "\n")
        written.append(rel_path)
    return written


def _write_montecarlo_csv(rows: list[dict], path: Path) -> None:
    cols = ["label", "replications", "rejection_rate", "b_mean", "b_sd", "recovery_rate", "ari_mean"]
    with path.open("w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for row in rows:
            fh.write(",".join(str(row[c]) for c in cols) + "\n")


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clubconv", description="Club convergence analysis toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="execute a recipe described by a config file")
    runp.add_argument("--config", required=True, help="path to a key = value config file")
    runp.add_argument("--recipe", choices=RECIPES, help="override the configured recipe")
    runp.add_argument("--out", help="override the output directory")
    runp.add_argument("--smoothing", choices=["none", "hp"], help="override pre-smoothing")
    runp.add_argument("--r", type=float, help="override the trimming fraction")
    runp.add_argument("--crit", type=float, help="override the critical value")
    runp.add_argument("--seed", type=int, help="override the seed")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        overrides = {}
        if args.recipe:
            overrides["recipe"] = args.recipe
        if args.out:
            overrides["out_dir"] = args.out
        if args.smoothing:
            overrides["smoothing"] = args.smoothing
        if args.r is not None:
            overrides["r"] = args.r
        if args.crit is not None:
            overrides["critical_value"] = args.crit
        if args.seed is not None:
            overrides["seed"] = args.seed
        if overrides:
            cfg = replace(cfg, **overrides)
        report = run(cfg)
    except ClubConvError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: IO: {exc}", file=sys.stderr)
        return 2
    print(f"report written to {Path(cfg.out_dir) / 'report.json'}")
    return 0


def entrypoint() -> None:  # console-script shim
    raise SystemExit(main())
