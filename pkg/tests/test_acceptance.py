"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criteria 1-7 assert their stated conditions; criterion 8 is informative
only.  Run with ``pytest tests/test_acceptance.py -v -s`` to see the
per-criterion lines.  Reference memberships and coefficient values are
the published results for these indicator panels; the bundled snapshot
is a reconstruction, so data-vintage-sensitive criteria may legitimately
fail (see notes in the repository README).
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import minimize

from clubconv import (
    ClubSpec,
    ClusterConfig,
    Decision,
    DesignMatrix,
    DgpConfig,
    LogTConfig,
    SmoothingConfig,
    convergence_test,
    fit_probit,
    identify_clubs,
    load_panel,
    load_targets,
    merge_clubs,
    monte_carlo,
    relative_transitions,
    rescale_to_targets,
)
from clubconv.cli import AnalysisConfig, run
from clubconv.probit import _loglik, _score_weights
from conftest import random_panel

DATA = Path(__file__).resolve().parent.parent / "data"

REF_CLUB1 = frozenset({"SE", "FI", "LV", "DK", "AT", "PT"})
REF_REST_CLUB1 = frozenset({"SE", "FI", "BG", "MT", "DK", "RO"})
REF_RESHC = [
    frozenset({"SE", "LV", "FI", "EE", "DK", "LT", "CY", "MT"}),
    frozenset({"PT", "HR", "AT", "BG", "SI", "EL", "RO", "FR", "CZ"}),
    frozenset({"IT", "HU", "ES", "PL", "DE", "SK", "LU", "BE", "UK", "IE", "NL"}),
]
# published membership model: sign and rounded value per coefficient
REF_PROBIT = {
    "const": 1.49391,
    "GDPCAP": -0.000110787,
    "SQ_GDPCAP": 9.68343e-10,
    "ENVEXPGDP": -0.0963451,
    "ENIMPDEP": 0.0303434,
    "NUCLENCAP": 0.00430606,
}


def say(line: str) -> None:
    print(f"\n[acceptance] {line}")


def overall_partition(smoothing: SmoothingConfig):
    panel = load_panel(DATA / "res_overall.csv")
    cfg = ClusterConfig(logt=LogTConfig(smoothing=smoothing))
    return panel, merge_clubs(panel, identify_clubs(panel, cfg), cfg)


def club_sets(part):
    return [frozenset(c) for c in part.clubs]


def match_with_tolerance(ref_clubs, got_clubs, divergent):
    """Same club count, each club off by at most one country; returns
    (ok, warnings)."""
    if divergent or len(ref_clubs) != len(got_clubs):
        return False, []
    warnings = []
    for k, (ref, got) in enumerate(zip(ref_clubs, got_clubs), start=1):
        delta = ref.symmetric_difference(got)
        if len(delta) > 1:
            return False, []
        if delta:
            warnings.append(f"club {k} differs by {sorted(delta)} (data-vintage warning)")
    return True, warnings


class TestCriterion1:
    def test_overall_res_club_reproduction(self):
        start = time.perf_counter()
        outcomes = {}
        for label, smoothing in (("none", SmoothingConfig.none()), ("hp(6.25)", SmoothingConfig.hp(6.25))):
            _, part = overall_partition(smoothing)
            got = club_sets(part)
            exact = len(got) == 2 and got[0] == REF_CLUB1 and not part.divergent
            outcomes[label] = (exact, got, list(part.divergent))
        elapsed = time.perf_counter() - start
        matched = [label for label, (exact, *_ ) in outcomes.items() if exact]
        detail = "; ".join(
            f"{label}: {len(got)} clubs, club1={sorted(got[0]) if got else []}, divergent={div}"
            for label, (_, got, div) in outcomes.items()
        )
        status = f"matched with smoothing {matched[0]}" if matched else f"no smoothing variant matched ({detail})"
        say(f"criterion 1 {'PASS' if matched else 'FAIL'}: overall club reproduction; {status}; {elapsed:.2f}s")
        assert elapsed < 5.0, f"runtime {elapsed:.2f}s exceeds 5s"
        assert matched, (
            "neither raw nor hp(6.25) smoothing reproduces the reference partition "
            f"(club 1 = {sorted(REF_CLUB1)}, 2 clubs, no divergent). Got: {detail}. "
            "See the repository notes: on this reconstructed snapshot the "
            "six-country top club does not pass its own log-t test."
        )


class TestCriterion2:
    def test_transport_clubs(self):
        panel = load_panel(DATA / "res_transport.csv")
        part = merge_clubs(panel, identify_clubs(panel), None)
        got = club_sets(part)
        ref = [REF_REST_CLUB1, frozenset(panel.codes) - REF_REST_CLUB1]
        ok, warnings = match_with_tolerance(ref, got, part.divergent)
        for w in warnings:
            say(f"criterion 2 (RES-T) {w}")
        say(
            f"criterion 2 (RES-T) {'PASS' if ok else 'FAIL'}: {len(got)} clubs, "
            f"club1={sorted(got[0]) if got else []}"
        )
        assert ok, f"RES-T clubs {[sorted(c) for c in got]} differ from the reference by more than 1 per club"

    def test_heatcool_clubs(self):
        panel = load_panel(DATA / "res_heatcool.csv")
        part = merge_clubs(panel, identify_clubs(panel), None)
        got = club_sets(part)
        ok, warnings = match_with_tolerance(REF_RESHC, got, part.divergent)
        for w in warnings:
            say(f"criterion 2 (RES-HC) {w}")
        say(f"criterion 2 (RES-HC) {'PASS' if ok else 'FAIL'}: {len(got)} clubs")
        assert ok, (
            f"RES-HC yields {len(got)} clubs {[sorted(c) for c in got]}, reference has 3 "
            f"{[sorted(c) for c in REF_RESHC]}"
        )

    def test_electricity_single_club(self):
        panel = load_panel(DATA / "res_electricity.csv")
        res = convergence_test(panel)
        part = merge_clubs(panel, identify_clubs(panel), None)
        single = len(part.clubs) == 1 and len(part.clubs[0]) == 28
        b_ok = abs(res.b_hat - 0.055) <= 0.10
        a_ok = abs(res.alpha_hat - 0.027) <= 0.05
        say(
            f"criterion 2 (RES-E) {'PASS' if (single and b_ok and a_ok) else 'FAIL'}: "
            f"decision={res.decision.value}, b_hat={res.b_hat:.4f} (target 0.055 +/- 0.10), "
            f"alpha_hat={res.alpha_hat:.4f} (target 0.027 +/- 0.05), clubs={len(part.clubs)}"
        )
        assert single, f"expected a single all-28 club, got {len(part.clubs)} clubs + divergent {part.divergent}"
        assert b_ok and a_ok, f"slope b_hat={res.b_hat:.4f}, alpha_hat={res.alpha_hat:.4f} outside tolerance"


class TestCriterion3:
    def test_target_ratio_not_rejected(self):
        start = time.perf_counter()
        panel = load_panel(DATA / "res_overall.csv")
        ratio = rescale_to_targets(panel, load_targets(DATA / "targets_res2020.csv"))
        res = convergence_test(ratio)
        elapsed = time.perf_counter() - start
        ok = res.decision is Decision.NOT_REJECTED
        say(f"criterion 3 {'PASS' if ok else 'FAIL'}: target-ratio decision={res.decision.value}; {elapsed:.3f}s")
        assert elapsed < 1.0
        assert ok


@pytest.fixture(scope="module")
def probit_payload(data_dir, reference_partition_path, tmp_path_factory):
    # criterion 1 does not produce a two-club partition on this snapshot, so
    # the probit is assessed against the published reference membership
    cfg = AnalysisConfig(
        recipe="probit",
        partition_path=str(reference_partition_path),
        covariate_paths={
            "GDPCAP": str(data_dir / "covariates" / "gdpcap.csv"),
            "ENVEXPGDP": str(data_dir / "covariates" / "envexpgdp.csv"),
            "ENIMPDEP": str(data_dir / "covariates" / "enimpdep.csv"),
            "NUCLENCAP": str(data_dir / "covariates" / "nuclencap.csv"),
        },
        out_dir=str(tmp_path_factory.mktemp("probit_out")),
    )
    return run(cfg).payload["probit"]


class TestCriterion4:
    def test_probit_reproduction(self, probit_payload):
        coef = {c["name"]: c for c in probit_payload["coef"]}
        sign_ok = all(math.copysign(1, coef[n]["beta"]) == math.copysign(1, v) for n, v in REF_PROBIT.items())
        signif_ok = all(coef[n]["p"] < 0.05 for n in REF_PROBIT if n != "const")
        class_ok = probit_payload["classified"]["correct"] == 26
        three_sig = {
            n: (coef[n]["beta"], float(f"{coef[n]['beta']:.3g}") == float(f"{v:.3g}"))
            for n, v in REF_PROBIT.items()
        }
        say(
            "criterion 4 "
            + ("PASS" if (sign_ok and signif_ok and class_ok) else "FAIL")
            + ": signs "
            + ("ok" if sign_ok else "MISMATCH " + str({n: coef[n]["beta"] for n in REF_PROBIT}))
            + "; significance "
            + ("ok" if signif_ok else "MISSING for " + str([n for n in REF_PROBIT if n != "const" and coef[n]["p"] >= 0.05]))
            + f"; classified {probit_payload['classified']['correct']}/28"
        )
        say(f"criterion 4 exact 3-sig-fig coefficient match (reported, not required): {three_sig}")
        assert class_ok, f"classified {probit_payload['classified']['correct']}/28, expected 26/28"
        assert sign_ok, "coefficient sign pattern does not match the reference (+,-,+,-,+,+)"
        assert signif_ok, "not all non-constant coefficients significant at 5%"


class TestCriterion5:
    def test_logt_ols_oracle(self):
        rng = np.random.default_rng(123)
        for _ in range(200):
            p = random_panel(rng, n=int(rng.integers(3, 31)), t=int(rng.integers(10, 51)))
            res = convergence_test(p)
            tp = relative_transitions(p)
            T = p.n_periods
            first = max(int(math.floor(0.3 * T)), 2)
            t_idx = np.arange(first, T + 1, dtype=float)
            x = np.log(t_idx)
            dep = np.log(tp.H[0] / tp.H[first - 1 :]) - 2.0 * np.log(np.log(t_idx))
            n = len(x)
            sx, sy = x.sum(), dep.sum()
            det = n * (x * x).sum() - sx * sx
            b = (n * (x * dep).sum() - sx * sy) / det
            a = (sy - b * sx) / n
            assert abs(res.b_hat - b) < 1e-8 and abs(res.a_hat - a) < 1e-8
        say("criterion 5 PASS (part 1): log-t OLS matches normal-equations oracle to 1e-8 on 200 panels")

    def test_probit_derivative_free_oracle(self):
        rng = np.random.default_rng(321)
        done = 0
        while done < 20:
            n = int(rng.integers(40, 90))
            p = int(rng.integers(2, 4))
            X = np.column_stack([np.ones(n)] + [rng.standard_normal(n) for _ in range(p - 1)])
            y = (X @ rng.uniform(-1.0, 1.0, size=p) + rng.standard_normal(n) > 0).astype(int)
            if y.min() == y.max():
                continue
            done += 1
            d = DesignMatrix(tuple(f"x{j}" for j in range(p)), X, y)
            fit = fit_probit(d)
            direct = minimize(
                lambda b: -_loglik(X @ b, y),
                np.zeros(p),
                method="Powell",
                options={"xtol": 1e-12, "ftol": 1e-14, "maxiter": 20000, "maxfev": 200000},
            )
            assert np.max(np.abs(direct.x - fit.beta)) < 1e-5
        say("criterion 5 PASS (part 2): probit MLE matches derivative-free maximisation to 1e-5 on 20 designs")


class TestCriterion6:
    def test_simulation_recovery(self):
        # panels are generated with the slowly varying decay factor: that is
        # the configuration under which the slope estimates 2*alpha without
        # small-sample drift (see the slope-calibration test), and the one
        # under which within-club trial statistics have their nominal centre
        start = time.perf_counter()
        two = DgpConfig(
            clubs=(ClubSpec(10, 1.0, 0.5, 0.1), ClubSpec(10, 2.0, 0.5, 0.1)),
            n_periods=40,
            seed=10_000,
            slowly_varying=True,
        )
        rec = monte_carlo([two], analysis="clustering", replications=500)[0]
        null = DgpConfig(clubs=(ClubSpec(20, 1.0, 0.5, 0.1),), n_periods=40, seed=20_000, slowly_varying=True)
        size = monte_carlo([null], analysis="logt", replications=500)[0]
        elapsed = time.perf_counter() - start
        ok = rec.recovery_rate >= 0.95 and (1.0 - size.rejection_rate) >= 0.90
        say(
            f"criterion 6 {'PASS' if ok else 'FAIL'}: exact recovery {rec.recovery_rate:.3f} "
            f"(>= 0.95), null non-rejection {1 - size.rejection_rate:.3f} (>= 0.90); {elapsed:.1f}s"
        )
        assert elapsed < 60.0
        assert rec.recovery_rate >= 0.95
        assert 1.0 - size.rejection_rate >= 0.90
        # nominal-size band, informative per the harness contract
        band = 0.01 <= size.rejection_rate <= 0.12 or size.rejection_rate < 0.01
        say(f"criterion 6 note: null rejection rate {size.rejection_rate:.3f} (informative band [0.01, 0.12])")
        assert band or True


class TestCriterion7:
    def test_scale_invariance_full_pipeline(self):
        rng = np.random.default_rng(7001)
        for case in range(100):
            p = random_panel(rng, n=int(rng.integers(4, 8)), t=int(rng.integers(12, 18)))
            k = (0.05, 20.0)[case % 2]
            a = merge_clubs(p, identify_clubs(p), None)
            scaled = p.with_values(p.values * k)
            b = merge_clubs(scaled, identify_clubs(scaled), None)
            assert a.clubs == b.clubs and a.divergent == b.divergent
        say("criterion 7 PASS: full-pipeline scale invariance on 100 panels (k in {0.05, 20})")

    def test_h_mean_identity(self):
        rng = np.random.default_rng(7002)
        for _ in range(100):
            tp = relative_transitions(random_panel(rng))
            assert np.max(np.abs(tp.h.mean(axis=0) - 1.0)) < 1e-12
        say("criterion 7 PASS: cross-sectional mean of h equals 1 on 100 panels")

    def test_b_equals_two_alpha(self):
        rng = np.random.default_rng(7003)
        for _ in range(100):
            res = convergence_test(random_panel(rng))
            assert res.alpha_hat == res.b_hat / 2
        say("criterion 7 PASS: alpha_hat is exactly b_hat/2 on 100 panels")

    def test_partition_exhaustive_disjoint(self):
        rng = np.random.default_rng(7004)
        for _ in range(100):
            p = random_panel(rng, n=int(rng.integers(4, 9)), t=int(rng.integers(12, 18)))
            part = merge_clubs(p, identify_clubs(p), None)
            seen = [c for club in part.clubs for c in club] + list(part.divergent)
            assert sorted(seen) == sorted(p.codes)
        say("criterion 7 PASS: partitions exhaustive and disjoint on 100 panels")

    def test_probit_gradient_agreement(self):
        rng = np.random.default_rng(7005)
        for _ in range(100):
            n = int(rng.integers(50, 120))
            X = np.column_stack([np.ones(n), rng.standard_normal(n), rng.standard_normal(n)])
            y = (X @ np.array([0.2, -0.7, 1.0]) + rng.standard_normal(n) > 0).astype(int)
            if y.min() == y.max():
                continue
            beta = rng.normal(0, 0.5, size=3)
            s, _ = _score_weights(X @ beta, y)
            grad = X.T @ s
            eps = 1e-6
            for j in range(3):
                e = np.zeros(3)
                e[j] = eps
                fd = (_loglik(X @ (beta + e), y) - _loglik(X @ (beta - e), y)) / (2 * eps)
                assert grad[j] == pytest.approx(fd, rel=1e-5, abs=1e-7)
        say("criterion 7 PASS: probit analytic gradient matches central differences on 100 cases")

    def test_probit_label_flip(self):
        rng = np.random.default_rng(7006)
        done = 0
        while done < 100:
            n = 90
            X = np.column_stack([np.ones(n), rng.standard_normal(n)])
            y = (X @ np.array([0.1, 0.9]) + rng.standard_normal(n) > 0).astype(int)
            if y.min() == y.max():
                continue
            done += 1
            d = DesignMatrix(("c", "x"), X, y)
            fit = fit_probit(d)
            flipped = fit_probit(DesignMatrix(("c", "x"), X, 1 - y))
            assert np.allclose(flipped.beta, -fit.beta, atol=1e-6)
            assert flipped.loglik == pytest.approx(fit.loglik, abs=1e-8)
        say("criterion 7 PASS: probit label-flip antisymmetry on 100 designs")


class TestCriterion8:
    def test_subsample_robustness_informative(self):
        panel = load_panel(DATA / "res_overall.csv").window(2004, 2016)
        part = merge_clubs(panel, identify_clubs(panel), None)
        got = club_sets(part)
        ok = len(got) == 3 and set(part.divergent) == {"SE"}
        say(
            f"criterion 8 (informative, non-blocking) {'PASS' if ok else 'FAIL'}: 2004-2016 gives "
            f"{len(got)} clubs + divergent {sorted(part.divergent)} (reference: 3 clubs + divergent ['SE'])"
        )
        # informative only: recorded, never failing
