import json
from pathlib import Path

import numpy as np
import pytest

from clubconv import Panel, UnitId, load_panel

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def res_panel() -> Panel:
    return load_panel(DATA_DIR / "res_overall.csv")


def assert_logt_close(a, b, rel: float = 1e-9) -> None:
    """Field-for-field equality of two log-t results, floats to `rel`."""
    import math

    for name in ("a_hat", "b_hat", "se_hac", "t_stat", "alpha_hat"):
        x, y = getattr(a, name), getattr(b, name)
        if math.isnan(x) or math.isinf(x):
            assert x == y or (math.isnan(x) and math.isnan(y)), name
        else:
            assert x == pytest.approx(y, rel=rel, abs=1e-12), name
    for name in ("r", "first_t", "n_obs", "critical_value", "decision", "convergence_class", "bandwidth", "degenerate"):
        assert getattr(a, name) == getattr(b, name), name


def random_panel(rng: np.random.Generator, n: int | None = None, t: int | None = None) -> Panel:
    """Positive random panel with mildly trending series."""
    n = n or int(rng.integers(3, 9))
    t = t or int(rng.integers(10, 21))
    base = rng.uniform(2.0, 30.0, size=(n, 1))
    drift = rng.uniform(-0.02, 0.06, size=(n, 1)) * np.arange(t)
    noise = rng.normal(0.0, 0.05, size=(n, t))
    values = base * np.exp(drift + noise)
    units = tuple(UnitId(f"U{i:02d}") for i in range(n))
    return Panel(units, tuple(range(2000, 2000 + t)), values)


@pytest.fixture(scope="session")
def reference_partition_path(tmp_path_factory) -> Path:
    """Two-club reference partition in the report JSON layout."""
    club1 = ["SE", "FI", "LV", "DK", "AT", "PT"]
    club2 = [
        "EE", "HR", "LT", "RO", "SI", "BG", "EL", "IT", "ES", "FR", "DE",
        "CZ", "CY", "HU", "SK", "PL", "IE", "UK", "BE", "LU", "MT", "NL",
    ]
    payload = {
        "clubs": [
            {"members": club1, "decision": "ConvergenceNotRejected"},
            {"members": club2, "decision": "ConvergenceNotRejected"},
        ],
        "divergent": [],
    }
    path = tmp_path_factory.mktemp("fixtures") / "reference_partition.json"
    path.write_text(json.dumps(payload))
    return path
