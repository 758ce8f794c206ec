import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent
DATA = TESTS / "data"
GOLDEN = DATA / "golden"
REPO = TESTS.parent

sys.path.insert(0, str(TESTS))  # makes `import oracles` work everywhere

from vitals.ingest import load_store  # noqa: E402


def chart_asset_path() -> Path | None:
    """The built chart script, wherever it lives, or None."""
    candidates = [
        REPO / "frontend" / "dist" / "vitals-chart.js",
        REPO / "src" / "vitals" / "assets" / "vitals-chart.js",
    ]
    for path in candidates:
        if path.is_file():
            return path
    return None


requires_chart_asset = pytest.mark.skipif(
    chart_asset_path() is None,
    reason="chart asset not built (run npm install && npm run build in frontend/)")


@pytest.fixture(scope="session")
def fixture_store():
    store, diagnostics = load_store([DATA / "fixture_store.jsonl"])
    assert not diagnostics
    return store


@pytest.fixture(scope="session")
def archetype_stores():
    out = {}
    for name in ("archetype_consistent_wealth", "archetype_changing_both",
                 "archetype_growing_wealth"):
        store, diagnostics = load_store([DATA / f"{name}.jsonl"])
        assert not diagnostics
        out[name] = store
    return out
