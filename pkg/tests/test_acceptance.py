"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Tolerances are pinned here and nowhere else: metric oracles at
1e-9 absolute, goldens byte-identical, oracle loops under 1 second.
"""

import random
import time
from datetime import datetime, timezone
from pathlib import Path

import pytest
from click.testing import CliRunner

import oracles
from conftest import DATA, GOLDEN, chart_asset_path, requires_chart_asset
from vitals.cli import main
from vitals.ingest import (
    ContributionEvent,
    EventKind,
    PullRequestRecord,
    dedupe_and_sort,
)
from vitals.metrics import compute_series, gppr, median_workforce, pr_months, workforce
from vitals.months import month_index, month_of
from vitals.patterns import Pattern, classify
from vitals.report import bundle, export_csv, export_json, render_html
from vitals.synth import CommunitySpec, generate

UTC = timezone.utc
M = month_index
TOL = 1e-9
FIXTURE = str(DATA / "fixture_store.jsonl")


def ok(name):
    print(f"ACCEPTANCE PASS: {name}")


def ts(text):
    return datetime.fromisoformat(text).replace(tzinfo=UTC)


def test_wf_oracle_1000_random_vectors():
    rng = random.Random(20110101)
    start = time.perf_counter()
    for _ in range(1000):
        e = rng.randint(1, 60)
        labor = [rng.randint(0, 50) for _ in range(e)]
        assert abs(workforce(labor, e) - oracles.wf_direct(labor, e)) <= TOL
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"oracle sweep took {elapsed:.3f}s"
    ok(f"WF oracle (1000 vectors, <=1e-9, {elapsed * 1000:.0f}ms)")


def test_wf_anchors():
    for k in range(101):
        assert workforce([k], 1) == float(k)
        for e in (2, 5, 60):
            assert workforce([0] * (e - 1) + [k], e) == float(k)
    assert abs(workforce([2, 0, 4], 3) - 4.666666667) <= TOL
    ok("WF anchors (k=0..100 exact; [2,0,4] -> 4.666666667 +/- 1e-9)")


def test_gppr_oracle_1000_random_sets():
    rng = random.Random(20111231)
    month = M(2011, 12)
    start = time.perf_counter()
    for _ in range(1000):
        latencies = [rng.randint(1, 12) for _ in range(rng.randint(0, 20))]
        prs = [
            PullRequestRecord(
                "p/x", f"pr{i}", "a",
                ts(f"2011-{12 - (lat - 1):02d}-03T10:00:00"),
                ts(f"2011-12-{10 + i % 18:02d}T10:00:00"), True)
            for i, lat in enumerate(latencies)
        ]
        store = dedupe_and_sort([], prs)
        value = gppr(store, "p/x", month)
        assert abs(value - oracles.gppr_direct(latencies)) <= TOL
        if latencies and all(lat == 1 for lat in latencies):
            assert value == float(len(latencies))
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"oracle sweep took {elapsed:.3f}s"
    # same-month-only sets yield exactly the PR count
    same_month = [
        PullRequestRecord("p/x", f"s{i}", "a", ts("2011-12-01T00:00:00"),
                          ts(f"2011-12-{2 + i:02d}T00:00:00"), True)
        for i in range(7)
    ]
    assert gppr(dedupe_and_sort([], same_month), "p/x", month) == 7.0
    ok(f"GPPR oracle (1000 sets, <=1e-9, {elapsed * 1000:.0f}ms)")


def test_binning_boundaries():
    end_of_jan = month_of(ts("2011-01-31T23:59:59"))
    start_of_feb = month_of(ts("2011-02-01T00:00:00"))
    assert end_of_jan == M(2011, 1) and start_of_feb == M(2011, 2)
    assert start_of_feb - end_of_jan == 1
    pr = PullRequestRecord("p/x", "1", "a", ts("2010-12-31T23:59:59"),
                           ts("2011-01-01T00:00:00"), True)
    assert pr_months(pr, M(2011, 1)) == 2
    ok("binning boundaries (month edge split; Dec31->Jan1 latency 2)")


def test_end_to_end_golden_fixture(fixture_store):
    start = time.perf_counter()
    series = compute_series(fixture_store, "acme/widget", M(2011, 1), M(2011, 6))
    csv_text = export_csv(bundle([series]))
    elapsed = time.perf_counter() - start
    golden = (GOLDEN / "fixture_series.csv").read_bytes()
    assert csv_text.encode() == golden
    assert elapsed < 1.0
    ok(f"golden fixture CSV byte-identical ({elapsed * 1000:.0f}ms)")


def test_classifier_archetypes(archetype_stores):
    cases = [
        ("archetype_consistent_wealth", "osc/health", M(2011, 12),
         Pattern.CONSISTENT_WEALTH_CHANGING_HEALTH),
        ("archetype_changing_both", "osc/both", M(2011, 12),
         Pattern.CHANGING_BOTH),
        ("archetype_growing_wealth", "ramp/wealth", M(2012, 12),
         Pattern.GROWING_WEALTH_CONSISTENT_HEALTH),
    ]
    for name, project, last, expected in cases:
        store = archetype_stores[name]
        labels = {
            classify(compute_series(store, project, M(2011, 1), last)).label
            for _ in range(10)
        }
        assert labels == {expected}, f"{name}: {labels}"
    ok("classifier archetypes (3 patterns, deterministic over 10 runs)")


def test_casual_influx_drives_median_to_one():
    month = M(2011, 6)
    for seed in range(50):
        rng = random.Random(seed)
        base = generate(CommunitySpec(
            project_id="p/x", months=6, core_count=rng.randint(0, 4),
            core_monthly_labor=(2, 6),
            casual_arrival_rate=rng.uniform(0.0, 2.0), pr_rate=1.0, seed=seed))
        fresh = [
            ContributionEvent("p/x", f"influx-{i:03d}",
                              ts(f"2011-06-{i % 27 + 1:02d}T09:00:00"),
                              EventKind.COMMIT, f"influx-{i:03d}")
            for i in range(20 + seed % 10)
        ]
        combined = dedupe_and_sort(list(base.events) + fresh, base.prs)
        value = median_workforce(combined, "p/x", month)
        assert abs(value - 1.0) <= TOL, f"seed {seed}: median {value}"
    ok("casual influx (>=20 labor-1 joiners -> median 1, 50 seeds)")


def test_median_rules():
    def single_month_store(counts):
        events = []
        for i, count in enumerate(counts):
            for k in range(count):
                events.append(ContributionEvent(
                    "p/x", f"u{i}", ts(f"2011-03-{k % 27 + 1:02d}T10:00:00"),
                    EventKind.COMMIT, f"r{i}-{k}"))
        return dedupe_and_sort(events)

    month = M(2011, 3)
    assert median_workforce(single_month_store([1, 3, 36]), "p/x", month) == 3.0
    assert median_workforce(single_month_store([2, 4]), "p/x", month) == 3.0
    assert median_workforce(single_month_store([]), "p/x", month) == 0.0
    ok("median rules ({1,3,36}->3; {2,4}->3.0; empty->0)")


def test_cli_idempotence_and_range_error(tmp_path):
    runner = CliRunner()
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert runner.invoke(main, ["compute", FIXTURE, "--out", str(out_a)]).exit_code == 0
    assert runner.invoke(main, ["compute", FIXTURE, "--out", str(out_b)]).exit_code == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    assert out_a.read_bytes() == (GOLDEN / "fixture_series.csv").read_bytes()
    bad = runner.invoke(main, ["compute", FIXTURE,
                               "--from", "2011-01", "--to", "2010-01"])
    assert bad.exit_code == 2
    ok("CLI idempotence (byte-identical; invalid range exits 2)")


@requires_chart_asset
def test_report_self_containment(fixture_store):
    import json
    import re

    asset = chart_asset_path().read_text()
    series = compute_series(fixture_store, "acme/widget", M(2011, 1), M(2011, 6))
    b = bundle([series])
    html = render_html(b, asset)
    for pattern in (r'src="http', r"src='http", r'href="http', r"href='http",
                    r"@import", r"<link", r"fetch\(", r"XMLHttpRequest",
                    r"new WebSocket", r"navigator\.sendBeacon"):
        assert not re.search(pattern, html), f"external reference: {pattern}"
    block = re.search(
        r'<script type="application/json" id="vitals-data">(.*?)</script>',
        html, re.S).group(1)
    assert json.loads(block) == json.loads(export_json(b))
    ok("report self-containment (no external refs; data block == export_json)")


@requires_chart_asset
def test_chart_fidelity_suite():
    """The 3-project scrub-fidelity criterion runs in the frontend's own tests."""
    import shutil
    import subprocess

    frontend = Path(__file__).resolve().parent.parent / "frontend"
    if not (frontend / "node_modules").is_dir() or shutil.which("npm") is None:
        pytest.skip("frontend toolchain not installed")
    proc = subprocess.run(["npm", "test", "--silent"], cwd=frontend,
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    ok("chart fidelity (frontend vitest suite green)")
