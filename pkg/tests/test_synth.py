"""Synthetic community generation: determinism, shapes, rate statistics."""

import statistics

import pytest

from vitals.errors import ConfigError, DomainError
from vitals.ingest import serialize_event_log
from vitals.metrics import median_workforce
from vitals.months import month_index
from vitals.synth import CommunitySpec, generate, load_community_spec
from vitals.timeline import active_contributors, build_timelines

M = month_index


def test_all_rates_zero_is_empty():
    store = generate(CommunitySpec(months=12, core_count=0,
                                   casual_arrival_rate=0.0, pr_rate=0.0))
    assert store.events == () and store.prs == ()


def test_degenerate_core_only_spec():
    store = generate(CommunitySpec(project_id="p/x", months=6, core_count=2,
                                   core_monthly_labor=(3, 3),
                                   casual_arrival_rate=0.0, pr_rate=0.0))
    timelines = build_timelines(store, "p/x")
    assert set(timelines) == {"core-01", "core-02"}
    for tl in timelines.values():
        assert tl.join_month == M(2011, 1)
        assert dict(tl.labor) == {j: 3 for j in range(1, 7)}


def test_same_seed_reproduces_bytes():
    spec = CommunitySpec(months=18, seed=1234)
    assert serialize_event_log(generate(spec)) == serialize_event_log(generate(spec))


def test_different_seeds_differ():
    a = serialize_event_log(generate(CommunitySpec(months=18, seed=1)))
    b = serialize_event_log(generate(CommunitySpec(months=18, seed=2)))
    assert a != b


def test_invalid_specs_rejected():
    with pytest.raises(DomainError):
        generate(CommunitySpec(casual_arrival_rate=-1))
    with pytest.raises(DomainError):
        generate(CommunitySpec(core_monthly_labor=(5, 2)))
    with pytest.raises(DomainError):
        generate(CommunitySpec(pr_latency={0: 1.0}))
    with pytest.raises(DomainError):
        generate(CommunitySpec(pr_latency={}))


def test_casual_contributors_are_single_month():
    store = generate(CommunitySpec(project_id="p/x", months=8, core_count=0,
                                   casual_arrival_rate=3.0, pr_rate=0.0, seed=7))
    for tl in build_timelines(store, "p/x").values():
        assert set(tl.labor) == {1}


def test_pr_latencies_within_support():
    from vitals.months import month_of
    spec = CommunitySpec(project_id="p/x", months=12, pr_rate=5.0,
                         pr_latency={2: 0.5, 4: 0.5}, seed=11)
    store = generate(spec)
    assert store.prs
    for pr in store.prs:
        span = month_of(pr.closed_at) - month_of(pr.opened_at) + 1
        assert span in (2, 4)


def test_monthly_active_count_tracks_rates():
    # mean actives per month over 100 seeds ~ core + arrival rate
    core, rate, month = 3, 2.0, M(2011, 5)
    samples = []
    for seed in range(100):
        store = generate(CommunitySpec(project_id="p/x", months=8,
                                       core_count=core, casual_arrival_rate=rate,
                                       pr_rate=0.0, seed=seed))
        samples.append(len(active_contributors(store, "p/x", month)))
    mean = statistics.fmean(samples)
    se = (rate / len(samples)) ** 0.5  # Poisson variance = rate
    assert abs(mean - (core + rate)) <= 3 * se


def test_more_casuals_do_not_raise_long_run_median():
    quiet, busy = [], []
    month = M(2011, 12)
    for seed in range(50):
        base = dict(project_id="p/x", months=12, core_count=3,
                    core_monthly_labor=(5, 5), pr_rate=0.0, seed=seed)
        quiet.append(median_workforce(
            generate(CommunitySpec(casual_arrival_rate=0.5, **base)), "p/x", month))
        busy.append(median_workforce(
            generate(CommunitySpec(casual_arrival_rate=20.0, **base)), "p/x", month))
    assert statistics.fmean(busy) <= statistics.fmean(quiet) + 1e-9


# -- spec files ----------------------------------------------------------------

SPEC_TEXT = """
# demo community
project = demo/sim
start = 2012-03
months = 10
core-count = 4
core-monthly-labor = 2..5
casual-arrival-rate = 1.5
casual-labor = 1..2
pr-rate = 3
pr-latency = 1:0.6, 2:0.3, 3:0.1
seed = 99
"""


def test_load_community_spec():
    spec = load_community_spec(SPEC_TEXT)
    assert spec.project_id == "demo/sim"
    assert spec.start == M(2012, 3)
    assert spec.months == 10
    assert spec.core_monthly_labor == (2, 5)
    assert spec.pr_latency == {1: 0.6, 2: 0.3, 3: 0.1}
    assert spec.seed == 99


def test_load_community_spec_single_value_range():
    spec = load_community_spec("core-monthly-labor = 3\n")
    assert spec.core_monthly_labor == (3, 3)


def test_load_community_spec_unknown_key():
    with pytest.raises(ConfigError):
        load_community_spec("velocity = 9\n")


def test_load_community_spec_bad_value():
    with pytest.raises(ConfigError):
        load_community_spec("months = soon\n")
