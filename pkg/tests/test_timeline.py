"""Month binning, contributor timelines, experience, active sets."""

from datetime import datetime, timezone

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vitals.errors import DomainError
from vitals.ingest import ContributionEvent, EventKind, dedupe_and_sort
from vitals.months import month_index, month_of, month_str, parse_month
from vitals.timeline import (
    LABOR_COMMITS,
    LABOR_COMMITS_PRS,
    ContributorTimeline,
    active_contributors,
    build_timelines,
    experience,
)

UTC = timezone.utc


def ts(text):
    return datetime.fromisoformat(text).replace(tzinfo=UTC)


def commit(contributor, when, ref, kind=EventKind.COMMIT, project="p/one"):
    return ContributionEvent(project, contributor, ts(when), kind, ref)


# -- month_of ----------------------------------------------------------------

def test_month_of_mid_month():
    assert month_of(ts("2010-10-15T12:00:00")) == month_index(2010, 10)


def test_month_of_boundary_pair():
    end = month_of(ts("2011-01-31T23:59:59"))
    start = month_of(ts("2011-02-01T00:00:00"))
    assert end == month_index(2011, 1)
    assert start == month_index(2011, 2)
    assert start - end == 1


def test_month_index_density_across_year():
    assert month_index(2011, 1) - month_index(2010, 12) == 1


def test_month_of_respects_utc_offset():
    # 23:30+02:00 on Jan 31 is 21:30 UTC, still January
    dt = datetime(2011, 2, 1, 1, 30, tzinfo=timezone.utc).astimezone()
    assert month_of(dt) == month_index(2011, 2)


def test_month_of_rejects_naive():
    with pytest.raises(DomainError):
        month_of(datetime(2011, 1, 1))


def test_month_str_and_parse_round_trip():
    m = month_index(2011, 7)
    assert month_str(m) == "2011-07"
    assert parse_month("2011-07") == m
    with pytest.raises(DomainError):
        parse_month("2011/07")
    with pytest.raises(DomainError):
        parse_month("2011-13")


@given(st.datetimes(min_value=datetime(2000, 1, 1), max_value=datetime(2020, 1, 1)),
       st.datetimes(min_value=datetime(2000, 1, 1), max_value=datetime(2020, 1, 1)))
def test_month_of_monotone(a, b):
    a, b = a.replace(tzinfo=UTC), b.replace(tzinfo=UTC)
    if a > b:
        a, b = b, a
    assert month_of(a) <= month_of(b)


# -- build_timelines ---------------------------------------------------------

def test_single_month_contributor():
    store = dedupe_and_sort([
        commit("alice", "2011-01-05T10:00:00", "a"),
        commit("alice", "2011-01-12T10:00:00", "b"),
        commit("alice", "2011-01-20T10:00:00", "c"),
    ])
    tl = build_timelines(store, "p/one")["alice"]
    assert tl.join_month == month_index(2011, 1)
    assert dict(tl.labor) == {1: 3}


def test_gap_months_absent_from_labor():
    store = dedupe_and_sort([
        commit("alice", "2011-01-05T10:00:00", "a"),
        commit("alice", "2011-01-12T10:00:00", "b"),
        commit("alice", "2011-03-02T10:00:00", "c"),
        commit("alice", "2011-03-12T10:00:00", "d"),
        commit("alice", "2011-03-22T10:00:00", "e"),
        commit("alice", "2011-03-30T10:00:00", "f"),
    ])
    tl = build_timelines(store, "p/one")["alice"]
    assert dict(tl.labor) == {1: 2, 3: 4}
    assert tl.labor_vector(3) == [2, 0, 4]


def test_interleaved_contributors_independent(fixture_store):
    timelines = build_timelines(fixture_store, "acme/widget")
    counts = {}
    for ev in fixture_store.events_for("acme/widget"):
        counts[ev.contributor_id] = counts.get(ev.contributor_id, 0) + 1
    assert set(timelines) == set(counts)
    for contributor, tl in timelines.items():
        assert tl.total_labor() == counts[contributor]
        assert tl.labor[1] >= 1  # join month holds the first event


def test_labor_mode_commits_only(fixture_store):
    full = build_timelines(fixture_store, "acme/widget", LABOR_COMMITS_PRS)
    commits_only = build_timelines(fixture_store, "acme/widget", LABOR_COMMITS)
    assert full["alice"].total_labor() == commits_only["alice"].total_labor() + 3


def test_unknown_project_empty():
    store = dedupe_and_sort([commit("alice", "2011-01-05T10:00:00", "a")])
    assert build_timelines(store, "p/none") == {}


events_strategy = st.lists(
    st.builds(
        ContributionEvent,
        project_id=st.just("p/one"),
        contributor_id=st.sampled_from(["alice", "bob", "carol"]),
        timestamp=st.datetimes(min_value=datetime(2010, 1, 1),
                               max_value=datetime(2012, 12, 31),
                               ).map(lambda dt: dt.replace(tzinfo=UTC)),
        kind=st.sampled_from([EventKind.COMMIT, EventKind.PR_SUBMITTED]),
        source_ref=st.integers(0, 1000).map(str),
    ),
    max_size=40,
)


@given(events_strategy)
def test_labor_sums_to_event_count(events):
    store = dedupe_and_sort(events)
    timelines = build_timelines(store, "p/one")
    for contributor, tl in timelines.items():
        expected = sum(1 for ev in store.events
                       if ev.contributor_id == contributor)
        assert tl.total_labor() == expected


@given(events_strategy, st.randoms())
def test_build_timelines_order_insensitive(events, rnd):
    shuffled = list(events)
    rnd.shuffle(shuffled)
    a = build_timelines(dedupe_and_sort(events), "p/one")
    b = build_timelines(dedupe_and_sort(shuffled), "p/one")
    assert a == b


# -- experience --------------------------------------------------------------

def timeline(join_year, join_month, labor=None):
    return ContributorTimeline("x", month_index(join_year, join_month),
                               labor or {1: 1})


def test_experience_at_join_is_one():
    tl = timeline(2011, 1)
    assert experience(tl, month_index(2011, 1)) == 1


def test_experience_arithmetic():
    assert experience(timeline(2011, 1), month_index(2011, 4)) == 4


def test_experience_across_year_boundary():
    assert experience(timeline(2010, 12), month_index(2011, 1)) == 2


def test_experience_before_join_is_error():
    with pytest.raises(DomainError):
        experience(timeline(2011, 2), month_index(2011, 1))


@given(st.integers(0, 200))
def test_experience_strictly_increasing(offset):
    tl = timeline(2011, 1)
    base = month_index(2011, 1)
    assert experience(tl, base + offset) == offset + 1


# -- active_contributors -----------------------------------------------------

def test_active_empty_month(fixture_store):
    assert active_contributors(fixture_store, "acme/widget",
                               month_index(2010, 12)) == set()


def test_active_fixture_month(fixture_store):
    assert active_contributors(fixture_store, "acme/widget",
                               month_index(2011, 2)) == {"alice"}
    assert active_contributors(fixture_store, "acme/widget",
                               month_index(2011, 3)) == {"bob", "carol"}


def test_active_excludes_previous_month_only_contributors(fixture_store):
    # carol contributes in April but not in May
    assert "carol" in active_contributors(fixture_store, "acme/widget",
                                          month_index(2011, 4))
    assert "carol" not in active_contributors(fixture_store, "acme/widget",
                                              month_index(2011, 5))
