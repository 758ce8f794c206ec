"""The two monthly indicators and their assembly into per-project series.

Health: a contributor's workforce is their labor summed with linearly
decaying weights - the current month weighs 1, the month before 1/2, back
to 1/e at the join month:

    workforce(labor, e) = sum_{j=1..e} labor[j] / (e - j + 1)

The project's Health value for a month is the median workforce over the
contributors active that month.

Wealth: GPPR sums, over the pull requests completed in a month, the
reciprocal of how many calendar months each took to close (same-month
close counts 1), so slow PRs contribute less:

    gppr(m) = sum_{pr closed in m} 1 / months_spanned(pr)
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import median
from typing import Sequence

from .errors import DomainError
from .ingest import EventStore, PullRequestRecord
from .months import MonthIndex, month_of
from .timeline import (
    LABOR_COMMITS_PRS,
    ContributorTimeline,
    build_timelines,
    experience,
)


def workforce(labor: Sequence[float], e: int) -> float:
    """Decay-weighted labor sum over a full e-month history.

    labor must hold exactly e entries, one per month since joining
    (zeros where the contributor was idle), oldest first.
    """
    if e < 1:
        raise DomainError(f"experience must be >= 1, got {e}")
    if len(labor) != e:
        raise DomainError(
            f"labor vector has {len(labor)} entries, expected e={e}")
    if any(x < 0 for x in labor):
        raise DomainError("labor counts must be non-negative")
    return sum(labor[j - 1] / (e - j + 1) for j in range(1, e + 1))


def _workforce_at(timeline: ContributorTimeline, m: MonthIndex) -> float:
    """Workforce at month m from the timeline truncated at m."""
    e = experience(timeline, m)
    return workforce(timeline.labor_vector(e), e)


def _active_at(timelines: dict[str, ContributorTimeline],
               m: MonthIndex) -> list[ContributorTimeline]:
    return [
        tl for tl in timelines.values()
        if tl.join_month <= m and tl.labor.get(m - tl.join_month + 1, 0) > 0
    ]


def median_workforce(store: EventStore, project_id: str, m: MonthIndex,
                     labor_mode: str = LABOR_COMMITS_PRS) -> float:
    """Median workforce over the contributors active in month m; 0 if none.

    Even-sized populations take the mean of the two middle values.
    """
    timelines = build_timelines(store, project_id, labor_mode)
    values = [_workforce_at(tl, m) for tl in _active_at(timelines, m)]
    return float(median(values)) if values else 0.0


def point_diagram(store: EventStore, project_id: str, m: MonthIndex,
                  labor_mode: str = LABOR_COMMITS_PRS,
                  ) -> list[tuple[int, float]]:
    """(experience, workforce) pairs, one per active contributor in m."""
    timelines = build_timelines(store, project_id, labor_mode)
    pairs = [
        (experience(tl, m), _workforce_at(tl, m))
        for tl in _active_at(timelines, m)
    ]
    pairs.sort()
    return pairs


def pr_months(pr: PullRequestRecord, m: MonthIndex) -> int:
    """Inclusive calendar-month span from opening to closing month (>= 1).

    The PR must be closed, in month m.
    """
    if pr.closed_at is None:
        raise DomainError(f"PR {pr.pr_id} not completed")
    closed_month = month_of(pr.closed_at)
    if closed_month != m:
        raise DomainError(
            f"PR {pr.pr_id} closed in month {closed_month}, not {m}")
    return closed_month - month_of(pr.opened_at) + 1


def gppr(store: EventStore, project_id: str, m: MonthIndex,
         merged_only: bool = False) -> float:
    """Sum of reciprocal completion latencies over PRs completed in month m."""
    total = 0.0
    for pr in store.prs_for(project_id):
        if pr.closed_at is None or month_of(pr.closed_at) != m:
            continue
        if merged_only and not pr.merged:
            continue
        total += 1.0 / pr_months(pr, m)
    return total


@dataclass(frozen=True)
class HealthWealthSeries:
    """Aligned monthly Health/Wealth/population vectors for one project.

    Months are consecutive; months without activity carry zeros.
    """

    project_id: str
    months: tuple[MonthIndex, ...]
    median_wf: tuple[float, ...]
    gppr: tuple[float, ...]
    active_count: tuple[int, ...]

    def __post_init__(self):
        n = len(self.months)
        if not (len(self.median_wf) == len(self.gppr) == len(self.active_count) == n):
            raise DomainError("series vectors must have equal lengths")
        if any(b - a != 1 for a, b in zip(self.months, self.months[1:])):
            raise DomainError("series months must be consecutive")

    def __len__(self) -> int:
        return len(self.months)


def compute_series(store: EventStore, project_id: str,
                   first: MonthIndex, last: MonthIndex,
                   labor_mode: str = LABOR_COMMITS_PRS,
                   merged_only: bool = False) -> HealthWealthSeries:
    """Per-month series over [first, last], inclusive on both ends."""
    if first > last:
        raise DomainError(f"month range is inverted: {first} > {last}")
    timelines = build_timelines(store, project_id, labor_mode)
    months = tuple(range(first, last + 1))
    med, gp, active = [], [], []
    for m in months:
        active_tls = _active_at(timelines, m)
        values = [_workforce_at(tl, m) for tl in active_tls]
        med.append(float(median(values)) if values else 0.0)
        gp.append(gppr(store, project_id, m, merged_only))
        active.append(len(active_tls))
    return HealthWealthSeries(project_id, months, tuple(med), tuple(gp),
                              tuple(active))
