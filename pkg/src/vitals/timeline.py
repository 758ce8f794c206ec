"""Per-contributor monthly labor timelines.

A timeline anchors a contributor at their join month (month of their first
labor event in the project) and maps 1-based month offsets to labor counts;
missing offsets mean zero labor that month.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .errors import DomainError
from .ingest import EventKind, EventStore
from .months import MonthIndex, month_of

LABOR_COMMITS = "commits"
LABOR_COMMITS_PRS = "commits+prs"
LABOR_MODES = (LABOR_COMMITS, LABOR_COMMITS_PRS)


def labor_kinds(labor_mode: str) -> frozenset[EventKind]:
    """Event kinds that count as labor under the given mode."""
    if labor_mode == LABOR_COMMITS:
        return frozenset({EventKind.COMMIT})
    if labor_mode == LABOR_COMMITS_PRS:
        return frozenset({EventKind.COMMIT, EventKind.PR_SUBMITTED})
    raise DomainError(f"unknown labor mode: {labor_mode!r}")


@dataclass(frozen=True)
class ContributorTimeline:
    contributor_id: str
    join_month: MonthIndex
    labor: Mapping[int, int]  # 1-based month offset since join -> count

    def labor_vector(self, e: int) -> list[int]:
        """Labor over the first e months since joining, zeros filled in."""
        return [self.labor.get(j, 0) for j in range(1, e + 1)]

    def total_labor(self) -> int:
        return sum(self.labor.values())


def build_timelines(store: EventStore, project_id: str,
                    labor_mode: str = LABOR_COMMITS_PRS,
                    ) -> dict[str, ContributorTimeline]:
    """One timeline per contributor with >= 1 labor event in the project."""
    kinds = labor_kinds(labor_mode)
    months_seen: dict[str, list[MonthIndex]] = {}
    for ev in store.events_for(project_id):
        if ev.kind in kinds:
            months_seen.setdefault(ev.contributor_id, []).append(
                month_of(ev.timestamp))

    timelines = {}
    for contributor_id, months in months_seen.items():
        join = min(months)
        counts: dict[int, int] = {}
        for m in months:
            j = m - join + 1
            counts[j] = counts.get(j, 0) + 1
        timelines[contributor_id] = ContributorTimeline(
            contributor_id, join, MappingProxyType(counts))
    return timelines


def experience(timeline: ContributorTimeline, m: MonthIndex) -> int:
    """Inclusive count of months since joining; the join month itself is 1."""
    if m < timeline.join_month:
        raise DomainError(
            f"contributor {timeline.contributor_id} not yet joined in month {m}")
    return m - timeline.join_month + 1


def active_contributors(store: EventStore, project_id: str, m: MonthIndex,
                        labor_mode: str = LABOR_COMMITS_PRS) -> set[str]:
    """Contributors with >= 1 labor event in the project during month m."""
    kinds = labor_kinds(labor_mode)
    return {
        ev.contributor_id
        for ev in store.events_for(project_id)
        if ev.kind in kinds and month_of(ev.timestamp) == m
    }
