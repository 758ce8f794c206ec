"""Health/Wealth evolution-pattern classification.

The criterion is a documented heuristic: per-series coefficient of
variation (population std / mean) decides "consistent" vs "changing", and
a Theil-Sen slope normalized by the mean decides "growing". Both are
scale-free, and Theil-Sen shrugs off single-month spikes. Months before
any activity, and dormant gap months, are excluded so project age and
dormancy do not masquerade as volatility.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from statistics import median, pstdev
from typing import Sequence

from .errors import DomainError, VitalsError
from .ingest import EventStore
from .metrics import HealthWealthSeries, compute_series
from .months import MonthIndex
from .timeline import LABOR_COMMITS_PRS

MIN_MONTHS = 6


class Pattern(str, Enum):
    CONSISTENT_WEALTH_CHANGING_HEALTH = "consistent-wealth-changing-health"
    CHANGING_BOTH = "changing-both"
    GROWING_WEALTH_CONSISTENT_HEALTH = "growing-wealth-consistent-health"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ClassifierConfig:
    cv_threshold: float = 0.4      # cv <= threshold reads as "consistent"
    trend_threshold: float = 0.02  # normalized slope per month

    def __post_init__(self):
        if self.cv_threshold < 0:
            raise DomainError("cv_threshold must be >= 0")


DEFAULT_CONFIG = ClassifierConfig()


@dataclass(frozen=True)
class PatternLabel:
    label: Pattern
    health_cv: float
    wealth_cv: float
    wealth_trend: float


def coefficient_of_variation(values: Sequence[float]) -> float:
    """Population std over mean; 0 for empty input or zero mean."""
    if not values:
        return 0.0
    mean = sum(values) / len(values)
    if mean == 0:
        return 0.0
    return pstdev(values) / mean


def theil_sen_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Median of all pairwise slopes; 0 when fewer than two points."""
    if len(xs) != len(ys):
        raise DomainError("x and y lengths differ")
    slopes = [
        (ys[j] - ys[i]) / (xs[j] - xs[i])
        for i in range(len(xs))
        for j in range(i + 1, len(xs))
        if xs[j] != xs[i]
    ]
    return float(median(slopes)) if slopes else 0.0


def _activity_months(series: HealthWealthSeries) -> list[int]:
    """Indexes of months that carry any signal (contributors or PR closes)."""
    return [
        i for i in range(len(series))
        if series.active_count[i] > 0 or series.gppr[i] > 0
    ]


def classify(series: HealthWealthSeries,
             config: ClassifierConfig = DEFAULT_CONFIG) -> PatternLabel:
    """Label a series with one of the three evolution patterns.

    consistent(x)  <=>  cv(x) <= cv_threshold, computed over activity months
    only. Wealth additionally counts as growing when the mean-normalized
    Theil-Sen slope of gppr exceeds trend_threshold. Series matching none
    of the three shapes come back Indeterminate.
    """
    if len(series) < MIN_MONTHS:
        raise DomainError(
            f"insufficient history: {len(series)} months < {MIN_MONTHS}")

    act = _activity_months(series)
    health = [series.median_wf[i] for i in act]
    wealth = [series.gppr[i] for i in act]
    health_cv = coefficient_of_variation(health)
    wealth_cv = coefficient_of_variation(wealth)

    wealth_mean = sum(wealth) / len(wealth) if wealth else 0.0
    if wealth_mean == 0:
        wealth_trend = 0.0
    else:
        xs = [float(series.months[i]) for i in act]
        wealth_trend = theil_sen_slope(xs, wealth) / wealth_mean

    consistent_health = health_cv <= config.cv_threshold
    consistent_wealth = wealth_cv <= config.cv_threshold

    if consistent_wealth and not consistent_health:
        label = Pattern.CONSISTENT_WEALTH_CHANGING_HEALTH
    elif not consistent_health and not consistent_wealth:
        label = Pattern.CHANGING_BOTH
    elif (consistent_health and not consistent_wealth
          and wealth_trend > config.trend_threshold):
        label = Pattern.GROWING_WEALTH_CONSISTENT_HEALTH
    else:
        label = Pattern.INDETERMINATE
    return PatternLabel(label, health_cv, wealth_cv, wealth_trend)


def classify_all(store: EventStore, projects: Sequence[str],
                 first: MonthIndex, last: MonthIndex,
                 config: ClassifierConfig = DEFAULT_CONFIG,
                 labor_mode: str = LABOR_COMMITS_PRS,
                 merged_only: bool = False,
                 ) -> tuple[dict[str, PatternLabel], dict[str, str]]:
    """Classify each project independently.

    Per-project failures land in the diagnostics map instead of aborting
    the rest.
    """
    labels: dict[str, PatternLabel] = {}
    diagnostics: dict[str, str] = {}
    for project_id in projects:
        try:
            series = compute_series(store, project_id, first, last,
                                    labor_mode, merged_only)
            labels[project_id] = classify(series, config)
        except VitalsError as exc:
            diagnostics[project_id] = str(exc)
    return labels, diagnostics
