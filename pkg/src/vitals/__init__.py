"""oss-vitals: monthly health/wealth analytics for OSS repositories."""

__version__ = "0.1.0"

from .ingest import (
    ContributionEvent,
    EventKind,
    EventStore,
    PullRequestRecord,
    dedupe_and_sort,
    import_git_log,
    load_store,
    parse_event_log,
    serialize_event_log,
)
from .metrics import (
    HealthWealthSeries,
    compute_series,
    gppr,
    median_workforce,
    point_diagram,
    pr_months,
    workforce,
)
from .months import MonthIndex, month_index, month_of, month_str, parse_month
from .patterns import ClassifierConfig, Pattern, PatternLabel, classify, classify_all
from .report import ReportBundle, bundle, export_csv, export_json, render_html
from .synth import CommunitySpec, generate, load_community_spec
from .timeline import (
    LABOR_COMMITS,
    LABOR_COMMITS_PRS,
    ContributorTimeline,
    active_contributors,
    build_timelines,
    experience,
)

__all__ = [
    "__version__",
    "ContributionEvent", "EventKind", "EventStore", "PullRequestRecord",
    "dedupe_and_sort", "import_git_log", "load_store", "parse_event_log",
    "serialize_event_log",
    "HealthWealthSeries", "compute_series", "gppr", "median_workforce",
    "point_diagram", "pr_months", "workforce",
    "MonthIndex", "month_index", "month_of", "month_str", "parse_month",
    "ClassifierConfig", "Pattern", "PatternLabel", "classify", "classify_all",
    "ReportBundle", "bundle", "export_csv", "export_json", "render_html",
    "CommunitySpec", "generate", "load_community_spec",
    "LABOR_COMMITS", "LABOR_COMMITS_PRS", "ContributorTimeline",
    "active_contributors", "build_timelines", "experience",
]
