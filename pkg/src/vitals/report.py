"""Series export (CSV/JSON) and the self-contained HTML report.

Exports are pure functions of the bundle: reals render with up to 9
significant digits and no locale formatting, so repeated exports are
byte-identical and CSV and JSON carry the same numbers. The HTML report
inlines both the data (a JSON block with id "vitals-data") and the chart
script, so the file opens from local disk with zero network references.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from html import escape

from .errors import DomainError, ReportError
from .metrics import HealthWealthSeries
from .months import MonthIndex, month_num, month_str, month_year
from .patterns import PatternLabel

CSV_HEADER = "project,year,month,median_wf,gppr,active_contributors"

BUILD_HINT = (
    "chart asset missing: build it with `npm install && npm run build` in "
    "frontend/, then pass --chart-asset frontend/dist/vitals-chart.js "
    "(or install it as src/vitals/assets/vitals-chart.js)")


@dataclass(frozen=True)
class ReportBundle:
    """Per-project series plus optional pattern labels over one month range."""

    projects: tuple[tuple[str, HealthWealthSeries, PatternLabel | None], ...]
    months: tuple[MonthIndex, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for project_id, series, _ in self.projects:
            if series.months != self.months:
                raise DomainError(
                    f"series for {project_id} does not cover the bundle months")


def bundle(series_list, labels=None, metadata=None) -> ReportBundle:
    """Assemble a bundle from HealthWealthSeries, in the given order."""
    labels = labels or {}
    if not series_list:
        return ReportBundle((), (), metadata or {})
    months = series_list[0].months
    return ReportBundle(
        tuple((s.project_id, s, labels.get(s.project_id)) for s in series_list),
        months,
        metadata or {},
    )


def _fmt_real(x: float) -> str:
    """Up to 9 significant digits, plain ASCII."""
    return format(float(x), ".9g")


def _round9(x: float) -> float:
    return float(_fmt_real(x))


def export_csv(b: ReportBundle) -> str:
    lines = [CSV_HEADER]
    for project_id, series, _ in sorted(b.projects, key=lambda p: p[0]):
        for i, m in enumerate(b.months):
            lines.append(
                f"{project_id},{month_year(m)},{month_num(m)},"
                f"{_fmt_real(series.median_wf[i])},{_fmt_real(series.gppr[i])},"
                f"{series.active_count[i]}")
    return "\n".join(lines) + "\n"


def export_json(b: ReportBundle) -> str:
    doc = {
        "months": [month_str(m) for m in b.months],
        "projects": [
            {
                "id": project_id,
                "median_wf": [_round9(x) for x in series.median_wf],
                "gppr": [_round9(x) for x in series.gppr],
                "active": list(series.active_count),
                "pattern": label.label.value if label else None,
            }
            for project_id, series, label in b.projects
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _inline_safe(text: str) -> str:
    # "</script" would terminate the surrounding inline script/data block;
    # "<\/" is the same content to both JSON and JS string parsers
    return text.replace("</", "<\\/")


_PAGE = """<!doctype html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>{title}</title>
<style>
  body {{ font: 14px/1.45 system-ui, sans-serif; margin: 1.5rem; color: #1c2330; }}
  h1 {{ font-size: 1.25rem; margin: 0 0 0.25rem; }}
  .meta {{ color: #667; font-size: 0.85rem; margin-bottom: 1rem; }}
  #vitals-chart {{ max-width: 60rem; }}
  .empty {{ color: #667; padding: 2rem 0; }}
</style>
</head>
<body>
<h1>{title}</h1>
<p class="meta">{subtitle}</p>
<div id="vitals-chart">{placeholder}</div>
<script type="application/json" id="vitals-data">{data}</script>
<script>
{chart}
</script>
</body>
</html>
"""


def render_html(b: ReportBundle, chart_asset: str,
                title: str = "Project health and wealth") -> str:
    """One self-contained document: inline data block + inline chart script."""
    if not chart_asset or not chart_asset.strip():
        raise ReportError(BUILD_HINT)
    if b.months:
        subtitle = (f"{len(b.projects)} project(s), "
                    f"{month_str(b.months[0])} to {month_str(b.months[-1])}")
    else:
        subtitle = "no data"
    placeholder = "" if b.projects else '<p class="empty">No projects in this report.</p>'
    return _PAGE.format(
        title=escape(title),
        subtitle=escape(subtitle),
        placeholder=placeholder,
        data=_inline_safe(export_json(b).strip()),
        chart=_inline_safe(chart_asset),
    )
