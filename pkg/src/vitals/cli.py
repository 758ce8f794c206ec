"""Command-line surface: fetch, import, compute, classify, synth, report.

Exit codes: 0 success, 2 usage error, 3 input error, 4 network error.
Failures print one machine-parseable line to stderr:
``error: <category>: <message>``. Data goes to --out (written atomically:
temp file + rename) or to standard output; logs go to standard error.
"""

from __future__ import annotations

import dataclasses
import functools
import importlib.resources
import logging
import os
import sys
import tempfile
from pathlib import Path

import click

from . import __version__
from .config import load_config
from .errors import (
    AuthError,
    ConfigError,
    DomainError,
    InputError,
    NetworkError,
    ParseError,
    ReportError,
    VitalsError,
)
from .forge import DEFAULT_TOKEN_ENV, fetch_project_activity
from .ingest import dedupe_and_sort, import_git_log, load_store, parse_event_log, serialize_event_log
from .metrics import compute_series
from .months import month_of, month_start, month_str, parse_month
from .patterns import ClassifierConfig, classify_all
from .report import bundle, export_csv, export_json, render_html
from .synth import generate, load_community_spec
from .timeline import LABOR_COMMITS_PRS, LABOR_MODES

log = logging.getLogger("vitals")


class UsageFailure(VitalsError):
    """Bad invocation (exit 2) with a machine-parseable category."""

    def __init__(self, category: str, message: str):
        self.category = category
        super().__init__(message)


def _fail(category: str, message: str, code: int) -> None:
    click.echo(f"error: {category}: {message}", err=True)
    sys.exit(code)


def handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except UsageFailure as exc:
            _fail(exc.category, str(exc), 2)
        except AuthError as exc:
            _fail("auth", str(exc), 4)
        except NetworkError as exc:
            _fail("network", str(exc), 4)
        except ParseError as exc:
            _fail("parse", str(exc), 3)
        except ConfigError as exc:
            _fail("config", str(exc), 3)
        except ReportError as exc:
            _fail("missing-chart-asset", str(exc), 3)
        except InputError as exc:
            _fail("input", str(exc), 3)
        except DomainError as exc:
            _fail("domain", str(exc), 3)
        except OSError as exc:
            _fail("io", str(exc), 3)
    return wrapper


def write_output(text: str, out: str | None) -> None:
    """Atomic file write (temp + rename), or stdout when out is None/'-'."""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    fd, tmp_name = tempfile.mkstemp(dir=str(path.parent) or ".",
                                    prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


# -- flag/config resolution -------------------------------------------------

TRUE_WORDS = {"1", "true", "yes", "on"}
FALSE_WORDS = {"0", "false", "no", "off"}


def _cfg_bool(value: str, key: str) -> bool:
    word = value.strip().lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise ConfigError(f"config key {key}: expected a boolean, got {value!r}")


class Options:
    """Flag values overlaid on an optional config file (flags win)."""

    # the threshold keys also answer to their namespaced spellings
    ALIASES = {
        "cv-threshold": ("pattern.cv-threshold",),
        "trend-threshold": ("pattern.trend-threshold",),
    }

    def __init__(self, config_path: str | None):
        self.cfg = load_config(config_path) if config_path else {}

    def get(self, flag_value, key: str, default):
        if flag_value is not None:
            return flag_value
        for name in (key, *self.ALIASES.get(key, ())):
            if name in self.cfg:
                return self.cfg[name]
        return default

    def get_bool(self, flag_value, key: str, default: bool = False) -> bool:
        value = self.get(flag_value, key, None)
        if value is None:
            return default
        if isinstance(value, bool):
            return value
        return _cfg_bool(value, key)

    def get_float(self, flag_value, key: str, default: float) -> float:
        value = self.get(flag_value, key, default)
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"config key {key}: expected a number, got {value!r}")


def _parse_month_flag(value: str | None, flag: str):
    if value is None:
        return None
    try:
        return parse_month(value)
    except DomainError:
        raise UsageFailure("invalid-month", f"{flag} expects YYYY-MM, got {value!r}")


def _month_range(from_, to, store) -> tuple[int, int]:
    """Explicit flags win; otherwise derive [min, max] month from the store."""
    first, last = from_, to
    if first is None or last is None:
        months = [month_of(ev.timestamp) for ev in store.events]
        for pr in store.prs:
            months.append(month_of(pr.opened_at))
            if pr.closed_at is not None:
                months.append(month_of(pr.closed_at))
        if not months:
            raise InputError(
                "store holds no events; pass --from/--to or add data")
        first = first if first is not None else min(months)
        last = last if last is not None else max(months)
    if first > last:
        raise UsageFailure(
            "invalid-range",
            f"--from {month_str(first)} is after --to {month_str(last)}")
    return first, last


def _labor_mode(options: Options, flag_value) -> str:
    mode = options.get(flag_value, "labor", LABOR_COMMITS_PRS)
    if mode not in LABOR_MODES:
        raise UsageFailure("invalid-labor", f"--labor must be one of {LABOR_MODES}")
    return mode


def _load_store_arg(paths, strict: bool):
    store, diagnostics = load_store(paths, strict=strict)
    for diag in diagnostics:
        click.echo(f"warning: line {diag.line_no}: {diag.message}", err=True)
    return store


def _chart_asset_text(explicit: str | None) -> str:
    if explicit:
        try:
            return Path(explicit).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read chart asset {explicit}: {exc.strerror}")
    packaged = importlib.resources.files("vitals").joinpath(
        "assets/vitals-chart.js")
    if packaged.is_file():
        return packaged.read_text(encoding="utf-8")
    raise ReportError(
        "no chart asset found: build it with `npm install && npm run build` "
        "in frontend/, then pass --chart-asset frontend/dist/vitals-chart.js")


# -- shared decorators -------------------------------------------------------

def common_options(f):
    f = click.option("--config", "config_path", type=click.Path(), default=None,
                     help="Flat key=value config file; flags override it.")(f)
    f = click.option("-v", "--verbose", is_flag=True, default=False,
                     help="Debug logging to stderr.")(f)
    return f


def range_options(f):
    f = click.option("--from", "from_", metavar="YYYY-MM", default=None,
                     help="First month (inclusive).")(f)
    f = click.option("--to", "to", metavar="YYYY-MM", default=None,
                     help="Last month (inclusive).")(f)
    return f


def metric_options(f):
    f = click.option("--labor", type=str, default=None,
                     help="Labor events: commits|commits+prs (default commits+prs).")(f)
    f = click.option("--merged-only", is_flag=True, default=None,
                     help="Count only merged PRs toward GPPR.")(f)
    return f


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr, format="%(name)s: %(message)s")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(version=__version__, prog_name="vitals")
def main():
    """Repository health/wealth analytics over commit and PR activity."""


@main.command()
@click.argument("repo")
@range_options
@click.option("--out", type=click.Path(), default=None, help="Output event-log file.")
@click.option("--token-env", default=None, metavar="VAR",
              help=f"Environment variable holding the API token (default {DEFAULT_TOKEN_ENV}).")
@click.option("--base-url", default=None, help="Forge API root (default GitHub).")
@common_options
@handle_errors
def fetch(repo, from_, to, out, token_env, base_url, config_path, verbose):
    """Fetch REPO (owner/name) activity into a canonical event-log file."""
    _setup_logging(verbose)
    options = Options(config_path)
    from_ = _parse_month_flag(options.get(from_, "from", None), "--from")
    to = _parse_month_flag(options.get(to, "to", None), "--to")
    if from_ is None or to is None:
        raise UsageFailure("missing-range", "fetch requires --from and --to")
    if from_ > to:
        raise UsageFailure(
            "invalid-range", f"--from {month_str(from_)} is after --to {month_str(to)}")
    token_env = options.get(token_env, "token-env", DEFAULT_TOKEN_ENV)
    base_url = options.get(base_url, "base-url", None) or None
    kwargs = {"base_url": base_url} if base_url else {}
    events, prs = fetch_project_activity(
        repo, month_start(from_), month_start(to + 1),
        token_env=token_env, **kwargs)
    store = dedupe_and_sort(events, prs, provenance=[
        f"forge:{repo}:{month_str(from_)}..{month_str(to)}"])
    write_output(serialize_event_log(store), options.get(out, "out", None))


@main.command(name="import")
@click.argument("paths", nargs=-1, required=True, type=click.Path())
@click.option("--project", default=None,
              help="Project id (owner/name) for git-log inputs.")
@click.option("--strict", is_flag=True, default=None,
              help="Fail on the first malformed line.")
@click.option("--out", type=click.Path(), default=None)
@common_options
@handle_errors
def import_(paths, project, strict, out, config_path, verbose):
    """Merge event logs and git logs into one canonical event-log file."""
    _setup_logging(verbose)
    options = Options(config_path)
    strict = options.get_bool(strict, "strict")
    project = options.get(project, "project", None)
    events, prs = [], []
    for path in paths:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}")
        head = next((line for line in text.splitlines() if line.strip()), "")
        if "\x1f" in head:
            if not project:
                raise UsageFailure(
                    "missing-project",
                    f"{path} looks like a git log; pass --project owner/name")
            result = import_git_log(text, project, strict=strict)
        elif head.lstrip().startswith("{") or not head:
            result = parse_event_log(text, strict=strict)
        else:
            raise InputError(f"{path}: unrecognized input format")
        for diag in result.diagnostics:
            click.echo(f"warning: {path}:{diag.line_no}: {diag.message}", err=True)
        events.extend(result.events)
        prs.extend(result.prs)
    store = dedupe_and_sort(events, prs,
                            provenance=[f"file:{p}" for p in paths])
    write_output(serialize_event_log(store), options.get(out, "out", None))


@main.command()
@click.argument("store_paths", nargs=-1, required=True, type=click.Path())
@range_options
@metric_options
@click.option("--project", "projects", multiple=True,
              help="Restrict to these projects (default: all in store).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
@click.option("--strict", is_flag=True, default=None)
@click.option("--out", type=click.Path(), default=None)
@common_options
@handle_errors
def compute(store_paths, from_, to, labor, merged_only, projects, fmt,
            strict, out, config_path, verbose):
    """Compute monthly median-workforce / GPPR series from event logs."""
    _setup_logging(verbose)
    options = Options(config_path)
    store = _load_store_arg(store_paths, options.get_bool(strict, "strict"))
    from_ = _parse_month_flag(options.get(from_, "from", None), "--from")
    to = _parse_month_flag(options.get(to, "to", None), "--to")
    first, last = _month_range(from_, to, store)
    labor_mode = _labor_mode(options, labor)
    merged_only = options.get_bool(merged_only, "merged-only")
    selected = list(projects) or store.projects()
    series = [compute_series(store, p, first, last, labor_mode, merged_only)
              for p in sorted(selected)]
    b = bundle(series, metadata=_metadata(options))
    fmt = options.get(fmt, "format", "csv")
    text = export_csv(b) if fmt == "csv" else export_json(b)
    write_output(text, options.get(out, "out", None))


@main.command()
@click.argument("store_paths", nargs=-1, required=True, type=click.Path())
@range_options
@metric_options
@click.option("--cv-threshold", type=float, default=None,
              help="cv at or under this reads as consistent (default 0.4).")
@click.option("--trend-threshold", type=float, default=None,
              help="Normalized slope needed to call wealth growing (default 0.02).")
@click.option("--strict", is_flag=True, default=None)
@click.option("--out", type=click.Path(), default=None)
@common_options
@handle_errors
def classify(store_paths, from_, to, labor, merged_only, cv_threshold,
             trend_threshold, strict, out, config_path, verbose):
    """Label each project's Health/Wealth evolution pattern."""
    _setup_logging(verbose)
    options = Options(config_path)
    store = _load_store_arg(store_paths, options.get_bool(strict, "strict"))
    from_ = _parse_month_flag(options.get(from_, "from", None), "--from")
    to = _parse_month_flag(options.get(to, "to", None), "--to")
    first, last = _month_range(from_, to, store)
    cfg = ClassifierConfig(
        cv_threshold=options.get_float(cv_threshold, "cv-threshold", 0.4),
        trend_threshold=options.get_float(trend_threshold, "trend-threshold", 0.02))
    labels, diagnostics = classify_all(
        store, store.projects(), first, last, cfg,
        _labor_mode(options, labor), options.get_bool(merged_only, "merged-only"))
    for project_id, message in sorted(diagnostics.items()):
        click.echo(f"warning: {project_id}: {message}", err=True)
    lines = ["project,label,health_cv,wealth_cv,wealth_trend"]
    for project_id in sorted(labels):
        lab = labels[project_id]
        lines.append(f"{project_id},{lab.label.value},"
                     f"{_fmt(lab.health_cv)},{_fmt(lab.wealth_cv)},{_fmt(lab.wealth_trend)}")
    write_output("\n".join(lines) + "\n", options.get(out, "out", None))


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


@main.command()
@click.argument("spec_path", type=click.Path())
@click.option("--seed", type=int, default=None, help="Override the spec's seed.")
@click.option("--out", type=click.Path(), default=None)
@common_options
@handle_errors
def synth(spec_path, seed, out, config_path, verbose):
    """Generate a synthetic community event log from a spec file."""
    _setup_logging(verbose)
    options = Options(config_path)
    try:
        text = Path(spec_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {spec_path}: {exc.strerror}")
    spec = load_community_spec(text)
    if seed is not None:
        spec = dataclasses.replace(spec, seed=seed)
    write_output(serialize_event_log(generate(spec)),
                 options.get(out, "out", None))


@main.command()
@click.argument("store_paths", nargs=-1, required=True, type=click.Path())
@range_options
@metric_options
@click.option("--cv-threshold", type=float, default=None)
@click.option("--trend-threshold", type=float, default=None)
@click.option("--chart-asset", type=click.Path(), default=None,
              help="Built chart script to inline (frontend/dist/vitals-chart.js).")
@click.option("--title", default=None, help="Report heading.")
@click.option("--strict", is_flag=True, default=None)
@click.option("--out", type=click.Path(), default=None,
              help="Output file (default <first-store>.health-wealth.html).")
@common_options
@handle_errors
def report(store_paths, from_, to, labor, merged_only, cv_threshold,
           trend_threshold, chart_asset, title, strict, out, config_path,
           verbose):
    """Render the self-contained animated health-vs-wealth HTML report."""
    _setup_logging(verbose)
    options = Options(config_path)
    store = _load_store_arg(store_paths, options.get_bool(strict, "strict"))
    from_ = _parse_month_flag(options.get(from_, "from", None), "--from")
    to = _parse_month_flag(options.get(to, "to", None), "--to")
    first, last = _month_range(from_, to, store)
    labor_mode = _labor_mode(options, labor)
    merged_only = options.get_bool(merged_only, "merged-only")
    cfg = ClassifierConfig(
        cv_threshold=options.get_float(cv_threshold, "cv-threshold", 0.4),
        trend_threshold=options.get_float(trend_threshold, "trend-threshold", 0.02))
    projects = store.projects()
    series = [compute_series(store, p, first, last, labor_mode, merged_only)
              for p in projects]
    labels, diagnostics = classify_all(store, projects, first, last, cfg,
                                       labor_mode, merged_only)
    for project_id, message in sorted(diagnostics.items()):
        click.echo(f"warning: {project_id}: {message}", err=True)
    asset = _chart_asset_text(options.get(chart_asset, "chart-asset", None))
    html = render_html(
        bundle(series, labels, metadata=_metadata(options)),
        asset,
        title=options.get(title, "title", "Project health and wealth"))
    out = options.get(out, "out", None)
    if out is None:
        out = f"{Path(store_paths[0]).stem}.health-wealth.html"
    write_output(html, out)
    click.echo(f"wrote {out}", err=True)


def _metadata(options: Options) -> dict:
    return {"tool": f"oss-vitals {__version__}", "config": dict(options.cfg)}


if __name__ == "__main__":
    main()
