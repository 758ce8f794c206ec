"""Canonical event store: domain types, line parsers, dedup and ordering.

The canonical on-disk form is line-delimited JSON, one record per line:

  {"type": "commit"|"pr_submitted", "project": ..., "contributor": ...,
   "timestamp": "2011-01-15T12:00:00Z", "ref": ...}
  {"type": "pr_record", "project": ..., "pr_id": ..., "author": ...,
   "opened_at": ..., "closed_at": ...|null, "merged": true|false}

Unknown fields are ignored; unknown record types and malformed lines are
reported as diagnostics (or raised immediately under strict mode).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

from .errors import InputError, ParseError
from .months import format_timestamp, parse_timestamp

DEFAULT_BOT_SUFFIXES = ("[bot]",)

UNIT_SEP = "\x1f"


class EventKind(str, Enum):
    COMMIT = "commit"
    PR_SUBMITTED = "pr_submitted"


@dataclass(frozen=True)
class ContributionEvent:
    """One unit of labor: a commit or a pull-request submission."""

    project_id: str
    contributor_id: str
    timestamp: datetime
    kind: EventKind
    source_ref: str

    def __post_init__(self):
        if not self.contributor_id:
            raise InputError("contributor_id must be non-empty")
        if self.timestamp.tzinfo is None:
            raise InputError("event timestamps must be timezone-aware UTC")
        if not isinstance(self.kind, EventKind):
            try:
                object.__setattr__(self, "kind", EventKind(self.kind))
            except ValueError:
                raise InputError(f"unknown event kind: {self.kind!r}") from None
        # second precision, UTC; sub-second detail from sources is dropped
        object.__setattr__(
            self, "timestamp", _normalize_ts(self.timestamp))

    def dedup_key(self):
        return (self.project_id, self.kind, self.source_ref)

    def sort_key(self):
        return (self.timestamp, self.project_id, self.source_ref,
                self.kind.value, self.contributor_id)


@dataclass(frozen=True)
class PullRequestRecord:
    """One PR's open/close lifecycle."""

    project_id: str
    pr_id: str
    author_id: str
    opened_at: datetime
    closed_at: datetime | None
    merged: bool

    def __post_init__(self):
        if not self.pr_id:
            raise InputError("pr_id must be non-empty")
        if self.opened_at.tzinfo is None:
            raise InputError("PR timestamps must be timezone-aware UTC")
        object.__setattr__(self, "opened_at", _normalize_ts(self.opened_at))
        if self.closed_at is not None:
            if self.closed_at.tzinfo is None:
                raise InputError("PR timestamps must be timezone-aware UTC")
            object.__setattr__(self, "closed_at", _normalize_ts(self.closed_at))
            if self.closed_at < self.opened_at:
                raise InputError(
                    f"PR {self.pr_id}: closed_at precedes opened_at")

    def dedup_key(self):
        return (self.project_id, self.pr_id)

    def sort_key(self):
        return (self.project_id, self.opened_at, self.pr_id)


def _normalize_ts(ts: datetime) -> datetime:
    from datetime import timezone
    return ts.astimezone(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class EventStore:
    """Finalized, sorted, deduplicated collection of events and PR records.

    Immutable after construction; safe to share read-only across threads.
    Always build one through dedupe_and_sort().
    """

    events: tuple[ContributionEvent, ...]
    prs: tuple[PullRequestRecord, ...]
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def projects(self) -> list[str]:
        seen = {ev.project_id for ev in self.events}
        seen.update(pr.project_id for pr in self.prs)
        return sorted(seen)

    def events_for(self, project_id: str) -> Iterator[ContributionEvent]:
        return (ev for ev in self.events if ev.project_id == project_id)

    def prs_for(self, project_id: str) -> Iterator[PullRequestRecord]:
        return (pr for pr in self.prs if pr.project_id == project_id)


@dataclass(frozen=True)
class ParseDiagnostic:
    line_no: int
    message: str
    line: str = ""


@dataclass
class ParseResult:
    events: list[ContributionEvent]
    prs: list[PullRequestRecord]
    diagnostics: list[ParseDiagnostic]


def _require(obj: dict, key: str) -> object:
    if key not in obj or obj[key] is None:
        raise KeyError(key)
    return obj[key]


def _event_from_obj(obj: dict, kind: EventKind) -> ContributionEvent:
    return ContributionEvent(
        project_id=str(_require(obj, "project")),
        contributor_id=str(_require(obj, "contributor")),
        timestamp=parse_timestamp(str(_require(obj, "timestamp"))),
        kind=kind,
        source_ref=str(_require(obj, "ref")),
    )


def _pr_from_obj(obj: dict) -> PullRequestRecord:
    closed = obj.get("closed_at")
    return PullRequestRecord(
        project_id=str(_require(obj, "project")),
        pr_id=str(_require(obj, "pr_id")),
        author_id=str(_require(obj, "author")),
        opened_at=parse_timestamp(str(_require(obj, "opened_at"))),
        closed_at=parse_timestamp(str(closed)) if closed is not None else None,
        merged=bool(obj.get("merged", False)),
    )


def _lines(source: Iterable[str] | str) -> Iterator[str]:
    if isinstance(source, str):
        return iter(source.splitlines())
    return iter(source)


def parse_event_log(source: Iterable[str] | str, strict: bool = False) -> ParseResult:
    """Parse canonical line-delimited records.

    Well-formed lines each yield exactly one record; malformed lines become
    diagnostics carrying the 1-based line number. Under strict the first
    diagnostic raises ParseError instead.
    """
    result = ParseResult([], [], [])
    for line_no, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("record is not an object")
            rtype = str(_require(obj, "type"))
            if rtype == "pr_record":
                result.prs.append(_pr_from_obj(obj))
            else:
                result.events.append(_event_from_obj(obj, EventKind(rtype)))
        except (ValueError, KeyError, InputError) as exc:
            diag = ParseDiagnostic(line_no, _describe(exc), line[:200])
            if strict:
                raise ParseError(diag) from None
            result.diagnostics.append(diag)
    return result


def _describe(exc: Exception) -> str:
    if isinstance(exc, KeyError):
        return f"missing field {exc.args[0]!r}"
    if isinstance(exc, json.JSONDecodeError):
        return f"invalid JSON: {exc.msg}"
    return str(exc) or exc.__class__.__name__


def import_git_log(source: Iterable[str] | str, project_id: str,
                   strict: bool = False) -> ParseResult:
    """Import a machine-readable version-control log.

    One entry per line, unit-separator (0x1f) delimited fields:
    hash, author email, author name, ISO-8601 committer date. Produced by
    e.g.  git log --pretty=format:%H%x1f%ae%x1f%an%x1f%cI

    Author identity is the lowercase, trimmed email. Merge commits are
    ordinary entries and are kept.
    """
    result = ParseResult([], [], [])
    for line_no, raw in enumerate(_lines(source), start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        try:
            fields = line.split(UNIT_SEP)
            if len(fields) < 4:
                raise ValueError(
                    f"expected 4 unit-separated fields, got {len(fields)}")
            sha, email, _name, date = fields[0], fields[1], fields[2], fields[3]
            result.events.append(ContributionEvent(
                project_id=project_id,
                contributor_id=email.strip().lower(),
                timestamp=parse_timestamp(date.strip()),
                kind=EventKind.COMMIT,
                source_ref=sha.strip(),
            ))
        except (ValueError, InputError) as exc:
            diag = ParseDiagnostic(line_no, _describe(exc), line[:200])
            if strict:
                raise ParseError(diag) from None
            result.diagnostics.append(diag)
    return result


def _is_bot(identity: str, bot_suffixes: tuple[str, ...]) -> bool:
    return any(identity.endswith(suffix) for suffix in bot_suffixes)


def dedupe_and_sort(events: Iterable[ContributionEvent],
                    prs: Iterable[PullRequestRecord] = (),
                    provenance: Iterable[str] = (),
                    bot_suffixes: tuple[str, ...] = DEFAULT_BOT_SUFFIXES,
                    ) -> EventStore:
    """Finalize raw records into an EventStore.

    Events sort by (timestamp, project, ref); duplicates by
    (project, kind, ref) keep the record that sorts first, so the result is
    independent of input order. Same rule for PR records keyed
    (project, pr_id). Contributors matching a bot suffix are dropped here,
    at store finalization.
    """
    kept_events: dict = {}
    for ev in sorted(events, key=ContributionEvent.sort_key):
        if _is_bot(ev.contributor_id, bot_suffixes):
            continue
        kept_events.setdefault(ev.dedup_key(), ev)
    kept_prs: dict = {}
    for pr in sorted(prs, key=PullRequestRecord.sort_key):
        if _is_bot(pr.author_id, bot_suffixes):
            continue
        kept_prs.setdefault(pr.dedup_key(), pr)
    return EventStore(
        events=tuple(sorted(kept_events.values(), key=ContributionEvent.sort_key)),
        prs=tuple(sorted(kept_prs.values(), key=PullRequestRecord.sort_key)),
        provenance=tuple(provenance),
    )


def serialize_event_log(store: EventStore) -> str:
    """Render a store in the canonical line-delimited form (events, then PRs)."""
    lines = []
    for ev in store.events:
        lines.append(json.dumps({
            "type": ev.kind.value,
            "project": ev.project_id,
            "contributor": ev.contributor_id,
            "timestamp": format_timestamp(ev.timestamp),
            "ref": ev.source_ref,
        }))
    for pr in store.prs:
        lines.append(json.dumps({
            "type": "pr_record",
            "project": pr.project_id,
            "pr_id": pr.pr_id,
            "author": pr.author_id,
            "opened_at": format_timestamp(pr.opened_at),
            "closed_at": format_timestamp(pr.closed_at) if pr.closed_at else None,
            "merged": pr.merged,
        }))
    return "\n".join(lines) + ("\n" if lines else "")


def load_store(paths: Iterable[str | Path], strict: bool = False,
               bot_suffixes: tuple[str, ...] = DEFAULT_BOT_SUFFIXES,
               ) -> tuple[EventStore, list[ParseDiagnostic]]:
    """Read one or more canonical event-log files into a single store."""
    events: list[ContributionEvent] = []
    prs: list[PullRequestRecord] = []
    diagnostics: list[ParseDiagnostic] = []
    provenance = []
    for path in paths:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
        result = parse_event_log(text, strict=strict)
        events.extend(result.events)
        prs.extend(result.prs)
        diagnostics.extend(
            ParseDiagnostic(d.line_no, f"{path}: {d.message}", d.line)
            for d in result.diagnostics)
        provenance.append(f"file:{path}")
    return dedupe_and_sort(events, prs, provenance, bot_suffixes), diagnostics
