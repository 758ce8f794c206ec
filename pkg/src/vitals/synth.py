"""Seeded synthetic communities for property tests and classifier fixtures.

A community is core contributors who stay for the whole horizon plus
casual contributors who arrive by a seeded Poisson process, contribute in
their arrival month, and leave. PRs open at a configurable monthly rate
with latencies drawn from a categorical distribution. Generation is fully
deterministic for a fixed spec + seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from datetime import timedelta

from .config import parse_kv
from .errors import ConfigError, DomainError
from .ingest import ContributionEvent, EventKind, EventStore, PullRequestRecord, dedupe_and_sort
from .months import MonthIndex, month_index, month_start, parse_month

DEFAULT_LATENCIES = {1: 0.7, 2: 0.2, 3: 0.1}


@dataclass(frozen=True)
class CommunitySpec:
    project_id: str = "synth/community"
    start: MonthIndex = month_index(2011, 1)
    months: int = 24
    core_count: int = 3
    core_monthly_labor: tuple[int, int] = (3, 6)
    casual_arrival_rate: float = 2.0
    casual_labor: tuple[int, int] = (1, 2)
    casual_tenure: int = 1
    pr_rate: float = 4.0
    pr_latency: dict[int, float] = field(default_factory=lambda: dict(DEFAULT_LATENCIES))
    seed: int = 0

    def validate(self) -> None:
        if self.months < 0 or self.core_count < 0 or self.casual_tenure < 1:
            raise DomainError("months/core_count/casual_tenure out of range")
        if self.casual_arrival_rate < 0 or self.pr_rate < 0:
            raise DomainError("rates must be >= 0")
        for lo, hi in (self.core_monthly_labor, self.casual_labor):
            if lo < 0 or hi < lo:
                raise DomainError(f"bad labor range: {(lo, hi)}")
        if not self.pr_latency:
            raise DomainError("pr_latency distribution is empty")
        for months_to_close, weight in self.pr_latency.items():
            if months_to_close < 1 or weight < 0:
                raise DomainError("latency support must be months >= 1 with weights >= 0")
        if sum(self.pr_latency.values()) <= 0:
            raise DomainError("latency weights sum to zero")


def _poisson(rng: random.Random, lam: float) -> int:
    """Knuth's product method; fine for the small rates used here."""
    if lam <= 0:
        return 0
    limit = math.exp(-lam)
    k, p = 0, 1.0
    while True:
        p *= rng.random()
        if p <= limit:
            return k
        k += 1


def _draw_latency(rng: random.Random, dist: dict[int, float]) -> int:
    items = sorted(dist.items())
    total = sum(w for _, w in items)
    r = rng.random() * total
    acc = 0.0
    for months_to_close, weight in items:
        acc += weight
        if r < acc:
            return months_to_close
    return items[-1][0]


def generate(spec: CommunitySpec) -> EventStore:
    """Build the event store for a community spec (seed-deterministic)."""
    spec.validate()
    rng = random.Random(spec.seed)
    events: list[ContributionEvent] = []
    prs: list[PullRequestRecord] = []
    commit_seq = 0
    pr_seq = 0

    def commits(contributor: str, m: MonthIndex, count: int) -> None:
        nonlocal commit_seq
        base = month_start(m)
        for i in range(count):
            commit_seq += 1
            # deterministic spread across days 1..28
            ts = base + timedelta(days=(i * 3) % 28, hours=i % 24,
                                  minutes=commit_seq % 60)
            events.append(ContributionEvent(
                spec.project_id, contributor, ts, EventKind.COMMIT,
                f"s{commit_seq:07d}"))

    core_ids = [f"core-{i + 1:02d}" for i in range(spec.core_count)]
    for k in range(spec.months):
        m = spec.start + k
        month_actives = list(core_ids)

        for contributor in core_ids:
            commits(contributor, m, rng.randint(*spec.core_monthly_labor))

        arrivals = _poisson(rng, spec.casual_arrival_rate)
        for i in range(arrivals):
            contributor = f"casual-{k + 1:03d}-{i + 1:02d}"
            month_actives.append(contributor)
            for t in range(spec.casual_tenure):
                if k + t < spec.months:
                    commits(contributor, m + t, rng.randint(*spec.casual_labor))

        for _ in range(_poisson(rng, spec.pr_rate)):
            if not month_actives:
                continue
            pr_seq += 1
            author = month_actives[rng.randrange(len(month_actives))]
            latency = _draw_latency(rng, spec.pr_latency)
            opened = month_start(m) + timedelta(days=1 + pr_seq % 13,
                                                hours=pr_seq % 24)
            closed = month_start(m + latency - 1) + timedelta(
                days=15 + pr_seq % 11, hours=(pr_seq * 7) % 24)
            pr_id = f"pr{pr_seq:06d}"
            prs.append(PullRequestRecord(
                spec.project_id, pr_id, author, opened, closed, True))
            events.append(ContributionEvent(
                spec.project_id, author, opened, EventKind.PR_SUBMITTED, pr_id))

    return dedupe_and_sort(
        events, prs,
        provenance=[f"synth:seed={spec.seed} months={spec.months}"])


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    value = int(text)
    return value, value


def _parse_latency(text: str) -> dict[int, float]:
    dist = {}
    for part in text.split(","):
        months_to_close, _, weight = part.partition(":")
        dist[int(months_to_close.strip())] = float(weight.strip() or 1.0)
    return dist


def load_community_spec(text: str) -> CommunitySpec:
    """Read a spec from the flat key=value config format."""
    kv = parse_kv(text)
    known = {
        "project", "start", "months", "core-count", "core-monthly-labor",
        "casual-arrival-rate", "casual-labor", "casual-tenure", "pr-rate",
        "pr-latency", "seed",
    }
    unknown = set(kv) - known
    if unknown:
        raise ConfigError(f"unknown community spec keys: {sorted(unknown)}")
    try:
        spec = CommunitySpec(
            project_id=kv.get("project", CommunitySpec.project_id),
            start=parse_month(kv["start"]) if "start" in kv else CommunitySpec.start,
            months=int(kv.get("months", CommunitySpec.months)),
            core_count=int(kv.get("core-count", CommunitySpec.core_count)),
            core_monthly_labor=_parse_range(kv["core-monthly-labor"])
            if "core-monthly-labor" in kv else CommunitySpec.core_monthly_labor,
            casual_arrival_rate=float(
                kv.get("casual-arrival-rate", CommunitySpec.casual_arrival_rate)),
            casual_labor=_parse_range(kv["casual-labor"])
            if "casual-labor" in kv else CommunitySpec.casual_labor,
            casual_tenure=int(kv.get("casual-tenure", CommunitySpec.casual_tenure)),
            pr_rate=float(kv.get("pr-rate", CommunitySpec.pr_rate)),
            pr_latency=_parse_latency(kv["pr-latency"])
            if "pr-latency" in kv else dict(DEFAULT_LATENCIES),
            seed=int(kv.get("seed", CommunitySpec.seed)),
        )
        spec.validate()
    except (ValueError, DomainError) as exc:
        raise ConfigError(f"invalid community spec: {exc}") from None
    return spec
