#!/usr/bin/env python3
"""Generate the frozen test fixtures and golden files under tests/data/.

Run from the repo root:  python scripts/gen_fixtures.py

Everything numeric in the goldens comes from tests/oracles.py (the
independent direct-summation implementations), never from the vitals
package, so the goldens stay a genuinely second route.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
sys.path.insert(0, str(ROOT / "tests"))

from oracles import cv_direct, rows_to_csv, series_oracle  # noqa: E402

PROJECT = "acme/widget"


def ev(contributor, ts, ref, kind="commit"):
    return {"type": kind, "project": PROJECT, "contributor": contributor,
            "timestamp": ts, "ref": ref}


def pr(pr_id, author, opened, closed, merged):
    return {"type": "pr_record", "project": PROJECT, "pr_id": pr_id,
            "author": author, "opened_at": opened, "closed_at": closed,
            "merged": merged}


# ---------------------------------------------------------------------------
# The 6-month / 3-contributor / 8-PR golden fixture project.
# Labor layout (commits + PR submissions), hand-designed to cover: a steady
# founder (alice), a bursty founder (bob), a late joiner (carol), zero-labor
# gap months, an unclosed PR, an unmerged-but-closed PR, and a 3-month PR.
# ---------------------------------------------------------------------------

FIXTURE_EVENTS = [
    # alice commits: Jan x3, Feb x2, Apr x1, Jun x2
    ev("alice", "2011-01-04T09:15:00Z", "a1c001"),
    ev("alice", "2011-01-09T14:02:10Z", "a1c002"),
    ev("alice", "2011-01-21T18:40:33Z", "a1c003"),
    ev("alice", "2011-02-03T11:00:00Z", "a1c004"),
    ev("alice", "2011-02-17T16:25:41Z", "a1c005"),
    ev("alice", "2011-04-08T10:12:00Z", "a1c006"),
    ev("alice", "2011-06-06T09:09:09Z", "a1c007"),
    ev("alice", "2011-06-28T21:30:00Z", "a1c008"),
    # bob commits: Jan x1, Mar x4, May x1
    ev("bob", "2011-01-12T08:00:00Z", "b0c001"),
    ev("bob", "2011-03-02T09:45:00Z", "b0c002"),
    ev("bob", "2011-03-11T12:30:00Z", "b0c003"),
    ev("bob", "2011-03-19T15:00:00Z", "b0c004"),
    ev("bob", "2011-03-27T23:59:59Z", "b0c005"),
    ev("bob", "2011-05-14T07:20:00Z", "b0c006"),
    # carol commits: Mar x2, Apr x2, Jun x1 (joins in March)
    ev("carol", "2011-03-05T10:00:00Z", "c2c001"),
    ev("carol", "2011-03-18T13:13:13Z", "c2c002"),
    ev("carol", "2011-04-11T09:30:00Z", "c2c003"),
    ev("carol", "2011-04-24T17:05:00Z", "c2c004"),
    ev("carol", "2011-06-15T12:00:00Z", "c2c005"),
    # PR submissions (one per PR below, at its opened_at instant)
    ev("alice", "2011-01-10T10:00:00Z", "1", "pr_submitted"),
    ev("bob", "2011-01-25T09:30:00Z", "2", "pr_submitted"),
    ev("alice", "2011-02-05T08:00:00Z", "3", "pr_submitted"),
    ev("carol", "2011-03-12T14:00:00Z", "4", "pr_submitted"),
    ev("bob", "2011-03-20T11:00:00Z", "5", "pr_submitted"),
    ev("carol", "2011-04-02T09:00:00Z", "6", "pr_submitted"),
    ev("alice", "2011-05-15T13:20:00Z", "7", "pr_submitted"),
    ev("bob", "2011-06-01T07:45:00Z", "8", "pr_submitted"),
]

FIXTURE_PRS = [
    pr("1", "alice", "2011-01-10T10:00:00Z", "2011-01-20T10:00:00Z", True),
    pr("2", "bob", "2011-01-25T09:30:00Z", "2011-02-10T18:00:00Z", True),
    pr("3", "alice", "2011-02-05T08:00:00Z", "2011-04-15T12:00:00Z", True),
    pr("4", "carol", "2011-03-12T14:00:00Z", "2011-03-28T16:45:00Z", True),
    pr("5", "bob", "2011-03-20T11:00:00Z", None, False),
    pr("6", "carol", "2011-04-02T09:00:00Z", "2011-05-30T17:30:00Z", False),
    pr("7", "alice", "2011-05-15T13:20:00Z", "2011-06-20T10:10:00Z", True),
    pr("8", "bob", "2011-06-01T07:45:00Z", "2011-06-25T20:00:00Z", True),
]


def write_jsonl(path, records):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, separators=(", ", ": ")) + "\n")
    print(f"wrote {path.relative_to(ROOT)} ({len(records)} lines)")


def round9(x):
    return float(format(float(x), ".9g"))


def golden_json(months, project_rows):
    doc = {
        "months": months,
        "projects": [
            {
                "id": pid,
                "median_wf": [round9(r[2]) for r in rows],
                "gppr": [round9(r[3]) for r in rows],
                "active": [r[4] for r in rows],
                "pattern": pattern,
            }
            for pid, rows, pattern in project_rows
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def gen_golden():
    write_jsonl(DATA / "fixture_store.jsonl", FIXTURE_EVENTS + FIXTURE_PRS)

    rows = series_oracle(FIXTURE_EVENTS, FIXTURE_PRS, (2011, 1), (2011, 6))
    csv_text = rows_to_csv(PROJECT, rows)
    (DATA / "golden").mkdir(parents=True, exist_ok=True)
    (DATA / "golden" / "fixture_series.csv").write_text(csv_text)
    print("wrote tests/data/golden/fixture_series.csv")
    print(csv_text)

    months = [f"{y:04d}-{m:02d}" for y, m, *_ in rows]
    (DATA / "golden" / "fixture_series.json").write_text(
        golden_json(months, [(PROJECT, rows, None)]))
    print("wrote tests/data/golden/fixture_series.json")

    # commits-only variant used by the labor-mode tests
    rows_c = series_oracle(FIXTURE_EVENTS, FIXTURE_PRS, (2011, 1), (2011, 6),
                           labor_mode="commits")
    (DATA / "golden" / "fixture_series_commits_only.csv").write_text(
        rows_to_csv(PROJECT, rows_c))
    # merged-only variant (PR 6 closed unmerged drops out of May)
    rows_m = series_oracle(FIXTURE_EVENTS, FIXTURE_PRS, (2011, 1), (2011, 6),
                           merged_only=True)
    (DATA / "golden" / "fixture_series_merged_only.csv").write_text(
        rows_to_csv(PROJECT, rows_m))
    print("wrote labor/merged variants")


# ---------------------------------------------------------------------------
# Parse fixture: 6 lines = 4 event lines (one duplicating another), one
# pr_record line, one malformed line -> 4 events + 1 PR + 1 diagnostic.
# ---------------------------------------------------------------------------

def gen_parse_fixture():
    lines = [
        json.dumps(ev("alice", "2011-01-04T09:15:00Z", "a1c001")),
        json.dumps(ev("bob", "2011-01-12T08:00:00Z", "b0c001")),
        json.dumps(ev("alice", "2011-01-10T10:00:00Z", "1", "pr_submitted")),
        json.dumps(ev("alice", "2011-01-04T09:15:00Z", "a1c001")),  # duplicate
        json.dumps(pr("1", "alice", "2011-01-10T10:00:00Z", "2011-01-20T10:00:00Z", True)),
        '{"type": "commit", "project": "acme/widget", "contributor": ',  # malformed
    ]
    path = DATA / "parse_fixture.jsonl"
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path.relative_to(ROOT)}")


# ---------------------------------------------------------------------------
# Git-log import fixture: unit-separator-delimited, 3 entries, 2 authors
# (one email differing only by case), committer dates in ISO-8601.
# ---------------------------------------------------------------------------

def gen_gitlog_fixture():
    us = "\x1f"
    entries = [
        f"4f5a6b7c8d9e0f1a2b3c4d5e6f7a8b9c0d1e2f3a{us}Alice@Example.com{us}Alice Doe{us}2011-01-04T09:15:00+00:00",
        f"5a6b7c8d9e0f1a2b3c4d5e6f7a8b9c0d1e2f3a4b{us}alice@example.com {us}Alice Doe{us}2011-02-03T11:00:00+00:00",
        f"6b7c8d9e0f1a2b3c4d5e6f7a8b9c0d1e2f3a4b5c{us}bob@example.com{us}Bob Ray{us}2011-02-14T10:30:00+01:00",
    ]
    path = DATA / "gitlog_fixture.log"
    path.write_text("\n".join(entries) + "\n")
    print(f"wrote {path.relative_to(ROOT)}")


# ---------------------------------------------------------------------------
# Classifier archetype stores. Control trick: each month gets three fresh
# single-month contributors with L commits each, so that month's median
# workforce is exactly L; wealth is set by same-month PR records (gppr =
# count). PR records deliberately ship without submission events so labor
# stays exactly as planned.
# ---------------------------------------------------------------------------

def archetype_store(name, project, health, wealth, start_year=2011):
    events = []
    prs = []
    seq = 0
    for k, (h, w) in enumerate(zip(health, wealth)):
        year = start_year + k // 12
        month = k % 12 + 1
        for c in ("a", "b", "c"):
            contributor = f"fresh-{year}{month:02d}{c}"
            for i in range(h):
                seq += 1
                day = 3 + (i * 5) % 24
                events.append({"type": "commit", "project": project,
                               "contributor": contributor,
                               "timestamp": f"{year:04d}-{month:02d}-{day:02d}T1{i % 8}:00:00Z",
                               "ref": f"{name}-{seq:05d}"})
        for i in range(w):
            ts_open = f"{year:04d}-{month:02d}-{2 + i % 10:02d}T08:00:00Z"
            ts_close = f"{year:04d}-{month:02d}-{14 + i % 14:02d}T20:00:00Z"
            prs.append({"type": "pr_record", "project": project,
                        "pr_id": f"{name}-pr-{k:02d}-{i:03d}", "author": "upstream",
                        "opened_at": ts_open, "closed_at": ts_close, "merged": True})
    return events, prs


def gen_archetypes():
    specs = {
        # constant wealth, oscillating health
        "archetype_consistent_wealth": ("osc/health", [2, 36] * 6, [10] * 12),
        # both oscillate
        "archetype_changing_both": ("osc/both", [2, 36] * 6, [2, 30] * 6),
        # flat health, ramping wealth: 4 -> 100 over 24 months
        "archetype_growing_wealth": (
            "ramp/wealth", [3] * 24,
            [4 + round(96 * k / 23) for k in range(24)]),
    }
    for name, (project, health, wealth) in specs.items():
        events, prs = archetype_store(name, project, health, wealth)
        write_jsonl(DATA / f"{name}.jsonl", events + prs)

        first = (2011, 1)
        last = (2011, 12) if len(health) == 12 else (2012, 12)
        rows = series_oracle(events, prs, first, last)
        med = [r[2] for r in rows]
        gp = [r[3] for r in rows]
        assert med == [float(h) for h in health], (name, med)
        assert gp == [float(w) for w in wealth], (name, gp)
        hcv, wcv = cv_direct(med), cv_direct(gp)
        from scipy.stats import theilslopes
        slope = theilslopes(gp, list(range(len(gp))))[0]
        trend = slope / (sum(gp) / len(gp)) if sum(gp) else 0.0
        print(f"{name}: health_cv={hcv:.4f} wealth_cv={wcv:.4f} trend={trend:.4f}")


# ---------------------------------------------------------------------------
# Forge cassettes: recorded request/response pairs replayed by the tests
# through a mock transport. GitHub wire shapes.
# ---------------------------------------------------------------------------

API = "https://api.github.com"


def commit_body(i):
    # alternate a login-bearing author with an email-only one
    if i % 2 == 0:
        author = {"login": "alice"}
        email = "alice@corp.example"
    else:
        author = None
        email = "Bob@Example.com"
    day = 1 + (i * 7) % 55  # spread across Jan-Feb 2011
    month = 1 + day // 32
    dom = day - 31 if day > 31 else day
    ts = f"2011-{month:02d}-{dom:02d}T{i % 24:02d}:{i % 60:02d}:00Z"
    return {
        "sha": f"{i:07d}cafe",
        "author": author,
        "commit": {
            "author": {"name": "someone", "email": email, "date": ts},
            "committer": {"name": "someone", "email": email, "date": ts},
        },
    }


def gen_cassettes():
    since, until = "2011-01-01T00:00:00Z", "2011-03-01T00:00:00Z"
    commits_base = {"since": since, "until": until, "per_page": "100"}
    page2_url = (f"{API}/repos/acme/widget/commits?since={since}&until={until}"
                 f"&per_page=100&page=2")
    cassette = {
        "entries": [
            {
                "path": "/repos/acme/widget/commits",
                "params": commits_base,
                "status": 200,
                "headers": {"Link": f'<{page2_url}>; rel="next"'},
                "body": [commit_body(i) for i in range(100)],
            },
            {
                "path": "/repos/acme/widget/commits",
                "params": {**commits_base, "page": "2"},
                "status": 200,
                "headers": {},
                "body": [commit_body(100 + i) for i in range(50)],
            },
        ]
    }
    (DATA / "cassettes").mkdir(parents=True, exist_ok=True)
    (DATA / "cassettes" / "commits_2page.json").write_text(
        json.dumps(cassette, indent=1) + "\n")
    print("wrote tests/data/cassettes/commits_2page.json")

    pulls = [
        {"number": 11, "user": {"login": "alice"},
         "created_at": "2011-01-05T09:00:00Z",
         "closed_at": "2011-01-20T17:00:00Z",
         "merged_at": "2011-01-20T17:00:00Z", "state": "closed"},
        {"number": 12, "user": {"login": "bob"},
         "created_at": "2011-01-15T10:30:00Z",
         "closed_at": "2011-02-10T12:00:00Z",
         "merged_at": None, "state": "closed"},
        {"number": 13, "user": {"login": "carol"},
         "created_at": "2011-02-20T08:45:00Z",
         "closed_at": None, "merged_at": None, "state": "open"},
    ]
    cassette = {
        "entries": [
            {
                "path": "/repos/acme/widget/pulls",
                "params": {"state": "all", "sort": "created",
                           "direction": "asc", "per_page": "100"},
                "status": 200,
                "headers": {},
                "body": pulls,
            }
        ]
    }
    (DATA / "cassettes" / "prs_3.json").write_text(
        json.dumps(cassette, indent=1) + "\n")
    print("wrote tests/data/cassettes/prs_3.json")


if __name__ == "__main__":
    gen_golden()
    gen_parse_fixture()
    gen_gitlog_fixture()
    gen_archetypes()
    gen_cassettes()
