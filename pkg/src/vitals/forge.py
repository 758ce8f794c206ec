"""Hosted-forge REST client for commit and pull-request listings.

Speaks the GitHub-style wire format: paginated list endpoints with Link
rel="next" headers, X-RateLimit-* headers, and bearer-token auth. Rate
limits are honored by sleeping until the advertised reset, never by
dropping pages; transient transport errors retry with exponential backoff
a bounded number of times and then fail with the last error.
"""

from __future__ import annotations

import logging
import os
import time
from datetime import datetime
from typing import Callable

import httpx

from .errors import AuthError, DomainError, NetworkError
from .ingest import ContributionEvent, EventKind, PullRequestRecord
from .months import format_timestamp, parse_timestamp

logger = logging.getLogger(__name__)

DEFAULT_BASE_URL = "https://api.github.com"
DEFAULT_TOKEN_ENV = "VITALS_TOKEN"
USER_AGENT = "oss-vitals/0.1"


class ForgeClient:
    """Synchronous forge API client.

    transport and sleep are injection points for tests (cassette replay,
    fake clock); production code never passes them.
    """

    def __init__(self, base_url: str = DEFAULT_BASE_URL,
                 token: str | None = None,
                 per_page: int = 100,
                 max_retries: int = 3,
                 transport: httpx.BaseTransport | None = None,
                 sleep: Callable[[float], None] = time.sleep,
                 clock: Callable[[], float] = time.time) -> None:
        headers = {"Accept": "application/vnd.github+json",
                   "User-Agent": USER_AGENT}
        if token:
            headers["Authorization"] = f"Bearer {token}"
        self._client = httpx.Client(base_url=base_url, headers=headers,
                                    timeout=30.0, transport=transport)
        self._per_page = per_page
        self._max_retries = max_retries
        self._sleep = sleep
        self._clock = clock

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "ForgeClient":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()

    # -- transport ---------------------------------------------------------

    def _get(self, url: str, params: dict | None = None) -> httpx.Response:
        attempts = 0
        last_error: Exception | None = None
        while attempts <= self._max_retries:
            logger.debug("GET %s params=%s", url, params)
            try:
                response = self._client.get(url, params=params)
            except httpx.TransportError as exc:
                last_error = exc
                attempts += 1
                if attempts > self._max_retries:
                    break
                self._sleep(2 ** attempts)
                continue

            if response.status_code in (401,):
                raise AuthError(
                    "authentication rejected by the forge API; set a valid "
                    f"token in ${DEFAULT_TOKEN_ENV} (or the variable named by "
                    "--token-env) and retry")
            if response.status_code in (403, 429) and self._rate_limited(response):
                self._wait_for_reset(response)
                continue  # rate-limit sleeps never count against retries
            if response.status_code >= 500:
                last_error = NetworkError(
                    f"server error {response.status_code} for {url}")
                attempts += 1
                if attempts > self._max_retries:
                    break
                self._sleep(2 ** attempts)
                continue
            if response.status_code >= 400:
                raise NetworkError(
                    f"request failed with {response.status_code} for {url}")
            return response
        raise NetworkError(f"retries exhausted for {url}: {last_error}")

    @staticmethod
    def _rate_limited(response: httpx.Response) -> bool:
        return (response.headers.get("X-RateLimit-Remaining") == "0"
                or "Retry-After" in response.headers)

    def _wait_for_reset(self, response: httpx.Response) -> None:
        retry_after = response.headers.get("Retry-After")
        if retry_after is not None:
            delay = float(retry_after)
        else:
            reset = response.headers.get("X-RateLimit-Reset")
            if reset is None:
                raise NetworkError(
                    "rate limit exhausted and the server sent no reset information")
            delay = max(float(reset) - self._clock(), 0.0)
        logger.debug("rate limited; sleeping %.1fs", delay)
        self._sleep(delay + 1.0)

    def _pages(self, path: str, params: dict) -> list[list[dict]]:
        pages = []
        response = self._get(path, params)
        pages.append(response.json())
        while True:
            next_url = response.links.get("next", {}).get("url")
            if not next_url:
                return pages
            response = self._get(next_url)
            pages.append(response.json())

    # -- listings ----------------------------------------------------------

    def fetch_project_activity(self, repo: str, since: datetime,
                               until: datetime,
                               ) -> tuple[list[ContributionEvent],
                                          list[PullRequestRecord]]:
        """All commits and PRs of owner/name with timestamps in [since, until).

        Commits are windowed by committer date. A PR is returned when its
        opened_at or closed_at falls inside the window; its submission
        event is emitted only for an in-window opened_at. Re-running the
        fetch yields identical records.
        """
        if since >= until:
            raise DomainError("since must be earlier than until")
        events = self._commits(repo, since, until)
        prs = self._pulls(repo, since, until, events)
        return events, prs

    def _commits(self, repo: str, since: datetime,
                 until: datetime) -> list[ContributionEvent]:
        params = {
            "since": format_timestamp(since),
            "until": format_timestamp(until),
            "per_page": str(self._per_page),
        }
        events = []
        for page in self._pages(f"/repos/{repo}/commits", params):
            for item in page:
                ts = parse_timestamp(item["commit"]["committer"]["date"])
                if not since <= ts < until:
                    continue
                contributor = self._commit_identity(item)
                if contributor is None:
                    logger.debug("skipping identity-less commit %s", item.get("sha"))
                    continue
                events.append(ContributionEvent(
                    repo, contributor, ts, EventKind.COMMIT, item["sha"]))
        return events

    @staticmethod
    def _commit_identity(item: dict) -> str | None:
        author = item.get("author")
        if author and author.get("login"):
            return author["login"]
        email = (item.get("commit", {}).get("author", {}).get("email") or "")
        email = email.strip().lower()
        return email or None

    def _pulls(self, repo: str, since: datetime, until: datetime,
               events: list[ContributionEvent]) -> list[PullRequestRecord]:
        params = {
            "state": "all",
            "sort": "created",
            "direction": "asc",
            "per_page": str(self._per_page),
        }
        prs = []
        for page in self._pages(f"/repos/{repo}/pulls", params):
            for item in page:
                opened = parse_timestamp(item["created_at"])
                if opened >= until:
                    return prs  # listing is created-ascending
                closed_raw = item.get("closed_at")
                closed = parse_timestamp(closed_raw) if closed_raw else None
                in_window = (since <= opened < until
                             or (closed is not None and since <= closed < until))
                if not in_window:
                    continue
                author = (item.get("user") or {}).get("login") or "ghost"
                pr_id = str(item["number"])
                prs.append(PullRequestRecord(
                    repo, pr_id, author, opened, closed,
                    item.get("merged_at") is not None))
                if since <= opened < until:
                    events.append(ContributionEvent(
                        repo, author, opened, EventKind.PR_SUBMITTED, pr_id))
        return prs


def fetch_project_activity(repo: str, since: datetime, until: datetime,
                           token: str | None = None,
                           token_env: str = DEFAULT_TOKEN_ENV,
                           base_url: str = DEFAULT_BASE_URL,
                           **client_kwargs,
                           ) -> tuple[list[ContributionEvent],
                                      list[PullRequestRecord]]:
    """Convenience wrapper; reads the token from the environment when unset."""
    token = token if token is not None else os.environ.get(token_env)
    with ForgeClient(base_url=base_url, token=token, **client_kwargs) as client:
        return client.fetch_project_activity(repo, since, until)
