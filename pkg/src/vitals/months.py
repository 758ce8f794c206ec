"""Dense integer month indexing over UTC calendar months.

A month index is ``year * 12 + (month - 1)``, so consecutive calendar
months differ by exactly 1 and arithmetic on indexes is ordinary integer
arithmetic. All timestamps entering the system are timezone-aware and
normalized to UTC before binning.
"""

from datetime import datetime, timezone

from .errors import DomainError

MonthIndex = int


def month_index(year: int, month: int) -> MonthIndex:
    if not 1 <= month <= 12:
        raise DomainError(f"month out of range: {month}")
    return year * 12 + (month - 1)


def month_of(ts: datetime) -> MonthIndex:
    """Index of the UTC calendar month containing the instant."""
    if ts.tzinfo is None:
        raise DomainError("naive datetime; timestamps must be timezone-aware UTC")
    utc = ts.astimezone(timezone.utc)
    return utc.year * 12 + (utc.month - 1)


def month_year(m: MonthIndex) -> int:
    return m // 12


def month_num(m: MonthIndex) -> int:
    return m % 12 + 1


def month_str(m: MonthIndex) -> str:
    return f"{month_year(m):04d}-{month_num(m):02d}"


def parse_month(text: str) -> MonthIndex:
    """Parse a 'YYYY-MM' label."""
    parts = text.strip().split("-")
    if len(parts) != 2:
        raise DomainError(f"expected YYYY-MM, got {text!r}")
    try:
        year, month = int(parts[0]), int(parts[1])
    except ValueError:
        raise DomainError(f"expected YYYY-MM, got {text!r}") from None
    return month_index(year, month)


def month_start(m: MonthIndex) -> datetime:
    """First instant of the month, UTC."""
    return datetime(month_year(m), month_num(m), 1, tzinfo=timezone.utc)


def parse_timestamp(text: str) -> datetime:
    """ISO-8601 instant ('2011-01-15T12:00:00Z' or offset form) -> aware UTC."""
    try:
        dt = datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError:
        raise DomainError(f"invalid timestamp: {text!r}") from None
    if dt.tzinfo is None:
        raise DomainError(f"timestamp lacks a timezone: {text!r}")
    return dt.astimezone(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
