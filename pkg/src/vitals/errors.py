"""Exception hierarchy shared across the package."""


class VitalsError(Exception):
    """Base class for all vitals errors."""


class DomainError(VitalsError, ValueError):
    """A value or precondition violation in a metric/timeline operation."""


class InputError(VitalsError):
    """Unreadable or structurally invalid input data."""


class ParseError(InputError):
    """Strict-mode parse abort; carries the first diagnostic."""

    def __init__(self, diagnostic):
        self.diagnostic = diagnostic
        super().__init__(f"line {diagnostic.line_no}: {diagnostic.message}")


class ConfigError(InputError):
    """Malformed configuration file or community spec."""


class NetworkError(VitalsError):
    """Transport failure that survived the bounded retries."""


class AuthError(NetworkError):
    """Credential rejection by the forge API."""


class ReportError(VitalsError):
    """Report assembly failure (missing chart asset)."""
