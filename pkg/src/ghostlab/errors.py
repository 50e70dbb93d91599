"""Exception hierarchy shared by all ghostlab modules."""

from __future__ import annotations


class GhostlabError(Exception):
    """Base class for every error raised by the library."""


class ValidationError(GhostlabError, ValueError):
    """Malformed or inadmissible input (bad graph, cochain outside its domain...)."""


class BudgetExceeded(GhostlabError):
    """An exhaustive scan would exceed the configured candidate budget.

    ``scanned`` records how many candidates were examined before giving up and
    ``partial`` carries whatever the caller managed to compute.
    """

    def __init__(self, message: str, *, needed: int | None = None,
                 scanned: int = 0, partial: object = None) -> None:
        super().__init__(message)
        self.needed = needed
        self.scanned = scanned
        self.partial = partial


class AuditError(GhostlabError, AssertionError):
    """A counting identity that must hold failed; this signals a bug."""
