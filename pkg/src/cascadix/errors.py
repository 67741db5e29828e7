"""Shared exception base so the CLI can map failures to exit codes."""


class CascadixError(Exception):
    """Base class for all validation and feasibility errors in this package."""

    def qualified(self) -> str:
        mod = type(self).__module__.rsplit(".", 1)[-1]
        return f"{mod}: {type(self).__name__}: {self}"
