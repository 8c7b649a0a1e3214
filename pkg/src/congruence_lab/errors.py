"""Shared exception base so the CLI can report library failures uniformly."""


class CongruenceLabError(Exception):
    """Base class for all errors raised by this package."""
