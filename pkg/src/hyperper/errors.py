"""Exception types shared across the package."""

from __future__ import annotations


class CapExceeded(Exception):
    """An enumeration would visit more objects than the configured cap."""

    def __init__(self, count: int, cap: int, what: str):
        self.count = count
        self.cap = cap
        super().__init__(f"{what} needs {count} objects, exceeding the cap of {cap}")


class InsufficientDepth(ValueError):
    """A thread does not carry enough levels for the requested computation."""


class InvariantViolation(RuntimeError):
    """A property the underlying theory guarantees was observed to fail."""
