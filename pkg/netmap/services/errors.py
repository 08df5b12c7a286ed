"""Error hierarchy shared by the services and the command line."""

from __future__ import annotations

from typing import Optional


class NetMapError(RuntimeError):
    """Base error for NET map computations.

    Every error carries a machine-readable ``category`` and the process exit
    code the command line reports for it.
    """

    category: str = "domain"
    exit_code: int = 3


class UsageError(NetMapError):
    """Invalid command usage or an argument outside accepted bounds."""

    category = "usage"
    exit_code = 1


class NetMapParseError(NetMapError):
    """Malformed input text or JSON."""

    category = "parse"
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(NetMapError):
    """An input violates a mathematical invariant."""

    category = "domain"
    exit_code = 3


class InfeasibleError(NetMapError):
    """A well-formed query that has no answer (not liftable, not realizable, ...)."""

    category = "infeasible"
    exit_code = 4
