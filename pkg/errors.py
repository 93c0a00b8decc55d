"""
Exception hierarchy for permcover.

Library code raises these; only the command-line layer turns them into exit codes.
"""
from typing import Optional


class PermCoverError(Exception):
    """Base class. ``predicate`` names the check that failed."""

    predicate = 'permcover'

    def __init__(self, message: str, predicate: Optional[str] = None):
        super().__init__(message)
        if predicate is not None:
            self.predicate = predicate


class InvalidSizeError(PermCoverError, ValueError):
    """n is below 2, above a supported bound, or a sequence is not a bijection."""

    predicate = 'valid_size'


class DimensionError(PermCoverError, ValueError):
    """Two objects that must share n do not."""

    predicate = 'same_size'


class DomainError(PermCoverError, ValueError):
    """An index lies outside [n]."""

    predicate = 'in_domain'


class MembershipError(PermCoverError, ValueError):
    """A permutation was expected to belong to a set and does not."""

    predicate = 'is_member'


class PreconditionError(PermCoverError, ValueError):
    predicate = 'precondition'


class ResourceError(PermCoverError, RuntimeError):
    """The request is well formed but too large to carry out."""

    predicate = 'within_bounds'


class DocumentError(PermCoverError, ValueError):
    """Malformed input document, located by line and column (1-based)."""

    predicate = 'well_formed'

    def __init__(self, message: str, line: int = 1, column: int = 1,
                 source: str = '<input>'):
        super().__init__(message)
        self.line = line
        self.column = column
        self.source = source

    def __str__(self) -> str:
        return f"{self.source}:{self.line}:{self.column}: {self.args[0]}"
