"""Exception taxonomy for the slicing engine.

The CLI maps these onto process exit codes and the HTTP service maps them
onto status codes, so every failure mode the engine can produce lives here.
"""

from __future__ import annotations


class ImpError(Exception):
    """Base class for all engine errors."""


class ParseError(ImpError):
    """Source text does not match the grammar."""

    def __init__(self, message: str, line: int, column: int,
                 expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        super().__init__(f"{line}:{column}: {message}")


class DuplicateVariable(ParseError):
    """A state definition binds the same variable twice."""

    def __init__(self, name: str, line: int, column: int):
        super().__init__(f"duplicate variable '{name}'", line, column)
        self.name = name


class EvalError(ImpError):
    """Evaluation of a total program failed."""


class UnboundVariable(EvalError):
    def __init__(self, name: str):
        super().__init__(f"variable '{name}' is not bound in the state")
        self.name = name


class FuelExhausted(ImpError):
    """Evaluation did not terminate within the configured fuel."""

    def __init__(self, fuel: int):
        super().__init__(f"evaluation exceeded {fuel} command steps")
        self.fuel = fuel


class LatticeMismatch(ImpError):
    """Two terms that must share a lattice do not."""

    def __init__(self, message: str, position: str | None = None):
        super().__init__(message if position is None
                         else f"{message} (at {position})")
        self.position = position


class JoinError(ImpError):
    """No common upper bound exists."""


class CriterionMismatch(ImpError):
    """A slicing criterion demands a value the execution never produced."""


class SizeExceeded(ImpError):
    """An enumeration would exceed the configured bound."""

    def __init__(self, size: int, bound: int):
        super().__init__(f"lattice of size {size} exceeds bound {bound}")
        self.size = size
        self.bound = bound
