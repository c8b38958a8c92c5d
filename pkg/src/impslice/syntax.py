"""Abstract syntax for Imp terms, hole-extended terms, and program states.

A single node hierarchy covers both total and partial terms: a term is
*total* when it contains no ``Hole``.  The parser decides which shapes it
accepts, and :func:`partialize` is the checked embedding of total terms
into the partial world.

States are ordered sequences of bindings, not unordered maps: two states
are comparable or joinable only when they bind the same variables in the
same order, and the domain of a state never changes during execution
(updates to absent variables are no-ops).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import DuplicateVariable, UnboundVariable


@dataclass(frozen=True, slots=True)
class Hole:
    """Erased position in a partial term; bottom of every term lattice."""

    def __repr__(self) -> str:
        return "Hole"


#: The shared hole value.  Every hole position in every kind of term uses
#: this one object; the surrounding context determines its kind.
HOLE = Hole()


# Arithmetic expressions -----------------------------------------------------

@dataclass(frozen=True, slots=True)
class NatLit:
    value: int


@dataclass(frozen=True, slots=True)
class VarRead:
    name: str


@dataclass(frozen=True, slots=True)
class Add:
    left: Aexp
    right: Aexp


@dataclass(frozen=True, slots=True)
class Sub:
    left: Aexp
    right: Aexp


@dataclass(frozen=True, slots=True)
class Mul:
    left: Aexp
    right: Aexp


# Boolean expressions --------------------------------------------------------

@dataclass(frozen=True, slots=True)
class TrueLit:
    pass


@dataclass(frozen=True, slots=True)
class FalseLit:
    pass


@dataclass(frozen=True, slots=True)
class Eq:
    left: Aexp
    right: Aexp


@dataclass(frozen=True, slots=True)
class Leq:
    left: Aexp
    right: Aexp


@dataclass(frozen=True, slots=True)
class Not:
    operand: Bexp


@dataclass(frozen=True, slots=True)
class And:
    left: Bexp
    right: Bexp


# Commands -------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Skip:
    pass


@dataclass(frozen=True, slots=True)
class Assign:
    name: str
    expr: Aexp


@dataclass(frozen=True, slots=True)
class Seq:
    first: Command
    second: Command


@dataclass(frozen=True, slots=True)
class If:
    cond: Bexp
    then_branch: Command
    else_branch: Command


@dataclass(frozen=True, slots=True)
class While:
    cond: Bexp
    body: Command


Aexp = Union[Hole, NatLit, VarRead, Add, Sub, Mul]
Bexp = Union[Hole, TrueLit, FalseLit, Eq, Leq, Not, And]
Command = Union[Hole, Skip, Assign, Seq, If, While]
Term = Union[Aexp, Bexp, Command]

#: Child field names per composite node class, in syntactic order.
CHILD_FIELDS: dict[type, tuple[str, ...]] = {
    Add: ("left", "right"),
    Sub: ("left", "right"),
    Mul: ("left", "right"),
    Eq: ("left", "right"),
    Leq: ("left", "right"),
    Not: ("operand",),
    And: ("left", "right"),
    Assign: ("expr",),
    Seq: ("first", "second"),
    If: ("cond", "then_branch", "else_branch"),
    While: ("cond", "body"),
}

ATOM_TYPES = (NatLit, VarRead, TrueLit, FalseLit, Skip)


# States ---------------------------------------------------------------------

def _check_no_duplicates(entries) -> None:
    seen = set()
    for name, _ in entries:
        if name in seen:
            raise DuplicateVariable(name, 0, 0)
        seen.add(name)


@dataclass(frozen=True, slots=True)
class State:
    """Total state: ordered ``(name, natural)`` bindings, no duplicates."""

    entries: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        _check_no_duplicates(self.entries)

    @classmethod
    def of(cls, **bindings: int) -> State:
        return cls(tuple(bindings.items()))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    def lookup(self, name: str) -> int:
        for key, value in self.entries:
            if key == name:
                return value
        raise UnboundVariable(name)

    def update(self, name: str, value: int) -> State:
        """Replace ``name`` in place; a no-op when ``name`` is absent."""
        if name not in self.names:
            return self
        return State(tuple((k, value if k == name else v)
                           for k, v in self.entries))


@dataclass(frozen=True, slots=True)
class PartialState:
    """Hole-extended state: values are naturals or ``None`` (the hole)."""

    entries: tuple[tuple[str, int | None], ...]

    def __post_init__(self) -> None:
        _check_no_duplicates(self.entries)

    @classmethod
    def of(cls, **bindings: int | None) -> PartialState:
        return cls(tuple(bindings.items()))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    def lookup(self, name: str) -> int | None:
        """Total lookup: absent variables read as a hole."""
        for key, value in self.entries:
            if key == name:
                return value
        return None

    def update(self, name: str, value: int | None) -> PartialState:
        """Replace ``name`` in place; a no-op when ``name`` is absent."""
        if name not in self.names:
            return self
        return PartialState(tuple((k, value if k == name else v)
                                  for k, v in self.entries))


def blank_state(state: State | PartialState) -> PartialState:
    """Same domain and order as ``state``, every variable mapped to a hole."""
    return PartialState(tuple((name, None) for name, _ in state.entries))


def is_total(obj) -> bool:
    """True when ``obj`` contains no hole at any position."""
    if isinstance(obj, State):
        return True
    if isinstance(obj, PartialState):
        return all(value is not None for _, value in obj.entries)
    stack = [obj]
    while stack:
        node = stack.pop()
        if isinstance(node, Hole):
            return False
        fields = CHILD_FIELDS.get(type(node))
        if fields:
            stack.extend(getattr(node, f) for f in fields)
    return True


def partialize(obj):
    """Embed a total term or state into the partial world.

    Terms share one representation, so for them this is a checked
    identity; states change type from :class:`State` to
    :class:`PartialState`.
    """
    if isinstance(obj, State):
        return PartialState(obj.entries)
    if isinstance(obj, PartialState):
        raise TypeError("already a partial state")
    if not is_total(obj):
        raise ValueError("cannot partialize a term that contains holes")
    return obj
