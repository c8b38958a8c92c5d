"""Prefix orderings, joins, and downset enumeration for partial terms.

Every total term ``t`` induces a finite lattice: the set of partial terms
obtainable by replacing subterms (or state values) with holes, ordered
with the hole as bottom and ``t`` as top.  Pairs of terms order
component-wise, so ``(command, state)`` pairs are handled as plain
2-tuples throughout.

Enumeration order is deterministic: holes first, then children left to
right with the leftmost position varying slowest, so golden tests on
enumerations are stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import JoinError, LatticeMismatch, SizeExceeded
from .syntax import (ATOM_TYPES, CHILD_FIELDS, HOLE, Assign, Hole, NatLit,
                     PartialState, State, VarRead, partialize)

#: Default ceiling for materialised enumerations.  Purely an engineering
#: guard; callers can raise it per call.
DEFAULT_ENUM_BOUND = 65_536


def _as_partial_state(obj):
    return partialize(obj) if isinstance(obj, State) else obj


def _same_domain(a: PartialState, b: PartialState) -> bool:
    return a.names == b.names


def leq(a, b) -> bool:
    """Prefix order: ``a`` below ``b``; False on any shape mismatch."""
    if isinstance(a, (State, PartialState)) or isinstance(b, (State, PartialState)):
        if not (isinstance(a, (State, PartialState))
                and isinstance(b, (State, PartialState))):
            return False
        a, b = _as_partial_state(a), _as_partial_state(b)
        if not _same_domain(a, b):
            return False
        return all(va is None or va == vb
                   for (_, va), (_, vb) in zip(a.entries, b.entries))
    if isinstance(a, tuple) or isinstance(b, tuple):
        if not (isinstance(a, tuple) and isinstance(b, tuple)
                and len(a) == len(b)):
            return False
        return all(leq(x, y) for x, y in zip(a, b))
    if isinstance(a, Hole):
        return True
    ta = type(a)
    if ta is not type(b):
        return False
    if ta is NatLit:
        return a.value == b.value
    if ta is VarRead:
        return a.name == b.name
    if ta is Assign:
        return a.name == b.name and leq(a.expr, b.expr)
    fields = CHILD_FIELDS.get(ta)
    if fields is None:  # TrueLit, FalseLit, Skip
        return True
    return all(leq(getattr(a, f), getattr(b, f)) for f in fields)


def join(a, b):
    """Least upper bound of two compatible partial terms.

    The hole is the unit.  Raises :class:`JoinError` when no common upper
    bound exists (distinct literals, mismatched shapes or domains).
    """
    if isinstance(a, (State, PartialState)):
        a, b = _as_partial_state(a), _as_partial_state(b)
        if not (isinstance(b, PartialState) and _same_domain(a, b)):
            raise JoinError("cannot join states over different domains")
        merged = []
        for (name, va), (_, vb) in zip(a.entries, b.entries):
            if va is None:
                merged.append((name, vb))
            elif vb is None or va == vb:
                merged.append((name, va))
            else:
                raise JoinError(
                    f"variable '{name}' holds {va} on one side, {vb} on the other")
        return PartialState(tuple(merged))
    if isinstance(a, tuple) and isinstance(b, tuple) and len(a) == len(b):
        return tuple(join(x, y) for x, y in zip(a, b))
    if isinstance(a, Hole):
        return b
    if isinstance(b, Hole):
        return a
    ta = type(a)
    if ta is not type(b):
        raise JoinError(f"no upper bound for {ta.__name__} and {type(b).__name__}")
    if ta is NatLit:
        if a.value != b.value:
            raise JoinError(f"no upper bound for literals {a.value} and {b.value}")
        return a
    if ta is VarRead:
        if a.name != b.name:
            raise JoinError(f"no upper bound for variables {a.name} and {b.name}")
        return a
    if ta is Assign:
        if a.name != b.name:
            raise JoinError(
                f"no upper bound for assignments to {a.name} and {b.name}")
        return Assign(a.name, join(a.expr, b.expr))
    fields = CHILD_FIELDS.get(ta)
    if fields is None:
        return a
    return ta(*(join(getattr(a, f), getattr(b, f)) for f in fields))


# Prefix witnesses ---------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class PrefixWitness:
    """Evidence that ``element`` sits in the lattice below ``top``.

    Obtain witnesses through :func:`check_prefix`; the pair is only ever
    constructed after the ordering has been verified.
    """

    element: object
    top: object


def _describe(node) -> str:
    from .printer import render  # local import: printer renders via this module's peers
    try:
        return render(node)
    except TypeError:
        return repr(node)


def _check(element, top, path: str):
    if isinstance(top, (State, PartialState)):
        a = _as_partial_state(element) if isinstance(element, (State, PartialState)) else element
        b = _as_partial_state(top)
        if not isinstance(a, PartialState) or not _same_domain(a, b):
            raise LatticeMismatch("state domains differ", path or "state")
        for (name, va), (_, vb) in zip(a.entries, b.entries):
            if va is not None and va != vb:
                raise LatticeMismatch(
                    f"{va} is not below {vb}", f"{path}[{name}]" if path else name)
        return
    if isinstance(top, tuple):
        if not isinstance(element, tuple) or len(element) != len(top):
            raise LatticeMismatch("pair shapes differ", path or "pair")
        for index, (x, y) in enumerate(zip(element, top)):
            _check(x, y, f"{path}.{index}" if path else str(index))
        return
    if isinstance(element, Hole):
        return
    if type(element) is not type(top):
        raise LatticeMismatch(
            f"{_describe(element)} is not a prefix of {_describe(top)}",
            path or "root")
    if isinstance(element, NatLit):
        if element.value != top.value:
            raise LatticeMismatch(
                f"literal {element.value} differs from {top.value}", path or "root")
        return
    if isinstance(element, VarRead):
        if element.name != top.name:
            raise LatticeMismatch(
                f"variable {element.name} differs from {top.name}", path or "root")
        return
    if isinstance(element, Assign) and element.name != top.name:
        raise LatticeMismatch(
            f"assignment target {element.name} differs from {top.name}",
            path or "root")
    for field in CHILD_FIELDS.get(type(element), ()):
        child_path = f"{path}.{field}" if path else field
        _check(getattr(element, field), getattr(top, field), child_path)


def check_prefix(element, top) -> PrefixWitness:
    """Witness that ``element`` is a prefix of ``top``.

    Raises :class:`LatticeMismatch` naming the first differing position.
    ``top`` may be a total term, a :class:`State`, or a pair of those.
    """
    _check(element, top, "")
    return PrefixWitness(element, top)


# Downsets -------------------------------------------------------------------------

def downset_size(top) -> int:
    """Cardinality of the lattice below ``top`` without materialising it.

    Leaves contribute 2 (hole or leaf); an interior node contributes one
    (the hole) plus the product over its children; each state variable
    doubles the count; pairs multiply.
    """
    if isinstance(top, (State, PartialState)):
        factor = 1
        for _, value in top.entries:
            factor *= 1 if value is None else 2
        return factor
    if isinstance(top, tuple):
        total = 1
        for part in top:
            total *= downset_size(part)
        return total
    if isinstance(top, Hole):
        return 1
    fields = CHILD_FIELDS.get(type(top))
    if fields is None:
        return 2
    product_count = 1
    for field in fields:
        product_count *= downset_size(getattr(top, field))
    return 1 + product_count


def _enum_term(top) -> list:
    if isinstance(top, Hole):
        return [HOLE]
    fields = CHILD_FIELDS.get(type(top))
    if fields is None:
        return [HOLE, top]
    child_options = [_enum_term(getattr(top, field)) for field in fields]
    out = [HOLE]
    kind = type(top)
    if kind is Assign:
        out.extend(Assign(top.name, expr) for (expr,) in product(*child_options))
    else:
        out.extend(kind(*combo) for combo in product(*child_options))
    return out


def _enum_state(top: PartialState) -> list[PartialState]:
    options = [[(name, None)] if value is None else [(name, None), (name, value)]
               for name, value in top.entries]
    return [PartialState(tuple(combo)) for combo in product(*options)]


def enumerate_downset(top, bound: int = DEFAULT_ENUM_BOUND) -> list:
    """Every prefix of ``top`` exactly once, in deterministic order.

    Raises :class:`SizeExceeded` (carrying the computed cardinality) when
    the downset is larger than ``bound``.
    """
    size = downset_size(top)
    if size > bound:
        raise SizeExceeded(size, bound)
    if isinstance(top, (State, PartialState)):
        return _enum_state(_as_partial_state(top))
    if isinstance(top, tuple):
        parts = [enumerate_downset(part, bound) for part in top]
        return [combo for combo in product(*parts)]
    return _enum_term(top)


# Covers --------------------------------------------------------------------------

def _shallow(top):
    """The minimal non-hole prefix of ``top``: its root with hole children."""
    fields = CHILD_FIELDS.get(type(top))
    if fields is None:
        return top
    if type(top) is Assign:
        return Assign(top.name, HOLE)
    return type(top)(*(HOLE for _ in fields))


def covers(element, top) -> list:
    """Immediate successors of ``element`` within the lattice below ``top``.

    Each successor materialises exactly one hole one level deep, so a
    property that holds across all cover pairs holds across the whole
    ordering by transitivity.  Used by the certification oracle to check
    monotonicity without quadratic pair enumeration.
    """
    if isinstance(top, (State, PartialState)):
        top = _as_partial_state(top)
        out = []
        for index, ((name, ev), (_, tv)) in enumerate(
                zip(element.entries, top.entries)):
            if ev is None and tv is not None:
                entries = list(element.entries)
                entries[index] = (name, tv)
                out.append(PartialState(tuple(entries)))
        return out
    if isinstance(top, tuple):
        out = []
        for index, (epart, tpart) in enumerate(zip(element, top)):
            for successor in covers(epart, tpart):
                combo = list(element)
                combo[index] = successor
                out.append(tuple(combo))
        return out
    if isinstance(element, Hole):
        return [] if isinstance(top, Hole) else [_shallow(top)]
    fields = CHILD_FIELDS.get(type(element))
    if fields is None:
        return []
    out = []
    for field in fields:
        for successor in covers(getattr(element, field), getattr(top, field)):
            replaced = {f: getattr(element, f) for f in fields}
            replaced[field] = successor
            if type(element) is Assign:
                out.append(Assign(element.name, replaced["expr"]))
            else:
                out.append(type(element)(*(replaced[f] for f in fields)))
    return out
