"""Exhaustive certification that forward and backward slicing are adjoint.

For a recorded derivation, the two slicing directions move between the
lattice of partial ``(program, input-state)`` pairs and the lattice of
partial output states.  On desk-scale instances both lattices enumerate
fully, so the adjunction laws can be checked outright rather than argued:
monotonicity in both directions, deflation, inflation, the adjunction
equivalence itself, and minimality of the backward direction.

Monotonicity is verified over covering pairs (one hole filled one level):
in a finite lattice any comparable pair factors through covers, so this
is exhaustive while avoiding a quadratic sweep.  Every other law scans
every element or pair.

The module also provides :func:`oracle_bwd`, a brute-force backward
slicer defined *only* by the adjunction (least element whose forward
slice covers the criterion).  It is deliberately independent of the
rule-driven slicer so the two can be played against each other in tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import CriterionMismatch, SizeExceeded
from .lattice import covers, downset_size, enumerate_downset, leq
from .printer import render
from .slicer import SliceOutcome, bwd_cmd, fwd_cmd
from .syntax import PartialState, partialize
from .tracer import Derivation

DEFAULT_SIZE_BOUND = 65_536


@dataclass(frozen=True, slots=True)
class LawReport:
    holds: bool
    checked: int
    counterexample: str | None = None


@dataclass(frozen=True, slots=True)
class CheckReport:
    """Outcome of certifying one derivation.

    ``laws`` maps law name to its :class:`LawReport`; a law's verdict is
    "holds" only after its enumeration ran to completion.
    """

    label: str
    input_pair_size: int
    output_size: int
    laws: dict[str, LawReport]
    wall_time_s: float

    @property
    def holds(self) -> bool:
        return all(report.holds for report in self.laws.values())


def _render_pair(pair) -> str:
    cmd, state = pair
    return f"({render(cmd)} | {render(state)})"


def _lattice_tops(derivation: Derivation):
    pair_top = (derivation.program, partialize(derivation.input))
    return pair_top, partialize(derivation.output)


def check_connection(derivation: Derivation,
                     size_bound: int = DEFAULT_SIZE_BOUND,
                     label: str = "derivation") -> CheckReport:
    """Certify all six laws on one derivation by exhaustive enumeration.

    The gate is on the *combined* lattice size: the check refuses (with
    :class:`SizeExceeded`) when ``|pairs| + |outputs|`` exceeds
    ``size_bound``.  Any failing law carries its first counterexample in
    enumeration order, with both sides rendered.
    """
    started = time.perf_counter()
    pair_top, output_top = _lattice_tops(derivation)
    pair_size = downset_size(pair_top)
    output_size = downset_size(output_top)
    if pair_size + output_size > size_bound:
        raise SizeExceeded(pair_size + output_size, size_bound)

    trace = derivation.trace
    pairs = enumerate_downset(pair_top, pair_size)
    outputs = enumerate_downset(output_top, output_size)
    pair_index = {pair: i for i, pair in enumerate(pairs)}
    output_index = {q: i for i, q in enumerate(outputs)}

    forwards = [fwd_cmd(trace, state, cmd) for cmd, state in pairs]
    backwards = []
    for q in outputs:
        outcome = bwd_cmd(trace, q)
        backwards.append((outcome.program_slice, outcome.input_slice))

    laws: dict[str, LawReport] = {}

    def run(name, generator):
        checked = 0
        for ok, describe in generator:
            checked += 1
            if not ok:
                laws[name] = LawReport(False, checked, describe())
                return
        laws[name] = LawReport(True, checked)

    def fwd_monotone():
        for i, pair in enumerate(pairs):
            for successor in covers(pair, pair_top):
                j = pair_index[successor]
                yield (leq(forwards[i], forwards[j]), lambda i=i, j=j: (
                    f"fwd not monotone: {_render_pair(pairs[i])} ⊑ "
                    f"{_render_pair(pairs[j])} but {render(forwards[i])} ⋢ "
                    f"{render(forwards[j])}"))

    def bwd_monotone():
        for i, q in enumerate(outputs):
            for successor in covers(q, output_top):
                j = output_index[successor]
                yield (leq(backwards[i], backwards[j]), lambda i=i, j=j: (
                    f"bwd not monotone: {render(outputs[i])} ⊑ "
                    f"{render(outputs[j])} but {_render_pair(backwards[i])} ⋢ "
                    f"{_render_pair(backwards[j])}"))

    def deflation():
        for i, pair in enumerate(pairs):
            position = output_index.get(forwards[i])
            if position is None:
                yield (False, lambda i=i: (
                    f"fwd({_render_pair(pairs[i])}) = {render(forwards[i])} "
                    f"is not an element of the output lattice"))
                continue
            back = backwards[position]
            yield (leq(back, pair), lambda i=i, back=back: (
                f"deflation fails: bwd(fwd({_render_pair(pairs[i])})) = "
                f"{_render_pair(back)} ⋢ {_render_pair(pairs[i])}"))

    def inflation():
        for j, q in enumerate(outputs):
            cmd_slice, state_slice = backwards[j]
            forward = fwd_cmd(trace, state_slice, cmd_slice)
            yield (leq(q, forward), lambda j=j, forward=forward: (
                f"inflation fails: {render(outputs[j])} ⋢ "
                f"fwd(bwd(...)) = {render(forward)}"))

    def galois_equivalence():
        for j, q in enumerate(outputs):
            back = backwards[j]
            for i, pair in enumerate(pairs):
                yield (leq(back, pair) == leq(q, forwards[i]),
                       lambda i=i, j=j: (
                           f"adjunction fails at p = {_render_pair(pairs[i])}, "
                           f"q = {render(outputs[j])}: bwd(q) ⊑ p is "
                           f"{leq(backwards[j], pairs[i])} but q ⊑ fwd(p) is "
                           f"{leq(outputs[j], forwards[i])}"))

    def minimality():
        for j, q in enumerate(outputs):
            back = backwards[j]
            covered = leq(q, fwd_cmd(trace, back[1], back[0]))
            yield (covered, lambda j=j: (
                f"minimality fails: bwd({render(outputs[j])}) does not "
                f"cover its own criterion"))
            for i, pair in enumerate(pairs):
                if leq(q, forwards[i]):
                    yield (leq(back, pair), lambda i=i, j=j: (
                        f"minimality fails: {_render_pair(pairs[i])} also "
                        f"computes {render(outputs[j])} but is not above "
                        f"bwd(q) = {_render_pair(backwards[j])}"))

    run("fwd_monotone", fwd_monotone())
    run("bwd_monotone", bwd_monotone())
    run("deflation", deflation())
    run("inflation", inflation())
    run("galois_equivalence", galois_equivalence())
    run("minimality", minimality())

    return CheckReport(label, pair_size, output_size, laws,
                       time.perf_counter() - started)


def oracle_bwd(derivation: Derivation, criterion: PartialState,
               size_bound: int = DEFAULT_SIZE_BOUND) -> SliceOutcome:
    """Backward slice obtained purely from the adjunction, by scanning.

    Returns the least ``(program, input)`` prefix whose forward slice
    covers ``criterion``.  Shares no code with the rule-driven backward
    slicer, which makes it a genuine independent oracle for it.
    """
    pair_top, output_top = _lattice_tops(derivation)
    pair_size = downset_size(pair_top)
    if pair_size > size_bound:
        raise SizeExceeded(pair_size, size_bound)
    if not leq(criterion, output_top):
        raise CriterionMismatch(
            f"criterion {render(criterion)} is not a prefix of the output "
            f"{render(output_top)}")

    trace = derivation.trace
    candidates = []
    least = None
    for pair in enumerate_downset(pair_top, pair_size):
        cmd, state = pair
        if leq(criterion, fwd_cmd(trace, state, cmd)):
            candidates.append(pair)
            if least is None or leq(pair, least):
                least = pair
    if least is None or not all(leq(least, pair) for pair in candidates):
        raise CriterionMismatch(
            f"no least explanation exists for {render(criterion)}")
    return SliceOutcome(least[1], least[0])


def minimal_pairs(derivation: Derivation,
                  size_bound: int = DEFAULT_SIZE_BOUND
                  ) -> list[tuple[SliceOutcome, PartialState]]:
    """The isomorphic sublattice of minimal inputs and maximal outputs.

    Each criterion closes to the largest output its minimal input state
    can reproduce when the whole program is kept; distinct closures are
    returned, in enumeration order, paired with their backward slices.
    Along the way the idempotence identities (bwd after fwd after bwd
    equals bwd, and dually) are re-verified on every enumerated point.
    """
    _, output_top = _lattice_tops(derivation)
    output_size = downset_size(output_top)
    if output_size > size_bound:
        raise SizeExceeded(output_size, size_bound)

    trace = derivation.trace
    total_program = derivation.program
    seen: dict[PartialState, None] = {}
    for q in enumerate_downset(output_top, output_size):
        outcome = bwd_cmd(trace, q)
        # Close the criterion: the most this minimal input can explain,
        # with the full program retained.
        maximal = fwd_cmd(trace, outcome.input_slice, total_program)
        seen.setdefault(maximal, None)

        midpoint = fwd_cmd(trace, outcome.input_slice, outcome.program_slice)
        if bwd_cmd(trace, midpoint) != outcome:
            raise RuntimeError("bwd ∘ fwd ∘ bwd failed to reproduce bwd")
        again = bwd_cmd(trace, midpoint)
        if fwd_cmd(trace, again.input_slice, again.program_slice) != midpoint:
            raise RuntimeError("fwd ∘ bwd ∘ fwd failed to reproduce fwd")

    return [(bwd_cmd(trace, maximal), maximal) for maximal in seen]
