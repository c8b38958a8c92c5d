"""Shared corpus of programs exercised across the test suite.

Each entry is a program with one input state: small enough that its
partial-program and partial-state lattices enumerate fully, so the
certification laws can be checked exhaustively.  The two worked examples
(`conditional_increment`, `divides`) are kept verbatim; `divides_full`
deliberately exceeds the enumeration gate and is used only where no
lattice enumeration is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from impslice import eval_cmd, parse_command, parse_state

CONDITIONAL_PROGRAM = ("if (y = 1) then { y := x + 1 } "
                       "else { y := y + 1 } ; z := z + 1")
CONDITIONAL_STATE = "x = 1, y = 0, z = 2"

ASSIGNMENT_PROGRAM = "z := x + y"
ASSIGNMENT_STATE = "w = 0, x = 1, y = 2, z = 42"

DIVIDES_PROGRAM = """
r := a ;
while (b <= r) do {
  q := q + 1 ;
  r := r - b
} ;
if (!(r = 0)) then { res := 0 } else { res := 1 }
"""
DIVIDES_STATE = "q = 0, r = 0, res = 0, a = 4, b = 2"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    program: str
    state: str
    enumerable: bool = True  # small enough for exhaustive certification


CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("conditional_increment", CONDITIONAL_PROGRAM,
                CONDITIONAL_STATE),
    CorpusEntry("plain_assignment", ASSIGNMENT_PROGRAM, ASSIGNMENT_STATE),
    CorpusEntry("divides_kernel",
                "while (b <= r) do { r := r - b } ; "
                "if (!(r = 0)) then { res := 0 } else { res := 1 }",
                "r = 4, res = 0, b = 2"),
    CorpusEntry("skip_empty", "skip", ""),
    CorpusEntry("skip_one", "skip", "x = 1"),
    CorpusEntry("assign_const", "x := 7", "x = 0, y = 3"),
    CorpusEntry("assign_self", "x := x + 1", "x = 5, w = 2"),
    CorpusEntry("assign_absent", "t := 1", "x = 2"),
    CorpusEntry("assign_chain", "x := 1 ; y := x + x ; z := y * 2",
                "x = 0, y = 0, z = 0"),
    CorpusEntry("branch_then", "if (x <= 1) then { y := 1 } else { y := 2 }",
                "x = 1, y = 0"),
    CorpusEntry("branch_else", "if (x <= 1) then { y := 1 } else { y := 2 }",
                "x = 5, y = 0"),
    CorpusEntry("nested_branches",
                "if (true) then { if (x = 0) then { y := 1 } "
                "else { y := 2 } } else { skip }",
                "x = 0, y = 9"),
    CorpusEntry("nested_loops",
                "while (1 <= n) do { m := 2 ; "
                "while (1 <= m) do { m := m - 1 } ; n := n - 1 }",
                "n = 2, m = 0"),
    CorpusEntry("loop_skipped", "while (x = 1) do { x := x + 1 }", "x = 5"),
    CorpusEntry("loop_once", "while (x = 1) do { x := x + 1 }", "x = 1"),
    CorpusEntry("countdown", "while (1 <= x) do { x := x - 1 }",
                "x = 3, y = 7"),
    CorpusEntry("guarded_copy",
                "if (!(x = 1) && y <= 2) then { z := x } else { z := y }",
                "x = 2, y = 1, z = 0"),
    CorpusEntry("literal_guard",
                "if (true && false) then { x := 1 } else { x := 0 }",
                "x = 9"),
    CorpusEntry("square_minus", "x := y * y - y", "x = 0, y = 3"),
    CorpusEntry("truncated_subtraction", "x := y - z", "x = 1, y = 2, z = 5"),
    CorpusEntry("skip_between", "x := 1 ; skip ; y := 2", "x = 0, y = 0"),
    CorpusEntry("dead_store", "x := 1 ; x := 2", "x = 0"),
    CorpusEntry("rotate", "t := x ; x := y ; y := t", "t = 0, x = 1, y = 2"),
    CorpusEntry("contentless_branches",
                "if (x = 1) then { skip } else { skip }", "x = 1"),
    CorpusEntry("loop_guard_reads", "while (x <= y) do { x := x + 2 }",
                "x = 0, y = 3"),
    CorpusEntry("divides_full", DIVIDES_PROGRAM, DIVIDES_STATE,
                enumerable=False),
)


@lru_cache(maxsize=None)
def derivation_for(name: str):
    entry = next(e for e in CORPUS if e.name == name)
    return eval_cmd(parse_state(entry.state), parse_command(entry.program))


def enumerable_entries() -> list[CorpusEntry]:
    return [entry for entry in CORPUS if entry.enumerable]
