"""Dynamic program slicing for the Imp language.

Run a program to record a value-annotated trace, then slice it in either
direction: forward (evaluate a partial program on a partial state) or
backward (reconstruct the least program and input explaining part of the
output).  The two directions form a Galois connection, and the oracle
module certifies that exhaustively on small instances.
"""

from .errors import (CriterionMismatch, DuplicateVariable, EvalError,
                     FuelExhausted, ImpError, JoinError, LatticeMismatch,
                     ParseError, SizeExceeded, UnboundVariable)
from .lattice import (DEFAULT_ENUM_BOUND, PrefixWitness, check_prefix,
                      covers, downset_size, enumerate_downset, join, leq)
from .oracle import (CheckReport, LawReport, check_connection, minimal_pairs,
                     oracle_bwd)
from .parser import (parse_command, parse_partial_command,
                     parse_partial_state, parse_state)
from .printer import hole_spans, render, render_command_spans, render_trace
from .slicer import (SliceOutcome, bwd_aexp, bwd_bexp, bwd_cmd, fwd_aexp,
                     fwd_bexp, fwd_cmd)
from .syntax import (HOLE, Add, And, Assign, Eq, FalseLit, Hole, If, Leq,
                     Mul, NatLit, Not, PartialState, Seq, Skip, State, Sub,
                     TrueLit, VarRead, While, blank_state, is_total,
                     partialize)
from .tracer import (DEFAULT_FUEL, Derivation, TraceStats, eval_aexp,
                     eval_bexp, eval_cmd, replay, trace_stats)

__all__ = [name for name in dir() if not name.startswith("_")]
