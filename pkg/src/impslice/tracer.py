"""Big-step tracing evaluation of total Imp programs.

Evaluation records a derivation tree: every expression node carries the
value it produced, every variable read carries the value it saw, and
every command node carries the states before and after it ran.  Branch
and loop nodes record which way execution went, so a trace is a complete,
replayable account of one terminated run.

Loops unroll into nested ``TWhileTrue`` nodes ending in a
``TWhileFalse``; the unrolling is built iteratively so deep loops do not
exhaust the interpreter stack.  A fuel bound on command-rule applications
makes evaluation total.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EvalError, FuelExhausted
from .syntax import (Add, And, Assign, Eq, FalseLit, Hole, If, Leq, Mul,
                     NatLit, Not, Seq, Skip, State, Sub, TrueLit, VarRead,
                     While)

DEFAULT_FUEL = 100_000


# Arithmetic traces -----------------------------------------------------------

@dataclass(frozen=True, slots=True)
class TNat:
    value: int

    @property
    def result(self) -> int:
        return self.value


@dataclass(frozen=True, slots=True)
class TVar:
    name: str
    result: int  # the value read from the state at evaluation time


@dataclass(frozen=True, slots=True)
class TAdd:
    left: ArithTrace
    right: ArithTrace
    result: int


@dataclass(frozen=True, slots=True)
class TSub:
    left: ArithTrace
    right: ArithTrace
    result: int


@dataclass(frozen=True, slots=True)
class TMul:
    left: ArithTrace
    right: ArithTrace
    result: int


ArithTrace = "TNat | TVar | TAdd | TSub | TMul"


# Boolean traces ---------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class TTrue:
    @property
    def result(self) -> bool:
        return True


@dataclass(frozen=True, slots=True)
class TFalse:
    @property
    def result(self) -> bool:
        return False


@dataclass(frozen=True, slots=True)
class TEq:
    left: ArithTrace
    right: ArithTrace
    result: bool


@dataclass(frozen=True, slots=True)
class TLeq:
    left: ArithTrace
    right: ArithTrace
    result: bool


@dataclass(frozen=True, slots=True)
class TNot:
    operand: BoolTrace
    result: bool


@dataclass(frozen=True, slots=True)
class TAnd:
    left: BoolTrace
    right: BoolTrace
    result: bool


BoolTrace = "TTrue | TFalse | TEq | TLeq | TNot | TAnd"


# Command traces ----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class TSkip:
    state_in: State
    state_out: State


@dataclass(frozen=True, slots=True)
class TAssign:
    name: str
    expr: ArithTrace
    state_in: State
    state_out: State


@dataclass(frozen=True, slots=True)
class TSeq:
    first: CmdTrace
    second: CmdTrace
    state_in: State
    state_out: State


@dataclass(frozen=True, slots=True)
class TIfTrue:
    cond: BoolTrace
    then_trace: CmdTrace
    state_in: State
    state_out: State


@dataclass(frozen=True, slots=True)
class TIfFalse:
    cond: BoolTrace
    else_trace: CmdTrace
    state_in: State
    state_out: State


@dataclass(frozen=True, slots=True)
class TWhileFalse:
    cond: BoolTrace
    state_in: State
    state_out: State


@dataclass(frozen=True, slots=True)
class TWhileTrue:
    cond: BoolTrace
    body: CmdTrace
    rest: CmdTrace  # trace of the remaining iterations
    state_in: State
    state_out: State


CmdTrace = ("TSkip | TAssign | TSeq | TIfTrue | TIfFalse | "
            "TWhileFalse | TWhileTrue")


@dataclass(frozen=True, slots=True)
class Derivation:
    """One terminated evaluation: program, input, output, and its trace."""

    program: object
    input: State
    output: State
    trace: object


# Evaluation -------------------------------------------------------------------

def eval_aexp(state: State, expr):
    """Evaluate a total arithmetic expression to ``(value, trace)``.

    Subtraction truncates at zero; values are naturals throughout.
    """
    if isinstance(expr, NatLit):
        return expr.value, TNat(expr.value)
    if isinstance(expr, VarRead):
        value = state.lookup(expr.name)
        return value, TVar(expr.name, value)
    if isinstance(expr, Add):
        lv, lt = eval_aexp(state, expr.left)
        rv, rt = eval_aexp(state, expr.right)
        return lv + rv, TAdd(lt, rt, lv + rv)
    if isinstance(expr, Sub):
        lv, lt = eval_aexp(state, expr.left)
        rv, rt = eval_aexp(state, expr.right)
        value = max(lv - rv, 0)
        return value, TSub(lt, rt, value)
    if isinstance(expr, Mul):
        lv, lt = eval_aexp(state, expr.left)
        rv, rt = eval_aexp(state, expr.right)
        return lv * rv, TMul(lt, rt, lv * rv)
    if isinstance(expr, Hole):
        raise EvalError("cannot evaluate a term that contains holes")
    raise TypeError(f"not an arithmetic expression: {expr!r}")


def eval_bexp(state: State, expr):
    """Evaluate a total boolean expression to ``(value, trace)``.

    ``&&`` evaluates both operands; the trace always carries both
    subtraces, so there is no short-circuiting.
    """
    if isinstance(expr, TrueLit):
        return True, TTrue()
    if isinstance(expr, FalseLit):
        return False, TFalse()
    if isinstance(expr, Eq):
        lv, lt = eval_aexp(state, expr.left)
        rv, rt = eval_aexp(state, expr.right)
        return lv == rv, TEq(lt, rt, lv == rv)
    if isinstance(expr, Leq):
        lv, lt = eval_aexp(state, expr.left)
        rv, rt = eval_aexp(state, expr.right)
        return lv <= rv, TLeq(lt, rt, lv <= rv)
    if isinstance(expr, Not):
        value, trace = eval_bexp(state, expr.operand)
        return not value, TNot(trace, not value)
    if isinstance(expr, And):
        lv, lt = eval_bexp(state, expr.left)
        rv, rt = eval_bexp(state, expr.right)
        return lv and rv, TAnd(lt, rt, lv and rv)
    if isinstance(expr, Hole):
        raise EvalError("cannot evaluate a term that contains holes")
    raise TypeError(f"not a boolean expression: {expr!r}")


class _Fuel:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int):
        self.left = limit
        self.limit = limit

    def burn(self) -> None:
        if self.left <= 0:
            raise FuelExhausted(self.limit)
        self.left -= 1


def _exec(state: State, cmd, fuel: _Fuel):
    fuel.burn()
    if isinstance(cmd, Skip):
        return state, TSkip(state, state)
    if isinstance(cmd, Assign):
        value, expr_trace = eval_aexp(state, cmd.expr)
        after = state.update(cmd.name, value)
        return after, TAssign(cmd.name, expr_trace, state, after)
    if isinstance(cmd, Seq):
        # Walk the right spine iteratively so long straight-line programs
        # do not recurse per statement.
        segments = []
        node = cmd
        while isinstance(node, Seq):
            segments.append(node.first)
            node = node.second
        segments.append(node)
        entry = state
        traces = []
        for segment in segments[:-1]:
            state, trace = _exec(state, segment, fuel)
            traces.append(trace)
            fuel.burn()  # one application of the sequencing rule per join
        state, trace = _exec(state, segments[-1], fuel)
        for prior in reversed(traces):
            trace = TSeq(prior, trace, prior.state_in, state)
        assert trace.state_in == entry
        return state, trace
    if isinstance(cmd, If):
        value, cond_trace = eval_bexp(state, cmd.cond)
        if value:
            after, branch = _exec(state, cmd.then_branch, fuel)
            return after, TIfTrue(cond_trace, branch, state, after)
        after, branch = _exec(state, cmd.else_branch, fuel)
        return after, TIfFalse(cond_trace, branch, state, after)
    if isinstance(cmd, While):
        iterations = []  # (entry_state, cond_trace, body_trace)
        current = state
        while True:
            value, cond_trace = eval_bexp(current, cmd.cond)
            if not value:
                trace = TWhileFalse(cond_trace, current, current)
                break
            entry = current
            current, body_trace = _exec(current, cmd.body, fuel)
            iterations.append((entry, cond_trace, body_trace))
            fuel.burn()  # each unrolling re-applies the loop rule
        for entry, cond_trace, body_trace in reversed(iterations):
            trace = TWhileTrue(cond_trace, body_trace, trace, entry, current)
        return current, trace
    if isinstance(cmd, Hole):
        raise EvalError("cannot evaluate a program that contains holes")
    raise TypeError(f"not a command: {cmd!r}")


def eval_cmd(state: State, cmd, fuel: int = DEFAULT_FUEL) -> Derivation:
    """Run a total program, producing a :class:`Derivation`.

    Raises :class:`UnboundVariable` when the program reads a variable
    absent from the state, and :class:`FuelExhausted` after ``fuel``
    command-rule applications.  Writes to absent variables are no-ops, so
    the output state always has the input state's domain.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    output, trace = _exec(state, cmd, _Fuel(fuel))
    return Derivation(cmd, state, output, trace)


# Trace inspection ----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class TraceStats:
    assignments: int
    loop_iterations: int
    loop_conditions: int
    branch_decisions: tuple[bool, ...]


def trace_stats(derivation: Derivation) -> TraceStats:
    """Counts of interesting events, gathered in one traversal.

    ``branch_decisions`` lists conditional outcomes in execution order;
    ``loop_conditions`` counts every evaluation of a loop guard (one per
    iteration plus the final false test).
    """
    assignments = 0
    iterations = 0
    conditions = 0
    decisions: list[bool] = []
    # Children are pushed right-to-left, so nodes pop in execution order.
    stack = [derivation.trace]
    while stack:
        node = stack.pop()
        if isinstance(node, TAssign):
            assignments += 1
        elif isinstance(node, TSeq):
            stack.append(node.second)
            stack.append(node.first)
        elif isinstance(node, TIfTrue):
            decisions.append(True)
            stack.append(node.then_trace)
        elif isinstance(node, TIfFalse):
            decisions.append(False)
            stack.append(node.else_trace)
        elif isinstance(node, TWhileFalse):
            conditions += 1
        elif isinstance(node, TWhileTrue):
            iterations += 1
            conditions += 1
            stack.append(node.rest)
            stack.append(node.body)
    return TraceStats(assignments, iterations, conditions, tuple(decisions))


def _replay_aexp(trace, state: State) -> int:
    if isinstance(trace, TNat):
        return trace.value
    if isinstance(trace, TVar):
        value = state.lookup(trace.name)
        if value != trace.result:
            raise ValueError(f"trace read {trace.result} for '{trace.name}' "
                             f"but the state holds {value}")
        return value
    left = _replay_aexp(trace.left, state)
    right = _replay_aexp(trace.right, state)
    if isinstance(trace, TAdd):
        value = left + right
    elif isinstance(trace, TSub):
        value = max(left - right, 0)
    else:
        value = left * right
    if value != trace.result:
        raise ValueError(f"cached result {trace.result} != recomputed {value}")
    return value


def _replay_bexp(trace, state: State) -> bool:
    if isinstance(trace, (TTrue, TFalse)):
        return trace.result
    if isinstance(trace, (TEq, TLeq)):
        left = _replay_aexp(trace.left, state)
        right = _replay_aexp(trace.right, state)
        value = left == right if isinstance(trace, TEq) else left <= right
    elif isinstance(trace, TNot):
        value = not _replay_bexp(trace.operand, state)
    else:
        value = _replay_bexp(trace.left, state) and _replay_bexp(trace.right,
                                                                 state)
    if value != trace.result:
        raise ValueError(f"cached result {trace.result} != recomputed {value}")
    return value


def _replay_cmd(trace, state: State) -> State:
    if trace.state_in != state:
        raise ValueError("trace state_in does not chain")
    if isinstance(trace, TSkip):
        after = state
    elif isinstance(trace, TAssign):
        after = state.update(trace.name, _replay_aexp(trace.expr, state))
    elif isinstance(trace, TSeq):
        after = _replay_cmd(trace.second, _replay_cmd(trace.first, state))
    elif isinstance(trace, TIfTrue):
        if _replay_bexp(trace.cond, state) is not True:
            raise ValueError("if_true trace with false condition")
        after = _replay_cmd(trace.then_trace, state)
    elif isinstance(trace, TIfFalse):
        if _replay_bexp(trace.cond, state) is not False:
            raise ValueError("if_false trace with true condition")
        after = _replay_cmd(trace.else_trace, state)
    elif isinstance(trace, TWhileFalse):
        if _replay_bexp(trace.cond, state) is not False:
            raise ValueError("while_false trace with true condition")
        after = state
    elif isinstance(trace, TWhileTrue):
        if _replay_bexp(trace.cond, state) is not True:
            raise ValueError("while_true trace with false condition")
        after = _replay_cmd(trace.rest, _replay_cmd(trace.body, state))
    else:
        raise TypeError(f"not a command trace: {trace!r}")
    if trace.state_out != after:
        raise ValueError("trace state_out does not match replay")
    return after


def replay(derivation: Derivation) -> State:
    """Re-derive every cached value and state in a derivation.

    Raises ``ValueError`` on the first node whose annotations disagree
    with a recomputation from its children; returns the replayed output.
    """
    final = _replay_cmd(derivation.trace, derivation.input)
    if final != derivation.output:
        raise ValueError("replayed output differs from recorded output")
    return final
