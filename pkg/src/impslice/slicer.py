"""Forward and backward dynamic slicing along recorded traces.

Forward slicing evaluates a partial program on a partial state, guided by
the trace of the original run: holes propagate through expressions, a
hole in command position erases every variable the traced subcomputation
assigned, and untaken branches are never consulted.

Backward slicing runs the trace in reverse: given a partial output state
(the criterion), it reconstructs the least partial program and input
state whose forward slice covers the criterion.  Sequences are processed
right to left; expression demands combine via the lattice join.

Both directions follow the structure of the trace, not the program, and
both form the two adjoints of a Galois connection (certified exhaustively
by the oracle module).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CriterionMismatch, LatticeMismatch
from .lattice import join
from .syntax import (HOLE, Add, And, Assign, Eq, FalseLit, Hole, If, Leq,
                     Mul, NatLit, Not, PartialState, Seq, Skip, Sub,
                     TrueLit, VarRead, While, blank_state)
from .tracer import (TAdd, TAnd, TAssign, TEq, TFalse, TIfFalse, TIfTrue,
                     TLeq, TMul, TNat, TNot, TSeq, TSkip, TSub, TTrue,
                     TVar, TWhileFalse, TWhileTrue)


@dataclass(frozen=True, slots=True)
class SliceOutcome:
    """Result of a backward slice: the demanded input state and program."""

    input_slice: PartialState
    program_slice: object


def _mismatch(trace, term):
    raise LatticeMismatch(
        f"term {term!r} is not a prefix of the traced {type(trace).__name__}")


# Forward slicing -----------------------------------------------------------------

_ARITH_PAIRS = {TAdd: Add, TSub: Sub, TMul: Mul}


def fwd_aexp(trace, env: PartialState, expr) -> int | None:
    """Forward-slice an arithmetic expression; ``None`` is the hole.

    Any hole in an evaluated position makes the whole result a hole.
    Variable reads take the value from ``env``, never the value recorded
    in the trace, since the criterion may have erased it.
    """
    if isinstance(expr, Hole):
        return None
    if isinstance(trace, TNat):
        if not (isinstance(expr, NatLit) and expr.value == trace.value):
            _mismatch(trace, expr)
        return trace.value
    if isinstance(trace, TVar):
        if not (isinstance(expr, VarRead) and expr.name == trace.name):
            _mismatch(trace, expr)
        return env.lookup(trace.name)
    expected = _ARITH_PAIRS.get(type(trace))
    if expected is None or type(expr) is not expected:
        _mismatch(trace, expr)
    left = fwd_aexp(trace.left, env, expr.left)
    right = fwd_aexp(trace.right, env, expr.right)
    if left is None or right is None:
        return None
    if isinstance(trace, TAdd):
        return left + right
    if isinstance(trace, TSub):
        return max(left - right, 0)
    return left * right


def fwd_bexp(trace, env: PartialState, expr) -> bool | None:
    """Forward-slice a boolean expression; ``None`` is the hole."""
    if isinstance(expr, Hole):
        return None
    if isinstance(trace, TTrue):
        if not isinstance(expr, TrueLit):
            _mismatch(trace, expr)
        return True
    if isinstance(trace, TFalse):
        if not isinstance(expr, FalseLit):
            _mismatch(trace, expr)
        return False
    if isinstance(trace, (TEq, TLeq)):
        expected = Eq if isinstance(trace, TEq) else Leq
        if type(expr) is not expected:
            _mismatch(trace, expr)
        left = fwd_aexp(trace.left, env, expr.left)
        right = fwd_aexp(trace.right, env, expr.right)
        if left is None or right is None:
            return None
        return left == right if isinstance(trace, TEq) else left <= right
    if isinstance(trace, TNot):
        if not isinstance(expr, Not):
            _mismatch(trace, expr)
        value = fwd_bexp(trace.operand, env, expr.operand)
        return None if value is None else not value
    if isinstance(trace, TAnd):
        if not isinstance(expr, And):
            _mismatch(trace, expr)
        left = fwd_bexp(trace.left, env, expr.left)
        right = fwd_bexp(trace.right, env, expr.right)
        if left is None or right is None:
            return None
        return left and right
    _mismatch(trace, expr)


def _fwd_cmd(trace, env: PartialState, cmd) -> PartialState:
    if isinstance(trace, TSkip):
        if not isinstance(cmd, (Hole, Skip)):
            _mismatch(trace, cmd)
        return env
    if isinstance(trace, TAssign):
        if isinstance(cmd, Hole):
            return env.update(trace.name, None)
        if not (isinstance(cmd, Assign) and cmd.name == trace.name):
            _mismatch(trace, cmd)
        return env.update(trace.name, fwd_aexp(trace.expr, env, cmd.expr))
    if isinstance(trace, TSeq):
        node = trace
        while isinstance(node, TSeq):
            if isinstance(cmd, Hole):
                first, cmd = HOLE, HOLE
            elif isinstance(cmd, Seq):
                first, cmd = cmd.first, cmd.second
            else:
                _mismatch(node, cmd)
            env = _fwd_cmd(node.first, env, first)
            node = node.second
        return _fwd_cmd(node, env, cmd)
    if isinstance(trace, (TIfTrue, TIfFalse)):
        branch_trace = (trace.then_trace if isinstance(trace, TIfTrue)
                        else trace.else_trace)
        if isinstance(cmd, Hole):
            return _fwd_cmd(branch_trace, env, HOLE)
        if not isinstance(cmd, If):
            _mismatch(trace, cmd)
        value = fwd_bexp(trace.cond, env, cmd.cond)
        if value is None:
            # The guard is unavailable, so the recorded branch runs as a
            # hole: its assignments are erased rather than recomputed.
            return _fwd_cmd(branch_trace, env, HOLE)
        branch = cmd.then_branch if isinstance(trace, TIfTrue) else cmd.else_branch
        return _fwd_cmd(branch_trace, env, branch)
    if isinstance(trace, TWhileFalse):
        if not isinstance(cmd, (Hole, While)):
            _mismatch(trace, cmd)
        return env
    if isinstance(trace, TWhileTrue):
        node = trace
        while isinstance(node, TWhileTrue):
            if isinstance(cmd, Hole):
                env = _fwd_cmd(node.body, env, HOLE)
            elif isinstance(cmd, While):
                value = fwd_bexp(node.cond, env, cmd.cond)
                if value is None:
                    env = _fwd_cmd(node.body, env, HOLE)
                    cmd = HOLE  # remaining iterations slice as holes too
                else:
                    env = _fwd_cmd(node.body, env, cmd.body)
            else:
                _mismatch(node, cmd)
            node = node.rest
        if not isinstance(node, TWhileFalse):
            _mismatch(node, cmd)
        return env
    raise TypeError(f"not a command trace: {trace!r}")


def fwd_cmd(trace, env: PartialState, cmd) -> PartialState:
    """Forward-slice a partial command along a trace.

    ``env`` must have the domain of the traced run's input state, and
    ``cmd`` must be a prefix of the traced program; violations raise
    :class:`LatticeMismatch`.
    """
    if env.names != trace.state_in.names:
        raise LatticeMismatch(
            "partial state domain differs from the traced input state")
    return _fwd_cmd(trace, env, cmd)


# Backward slicing ------------------------------------------------------------------

def _bwd_aexp(trace, blank: PartialState, crit: int | None):
    if crit is None:
        return blank, HOLE
    if isinstance(trace, TNat):
        return blank, NatLit(trace.value)
    if isinstance(trace, TVar):
        return blank.update(trace.name, trace.result), VarRead(trace.name)
    # Operators slice each child against the child's own recorded result.
    left_state, left = _bwd_aexp(trace.left, blank, trace.left.result)
    right_state, right = _bwd_aexp(trace.right, blank, trace.right.result)
    rebuilt = {TAdd: Add, TSub: Sub, TMul: Mul}[type(trace)](left, right)
    return join(left_state, right_state), rebuilt


def bwd_aexp(trace, domain, crit: int | None):
    """Backward-slice an arithmetic trace against a demanded value.

    ``domain`` gives the variable names (and order) of the state the
    expression was evaluated in.  The criterion must be the recorded
    result or the hole: expressions can only be explained at the value
    they actually produced.
    """
    if crit is not None and crit != trace.result:
        raise CriterionMismatch(
            f"expression evaluated to {trace.result}, not {crit}")
    blank = PartialState(tuple((name, None) for name in domain))
    return _bwd_aexp(trace, blank, crit)


def _bwd_bexp(trace, blank: PartialState, crit: bool | None):
    if crit is None:
        return blank, HOLE
    if isinstance(trace, TTrue):
        return blank, TrueLit()
    if isinstance(trace, TFalse):
        return blank, FalseLit()
    if isinstance(trace, (TEq, TLeq)):
        left_state, left = _bwd_aexp(trace.left, blank, trace.left.result)
        right_state, right = _bwd_aexp(trace.right, blank, trace.right.result)
        rebuilt = Eq(left, right) if isinstance(trace, TEq) else Leq(left, right)
        return join(left_state, right_state), rebuilt
    if isinstance(trace, TNot):
        state, operand = _bwd_bexp(trace.operand, blank, trace.operand.result)
        return state, Not(operand)
    if isinstance(trace, TAnd):
        left_state, left = _bwd_bexp(trace.left, blank, trace.left.result)
        right_state, right = _bwd_bexp(trace.right, blank, trace.right.result)
        return join(left_state, right_state), And(left, right)
    raise TypeError(f"not a boolean trace: {trace!r}")


def bwd_bexp(trace, domain, crit: bool | None):
    """Boolean counterpart of :func:`bwd_aexp`."""
    if crit is not None and crit != trace.result:
        raise CriterionMismatch(
            f"condition evaluated to {trace.result}, not {crit}")
    blank = PartialState(tuple((name, None) for name in domain))
    return _bwd_bexp(trace, blank, crit)


def _seq_combine(first, second):
    if isinstance(second, Hole):
        if isinstance(first, Hole):
            return HOLE
        return Seq(first, HOLE)
    return Seq(first, second)


def _bwd_cmd(trace, crit: PartialState):
    if isinstance(trace, TSkip):
        return crit, HOLE
    if isinstance(trace, TAssign):
        demanded = crit.lookup(trace.name)
        if demanded is None:
            # The assigned variable is not needed, so neither is the
            # instruction; the hole it leaves keeps the state unchanged.
            return crit.update(trace.name, None), HOLE
        if demanded != trace.expr.result:
            raise CriterionMismatch(
                f"'{trace.name}' was assigned {trace.expr.result}, "
                f"criterion demands {demanded}")
        blank = blank_state(crit)
        expr_state, expr = _bwd_aexp(trace.expr, blank, demanded)
        # Erase the target before joining: its value prior to the
        # assignment is irrelevant unless the right-hand side read it.
        return (join(expr_state, crit.update(trace.name, None)),
                Assign(trace.name, expr))
    if isinstance(trace, TSeq):
        segments = []
        node = trace
        while isinstance(node, TSeq):
            segments.append(node.first)
            node = node.second
        segments.append(node)
        state = crit
        cmd = None
        for segment in reversed(segments):
            state, segment_cmd = _bwd_cmd(segment, state)
            cmd = segment_cmd if cmd is None else _seq_combine(segment_cmd, cmd)
        return state, cmd
    if isinstance(trace, (TIfTrue, TIfFalse)):
        branch_trace = (trace.then_trace if isinstance(trace, TIfTrue)
                        else trace.else_trace)
        state, branch = _bwd_cmd(branch_trace, crit)
        if isinstance(branch, Hole):
            # Nothing in the taken branch mattered, so the whole
            # conditional (guard included) disappears.
            return state, HOLE
        cond_state, cond = _bwd_bexp(trace.cond, blank_state(crit),
                                     trace.cond.result)
        if isinstance(trace, TIfTrue):
            rebuilt = If(cond, branch, HOLE)
        else:
            rebuilt = If(cond, HOLE, branch)
        return join(state, cond_state), rebuilt
    if isinstance(trace, TWhileFalse):
        return crit, HOLE
    if isinstance(trace, TWhileTrue):
        chain = []
        node = trace
        while isinstance(node, TWhileTrue):
            chain.append(node)
            node = node.rest
        # The criterion flows untouched into the final while_false; each
        # recorded iteration is then folded in last-executed first.
        state = crit
        cmd = HOLE
        for iteration in reversed(chain):
            body_state, body = _bwd_cmd(iteration.body, state)
            if isinstance(body, Hole) and isinstance(cmd, Hole):
                state = body_state
                continue
            cond_state, cond = _bwd_bexp(iteration.cond, blank_state(crit),
                                         iteration.cond.result)
            rebuilt = While(cond, body)
            cmd = rebuilt if isinstance(cmd, Hole) else join(cmd, rebuilt)
            state = join(body_state, cond_state)
        return state, cmd
    raise TypeError(f"not a command trace: {trace!r}")


def bwd_cmd(trace, crit: PartialState) -> SliceOutcome:
    """Backward-slice a command trace against a partial output state.

    The criterion must range over exactly the traced output's domain
    (:class:`LatticeMismatch` otherwise) and may only demand values the
    run actually produced (:class:`CriterionMismatch` otherwise).
    """
    output = trace.state_out
    if crit.names != output.names:
        raise LatticeMismatch(
            "criterion domain differs from the traced output state")
    for (name, demanded), (_, actual) in zip(crit.entries, output.entries):
        if demanded is not None and demanded != actual:
            raise CriterionMismatch(
                f"'{name}' finished as {actual}, criterion demands {demanded}")
    state, cmd = _bwd_cmd(trace, crit)
    return SliceOutcome(state, cmd)
