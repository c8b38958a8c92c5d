"""Machine-readable encoding of engine values (schema_version 1).

One canonical schema is shared by the CLI's ``--format json`` mode and
the HTTP service: states are ordered arrays of ``{"name", "value"}``
objects with ``null`` for holes, partial programs travel as their
concrete syntax with ``_`` holes, and traces serialise as nested trees
with stable child ordering.
"""

from __future__ import annotations

from .errors import ParseError
from .printer import render
from .syntax import PartialState, State
from . import tracer

SCHEMA_VERSION = 1


def state_to_json(state: State | PartialState) -> list[dict]:
    return [{"name": name, "value": value} for name, value in state.entries]


def state_from_json(data) -> PartialState:
    if not isinstance(data, list):
        raise ParseError("state must be an array of bindings", 0, 0)
    entries = []
    for binding in data:
        if (not isinstance(binding, dict) or "name" not in binding
                or not isinstance(binding["name"], str)):
            raise ParseError("state bindings need a 'name' field", 0, 0)
        value = binding.get("value")
        if value is not None and (not isinstance(value, int)
                                  or isinstance(value, bool) or value < 0):
            raise ParseError("state values are naturals or null", 0, 0)
        entries.append((binding["name"], value))
    return PartialState(tuple(entries))


_ARITH_KINDS = {tracer.TAdd: "add", tracer.TSub: "sub", tracer.TMul: "mul"}
_BOOL_KINDS = {tracer.TEq: "eq", tracer.TLeq: "leq"}


def _expr_trace_to_json(node) -> dict:
    if isinstance(node, tracer.TNat):
        return {"kind": "nat", "result": node.value}
    if isinstance(node, tracer.TVar):
        return {"kind": "var", "name": node.name, "result": node.result}
    if isinstance(node, (tracer.TAdd, tracer.TSub, tracer.TMul)):
        return {"kind": _ARITH_KINDS[type(node)],
                "children": [_expr_trace_to_json(node.left),
                             _expr_trace_to_json(node.right)],
                "result": node.result}
    if isinstance(node, tracer.TTrue):
        return {"kind": "true", "result": True}
    if isinstance(node, tracer.TFalse):
        return {"kind": "false", "result": False}
    if isinstance(node, (tracer.TEq, tracer.TLeq)):
        return {"kind": _BOOL_KINDS[type(node)],
                "children": [_expr_trace_to_json(node.left),
                             _expr_trace_to_json(node.right)],
                "result": node.result}
    if isinstance(node, tracer.TNot):
        return {"kind": "not",
                "children": [_expr_trace_to_json(node.operand)],
                "result": node.result}
    if isinstance(node, tracer.TAnd):
        return {"kind": "and",
                "children": [_expr_trace_to_json(node.left),
                             _expr_trace_to_json(node.right)],
                "result": node.result}
    raise TypeError(f"not an expression trace: {node!r}")


def _cmd_trace_to_json(node) -> dict:
    if isinstance(node, tracer.TSkip):
        return {"kind": "skip"}
    if isinstance(node, tracer.TAssign):
        return {"kind": "assign", "name": node.name,
                "expr": _expr_trace_to_json(node.expr)}
    if isinstance(node, tracer.TSeq):
        return {"kind": "seq",
                "children": [_cmd_trace_to_json(node.first),
                             _cmd_trace_to_json(node.second)]}
    if isinstance(node, tracer.TIfTrue):
        return {"kind": "if_true", "cond": _expr_trace_to_json(node.cond),
                "children": [_cmd_trace_to_json(node.then_trace)]}
    if isinstance(node, tracer.TIfFalse):
        return {"kind": "if_false", "cond": _expr_trace_to_json(node.cond),
                "children": [_cmd_trace_to_json(node.else_trace)]}
    if isinstance(node, tracer.TWhileFalse):
        return {"kind": "while_false", "cond": _expr_trace_to_json(node.cond)}
    if isinstance(node, tracer.TWhileTrue):
        return {"kind": "while_true", "cond": _expr_trace_to_json(node.cond),
                "children": [_cmd_trace_to_json(node.body),
                             _cmd_trace_to_json(node.rest)]}
    raise TypeError(f"not a command trace: {node!r}")


def stats_to_json(stats: tracer.TraceStats) -> dict:
    return {"assignments": stats.assignments,
            "loop_iterations": stats.loop_iterations,
            "loop_conditions": stats.loop_conditions,
            "branch_decisions": list(stats.branch_decisions)}


def derivation_to_json(derivation: tracer.Derivation) -> dict:
    return {"schema_version": SCHEMA_VERSION,
            "program": render(derivation.program),
            "input_state": state_to_json(derivation.input),
            "output_state": state_to_json(derivation.output),
            "trace": _cmd_trace_to_json(derivation.trace),
            "stats": stats_to_json(tracer.trace_stats(derivation))}


def run_result_to_json(derivation: tracer.Derivation) -> dict:
    return {"schema_version": SCHEMA_VERSION,
            "output_state": state_to_json(derivation.output)}


def slice_outcome_to_json(outcome, holes: list[tuple[int, int]] | None = None) -> dict:
    body = {"schema_version": SCHEMA_VERSION,
            "program_slice": render(outcome.program_slice),
            "input_slice": state_to_json(outcome.input_slice)}
    if holes is not None:
        body["holes"] = [{"start": start, "end": end} for start, end in holes]
    return body


def partial_state_to_json(state: PartialState) -> dict:
    return {"schema_version": SCHEMA_VERSION,
            "partial_state": state_to_json(state)}


def check_report_to_json(report) -> dict:
    return {"schema_version": SCHEMA_VERSION,
            "derivation": report.label,
            "sizes": {"input_pair": report.input_pair_size,
                      "output": report.output_size},
            "holds": report.holds,
            "wall_time_s": report.wall_time_s,
            "laws": {name: {"holds": law.holds, "checked": law.checked,
                            "counterexample": law.counterexample}
                     for name, law in report.laws.items()}}
