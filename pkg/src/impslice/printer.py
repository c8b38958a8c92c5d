"""Rendering of terms, states, and traces back to concrete syntax.

``render`` is the inverse of the parsers: for any grammar-denotable tree
``t``, ``parse(render(t)) == t``.  Sequencing carries no grouping syntax,
so only right-nested ``Seq`` chains (the shapes the parser produces) are
guaranteed to round-trip.

``render_command_spans`` additionally reports the character span of every
subterm in the canonical text, which is what the service uses to tell
clients which regions of a program a slice erased.
"""

from __future__ import annotations

from .syntax import (HOLE, Add, And, Assign, Eq, FalseLit, Hole, If, Leq,
                     Mul, NatLit, Not, PartialState, Seq, Skip, State, Sub,
                     TrueLit, VarRead, While)
from . import tracer

# Precedence levels for arithmetic rendering; higher binds tighter.
_ADDITIVE = 1
_MULTIPLICATIVE = 2
_ATOM = 3

_AEXP_PREC = {Add: _ADDITIVE, Sub: _ADDITIVE, Mul: _MULTIPLICATIVE}
_AEXP_OP = {Add: "+", Sub: "-", Mul: "*"}


class _Writer:
    """Accumulates text and records subterm spans keyed by tree path."""

    def __init__(self):
        self.parts: list[str] = []
        self.length = 0
        self.spans: dict[tuple[int, ...], tuple[int, int]] = {}

    def emit(self, text: str) -> None:
        self.parts.append(text)
        self.length += len(text)

    def text(self) -> str:
        return "".join(self.parts)


def _aexp(w: _Writer, node, path: tuple[int, ...], parent_prec: int,
          is_right: bool) -> None:
    start = w.length
    if isinstance(node, Hole):
        w.emit("_")
    elif isinstance(node, NatLit):
        w.emit(str(node.value))
    elif isinstance(node, VarRead):
        w.emit(node.name)
    else:
        prec = _AEXP_PREC[type(node)]
        # Left-associative operators: the right child needs parentheses at
        # equal precedence, the left child only at lower precedence.
        needs_parens = prec < parent_prec or (prec == parent_prec and is_right)
        if needs_parens:
            w.emit("(")
        _aexp(w, node.left, path + (0,), prec, False)
        w.emit(f" {_AEXP_OP[type(node)]} ")
        _aexp(w, node.right, path + (1,), prec, True)
        if needs_parens:
            w.emit(")")
    w.spans[path] = (start, w.length)


def _bexp(w: _Writer, node, path: tuple[int, ...]) -> None:
    start = w.length
    if isinstance(node, Hole):
        w.emit("_")
    elif isinstance(node, TrueLit):
        w.emit("true")
    elif isinstance(node, FalseLit):
        w.emit("false")
    elif isinstance(node, (Eq, Leq)):
        op = "=" if isinstance(node, Eq) else "<="
        _aexp(w, node.left, path + (0,), 0, False)
        w.emit(f" {op} ")
        _aexp(w, node.right, path + (1,), 0, False)
    elif isinstance(node, Not):
        w.emit("!")
        grouped = isinstance(node.operand, (Eq, Leq, And))
        if grouped:
            w.emit("(")
        _bexp(w, node.operand, path + (0,))
        if grouped:
            w.emit(")")
    elif isinstance(node, And):
        if isinstance(node.left, And):
            w.emit("(")
            _bexp(w, node.left, path + (0,))
            w.emit(")")
        else:
            _bexp(w, node.left, path + (0,))
        w.emit(" && ")
        _bexp(w, node.right, path + (1,))
    else:
        raise TypeError(f"not a boolean expression: {node!r}")
    w.spans[path] = (start, w.length)


def _cmd(w: _Writer, node, path: tuple[int, ...]) -> None:
    start = w.length
    if isinstance(node, Hole):
        w.emit("_")
    elif isinstance(node, Skip):
        w.emit("skip")
    elif isinstance(node, Assign):
        w.emit(f"{node.name} := ")
        _aexp(w, node.expr, path + (0,), 0, False)
    elif isinstance(node, Seq):
        _cmd(w, node.first, path + (0,))
        w.emit(" ; ")
        _cmd(w, node.second, path + (1,))
    elif isinstance(node, If):
        w.emit("if (")
        _bexp(w, node.cond, path + (0,))
        w.emit(") then { ")
        _cmd(w, node.then_branch, path + (1,))
        w.emit(" } else { ")
        _cmd(w, node.else_branch, path + (2,))
        w.emit(" }")
    elif isinstance(node, While):
        w.emit("while (")
        _bexp(w, node.cond, path + (0,))
        w.emit(") do { ")
        _cmd(w, node.body, path + (1,))
        w.emit(" }")
    else:
        raise TypeError(f"not a command: {node!r}")
    w.spans[path] = (start, w.length)


def render_command_spans(cmd):
    """Render a command and return ``(text, {path: (start, end)})``.

    Paths are tuples of child indices from the root, matching the child
    order used throughout the lattice module.
    """
    w = _Writer()
    _cmd(w, cmd, ())
    return w.text(), w.spans


def _render_state(state) -> str:
    return ", ".join(
        f"{name} = {'_' if value is None else value}"
        for name, value in state.entries)


def render(obj) -> str:
    """Canonical concrete syntax for a term or state; holes print as ``_``."""
    if isinstance(obj, (State, PartialState)):
        return _render_state(obj)
    w = _Writer()
    if isinstance(obj, (Hole, Skip, Assign, Seq, If, While)):
        # A bare hole could be any kind; command rendering covers it.
        _cmd(w, obj, ())
    elif isinstance(obj, (NatLit, VarRead, Add, Sub, Mul)):
        _aexp(w, obj, (), 0, False)
    elif isinstance(obj, (TrueLit, FalseLit, Eq, Leq, Not, And)):
        _bexp(w, obj, ())
    else:
        raise TypeError(f"cannot render {obj!r}")
    return w.text()


def hole_spans(program, slice_cmd) -> list[tuple[int, int]]:
    """Character spans, in ``render(program)``, of the subterms that the
    slice erased.  Spans are maximal (a hole covers its whole subtree),
    ordered left to right, and never overlap."""
    _, spans = render_command_spans(program)
    out: list[tuple[int, int]] = []

    def walk(prog_node, slice_node, path):
        if isinstance(slice_node, Hole):
            out.append(spans[path])
            return
        from .syntax import CHILD_FIELDS
        fields = CHILD_FIELDS.get(type(prog_node), ())
        for index, field in enumerate(fields):
            walk(getattr(prog_node, field), getattr(slice_node, field),
                 path + (index,))

    walk(program, slice_cmd, ())
    return sorted(out)


# Trace listings ---------------------------------------------------------------

def _atrace(node) -> str:
    if isinstance(node, tracer.TNat):
        return str(node.value)
    if isinstance(node, tracer.TVar):
        return f"{node.name}({node.result})"
    op = {tracer.TAdd: "+", tracer.TSub: "-", tracer.TMul: "*"}[type(node)]
    left, right = _atrace(node.left), _atrace(node.right)
    if isinstance(node.left, (tracer.TAdd, tracer.TSub, tracer.TMul)):
        left = f"({left})"
    if isinstance(node.right, (tracer.TAdd, tracer.TSub, tracer.TMul)):
        right = f"({right})"
    return f"{left} {op} {right}"


def _btrace(node) -> str:
    if isinstance(node, tracer.TTrue):
        return "true"
    if isinstance(node, tracer.TFalse):
        return "false"
    if isinstance(node, tracer.TEq):
        return f"{_atrace(node.left)} = {_atrace(node.right)}"
    if isinstance(node, tracer.TLeq):
        return f"{_atrace(node.left)} <= {_atrace(node.right)}"
    if isinstance(node, tracer.TNot):
        return f"!({_btrace(node.operand)})"
    return f"{_btrace(node.left)} && {_btrace(node.right)}"


def _ctrace(node, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    if isinstance(node, tracer.TSkip):
        lines.append(f"{pad}skip")
    elif isinstance(node, tracer.TAssign):
        lines.append(f"{pad}{node.name} := {_atrace(node.expr)}")
    elif isinstance(node, tracer.TSeq):
        _ctrace(node.first, indent, lines)
        lines[-1] += " ;"
        _ctrace(node.second, indent, lines)
    elif isinstance(node, tracer.TIfTrue):
        lines.append(f"{pad}if_true ({_btrace(node.cond)}) then {{")
        _ctrace(node.then_trace, indent + 1, lines)
        lines.append(f"{pad}}}")
    elif isinstance(node, tracer.TIfFalse):
        lines.append(f"{pad}if_false ({_btrace(node.cond)}) else {{")
        _ctrace(node.else_trace, indent + 1, lines)
        lines.append(f"{pad}}}")
    elif isinstance(node, tracer.TWhileFalse):
        lines.append(f"{pad}while_false ({_btrace(node.cond)})")
    elif isinstance(node, tracer.TWhileTrue):
        # The unrolled loop prints flattened, one iteration per block.
        while isinstance(node, tracer.TWhileTrue):
            lines.append(f"{pad}while_true ({_btrace(node.cond)}) do {{")
            _ctrace(node.body, indent + 1, lines)
            lines.append(f"{pad}}} ;")
            node = node.rest
        _ctrace(node, indent, lines)
    else:
        raise TypeError(f"not a command trace: {node!r}")


def render_trace(trace_or_derivation) -> str:
    """Multi-line listing of a command trace with recorded values and
    branch/loop markers (``if_true``, ``while_false``, ...)."""
    node = trace_or_derivation
    if isinstance(node, tracer.Derivation):
        node = node.trace
    lines: list[str] = []
    _ctrace(node, 0, lines)
    return "\n".join(lines)
