"""Recursive-descent parser for Imp programs and states.

Grammar (``_`` is the hole token, accepted only by the partial parsers)::

    cmd   ::= "skip" | ident ":=" aexp | cmd ";" cmd | "_"
            | "if" "(" bexp ")" "then" "{" cmd "}" "else" "{" cmd "}"
            | "while" "(" bexp ")" "do" "{" cmd "}"
    aexp  ::= nat | ident | aexp ("+"|"-") aexp | aexp "*" aexp
            | "(" aexp ")" | "_"
    bexp  ::= "true" | "false" | aexp "=" aexp | aexp "<=" aexp
            | "!" bexp | bexp "&&" bexp | "(" bexp ")" | "_"
    state ::= [ ident "=" (nat|"_") ("," ident "=" (nat|"_"))* ]

``;`` and ``&&`` associate to the right, ``+``/``-`` to the left, and
``*`` binds tighter than ``+``/``-``.  ``!`` binds tighter than ``&&``.
Line comments start with ``#``.  Identifiers are case-sensitive ASCII:
a letter followed by letters, digits, or underscores.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DuplicateVariable, ParseError
from .syntax import (HOLE, Add, And, Assign, Eq, FalseLit, If, Leq, Mul,
                     NatLit, Not, PartialState, Seq, Skip, State, Sub,
                     TrueLit, VarRead, While)

_KEYWORDS = frozenset(
    ["skip", "if", "then", "else", "while", "do", "true", "false"])

_TOKEN_RE = re.compile(
    r"""
      (?P<skip>[ \t\r\n]+|\#[^\n]*)
    | (?P<nat>\d+)
    | (?P<word>[A-Za-z][A-Za-z0-9_]*)
    | (?P<op>:=|<=|&&|[+\-*=!;,(){}_])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "nat", "ident", or the literal spelling of the token
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             line, pos - line_start + 1)
        column = match.start() - line_start + 1
        if match.lastgroup == "nat":
            tokens.append(Token("nat", match.group(), line, column))
        elif match.lastgroup == "word":
            word = match.group()
            kind = word if word in _KEYWORDS else "ident"
            tokens.append(Token(kind, word, line, column))
        elif match.lastgroup == "op":
            tokens.append(Token(match.group(), match.group(), line, column))
        else:
            newlines = match.group().count("\n")
            if newlines:
                line += newlines
                line_start = match.start() + match.group().rindex("\n") + 1
        pos = match.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, holes: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.holes = holes

    # -- token plumbing -----------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def at(self, kind: str) -> bool:
        return self.current.kind == kind

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def expect(self, kind: str) -> Token:
        if not self.at(kind):
            self.fail({kind})
        return self.advance()

    def fail(self, expected: set[str]):
        token = self.current
        shown = token.text if token.kind != "eof" else "end of input"
        raise ParseError(
            f"unexpected {shown!r}, expected one of: "
            + ", ".join(sorted(expected)),
            token.line, token.column, tuple(sorted(expected)))

    # -- commands -----------------------------------------------------------

    def command(self):
        left = self.simple_command()
        if self.at(";"):
            self.advance()
            return Seq(left, self.command())
        return left

    def simple_command(self):
        tok = self.current
        if tok.kind == "skip":
            self.advance()
            return Skip()
        if tok.kind == "_" and self.holes:
            self.advance()
            return HOLE
        if tok.kind == "ident":
            name = self.advance().text
            self.expect(":=")
            return Assign(name, self.aexp())
        if tok.kind == "if":
            self.advance()
            self.expect("(")
            cond = self.bexp()
            self.expect(")")
            self.expect("then")
            self.expect("{")
            then_branch = self.command()
            self.expect("}")
            self.expect("else")
            self.expect("{")
            else_branch = self.command()
            self.expect("}")
            return If(cond, then_branch, else_branch)
        if tok.kind == "while":
            self.advance()
            self.expect("(")
            cond = self.bexp()
            self.expect(")")
            self.expect("do")
            self.expect("{")
            body = self.command()
            self.expect("}")
            return While(cond, body)
        expected = {"skip", "ident", "if", "while"}
        if self.holes:
            expected.add("_")
        self.fail(expected)

    # -- arithmetic expressions ----------------------------------------------

    def aexp(self):
        left = self.aterm()
        while self.at("+") or self.at("-"):
            op = self.advance().kind
            right = self.aterm()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def aterm(self):
        left = self.afactor()
        while self.at("*"):
            self.advance()
            left = Mul(left, self.afactor())
        return left

    def afactor(self):
        tok = self.current
        if tok.kind == "nat":
            return NatLit(int(self.advance().text))
        if tok.kind == "ident":
            return VarRead(self.advance().text)
        if tok.kind == "(":
            self.advance()
            inner = self.aexp()
            self.expect(")")
            return inner
        if tok.kind == "_" and self.holes:
            self.advance()
            return HOLE
        expected = {"nat", "ident", "("}
        if self.holes:
            expected.add("_")
        self.fail(expected)

    # -- boolean expressions --------------------------------------------------

    def bexp(self):
        left = self.bfactor()
        if self.at("&&"):
            self.advance()
            return And(left, self.bexp())
        return left

    def bfactor(self):
        tok = self.current
        if tok.kind == "true":
            self.advance()
            return TrueLit()
        if tok.kind == "false":
            self.advance()
            return FalseLit()
        if tok.kind == "!":
            self.advance()
            return Not(self.bfactor())
        if tok.kind == "(":
            # "(" may open a boolean group or the left operand of a
            # comparison; try the boolean reading first and back off when
            # it fails or a comparison operator follows the ")".
            saved = self.pos
            try:
                self.advance()
                inner = self.bexp()
                self.expect(")")
            except ParseError:
                self.pos = saved
            else:
                if not (self.at("=") or self.at("<=")):
                    return inner
                self.pos = saved
        return self.comparison()

    def comparison(self):
        left = self.aexp()
        if self.at("=") or self.at("<="):
            op = self.advance().kind
            right = self.aexp()
            return Eq(left, right) if op == "=" else Leq(left, right)
        if left is HOLE:
            return HOLE
        self.fail({"=", "<="})

    # -- states ---------------------------------------------------------------

    def state_entries(self, holes: bool):
        entries: list[tuple[str, int | None]] = []
        if self.at("eof"):
            return entries
        while True:
            name_tok = self.expect("ident")
            if any(name == name_tok.text for name, _ in entries):
                raise DuplicateVariable(name_tok.text, name_tok.line,
                                        name_tok.column)
            self.expect("=")
            if self.at("nat"):
                value: int | None = int(self.advance().text)
            elif self.at("_") and holes:
                self.advance()
                value = None
            else:
                self.fail({"nat", "_"} if holes else {"nat"})
            entries.append((name_tok.text, value))
            if not self.at(","):
                return entries
            self.advance()

    # -- entry points -----------------------------------------------------------

    def run(self, production):
        result = production()
        if not self.at("eof"):
            self.fail({"end of input"})
        return result


def parse_command(text: str):
    """Parse a total Imp program; the hole token is rejected."""
    parser = _Parser(text, holes=False)
    return parser.run(parser.command)


def parse_partial_command(text: str):
    """Parse a partial Imp program; ``_`` is a hole at any position."""
    parser = _Parser(text, holes=True)
    return parser.run(parser.command)


def parse_state(text: str) -> State:
    """Parse ``x = 1, y = 0`` style bindings; empty input is the empty state."""
    parser = _Parser(text, holes=False)
    entries = parser.run(lambda: parser.state_entries(holes=False))
    return State(tuple(entries))


def parse_partial_state(text: str) -> PartialState:
    """Like :func:`parse_state` but ``_`` is accepted as a value."""
    parser = _Parser(text, holes=True)
    entries = parser.run(lambda: parser.state_entries(holes=True))
    return PartialState(tuple(entries))
