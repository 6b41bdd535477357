"""Set expressions and set constraints: ASTs, parser and printer.

Concrete syntax::

    expr  ::= '0' | 'U' | NAME | expr '+' expr | expr '++' expr
            | expr '\\' expr | expr '&' expr | '~' expr | '(' expr ')'
    cons  ::= 'true' | 'false' | expr '<=' expr | expr '==' expr
            | cons 'and' cons | cons 'or' cons | '(' cons ')'

Binding strength, tightest first: ``~``, ``&``, ``\\``, ``+``/``++``,
comparisons, ``and``, ``or``.  Binary operators associate to the left;
comparisons do not chain.
"""
from __future__ import annotations

import re
import typing
from dataclasses import dataclass
from typing import Iterator


class SetSyntaxError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


# ----------------------------------------------------------------------
# ASTs

@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Universe:
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be nonempty")


@dataclass(frozen=True)
class Union:
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Intersect:
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class DisjointUnion:
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Difference:
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Complement:
    expr: SetExpr


SetExpr = typing.Union[Empty, Universe, Var, Union, Intersect, DisjointUnion, Difference, Complement]


@dataclass(frozen=True)
class TrueC:
    pass


@dataclass(frozen=True)
class FalseC:
    pass


@dataclass(frozen=True)
class Subset:
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Equal:
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class And:
    left: SetConstraint
    right: SetConstraint


@dataclass(frozen=True)
class Or:
    left: SetConstraint
    right: SetConstraint


SetConstraint = typing.Union[TrueC, FalseC, Subset, Equal, And, Or]

_EXPR_BINARY = {Union: "+", DisjointUnion: "++", Difference: "\\", Intersect: "&"}
_CONS_BINARY = {Subset: "<=", Equal: "==", And: "and", Or: "or"}


def expr_vars(e: SetExpr) -> Iterator[str]:
    """Variable names of `e` in left-to-right order, with repeats."""
    if isinstance(e, Var):
        yield e.name
    elif isinstance(e, Complement):
        yield from expr_vars(e.expr)
    elif type(e) in _EXPR_BINARY:
        yield from expr_vars(e.left)
        yield from expr_vars(e.right)


def constraint_vars(k: SetConstraint) -> Iterator[str]:
    if isinstance(k, (Subset, Equal)):
        yield from expr_vars(k.left)
        yield from expr_vars(k.right)
    elif isinstance(k, (And, Or)):
        yield from constraint_vars(k.left)
        yield from constraint_vars(k.right)


# ----------------------------------------------------------------------
# printing

def format(ast: SetExpr | SetConstraint) -> str:
    """Fully parenthesized rendering; `parse_expr`/`parse_constraint` invert it."""
    if isinstance(ast, Empty):
        return "0"
    if isinstance(ast, Universe):
        return "U"
    if isinstance(ast, Var):
        return ast.name
    if isinstance(ast, Complement):
        return "~" + format(ast.expr)
    if isinstance(ast, TrueC):
        return "true"
    if isinstance(ast, FalseC):
        return "false"
    op = _EXPR_BINARY.get(type(ast)) or _CONS_BINARY.get(type(ast))
    if op is None:
        raise TypeError(f"not a set expression or constraint: {ast!r}")
    return f"({format(ast.left)} {op} {format(ast.right)})"


# ----------------------------------------------------------------------
# lexing

KEYWORDS = frozenset({"and", "or", "true", "false", "U"})

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>[0-9]+)
  | (?P<string>"[^"\n]*")
  | (?P<op>\+\+|<=|==|[+&\\~();])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'name', 'number', 'string', 'op', 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            ch = text[pos]
            if ch == '"':
                raise SetSyntaxError("unterminated string", line, col)
            if not (ch.isalnum() or ch.isspace()):
                raise SetSyntaxError(f"unknown operator {ch!r}", line, col)
            raise SetSyntaxError(f"unexpected character {ch!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ----------------------------------------------------------------------
# parsing

class Parser:
    """Recursive-descent parser over a token list.

    Also used by the script reader, which drives `expr`/`constraint`
    directly and consumes the surrounding statement syntax itself.
    """

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        # furthest failure, reported when every alternative fails
        self._error: SetSyntaxError | None = None

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek
        return tok.kind in ("op", "name") and tok.text == text

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek
        err = SetSyntaxError(message, tok.line, tok.col)
        if self._error is None or (tok.line, tok.col) >= (self._error.line, self._error.col):
            self._error = err
        raise err

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}, found {self._describe(self.peek)}")
        return self.advance()

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    # expressions, loosest first

    def expr(self) -> SetExpr:
        left = self._difference()
        while self.at("+") or self.at("++"):
            cls = Union if self.advance().text == "+" else DisjointUnion
            left = cls(left, self._difference())
        return left

    def _difference(self) -> SetExpr:
        left = self._intersect()
        while self.at("\\"):
            self.advance()
            left = Difference(left, self._intersect())
        return left

    def _intersect(self) -> SetExpr:
        left = self._unary()
        while self.at("&"):
            self.advance()
            left = Intersect(left, self._unary())
        return left

    def _unary(self) -> SetExpr:
        if self.at("~"):
            self.advance()
            return Complement(self._unary())
        return self._atom()

    def _atom(self) -> SetExpr:
        tok = self.peek
        if tok.kind == "number":
            if tok.text != "0":
                self.fail(f"only 0 (the empty set) is a set literal, found {tok.text!r}")
            self.advance()
            return Empty()
        if tok.kind == "name":
            if tok.text == "U":
                self.advance()
                return Universe()
            if tok.text in KEYWORDS:
                self.fail(f"keyword {tok.text!r} cannot be used as a set")
            self.advance()
            return Var(tok.text)
        if self.at("("):
            self.advance()
            e = self.expr()
            if not self.at(")"):
                self.fail(f"unbalanced parentheses: expected ')', found {self._describe(self.peek)}")
            self.advance()
            return e
        self.fail(f"expected a set expression, found {self._describe(tok)}")

    # constraints

    def constraint(self) -> SetConstraint:
        left = self._conjunction()
        while self.at("or"):
            self.advance()
            left = Or(left, self._conjunction())
        return left

    def _conjunction(self) -> SetConstraint:
        left = self._comparison()
        while self.at("and"):
            self.advance()
            left = And(left, self._comparison())
        return left

    def _comparison(self) -> SetConstraint:
        if self.at("true"):
            self.advance()
            return TrueC()
        if self.at("false"):
            self.advance()
            return FalseC()
        start = self.pos
        try:
            left = self.expr()
            if self.at("<="):
                self.advance()
                return Subset(left, self.expr())
            if self.at("=="):
                self.advance()
                return Equal(left, self.expr())
            self.fail(f"expected '<=' or '==', found {self._describe(self.peek)}")
        except SetSyntaxError:
            if not self.tokens[start].text == "(":
                raise
        # a parenthesized constraint rather than a parenthesized expression
        self.pos = start + 1
        k = self.constraint()
        if not self.at(")"):
            self.fail(f"unbalanced parentheses: expected ')', found {self._describe(self.peek)}")
        self.advance()
        return k

    def finish(self):
        if self.peek.kind != "eof":
            self.fail(f"unexpected {self._describe(self.peek)} after end of input")

    def best_error(self, err: SetSyntaxError) -> SetSyntaxError:
        return self._error or err


def _parse_with(text: str, rule):
    p = Parser(tokenize(text))
    try:
        result = rule(p)
        p.finish()
    except SetSyntaxError as err:
        raise p.best_error(err) from None
    return result


def parse_expr(text: str) -> SetExpr:
    return _parse_with(text, Parser.expr)


def parse_constraint(text: str) -> SetConstraint:
    return _parse_with(text, Parser.constraint)
