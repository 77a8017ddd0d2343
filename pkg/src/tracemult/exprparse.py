"""Recursive-descent parser for polynomial and rational-function expressions.

Grammar (LL(1), explicit '*' required, no juxtaposition):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' nonneg-int)?
    base   := int | ident | '(' expr ')' | '-' base

Whitespace is ignored; identifiers are restricted to x, y, t, u, v.  Syntax
errors carry the byte offset and the set of tokens that would have been
accepted there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .mpoly import MPoly, NotDivisible, RatFun

ALLOWED_IDENTS = ("t", "u", "v", "x", "y")


class ParseError(ValueError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        if self.expected:
            message = f"{message} at offset {offset}, expected one of: {', '.join(self.expected)}"
        else:
            message = f"{message} at offset {offset}"
        super().__init__(message)


class UnknownIdentifier(ParseError):
    def __init__(self, name, offset):
        self.name = name
        super().__init__(f"unknown identifier '{name}'", offset, ALLOWED_IDENTS)


# -- AST -----------------------------------------------------------------------


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Group:
    inner: object


# -- tokenizer -------------------------------------------------------------------

_SYMBOLS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, label):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError("syntax error", tok[2], {label})
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("trailing input", tok[2], {"+", "-", "*", "/", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self):
        node = self.base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("syntax error", tok[2], {"nonnegative integer"})
            self.advance()
            node = Pow(node, tok[1])
        return node

    def base(self):
        tok = self.peek()
        if tok[0] == "int":
            self.advance()
            return IntLit(tok[1])
        if tok[0] == "ident":
            self.advance()
            if tok[1] not in ALLOWED_IDENTS:
                raise UnknownIdentifier(tok[1], tok[2])
            return Name(tok[1])
        if tok[0] == "(":
            self.advance()
            inner = self.expr()
            close = self.peek()
            if close[0] != ")":
                raise ParseError("syntax error", close[2], {")"})
            self.advance()
            return Group(inner)
        if tok[0] == "-":
            self.advance()
            return Neg(self.base())
        raise ParseError("syntax error", tok[2], {"integer", "identifier", "(", "-"})


def parse_expr(text):
    """Parse an expression to its AST; raises ParseError with offset info."""
    return _Parser(text).parse()


# -- lowering ----------------------------------------------------------------------


def to_ratfun(node):
    """Lower an AST (or source text) to a rational function; always total."""
    if isinstance(node, str):
        node = parse_expr(node)
    return _lower(node)


def to_mpoly(node):
    """Lower to a polynomial; fails when a non-unit denominator remains."""
    value = to_ratfun(node)
    return value.as_mpoly()


def _lower(node):
    if isinstance(node, IntLit):
        return RatFun.const(node.value)
    if isinstance(node, Name):
        return RatFun.from_mpoly(MPoly.var(node.ident))
    if isinstance(node, Group):
        return _lower(node.inner)
    if isinstance(node, Neg):
        return -_lower(node.operand)
    if isinstance(node, Add):
        return _lower(node.left) + _lower(node.right)
    if isinstance(node, Sub):
        return _lower(node.left) - _lower(node.right)
    if isinstance(node, Mul):
        return _lower(node.left) * _lower(node.right)
    if isinstance(node, Div):
        return _lower(node.left) / _lower(node.right)
    if isinstance(node, Pow):
        return _lower(node.base) ** node.exponent
    raise TypeError(f"unexpected AST node {type(node).__name__}")


# -- printing ----------------------------------------------------------------------


def ast_to_text(node):
    """Canonical text of an AST; parsing the output reproduces the AST."""
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Group):
        return f"({ast_to_text(node.inner)})"
    if isinstance(node, Neg):
        return f"-{ast_to_text(node.operand)}"
    if isinstance(node, Add):
        return f"{ast_to_text(node.left)}+{ast_to_text(node.right)}"
    if isinstance(node, Sub):
        return f"{ast_to_text(node.left)}-{_guard_term(node.right)}"
    if isinstance(node, Mul):
        return f"{_guard_factor(node.left)}*{_guard_factor(node.right)}"
    if isinstance(node, Div):
        return f"{_guard_factor(node.left)}/{_guard_factor(node.right)}"
    if isinstance(node, Pow):
        return f"{_guard_base(node.base)}^{node.exponent}"
    raise TypeError(f"unexpected AST node {type(node).__name__}")


def _guard_term(node):
    text = ast_to_text(node)
    if isinstance(node, (Add, Sub)):
        return f"({text})"
    return text


def _guard_factor(node):
    text = ast_to_text(node)
    if isinstance(node, (Add, Sub, Mul, Div)):
        return f"({text})"
    return text


def _guard_base(node):
    text = ast_to_text(node)
    if isinstance(node, (IntLit, Name, Group)):
        return text
    return f"({text})"
