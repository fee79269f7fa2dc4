"""Recursive-descent parser for polynomial and radical-product expressions.

Grammar (one variable ``x``, exact rational literals)::

    radical := term '*' 'sqrt' '(' expr ')' | 'sqrt' '(' expr ')'
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' INTEGER)?
    atom    := NUMBER | 'x' | '(' expr ')'

NUMBER is ``123`` or ``1.25`` (decimals are read exactly, 0.25 -> 1/4).
``/`` only divides by a nonzero constant, so ``3/2`` is the rational 3/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeOverflow, ParseError, ZeroRadicand
from .polynomial import Poly

MAX_DEGREE = 64
MAX_EXPONENT = 1024
MAX_NESTING = 100

_OPERATORS = "+-*/"


@dataclass(frozen=True)
class Token:
    kind: str  # number | identifier | operator | paren | caret | end
    lexeme: str
    position: int


@dataclass(frozen=True)
class RadicalProduct:
    """x -> A(x) * sqrt(B(x))."""

    A: Poly
    B: Poly

    def __post_init__(self):
        if self.B.is_zero():
            raise ZeroRadicand(0, "radicand is the zero polynomial")


def tokenize(src: str) -> list[Token]:
    tokens = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch in " \t\r\n":
            i += 1
        elif ch.isascii() and ch.isdigit():
            start = i
            while i < n and src[i].isascii() and src[i].isdigit():
                i += 1
            if i < n and src[i] == ".":
                i += 1
                if not (i < n and src[i].isascii() and src[i].isdigit()):
                    raise ParseError(i, "expected digits after decimal point")
                while i < n and src[i].isascii() and src[i].isdigit():
                    i += 1
            tokens.append(Token("number", src[start:i], start))
        elif ch.isascii() and (ch.isalpha() or ch == "_"):
            start = i
            while i < n and src[i].isascii() and (src[i].isalnum() or src[i] == "_"):
                i += 1
            tokens.append(Token("identifier", src[start:i], start))
        elif ch in _OPERATORS:
            tokens.append(Token("operator", ch, i))
            i += 1
        elif ch in "()":
            tokens.append(Token("paren", ch, i))
            i += 1
        elif ch == "^":
            tokens.append(Token("caret", ch, i))
            i += 1
        else:
            raise ParseError(i, f"unexpected character {ch!r}")
    tokens.append(Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.pos = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "end":
            self.pos += 1
        return t

    def expect(self, kind: str, lexeme: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (lexeme is not None and t.lexeme != lexeme):
            want = repr(lexeme) if lexeme is not None else kind
            raise ParseError(t.position, f"expected {want}, found {_describe(t)}")
        return self.advance()

    def expect_end(self):
        if self.tok.kind != "end":
            raise ParseError(self.tok.position, f"expected end of input, found {_describe(self.tok)}")

    def at_sqrt_factor(self) -> bool:
        t1 = self.peek()
        return (
            self.tok.kind == "operator"
            and self.tok.lexeme == "*"
            and t1.kind == "identifier"
            and t1.lexeme == "sqrt"
        )

    def expr(self) -> Poly:
        value = self.term()
        while self.tok.kind == "operator" and self.tok.lexeme in "+-":
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op.lexeme == "+" else value - rhs
        return value

    def term(self, stop_at_sqrt: bool = False) -> Poly:
        value = self.unary()
        while self.tok.kind == "operator" and self.tok.lexeme in "*/":
            if stop_at_sqrt and self.at_sqrt_factor():
                break
            op = self.advance()
            rhs = self.unary()
            if op.lexeme == "*":
                if value.degree + rhs.degree > MAX_DEGREE:
                    raise DegreeOverflow(op.position, f"expansion exceeds degree {MAX_DEGREE}")
                value = value * rhs
            else:
                if rhs.degree > 0:
                    raise ParseError(op.position, "division by a non-constant polynomial")
                if rhs.is_zero():
                    raise ParseError(op.position, "division by zero")
                value = value / rhs[0]
        return value

    def unary(self) -> Poly:
        negate = False
        while self.tok.kind == "operator" and self.tok.lexeme in "+-":
            if self.advance().lexeme == "-":
                negate = not negate
        value = self.power()
        return -value if negate else value

    def power(self) -> Poly:
        base = self.atom()
        if self.tok.kind == "caret":
            caret = self.advance()
            t = self.tok
            if t.kind != "number" or "." in t.lexeme:
                raise ParseError(t.position, f"expected integer exponent, found {_describe(t)}")
            self.advance()
            n = int(t.lexeme)
            if n > MAX_EXPONENT:
                raise ParseError(t.position, f"exponent larger than {MAX_EXPONENT}")
            if base.degree > 0 and base.degree * n > MAX_DEGREE:
                raise DegreeOverflow(caret.position, f"expansion exceeds degree {MAX_DEGREE}")
            return base**n
        return base

    def atom(self) -> Poly:
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Poly([Fraction(t.lexeme)])
        if t.kind == "identifier":
            if t.lexeme == "x":
                self.advance()
                return Poly.x()
            if t.lexeme == "sqrt":
                raise ParseError(t.position, "sqrt is only allowed as the radical factor")
            raise ParseError(
                t.position, f"unknown identifier {t.lexeme!r} (substitute parameters before parsing)"
            )
        if t.kind == "paren" and t.lexeme == "(":
            if self.depth >= MAX_NESTING:
                raise ParseError(t.position, f"parentheses nested deeper than {MAX_NESTING}")
            self.advance()
            self.depth += 1
            value = self.expr()
            self.depth -= 1
            self.expect("paren", ")")
            return value
        raise ParseError(t.position, f"expected number, 'x' or '(', found {_describe(t)}")


def _describe(t: Token) -> str:
    return "end of input" if t.kind == "end" else repr(t.lexeme)


def _text(src) -> str:
    if isinstance(src, (bytes, bytearray)):
        try:
            return bytes(src).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(exc.start, "input is not valid UTF-8") from None
    if not isinstance(src, str):
        raise TypeError("expression must be str or bytes")
    return src


def parse_poly(src) -> Poly:
    src = _text(src)
    if not src.strip():
        raise ParseError(0, "empty expression")
    p = _Parser(src)
    value = p.expr()
    p.expect_end()
    return value


def parse_radical(src) -> RadicalProduct:
    """Parse ``(<poly>)*sqrt(<poly>)`` or ``sqrt(<poly>)``."""
    src = _text(src)
    if not src.strip():
        raise ParseError(0, "empty expression")
    p = _Parser(src)
    if p.tok.kind == "identifier" and p.tok.lexeme == "sqrt":
        a = Poly([1])
    else:
        a = p.term(stop_at_sqrt=True)
        if not p.at_sqrt_factor():
            raise ParseError(p.tok.position, f"expected '*sqrt(...)', found {_describe(p.tok)}")
        p.advance()
    sqrt_tok = p.expect("identifier", "sqrt")
    p.expect("paren", "(")
    b = p.expr()
    p.expect("paren", ")")
    p.expect_end()
    if b.is_zero():
        raise ZeroRadicand(sqrt_tok.position, "radicand is the zero polynomial")
    return RadicalProduct(a, b)


def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def print_canonical(p: Poly) -> str:
    """Descending-degree text that parses back to the identical polynomial."""
    if p.is_zero():
        return "0"
    parts = []
    for n in range(p.degree, -1, -1):
        c = p[n]
        if c == 0:
            continue
        mag = abs(c)
        if n == 0:
            body = _coeff_text(mag)
        else:
            mono = "x" if n == 1 else f"x^{n}"
            body = mono if mag == 1 else f"{_coeff_text(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def print_radical(rp: RadicalProduct) -> str:
    return f"({print_canonical(rp.A)})*sqrt({print_canonical(rp.B)})"
