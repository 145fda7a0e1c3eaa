"""Text <-> MPoly conversion.

Grammar (lowest to highest precedence, all binary operators left-associative)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' exponent)*
    atom    := INTEGER | NAME | '(' expr ')'

``/`` is only allowed between constants, so ``2/3*x`` is fine and ``x/3`` is
not.  Exponents must evaluate to non-negative integer constants.  There is no
implicit multiplication and no floating point literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyring import REGISTRY, MPoly

__all__ = ["Token", "ParseError", "tokenize", "parse", "parse_equation", "format_poly"]

MAX_DEPTH = 200
MAX_EXPONENT = 4096

_PUNCT = {
    "+": "plus",
    "-": "minus",
    "*": "star",
    "^": "caret",
    "/": "slash",
    "(": "lparen",
    ")": "rparen",
}


class ParseError(ValueError):
    """Syntax or semantic error, with the byte offset where it was detected."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.reason = message


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("integer", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("variable", text[i:j], i))
            i = j
        elif ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, text, registry):
        self.text = text
        self.registry = set(registry)
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def offset(self):
        tok = self.peek()
        return tok.position if tok else len(self.text)

    def take(self, kind=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text!r}", tok.position)
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression", 0)
        value = self.expr()
        if self.peek() is not None:
            tok = self.peek()
            raise ParseError(f"unexpected {tok.text!r}", tok.position)
        return value

    # values are (MPoly, is_constant) pairs so '/' can be checked
    def expr(self):
        value = self.term()
        while self.peek() is not None and self.peek().kind in ("plus", "minus"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op.kind == "plus" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() is not None and self.peek().kind in ("star", "slash"):
            op = self.take()
            at = self.offset()
            rhs = self.unary()
            if op.kind == "star":
                value = value * rhs
            else:
                if not value.is_constant():
                    raise ParseError("'/' needs a constant numerator", op.position)
                if not rhs.is_constant():
                    raise ParseError("'/' needs a constant denominator", at)
                den = rhs.constant_value()
                if den == 0:
                    raise ParseError("division by zero", at)
                value = MPoly.constant(Fraction(value.constant_value()) / den)
        return value

    def unary(self):
        tok = self.peek()
        if tok is not None and tok.kind in ("minus", "plus"):
            self.take()
            self._enter(tok.position)
            value = self.unary()
            self.depth -= 1
            return -value if tok.kind == "minus" else value
        return self.power()

    def power(self):
        value = self.atom()
        while self.peek() is not None and self.peek().kind == "caret":
            self.take()
            value = value ** self.exponent()
        return value

    def exponent(self):
        at = self.offset()
        tok = self.peek()
        negative = False
        if tok is not None and tok.kind == "minus":
            self.take()
            negative = True
        value = self.atom()
        if not value.is_constant():
            raise ParseError("exponent must be a constant", at)
        k = value.constant_value()
        if negative and k != 0:
            raise ParseError("negative exponent", at)
        if Fraction(k).denominator != 1:
            raise ParseError("non-integer exponent", at)
        k = int(k)
        if k < 0:
            raise ParseError("negative exponent", at)
        if k > MAX_EXPONENT:
            raise ParseError("exponent too large", at)
        return k

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        if tok.kind == "integer":
            self.take()
            return MPoly.constant(int(tok.text))
        if tok.kind == "variable":
            self.take()
            if tok.text not in self.registry:
                raise ParseError(f"unknown identifier {tok.text!r}", tok.position)
            return MPoly.variable(tok.text)
        if tok.kind == "lparen":
            self.take()
            self._enter(tok.position)
            value = self.expr()
            self.depth -= 1
            self.take("rparen")
            return value
        raise ParseError(f"unexpected {tok.text!r}", tok.position)

    def _enter(self, position):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", position)


def parse(text, registry=REGISTRY):
    """Parse ``text`` into an :class:`MPoly` over the names in ``registry``."""
    return _Parser(text, registry).parse()


def parse_equation(text, registry=REGISTRY):
    """Parse ``"lhs = rhs"`` and return ``rhs - lhs``; plain expressions pass through."""
    if text.count("=") > 1:
        raise ParseError("more than one '='", text.index("=", text.index("=") + 1))
    if "=" not in text:
        return parse(text, registry)
    cut = text.index("=")
    lhs = text[:cut]
    try:
        left = parse(lhs, registry)
    except ParseError as err:
        raise ParseError(err.reason, err.offset) from None
    try:
        right = parse(text[cut + 1:], registry)
    except ParseError as err:
        raise ParseError(err.reason, err.offset + cut + 1) from None
    return right - left


def _format_coeff(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p):
    """Deterministic text form, e.g. ``"x^2 - 2/3*x*y + 1"``.

    Terms appear in graded lexicographic order over the variable registry.
    Non-rational coefficients (floats, complex) are printed with ``repr`` and
    do not round-trip through :func:`parse`.
    """
    if p.is_zero():
        return "0"
    pieces = []
    for mono, c in p.items():
        if isinstance(c, complex) or isinstance(c, float):
            factors = [n if k == 1 else f"{n}^{k}" for n, k in mono]
            pieces.append(("+", "*".join([f"({c!r})"] + factors)))
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = [n if k == 1 else f"{n}^{k}" for n, k in mono]
        if c != 1 or not factors:
            factors.insert(0, _format_coeff(c))
        pieces.append((sign, "*".join(factors)))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
