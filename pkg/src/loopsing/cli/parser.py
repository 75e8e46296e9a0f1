"""Expression parser and printer for ambient polynomials.

Grammar: identifiers [A-Za-z][A-Za-z0-9]* are variables, integer and rational
(p/q) literals are constants, operators are + - * ^ with precedence
^ > * > unary minus > binary +/-, explicit * is required (no juxtaposition),
parentheses group.  Ambient coordinates are numbered in order of first
occurrence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exactalg import LoopPoly, LoopVar
from ..loopfun import InputFunction

__all__ = [
    "ParseError",
    "parse_polynomial",
    "parse_function",
    "read_function_file",
    "format_function",
    "poly_to_source",
    "loop_poly_string",
]


class ParseError(ValueError):
    """Syntax error with position and the tokens that were expected."""

    def __init__(self, position: int, expected: str, found: str):
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(
            f"syntax error at position {position}: expected {expected}, found {found}"
        )


_TOKEN_RE = re.compile(r"(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*^()/])")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        if source[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise ParseError(pos, "a number, variable or operator", repr(source[pos]))
        kind = match.lastgroup or "op"
        tokens.append(_Token(kind, match.group(), pos))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.cursor = 0
        self.coords: dict[str, int] = {}

    def _peek(self) -> _Token | None:
        return self.tokens[self.cursor] if self.cursor < len(self.tokens) else None

    def _take(self) -> _Token:
        token = self._peek()
        if token is None:
            raise ParseError(len(self.source), "more input", "end of input")
        self.cursor += 1
        return token

    def _fail(self, expected: str) -> ParseError:
        token = self._peek()
        if token is None:
            return ParseError(len(self.source), expected, "end of input")
        return ParseError(token.position, expected, repr(token.text))

    def parse(self) -> tuple[LoopPoly, tuple[str, ...]]:
        poly = self._expression()
        if self._peek() is not None:
            raise self._fail("'+', '-' or end of input")
        names = tuple(sorted(self.coords, key=self.coords.__getitem__))
        return poly, names

    def _expression(self) -> LoopPoly:
        poly = self._signed()
        while True:
            token = self._peek()
            if token is None or token.text not in ("+", "-"):
                return poly
            self._take()
            operand = self._signed()
            poly = poly + operand if token.text == "+" else poly - operand

    def _signed(self) -> LoopPoly:
        token = self._peek()
        if token is not None and token.text == "-":
            self._take()
            return -self._signed()
        return self._product()

    def _product(self) -> LoopPoly:
        poly = self._power()
        while True:
            token = self._peek()
            if token is None or token.text != "*":
                return poly
            self._take()
            poly = poly * self._power()

    def _power(self) -> LoopPoly:
        base = self._atom()
        token = self._peek()
        if token is not None and token.text == "^":
            self._take()
            exp_token = self._peek()
            if exp_token is None or exp_token.kind != "int":
                raise self._fail("an integer exponent")
            self._take()
            return base ** int(exp_token.text)
        return base

    def _atom(self) -> LoopPoly:
        token = self._peek()
        if token is None:
            raise self._fail("a number, variable or '('")
        if token.kind == "int":
            self._take()
            numerator = int(token.text)
            nxt = self._peek()
            if nxt is not None and nxt.text == "/":
                self._take()
                den_token = self._peek()
                if den_token is None or den_token.kind != "int":
                    raise self._fail("an integer denominator")
                self._take()
                if int(den_token.text) == 0:
                    raise ParseError(den_token.position, "a nonzero denominator", "0")
                return LoopPoly.constant(Fraction(numerator, int(den_token.text)))
            return LoopPoly.constant(numerator)
        if token.kind == "name":
            self._take()
            coord = self.coords.setdefault(token.text, len(self.coords) + 1)
            return LoopPoly.variable(LoopVar(coord, 0))
        if token.text == "(":
            self._take()
            inner = self._expression()
            closing = self._peek()
            if closing is None or closing.text != ")":
                raise self._fail("')'")
            self._take()
            return inner
        raise self._fail("a number, variable or '('")


def parse_polynomial(source: str) -> tuple[LoopPoly, tuple[str, ...]]:
    """Parse an expression into an ambient polynomial plus coordinate names."""
    return _Parser(source).parse()


def parse_function(source: str) -> InputFunction:
    """Parse and validate a homogeneous input function.

    The coordinate count is inferred from the variable set and the degree from
    homogeneity; mixed degrees raise NotHomogeneous with the offending pair,
    degree below 2 raises DegreeTooLow.
    """
    poly, names = parse_polynomial(source)
    return InputFunction(poly, names=names or None)


def read_function_file(path: str) -> str:
    """Read one expression from a file, skipping leading # comment lines."""
    with open(path, encoding="utf-8") as fh:
        lines = [line.strip() for line in fh]
    body = [line for line in lines if line and not line.startswith("#")]
    return " ".join(body)


def _coefficient_source(coeff: Fraction) -> str:
    mag = abs(coeff)
    return str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"


def poly_to_source(poly: LoopPoly, names: Sequence[str]) -> str:
    """Render an ambient polynomial back into the expression grammar."""
    if poly.is_zero:
        return "0"
    parts: list[str] = []
    for i, (mono, coeff) in enumerate(poly.terms):
        factors = "*".join(
            names[v.coord - 1] if e == 1 else f"{names[v.coord - 1]}^{e}"
            for v, e in mono.factors
        )
        mag = abs(coeff)
        if mono.is_unit:
            body = _coefficient_source(coeff)
        elif mag == 1:
            body = factors
        else:
            body = f"{_coefficient_source(coeff)}*{factors}"
        if i == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def format_function(func: InputFunction) -> str:
    """Canonical source form of an input function; reparses to an equal one."""
    return poly_to_source(func.poly, func.names)


def loop_poly_string(poly: LoopPoly, names: Sequence[str]) -> str:
    """Display form of a loop polynomial, variables as name_cdeg (e.g. x_-2)."""
    return poly.to_string(names)
