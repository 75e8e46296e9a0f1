"""Expression grammar, error reporting, and print/parse round trips."""

from __future__ import annotations

from fractions import Fraction

import pytest

from loopsing.cli import (
    ParseError,
    format_function,
    parse_function,
    parse_polynomial,
    read_function_file,
)
from loopsing.exactalg import LoopVar, Monomial
from loopsing.loopfun import DegreeTooLow, NotHomogeneous

from conftest import CORPUS, NON_ISOLATED_SOURCES


class TestGrammar:
    def test_quadric(self):
        func = parse_function("z^2")
        assert (func.d, func.delta) == (1, 2)
        assert func.names == ("z",)

    def test_fermat_cubic(self):
        func = parse_function("x^3 + y^3")
        assert (func.d, func.delta) == (2, 3)

    def test_first_occurrence_coordinate_order(self):
        poly, names = parse_polynomial("y^3 + x^3")
        assert names == ("y", "x")
        assert poly.coefficient(Monomial({LoopVar(1, 0): 3})) == 1

    def test_rational_coefficients(self):
        poly, _ = parse_polynomial("1/2*x^2 + 3*x*y - y^2")
        assert poly.coefficient(Monomial({LoopVar(1, 0): 2})) == Fraction(1, 2)
        assert poly.coefficient(Monomial({LoopVar(1, 0): 1, LoopVar(2, 0): 1})) == 3
        assert poly.coefficient(Monomial({LoopVar(2, 0): 2})) == -1

    def test_unary_minus_binds_below_product(self):
        poly, _ = parse_polynomial("-x*y")
        assert poly.coefficient(Monomial({LoopVar(1, 0): 1, LoopVar(2, 0): 1})) == -1

    def test_parentheses(self):
        poly, _ = parse_polynomial("(x + y)^2")
        expanded, _ = parse_polynomial("x^2 + 2*x*y + y^2")
        assert poly == expanded

    def test_multiline_whitespace(self):
        assert parse_function("x^3\n  + y^3") == parse_function("x^3 + y^3")

    def test_multidigit_numbers(self):
        poly, _ = parse_polynomial("12*x^10")
        assert poly.coefficient(Monomial({LoopVar(1, 0): 10})) == 12


class TestErrors:
    @pytest.mark.parametrize(
        "source",
        ["x +", "x ** 2", "2x", "x y", "(x + y", "x ^ y", "^2", "1/0", "x$"],
    )
    def test_syntax_errors(self, source):
        with pytest.raises(ParseError):
            parse_function(source)

    def test_error_carries_position_and_expectation(self):
        with pytest.raises(ParseError) as excinfo:
            parse_function("x + * y")
        assert excinfo.value.position == 4
        assert "expected" in str(excinfo.value)

    def test_not_homogeneous_reports_degree_pair(self):
        with pytest.raises(NotHomogeneous) as excinfo:
            parse_function("x^2 + y^3")
        assert excinfo.value.degrees == (2, 3)

    def test_degree_too_low(self):
        with pytest.raises(DegreeTooLow):
            parse_function("x")
        with pytest.raises(DegreeTooLow):
            parse_function("7")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_function("")


class TestRoundTrip:
    @pytest.mark.parametrize(
        "source",
        [entry.source for entry in CORPUS]
        + list(NON_ISOLATED_SOURCES)
        + ["1/2*x^2 + 1/2*y^2", "-x^2 - y^2", "(x + y)^3"],
    )
    def test_print_then_parse_is_identity(self, source):
        func = parse_function(source)
        assert parse_function(format_function(func)) == func

    def test_printed_form_uses_the_grammar(self):
        text = format_function(parse_function("y^3 + 2*x^2*y - 1/3*x^3"))
        assert "^" in text and "*" in text
        assert "_" not in text  # ambient rendering, no conformal indices


class TestFunctionFile:
    def test_comments_are_skipped(self, tmp_path):
        path = tmp_path / "input.txt"
        path.write_text("# the plane cubic\n# second comment\nx^3 + y^3\n")
        assert read_function_file(str(path)) == "x^3 + y^3"

    def test_expression_may_span_lines(self, tmp_path):
        path = tmp_path / "input.txt"
        path.write_text("# comment\nx^3 +\ny^3\n")
        assert parse_function(read_function_file(str(path))) == parse_function("x^3 + y^3")
