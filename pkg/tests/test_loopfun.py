"""Jet coefficients, the loop functional, and its structural identities."""

from __future__ import annotations

from fractions import Fraction

import pytest

from loopsing.exactalg import LoopPoly, LoopVar
from loopsing.loopfun import (
    DegreeTooLow,
    InputFunction,
    NotHomogeneous,
    Window,
    check_derivative_identity,
    check_support_bound,
    check_top_linearity,
    constant_loop_restriction,
    jet_coefficient,
    jet_coefficient_by_enumeration,
    lambda_of,
    minimal_window,
)

from conftest import build


def lv(coord: int, cdeg: int) -> LoopPoly:
    return LoopPoly.variable(LoopVar(coord, cdeg))


def quadric_lambda(n: int) -> LoopPoly:
    """z_0^2 + 2 sum_{j=1..n} z_j z_{-j}, assembled independently."""
    total = lv(1, 0) ** 2
    for j in range(1, n + 1):
        total = total + 2 * lv(1, j) * lv(1, -j)
    return total


class TestWindow:
    def test_bounds(self):
        w = Window(2, 3)
        assert (w.lo, w.hi) == (-2, 3)
        assert list(w.indices()) == [-2, -1, 0, 1, 2, 3]
        assert w.contains(0) and not w.contains(4)

    def test_rejects_bad_bounds(self):
        with pytest.raises(ValueError):
            Window(-1, 0)
        with pytest.raises(ValueError):
            Window(1, -2)

    def test_negative_top_allowed(self):
        assert list(Window(2, -1).indices()) == [-2, -1]


class TestInputFunction:
    def test_infers_dimensions(self):
        func = build("x^3 + y^3")
        assert (func.d, func.delta) == (2, 3)
        assert func.names == ("x", "y")

    def test_rejects_mixed_degrees(self):
        with pytest.raises(NotHomogeneous) as excinfo:
            build("x^2 + y^3")
        assert excinfo.value.degrees == (2, 3)

    def test_rejects_low_degree(self):
        with pytest.raises(DegreeTooLow):
            build("x + y")
        with pytest.raises(DegreeTooLow):
            build("3")

    def test_rejects_nonzero_cdeg_variables(self):
        with pytest.raises(ValueError):
            InputFunction(lv(1, 1) ** 2)

    def test_semantic_equality_ignores_coordinate_numbering(self):
        assert build("x^3 + y^3") == build("y^3 + x^3")
        assert build("x^3 + y^3") != build("x^3 + w^3")


class TestJetCoefficient:
    def test_quadric_window2(self):
        result = jet_coefficient(build("z^2"), Window(2, 2), 0)
        assert result == quadric_lambda(2)

    def test_no_degree_one_combinations(self):
        assert jet_coefficient(build("z^2"), Window(0, 0), 1) == LoopPoly.zero()

    def test_cubic_by_hand(self):
        expected = (
            lv(1, 0) ** 3
            + 6 * lv(1, -1) * lv(1, 0) * lv(1, 1)
            + 3 * lv(1, -1) ** 2 * lv(1, 2)
        )
        assert jet_coefficient(build("z^3"), Window(1, 2), 0) == expected

    @pytest.mark.parametrize("k", [-2, -1, 0, 1, 2])
    def test_conformal_weight_is_k(self, k):
        result = jet_coefficient(build("x^3 + y^3"), Window(1, 2), k)
        weights = result.weight_set(lambda v: v.cdeg)
        assert weights <= {k}

    @pytest.mark.parametrize("k", [-1, 0, 1, 3])
    def test_matches_enumeration_oracle_off_center(self, k):
        func = build("x^2 + y^2")
        w = Window(2, 2)
        assert jet_coefficient(func, w, k) == jet_coefficient_by_enumeration(func, w, k)


class TestLambda:
    @pytest.mark.parametrize("n", range(6))
    def test_quadric_closed_form(self, n):
        assert lambda_of(build("z^2"), Window(n, n)) == quadric_lambda(n)

    def test_product_of_coordinates(self):
        result = lambda_of(build("x*y"), Window(1, 1))
        expected = (
            lv(1, -1) * lv(2, 1) + lv(1, 0) * lv(2, 0) + lv(1, 1) * lv(2, -1)
        )
        assert result == expected

    def test_pole_free_window_gives_the_function_back(self, corpus_function):
        assert lambda_of(corpus_function, Window(0, 3)) == corpus_function.poly

    def test_linearity(self):
        f, g = build("x^3 + y^3"), build("x^2*y + y^3")
        w = Window(2, 4)
        a, b = Fraction(3), Fraction(-1, 2)
        combined = InputFunction(a * f.poly + b * g.poly, names=("x", "y"))
        assert lambda_of(combined, w) == a * lambda_of(f, w) + b * lambda_of(g, w)

    def test_window_stability(self, corpus_entry, corpus_function):
        for bottom in (1, 2):
            stable_top = bottom * (corpus_entry.delta - 1)
            base = lambda_of(corpus_function, Window(bottom, stable_top))
            wider = lambda_of(corpus_function, Window(bottom, stable_top + 3))
            assert wider == base

    def test_restriction_from_any_window(self):
        func = build("z^2")
        small = lambda_of(func, Window(1, 1))
        large = lambda_of(func, Window(3, 3))
        assert large.zero_out(lambda v: abs(v.cdeg) > 1) == small

    def test_oracle_equivalence(self, corpus_entry, corpus_function):
        if corpus_entry.delta > 4:
            pytest.skip("oracle budget is delta <= 4")
        for bottom in (0, 1, 2):
            w = minimal_window(corpus_function, bottom)
            assert lambda_of(corpus_function, w) == jet_coefficient_by_enumeration(
                corpus_function, w, 0
            )


class TestSupportBound:
    def test_quadric(self):
        report = check_support_bound(build("z^2"), 1)
        assert (report.max_cdeg_present, report.bound, report.ok) == (1, 1, True)

    def test_cubic(self):
        report = check_support_bound(build("z^3"), 1)
        assert (report.max_cdeg_present, report.bound, report.ok) == (2, 2, True)

    def test_fermat_cubic_b2(self):
        report = check_support_bound(build("x^3 + y^3"), 2)
        assert report.bound == 4 and report.ok

    @pytest.mark.parametrize("bottom", [0, 1, 2, 3])
    def test_holds_on_corpus(self, corpus_function, bottom):
        assert check_support_bound(corpus_function, bottom).ok


class TestTopLinearity:
    def test_quadric_decomposition(self):
        report = check_top_linearity(build("z^2"), 1)
        assert report.ok
        assert report.linear_part == 2 * lv(1, 1) * lv(1, -1)
        assert report.remainder == lv(1, 0) ** 2

    def test_cubic_decomposition(self):
        report = check_top_linearity(build("z^3"), 1)
        assert report.ok
        assert report.linear_part == 3 * lv(1, 2) * lv(1, -1) ** 2
        assert report.remainder == lv(1, 0) ** 3 + 6 * lv(1, -1) * lv(1, 0) * lv(1, 1)

    @pytest.mark.parametrize("bottom", [1, 2, 3])
    def test_holds_on_corpus(self, corpus_function, bottom):
        report = check_top_linearity(corpus_function, bottom)
        assert report.ok and not report.offending_monomials
        # the emitted decomposition really is a decomposition
        lam = lambda_of(corpus_function, report.window)
        assert report.linear_part + report.remainder == lam
        assert all(v.cdeg < report.top_cdeg for v in report.remainder.variables())


class TestDerivativeIdentity:
    def test_quadric(self):
        func = build("z^2")
        report = check_derivative_identity(func, 1)
        assert report.ok_per_coord == (True,)
        lam = lambda_of(func, Window(1, 1))
        assert lam.partial(LoopVar(1, 1)) == 2 * lv(1, -1)

    def test_cubic(self):
        func = build("z^3")
        report = check_derivative_identity(func, 1)
        assert report.ok
        lam = lambda_of(func, Window(1, 2))
        assert lam.partial(LoopVar(1, 2)) == 3 * lv(1, -1) ** 2

    def test_plane_quadric(self):
        func = build("x^2 + y^2")
        assert check_derivative_identity(func, 1).ok_per_coord == (True, True)
        lam = lambda_of(func, Window(1, 1))
        assert lam.partial(LoopVar(1, 1)) == 2 * lv(1, -1)
        assert lam.partial(LoopVar(2, 1)) == 2 * lv(2, -1)

    @pytest.mark.parametrize("bottom", [1, 2, 3])
    def test_both_routes_hold_on_corpus(self, corpus_function, bottom):
        report = check_derivative_identity(corpus_function, bottom)
        for check in report.checks:
            assert check.via_t_coefficient
            assert check.via_bottom_evaluation


class TestConstantLoopRestriction:
    def test_quadric(self):
        assert constant_loop_restriction(build("z^2"), Window(2, 2)) == lv(1, 0) ** 2

    def test_fermat_cubic(self):
        expected = lv(1, 0) ** 3 + lv(2, 0) ** 3
        assert constant_loop_restriction(build("x^3 + y^3"), Window(2, 4)) == expected

    def test_recovers_corpus_functions(self, corpus_function):
        w = minimal_window(corpus_function, 1)
        assert constant_loop_restriction(corpus_function, w) == corpus_function.poly

    def test_requires_zero_in_window(self):
        with pytest.raises(ValueError):
            constant_loop_restriction(build("z^2"), Window(2, -1))
