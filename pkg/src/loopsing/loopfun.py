"""Truncated Laurent jets of polynomial functions on affine space.

Substituting the universal Laurent series z^i(t) = sum_j z^i_j t^j into a
homogeneous polynomial F and extracting t-coefficients produces functions on
the loop space of A^d; the constant term is the loop functional of F.  This
module computes those coefficients on finite windows of conformal degrees and
machine-checks the structural identities that they satisfy: the support bound
on conformal degrees, linearity in the top-degree variables, and the two forms
of the top-variable derivative identity.

Everything here is a pure function over immutable inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import UNIT, LoopPoly, LoopVar, Monomial

__all__ = [
    "Window",
    "InputFunction",
    "NotHomogeneous",
    "DegreeTooLow",
    "jet_coefficient",
    "jet_coefficient_by_enumeration",
    "lambda_of",
    "minimal_window",
    "check_support_bound",
    "check_top_linearity",
    "check_derivative_identity",
    "constant_loop_restriction",
    "SupportBoundReport",
    "TopLinearityReport",
    "DerivativeIdentityReport",
]


class NotHomogeneous(ValueError):
    """The input polynomial mixes two different total degrees."""

    def __init__(self, degree_a: int, degree_b: int):
        self.degrees = (degree_a, degree_b)
        super().__init__(
            f"not homogeneous: monomials of degrees {degree_a} and {degree_b}"
        )


class DegreeTooLow(ValueError):
    """The input polynomial has degree < 2 (no genuine singularity)."""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"homogeneity degree must be >= 2, got {degree}")


@dataclass(frozen=True)
class Window:
    """The closed interval [-bottom, top] of allowed conformal degrees.

    `bottom` bounds the pole order (cdeg >= -bottom), `top` the positive tail.
    """

    bottom: int
    top: int

    def __post_init__(self) -> None:
        if self.bottom < 0:
            raise ValueError(f"window bottom must be nonnegative, got {self.bottom}")
        if self.top < -self.bottom:
            raise ValueError(
                f"window top {self.top} lies below -bottom = {-self.bottom}"
            )

    @property
    def lo(self) -> int:
        return -self.bottom

    @property
    def hi(self) -> int:
        return self.top

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)

    def contains(self, cdeg: int) -> bool:
        return self.lo <= cdeg <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


class InputFunction:
    """A nonzero homogeneous polynomial of degree >= 2 in d ambient coordinates.

    The ambient coordinates are represented by the conformal-degree-0 variables
    z^1_0, ..., z^d_0.  Optional display names (one per coordinate) are carried
    along for parsing and report rendering.
    """

    def __init__(self, poly: LoopPoly, names: Sequence[str] | None = None):
        if poly.is_zero:
            raise DegreeTooLow(0)
        variables = poly.variables()
        if any(v.cdeg != 0 for v in variables):
            raise ValueError("ambient polynomial must use conformal degree 0 only")
        coords = sorted({v.coord for v in variables})
        if coords != list(range(1, len(coords) + 1)):
            raise ValueError(f"coordinates must be contiguous from 1, got {coords}")
        degrees = sorted(poly.weight_set(lambda v: 1))
        if len(degrees) > 1:
            raise NotHomogeneous(degrees[0], degrees[-1])
        if degrees[0] < 2:
            raise DegreeTooLow(degrees[0])

        self.d = len(coords)
        self.delta = degrees[0]
        self.poly = poly
        if names is None:
            names = ("z",) if self.d == 1 else tuple(f"z{i}" for i in coords)
        names = tuple(names)
        if len(names) != self.d or len(set(names)) != self.d:
            raise ValueError(f"need {self.d} distinct coordinate names, got {names}")
        self.names = names

    def partials(self) -> tuple[LoopPoly, ...]:
        """The d partial derivatives, in coordinate order."""
        return tuple(self.poly.partial(LoopVar(i, 0)) for i in range(1, self.d + 1))

    def _named_terms(self) -> frozenset:
        return frozenset(
            (
                tuple(sorted((self.names[v.coord - 1], e) for v, e in mono.factors)),
                coeff,
            )
            for mono, coeff in self.poly.terms
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InputFunction):
            return NotImplemented
        return (
            self.d == other.d
            and self.delta == other.delta
            and self._named_terms() == other._named_terms()
        )

    def __repr__(self) -> str:
        return (
            f"InputFunction(d={self.d}, delta={self.delta}, "
            f"poly={self.poly.to_string(self.names)})"
        )


def minimal_window(func: InputFunction, bottom: int) -> Window:
    """Smallest window that already determines the loop functional.

    With poles bounded by `bottom`, no variable of conformal degree above
    bottom*(delta-1) can occur, so the window [-bottom, bottom*(delta-1)] is
    stable: enlarging the top changes nothing.
    """
    return Window(bottom, bottom * (func.delta - 1))


def _jet_of_poly(poly: LoopPoly, window: Window, k: int) -> LoopPoly:
    """Coefficient of t^k after substituting windowed Laurent series.

    Expands monomial by monomial as an iterated convolution over the t-degree,
    pruning t-degrees that can no longer reach k given the remaining factors.
    """
    lo, hi = window.lo, window.hi
    acc: dict[Monomial, Fraction] = {}
    for mono, coeff in poly.terms:
        slots = [v.coord for v, e in mono.factors for _ in range(e)]
        state: dict[int, dict[Monomial, Fraction]] = {0: {UNIT: coeff}}
        for position, coord in enumerate(slots):
            remaining = len(slots) - position - 1
            grown: dict[int, dict[Monomial, Fraction]] = {}
            for t_deg, bucket in state.items():
                for j in range(lo, hi + 1):
                    t_next = t_deg + j
                    if t_next + remaining * lo > k or t_next + remaining * hi < k:
                        continue
                    var = LoopVar(coord, j)
                    target = grown.setdefault(t_next, {})
                    for m, c in bucket.items():
                        m2 = m.mul_var(var)
                        target[m2] = target.get(m2, Fraction(0)) + c
            state = grown
        for m, c in state.get(k, {}).items():
            acc[m] = acc.get(m, Fraction(0)) + c
    return LoopPoly(acc)


def jet_coefficient(func: InputFunction, window: Window, k: int) -> LoopPoly:
    """The t^k coefficient of F(z^1(t), ..., z^d(t)) on the given window.

    Every monomial of the result has conformal degrees summing to k.
    """
    return _jet_of_poly(func.poly, window, k)


def jet_coefficient_by_enumeration(
    func: InputFunction, window: Window, k: int
) -> LoopPoly:
    """Brute-force oracle for jet_coefficient.

    Enumerates every assignment of window indices to the factor slots of every
    monomial, with no pruning and no shared code with the convolution route.
    Feasible only for small degree/window combinations.
    """
    indices = list(window.indices())
    acc: dict[Monomial, Fraction] = {}
    for mono, coeff in func.poly.terms:
        slots = [v.coord for v, e in mono.factors for _ in range(e)]
        for assignment in itertools.product(indices, repeat=len(slots)):
            if sum(assignment) != k:
                continue
            m = Monomial(tuple((LoopVar(c, j), 1) for c, j in zip(slots, assignment)))
            acc[m] = acc.get(m, Fraction(0)) + coeff
    return LoopPoly(acc)


def lambda_of(func: InputFunction, window: Window) -> LoopPoly:
    """The loop functional of F on a window: the constant-in-t coefficient.

    Checks on the way out that the result is of pure conformal weight 0 and of
    pure scaling weight delta; a violation would be an arithmetic bug.
    """
    result = _jet_of_poly(func.poly, window, 0)
    cdeg_weights = result.weight_set(lambda v: v.cdeg)
    if cdeg_weights not in (frozenset(), frozenset({0})):
        raise RuntimeError(f"loop functional has conformal weights {set(cdeg_weights)}")
    scale_weights = result.weight_set(lambda v: 1)
    if scale_weights not in (frozenset(), frozenset({func.delta})):
        raise RuntimeError(f"loop functional has scaling weights {set(scale_weights)}")
    return result


@dataclass(frozen=True)
class SupportBoundReport:
    bound: int
    max_cdeg_present: int
    ok: bool
    window: Window


def check_support_bound(func: InputFunction, bottom: int) -> SupportBoundReport:
    """Verify that no variable of conformal degree > bottom*(delta-1) occurs.

    The functional is computed on a window reaching strictly beyond the bound,
    so the check is not vacuous.
    """
    if bottom < 0:
        raise ValueError("bottom must be nonnegative")
    bound = bottom * (func.delta - 1)
    window = Window(bottom, bound + func.delta)
    lam = lambda_of(func, window)
    max_present = max(v.cdeg for v in lam.variables())
    return SupportBoundReport(
        bound=bound,
        max_cdeg_present=max_present,
        ok=max_present <= bound,
        window=window,
    )


@dataclass(frozen=True)
class TopLinearityReport:
    ok: bool
    top_cdeg: int
    offending_monomials: tuple[Monomial, ...]
    linear_part: LoopPoly
    remainder: LoopPoly
    window: Window


def check_top_linearity(func: InputFunction, bottom: int) -> TopLinearityReport:
    """Verify that each monomial of the functional is linear in top variables.

    With N = bottom*(delta-1), monomials of the functional can carry at most
    one factor of conformal degree N, so the functional decomposes as

        sum_j z^j_N * d(functional)/d(z^j_N)  +  remainder

    with the remainder free of conformal-degree-N variables.  The decomposition
    is returned as (linear_part, remainder).
    """
    if bottom < 1:
        raise ValueError("bottom must be >= 1")
    top = bottom * (func.delta - 1)
    window = Window(bottom, top)
    lam = lambda_of(func, window)

    offending = tuple(
        mono
        for mono, _ in lam.terms
        if sum(e for v, e in mono.factors if v.cdeg == top) > 1
    )
    linear = LoopPoly()
    for j in range(1, func.d + 1):
        var = LoopVar(j, top)
        linear = linear + LoopPoly.variable(var) * lam.partial(var)
    remainder = lam - linear
    ok = not offending
    if ok and any(v.cdeg == top for v in remainder.variables()):
        raise RuntimeError("remainder unexpectedly contains top-degree variables")
    return TopLinearityReport(
        ok=ok,
        top_cdeg=top,
        offending_monomials=offending,
        linear_part=linear,
        remainder=remainder,
        window=window,
    )


@dataclass(frozen=True)
class CoordinateDerivativeCheck:
    coord: int
    via_t_coefficient: bool
    via_bottom_evaluation: bool

    @property
    def ok(self) -> bool:
        return self.via_t_coefficient and self.via_bottom_evaluation


@dataclass(frozen=True)
class DerivativeIdentityReport:
    checks: tuple[CoordinateDerivativeCheck, ...]
    top_cdeg: int
    window: Window

    @property
    def ok_per_coord(self) -> tuple[bool, ...]:
        return tuple(chk.ok for chk in self.checks)

    @property
    def ok(self) -> bool:
        return all(self.ok_per_coord)


def check_derivative_identity(
    func: InputFunction, bottom: int
) -> DerivativeIdentityReport:
    """Verify both forms of the top-variable derivative identity.

    With N = bottom*(delta-1), for each coordinate j the derivative of the
    loop functional with respect to z^j_N equals

      (i)  the t^(-N) coefficient of (d_j F)(z^1(t), ..., z^d(t)), and
      (ii) d_j F evaluated at z^i -> z^i_{-bottom} for all i.

    Form (ii) evaluates at the most negative window index: the derivative of
    the functional has conformal weight -N and d_j F is homogeneous of degree
    delta-1, which forces every factor down to degree -bottom.
    """
    if bottom < 1:
        raise ValueError("bottom must be >= 1")
    top = bottom * (func.delta - 1)
    window = Window(bottom, top)
    lam = lambda_of(func, window)

    checks = []
    for j in range(1, func.d + 1):
        lhs = lam.partial(LoopVar(j, top))
        d_j = func.poly.partial(LoopVar(j, 0))
        via_coeff = _jet_of_poly(d_j, window, -top)
        via_eval = d_j.map_variables(lambda v: LoopVar(v.coord, -bottom))
        checks.append(
            CoordinateDerivativeCheck(
                coord=j,
                via_t_coefficient=lhs == via_coeff,
                via_bottom_evaluation=lhs == via_eval,
            )
        )
    return DerivativeIdentityReport(checks=tuple(checks), top_cdeg=top, window=window)


def constant_loop_restriction(func: InputFunction, window: Window) -> LoopPoly:
    """Restrict the loop functional to constant loops.

    Setting every variable of nonzero conformal degree to zero must recover F
    itself in the degree-0 variables.
    """
    if not window.contains(0):
        raise ValueError(f"window {window} does not contain 0")
    restricted = lambda_of(func, window).zero_out(lambda v: v.cdeg != 0)
    if restricted != func.poly:
        raise RuntimeError("constant-loop restriction does not recover the input")
    return restricted
