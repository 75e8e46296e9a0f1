"""Ring operations, canonical form, and the exact-coefficient invariants."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopsing.exactalg import (
    LoopPoly,
    LoopVar,
    MissingAssignment,
    Monomial,
    Rational,
    add,
    grading,
    mul,
    partial,
    substitute,
)


def var(coord: int, cdeg: int) -> LoopPoly:
    return LoopPoly.variable(LoopVar(coord, cdeg))


z0, z1, zm1 = var(1, 0), var(1, 1), var(1, -1)
y0 = var(2, 0)


def test_rational_invariants():
    assert Rational(2, 4) == Rational(1, 2)
    assert Rational(3, -6).denominator == 2
    assert Rational(3, -6).numerator == -1
    zero = Rational(0, 7)
    assert (zero.numerator, zero.denominator) == (0, 1)


def test_loopvar_order_is_cdeg_major():
    assert LoopVar(2, -1) < LoopVar(1, 0) < LoopVar(2, 0) < LoopVar(1, 1)


def test_add_examples():
    x, y = z0, y0
    assert add(x + y, x - y) == 2 * x
    p = z0**2 + 2 * z1 * zm1
    assert add(p, LoopPoly.zero()) == p
    assert add(p, -(z0**2)) == 2 * z1 * zm1


def test_mul_examples():
    assert mul(z0, z0) == z0**2
    assert mul(z1 + zm1, z1 - zm1) == z1**2 - zm1**2


def _naive_mul(p: LoopPoly, q: LoopPoly) -> LoopPoly:
    # Oracle: expand term against term and accumulate by repeated addition.
    total = LoopPoly.zero()
    for mono, coeff in p.terms:
        for other, c2 in q.terms:
            total = total + LoopPoly.term(mono.mul(other), coeff * c2)
    return total


def test_mul_matches_naive_expansion():
    rng = random.Random(20240817)
    variables = [LoopVar(c, j) for c in (1, 2) for j in (-2, -1, 0, 1)]
    for _ in range(25):
        polys = []
        for _ in range(2):
            terms = {}
            for _ in range(rng.randint(0, 8)):
                mono = Monomial(
                    [(rng.choice(variables), rng.randint(1, 3)) for _ in range(rng.randint(0, 3))]
                )
                terms[mono] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            polys.append(LoopPoly(terms))
        p, q = polys
        assert mul(p, q) == _naive_mul(p, q)


def test_partial_examples():
    p = z0**2 + 2 * z1 * zm1
    assert partial(p, LoopVar(1, 1)) == 2 * zm1
    assert partial(LoopPoly.constant(7), LoopVar(1, 0)) == LoopPoly.zero()
    assert partial(z0**3, LoopVar(1, 0)) == 3 * z0**2


def test_substitute_binomial():
    assert substitute(z0**2, {LoopVar(1, 0): z0 + z1}) == z0**2 + 2 * z0 * z1 + z1**2


def test_substitute_identity():
    p = z0**2 + 2 * z1 * zm1 - y0
    identity = {v: LoopPoly.variable(v) for v in p.variables()}
    assert substitute(p, identity) == p


def test_substitute_cube():
    image = zm1 + z0
    expected = zm1**3 + 3 * zm1**2 * z0 + 3 * zm1 * z0**2 + z0**3
    assert substitute(z0**3, {LoopVar(1, 0): image}) == expected


def test_substitute_missing_assignment():
    with pytest.raises(MissingAssignment):
        substitute(z0 * y0, {LoopVar(1, 0): z0})


def test_grading_examples():
    lam = z0**2 + 2 * z1 * zm1
    assert grading(lam, lambda v: v.cdeg) == {0}
    assert grading(lam, lambda v: 1) == {2}
    assert grading(LoopPoly.zero(), lambda v: v.cdeg) == set()


def test_grading_accepts_mapping():
    p = z0 * y0
    weights = {LoopVar(1, 0): 1, LoopVar(2, 0): 5}
    assert grading(p, weights) == {6}


def test_canonical_form_is_insertion_order_independent():
    items = [
        (Monomial({LoopVar(1, 0): 2}), Fraction(1)),
        (Monomial({LoopVar(1, 1): 1, LoopVar(1, -1): 1}), Fraction(2)),
        (Monomial({LoopVar(2, 0): 1}), Fraction(-3)),
        (Monomial({LoopVar(1, 0): 2}), Fraction(2)),
    ]
    rng = random.Random(7)
    reference = LoopPoly(items)
    for _ in range(10):
        shuffled = items[:]
        rng.shuffle(shuffled)
        other = LoopPoly(shuffled)
        assert other == reference
        assert other.terms == reference.terms
        assert str(other) == str(reference)


def test_zero_coefficients_are_pruned():
    p = LoopPoly({Monomial({LoopVar(1, 0): 1}): Fraction(0)})
    assert p.is_zero
    q = z0 - z0
    assert q.is_zero and len(q) == 0


# -- randomized algebraic laws -------------------------------------------------

_vars = st.builds(LoopVar, st.integers(1, 2), st.integers(-2, 2))
_monomials = st.dictionaries(_vars, st.integers(1, 3), max_size=3).map(Monomial)
_coeffs = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
)
_polys = st.dictionaries(_monomials, _coeffs, max_size=4).map(LoopPoly)


@settings(deadline=None)
@given(_polys, _polys, _polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@settings(deadline=None)
@given(_polys, _polys, _vars)
def test_partial_is_a_derivation(p, q, v):
    assert (p * q).partial(v) == p * q.partial(v) + q * p.partial(v)


@settings(deadline=None)
@given(_polys, _polys, st.dictionaries(_vars, _polys, max_size=6))
def test_substitute_commutes_with_mul(p, q, images):
    # make the assignment total on everything that occurs
    assignment = {v: LoopPoly.variable(v) for v in (p * q).variables()}
    assignment.update({v: img for v, img in images.items()})
    for v in set(p.variables()) | set(q.variables()):
        assignment.setdefault(v, LoopPoly.variable(v))
    assert (p * q).substitute(assignment) == p.substitute(assignment) * q.substitute(assignment)
