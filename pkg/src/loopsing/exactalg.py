"""Exact sparse polynomial arithmetic over loop-space variables.

A variable is a pair (coordinate index, conformal degree); the alphabet is
unbounded and materializes lazily, so a variable exists as soon as some
polynomial mentions it.  Coefficients are exact rationals and every polynomial
is kept in a canonical sorted form, which makes equality of representations a
reliable identity test.

All values are immutable after construction and all operations are pure, so
polynomials can be shared freely between threads.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

__all__ = [
    "Rational",
    "LoopVar",
    "Monomial",
    "LoopPoly",
    "UNIT",
    "MissingAssignment",
    "add",
    "mul",
    "partial",
    "substitute",
    "grading",
]

# Exact rational coefficients.  Fraction already maintains the invariants we
# need: lowest terms, positive denominator, and 0 represented as 0/1.
Rational = Fraction


class MissingAssignment(KeyError):
    """A substitution did not cover some variable of the polynomial."""


@functools.total_ordering
@dataclass(frozen=True)
class LoopVar:
    """The coordinate function z^coord of conformal degree cdeg.

    Variables are totally ordered by (cdeg, coord); this single order drives
    the canonical monomial order everywhere in the package.
    """

    coord: int
    cdeg: int

    def __post_init__(self) -> None:
        if self.coord < 1:
            raise ValueError(f"coordinate index must be >= 1, got {self.coord}")

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.cdeg, self.coord)

    def __lt__(self, other: "LoopVar") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return f"z{self.coord}_{self.cdeg}"


FactorItems = Union[Mapping["LoopVar", int], Iterable[tuple["LoopVar", int]]]


@functools.total_ordering
class Monomial:
    """A product of loop variables with positive integer exponents.

    The factor list is kept sorted by the variable order, exponents are
    merged, and zero exponents dropped, so equal monomials have equal
    representations.  The empty product is the unit monomial.
    """

    __slots__ = ("factors", "_degree")

    def __init__(self, factors: FactorItems = ()) -> None:
        items = factors.items() if isinstance(factors, Mapping) else factors
        merged: dict[LoopVar, int] = {}
        for var, exp in items:
            if not isinstance(exp, int):
                raise TypeError(f"exponent must be an int, got {exp!r}")
            if exp < 0:
                raise ValueError(f"exponent must be nonnegative, got {exp}")
            if exp == 0:
                continue
            merged[var] = merged.get(var, 0) + exp
        self.factors: tuple[tuple[LoopVar, int], ...] = tuple(
            sorted(merged.items(), key=lambda item: item[0].sort_key)
        )
        self._degree = sum(exp for _, exp in self.factors)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def variables(self) -> tuple[LoopVar, ...]:
        return tuple(var for var, _ in self.factors)

    def exponent(self, var: LoopVar) -> int:
        for v, e in self.factors:
            if v == var:
                return e
        return 0

    def weight(self, weight_of: Callable[[LoopVar], int]) -> int:
        """Total weight of the monomial under a per-variable weight."""
        return sum(weight_of(v) * e for v, e in self.factors)

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(self.factors + other.factors)

    def mul_var(self, var: LoopVar, exp: int = 1) -> "Monomial":
        return Monomial(self.factors + ((var, exp),))

    def divides(self, other: "Monomial") -> bool:
        it = dict(other.factors)
        return all(it.get(v, 0) >= e for v, e in self.factors)

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; other must divide self."""
        out = dict(self.factors)
        for v, e in other.factors:
            have = out.get(v, 0)
            if have < e:
                raise ValueError(f"{other} does not divide {self}")
            out[v] = have - e
        return Monomial(out)

    def lcm(self, other: "Monomial") -> "Monomial":
        out = dict(self.factors)
        for v, e in other.factors:
            out[v] = max(out.get(v, 0), e)
        return Monomial(out)

    def coprime(self, other: "Monomial") -> bool:
        mine = {v for v, _ in self.factors}
        return all(v not in mine for v, _ in other.factors)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __lt__(self, other: "Monomial") -> bool:
        return _compare_monomials(self, other) < 0

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(
            str(v) if e == 1 else f"{v}^{e}" for v, e in self.factors
        )

    __repr__ = __str__


UNIT = Monomial()


def _compare_monomials(a: Monomial, b: Monomial) -> int:
    """Graded reverse lexicographic comparison induced by the variable order.

    Higher total degree wins; for equal degree, the monomial with the smaller
    exponent at the smallest variable where they differ is the larger one.
    """
    if a.degree != b.degree:
        return -1 if a.degree < b.degree else 1
    if a.factors == b.factors:
        return 0
    ea, eb = dict(a.factors), dict(b.factors)
    for v in sorted(set(ea) | set(eb), key=lambda var: var.sort_key):
        xa, xb = ea.get(v, 0), eb.get(v, 0)
        if xa != xb:
            return 1 if xa < xb else -1
    return 0


_TERM_KEY = functools.cmp_to_key(
    lambda s, t: _compare_monomials(s[0], t[0])
)

PolyLike = Union["LoopPoly", "LoopVar", int, Fraction]


class LoopPoly:
    """Sparse polynomial with exact rational coefficients over loop variables.

    Terms are stored as a tuple of (monomial, coefficient) pairs sorted in
    decreasing monomial order, with zero coefficients pruned, so the
    representation of a polynomial is independent of how it was assembled.
    """

    __slots__ = ("_terms", "_index")

    def __init__(
        self,
        terms: Mapping[Monomial, Fraction | int]
        | Iterable[tuple[Monomial, Fraction | int]] = (),
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            q = Fraction(coeff)
            if q:
                prev = acc.get(mono)
                total = q if prev is None else prev + q
                if total:
                    acc[mono] = total
                elif prev is not None:
                    del acc[mono]
        self._terms: tuple[tuple[Monomial, Fraction], ...] = tuple(
            sorted(acc.items(), key=_TERM_KEY, reverse=True)
        )
        self._index = dict(self._terms)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LoopPoly":
        return cls()

    @classmethod
    def constant(cls, value: Fraction | int) -> "LoopPoly":
        return cls({UNIT: Fraction(value)})

    @classmethod
    def variable(cls, var: LoopVar) -> "LoopPoly":
        return cls({Monomial(((var, 1),)): Fraction(1)})

    @classmethod
    def term(cls, mono: Monomial, coeff: Fraction | int = 1) -> "LoopPoly":
        return cls({mono: Fraction(coeff)})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[Monomial, Fraction], ...]:
        """Terms in decreasing monomial order."""
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._index.get(mono, Fraction(0))

    @property
    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        return self._terms[0]

    @property
    def leading_monomial(self) -> Monomial:
        return self.leading_term[0]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.leading_term[1]

    def variables(self) -> tuple[LoopVar, ...]:
        seen: set[LoopVar] = set()
        for mono, _ in self._terms:
            seen.update(mono.variables())
        return tuple(sorted(seen, key=lambda v: v.sort_key))

    def weight_set(
        self, weight: Callable[[LoopVar], int] | Mapping[LoopVar, int]
    ) -> frozenset[int]:
        """Weights of the homogeneous components under a variable weighting."""
        weight_of = weight.__getitem__ if isinstance(weight, Mapping) else weight
        return frozenset(mono.weight(weight_of) for mono, _ in self._terms)

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LoopPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __neg__(self) -> "LoopPoly":
        return LoopPoly({m: -c for m, c in self._terms})

    def __add__(self, other: PolyLike) -> "LoopPoly":
        other = as_poly(other)
        acc = dict(self._terms)
        for mono, coeff in other._terms:
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
        return LoopPoly(acc)

    __radd__ = __add__

    def __sub__(self, other: PolyLike) -> "LoopPoly":
        return self + (-as_poly(other))

    def __rsub__(self, other: PolyLike) -> "LoopPoly":
        return as_poly(other) - self

    def __mul__(self, other: PolyLike) -> "LoopPoly":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return LoopPoly({m: c * q for m, c in self._terms}) if q else LoopPoly()
        other = as_poly(other)
        acc: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms:
            for mb, cb in other._terms:
                m = ma.mul(mb)
                acc[m] = acc.get(m, Fraction(0)) + ca * cb
        return LoopPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, exp: int) -> "LoopPoly":
        if exp < 0:
            raise ValueError("negative powers are not defined")
        out = LoopPoly.constant(1)
        for _ in range(exp):
            out = out * self
        return out

    def mul_term(self, mono: Monomial, coeff: Fraction | int) -> "LoopPoly":
        """Product with the single term coeff * mono."""
        q = Fraction(coeff)
        if not q:
            return LoopPoly()
        return LoopPoly({m.mul(mono): c * q for m, c in self._terms})

    # -- calculus and substitution ------------------------------------------

    def partial(self, var: LoopVar) -> "LoopPoly":
        """Formal partial derivative with respect to var."""
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms:
            e = mono.exponent(var)
            if e == 0:
                continue
            lowered = dict(mono.factors)
            if e == 1:
                del lowered[var]
            else:
                lowered[var] = e - 1
            m = Monomial(lowered)
            acc[m] = acc.get(m, Fraction(0)) + coeff * e
        return LoopPoly(acc)

    def substitute(self, assignment: Mapping[LoopVar, PolyLike]) -> "LoopPoly":
        """Simultaneous substitution, fully expanded.

        The assignment must cover every variable occurring in the polynomial;
        an uncovered variable raises MissingAssignment.
        """
        images = {v: as_poly(p) for v, p in assignment.items()}
        out = LoopPoly()
        for mono, coeff in self._terms:
            prod = LoopPoly.constant(coeff)
            for var, exp in mono.factors:
                if var not in images:
                    raise MissingAssignment(var)
                prod = prod * images[var] ** exp
            out = out + prod
        return out

    def map_variables(self, rename: Callable[[LoopVar], LoopVar]) -> "LoopPoly":
        """Rename every variable; colliding images are merged."""
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms:
            m = Monomial(tuple((rename(v), e) for v, e in mono.factors))
            acc[m] = acc.get(m, Fraction(0)) + coeff
        return LoopPoly(acc)

    def zero_out(self, doomed: Callable[[LoopVar], bool]) -> "LoopPoly":
        """Set every variable satisfying the predicate to zero."""
        return LoopPoly(
            {
                mono: coeff
                for mono, coeff in self._terms
                if not any(doomed(v) for v in mono.variables())
            }
        )

    # -- display -------------------------------------------------------------

    def to_string(self, names: Sequence[str] | None = None) -> str:
        """Render with per-coordinate names; z_j / zI_j fallback without names."""
        if not self._terms:
            return "0"

        max_coord = max((v.coord for v in self.variables()), default=1)

        def var_name(v: LoopVar) -> str:
            if names is not None:
                base = names[v.coord - 1]
            else:
                base = "z" if max_coord == 1 else f"z{v.coord}"
            return f"{base}_{v.cdeg}"

        def mono_str(m: Monomial) -> str:
            return "*".join(
                var_name(v) if e == 1 else f"{var_name(v)}^{e}"
                for v, e in m.factors
            )

        parts: list[str] = []
        for i, (mono, coeff) in enumerate(self._terms):
            mag = abs(coeff)
            if mono.is_unit:
                body = str(mag)
            elif mag == 1:
                body = mono_str(mono)
            else:
                body = f"{mag}*{mono_str(mono)}"
            if i == 0:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"LoopPoly({self.to_string()})"


def as_poly(value: PolyLike) -> LoopPoly:
    """Coerce a variable or rational constant to a polynomial."""
    if isinstance(value, LoopPoly):
        return value
    if isinstance(value, LoopVar):
        return LoopPoly.variable(value)
    if isinstance(value, (int, Fraction)):
        return LoopPoly.constant(value)
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


# Free-function spellings of the core ring operations.

def add(p: LoopPoly, q: LoopPoly) -> LoopPoly:
    return p + q


def mul(p: LoopPoly, q: LoopPoly) -> LoopPoly:
    return p * q


def partial(p: LoopPoly, var: LoopVar) -> LoopPoly:
    return p.partial(var)


def substitute(p: LoopPoly, assignment: Mapping[LoopVar, PolyLike]) -> LoopPoly:
    return p.substitute(assignment)


def grading(
    p: LoopPoly, weight: Callable[[LoopVar], int] | Mapping[LoopVar, int]
) -> set[int]:
    """Set of weights of the homogeneous components of p.

    A polynomial of pure weight yields a singleton; the zero polynomial has
    empty support and yields the empty set.
    """
    return set(p.weight_set(weight))
