"""Graded-dimension bookkeeping for Gysin long exact sequences.

The long exact sequence of a codimension-c closed embedding with open
complement U repeats the three-term pattern

    ... -> A^{s-2c} -> B^s -> C^s -> A^{s-2c+1} -> ...

where A and C are known graded dimension vectors and B is solved for by rank
propagation through the segments bounded by zero entries.  Declared ranks of
specific maps (notably the residue map onto the unit class) enter as tagged
facts and are surfaced in every report; they are inputs, not computations.

On top of the solver sit the tower of truncation cohomologies of the nearby
fiber of a loop functional, the renormalized colimit along Gysin maps, and the
escape bookkeeping showing reduced classes running off to infinity.

Everything is a pure function over small immutable values; concurrent
invocation is safe, there is no shared state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

__all__ = [
    "GradedDims",
    "DimensionTheory",
    "RankFact",
    "LesSystem",
    "LesSolution",
    "Underdetermined",
    "Inconsistent",
    "NotStabilized",
    "RESIDUE_FULL_RANK_AXIOM",
    "residue_onto_unit_fact",
    "solve_les",
    "solve_les_detailed",
    "milnor_fiber_cohomology",
    "sphere_cohomology",
    "gysin_step",
    "truncation_cohomology",
    "renormalized_nearby_cohomology",
    "RenormalizedReport",
    "escape_report",
    "escape_table",
    "EscapeRow",
    "declared_support_floor",
]

RESIDUE_FULL_RANK_AXIOM = (
    "Declared axiom: the residue map of the Gysin sequence has full rank at "
    "the odd sphere class in degree 2d-1 (the dlog class of the covering "
    "charts has nonvanishing residue); taken as an input, not verified "
    "symbolically."
)


class Inconsistent(ValueError):
    """No dimension vector satisfies exactness with the declared ranks."""


class NotStabilized(RuntimeError):
    """A tracked degree failed to stabilize within the tower; a bug."""


class GradedDims:
    """Finite-support map from integer degree to a nonnegative dimension.

    Zero entries are never stored; degrees may be negative.
    """

    __slots__ = ("_dims",)

    def __init__(self, dims: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = dims.items() if isinstance(dims, Mapping) else dims
        store: dict[int, int] = {}
        for degree, dim in items:
            if not isinstance(degree, int) or not isinstance(dim, int):
                raise TypeError("degrees and dimensions must be ints")
            if dim < 0:
                raise ValueError(f"negative dimension {dim} in degree {degree}")
            if dim:
                store[degree] = store.get(degree, 0) + dim
        self._dims = store

    @classmethod
    def zero(cls) -> "GradedDims":
        return cls()

    def dim(self, degree: int) -> int:
        return self._dims.get(degree, 0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._dims))

    def items(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._dims.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self._dims)

    @property
    def is_zero(self) -> bool:
        return not self._dims

    def __bool__(self) -> bool:
        return bool(self._dims)

    def total(self) -> int:
        return sum(self._dims.values())

    def euler(self) -> int:
        return sum(dim if degree % 2 == 0 else -dim for degree, dim in self._dims.items())

    def shifted(self, offset: int) -> "GradedDims":
        return GradedDims({degree + offset: dim for degree, dim in self._dims.items()})

    def plus(self, other: "GradedDims | Mapping[int, int]") -> "GradedDims":
        other_items = other.items() if isinstance(other, (GradedDims, dict)) else other
        merged = dict(self._dims)
        for degree, dim in other_items:
            merged[degree] = merged.get(degree, 0) + dim
        return GradedDims(merged)

    def with_unit(self) -> "GradedDims":
        """Add the one-dimensional unit class in degree 0."""
        return self.plus({0: 1})

    def drop_unit(self) -> "GradedDims":
        """Remove one dimension in degree 0 (pass to reduced cohomology)."""
        if self.dim(0) < 1:
            raise ValueError("no unit class in degree 0 to drop")
        out = dict(self._dims)
        out[0] -= 1
        return GradedDims(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedDims) and self._dims == other._dims

    def __str__(self) -> str:
        if not self._dims:
            return "{}"
        inner = ", ".join(f"{deg}: {dim}" for deg, dim in self.items())
        return "{" + inner + "}"

    def __repr__(self) -> str:
        return f"GradedDims({self})"


@dataclass(frozen=True)
class DimensionTheory:
    """Integer grading of a tower whose steps have constant codimension.

    delta(n) = normalization + n * offset_per_step; differences equal
    codimensions between truncations, the normalization fixes the degree
    convention of the renormalized colimit.
    """

    offset_per_step: int
    normalization: int = 0

    def __post_init__(self) -> None:
        if self.offset_per_step < 1:
            raise ValueError("codimension per step must be positive")

    def delta(self, n: int) -> int:
        return self.normalization + n * self.offset_per_step


@dataclass(frozen=True)
class RankFact:
    """Declared rank of one connecting map of the sequence at one degree.

    kind is 'gysin' (A^{s-2c} -> B^s), 'restriction' (B^s -> C^s) or
    'residue' (C^s -> A^{s-2c+1}); degree is the pattern position s.  Every
    fact carries the justification it rests on, which reports surface
    verbatim.
    """

    kind: str
    degree: int
    rank: int
    justification: str

    def __post_init__(self) -> None:
        if self.kind not in ("gysin", "restriction", "residue"):
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.rank < 0:
            raise ValueError("a rank cannot be negative")


@dataclass(frozen=True)
class LesSystem:
    """A Gysin long exact sequence with B unknown.

    codim is the codimension c of the closed embedding; a holds the known
    dimensions of the A-column, c_dims those of the open complement C.
    """

    codim: int
    a: GradedDims
    c_dims: GradedDims
    rank_facts: tuple[RankFact, ...] = ()

    def __post_init__(self) -> None:
        if self.codim < 1:
            raise ValueError("codimension must be positive")


@dataclass(frozen=True)
class Underdetermined:
    """The declared ranks do not pin B down; lists the ambiguous degrees."""

    degrees: tuple[int, ...]


@dataclass(frozen=True)
class LesSolution:
    b: GradedDims
    ranks: Mapping[tuple[str, int], int]
    segments: tuple[tuple[tuple[str, int], ...], ...]
    axioms: tuple[str, ...] = field(default=())

    def segment_alternating_sums(self, system: LesSystem) -> tuple[int, ...]:
        """Alternating dimension sum of every segment; exactness forces 0."""
        sums = []
        for segment in self.segments:
            total = 0
            for position, (slot, degree) in enumerate(segment):
                if slot == "A":
                    dim = system.a.dim(degree)
                elif slot == "B":
                    dim = self.b.dim(degree)
                else:
                    dim = system.c_dims.dim(degree)
                total += dim if position % 2 == 0 else -dim
            sums.append(total)
        return tuple(sums)


_SLOTS = ("A", "B", "C")


def solve_les_detailed(system: LesSystem) -> LesSolution | Underdetermined:
    """Solve the sequence for B by rank propagation; keep ranks and segments.

    Exactness says each space's dimension is the sum of the ranks of the maps
    in and out of it.  Zero entries force both adjacent ranks to zero, so the
    chain splits into independent segments; within a segment, dimensions and
    declared ranks propagate until everything is pinned or some B entries stay
    ambiguous.
    """
    c2 = 2 * system.codim
    anchors = (
        [deg + c2 for deg in system.a.support]
        + list(system.c_dims.support)
        + [fact.degree for fact in system.rank_facts]
        + [fact.degree + 1 for fact in system.rank_facts]
    )
    if not anchors:
        return LesSolution(
            b=GradedDims.zero(), ranks={}, segments=(), axioms=_axioms(system)
        )
    s_lo, s_hi = min(anchors) - 1, max(anchors) + 1

    # Node t = 3*(s - s_lo) + slot with slots A, B, C; map t is node t-1 -> t,
    # with virtual zero maps off both ends of the chain.
    nodes: list[tuple[str, int]] = []
    for s in range(s_lo, s_hi + 1):
        nodes.append(("A", s - c2))
        nodes.append(("B", s))
        nodes.append(("C", s))
    count = len(nodes)

    dims: list[int | None] = []
    for slot, degree in nodes:
        if slot == "A":
            dims.append(system.a.dim(degree))
        elif slot == "C":
            dims.append(system.c_dims.dim(degree))
        else:
            dims.append(None)

    ranks: list[int | None] = [None] * (count + 1)
    ranks[0] = 0
    ranks[count] = 0

    fact_positions = {"gysin": 1, "restriction": 2, "residue": 3}
    for fact in system.rank_facts:
        t = 3 * (fact.degree - s_lo) + fact_positions[fact.kind]
        if not 0 < t < count:
            raise Inconsistent(f"rank fact {fact} lies outside the sequence range")
        if ranks[t] is not None and ranks[t] != fact.rank:
            raise Inconsistent(f"conflicting rank facts at {fact.kind}/{fact.degree}")
        ranks[t] = fact.rank

    def set_rank(t: int, value: int) -> bool:
        if value < 0:
            raise Inconsistent(
                f"exactness forces a negative rank at map {t} ({nodes[min(t, count - 1)]})"
            )
        if ranks[t] is None:
            ranks[t] = value
            return True
        if ranks[t] != value:
            raise Inconsistent(f"rank clash at map {t}: {ranks[t]} vs {value}")
        return False

    changed = True
    while changed:
        changed = False
        for t in range(count):
            dim, r_in, r_out = dims[t], ranks[t], ranks[t + 1]
            if dim == 0:
                changed |= set_rank(t, 0)
                changed |= set_rank(t + 1, 0)
            elif dim is not None:
                if r_in is not None and r_out is None:
                    changed |= set_rank(t + 1, dim - r_in)
                elif r_out is not None and r_in is None:
                    changed |= set_rank(t, dim - r_out)
                elif r_in is not None and r_out is not None and r_in + r_out != dim:
                    raise Inconsistent(
                        f"exactness fails at {nodes[t]}: {dim} != {r_in} + {r_out}"
                    )
            else:
                if r_in is not None and r_out is not None:
                    dims[t] = r_in + r_out
                    changed = True

    unknown = sorted(
        degree for (slot, degree), dim in zip(nodes, dims) if slot == "B" and dim is None
    )
    if unknown:
        return Underdetermined(degrees=tuple(unknown))

    for fact in system.rank_facts:
        t = 3 * (fact.degree - s_lo) + fact_positions[fact.kind]
        src = dims[t - 1] or 0
        dst = dims[t] if t < count else 0
        if fact.rank > min(src, dst or 0):
            raise Inconsistent(
                f"declared rank {fact.rank} of {fact.kind} at degree {fact.degree} "
                f"exceeds min of adjacent dimensions ({src}, {dst})"
            )

    b = GradedDims(
        {degree: dim for (slot, degree), dim in zip(nodes, dims) if slot == "B" and dim}
    )
    rank_map = {}
    for t in range(1, count):
        slot, degree = nodes[t]
        kind = {"B": "gysin", "C": "restriction", "A": "residue"}[slot]
        key_degree = degree if slot != "A" else degree + c2 - 1
        rank_map[(kind, key_degree)] = ranks[t] or 0

    segments: list[tuple[tuple[str, int], ...]] = []
    current: list[tuple[str, int]] = []
    for node, dim in zip(nodes, dims):
        if dim:
            current.append(node)
        elif current:
            segments.append(tuple(current))
            current = []
    if current:
        segments.append(tuple(current))

    solution = LesSolution(
        b=b, ranks=rank_map, segments=tuple(segments), axioms=_axioms(system)
    )
    bad = [s for s in solution.segment_alternating_sums(system) if s != 0]
    if bad:
        raise RuntimeError(f"exactness audit failed: alternating sums {bad}")
    return solution


def _axioms(system: LesSystem) -> tuple[str, ...]:
    return tuple(sorted({fact.justification for fact in system.rank_facts}))


def solve_les(system: LesSystem) -> Union[GradedDims, Underdetermined]:
    """Dimensions of the middle column, or the ambiguous degrees."""
    result = solve_les_detailed(system)
    if isinstance(result, Underdetermined):
        return result
    return result.b


def milnor_fiber_cohomology(d: int, mu: int) -> GradedDims:
    """Cohomology of the Milnor fiber of a homogeneous isolated singularity.

    A wedge of mu spheres of dimension d-1 up to homotopy: one unit class plus
    mu classes in degree d-1 (for d = 1 both land in degree 0: mu+1 points).
    """
    if d < 1 or mu < 1:
        raise ValueError("need d >= 1 and mu >= 1")
    return GradedDims({0: 1}).plus({d - 1: mu})


def sphere_cohomology(d: int) -> GradedDims:
    """Cohomology of the complement A^d minus the origin, a (2d-1)-sphere."""
    if d < 1:
        raise ValueError("need d >= 1")
    return GradedDims({0: 1, 2 * d - 1: 1})


def residue_onto_unit_fact(d: int, full_a: GradedDims) -> RankFact:
    """The declared full-rank residue fact at the sphere class degree 2d-1."""
    return RankFact(
        kind="residue",
        degree=2 * d - 1,
        rank=min(1, full_a.dim(0)),
        justification=RESIDUE_FULL_RANK_AXIOM,
    )


def _gysin_system(full_a: GradedDims, d: int) -> LesSystem:
    return LesSystem(
        codim=d,
        a=full_a,
        c_dims=sphere_cohomology(d),
        rank_facts=(residue_onto_unit_fact(d, full_a),),
    )


def _gysin_solution(full_a: GradedDims, d: int) -> LesSolution:
    solution = solve_les_detailed(_gysin_system(full_a, d))
    if isinstance(solution, Underdetermined):
        raise RuntimeError(
            f"gysin system unexpectedly underdetermined at degrees {solution.degrees}"
        )
    return solution


def gysin_step(reduced: GradedDims, d: int) -> GradedDims:
    """Reduced cohomology of the next truncation: a shift up by 2d.

    The unit class cancels against the two sphere classes of the open
    complement through the full-rank residue.  The shift rule is validated on
    every call against the generic solver on the full (non-reduced) system.
    """
    full_a = reduced.with_unit()
    solution = _gysin_solution(full_a, d)
    expected_full = reduced.shifted(2 * d).with_unit()
    if solution.b != expected_full:
        raise RuntimeError(
            f"gysin shift rule disagrees with the solver: {solution.b} != {expected_full}"
        )
    return reduced.shifted(2 * d)


def truncation_cohomology(d: int, mu: int, n: int) -> GradedDims:
    """Full cohomology of the n-th truncation of the nearby fiber.

    Iterates the Gysin step from the Milnor fiber base case; the reduced part
    is concentrated in the single degree 2nd + d - 1 with dimension mu.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    reduced = milnor_fiber_cohomology(d, mu).drop_unit()
    for _ in range(n):
        reduced = gysin_step(reduced, d)
    return reduced.with_unit()


def declared_support_floor(d: int, n: int) -> int:
    """Declared floor 2(n+1)d - 1 for reduced-cohomology support of step n.

    Recorded in reports next to the computed concentration degree 2nd + d - 1,
    which sits exactly d below this floor; the discrepancy is documented, not
    resolved, and nothing downstream relies on the floor.
    """
    return 2 * (n + 1) * d - 1


@dataclass(frozen=True)
class EscapeRow:
    n: int
    degree: int
    declared_floor: int

    @property
    def meets_floor(self) -> bool:
        return self.degree >= self.declared_floor


def escape_report(d: int, mu: int, n_max: int) -> list[tuple[int, int]]:
    """Per truncation step, the single degree carrying reduced cohomology.

    The degrees grow without bound (an arithmetic progression of step 2d),
    which is why nothing survives the naive colimit.
    """
    out = []
    reduced = milnor_fiber_cohomology(d, mu).drop_unit()
    for n in range(n_max + 1):
        support = reduced.support
        if len(support) != 1:
            raise RuntimeError(f"reduced cohomology not concentrated at step {n}")
        out.append((n, support[0]))
        reduced = gysin_step(reduced, d)
    return out


def escape_table(d: int, mu: int, n_max: int) -> tuple[EscapeRow, ...]:
    """escape_report with the declared floor recorded alongside."""
    return tuple(
        EscapeRow(n=n, degree=degree, declared_floor=declared_support_floor(d, n))
        for n, degree in escape_report(d, mu, n_max)
    )


@dataclass(frozen=True)
class RenormalizedReport:
    stable: GradedDims
    stabilization_step: Mapping[int, int]
    tracked: tuple[int, ...]
    theory: DimensionTheory
    axioms: tuple[str, ...]


def renormalized_nearby_cohomology(
    d: int, mu: int, n_max: int, theory: DimensionTheory | None = None
) -> RenormalizedReport:
    """Colimit of truncation cohomologies along Gysin maps, degree-shifted.

    The contribution of step n to renormalized degree s is its cohomology in
    degree s + 2*delta(n); a degree has stabilized once the Gysin maps are
    isomorphisms there from some step onward.  With the default normalization
    (delta vanishing at step 0) the stable reduced outcome is mu in degree
    d-1; transient classes (the unit, any class at negative degrees) die
    through the residue and are reported as stabilized zeros.

    Raises NotStabilized if a tracked degree has not settled by n_max, which
    would be a bug rather than a feature of the tower.
    """
    if n_max < 2:
        raise ValueError("need n_max >= 2")
    if theory is None:
        theory = DimensionTheory(offset_per_step=d)
    if theory.offset_per_step != d:
        raise ValueError("the codimension per step of the tower is d")

    fulls = [milnor_fiber_cohomology(d, mu)]
    gysin_ranks: list[dict[int, int]] = []
    axioms: set[str] = set()
    for _ in range(n_max):
        solution = _gysin_solution(fulls[-1], d)
        axioms.update(solution.axioms)
        gysin_ranks.append(
            {
                degree - 2 * d: rank
                for (kind, degree), rank in solution.ranks.items()
                if kind == "gysin"
            }
        )
        fulls.append(solution.b)

    shift = 2 * theory.normalization
    tracked = range(-2 * d * (n_max - 2) - shift, 3 * d - shift + 1)

    stable: dict[int, int] = {}
    steps: dict[int, int] = {}
    for s in tracked:
        values = []
        for n in range(n_max + 1):
            m = s + 2 * theory.delta(n)
            values.append(fulls[n].dim(m) if m >= 0 else 0)
        iso = []
        for n in range(n_max):
            m = s + 2 * theory.delta(n)
            rank = gysin_ranks[n].get(m, 0) if m >= 0 else 0
            iso.append(values[n] == values[n + 1] == rank)
        first = next(
            (n0 for n0 in range(n_max) if all(iso[n0:])),
            None,
        )
        if first is None:
            raise NotStabilized(f"renormalized degree {s} not stable by step {n_max}")
        steps[s] = first
        if values[first]:
            stable[s] = values[first]

    outcome = GradedDims(stable)
    expected = GradedDims({d - 1 - shift: mu})
    if outcome != expected:
        raise RuntimeError(
            f"stable renormalized cohomology {outcome} != expected {expected}"
        )
    return RenormalizedReport(
        stable=outcome,
        stabilization_step=steps,
        tracked=tuple(tracked),
        theory=theory,
        axioms=tuple(sorted(axioms)),
    )
