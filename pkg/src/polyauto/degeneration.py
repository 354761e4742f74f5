"""Torus-action degeneration of non-affine automorphisms.

Given a non-affine map, :func:`normalize` conjugates away its affine part
(and, if needed, swaps a variable into the first slot) so that every
component is x_i plus higher-order terms and the first component moves.
For such a map psi the restriction of the first component to the
hyperplane x1 = 0 is a nonzero polynomial in the trailing variables
x2..xn; its minimal degree w in those variables is at least 2, and its
degree-w homogeneous part is a shear polynomial h.

Conjugating psi by the diagonal parameter action (t^w x1, t x2, ..., t xn)
and clearing the resulting powers of t exactly yields a curve of maps with
polynomial entries in x and t.  Every specialization at t0 != 0 is a
conjugate of psi (same degree, same Jacobian), while the value at t = 0 is
the elementary shear (x1 + h, x2, ..., xn).  The module computes the curve
and its limit, cross-checks the limit against the shear formula, and
produces exact verification reports and per-sample closure witnesses.

Failure modes are informative by design: a vanishing restriction at x1 = 0
or an inexact division by t certifies that the input was not an
automorphism, and the raised error carries that evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Sequence

from .endo import Endo
from .errors import (
    ConsistencyError,
    DegenerateInput,
    DimensionError,
    InvalidSample,
    NormalizationRequired,
    NotACoordinate,
    NothingToNormalize,
    OverringViolation,
    SingularAffinePart,
)
from .groups import AffineMap
from .poly import Poly, Scalar, _as_fraction


def tail_indices(n: int) -> set[int]:
    """The trailing variable indices 2..n."""
    return set(range(2, n + 1))


@dataclass(frozen=True)
class TorusAction:
    """The diagonal parameter action (t^weight x1, t x2, ..., t xn)."""

    n: int
    weight: int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("torus action needs at least one variable")
        if self.weight < 2:
            raise DimensionError("torus weight must be at least 2")

    def images(self) -> list[Poly]:
        """Substitution images of x1..xn under the action, as polynomials in x, t."""
        n = self.n
        t = Poly.t(n)
        out = [t ** self.weight * Poly.variable(n, 1)]
        out.extend(t * Poly.variable(n, i) for i in range(2, n + 1))
        return out

    def at(self, t0: Scalar) -> AffineMap:
        """The invertible diagonal map at a nonzero parameter value."""
        value = _as_fraction(t0)
        if value == 0:
            raise InvalidSample(
                "the torus action is not invertible at t = 0",
                {"sample": "0"},
            )
        return AffineMap.diagonal([value**self.weight] + [value] * (self.n - 1))


class ParamEndo:
    """A one-parameter family of maps with components in x1..xn and t.

    Produced by :func:`torus_conjugate`; specializing the parameter at
    t = 1 returns the source map exactly, and t = 0 is always defined
    because all denominators were cleared at construction.
    """

    __slots__ = ("n", "components", "source_degree")

    def __init__(self, components: Sequence[Poly], source_degree: int):
        components = tuple(components)
        if not components:
            raise DimensionError("a parametric map needs at least one component")
        n = len(components)
        for f in components:
            if not isinstance(f, Poly) or f.nvars != n:
                raise DimensionError("components must be polynomials in n variables and t")
        self.n = n
        self.components = components
        self.source_degree = source_degree

    def specialize(self, t0: Scalar) -> Endo:
        value = _as_fraction(t0)
        return Endo([f.with_t_set(value) for f in self.components])

    def __eq__(self, other):
        if not isinstance(other, ParamEndo):
            return NotImplemented
        return (
            self.components == other.components
            and self.source_degree == other.source_degree
        )

    def __hash__(self):
        return hash((self.components, self.source_degree))

    def __str__(self):
        return "[" + ", ".join(str(f) for f in self.components) + "]"

    def __repr__(self):
        return f"ParamEndo({str(self)!r}, source_degree={self.source_degree})"


@dataclass(frozen=True)
class DegenerationData:
    """Invariants extracted from a normalized map.

    obstruction   -- first component restricted to x1 = 0 (nonzero)
    valuation     -- its minimal degree w in the trailing variables, 2 <= w <= d
    limit_shear   -- the degree-w homogeneous part of the obstruction
    source_degree -- the degree d of the normalized source
    """

    obstruction: Poly
    valuation: int
    limit_shear: Poly
    source_degree: int

    def __post_init__(self):
        if self.obstruction.is_zero:
            raise ConsistencyError("degeneration data needs a nonzero obstruction")
        if not 2 <= self.valuation <= self.source_degree:
            raise ConsistencyError(
                f"valuation {self.valuation} outside [2, {self.source_degree}]"
            )
        n = self.obstruction.nvars
        expected = self.obstruction.homogeneous_component(
            tail_indices(n), self.valuation
        )
        if self.limit_shear != expected or self.limit_shear.is_zero:
            raise ConsistencyError("limit shear disagrees with the obstruction")


@dataclass(frozen=True)
class NormalizationRecord:
    """How an input was brought to identity affine part with a moving x1.

    ``affine_inverse`` is the inverse of the original affine part if one was
    applied; ``transposition`` records the swapped index pair when the least
    moving component was not the first.
    """

    affine_inverse: AffineMap | None
    transposition: tuple[int, int] | None
    result: Endo

    def __post_init__(self):
        if not self.result.has_identity_affine_part():
            raise ConsistencyError("normalization must yield identity affine part")
        first = self.result.components[0]
        if first == Poly.variable(self.result.n, 1):
            raise ConsistencyError("normalization must leave a moving first component")


@dataclass(frozen=True)
class LimitReport:
    """Exact per-component t-valuations of (curve - limit); passes when all >= 1.

    A component whose difference is identically zero reports an infinite
    valuation (math.inf).
    """

    valuations: tuple
    passed: bool


@dataclass(frozen=True)
class ClosureSample:
    """One specialization of the curve with its conjugation certificate."""

    t0: Fraction
    image: Endo
    torus_map: AffineMap


def normalize(phi: Endo) -> NormalizationRecord:
    """Bring a non-affine map to identity affine part with a moving first slot.

    Composes with the inverse of the affine part when that part is not the
    identity, then conjugates by the transposition x1 <-> xi for the least i
    whose component moved.  Affine inputs have nothing to normalize and are
    rejected; a singular affine part certifies the input was not an
    automorphism.
    """
    try:
        degree = phi.degree()
    except DegenerateInput:
        raise NothingToNormalize(
            "the all-zero map cannot be normalized", {"endo": str(phi)}
        )
    if degree < 2:
        raise NothingToNormalize(
            "input is affine; only maps of degree at least 2 degenerate",
            {"endo": str(phi), "degree": degree},
        )
    affine_inverse = None
    corrected = phi
    affine_part = phi.affine_part()
    if affine_part != Endo.identity(phi.n):
        try:
            alpha = AffineMap.from_endo(affine_part)
        except DimensionError:
            raise SingularAffinePart(
                "the affine part is singular, so the input is not an automorphism",
                {"endo": str(phi), "affine_part": str(affine_part)},
            )
        affine_inverse = alpha.inverse()
        corrected = affine_inverse.to_endo().compose(phi)
    if corrected == Endo.identity(phi.n):
        raise DegenerateInput("input reduced to the identity; inconsistent degrees")
    moving = next(
        (
            i
            for i in range(1, phi.n + 1)
            if corrected.components[i - 1] != Poly.variable(phi.n, i)
        ),
        None,
    )
    if moving is None:
        raise DegenerateInput("no moving component despite non-identity input")
    transposition = None
    result = corrected
    if moving != 1:
        swap = AffineMap.transposition(phi.n, 1, moving).to_endo()
        result = swap.compose(corrected).compose(swap)
        transposition = (1, moving)
    return NormalizationRecord(affine_inverse, transposition, result)


def _check_normalized(psi: Endo) -> int:
    """Validate degeneration preconditions; returns the degree."""
    degree = psi.degree()
    if degree < 2:
        raise NormalizationRequired(
            "degeneration needs degree at least 2",
            {"endo": str(psi), "degree": degree},
        )
    if not psi.has_identity_affine_part():
        raise NormalizationRequired(
            "degeneration needs identity affine part; call normalize first",
            {"endo": str(psi), "affine_part": str(psi.affine_part())},
        )
    if psi.components[0] == Poly.variable(psi.n, 1):
        raise NormalizationRequired(
            "degeneration needs a moving first component; conjugate by a transposition",
            {"endo": str(psi)},
        )
    return degree


def degeneration_data(psi: Endo) -> DegenerationData:
    """Extract (obstruction, valuation, shear) from a normalized map.

    The obstruction is the first component at x1 = 0.  If it vanishes, x1
    divides the first component, which is impossible for a coordinate of an
    automorphism with identity affine part; the error carries that
    certificate.
    """
    degree = _check_normalized(psi)
    n = psi.n
    images = [Poly.zero(n)] + [Poly.variable(n, i) for i in range(2, n + 1)]
    obstruction = psi.components[0].substitute(images)
    if obstruction.is_zero:
        raise NotACoordinate(
            "first component vanishes at x1 = 0, so it is divisible by x1 "
            "and cannot be a coordinate; the input is not an automorphism",
            {"endo": str(psi), "first_component": str(psi.components[0])},
        )
    tail = tail_indices(n)
    valuation = obstruction.valuation_in(tail)
    shear = obstruction.homogeneous_component(tail, valuation)
    return DegenerationData(obstruction, valuation, shear, degree)


def torus_conjugate(psi: Endo, weight: int) -> ParamEndo:
    """Conjugate by the diagonal action of the given weight and clear t exactly.

    Components are computed as pairs (required power k, numerator) meaning
    t^-k * numerator with k = weight for the first slot and 1 otherwise;
    the numerator must be divisible by t^k, else the residual terms are
    returned as an overring-violation certificate.  For experimentation the
    weight need not come from :func:`degeneration_data`; a wrong weight
    either trips the violation or yields a different limit.
    """
    action = TorusAction(psi.n, weight)
    images = action.images()
    components = []
    for index, f in enumerate(psi.components, start=1):
        required = weight if index == 1 else 1
        numerator = f.substitute(images)
        if numerator.is_zero:
            components.append(numerator)
            continue
        if numerator.t_valuation() < required:
            residual = Poly(
                psi.n,
                {
                    key: c
                    for key, c in numerator.terms().items()
                    if key[-1] < required
                },
            )
            raise OverringViolation(
                f"component {index} keeps a genuine t^-{required} pole; "
                "the input cannot be an automorphism with identity affine part",
                {
                    "component": index,
                    "required_power": required,
                    "residual": str(residual),
                },
            )
        components.append(numerator.divide_t(required))
    curve = ParamEndo(components, psi.degree())
    if curve.specialize(1) != psi:
        raise ConsistencyError("specializing the curve at t = 1 must return the source")
    return curve


def specialize(curve: ParamEndo, t0: Scalar) -> Endo:
    """Evaluate the parameter exactly; t0 = 0 yields the limit."""
    return curve.specialize(t0)


def degenerate(psi: Endo) -> Endo:
    """The limit map (x1 + shear, x2, ..., xn), computed twice and cross-checked.

    The shear formula path and the t -> 0 specialization of the conjugated
    curve must agree exactly; disagreement would mean the congruence
    underlying the construction failed, so it raises instead of returning.
    """
    data = degeneration_data(psi)
    n = psi.n
    formula = Endo(
        [Poly.variable(n, 1) + data.limit_shear]
        + [Poly.variable(n, i) for i in range(2, n + 1)]
    )
    curve = torus_conjugate(psi, data.valuation)
    limit = curve.specialize(0)
    if formula != limit:
        raise ConsistencyError(
            "formula path and t -> 0 path disagree: "
            f"{formula} vs {limit}"
        )
    return limit


def triangular_witness(phi: Endo) -> Endo:
    """Normalize and degenerate: a triangular, non-affine limit of conjugates."""
    witness = degenerate(normalize(phi).result)
    if not witness.is_triangular() or witness.is_affine():
        raise ConsistencyError("witness must be triangular and non-affine")
    return witness


def verify_limit(curve: ParamEndo, limit: Endo) -> LimitReport:
    """Check that curve == limit modulo t, reporting exact t-valuations.

    The difference of each component must be divisible by t; components
    that agree identically report an infinite valuation.
    """
    if curve.n != limit.n:
        raise DimensionError("curve and limit act on different variable counts")
    valuations = []
    for f, g in zip(curve.components, limit.components):
        difference = f - g
        valuations.append(inf if difference.is_zero else difference.t_valuation())
    return LimitReport(tuple(valuations), all(v >= 1 for v in valuations))


def closure_witness(phi: Endo, samples: Sequence[Scalar]) -> list[ClosureSample]:
    """Specializations of the normalized conjugate curve at nonzero samples.

    Each sample comes with its conjugation certificate: the returned image
    must equal torus_map^-1 after psi after torus_map and must have the
    degree of psi; both facts are checked before the sample is emitted.
    """
    record = normalize(phi)
    psi = record.result
    data = degeneration_data(psi)
    curve = torus_conjugate(psi, data.valuation)
    action = TorusAction(psi.n, data.valuation)
    out = []
    for raw in samples:
        value = _as_fraction(raw)
        if value == 0:
            raise InvalidSample(
                "closure samples must be nonzero; t = 0 is the limit, not a sample",
                {"sample": str(raw)},
            )
        alpha = action.at(value)
        image = curve.specialize(value)
        conjugate = alpha.inverse().to_endo().compose(psi).compose(alpha.to_endo())
        if image != conjugate:
            raise ConsistencyError(
                f"specialization at t = {value} is not the expected conjugate"
            )
        if image.degree() != data.source_degree:
            raise ConsistencyError(
                f"specialization at t = {value} changed the degree"
            )
        out.append(ClosureSample(value, image, alpha))
    return out


@dataclass(frozen=True)
class WitnessReport:
    """Everything the front end needs to render one degeneration run."""

    source: Endo
    normalization: NormalizationRecord
    data: DegenerationData
    curve: ParamEndo
    witness: Endo
    limit_report: LimitReport


def witness_report(phi: Endo) -> WitnessReport:
    """Run the full pipeline on a raw map and bundle the results."""
    record = normalize(phi)
    psi = record.result
    data = degeneration_data(psi)
    curve = torus_conjugate(psi, data.valuation)
    witness = degenerate(psi)
    report = verify_limit(curve, witness)
    if not report.passed:
        raise ConsistencyError("limit verification failed for a computed witness")
    return WitnessReport(phi, record, data, curve, witness, report)
