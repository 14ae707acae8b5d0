"""
The system of an observer γ₀ and an observed γ₁ inside the spacetime
algebra Cl(1,3).

Coordinates are always taken in an ObserverFrame: a^μ is the component of a
along γ_μ, so a = a^μ γ_μ. The spacetime split sends a to aγ₀ = a⁰ + a^i (γ_iγ₀),
a paravector that maps onto R ⊕ R^{3,0} of the spin factor algebra.

Partial wedge products use 2×2 determinants with b on the top row:

    |b^μ b^ν|
    |a^μ a^ν| = b^μ a^ν − b^ν a^μ

so a [∂∧] b = b⁰a − a⁰b on the spatial directions.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from core import clifford as cl
from core import spinfactor as sf
from core.utils import (
    AlgebraError,
    ArithmeticMode,
    UsageError,
    frozen_array,
    is_exact,
    relative_difference,
)

MINKOWSKI = (1, -1, -1, -1)

# Relative agreement required between the two quad product evaluations
# when the inputs are floats. Integer inputs must agree exactly.
EVALUATION_TOLERANCE = 1e-9

# Integer evaluations of the quad product stay inside int64 while
# (Σ|a^μ|)²(Σ|b^μ|)² is below this bound, intermediate sums included.
EXACT_PRODUCT_LIMIT = 2 ** 58


class ObserverError(AlgebraError):
    pass


class FrameError(ObserverError, UsageError):
    pass


class SuperluminalVelocity(ObserverError, UsageError):
    pass


class EvaluationMismatch(ObserverError):
    """The wedge pipeline and the determinant formula disagree."""


class ExactOverflow(ObserverError, UsageError):
    """Integer coordinates too large for exact int64 evaluation."""


@dataclass(frozen=True, eq=False)
class ObserverFrame:
    gamma: tuple

    def __post_init__(self):
        if len(self.gamma) != 4:
            raise FrameError(f"A frame needs 4 vectors, got {len(self.gamma)}")
        for g in self.gamma:
            if not isinstance(g, cl.Multivector) or g.signature != cl.STA:
                raise FrameError(f"Frame vectors must be elements of {cl.STA}")
            if not cl.is_grade(g, 1):
                raise FrameError(f"Frame vector {g!r} is not grade-1")
        object.__setattr__(self, "gamma", tuple(self.gamma))
        for mu in range(4):
            for nu in range(4):
                actual = cl.vector_inner(self.gamma[mu], self.gamma[nu])
                expected = MINKOWSKI[mu] if mu == nu else 0
                if abs(actual - expected) > 1e-12:
                    raise FrameError(
                        f"⟨γ{mu}, γ{nu}⟩ = {actual}, expected {expected}: frame is not orthonormal"
                    )

    @classmethod
    def standard(cls, mode=ArithmeticMode.INTEGER):
        return cls(tuple(cl.basis_vector(mu, cl.STA, mode) for mu in range(4)))

    @classmethod
    def rotated_spatial(cls, theta):
        """Standard frame with (γ₂, γ₃) rotated by theta inside their plane."""
        g0, g1, g2, g3 = cls.standard(ArithmeticMode.FLOAT).gamma
        c, s = math.cos(theta), math.sin(theta)
        return cls((g0, g1, c * g2 + s * g3, -s * g2 + c * g3))

    def __eq__(self, other):
        if not isinstance(other, ObserverFrame):
            return NotImplemented
        return all(x == y for x, y in zip(self.gamma, other.gamma))

    __hash__ = None

    @property
    def observer(self):
        return self.gamma[0]

    @property
    def observed(self):
        return self.gamma[1]

    @cached_property
    def spatial_bivectors(self):
        """e_i = γ_iγ₀ for i = 1, 2, 3; each squares to +1."""
        return tuple(g * self.observer for g in self.gamma[1:])

    @cached_property
    def pseudoscalar(self):
        g0, g1, g2, g3 = self.gamma
        return g0 ^ g1 ^ g2 ^ g3

    @cached_property
    def exact(self):
        return all(g.exact for g in self.gamma)

    def coordinates(self, a):
        """(a⁰, a¹, a², a³) with a = a^μ γ_μ."""
        cl.require_grade(a, 1)
        return frozen_array([
            MINKOWSKI[mu] * cl.vector_inner(a, g) for mu, g in enumerate(self.gamma)
        ])

    def vector(self, coordinates):
        coordinates = np.asarray(coordinates)
        if coordinates.shape != (4,):
            raise UsageError(f"Expected 4 frame coordinates, got shape {coordinates.shape}")
        result = cl.zero(cl.STA, _mode_of(coordinates))
        for c, g in zip(coordinates, self.gamma):
            result = result + c * g
        return result

    def pseudoscalar_coefficient(self, x):
        """Coefficient of γ₀∧γ₁∧γ₂∧γ₃ in a grade-4 multivector."""
        cl.require_grade(x, 4)
        top = x.coefficients[-1]
        unit = self.pseudoscalar.coefficients[-1]
        if unit == 1:
            return top
        return top / unit


def _mode_of(array):
    return ArithmeticMode.INTEGER if is_exact(np.asarray(array)) else ArithmeticMode.FLOAT


def check_frames(*frames):
    first = frames[0]
    for other in frames[1:]:
        if other is not first and other != first:
            raise FrameError("Paravectors belong to different observer frames")


@dataclass(frozen=True, eq=False)
class Paravector:
    time: float
    space: np.ndarray
    frame: ObserverFrame = field(repr=False)

    def __post_init__(self):
        space = np.asarray(self.space)
        if space.shape != (3,):
            raise UsageError(f"Paravector space part needs 3 components, got shape {space.shape}")
        exact = space.dtype.kind == "i" and isinstance(self.time, (int, np.integer))
        dtype = np.int64 if exact else np.float64
        object.__setattr__(self, "space", frozen_array(space, dtype=dtype))
        object.__setattr__(self, "time", dtype(self.time))

    def __eq__(self, other):
        if not isinstance(other, Paravector):
            return NotImplemented
        return (
            self.frame == other.frame
            and self.time == other.time
            and np.array_equal(self.space, other.space)
        )

    __hash__ = None

    def to_multivector(self):
        """time + Σ space_i γ_iγ₀."""
        result = cl.scalar(self.time, cl.STA)
        for c, e in zip(self.space, self.frame.spatial_bivectors):
            result = result + c * e
        return result

    def vector(self):
        """The grade-1 a with aγ₀ equal to this paravector."""
        return self.to_multivector() * self.frame.observer

    @classmethod
    def from_spinfactor(cls, x, frame):
        if x.signature != sf.SPACE:
            raise sf.SignatureMismatch(f"Paravectors correspond to signature {sf.SPACE}, got {x.signature}")
        return cls(x.scalar, x.vector, frame)


@dataclass(frozen=True)
class BoostVelocity:
    v: float

    def __post_init__(self):
        if not abs(self.v) < 1:
            raise SuperluminalVelocity(f"Boost velocity must satisfy |v| < 1, got {self.v}")

    @property
    def lorentz_factor(self):
        return 1 / math.sqrt(1 - self.v * self.v)


def project_to_paravector(m, frame):
    """Grade-0 part plus the components of m along each γ_iγ₀."""
    time = cl.scalar_part(m)
    space = [cl.scalar_part(e * m) for e in frame.spatial_bivectors]
    return Paravector(time, np.array(space), frame)


def spacetime_split(a, frame):
    cl.require_grade(a, 1)
    return project_to_paravector(a * frame.observer, frame)


def to_spinfactor(x):
    return sf.SpinFactorElement(x.time, x.space, sf.SPACE)


def star(x, y):
    """(aγ₀)(γ₀b) = ab, with γ₀b the reverse of bγ₀."""
    check_frames(x.frame, y.frame)
    return x.to_multivector() * cl.reverse(y.to_multivector())


def circ_p(x, y):
    """Projection of x ⋆ y back onto the paravectors of the frame."""
    check_frames(x.frame, y.frame)
    return project_to_paravector(star(x, y), x.frame)


def diamond(a, b, frame):
    """⟨a,b⟩γ₀ + (b⁰a − a⁰b), the ∘ product carried back to grade-1 vectors."""
    product = circ_p(spacetime_split(a, frame), spacetime_split(b, frame))
    return product.vector()


def partial_wedge(a, b, frame):
    a, b = frame.coordinates(a), frame.coordinates(b)
    spatial = b[0] * a[1:] - a[0] * b[1:]
    return frame.vector(np.concatenate([[0], spatial]).astype(spatial.dtype))


def partial_wedge_dagger(a, b, frame):
    """partial_wedge with the γ₀ and γ₁ component values interchanged."""
    a, b = frame.coordinates(a), frame.coordinates(b)
    spatial = np.array([
        b[1] * a[0] - b[0] * a[1],
        b[1] * a[2] - b[2] * a[1],
        b[1] * a[3] - b[3] * a[1],
    ])
    return frame.vector(np.concatenate([[0], spatial]).astype(spatial.dtype))


def determinant(a, b, mu, nu):
    """|b^μ b^ν; a^μ a^ν| on frame coordinates."""
    return b[mu] * a[nu] - b[nu] * a[mu]


def fits_exactly(a_coords, b_coords):
    """Whether integer coordinates keep every quad product intermediate inside int64."""
    a_sum = sum(abs(int(x)) for x in a_coords)
    b_sum = sum(abs(int(x)) for x in b_coords)
    return a_sum ** 2 * b_sum ** 2 < EXACT_PRODUCT_LIMIT


def _checked_coordinates(a, b, frame):
    a_coords, b_coords = frame.coordinates(a), frame.coordinates(b)
    if is_exact(a_coords) and is_exact(b_coords) and not fits_exactly(a_coords, b_coords):
        raise ExactOverflow(
            f"Integer coordinates {a_coords.tolist()} and {b_coords.tolist()} overflow int64 "
            f"in the quad product, use float coordinates instead"
        )
    return a_coords, b_coords


def quad_by_wedges(a, b, frame):
    _checked_coordinates(a, b, frame)
    g0, g1 = frame.observer, frame.observed
    product = g0 ^ g1 ^ partial_wedge(a, b, frame) ^ partial_wedge_dagger(a, b, frame)
    return frame.pseudoscalar_coefficient(product)


def quad_by_determinants(a, b, frame):
    a, b = _checked_coordinates(a, b, frame)
    return determinant(a, b, 0, 1) * determinant(a, b, 2, 3)


def quad_product(a, b, frame):
    """γ₀∧γ₁∧(a[∂∧]b)∧(a[∂∧]†b) as a pseudoscalar coefficient."""
    by_wedges = quad_by_wedges(a, b, frame)
    by_determinants = quad_by_determinants(a, b, frame)
    if is_exact(np.asarray(by_wedges)) and is_exact(np.asarray(by_determinants)):
        agree = by_wedges == by_determinants
    else:
        scale = 1 + max_term(a, b, frame)
        agree = abs(by_wedges - by_determinants) <= EVALUATION_TOLERANCE * scale
    if not agree:
        raise EvaluationMismatch(
            f"Quad product paths disagree: wedges give {by_wedges!r}, "
            f"determinants give {by_determinants!r}"
        )
    return by_determinants


def max_term(a, b, frame):
    a, b = frame.coordinates(a), frame.coordinates(b)
    return float(np.sum(np.abs(a))) ** 2 * float(np.sum(np.abs(b))) ** 2


def boost(w, v, frame):
    """Boost of velocity v along the observed direction, on frame coordinates."""
    if not isinstance(v, BoostVelocity):
        v = BoostVelocity(v)
    w0, w1, w2, w3 = (float(c) for c in frame.coordinates(w))
    factor = v.lorentz_factor
    boosted = np.array([
        (w0 - v.v * w1) * factor,
        (w1 - v.v * w0) * factor,
        w2,
        w3,
    ])
    return frame.vector(boosted)


def exchange_factor(a, b, frame, swapped=False):
    """
    The observer-observed factor |b⁰ b¹; a⁰ a¹| γ₀∧γ₁, or with every 0 index
    replaced by 1 and vice versa when swapped.
    """
    a_coords, b_coords = frame.coordinates(a), frame.coordinates(b)
    g0, g1 = frame.observer, frame.observed
    if swapped:
        return determinant(a_coords, b_coords, 1, 0) * (g1 ^ g0)
    return determinant(a_coords, b_coords, 0, 1) * (g0 ^ g1)


def transverse_factor(a, b, frame):
    a_coords, b_coords = frame.coordinates(a), frame.coordinates(b)
    return determinant(a_coords, b_coords, 2, 3) * (frame.gamma[2] ^ frame.gamma[3])


@dataclass(frozen=True)
class InvarianceReport:
    boost_invariant: bool
    exchange_invariant: bool
    commutative: bool
    hemi_linear: bool
    residuals: dict = field(default_factory=dict)

    @property
    def all_hold(self):
        return self.boost_invariant and self.exchange_invariant and self.commutative and self.hemi_linear


def _deviation(actual, expected):
    if is_exact(np.asarray(actual)) and is_exact(np.asarray(expected)):
        return float(abs(actual - expected))
    return relative_difference(actual, expected)


def _with_blocks(coordinates, plane, replacement):
    result = np.array(coordinates)
    result[list(plane)] = replacement
    return result


def hemi_linearity_residual(a, b, frame, scale=3):
    """
    Largest deviation from linearity of quad_product in the (γ₀,γ₁) and the
    (γ₂,γ₃) components of a, the other block and b held fixed.
    """
    base = quad_product(a, b, frame)
    a_coords, b_coords = frame.coordinates(a), frame.coordinates(b)
    worst = 0.0
    for plane in ((0, 1), (2, 3)):
        block = a_coords[list(plane)]
        other = b_coords[list(plane)][::-1]
        scaled = frame.vector(_with_blocks(a_coords, plane, scale * block))
        summed = frame.vector(_with_blocks(a_coords, plane, block + other))
        alone = frame.vector(_with_blocks(a_coords, plane, other))
        worst = max(
            worst,
            _deviation(quad_product(scaled, b, frame), scale * base),
            _deviation(
                quad_product(summed, b, frame),
                base + quad_product(alone, b, frame),
            ),
        )
    return worst


def check_invariances(a, b, frame, v, tol=1e-9):
    """Measure the four invariances of quad_product; never raises on failure."""
    product = quad_product(a, b, frame)

    boosted_a, boosted_b = boost(a, v, frame), boost(b, v, frame)
    boosted = quad_product(boosted_a, boosted_b, frame)
    boost_residual = relative_difference(boosted, product)

    factor = exchange_factor(a, b, frame)
    swapped = exchange_factor(a, b, frame, swapped=True)
    transverse = transverse_factor(a, b, frame)
    exchange_residual = max(
        _deviation(frame.pseudoscalar_coefficient(swapped ^ transverse), product),
        float(np.max(np.abs(factor.coefficients - swapped.coefficients))),
    )

    commutative_residual = _deviation(quad_product(b, a, frame), product)
    hemi_residual = hemi_linearity_residual(a, b, frame)

    exact = frame.exact and cl.vector_components(a).dtype.kind == "i" and cl.vector_components(b).dtype.kind == "i"
    exact_tol = 0.0 if exact else tol
    return InvarianceReport(
        boost_invariant=boost_residual <= tol,
        exchange_invariant=exchange_residual <= exact_tol,
        commutative=commutative_residual <= exact_tol,
        hemi_linear=hemi_residual <= exact_tol,
        residuals=dict(
            boost=boost_residual,
            exchange=exchange_residual,
            commutative=commutative_residual,
            hemi_linear=hemi_residual,
        ),
    )
