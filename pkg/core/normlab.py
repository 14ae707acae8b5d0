"""
Norms derived from an algebra's inverse.

On a plain vector space a symmetric L gives the norm ℓ(s) = √(s'Ls), the
solution of Ls = ℓ(s)∇ℓ(s). On an algebra with unique inverses the analogue
asks for a symmetric L such that

  - the field s ↦ L s⁻¹ is curl free (L is an "uncurling metric"), and
  - s'L s⁻¹ = ‖1‖² for every unit s,

and then integrates L s⁻¹ = ‖1‖² ∇𝔲(s)/𝔲(s) from 1 to get the unital norm

    𝔲(s) = exp( (1/‖1‖²) ∫₁ˢ [L t⁻¹]·dt ).

All pairings here are the Euclidean dot product on standard coordinates. The
norm is only computed on the region around 1 where the quadratic form stays
above a floor; points reached through the null cone are rejected.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cache, cached_property

import numpy as np

from core import spinfactor as sf
from core.prng import XorShift64Star
from core.utils import AlgebraError, UsageError, frozen_array, max_abs, short_repr

log = logging.getLogger(__name__)

DEFAULT_SAMPLE_COUNT = 200
DEFAULT_BOX_RADIUS = 0.4
DEFAULT_Q_FLOOR = 0.05
DEFAULT_SVD_THRESHOLD = 1e-8
DEFAULT_SEED = 0

QUADRATURE_ORDER = 8
DEFAULT_STEPS = 1024
FINITE_DIFFERENCE_STEP = 1e-5

# Rejection sampling gives up after this many draws per requested sample.
MAX_DRAWS_PER_SAMPLE = 100


class NormError(AlgebraError):
    pass


class InvalidSolverConfig(NormError, UsageError):
    pass


class NonPositiveForm(NormError):
    pass


class EmptySolution(NormError):
    pass


class SamplingFailure(NormError):
    pass


class PathCrossesNullCone(NormError):
    pass


class NonAssociative(NormError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    sample_count: int = DEFAULT_SAMPLE_COUNT
    box_radius: float = DEFAULT_BOX_RADIUS
    q_floor: float = DEFAULT_Q_FLOOR
    svd_threshold: float = DEFAULT_SVD_THRESHOLD
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.sample_count < 0:
            raise InvalidSolverConfig(f"sample_count must be nonnegative, got {self.sample_count}")
        if not 0 < self.box_radius < 1:
            raise InvalidSolverConfig(f"box_radius must lie in (0, 1), got {self.box_radius}")
        if not self.q_floor > 0:
            raise InvalidSolverConfig(f"q_floor must be positive, got {self.q_floor}")
        if not self.svd_threshold > 0:
            raise InvalidSolverConfig(f"svd_threshold must be positive, got {self.svd_threshold}")


def upper_triangle(size):
    return [(i, j) for i in range(size) for j in range(i, size)]


@cache
def symmetric_basis(size):
    """Symmetric matrices E_k, one per upper-triangle entry, in row-major order."""
    result = []
    for i, j in upper_triangle(size):
        matrix = np.zeros((size, size))
        matrix[i, j] = matrix[j, i] = 1.0
        matrix.setflags(write=False)
        result.append(matrix)
    return tuple(result)


@dataclass(frozen=True, eq=False)
class UncurlingCandidate:
    entries: np.ndarray  # upper triangle, row-major
    signature: sf.Signature
    unit_norm_sq: float = 1.0

    def __post_init__(self):
        size = self.signature.algebra_dimension
        entries = np.asarray(self.entries, dtype=np.float64)
        if entries.shape != (size * (size + 1) // 2,):
            raise UsageError(f"Expected {size * (size + 1) // 2} upper-triangle entries, got {entries.shape}")
        object.__setattr__(self, "entries", frozen_array(entries))

    @classmethod
    def from_matrix(cls, matrix, signature, unit_norm_sq=1.0):
        matrix = np.asarray(matrix, dtype=np.float64)
        entries = [matrix[i, j] for i, j in upper_triangle(signature.algebra_dimension)]
        return cls(np.array(entries), signature, unit_norm_sq)

    @classmethod
    def signature_metric(cls, signature, unit_norm_sq=1.0):
        """diag(1, η): the identity matrix for a positive definite signature."""
        diagonal = np.concatenate([[1.0], signature.form])
        return cls.from_matrix(unit_norm_sq * np.diag(diagonal), signature, unit_norm_sq)

    @cached_property
    def matrix(self):
        result = sum(c * e for c, e in zip(self.entries, symmetric_basis(self.signature.algebra_dimension)))
        result = np.array(result)
        result.setflags(write=False)
        return result

    @property
    def unit_pairing(self):
        """1ᵀL1."""
        return self.matrix[0, 0]

    def normalized(self):
        pairing = self.unit_pairing
        if pairing == 0:
            raise EmptySolution("Candidate has 1ᵀL1 = 0 and cannot be normalized")
        return UncurlingCandidate(self.entries * (self.unit_norm_sq / pairing), self.signature, self.unit_norm_sq)


@dataclass(frozen=True)
class NormResult:
    value: float
    path_steps: int
    residual_estimate: float

    def __post_init__(self):
        if not self.value > 0:
            raise NonPositiveForm(f"Unital norm must be positive, got {self.value}")


@dataclass(frozen=True, eq=False)
class UncurlingSolution:
    curl_nullspace_dim: int
    L: UncurlingCandidate
    constraint_residual: float
    solution_dim: int
    singular_values: np.ndarray = field(repr=False)
    samples: tuple = field(repr=False)


def finite_difference_gradient(func, x, eps=FINITE_DIFFERENCE_STEP):
    """Central differences of a scalar function of a coordinate array."""
    x = np.asarray(x, dtype=np.float64)
    grad = np.zeros(len(x))
    for j in range(len(x)):
        step = np.zeros(len(x))
        step[j] = eps
        grad[j] = (func(x + step) - func(x - step)) / (2 * eps)
    return grad


def vector_space_norm(L, s):
    """ℓ(s) = √(s'Ls)."""
    s = np.asarray(s, dtype=np.float64)
    form = s @ np.asarray(L) @ s
    if not form > 0:
        raise NonPositiveForm(f"s'Ls = {form} is not positive at s = {short_repr(s)}")
    return math.sqrt(form)


def bilinear_norm_residual(L, s, eps=FINITE_DIFFERENCE_STEP):
    """max |Ls − ℓ(s)∇ℓ(s)| with ∇ℓ from central differences."""
    L = np.asarray(L, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    value = vector_space_norm(L, s)
    gradient = finite_difference_gradient(lambda x: vector_space_norm(L, x), s, eps)
    return max_abs(L @ s - value * gradient)


def unit_sphere_residual(L, s, eps=FINITE_DIFFERENCE_STEP):
    """
    |ℓ*(∇ℓ(s)) − 1| where ℓ* is the dual norm √(g'L⁻¹g). For L = I the dual
    is ℓ itself and this is the statement ℓ(∇ℓ(s)) = 1.
    """
    L = np.asarray(L, dtype=np.float64)
    gradient = finite_difference_gradient(lambda x: vector_space_norm(L, x), s, eps)
    return abs(vector_space_norm(np.linalg.inv(L), gradient) - 1.0)


def inverse_field_jacobian(s):
    """
    Jacobian of s ↦ s⁻¹ = C s / Q(s) in standard coordinates, where C is
    conjugation and ∇Q = 2 G s with G = diag(1, −η):

        J = C/Q − 2 (C s)(G s)ᵀ / Q²
    """
    if not sf.is_unit(s):
        raise sf.NullElement(f"{s!r} is not a unit, s ↦ s⁻¹ is not differentiable there")
    coordinates = s.coordinates.astype(np.float64)
    q = float(sf.quadratic_form(s))
    conjugation = np.diag(np.concatenate([[1.0], -np.ones(s.signature.dimension)]))
    gradient_form = np.diag(np.concatenate([[1.0], -s.signature.form]))
    conjugated = conjugation @ coordinates
    return conjugation / q - 2 * np.outer(conjugated, gradient_form @ coordinates) / q ** 2


def jacobian_residual(s, eps=FINITE_DIFFERENCE_STEP):
    """
    Largest deviation of inverse_field_jacobian from central differences of
    s ↦ s⁻¹, relative to the largest Jacobian entry. Entries grow like 1/Q
    near the null cone, and the truncation error grows with them.
    """
    analytic = inverse_field_jacobian(s)
    numeric = np.array([
        finite_difference_gradient(
            lambda x, i=i: sf.inverse(sf.from_coordinates(x, s.signature)).coordinates[i],
            s.coordinates,
            eps,
        )
        for i in range(s.signature.algebra_dimension)
    ])
    return max_abs(analytic - numeric) / max(1.0, max_abs(analytic))


def curl_constraint_rows(jacobian):
    """
    Rows expressing "L·J is symmetric" as linear equations in the upper
    triangle entries of L, one row per strictly-upper entry of L·J − (L·J)ᵀ.
    """
    size = len(jacobian)
    columns = []
    for basis_matrix in symmetric_basis(size):
        product = basis_matrix @ jacobian
        antisymmetric = product - product.T
        columns.append([antisymmetric[i, j] for i in range(size) for j in range(i + 1, size)])
    return np.array(columns).T


def curl_residual(L, s):
    product = L.matrix @ inverse_field_jacobian(s)
    return max_abs(product - product.T)


def inverse_pairing(L, s):
    """s'L s⁻¹, which must equal ‖1‖²."""
    return float(s.coordinates @ L.matrix @ sf.inverse(s).coordinates)


def metric_constraint_residual(L, points):
    """Worst curl and inverse-pairing violation over the given units."""
    worst = 0.0
    for s in points:
        worst = max(worst, curl_residual(L, s), abs(inverse_pairing(L, s) - L.unit_norm_sq))
    return worst


def sample_units(signature, count, rng, box_radius=DEFAULT_BOX_RADIUS, q_floor=DEFAULT_Q_FLOOR):
    """
    Units drawn uniformly from the box of half-width box_radius around 1,
    keeping those with Q(s) >= q_floor.
    """
    size = signature.algebra_dimension
    result = []
    draws = 0
    max_draws = MAX_DRAWS_PER_SAMPLE * max(count, 1)
    while len(result) < count:
        if draws >= max_draws:
            raise SamplingFailure(
                f"Only {len(result)} of {count} samples reached Q >= {q_floor} "
                f"after {draws} draws in a box of radius {box_radius}"
            )
        draws += 1
        offsets = rng.uniforms(size, -box_radius, box_radius)
        coordinates = np.array(offsets)
        coordinates[0] += 1.0
        s = sf.from_coordinates(coordinates, signature)
        if sf.quadratic_form(s) >= q_floor:
            result.append(s)
        else:
            log.debug("Rejected sample %s with Q = %s", short_repr(coordinates), sf.quadratic_form(s))
    return result


def _null_space(matrix, threshold):
    """Orthonormal basis (as columns) of the numerical null space and the singular values."""
    _, singular_values, vh = np.linalg.svd(matrix, full_matrices=True)
    if not len(singular_values) or singular_values[0] == 0:
        rank = 0
    else:
        rank = int(np.sum(singular_values > threshold * singular_values[0]))
    return vh[rank:].T, singular_values


def solve_uncurling(signature, cfg=SolverConfig(), unit_norm_sq=1.0):
    """
    Find the symmetric L making L s⁻¹ a gradient with s'L s⁻¹ = ‖1‖².

    The curl conditions over all samples give a homogeneous system whose
    null space is the space of uncurling metrics. The inverse-pairing
    conditions and 1ᵀL1 = ‖1‖² then pick the solution inside it.
    """
    if cfg.sample_count == 0:
        raise EmptySolution("No samples requested, so no constraints were assembled")

    rng = XorShift64Star(cfg.seed)
    samples = sample_units(signature, cfg.sample_count, rng, cfg.box_radius, cfg.q_floor)
    size = signature.algebra_dimension
    basis = symmetric_basis(size)

    curl_matrix = np.vstack([curl_constraint_rows(inverse_field_jacobian(s)) for s in samples])
    null_basis, singular_values = _null_space(curl_matrix, cfg.svd_threshold)
    nullspace_dim = null_basis.shape[1]
    log.info(
        "Curl constraints for signature %s: %s equations, %s unknowns, null space dimension %s",
        signature, *curl_matrix.shape, nullspace_dim,
    )
    log.debug("Singular values: %s", short_repr(singular_values))
    if not nullspace_dim:
        raise EmptySolution(f"No uncurling metric exists for signature {signature}")

    metrics = [sum(c * e for c, e in zip(column, basis)) for column in null_basis.T]
    unit = sf.identity(signature).coordinates
    rows = [
        [s.coordinates @ metric @ sf.inverse(s).coordinates for metric in metrics]
        for s in samples
    ]
    rows.append([unit @ metric @ unit for metric in metrics])
    system = np.array(rows)
    rhs = np.full(len(rows), float(unit_norm_sq))
    coefficients, _, rank, _ = np.linalg.lstsq(system, rhs, rcond=None)
    pairing_residual = max_abs(system @ coefficients - rhs)
    if pairing_residual > cfg.svd_threshold:
        raise EmptySolution(
            f"No uncurling metric for signature {signature} satisfies s'L s⁻¹ = {unit_norm_sq}: "
            f"best residual {pairing_residual:.3e}"
        )

    raw = UncurlingCandidate(null_basis @ coefficients, signature, unit_norm_sq)
    # 1ᵀL1 is pinned exactly, the lstsq rounding stays in the other rows
    L = raw.normalized()
    scaled = coefficients * (unit_norm_sq / raw.unit_pairing)
    constraint_residual = max(max_abs(curl_matrix @ L.entries), max_abs(system @ scaled - rhs))
    solution_dim = nullspace_dim - int(rank)
    if solution_dim:
        log.info("Solution is not unique: %s free directions remain, returning minimum norm L", solution_dim)
    log.info("Solved L with constraint residual %.3e", constraint_residual)
    return UncurlingSolution(
        curl_nullspace_dim=nullspace_dim,
        L=L,
        constraint_residual=constraint_residual,
        solution_dim=solution_dim,
        singular_values=frozen_array(singular_values),
        samples=tuple(samples),
    )


@cache
def gauss_legendre(order):
    """Nodes and weights for ∫₀¹."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return (nodes + 1) / 2, weights / 2


def _coordinates(point):
    if isinstance(point, sf.SpinFactorElement):
        return point.coordinates.astype(np.float64)
    return np.asarray(point, dtype=np.float64)


def segment_integral(L, start, end, steps=DEFAULT_STEPS, q_floor=DEFAULT_Q_FLOOR):
    """∫ [L t⁻¹]·dt along the straight segment, composite Gauss–Legendre."""
    start, end = _coordinates(start), _coordinates(end)
    delta = end - start
    nodes, weights = gauss_legendre(QUADRATURE_ORDER)
    tau = ((np.arange(steps)[:, None] + nodes[None, :]) / steps).ravel()
    points = start[None, :] + tau[:, None] * delta[None, :]

    form = np.concatenate([[1.0], -L.signature.form])
    q = points ** 2 @ form
    lowest = float(np.min(q))
    if lowest < q_floor:
        raise PathCrossesNullCone(
            f"Quadratic form drops to {lowest:.3e} < {q_floor} on the segment "
            f"from {short_repr(start)} to {short_repr(end)}"
        )

    inverses = points.copy()
    inverses[:, 1:] *= -1
    inverses /= q[:, None]
    integrand = (inverses @ L.matrix) @ delta
    return float(np.tile(weights, steps) @ integrand) / steps


def path_integral(points, L, steps=DEFAULT_STEPS, q_floor=DEFAULT_Q_FLOOR):
    """Line integral of L t⁻¹ along a polyline through the given points."""
    return sum(
        segment_integral(L, start, end, steps, q_floor)
        for start, end in zip(points, points[1:])
    )


def _check_signature(s, L):
    if s.signature != L.signature:
        raise sf.SignatureMismatch(f"Element has signature {s.signature}, metric has {L.signature}")


def unital_norm_value(s, L, steps=DEFAULT_STEPS, q_floor=DEFAULT_Q_FLOOR):
    return _norm_from_coordinates(_coordinates(s), L, steps, q_floor)


def _norm_from_coordinates(coordinates, L, steps, q_floor):
    unit = sf.identity(L.signature).coordinates
    return math.exp(path_integral([unit, coordinates], L, steps, q_floor) / L.unit_norm_sq)


def unital_norm(s, L, steps=DEFAULT_STEPS, q_floor=DEFAULT_Q_FLOOR):
    _check_signature(s, L)
    if steps < 1:
        raise UsageError(f"steps must be positive, got {steps}")
    value = unital_norm_value(s, L, steps, q_floor)
    refined = unital_norm_value(s, L, 2 * steps, q_floor)
    residual = abs(refined - value) + 16 * np.spacing(value)
    return NormResult(value=value, path_steps=steps, residual_estimate=float(residual))


def closed_form_norm(s):
    """√(σ² − s·s), the scalar part of s • s* under a square root."""
    q = float(sf.quadratic_form(s))
    if not q > 0:
        raise NonPositiveForm(f"{s!r} has quadratic form {q}, the closed form norm needs Q > 0")
    return math.sqrt(q)


def norm_gradient(s, L, steps=DEFAULT_STEPS, q_floor=DEFAULT_Q_FLOOR, eps=FINITE_DIFFERENCE_STEP):
    _check_signature(s, L)
    return finite_difference_gradient(
        lambda x: _norm_from_coordinates(x, L, steps, q_floor),
        s.coordinates,
        eps,
    )


def gradient_relation_residual(s, L, steps=DEFAULT_STEPS, q_floor=DEFAULT_Q_FLOOR, eps=FINITE_DIFFERENCE_STEP):
    """max |L s⁻¹ − ‖1‖² ∇𝔲(s)/𝔲(s)|."""
    value = unital_norm_value(s, L, steps, q_floor)
    gradient = norm_gradient(s, L, steps, q_floor, eps)
    lhs = L.matrix @ sf.inverse(s).coordinates
    return max_abs(lhs - L.unit_norm_sq * gradient / value)


def euler_residual(s, L, steps=DEFAULT_STEPS, q_floor=DEFAULT_Q_FLOOR, eps=FINITE_DIFFERENCE_STEP):
    """|s·∇𝔲(s) − 𝔲(s)|, zero for a degree-1 homogeneous norm."""
    value = unital_norm_value(s, L, steps, q_floor)
    gradient = norm_gradient(s, L, steps, q_floor, eps)
    return abs(float(s.coordinates @ gradient) - value)


def spinfactor_structure_constants(signature):
    """c[i, j] = coordinates of e_i • e_j with e_0 = 1."""
    size = signature.algebra_dimension
    basis = [sf.identity(signature)] + [sf.basis_vector(i, signature) for i in range(1, size)]
    return np.array([[sf.bullet(x, y).coordinates for y in basis] for x in basis])


def is_associative(structure_constants, tol=1e-12):
    c = np.asarray(structure_constants, dtype=np.float64)
    # (e_i e_j) e_k and e_i (e_j e_k) expanded through the structure constants
    left = np.einsum("ijm,mkn->ijkn", c, c)
    right = np.einsum("jkm,imn->ijkn", c, c)
    return max_abs(left - right) <= tol


def unit_norm_squared_from_representation(structure_constants):
    """
    ‖1‖² as the number of independent entries on the diagonal of the left
    regular representation. Only meaningful for associative algebras.
    """
    c = np.asarray(structure_constants, dtype=np.float64)
    if not is_associative(c):
        raise NonAssociative("‖1‖² from the left regular representation needs an associative algebra")
    # Left multiplication by e_i maps e_j to Σ_k c[i, j, k] e_k, so its
    # diagonal entry at j is c[i, j, j].
    diagonals = np.array([[c[i, j, j] for j in range(len(c))] for i in range(len(c))])
    return int(np.linalg.matrix_rank(diagonals))


def matrix_algebra_structure_constants(n):
    """Structure constants of the n×n real matrices on the basis of matrix units E_ij."""
    size = n * n
    result = np.zeros((size, size, size))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # E_ij E_jk = E_ik, every other product of matrix units vanishes
                result[i * n + j, j * n + k, i * n + k] = 1.0
    return result
