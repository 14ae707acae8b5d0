"""
The Spin Factor Jordan Algebra on R ⊕ R^{m,n}.

An element is a scalar plus a vector whose pairing is the signature form
diag(+1 × m, −1 × n). The product

    (α + a) • (β + b) = (αβ + ⟪a, b⟫) + (βa + αb)

is commutative and unital but not associative. Units nevertheless have a
unique inverse, the conjugate divided by the quadratic form. The companion
product x ∘ y = x • y* has a right identity and no left identity.

Elements built from Python/numpy integers stay int64 under •, ∘ and
conjugation so the algebra laws can be checked exactly.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from core.utils import (
    NULL_TOLERANCE,
    AlgebraError,
    ArithmeticMode,
    UsageError,
    frozen_array,
    is_exact,
)


class SpinFactorError(AlgebraError):
    pass


class SignatureMismatch(SpinFactorError, UsageError):
    pass


class NullElement(SpinFactorError):
    """The element lies on the null cone, so it is not a unit."""


@dataclass(frozen=True)
class Signature:
    m: int
    n: int = 0

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise UsageError(f"Invalid signature ({self.m},{self.n}): need m, n >= 0 and m + n >= 1")

    @property
    def dimension(self):
        return self.m + self.n

    @property
    def algebra_dimension(self):
        return self.m + self.n + 1

    @cached_property
    def form(self):
        return frozen_array([1] * self.m + [-1] * self.n, dtype=np.int64)

    @classmethod
    def parse(cls, text):
        m, n = (int(part) for part in text.split(","))
        return cls(m, n)

    def __str__(self):
        return f"({self.m},{self.n})"


SPACE = Signature(3, 0)


@dataclass(frozen=True, eq=False)
class SpinFactorElement:
    scalar: float
    vector: np.ndarray
    signature: Signature

    __array_ufunc__ = None

    def __post_init__(self):
        vector = np.asarray(self.vector)
        if vector.shape != (self.signature.dimension,):
            raise UsageError(
                f"Vector part has shape {vector.shape}, "
                f"signature {self.signature} needs {self.signature.dimension} entries"
            )
        exact = vector.dtype.kind == "i" and isinstance(self.scalar, (int, np.integer))
        dtype = np.int64 if exact else np.float64
        object.__setattr__(self, "vector", frozen_array(vector, dtype=dtype))
        object.__setattr__(self, "scalar", dtype(self.scalar))

    @cached_property
    def coordinates(self):
        """(σ, s₁, …, s_{m+n}) in the standard basis."""
        return frozen_array(np.concatenate([[self.scalar], self.vector]))

    @property
    def exact(self):
        return is_exact(self.vector)

    def __eq__(self, other):
        if not isinstance(other, SpinFactorElement):
            return NotImplemented
        return self.signature == other.signature and np.array_equal(
            self.coordinates, other.coordinates
        )

    __hash__ = None

    def isclose(self, other, tol=1e-12):
        check_signatures(self, other)
        scale = 1.0 + float(np.max(np.abs(other.coordinates)))
        return float(np.max(np.abs(self.coordinates - other.coordinates))) <= tol * scale

    def __add__(self, other):
        check_signatures(self, other)
        return from_coordinates(self.coordinates + other.coordinates, self.signature)

    def __sub__(self, other):
        check_signatures(self, other)
        return from_coordinates(self.coordinates - other.coordinates, self.signature)

    def __neg__(self):
        return from_coordinates(-self.coordinates, self.signature)

    def __mul__(self, factor):
        if isinstance(factor, SpinFactorElement):
            return NotImplemented
        return from_coordinates(self.coordinates * factor, self.signature)

    __rmul__ = __mul__

    def __truediv__(self, factor):
        return from_coordinates(self.coordinates / factor, self.signature)

    def __matmul__(self, other):
        return bullet(self, other)

    def __repr__(self):
        return f"SpinFactorElement({self.scalar.item()!r}, {self.vector.tolist()!r}, {self.signature})"


def from_coordinates(coordinates, signature):
    coordinates = np.asarray(coordinates)
    if coordinates.shape != (signature.algebra_dimension,):
        raise UsageError(
            f"Expected {signature.algebra_dimension} coordinates, got shape {coordinates.shape}"
        )
    head = coordinates[0]
    head = int(head) if coordinates.dtype.kind == "i" else float(head)
    return SpinFactorElement(head, coordinates[1:], signature)


def identity(signature, mode=ArithmeticMode.INTEGER):
    return scalar(1, signature, mode)


def scalar(value, signature, mode=ArithmeticMode.FLOAT):
    coordinates = np.zeros(signature.algebra_dimension, dtype=mode.dtype)
    coordinates[0] = value
    return from_coordinates(coordinates, signature)


def basis_vector(index, signature, mode=ArithmeticMode.INTEGER):
    """e_index for 1 <= index <= m + n."""
    if not 1 <= index <= signature.dimension:
        raise UsageError(f"Basis index {index} out of range for signature {signature}")
    coordinates = np.zeros(signature.algebra_dimension, dtype=mode.dtype)
    coordinates[index] = 1
    return from_coordinates(coordinates, signature)


def random_element(signature, rng, mode=ArithmeticMode.FLOAT, bound=5):
    size = signature.algebra_dimension
    if mode is ArithmeticMode.INTEGER:
        values = rng.integers(size, -bound, bound)
    else:
        values = rng.uniforms(size, -bound, bound)
    return from_coordinates(np.array(values, dtype=mode.dtype), signature)


def random_unit(signature, rng, mode=ArithmeticMode.FLOAT, bound=5):
    while True:
        x = random_element(signature, rng, mode, bound)
        if is_unit(x):
            return x


def check_signatures(*elements):
    signatures = {x.signature for x in elements}
    if len(signatures) > 1:
        raise SignatureMismatch(
            f"Elements have different signatures: {sorted(map(str, signatures))}"
        )


def signature_form(u, v, signature):
    """⟪u, v⟫ = Σ η_i u_i v_i with η = diag(+1 × m, −1 × n)."""
    return np.dot(signature.form * np.asarray(u), np.asarray(v))


def bullet(x, y):
    check_signatures(x, y)
    return SpinFactorElement(
        x.scalar * y.scalar + signature_form(x.vector, y.vector, x.signature),
        y.scalar * x.vector + x.scalar * y.vector,
        x.signature,
    )


def conjugate(x):
    return SpinFactorElement(x.scalar, -x.vector, x.signature)


def quadratic_form(x):
    return x.scalar * x.scalar - signature_form(x.vector, x.vector, x.signature)


def null_threshold(x):
    return NULL_TOLERANCE * (1.0 + float(np.dot(x.coordinates, x.coordinates)))


def is_unit(x):
    q = quadratic_form(x)
    if x.exact:
        return q != 0
    return abs(q) > null_threshold(x)


def inverse(x):
    q = quadratic_form(x)
    if not is_unit(x):
        raise NullElement(f"{x!r} has quadratic form {q!r} and no inverse")
    return from_coordinates(conjugate(x).coordinates / float(q), x.signature)


def minkowski_inner(x, y):
    check_signatures(x, y)
    return x.scalar * y.scalar - signature_form(x.vector, y.vector, x.signature)


def circ(x, y):
    """x ∘ y = x • y*. Right identity 1, no left identity."""
    return bullet(x, conjugate(y))


def left_multiplication_matrix(x):
    """Matrix M with M @ y.coordinates == bullet(x, y).coordinates."""
    size = x.signature.algebra_dimension
    dtype = x.coordinates.dtype
    result = np.zeros((size, size), dtype=dtype)
    result[0, 0] = x.scalar
    result[0, 1:] = x.signature.form * x.vector
    result[1:, 0] = x.vector
    result[1:, 1:] = x.scalar * np.eye(size - 1, dtype=dtype)
    return result


def solve_for_inverse(x):
    """Inverse found by solving x • z = 1 as a linear system in z."""
    matrix = left_multiplication_matrix(x).astype(np.float64)
    rhs = np.zeros(x.signature.algebra_dimension)
    rhs[0] = 1.0
    return from_coordinates(np.linalg.solve(matrix, rhs), x.signature)


def associator(x, y, z):
    """(x•y)•z − x•(y•z); nonzero in general since • is not associative."""
    return bullet(bullet(x, y), z) - bullet(x, bullet(y, z))


def jordan_defect(x, y):
    """(x²•y)•x − x²•(y•x), which vanishes in any Jordan algebra."""
    square = bullet(x, x)
    return bullet(bullet(square, y), x) - bullet(square, bullet(y, x))
