"""
Dense Clifford algebra Cl(p,q) for p + q <= 6.

A multivector is a table of 2^(p+q) coefficients indexed by blade bitmask:
bit i is set when generator γ_i is present. The p generators squaring to +1
come first, so in Cl(1,3) γ₀ is bit 0 and γ₁, γ₂, γ₃ square to −1.

Blade products use the canonical reordering sign (count of transpositions
needed to sort the concatenated generators) times the squares of the
generators the two blades share.
"""

from dataclasses import dataclass
from functools import cache, cached_property

import numpy as np

from core.utils import (
    AlgebraError,
    ArithmeticMode,
    UsageError,
    frozen_array,
    is_exact,
)

MAX_DIMENSION = 6


class CliffordError(AlgebraError):
    pass


class InvalidCliffordSignature(CliffordError, UsageError):
    pass


class CliffordSignatureMismatch(CliffordError, UsageError):
    pass


class GradeError(CliffordError, UsageError):
    pass


@dataclass(frozen=True)
class CliffordSignature:
    p: int
    q: int = 0

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or not 1 <= self.p + self.q <= MAX_DIMENSION:
            raise InvalidCliffordSignature(
                f"Cl({self.p},{self.q}) is not supported: need 1 <= p + q <= {MAX_DIMENSION}"
            )

    @property
    def dimension(self):
        return self.p + self.q

    @property
    def size(self):
        return 1 << self.dimension

    @cached_property
    def squares(self):
        return frozen_array([1] * self.p + [-1] * self.q, dtype=np.int64)

    @cached_property
    def grades(self):
        return frozen_array([bits.bit_count() for bits in range(self.size)], dtype=np.int64)

    def __str__(self):
        return f"Cl({self.p},{self.q})"


STA = CliffordSignature(1, 3)


def reordering_sign(a_bits, b_bits):
    """Sign from moving the generators of blade b past those of blade a."""
    a_bits >>= 1
    swaps = 0
    while a_bits:
        swaps += (a_bits & b_bits).bit_count()
        a_bits >>= 1
    return -1 if swaps & 1 else 1


def metric_sign(common_bits, squares):
    sign = 1
    for i, square in enumerate(squares):
        if common_bits >> i & 1:
            sign *= int(square)
    return sign


@cache
def product_tables(signature):
    """(index, geometric signs, wedge signs) for every pair of blades."""
    size = signature.size
    index = np.zeros((size, size), dtype=np.int64)
    geometric = np.zeros((size, size), dtype=np.int64)
    outer = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        for b in range(size):
            index[a, b] = a ^ b
            sign = reordering_sign(a, b)
            geometric[a, b] = sign * metric_sign(a & b, signature.squares)
            if not a & b:
                outer[a, b] = sign
    for table in (index, geometric, outer):
        table.setflags(write=False)
    return index, geometric, outer


@dataclass(frozen=True, eq=False)
class Multivector:
    coefficients: np.ndarray
    signature: CliffordSignature

    # Let numpy scalars defer to our operators instead of broadcasting.
    __array_ufunc__ = None

    def __post_init__(self):
        coefficients = np.asarray(self.coefficients)
        if coefficients.shape != (self.signature.size,):
            raise UsageError(
                f"{self.signature} needs {self.signature.size} coefficients, "
                f"got shape {coefficients.shape}"
            )
        object.__setattr__(self, "coefficients", frozen_array(coefficients))

    @property
    def exact(self):
        return is_exact(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.signature == other.signature and np.array_equal(
            self.coefficients, other.coefficients
        )

    __hash__ = None

    def isclose(self, other, tol=1e-12):
        check_signatures(self, other)
        scale = 1.0 + float(np.max(np.abs(other.coefficients)))
        return float(np.max(np.abs(self.coefficients - other.coefficients))) <= tol * scale

    def __add__(self, other):
        if not isinstance(other, Multivector):
            other = scalar(other, self.signature)
        check_signatures(self, other)
        return Multivector(self.coefficients + other.coefficients, self.signature)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Multivector(-self.coefficients, self.signature)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(self.coefficients * other, self.signature)

    def __rmul__(self, other):
        return Multivector(self.coefficients * other, self.signature)

    def __truediv__(self, other):
        return Multivector(self.coefficients / other, self.signature)

    def __xor__(self, other):
        return wedge(self, other)

    def __getitem__(self, bits):
        return self.coefficients[bits]

    def __repr__(self):
        terms = [
            f"{c!r}*{blade_name(bits)}"
            for bits, c in enumerate(self.coefficients.tolist())
            if c
        ]
        return f"Multivector({' + '.join(terms) or '0'}, {self.signature})"


def blade_name(bits):
    if not bits:
        return "1"
    return "γ" + "".join(str(i) for i in range(bits.bit_length()) if bits >> i & 1)


def check_signatures(*multivectors):
    signatures = {x.signature for x in multivectors}
    if len(signatures) > 1:
        raise CliffordSignatureMismatch(
            f"Multivectors from different algebras: {sorted(map(str, signatures))}"
        )


def zero(signature, mode=ArithmeticMode.INTEGER):
    return Multivector(np.zeros(signature.size, dtype=mode.dtype), signature)


def scalar(value, signature):
    coefficients = np.zeros(signature.size, dtype=np.asarray(value).dtype)
    coefficients[0] = value
    return Multivector(coefficients, signature)


def basis_vector(index, signature, mode=ArithmeticMode.INTEGER):
    if not 0 <= index < signature.dimension:
        raise UsageError(f"Generator index {index} out of range for {signature}")
    coefficients = np.zeros(signature.size, dtype=mode.dtype)
    coefficients[1 << index] = 1
    return Multivector(coefficients, signature)


def blade(indices, signature, mode=ArithmeticMode.INTEGER):
    """Geometric product of the generators in the given order."""
    result = scalar(mode.dtype(1), signature)
    for index in indices:
        result = geometric_product(result, basis_vector(index, signature, mode))
    return result


def pseudoscalar(signature, mode=ArithmeticMode.INTEGER):
    return blade(range(signature.dimension), signature, mode)


def from_vector(components, signature):
    """Grade-1 multivector Σ components[i] γ_i."""
    components = np.asarray(components)
    if components.shape != (signature.dimension,):
        raise UsageError(f"{signature} vectors have {signature.dimension} components")
    if components.dtype.kind not in "if":
        components = components.astype(np.float64)
    coefficients = np.zeros(signature.size, dtype=components.dtype)
    for i, c in enumerate(components):
        coefficients[1 << i] = c
    return Multivector(coefficients, signature)


def vector_components(a):
    require_grade(a, 1)
    return frozen_array([a.coefficients[1 << i] for i in range(a.signature.dimension)])


def random_multivector(signature, rng, mode=ArithmeticMode.INTEGER, bound=5):
    if mode is ArithmeticMode.INTEGER:
        values = rng.integers(signature.size, -bound, bound)
    else:
        values = rng.uniforms(signature.size, -bound, bound)
    return Multivector(np.array(values, dtype=mode.dtype), signature)


def random_vector(signature, rng, mode=ArithmeticMode.INTEGER, bound=5):
    if mode is ArithmeticMode.INTEGER:
        values = rng.integers(signature.dimension, -bound, bound)
    else:
        values = rng.uniforms(signature.dimension, -bound, bound)
    return from_vector(np.array(values, dtype=mode.dtype), signature)


def _product(x, y, signs):
    check_signatures(x, y)
    index = product_tables(x.signature)[0]
    terms = signs * np.outer(x.coefficients, y.coefficients)
    result = np.zeros(x.signature.size, dtype=terms.dtype)
    np.add.at(result, index, terms)
    return Multivector(result, x.signature)


def geometric_product(x, y):
    return _product(x, y, product_tables(x.signature)[1])


def wedge(x, y):
    return _product(x, y, product_tables(x.signature)[2])


def grade_project(x, k):
    if not 0 <= k <= x.signature.dimension:
        raise GradeError(f"Grade {k} out of range for {x.signature}")
    mask = x.signature.grades == k
    return Multivector(np.where(mask, x.coefficients, 0).astype(x.coefficients.dtype), x.signature)


def grades(x):
    """The set of grades with a nonzero coefficient."""
    return {int(g) for g, c in zip(x.signature.grades, x.coefficients) if c}


def is_grade(x, k):
    return grades(x) <= {k}


def require_grade(x, k):
    if not is_grade(x, k):
        raise GradeError(f"Expected a pure grade-{k} element, got grades {sorted(grades(x))}")


def reverse(x):
    k = x.signature.grades
    signs = np.where((k * (k - 1) // 2) % 2, -1, 1)
    return Multivector(signs * x.coefficients, x.signature)


def scalar_part(x):
    return x.coefficients[0]


def vector_inner(a, b):
    """Scalar part of (ab + ba)/2 for grade-1 a, b."""
    require_grade(a, 1)
    require_grade(b, 1)
    symmetric = scalar_part(geometric_product(a, b) + geometric_product(b, a))
    if is_exact(np.asarray(symmetric)):
        return symmetric // 2
    return symmetric / 2
