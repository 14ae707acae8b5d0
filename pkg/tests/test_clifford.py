import numpy as np
import pytest

import core.utils
from core import clifford as cl
from core.prng import XorShift64Star
from core.utils import ArithmeticMode, UsageError

core.utils.TESTING = True

STA = cl.STA
G0, G1, G2, G3 = (cl.basis_vector(mu, STA) for mu in range(4))
ONE = cl.scalar(1, STA)
ZERO = cl.zero(STA)


def test_signature():
    assert STA.dimension == 4
    assert STA.size == 16
    assert STA.squares.tolist() == [1, -1, -1, -1]
    assert STA.grades.tolist()[:4] == [0, 1, 1, 2]
    assert str(STA) == "Cl(1,3)"
    with pytest.raises(cl.InvalidCliffordSignature):
        cl.CliffordSignature(4, 3)
    with pytest.raises(cl.InvalidCliffordSignature):
        cl.CliffordSignature(0, 0)


def test_gamma_relations():
    assert G0 * G0 == ONE
    for g in (G1, G2, G3):
        assert g * g == -ONE
    gammas = [G0, G1, G2, G3]
    for mu, x in enumerate(gammas):
        for nu, y in enumerate(gammas):
            if mu != nu:
                assert x * y + y * x == ZERO


def test_blades_and_ordering():
    assert cl.blade([0, 1], STA) == G0 * G1
    assert cl.blade([1, 0], STA) == -cl.blade([0, 1], STA)
    assert cl.blade([0, 1], STA)[0b11] == 1
    assert cl.pseudoscalar(STA)[0b1111] == 1
    assert cl.reordering_sign(0b10, 0b01) == -1
    assert cl.reordering_sign(0b01, 0b10) == 1


def test_pseudoscalar_squares_to_minus_one():
    i = cl.pseudoscalar(STA)
    assert i * i == -ONE


def test_wedge():
    assert G0 ^ G0 == ZERO
    assert (G0 ^ G1) == -(G1 ^ G0)
    assert G0 ^ G1 ^ G2 ^ G3 == cl.pseudoscalar(STA)
    assert ONE ^ G2 == G2


def test_wedge_of_vectors_is_antisymmetric_part():
    rng = XorShift64Star(11)
    for _ in range(20):
        a = cl.random_vector(STA, rng)
        b = cl.random_vector(STA, rng)
        assert a * b - cl.vector_inner(a, b) == a ^ b
        assert 2 * (a ^ b) == a * b - b * a


def test_vector_inner():
    assert cl.vector_inner(G0, G0) == 1
    assert cl.vector_inner(G0, G1) == 0
    assert cl.vector_inner(G0 + G1, G0 - G1) == 2
    with pytest.raises(cl.GradeError):
        cl.vector_inner(ONE, G0)


def test_vector_square_is_scalar():
    rng = XorShift64Star(12)
    for _ in range(20):
        a = cl.random_vector(STA, rng)
        assert a * a == cl.scalar(cl.vector_inner(a, a), STA)


def test_associativity():
    rng = XorShift64Star(13)
    for _ in range(20):
        x, y, z = (cl.random_multivector(STA, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_associativity_other_signatures():
    rng = XorShift64Star(14)
    for signature in (cl.CliffordSignature(3, 0), cl.CliffordSignature(2, 2), cl.CliffordSignature(0, 5)):
        x, y, z = (cl.random_multivector(signature, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_grade_project():
    x = ONE + G0 * G1
    assert cl.grade_project(x, 0) == ONE
    assert cl.grade_project(x, 2) == G0 * G1
    assert cl.grade_project(x, 1) == ZERO
    rng = XorShift64Star(15)
    y = cl.random_multivector(STA, rng)
    assert cl.grade_project(cl.grade_project(y, 2), 2) == cl.grade_project(y, 2)
    assert sum(cl.grade_project(y, k) for k in range(5)) == y
    with pytest.raises(cl.GradeError):
        cl.grade_project(y, 5)


def test_grades():
    assert cl.grades(ONE + G0 * G1) == {0, 2}
    assert cl.is_grade(G2, 1)
    assert cl.is_grade(ZERO, 3)
    with pytest.raises(cl.GradeError):
        cl.require_grade(ONE + G0, 1)


def test_reverse():
    assert cl.reverse(G0 * G1) == G1 * G0
    assert cl.reverse(G0 * G1 * G2) == -(G0 * G1 * G2)
    assert cl.reverse(cl.pseudoscalar(STA)) == cl.pseudoscalar(STA)
    rng = XorShift64Star(16)
    x, y = cl.random_multivector(STA, rng), cl.random_multivector(STA, rng)
    assert cl.reverse(x * y) == cl.reverse(y) * cl.reverse(x)


def test_from_vector_and_components():
    a = cl.from_vector([1, 2, 3, 4], STA)
    assert a == G0 + 2 * G1 + 3 * G2 + 4 * G3
    assert cl.vector_components(a).tolist() == [1, 2, 3, 4]
    with pytest.raises(UsageError):
        cl.from_vector([1, 2], STA)


def test_float_mode():
    x = cl.basis_vector(0, STA, ArithmeticMode.FLOAT) * 0.5
    assert not x.exact
    assert (x * x).isclose(cl.scalar(0.25, STA))


def test_scalars_promote():
    assert 1 + G0 == ONE + G0
    assert G0 - 1 == G0 - ONE


def test_signature_mismatch():
    other = cl.basis_vector(0, cl.CliffordSignature(3, 0))
    with pytest.raises(cl.CliffordSignatureMismatch):
        G0 * other
    with pytest.raises(cl.CliffordSignatureMismatch):
        G0 ^ other


def test_coefficient_count_checked():
    with pytest.raises(UsageError):
        cl.Multivector(np.zeros(8), STA)


def test_repr():
    assert repr(G0 + 2 * G1 * G2) == "Multivector(1*γ0 + 2*γ12, Cl(1,3))"
    assert repr(ZERO) == "Multivector(0, Cl(1,3))"
