import numpy as np
import pytest

import core.utils
from core import spinfactor as sf
from core.prng import XorShift64Star
from core.utils import ArithmeticMode, UsageError

core.utils.TESTING = True

SPACE = sf.SPACE
ONE = sf.identity(SPACE)
E1 = sf.basis_vector(1, SPACE)
E2 = sf.basis_vector(2, SPACE)


def element(scalar, *vector, signature=SPACE):
    return sf.SpinFactorElement(scalar, np.array(vector), signature)


def test_signature():
    assert SPACE.dimension == 3
    assert SPACE.algebra_dimension == 4
    assert sf.Signature(1, 3).form.tolist() == [1, -1, -1, -1]
    assert sf.Signature.parse("2,1") == sf.Signature(2, 1)
    assert str(sf.Signature(2, 1)) == "(2,1)"
    with pytest.raises(UsageError):
        sf.Signature(0, 0)
    with pytest.raises(UsageError):
        sf.Signature(-1, 2)


def test_construction_keeps_integers_exact():
    x = element(2, 1, 0, 0)
    assert x.exact
    assert x.coordinates.dtype == np.int64
    assert x == 2 * ONE + E1
    y = element(2.0, 1, 0, 0)
    assert not y.exact
    assert y.coordinates.dtype == np.float64
    with pytest.raises(UsageError):
        element(1, 0, 0)
    with pytest.raises(UsageError):
        sf.basis_vector(4, SPACE)


def test_coordinates_are_read_only():
    x = element(1, 2, 3, 4)
    with pytest.raises(ValueError):
        x.coordinates[0] = 5


def test_bullet_examples():
    x = element(1, 4, 5, 6)
    assert ONE @ x == x
    assert (2 * ONE + E1) @ (3 * ONE + E2) == element(6, 3, 2, 0)
    assert E1 @ E1 == ONE
    assert sf.bullet(E1, E2) == sf.scalar(0, SPACE, ArithmeticMode.INTEGER)


def test_bullet_uses_the_signature_form():
    signature = sf.Signature(1, 2)
    e2 = sf.basis_vector(2, signature)
    assert e2 @ e2 == -sf.identity(signature)


def test_signature_mismatch():
    with pytest.raises(sf.SignatureMismatch):
        sf.bullet(ONE, sf.identity(sf.Signature(2, 0)))
    with pytest.raises(sf.SignatureMismatch):
        ONE + sf.identity(sf.Signature(1, 3))


def test_conjugate():
    assert sf.conjugate(ONE) == ONE
    assert sf.conjugate(element(3, 1, -2, 5)) == element(3, -1, 2, -5)


def test_quadratic_form():
    assert sf.quadratic_form(ONE) == 1
    assert sf.quadratic_form(2 * ONE + E1) == 3
    assert sf.quadratic_form(ONE + E1) == 0
    assert not sf.is_unit(ONE + E1)
    assert sf.is_unit(2 * ONE + E1)


def test_inverse_examples():
    assert sf.inverse(sf.scalar(2, SPACE)).isclose(sf.scalar(0.5, SPACE))
    x = 2 * ONE + E1
    inverse = sf.inverse(x)
    assert inverse.isclose(element(2 / 3, -1 / 3, 0, 0))
    assert (x @ inverse).isclose(sf.identity(SPACE, ArithmeticMode.FLOAT))
    with pytest.raises(sf.NullElement):
        sf.inverse(ONE + E1)


def test_inverse_matches_linear_solve():
    rng = XorShift64Star(5)
    for _ in range(50):
        x = sf.random_unit(SPACE, rng)
        if abs(sf.quadratic_form(x)) < 1:
            continue
        assert sf.solve_for_inverse(x).isclose(sf.inverse(x), tol=1e-9)


def test_left_multiplication_matrix():
    rng = XorShift64Star(6)
    for signature in (SPACE, sf.Signature(1, 2)):
        x = sf.random_element(signature, rng, ArithmeticMode.INTEGER)
        y = sf.random_element(signature, rng, ArithmeticMode.INTEGER)
        assert np.array_equal(sf.left_multiplication_matrix(x) @ y.coordinates, (x @ y).coordinates)


def test_minkowski_inner():
    assert sf.minkowski_inner(ONE, ONE) == 1
    assert sf.minkowski_inner(E1, E1) == -1
    assert sf.minkowski_inner(2 * ONE + E1, 3 * ONE + E2) == 6


def test_circ():
    x = element(4, 1, 2, 3)
    assert sf.circ(x, ONE) == x
    assert sf.circ(ONE, x) == element(4, -1, -2, -3)
    assert sf.circ(ONE, x) != x
    assert sf.circ(2 * ONE + E1, 3 * ONE + E2) == element(6, 3, -2, 0)


def test_not_associative_but_jordan():
    assert sf.associator(E1, E1, E2) == E2
    rng = XorShift64Star(7)
    for _ in range(50):
        x = sf.random_element(SPACE, rng, ArithmeticMode.INTEGER)
        y = sf.random_element(SPACE, rng, ArithmeticMode.INTEGER)
        assert not np.any(sf.jordan_defect(x, y).coordinates)


def test_random_elements_are_seeded():
    a = sf.random_element(SPACE, XorShift64Star(1), ArithmeticMode.INTEGER)
    b = sf.random_element(SPACE, XorShift64Star(1), ArithmeticMode.INTEGER)
    assert a == b
    assert a.exact


def test_repr():
    assert repr(element(1, 2, 3, 4)) == "SpinFactorElement(1, [2, 3, 4], (3,0))"
