import math

import numpy as np
import pytest

import core.utils
from core import clifford as cl
from core import observer as ob
from core import spinfactor as sf
from core.prng import XorShift64Star
from core.utils import ArithmeticMode

core.utils.TESTING = True

FRAME = ob.ObserverFrame.standard()
G0, G1, G2, G3 = FRAME.gamma


def vector(*coordinates):
    return FRAME.vector(np.array(coordinates))


A = vector(1, 2, 3, 4)
B = vector(5, 6, 7, 8)


def test_frame():
    assert FRAME.exact
    assert FRAME.observer == cl.basis_vector(0, cl.STA)
    assert FRAME.coordinates(A).tolist() == [1, 2, 3, 4]
    assert FRAME.pseudoscalar == cl.pseudoscalar(cl.STA)
    for e in FRAME.spatial_bivectors:
        assert e * e == cl.scalar(1, cl.STA)


def test_invalid_frames():
    with pytest.raises(ob.FrameError):
        ob.ObserverFrame((G0, G0, G2, G3))
    with pytest.raises(ob.FrameError):
        ob.ObserverFrame((G0, G1, G2))
    with pytest.raises(ob.FrameError):
        ob.ObserverFrame((G0, G1, G2, G2 * G3))


def test_rotated_frame():
    frame = ob.ObserverFrame.rotated_spatial(0.3)
    assert not frame.exact
    assert frame.pseudoscalar_coefficient(frame.pseudoscalar) == pytest.approx(1)
    w = FRAME.vector(np.array([1.0, 2.0, 0.0, 1.0]))
    c, s = math.cos(0.3), math.sin(0.3)
    assert frame.coordinates(w) == pytest.approx([1, 2, s, c])


def test_spacetime_split():
    x = ob.spacetime_split(G0, FRAME)
    assert x.time == 1 and x.space.tolist() == [0, 0, 0]
    x = ob.spacetime_split(G1, FRAME)
    assert x.time == 0 and x.space.tolist() == [1, 0, 0]
    x = ob.spacetime_split(2 * G0 + 3 * G2, FRAME)
    assert x.time == 2 and x.space.tolist() == [0, 3, 0]
    assert x.vector() == 2 * G0 + 3 * G2
    with pytest.raises(cl.GradeError):
        ob.spacetime_split(G0 * G1, FRAME)


def test_to_spinfactor_and_back():
    assert ob.to_spinfactor(ob.spacetime_split(G0, FRAME)) == sf.identity(sf.SPACE)
    x = ob.spacetime_split(A, FRAME)
    y = ob.to_spinfactor(x)
    assert y == sf.SpinFactorElement(1, np.array([2, 3, 4]), sf.SPACE)
    assert ob.Paravector.from_spinfactor(y, FRAME) == x
    with pytest.raises(sf.SignatureMismatch):
        ob.Paravector.from_spinfactor(sf.identity(sf.Signature(1, 3)), FRAME)


def test_star():
    split = ob.spacetime_split
    assert ob.star(split(G0, FRAME), split(G0, FRAME)) == cl.scalar(1, cl.STA)
    assert ob.star(split(G0, FRAME), split(G1, FRAME)) == cl.blade([0, 1], cl.STA)
    assert ob.star(split(A, FRAME), split(A, FRAME)) == cl.scalar(cl.vector_inner(A, A), cl.STA)


def test_circ_p():
    x = ob.spacetime_split(A, FRAME)
    assert ob.circ_p(x, ob.spacetime_split(G0, FRAME)) == x
    result = ob.circ_p(ob.spacetime_split(G0, FRAME), ob.spacetime_split(G0 + G1, FRAME))
    assert result.time == 1 and result.space.tolist() == [-1, 0, 0]


def test_circ_p_matches_spinfactor_circ():
    rng = XorShift64Star(21)
    for _ in range(20):
        x = ob.spacetime_split(FRAME.vector(np.array(rng.integers(4, -9, 9))), FRAME)
        y = ob.spacetime_split(FRAME.vector(np.array(rng.integers(4, -9, 9))), FRAME)
        assert ob.to_spinfactor(ob.circ_p(x, y)) == sf.circ(ob.to_spinfactor(x), ob.to_spinfactor(y))


def test_frames_must_match():
    rotated = ob.ObserverFrame.rotated_spatial(0.5)
    x = ob.spacetime_split(G0, FRAME)
    y = ob.spacetime_split(rotated.observer, rotated)
    with pytest.raises(ob.FrameError):
        ob.star(x, y)


def test_diamond():
    assert ob.diamond(G0, G0, FRAME) == G0
    assert ob.diamond(G1, G1, FRAME) == -G0
    assert cl.vector_inner(A, B) == -60
    assert ob.diamond(A, B, FRAME) == -60 * G0 + 4 * G1 + 8 * G2 + 12 * G3


def test_partial_wedges():
    assert ob.partial_wedge(A, A, FRAME) == cl.zero(cl.STA)
    assert ob.partial_wedge(A, B, FRAME) == vector(0, 4, 8, 12)
    assert ob.partial_wedge(G0, G1, FRAME) == -G1
    assert ob.partial_wedge_dagger(A, A, FRAME) == cl.zero(cl.STA)
    assert ob.partial_wedge_dagger(A, B, FRAME) == vector(0, -4, 4, 8)
    assert ob.partial_wedge_dagger(G0, G1, FRAME) == G1


def test_quad_product():
    assert ob.quad_by_wedges(A, B, FRAME) == 16
    assert ob.quad_by_determinants(A, B, FRAME) == 16
    assert ob.quad_product(A, B, FRAME) == 16
    assert ob.quad_product(A, A, FRAME) == 0
    assert ob.quad_product(G2, G3, FRAME) == 0


def test_quad_paths_agree_on_random_integers():
    rng = XorShift64Star(22)
    for _ in range(100):
        a = FRAME.vector(np.array(rng.integers(4, -9, 9)))
        b = FRAME.vector(np.array(rng.integers(4, -9, 9)))
        assert ob.quad_by_wedges(a, b, FRAME) == ob.quad_by_determinants(a, b, FRAME)


def test_quad_mismatch_is_reported(monkeypatch):
    monkeypatch.setattr(ob, "quad_by_wedges", lambda a, b, frame: 17)
    with pytest.raises(ob.EvaluationMismatch):
        ob.quad_product(A, B, FRAME)


def test_boost():
    assert FRAME.coordinates(ob.boost(A, 0, FRAME)).tolist() == [1, 2, 3, 4]
    assert FRAME.coordinates(ob.boost(G0, 0.6, FRAME)) == pytest.approx([1.25, -0.75, 0, 0])
    assert ob.BoostVelocity(0.6).lorentz_factor == pytest.approx(1.25)
    with pytest.raises(ob.SuperluminalVelocity):
        ob.boost(A, 1.0, FRAME)
    with pytest.raises(ob.SuperluminalVelocity):
        ob.BoostVelocity(-1.5)


def test_boost_preserves_quad_and_norm():
    boosted_a = ob.boost(A, 0.6, FRAME)
    boosted_b = ob.boost(B, 0.6, FRAME)
    assert ob.quad_product(boosted_a, boosted_b, FRAME) == pytest.approx(16, abs=1e-9)
    assert cl.vector_inner(boosted_a, boosted_a) == pytest.approx(cl.vector_inner(A, A))


def test_exchange_factor():
    factor = ob.exchange_factor(A, B, FRAME)
    assert factor == ob.exchange_factor(A, B, FRAME, swapped=True)
    assert factor == 4 * (G0 ^ G1)
    total = ob.exchange_factor(A, B, FRAME, swapped=True) ^ ob.transverse_factor(A, B, FRAME)
    assert FRAME.pseudoscalar_coefficient(total) == 16


def test_check_invariances():
    report = ob.check_invariances(A, B, FRAME, 0.6)
    assert report.all_hold
    assert report.boost_invariant and report.exchange_invariant
    assert report.commutative and report.hemi_linear
    assert report.residuals["exchange"] == 0
    assert ob.check_invariances(A, B, FRAME, 0).boost_invariant


def test_hemi_linearity_scaling():
    scaled = vector(3, 6, 3, 4)
    assert ob.quad_product(scaled, B, FRAME) == 48
    assert ob.hemi_linearity_residual(A, B, FRAME) == 0


def test_float_frame():
    frame = ob.ObserverFrame.standard(ArithmeticMode.FLOAT)
    a = frame.vector(np.array([1.0, 2.0, 3.0, 4.0]))
    b = frame.vector(np.array([5.0, 6.0, 7.0, 8.0]))
    assert ob.quad_product(a, b, frame) == pytest.approx(16)
    assert ob.check_invariances(a, b, frame, -0.9).all_hold


def test_large_integers_are_not_wrapped():
    a = vector(100000, 0, 100000, 0)
    b = vector(0, 100000, 0, 100000)
    assert not ob.fits_exactly(FRAME.coordinates(a), FRAME.coordinates(b))
    assert ob.fits_exactly(FRAME.coordinates(A), FRAME.coordinates(B))
    with pytest.raises(ob.ExactOverflow):
        ob.quad_product(a, b, FRAME)
    with pytest.raises(ob.ExactOverflow):
        ob.quad_by_wedges(a, b, FRAME)

    frame = ob.ObserverFrame.standard(ArithmeticMode.FLOAT)
    a = frame.vector(np.array([1e5, 0, 1e5, 0]))
    b = frame.vector(np.array([0, 1e5, 0, 1e5]))
    assert ob.quad_product(a, b, frame) == 1e20


def test_split_preserves_inner():
    x, y = ob.spacetime_split(A, FRAME), ob.spacetime_split(B, FRAME)
    assert sf.minkowski_inner(ob.to_spinfactor(x), ob.to_spinfactor(y)) == -60
    rng = XorShift64Star(11)
    for _ in range(20):
        a, b = (FRAME.vector(np.array(rng.integers(4, -9, 9))) for _ in range(2))
        x, y = ob.spacetime_split(a, FRAME), ob.spacetime_split(b, FRAME)
        assert sf.minkowski_inner(ob.to_spinfactor(x), ob.to_spinfactor(y)) == cl.vector_inner(a, b)


def test_boost_moves_observer_pair():
    for g in (G0, G1):
        boosted = ob.boost(g, 0.6, FRAME)
        assert boosted != g
        assert FRAME.coordinates(boosted)[2:].tolist() == [0, 0]
    assert FRAME.coordinates(ob.boost(G1, 0.6, FRAME)) == pytest.approx([-0.75, 1.25, 0, 0])


def test_boost_invariance_is_relative(monkeypatch):
    boost = ob.boost

    def stretched_boost(w, v, frame):
        boosted = boost(w, v, frame)
        return frame.vector(frame.coordinates(boosted) * (1 + 5e-7))

    monkeypatch.setattr(ob, "boost", stretched_boost)
    report = ob.check_invariances(A, B, FRAME, 0.6)
    assert not report.boost_invariant
    # quad is quartic in the coordinates
    assert report.residuals["boost"] == pytest.approx(2e-6, rel=1e-3)
    assert report.exchange_invariant and report.commutative
