"""
Property cases for each suite. Importing this module registers them.

Registration order is part of the report format and of the seeding: new
cases go at the end of their suite's section, and sections stay in the
order spinfactor, normlab, clifford, observer.
"""

import math
from functools import cache

import numpy as np

from core import clifford as cl
from core import normlab as nl
from core import observer as ob
from core import spinfactor as sf
from core.harness.cases import case, residual, violations
from core.utils import ArithmeticMode, max_abs, relative_difference

INTEGER = ArithmeticMode.INTEGER
FLOAT = ArithmeticMode.FLOAT


def random_signature(rng, max_dimension=4):
    dimension = rng.integer(1, max_dimension)
    m = rng.integer(0, dimension)
    return sf.Signature(m, dimension - m)


def random_scalar(rng, mode, bound=5):
    if mode is INTEGER:
        return rng.integer(-bound, bound)
    return rng.uniform(-bound, bound)


def well_conditioned_unit(signature, rng):
    """Random float unit with |Q| >= 1, so inverses stay well scaled."""
    while True:
        x = sf.random_unit(signature, rng, FLOAT)
        if abs(sf.quadratic_form(x)) >= 1:
            return x


def valid_point(rng, q_min=0.2):
    """
    Float element of R ⊕ R^{3,0} in the forward cone with Q >= q_min. The
    straight path from 1 to such a point never drops below min(1, Q).
    """
    while True:
        coordinates = np.array([rng.uniform(0.5, 2.5)] + rng.uniforms(3, -2, 2))
        x = sf.from_coordinates(coordinates, sf.SPACE)
        if sf.quadratic_form(x) >= q_min:
            return x


# spinfactor


@case("spinfactor")
def bullet_commutative(rng, mode):
    signature = random_signature(rng)
    x = sf.random_element(signature, rng, mode)
    y = sf.random_element(signature, rng, mode)
    return residual((x @ y).coordinates, (y @ x).coordinates)


@case("spinfactor")
def bullet_bilinear(rng, mode):
    signature = random_signature(rng)
    x, y, z = (sf.random_element(signature, rng, mode) for _ in range(3))
    c = random_scalar(rng, mode)
    return max(
        residual(((c * x + y) @ z).coordinates, (c * (x @ z) + y @ z).coordinates),
        residual((z @ (c * x + y)).coordinates, (c * (z @ x) + z @ y).coordinates),
    )


@case("spinfactor")
def identity_two_sided(rng, mode):
    signature = random_signature(rng)
    x = sf.random_element(signature, rng, mode)
    one = sf.identity(signature, mode)
    return max(
        residual((one @ x).coordinates, x.coordinates),
        residual((x @ one).coordinates, x.coordinates),
    )


@case("spinfactor")
def conjugate_involution(rng, mode):
    x = sf.random_element(random_signature(rng), rng, mode)
    return residual(sf.conjugate(sf.conjugate(x)).coordinates, x.coordinates)


@case("spinfactor")
def quadratic_form_consistency(rng, mode):
    signature = random_signature(rng)
    x = sf.random_element(signature, rng, mode)
    expected = sf.scalar(sf.quadratic_form(x), signature, mode)
    return residual((x @ sf.conjugate(x)).coordinates, expected.coordinates)


@case("spinfactor", mode=INTEGER, max_trials=1)
def basis_anticommutator(rng, mode):
    worst = 0.0
    for signature in (sf.SPACE, sf.Signature(1, 3), sf.Signature(2, 2)):
        basis = [sf.basis_vector(i, signature) for i in range(1, signature.algebra_dimension)]
        for i, ei in enumerate(basis):
            for j, ej in enumerate(basis):
                square = 2 * signature.form[i] if i == j else 0
                expected = sf.scalar(square, signature, INTEGER)
                worst = max(worst, residual((ei @ ej + ej @ ei).coordinates, expected.coordinates))
    return worst


@case("spinfactor", mode=FLOAT)
def inverse_product_is_identity(rng, mode):
    x = well_conditioned_unit(sf.SPACE, rng)
    inverse = sf.inverse(x)
    one = sf.identity(sf.SPACE, FLOAT)
    return max(
        residual((x @ inverse).coordinates, one.coordinates),
        residual((inverse @ x).coordinates, one.coordinates),
    )


@case("spinfactor", mode=FLOAT)
def inverse_matches_linear_solve(rng, mode):
    x = well_conditioned_unit(sf.SPACE, rng)
    return residual(sf.solve_for_inverse(x).coordinates, sf.inverse(x).coordinates)


@case("spinfactor", mode=FLOAT)
def inverse_involution(rng, mode):
    x = well_conditioned_unit(sf.SPACE, rng)
    return residual(sf.inverse(sf.inverse(x)).coordinates, x.coordinates)


@case("spinfactor", mode=FLOAT)
def inverse_general_signature(rng, mode):
    signature = random_signature(rng)
    x = well_conditioned_unit(signature, rng)
    one = sf.identity(signature, FLOAT)
    return residual((x @ sf.inverse(x)).coordinates, one.coordinates)


@case("spinfactor", mode=INTEGER)
def null_elements_rejected(rng, mode):
    c = rng.integer(1, 9)
    x = c * sf.identity(sf.SPACE) + c * sf.basis_vector(rng.integer(1, 3), sf.SPACE)
    try:
        sf.inverse(x)
    except sf.NullElement:
        raised = True
    else:
        raised = False
    return violations(not sf.is_unit(x), raised)


@case("spinfactor")
def minkowski_from_circ(rng, mode):
    signature = random_signature(rng)
    x = sf.random_element(signature, rng, mode)
    y = sf.random_element(signature, rng, mode)
    return max(
        residual(sf.circ(x, y).scalar, sf.minkowski_inner(x, y)),
        max_abs(sf.circ(x, x).vector),
    )


@case("spinfactor")
def circ_right_identity(rng, mode):
    signature = random_signature(rng)
    x = sf.random_element(signature, rng, mode)
    return residual(sf.circ(x, sf.identity(signature, mode)).coordinates, x.coordinates)


@case("spinfactor", mode=INTEGER, max_trials=1)
def circ_left_identity_fails(rng, mode):
    # A left identity e would need e = e ∘ 1 = 1, but 1 ∘ e₁ = −e₁.
    one = sf.identity(sf.SPACE)
    e1 = sf.basis_vector(1, sf.SPACE)
    return violations(
        sf.circ(one, one) == one,
        sf.circ(one, e1) == -e1,
        sf.circ(one, e1) != e1,
    )


@case("spinfactor", mode=INTEGER, max_trials=1)
def associator_witness(rng, mode):
    e1 = sf.basis_vector(1, sf.SPACE)
    e2 = sf.basis_vector(2, sf.SPACE)
    return violations(sf.associator(e1, e1, e2) == e2)


@case("spinfactor")
def jordan_identity(rng, mode):
    signature = random_signature(rng)
    x = sf.random_element(signature, rng, mode)
    y = sf.random_element(signature, rng, mode)
    square = x @ x
    return residual(((square @ y) @ x).coordinates, (square @ (y @ x)).coordinates)


# normlab


@cache
def solved(signature):
    return nl.solve_uncurling(signature)


def space_metric():
    return solved(sf.SPACE).L


@case("normlab", mode=FLOAT, tolerance=1e-8, max_trials=1)
def uncurling_identity(rng, mode):
    return max_abs(space_metric().matrix - np.eye(4))


@case("normlab", mode=FLOAT, tolerance=0.0, max_trials=1)
def uncurling_unique(rng, mode):
    solution = solved(sf.SPACE)
    return violations(solution.curl_nullspace_dim == 1, solution.solution_dim == 0)


@case("normlab", mode=FLOAT, tolerance=1e-8, max_trials=1)
def held_out_constraints(rng, mode):
    points = nl.sample_units(sf.SPACE, 100, rng)
    return nl.metric_constraint_residual(space_metric(), points)


@case("normlab", mode=FLOAT, tolerance=1e-8, max_trials=1)
def uncurling_indefinite(rng, mode):
    worst = 0.0
    for signature in (sf.Signature(2, 1), sf.Signature(1, 2)):
        expected = nl.UncurlingCandidate.signature_metric(signature)
        worst = max(worst, max_abs(solved(signature).L.matrix - expected.matrix))
    return worst


@case("normlab", mode=FLOAT, tolerance=0.0, max_trials=1)
def uncurling_line(rng, mode):
    # On R ⊕ R the off-diagonal entry of L is left free by every constraint.
    solution = solved(sf.Signature(1, 0))
    return violations(
        solution.curl_nullspace_dim == 2,
        solution.solution_dim == 1,
        max_abs(solution.L.matrix - np.eye(2)) <= 1e-8,
    )


@case("normlab", mode=FLOAT, max_trials=100)
def norm_matches_closed_form(rng, mode):
    s = valid_point(rng)
    closed = nl.closed_form_norm(s)
    return abs(nl.unital_norm_value(s, space_metric()) - closed) / closed


@case("normlab", mode=FLOAT, tolerance=1e-8, max_trials=100)
def path_independence(rng, mode):
    s = valid_point(rng)
    waypoint = valid_point(rng)
    one = sf.identity(sf.SPACE)
    L = space_metric()
    return abs(nl.path_integral([one, waypoint, s], L) - nl.path_integral([one, s], L))


@case("normlab", mode=FLOAT, max_trials=100)
def homogeneity(rng, mode):
    # Q >= 0.3 keeps 0.5 s above the default floor of 0.05
    s = valid_point(rng, q_min=0.3)
    L = space_metric()
    base = nl.unital_norm_value(s, L)
    return max(
        abs(nl.unital_norm_value(alpha * s, L) - alpha * base) / (alpha * base)
        for alpha in (0.5, 2.0, 3.0)
    )


@case("normlab", mode=FLOAT, tolerance=1e-8)
def polarization(rng, mode):
    x, y = valid_point(rng), valid_point(rng)
    L = space_metric()

    def squared(p):
        return nl.unital_norm_value(p, L) ** 2

    return relative_difference((squared(x + y) - squared(x) - squared(y)) / 2, sf.minkowski_inner(x, y))


@case("normlab", mode=FLOAT, tolerance=1e-6, max_trials=50)
def euler_homogeneity(rng, mode):
    return nl.euler_residual(valid_point(rng), space_metric())


@case("normlab", mode=FLOAT, tolerance=1e-6, max_trials=50)
def gradient_relation(rng, mode):
    return nl.gradient_relation_residual(valid_point(rng), space_metric())


def random_positive_definite(rng, size=4):
    a = np.array(rng.uniforms(size * size, -1, 1)).reshape(size, size)
    return a @ a.T + np.eye(size)


def random_nonzero(rng, size=4):
    while True:
        s = np.array(rng.uniforms(size, -2, 2))
        if np.linalg.norm(s) >= 0.1:
            return s


@case("normlab", mode=FLOAT, tolerance=1e-7, max_trials=100)
def bilinear_norm(rng, mode):
    return nl.bilinear_norm_residual(random_positive_definite(rng), random_nonzero(rng))


@case("normlab", mode=FLOAT, tolerance=1e-7, max_trials=100)
def unit_sphere(rng, mode):
    return nl.unit_sphere_residual(random_positive_definite(rng), random_nonzero(rng))


@case("normlab", mode=FLOAT, tolerance=1e-6, max_trials=100)
def jacobian_finite_difference(rng, mode):
    return nl.jacobian_residual(valid_point(rng))


@case("normlab", mode=FLOAT, tolerance=0.0, max_trials=1)
def unit_norm_squared(rng, mode):
    matrices = nl.unit_norm_squared_from_representation(nl.matrix_algebra_structure_constants(2))
    try:
        nl.unit_norm_squared_from_representation(nl.spinfactor_structure_constants(sf.SPACE))
    except nl.NonAssociative:
        rejected = True
    else:
        rejected = False
    return violations(matrices == 2, rejected)


# clifford


def random_clifford_signature(rng, max_dimension=5):
    dimension = rng.integer(1, max_dimension)
    p = rng.integer(0, dimension)
    return cl.CliffordSignature(p, dimension - p)


@case("clifford", mode=INTEGER, max_trials=1)
def gamma_relations(rng, mode):
    gamma = [cl.basis_vector(mu, cl.STA) for mu in range(4)]
    zero = cl.zero(cl.STA)
    conditions = [gamma[0] * gamma[0] == cl.scalar(1, cl.STA)]
    conditions += [g * g == cl.scalar(-1, cl.STA) for g in gamma[1:]]
    conditions += [
        gamma[mu] * gamma[nu] + gamma[nu] * gamma[mu] == zero
        for mu in range(4)
        for nu in range(4)
        if mu != nu
    ]
    return violations(*conditions)


@case("clifford", mode=INTEGER)
def associativity(rng, mode):
    x, y, z = (cl.random_multivector(cl.STA, rng, mode) for _ in range(3))
    return residual(((x * y) * z).coefficients, (x * (y * z)).coefficients)


@case("clifford", max_trials=50)
def associativity_general_signature(rng, mode):
    signature = random_clifford_signature(rng)
    x, y, z = (cl.random_multivector(signature, rng, mode) for _ in range(3))
    return residual(((x * y) * z).coefficients, (x * (y * z)).coefficients)


@case("clifford", mode=INTEGER, max_trials=1)
def even_subalgebra_basis(rng, mode):
    frame = ob.ObserverFrame.standard()
    e = frame.spatial_bivectors
    return violations(*[
        e[i] * e[j] + e[j] * e[i] == cl.scalar(2 if i == j else 0, cl.STA)
        for i in range(3)
        for j in range(3)
    ])


@case("clifford")
def wedge_antisymmetry(rng, mode):
    a, b, c = (cl.random_vector(cl.STA, rng, mode) for _ in range(3))
    zero = np.zeros(cl.STA.size)
    return max(
        residual(((a ^ b) + (b ^ a)).coefficients, zero),
        residual((a ^ a).coefficients, zero),
        residual((a ^ b ^ c).coefficients, (-(b ^ a ^ c)).coefficients),
        residual((a ^ b ^ c).coefficients, (-(a ^ c ^ b)).coefficients),
        residual((a ^ b ^ c).coefficients, (c ^ a ^ b).coefficients),
    )


@case("clifford")
def vector_square_is_inner(rng, mode):
    a = cl.random_vector(cl.STA, rng, mode)
    return residual((a * a).coefficients, cl.scalar(cl.vector_inner(a, a), cl.STA).coefficients)


@case("clifford")
def wedge_matches_antisymmetrized_product(rng, mode):
    a, b = (cl.random_vector(cl.STA, rng, mode) for _ in range(2))
    return max(
        residual((2 * (a ^ b)).coefficients, (a * b - b * a).coefficients),
        residual((a * b - cl.vector_inner(a, b)).coefficients, (a ^ b).coefficients),
    )


@case("clifford")
def grade_projection_complete(rng, mode):
    x = cl.random_multivector(cl.STA, rng, mode)
    parts = [cl.grade_project(x, k) for k in range(cl.STA.dimension + 1)]
    return max(
        residual(sum(parts).coefficients, x.coefficients),
        max(residual(cl.grade_project(part, k).coefficients, part.coefficients) for k, part in enumerate(parts)),
    )


@case("clifford")
def reverse_antiautomorphism(rng, mode):
    x, y = (cl.random_multivector(cl.STA, rng, mode) for _ in range(2))
    return residual(cl.reverse(x * y).coefficients, (cl.reverse(y) * cl.reverse(x)).coefficients)


@case("clifford")
def wedge_associative(rng, mode):
    x, y, z = (cl.random_multivector(cl.STA, rng, mode) for _ in range(3))
    return residual(((x ^ y) ^ z).coefficients, (x ^ (y ^ z)).coefficients)


# observer


@cache
def standard_frame(mode):
    return ob.ObserverFrame.standard(mode)


def random_coordinates(rng, mode, bound=9):
    if mode is INTEGER:
        return np.array(rng.integers(4, -bound, bound), dtype=np.int64)
    return np.array(rng.uniforms(4, -bound, bound))


def random_pair(rng, mode, frame=None, bound=9):
    frame = frame or standard_frame(mode)
    return frame.vector(random_coordinates(rng, mode, bound)), frame.vector(random_coordinates(rng, mode, bound))


def random_velocity(rng, limit=0.99):
    return rng.uniform(-limit, limit)


@case("observer", mode=INTEGER, trial_factor=5)
def quad_paths_agree(rng, mode):
    frame = standard_frame(INTEGER)
    a, b = random_pair(rng, INTEGER)
    return residual(ob.quad_by_wedges(a, b, frame), ob.quad_by_determinants(a, b, frame))


@case("observer", mode=INTEGER, max_trials=1)
def quad_worked_instance(rng, mode):
    frame = standard_frame(INTEGER)
    a = frame.vector(np.array([1, 2, 3, 4]))
    b = frame.vector(np.array([5, 6, 7, 8]))
    return violations(
        np.array_equal(frame.coordinates(ob.partial_wedge(a, b, frame)), [0, 4, 8, 12]),
        np.array_equal(frame.coordinates(ob.partial_wedge_dagger(a, b, frame)), [0, -4, 4, 8]),
        ob.quad_by_wedges(a, b, frame) == 16,
        ob.quad_product(a, b, frame) == 16,
    )


@case("observer", mode=FLOAT)
def quad_rotation_invariant(rng, mode):
    standard = standard_frame(FLOAT)
    a, b = random_pair(rng, FLOAT, bound=5)
    rotated = ob.ObserverFrame.rotated_spatial(rng.uniform(0, 2 * math.pi))
    return relative_difference(ob.quad_product(a, b, rotated), ob.quad_product(a, b, standard))


@case("observer", mode=FLOAT)
def boost_invariance(rng, mode):
    frame = standard_frame(FLOAT)
    a, b = random_pair(rng, FLOAT, bound=5)
    v = random_velocity(rng)
    boosted = ob.quad_product(ob.boost(a, v, frame), ob.boost(b, v, frame), frame)
    return relative_difference(boosted, ob.quad_product(a, b, frame))


@case("observer", mode=INTEGER)
def boost_plane_invariant(rng, mode):
    frame = standard_frame(INTEGER)
    w = frame.vector(random_coordinates(rng, INTEGER))
    boosted = ob.boost(w, random_velocity(rng), frame)
    return residual(frame.coordinates(boosted)[2:], frame.coordinates(w)[2:].astype(np.float64))


@case("observer", mode=FLOAT, tolerance=1e-12)
def boost_preserves_minkowski_norm(rng, mode):
    frame = standard_frame(FLOAT)
    w = frame.vector(random_coordinates(rng, FLOAT, bound=5))
    boosted = ob.boost(w, random_velocity(rng), frame)
    scale = max(1.0, float(np.sum(frame.coordinates(boosted) ** 2)))
    return abs(cl.vector_inner(boosted, boosted) - cl.vector_inner(w, w)) / scale


@case("observer", mode=INTEGER)
def exchange_invariance(rng, mode):
    frame = standard_frame(INTEGER)
    a, b = random_pair(rng, INTEGER)
    factor = ob.exchange_factor(a, b, frame)
    swapped = ob.exchange_factor(a, b, frame, swapped=True)
    product = frame.pseudoscalar_coefficient(swapped ^ ob.transverse_factor(a, b, frame))
    return max(
        residual(factor.coefficients, swapped.coefficients),
        residual(product, ob.quad_product(a, b, frame)),
    )


@case("observer", mode=INTEGER)
def commutativity(rng, mode):
    frame = standard_frame(INTEGER)
    a, b = random_pair(rng, INTEGER)
    return residual(ob.quad_product(b, a, frame), ob.quad_product(a, b, frame))


@case("observer", mode=INTEGER, max_trials=50)
def hemi_linearity(rng, mode):
    frame = standard_frame(INTEGER)
    a, b = random_pair(rng, INTEGER)
    return ob.hemi_linearity_residual(a, b, frame, scale=rng.integer(-5, 5))


@case("observer", mode=INTEGER, tolerance=0.0, max_trials=50)
def invariance_report(rng, mode):
    frame = standard_frame(INTEGER)
    a, b = random_pair(rng, INTEGER, bound=5)
    return violations(ob.check_invariances(a, b, frame, random_velocity(rng)).all_hold)


@case("observer", mode=INTEGER)
def circ_homomorphism(rng, mode):
    frame = standard_frame(INTEGER)
    a, b = random_pair(rng, INTEGER)
    x, y = ob.spacetime_split(a, frame), ob.spacetime_split(b, frame)
    lhs = ob.to_spinfactor(ob.circ_p(x, y))
    rhs = sf.circ(ob.to_spinfactor(x), ob.to_spinfactor(y))
    return residual(lhs.coordinates, rhs.coordinates)


@case("observer", mode=INTEGER)
def star_scalar_is_inner(rng, mode):
    frame = standard_frame(INTEGER)
    a, b = random_pair(rng, INTEGER)
    product = ob.star(ob.spacetime_split(a, frame), ob.spacetime_split(b, frame))
    return residual(cl.scalar_part(product), cl.vector_inner(a, b))


@case("observer", mode=INTEGER)
def diamond_decomposition(rng, mode):
    frame = standard_frame(INTEGER)
    a, b = random_pair(rng, INTEGER)
    expected = cl.vector_inner(a, b) * frame.observer + ob.partial_wedge(a, b, frame)
    return residual(ob.diamond(a, b, frame).coefficients, expected.coefficients)


@case("observer", mode=INTEGER)
def split_round_trip(rng, mode):
    frame = standard_frame(INTEGER)
    a = frame.vector(random_coordinates(rng, INTEGER))
    x = ob.spacetime_split(a, frame)
    return violations(
        x.vector() == a,
        ob.Paravector.from_spinfactor(ob.to_spinfactor(x), frame) == x,
    )


@case("observer", mode=INTEGER)
def partial_wedge_dagger_swap(rng, mode):
    frame = standard_frame(INTEGER)
    a_coords, b_coords = random_coordinates(rng, INTEGER), random_coordinates(rng, INTEGER)
    swap = [1, 0, 2, 3]
    a, b = frame.vector(a_coords), frame.vector(b_coords)
    swapped = ob.partial_wedge(frame.vector(a_coords[swap]), frame.vector(b_coords[swap]), frame)
    return residual(ob.partial_wedge_dagger(a, b, frame).coefficients, swapped.coefficients)


@case("observer", mode=INTEGER)
def split_preserves_inner(rng, mode):
    frame = standard_frame(INTEGER)
    a, b = random_pair(rng, INTEGER)
    x, y = ob.spacetime_split(a, frame), ob.spacetime_split(b, frame)
    return residual(sf.minkowski_inner(ob.to_spinfactor(x), ob.to_spinfactor(y)), cl.vector_inner(a, b))


@case("observer", mode=INTEGER)
def boost_moves_observer_pair(rng, mode):
    frame = standard_frame(INTEGER)
    v = 0.0
    while abs(v) < 1e-3:
        v = random_velocity(rng)
    boosted = [ob.boost(g, v, frame) for g in (frame.observer, frame.observed)]
    return violations(
        *(not frame.coordinates(w)[2:].any() for w in boosted),
        *(w != g for w, g in zip(boosted, (frame.observer, frame.observed))),
    )
