"""
Seeded generators of cones, extended reals, scalar functions, upper sets and set-valued maps, plus the
named instances used by the bundled files and the tests.
"""
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from logic.extended_reals.ext_real import NEG_INF, POS_INF, ExtReal
from logic.harness.sampling import SplitMix64
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.rational import Vector, add_vectors, is_zero, rat_matrix, scale_vector, zero_vector
from logic.scalar_calculus.scalar_fn import ImproperAffine, ImproperMode, ScalarFn, improper_extend
from logic.setvalued_calculus.calculus import fn_lattice_inf
from logic.setvalued_calculus.set_fn import SetFn
from logic.upper_sets.cone import Cone
from logic.upper_sets.upper_set import UpperSet, lattice_inf

SCALAR_KINDS = ("max-affine", "max-affine-on-box", "union", "indicator", "constant", "improper")
SET_KINDS = ("shifted-cone", "restricted", "union", "constant", "empty", "whole", "improper")
PROPER_CONVEX_KINDS = ("shifted-cone", "restricted", "constant")


def random_ext_real(rng: SplitMix64) -> ExtReal:
    roll = rng.below(8)
    if roll == 0:
        return NEG_INF
    if roll == 1:
        return POS_INF
    return ExtReal.of(rng.rational())


def random_box(rng: SplitMix64, dim: int) -> Polyhedron:
    lower = [Fraction(rng.integer(-2, 0)) for _ in range(dim)]
    upper = [low + rng.integer(1, 2) for low in lower]
    return Polyhedron.box(lower, upper)


def random_matrix(rng: SplitMix64, rows: int, columns: int) -> np.ndarray:
    return rat_matrix([[rng.integer(-1, 1) for _ in range(columns)] for _ in range(rows)], columns=columns)


def random_cone(rng: SplitMix64, dim: int) -> Cone:
    """
    The orthant, or in the plane a skewed cone or a single ray (which is not full dimensional)
    """
    if dim == 2:
        pick = rng.below(4)
        if pick == 1:
            return Cone(2, ((1, 0), (1, 1)))
        if pick == 2:
            return Cone(2, ((1, 0),))
    return Cone.nonnegative_orthant(dim)


def random_zstar(rng: SplitMix64, cone: Cone) -> Vector:
    """
    A nonzero element of C^- as a small nonnegative combination of its generators
    """
    while True:
        z_star = zero_vector(cone.dim)
        for d in cone.dual_generators:
            z_star = add_vectors(z_star, scale_vector(Fraction(rng.integer(0, 2)), d))
        if not is_zero(z_star):
            return z_star


def random_scalar_fn(rng: SplitMix64, dim: int, kind: str = None) -> ScalarFn:
    kind = kind or rng.choice(SCALAR_KINDS)
    if kind == "max-affine":
        return ScalarFn.max_affine([(rng.vector(dim), rng.rational()) for _ in range(rng.integer(1, 3))])
    if kind == "max-affine-on-box":
        return ScalarFn.max_affine([(rng.vector(dim), rng.rational()) for _ in range(rng.integer(1, 2))],
                                   random_box(rng, dim))
    if kind == "union":
        first = random_scalar_fn(rng, dim, "max-affine-on-box")
        second = random_scalar_fn(rng, dim, "max-affine-on-box")
        return ScalarFn(dim, first.pieces + second.pieces)
    if kind == "indicator":
        return ScalarFn.indicator(random_box(rng, dim))
    if kind == "constant":
        return ScalarFn.constant(dim, random_ext_real(rng))
    mode = ImproperMode.HAT_SUP if rng.chance(1, 2) else ImproperMode.HAT_INF
    return improper_extend(ImproperAffine(rng.vector(dim), rng.rational(), mode))


def random_upper_set(rng: SplitMix64, cone: Cone, kind: str = None) -> UpperSet:
    kind = kind or rng.choice(("translate", "halfspace", "union"))
    if kind == "translate":
        return UpperSet.translate_cone(rng.vector(cone.dim), cone)
    if kind == "halfspace":
        return UpperSet.halfspace(random_zstar(rng, cone), cone, rng.rational())
    return lattice_inf([random_upper_set(rng, cone, "translate") for _ in range(2)], cone)


def random_set_fn(rng: SplitMix64, x_dim: int, cone: Cone, kind: str = None) -> SetFn:
    kind = kind or rng.choice(SET_KINDS)
    if kind == "shifted-cone":
        return SetFn.shifted_cone(random_matrix(rng, cone.dim, x_dim), cone, rng.vector(cone.dim))
    if kind == "restricted":
        return SetFn.shifted_cone(random_matrix(rng, cone.dim, x_dim), cone, rng.vector(cone.dim),
                                  random_box(rng, x_dim))
    if kind == "union":
        parts = [random_set_fn(rng, x_dim, cone, "restricted") for _ in range(2)]
        return fn_lattice_inf(parts, x_dim, cone)
    if kind == "constant":
        return SetFn.constant(x_dim, random_upper_set(rng, cone, rng.choice(("translate", "halfspace"))))
    if kind == "empty":
        return SetFn.empty(x_dim, cone)
    if kind == "whole":
        return SetFn.whole(x_dim, cone)
    return SetFn(x_dim, cone, (), (random_box(rng, x_dim),))


def random_duals(rng: SplitMix64, x_dim: int, cone: Cone, count: int) -> List[Tuple[Vector, Vector]]:
    return [(rng.vector(x_dim), random_zstar(rng, cone)) for _ in range(count)]


def two_point() -> SetFn:
    """
    g(0) = ((0, 2) + C) union ((2, 0) + C) with C the nonnegative quadrant, empty elsewhere
    """
    cone = Cone.nonnegative_orthant(2)
    at_zero = Polyhedron.point((0,))
    parts = [SetFn.constant(1, UpperSet.translate_cone(point, cone), at_zero) for point in ((0, 2), (2, 0))]
    return fn_lattice_inf(parts, 1, cone)


def not_closed() -> SetFn:
    """
    g(x) = C for x > 0 and the empty set otherwise, with C = Q_+ in Z = Q
    """
    cone = Cone.nonnegative_orthant(1)
    piece = Polyhedron(2, (Constraint((Fraction(-1), Fraction(0)), Fraction(0), True),
                           Constraint((Fraction(0), Fraction(-1)), Fraction(0))))
    return SetFn(1, cone, (piece,))


def shifted_identity(dim: int = 2) -> SetFn:
    """
    g(x) = {x} + C with C the nonnegative orthant
    """
    identity = rat_matrix([[1 if i == j else 0 for j in range(dim)] for i in range(dim)], columns=dim)
    return SetFn.shifted_cone(identity, Cone.nonnegative_orthant(dim))
