"""
Conaffine functions x -> S(x*, r, z*)(x) = {z : <x*, x> - r <= -<z*, z>}.

For z* != 0 every value is a closed halfspace with normal z*. For z* = 0 the value is Z where
<x*, x> <= r and the empty set elsewhere.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.rational import (Vector, add_vectors, dot, is_zero, rat_vector, scale_vector, to_rat,
                                      unit_vector)
from logic.scalar_calculus.operations import is_affine_minorant
from logic.setvalued_calculus.set_fn import SetFn, scalarize
from logic.upper_sets.cone import Cone
from logic.upper_sets.upper_set import UpperSet, includes, minkowski_add, residual, set_equal, translate
from shared.errors import ContractViolation

logger = logging.getLogger(__name__)

_middle_form_reported = False


@dataclass(frozen=True)
class ConAffine:
    x_star: Vector
    r: Fraction
    z_star: Vector
    cone: Cone

    def __post_init__(self):
        object.__setattr__(self, 'x_star', rat_vector(self.x_star))
        object.__setattr__(self, 'r', to_rat(self.r))
        object.__setattr__(self, 'z_star', self.cone.check_dual(self.z_star))

    @property
    def x_dim(self) -> int:
        return len(self.x_star)

    def __call__(self, x) -> UpperSet:
        return eval_conaffine(self, x)

    def as_set_fn(self) -> SetFn:
        """
        The graph {(x, z) : <x*, x> + <z*, z> <= r} as a set-valued map
        """
        row = Constraint(self.x_star + self.z_star, self.r)
        return SetFn(self.x_dim, self.cone, (Polyhedron(self.x_dim + self.cone.dim, (row,)),)).normalized()


def eval_conaffine(s: ConAffine, x) -> UpperSet:
    x = rat_vector(x)
    if len(x) != s.x_dim:
        raise ContractViolation("point of length {} for a conaffine map on Q^{}".format(len(x), s.x_dim))
    return UpperSet.halfspace(s.z_star, s.cone, s.r - dot(s.x_star, x))


def is_minorant(s: ConAffine, g: SetFn) -> bool:
    """
    S(x*, r, z*)(x) contains g(x) for every x

    Decided on the scalar side: the affine map <x*, .> - r must lie below the scalarization of g in
    direction z*.
    """
    if g.x_dim != s.x_dim or g.cone != s.cone:
        raise ContractViolation("conaffine map and set-valued map live on different spaces")
    return is_affine_minorant(s.x_star, s.r, scalarize(g, s.z_star))


def halfspace(z_star, cone: Cone) -> UpperSet:
    """
    H(z*) = {z : <z*, z> <= 0}
    """
    return UpperSet.halfspace(z_star, cone)


def z0_for(z_star) -> Vector:
    """
    e_i / z*_i for the first nonzero coordinate i, so that <z*, z0> = 1
    """
    z_star = rat_vector(z_star)
    for i, a in enumerate(z_star):
        if a != 0:
            return unit_vector(len(z_star), i, 1 / a)
    raise ContractViolation("z0 is only defined for a nonzero z*")


def sublinearity_holds(x_star, z_star, cone: Cone, x, y) -> bool:
    """
    S(x+y) contains S(x) + S(y), S(x*)(x) = S(-x*)(-x), and for z* != 0 also S(x) = H(z*) -. S(-x)
    """
    x, y = rat_vector(x), rat_vector(y)
    s = ConAffine(x_star, 0, z_star, cone)
    flipped = ConAffine(tuple(-a for a in s.x_star), 0, z_star, cone)
    minus_x = tuple(-a for a in x)
    ok = includes(s(add_vectors(x, y)), minkowski_add(s(x), s(y)))
    ok = ok and set_equal(s(x), flipped(minus_x))
    if not is_zero(s.z_star):
        ok = ok and set_equal(s(x), residual(halfspace(z_star, cone), s(minus_x)))
    return ok


def additivity_holds(x_star, y_star, r, z_star, cone: Cone, x) -> bool:
    """
    For z* != 0: S(x*, r, z*)(x) = S(x*, 0, z*)(x) + {r z0} and
    S(x* + y*, r, z*)(x) = S(x*, 0, z*)(x) + S(y*, 0, z*)(x) + {r z0}
    """
    r = to_rat(r)
    shift = scale_vector(r, z0_for(z_star))
    s = ConAffine(x_star, 0, z_star, cone)
    t = ConAffine(y_star, 0, z_star, cone)
    ok = set_equal(ConAffine(x_star, r, z_star, cone)(x), translate(s(x), shift))
    both = ConAffine(add_vectors(s.x_star, t.x_star), r, z_star, cone)
    ok = ok and set_equal(both(x), translate(minkowski_add(s(x), t(x)), shift))
    return ok and not s(x).is_empty()


def scaling_holds(x_star, r, z_star, cone: Cone, t, x) -> bool:
    """
    S(t x*, t r, z*)(x) = S(x*, t r, z*)(t x) for t > 0
    """
    global _middle_form_reported
    t = to_rat(t)
    if t <= 0:
        raise ContractViolation("scaling identity needs t > 0")
    if not _middle_form_reported:
        logger.warning("scaling identity: only the outer equality is checked, the middle form is unverified")
        _middle_form_reported = True
    x_star, r = rat_vector(x_star), to_rat(r)
    left = ConAffine(scale_vector(t, x_star), t * r, z_star, cone)(x)
    right = ConAffine(x_star, t * r, z_star, cone)(scale_vector(t, rat_vector(x)))
    return set_equal(left, right)
