"""
Piecewise-linear extended-real functions on X = Q^n.

A ``ScalarFn`` is the union of its epigraph pieces in X x R (last coordinate is the value axis)
together with a finite union of regions where it is -inf. Outside both it is +inf.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Sequence, Tuple

from logic.extended_reals.ext_real import NEG_INF, POS_INF, ExtReal, ext_inf
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.projection import project
from logic.polyhedra.rational import Vector, rat_vector, to_rat, zero_vector
from logic.polyhedra.regions import nonempty
from logic.polyhedra.simplex import lp_solve
from shared.errors import ContractViolation

logger = logging.getLogger(__name__)


def value_row(domain_dim: int, x_part: Sequence[Fraction], t_coefficient, bound, strict: bool = False) -> Constraint:
    return Constraint(tuple(x_part) + (to_rat(t_coefficient),), bound, strict)


def lift_region(region: Polyhedron) -> Polyhedron:
    """
    region x R, as a polyhedron in X x R
    """
    return region.embed(region.dim + 1, range(region.dim))


@dataclass(frozen=True)
class ScalarFn:
    domain_dim: int
    pieces: Tuple[Polyhedron, ...] = ()
    minus_inf_region: Tuple[Polyhedron, ...] = ()

    def __post_init__(self):
        pieces = tuple(self.pieces)
        region = tuple(self.minus_inf_region)
        for p in pieces:
            if p.dim != self.domain_dim + 1:
                raise ContractViolation("epigraph piece of dimension {} for a function on Q^{}".format(p.dim, self.domain_dim))
            if any(c.normal[-1] > 0 for c in p.constraints) and not p.is_empty():
                raise ContractViolation("epigraph piece is not closed upward along the value axis")
        for m in region:
            if m.dim != self.domain_dim:
                raise ContractViolation("-inf region of dimension {} for a function on Q^{}".format(m.dim, self.domain_dim))
        object.__setattr__(self, 'pieces', pieces)
        object.__setattr__(self, 'minus_inf_region', region)

    @classmethod
    def constant(cls, domain_dim: int, value) -> 'ScalarFn':
        value = ExtReal.of(value)
        if value.is_pos_inf:
            return cls(domain_dim)
        if value.is_neg_inf:
            return cls(domain_dim, (), (Polyhedron.whole(domain_dim),))
        return cls(domain_dim, (Polyhedron(domain_dim + 1, (value_row(domain_dim, zero_vector(domain_dim), -1, -value.value),)),))

    @classmethod
    def affine(cls, x_star, r=0, domain: Polyhedron = None) -> 'ScalarFn':
        """
        x -> <x*, x> - r, optionally restricted to ``domain`` (+inf outside)
        """
        return cls.max_affine([(x_star, r)], domain)

    @classmethod
    def max_affine(cls, terms, domain: Polyhedron = None) -> 'ScalarFn':
        """
        x -> max_i (<x*_i, x> - r_i) on ``domain`` (the whole space when omitted)

        :param terms: nonempty list of (x*, r) pairs
        :param domain: optional polyhedron in X
        """
        terms = [(rat_vector(x_star), to_rat(r)) for x_star, r in terms]
        if not terms:
            raise ContractViolation("max_affine needs at least one term")
        n = len(terms[0][0])
        rows = [value_row(n, x_star, -1, r) for x_star, r in terms]
        piece = Polyhedron(n + 1, tuple(rows))
        if domain is not None:
            piece = piece.intersect(lift_region(domain))
        return cls(n, (piece,))

    @classmethod
    def indicator(cls, region: Polyhedron) -> 'ScalarFn':
        n = region.dim
        piece = lift_region(region).with_constraints(value_row(n, zero_vector(n), -1, 0))
        return cls(n, (piece,))

    def _check_point(self, x) -> Vector:
        x = rat_vector(x)
        if len(x) != self.domain_dim:
            raise ContractViolation("point of length {} for a function on Q^{}".format(len(x), self.domain_dim))
        return x

    def fiber_inf(self, piece: Polyhedron, x: Vector) -> ExtReal:
        """
        inf of the value axis over the fiber of one piece; +inf when the fiber is empty
        """
        fiber = piece.fix(x)
        if fiber.is_empty():
            return POS_INF
        result = lp_solve((Fraction(1),), fiber, "min")
        if not result.is_optimal:
            return NEG_INF
        return ExtReal.of(result.value)

    def evaluate(self, x) -> ExtReal:
        """
        Exact value at x; inf over an empty family of fibers is +inf

        :param x: point of Q^domain_dim
        :rtype: ExtReal
        """
        x = self._check_point(x)
        if any(m.contains(x) for m in self.minus_inf_region):
            return NEG_INF
        return ext_inf(self.fiber_inf(p, x) for p in self.pieces)

    __call__ = evaluate

    def normalized(self) -> 'ScalarFn':
        """
        Drop empty parts and move flat pieces (no lower bound on the value axis) to the -inf region
        """
        pieces, region = [], list(nonempty(self.minus_inf_region))
        for p in nonempty(self.pieces):
            if all(c.normal[-1] == 0 for c in p.constraints):
                region.append(Polyhedron(self.domain_dim, tuple(Constraint(c.normal[:-1], c.bound, c.strict)
                                                                for c in p.constraints)))
            else:
                pieces.append(p)
        return ScalarFn(self.domain_dim, tuple(pieces), tuple(region))

    def piece_domains(self) -> List[Polyhedron]:
        return [project(p, range(self.domain_dim)) for p in nonempty(self.pieces)]

    def domain(self) -> List[Polyhedron]:
        """
        dom g = {x : g(x) < +inf} as a union of polyhedra
        """
        return self.piece_domains() + list(nonempty(self.minus_inf_region))

    def epigraph_pieces(self) -> List[Polyhedron]:
        """
        The exact epigraph {(x, r) : g(x) <= r} as a union of polyhedra in X x R

        The epigraph of one piece is its closure over the projection of the piece, since an
        unattained infimum on a fiber still belongs to the epigraph.
        """
        out = []
        for p in nonempty(self.pieces):
            shadow = project(p, range(self.domain_dim))
            out.append(p.closure().intersect(lift_region(shadow)))
        out.extend(lift_region(m) for m in nonempty(self.minus_inf_region))
        return out

    def has_minus_inf(self) -> bool:
        return bool(nonempty(self.minus_inf_region))

    def is_plus_inf(self) -> bool:
        return not self.has_minus_inf() and not nonempty(self.pieces)

    def is_proper(self) -> bool:
        return not self.has_minus_inf() and bool(nonempty(self.pieces))


class ImproperMode(Enum):
    HAT_INF = "hat_inf"
    HAT_SUP = "hat_sup"


@dataclass(frozen=True)
class ImproperAffine:
    """
    The improper extension of x -> <x*, x> - r: only the values -inf and +inf occur

    hat_inf is -inf where <x*, x> - r <= 0 and +inf elsewhere; hat_sup is +inf where
    <x*, x> - r >= 0 and -inf elsewhere.
    """
    x_star: Vector
    r: Fraction
    mode: ImproperMode = ImproperMode.HAT_INF

    def __post_init__(self):
        object.__setattr__(self, 'x_star', rat_vector(self.x_star))
        object.__setattr__(self, 'r', to_rat(self.r))
        object.__setattr__(self, 'mode', ImproperMode(self.mode))


def improper_extend(a: ImproperAffine) -> ScalarFn:
    """
    The improper affine function as a ScalarFn; x* = 0 follows the case split on -r <= 0
    """
    n = len(a.x_star)
    strict = a.mode is ImproperMode.HAT_SUP
    region = Polyhedron(n, (Constraint(a.x_star, a.r, strict),))
    return ScalarFn(n, (), (region,)).normalized()
