"""
V-representations on demand: closed hulls and Minkowski sums go through the double description method.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from libraries.double_description import DoubleDescription
from logic.polyhedra.canonical import canonicalize
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.rational import Vector, add_vectors, is_zero, rat_vector
from shared.errors import ContractViolation

logger = logging.getLogger(__name__)

_engine = None


def _dd() -> DoubleDescription:
    global _engine
    if _engine is None:
        _engine = DoubleDescription()
    return _engine


@dataclass(frozen=True)
class Generators:
    """
    conv(points) + cone(rays) + span(lines); no points means the empty set
    """
    dim: int
    points: Tuple[Vector, ...] = ()
    rays: Tuple[Vector, ...] = ()
    lines: Tuple[Vector, ...] = ()

    def __post_init__(self):
        for name in ('points', 'rays', 'lines'):
            vectors = tuple(rat_vector(v) for v in getattr(self, name))
            if any(len(v) != self.dim for v in vectors):
                raise ContractViolation("generator of the wrong length in dimension {}".format(self.dim))
            if name != 'points':
                vectors = tuple(v for v in vectors if not is_zero(v))
            object.__setattr__(self, name, vectors)

    def is_empty(self) -> bool:
        return not self.points

    def merged(self, other: 'Generators') -> 'Generators':
        return Generators(self.dim, self.points + other.points, self.rays + other.rays, self.lines + other.lines)

    def with_directions(self, rays: Iterable[Vector] = (), lines: Iterable[Vector] = ()) -> 'Generators':
        return Generators(self.dim, self.points, self.rays + tuple(rays), self.lines + tuple(lines))


def to_generators(p: Polyhedron) -> Generators:
    """
    Generators of the closure of p

    :param p: any polyhedron; strict rows are relaxed
    :return: points, rays and lines of cl p
    :rtype: Generators
    """
    closed = p.closure()
    if closed.is_empty():
        return Generators(p.dim)
    if p.dim == 0:
        return Generators(0, ((),))
    rows = [(c.normal, c.bound) for c in closed.constraints if not c.is_trivial()]
    points, rays, lines = _dd().generators(p.dim, rows)
    logger.debug("H->V: %d rows gave %d points, %d rays, %d lines", len(rows), len(points), len(rays), len(lines))
    return Generators(p.dim, tuple(points), tuple(rays), tuple(lines))


def from_generators(g: Generators) -> Polyhedron:
    """
    Canonical H-representation of the closed polyhedron spanned by g
    """
    if g.is_empty():
        return Polyhedron.empty(g.dim)
    if g.dim == 0:
        return Polyhedron.whole(0)
    inequalities, equalities = _dd().inequalities(g.dim, g.points, g.rays, g.lines)
    constraints = [Constraint(normal, bound) for normal, bound in inequalities]
    for normal, bound in equalities:
        constraints.append(Constraint(normal, bound))
        constraints.append(Constraint(tuple(-a for a in normal), -bound))
    return canonicalize(Polyhedron(g.dim, tuple(constraints)))


def closed_hull(pieces: Sequence[Polyhedron], dim: int, rays: Iterable[Vector] = (),
                lines: Iterable[Vector] = ()) -> Polyhedron:
    """
    Closed convex hull of a finite union, optionally enlarged by extra recession directions

    :param pieces: the polyhedra to hull
    :param dim: ambient dimension (needed when pieces is empty)
    :param rays: extra recession rays added to every nonempty hull
    :param lines: extra lineality directions
    :return: canonical closed polyhedron (empty when every piece is empty)
    """
    total = Generators(dim)
    for p in pieces:
        if p.dim != dim:
            raise ContractViolation("hull of a piece of dimension {} in dimension {}".format(p.dim, dim))
        total = total.merged(to_generators(p))
    if total.is_empty():
        return Polyhedron.empty(dim)
    return from_generators(total.with_directions(rays, lines))


def closed_minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    """
    cl p + cl q from generator sums
    """
    if p.dim != q.dim:
        raise ContractViolation("minkowski sum of dimensions {} and {}".format(p.dim, q.dim))
    gp, gq = to_generators(p), to_generators(q)
    if gp.is_empty() or gq.is_empty():
        return Polyhedron.empty(p.dim)
    points = tuple(add_vectors(a, b) for a in gp.points for b in gq.points)
    return from_generators(Generators(p.dim, points, gp.rays + gq.rays, gp.lines + gq.lines))


def recession_contains(p: Polyhedron, direction: Sequence[Fraction]) -> bool:
    """
    direction is a recession direction of the closure of p (vacuously true for empty p)
    """
    if p.is_empty():
        return True
    return all(sum((a * d for a, d in zip(c.normal, direction)), Fraction(0)) <= 0 for c in p.constraints)
