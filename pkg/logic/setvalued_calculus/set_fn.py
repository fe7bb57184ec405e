"""
Set-valued functions of epigraphical type g : X -> P(Z), g(x) = g(x) + C.

A ``SetFn`` is stored as its graph: a finite union of polyhedra in X x Z (x coordinates first) plus a
union of regions in X where g(x) = Z. Scalarization and setification move between this world and
``ScalarFn``.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from logic.polyhedra.generators import closed_hull, recession_contains
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.projection import project
from logic.polyhedra.rational import Vector, is_zero, rat_matrix, rat_vector, zero_vector
from logic.polyhedra.regions import complement, covers, nonempty, uncovered_point
from logic.polyhedra.simplex import find_point
from logic.scalar_calculus.scalar_fn import ScalarFn
from logic.upper_sets.cone import Cone
from logic.upper_sets.upper_set import UpperSet
from shared.errors import ContractViolation, NotAnUpperSetError

logger = logging.getLogger(__name__)


def block_matrix(top_left: np.ndarray, bottom_right: np.ndarray) -> np.ndarray:
    """
    diag(top_left, bottom_right) as a rational matrix
    """
    (a, b), (c, d) = top_left.shape, bottom_right.shape
    rows = []
    for i in range(a):
        rows.append([top_left[i, j] for j in range(b)] + [Fraction(0)] * d)
    for i in range(c):
        rows.append([Fraction(0)] * b + [bottom_right[i, j] for j in range(d)])
    return rat_matrix(rows, columns=b + d)


@dataclass(frozen=True)
class SetFn:
    x_dim: int
    cone: Cone
    pieces: Tuple[Polyhedron, ...] = ()
    full_region: Tuple[Polyhedron, ...] = ()

    def __post_init__(self):
        pieces, region = tuple(self.pieces), tuple(self.full_region)
        width = self.x_dim + self.cone.dim
        for p in pieces:
            if p.dim != width:
                raise ContractViolation("graph piece of dimension {} for a map Q^{} -> Q^{}".format(
                    p.dim, self.x_dim, self.cone.dim))
            for g in self.cone.generators:
                if not recession_contains(p, zero_vector(self.x_dim) + g):
                    raise NotAnUpperSetError("a graph piece has a value that is not an upper set")
        for m in region:
            if m.dim != self.x_dim:
                raise ContractViolation("full region of dimension {} for a map on Q^{}".format(m.dim, self.x_dim))
        object.__setattr__(self, 'pieces', pieces)
        object.__setattr__(self, 'full_region', region)

    @property
    def z_dim(self) -> int:
        return self.cone.dim

    @property
    def width(self) -> int:
        return self.x_dim + self.cone.dim

    @classmethod
    def empty(cls, x_dim: int, cone: Cone) -> 'SetFn':
        return cls(x_dim, cone)

    @classmethod
    def whole(cls, x_dim: int, cone: Cone) -> 'SetFn':
        return cls(x_dim, cone, (), (Polyhedron.whole(x_dim),))

    @classmethod
    def shifted_cone(cls, matrix: np.ndarray, cone: Cone, offset=None, domain: Polyhedron = None) -> 'SetFn':
        """
        x -> {T x + b} + C, optionally restricted to ``domain``

        :param matrix: T, of shape (dim Z, dim X)
        :param offset: b (zero when omitted)
        """
        m, n = matrix.shape
        if m != cone.dim:
            raise ContractViolation("matrix with {} rows for a cone in dimension {}".format(m, cone.dim))
        # z - T x - b in C
        rows = [[-matrix[i, j] for j in range(n)] + [Fraction(1) if k == i else Fraction(0) for k in range(m)]
                for i in range(m)]
        shift = tuple(-a for a in rat_vector(offset)) if offset is not None else None
        piece = cone.polyhedron.substitute(rat_matrix(rows, columns=n + m), shift)
        if domain is not None:
            piece = piece.intersect(lift_region(domain, m))
        return cls(n, cone, (piece,))

    @classmethod
    def constant(cls, x_dim: int, value: UpperSet, domain: Polyhedron = None) -> 'SetFn':
        """
        x -> value on ``domain`` (everywhere when omitted), the empty set elsewhere
        """
        m = value.dim
        pieces = [p.embed(x_dim + m, range(x_dim, x_dim + m)) for p in value.pieces]
        if domain is not None:
            pieces = [p.intersect(lift_region(domain, m)) for p in pieces]
        return cls(x_dim, value.cone, tuple(pieces))

    def _check_point(self, x) -> Vector:
        x = rat_vector(x)
        if len(x) != self.x_dim:
            raise ContractViolation("point of length {} for a map on Q^{}".format(len(x), self.x_dim))
        return x

    def evaluate(self, x) -> UpperSet:
        """
        The exact value g(x) as an upper set
        """
        x = self._check_point(x)
        if any(m.contains(x) for m in self.full_region):
            return UpperSet.whole(self.cone)
        return UpperSet(self.z_dim, tuple(nonempty([p.fix(x) for p in self.pieces])), self.cone)

    __call__ = evaluate

    def graph_pieces(self) -> List[Polyhedron]:
        """
        gr g as a union of polyhedra in X x Z, full fibers included
        """
        return nonempty(self.pieces) + [lift_region(m, self.z_dim) for m in nonempty(self.full_region)]

    def normalized(self) -> 'SetFn':
        """
        Drop empty parts and move pieces whose rows never involve z to the full region
        """
        pieces, region = [], list(nonempty(self.full_region))
        for p in nonempty(self.pieces):
            if all(is_zero(c.normal[self.x_dim:]) for c in p.constraints):
                region.append(Polyhedron(self.x_dim, tuple(Constraint(c.normal[:self.x_dim], c.bound, c.strict)
                                                           for c in p.constraints)))
            else:
                pieces.append(p)
        return SetFn(self.x_dim, self.cone, tuple(pieces), tuple(region))

    def domain(self) -> List[Polyhedron]:
        """
        dom g = {x : g(x) is not empty}
        """
        return nonempty([project(p, range(self.x_dim)) for p in nonempty(self.pieces)]) + nonempty(self.full_region)

    def is_empty_fn(self) -> bool:
        return not self.domain()

    def full_fiber_point(self) -> Optional[Vector]:
        """
        A point x with g(x) = Z, or None

        Outside the full region, g(x) falls short of Z exactly when the fiber over x meets the complement
        of the graph, so the candidates are the points of dom g missed by the shadows of the complement
        cells.
        """
        g = self.normalized()
        for m in g.full_region:
            point = find_point(m)
            if point is not None:
                return point
        shadows = nonempty([project(c, range(g.x_dim)) for c in complement(nonempty(g.pieces), g.width)])
        for d in g.domain():
            point = uncovered_point(shadows, d)
            if point is not None:
                logger.debug("full fiber over %s", [str(a) for a in point])
                return point
        return None


def lift_region(region: Polyhedron, z_dim: int) -> Polyhedron:
    """
    region x Z
    """
    return region.embed(region.dim + z_dim, range(region.dim))


def _same_space(g: SetFn, h: SetFn):
    if g.x_dim != h.x_dim or g.cone != h.cone:
        raise ContractViolation("set-valued maps over different spaces or cones cannot be combined")


def scalarize(g: SetFn, z_star) -> ScalarFn:
    """
    x -> inf {-<z*, z> : z in g(x)}

    For z* = 0 this is the indicator of dom g. Otherwise each graph piece is lifted to (x, z, t) with
    t >= -<z*, z> and projected onto (x, t); pieces that lose every row on the value axis are where
    the fiber objective is unbounded and end up in the -inf region.

    :param g: the set-valued map
    :param z_star: a direction in C^-
    :return: the scalarization
    :rtype: ScalarFn
    """
    z_star = g.cone.check_dual(z_star)
    n, m = g.x_dim, g.z_dim
    if is_zero(z_star):
        return ScalarFn(n, tuple(ScalarFn.indicator(d).pieces[0] for d in g.domain()))
    pieces = []
    for p in nonempty(g.pieces):
        lifted = p.embed(n + m + 1, range(n + m)).with_constraints(
            Constraint(zero_vector(n) + tuple(-a for a in z_star) + (Fraction(-1),), Fraction(0)))
        pieces.append(project(lifted, list(range(n)) + [n + m]))
    return ScalarFn(n, tuple(pieces), tuple(nonempty(g.full_region))).normalized()


def setify(f: ScalarFn, z_star, cone: Cone) -> SetFn:
    """
    x -> {z : f(x) <= -<z*, z>}, built as the preimage of epi f under (x, z) -> (x, -<z*, z>)

    For z* = 0 every value is Z or the empty set, depending on f(x) <= 0.
    """
    z_star = cone.check_dual(z_star)
    n, m = f.domain_dim, cone.dim
    rows = [[Fraction(1) if j == i else Fraction(0) for j in range(n + m)] for i in range(n)]
    rows.append(list(zero_vector(n)) + [-a for a in z_star])
    matrix = rat_matrix(rows, columns=n + m)
    pieces = [e.substitute(matrix) for e in f.epigraph_pieces()]
    return SetFn(n, cone, tuple(nonempty(pieces))).normalized()


def cl_co_fn(g: SetFn) -> SetFn:
    """
    The map whose graph is the closed convex hull of gr g
    """
    rays = [zero_vector(g.x_dim) + c for c in g.cone.generators]
    hull = closed_hull(g.graph_pieces(), g.width, rays=rays)
    return SetFn(g.x_dim, g.cone, tuple(nonempty([hull])))


def facet_directions(g: SetFn) -> List[Tuple[Vector, Vector]]:
    """
    Outward normals (x*, z*) of cl co gr g together with (0, z*) for the generators of C^-

    The pair (0, 0) is always present so that the z* = 0 branch is represented. An empty map has
    nothing else.

    :return: sorted, duplicate-free list of (x*, z*) pairs
    """
    n, m = g.x_dim, g.z_dim
    directions = {(zero_vector(n), zero_vector(m))}
    hull = cl_co_fn(g)
    if not hull.pieces:
        return sorted(directions)
    for c in hull.pieces[0].constraints:
        directions.add((c.normal[:n], c.normal[n:]))
    for d in g.cone.dual_generators:
        directions.add((zero_vector(n), d))
    logger.debug("%d facet directions", len(directions))
    return sorted(directions)


def same_set_fn(g: SetFn, h: SetFn) -> bool:
    """
    g(x) = h(x) for every x, decided on the graphs
    """
    _same_space(g, h)
    mine, theirs = g.graph_pieces(), h.graph_pieces()
    return all(covers(mine, p) for p in theirs) and all(covers(theirs, p) for p in mine)


def graph_witness(g: SetFn, h: SetFn) -> Optional[Vector]:
    """
    A point (x, z) in one graph but not the other, or None
    """
    _same_space(g, h)
    mine, theirs = g.graph_pieces(), h.graph_pieces()
    for cover, pieces in ((mine, theirs), (theirs, mine)):
        for p in pieces:
            point = uncovered_point(cover, p)
            if point is not None:
                return point
    return None


def restricted(g: SetFn, region: Polyhedron) -> SetFn:
    """
    g on region, the empty set elsewhere
    """
    lifted = lift_region(region, g.z_dim)
    return SetFn(g.x_dim, g.cone, tuple(p.intersect(lifted) for p in g.pieces),
                 tuple(m.intersect(region) for m in g.full_region))


def sample_points(g: SetFn) -> List[Vector]:
    """
    One point per piece of dom g, used as the finite x-sample of the defining intersections
    """
    points = []
    for d in g.domain():
        point = find_point(d)
        if point is not None and point not in points:
            points.append(point)
    return points
