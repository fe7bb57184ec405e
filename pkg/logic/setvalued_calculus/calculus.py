"""
Graph-level calculus of set-valued maps: inf-convolution, pointwise sums, images, preimages and the
lattice operations.
"""
import logging
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from logic.polyhedra.generators import closed_minkowski_sum
from logic.polyhedra.polyhedron import Polyhedron
from logic.polyhedra.projection import minkowski_sum, project
from logic.polyhedra.rational import identity_matrix, rat_matrix
from logic.polyhedra.regions import intersect_unions, nonempty
from logic.scalar_calculus.operations import image_regions
from logic.setvalued_calculus.set_fn import SetFn, _same_space, block_matrix
from logic.upper_sets.cone import Cone
from shared.errors import ContractViolation

logger = logging.getLogger(__name__)


def _graph_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    if p.is_closed() and q.is_closed():
        return closed_minkowski_sum(p, q)
    return minkowski_sum(p, q)


def fn_inf_convolve(g: SetFn, h: SetFn) -> SetFn:
    """
    (g box h)(x) = union over y of g(x - y) + h(y), whose graph is gr g + gr h
    """
    _same_space(g, h)
    pieces = [_graph_sum(p, q) for p in g.graph_pieces() for q in h.graph_pieces()]
    return SetFn(g.x_dim, g.cone, tuple(nonempty(pieces))).normalized()


def fn_sum(g: SetFn, h: SetFn) -> SetFn:
    """
    (g + h)(x) = g(x) + h(x), the shadow of {(x, z, u) : (x, z - u) in gr g, (x, u) in gr h}
    """
    _same_space(g, h)
    n, m = g.x_dim, g.z_dim
    width = n + 2 * m
    rows = []
    for i in range(n + m):
        row = [Fraction(0)] * width
        row[i] = Fraction(1)
        if i >= n:
            row[i + m] = Fraction(-1)
        rows.append(row)
    difference = rat_matrix(rows, columns=width)
    keep_u = list(range(n)) + list(range(n + m, width))
    pieces = []
    for p in g.graph_pieces():
        for q in h.graph_pieces():
            lifted = p.substitute(difference).intersect(q.embed(width, keep_u))
            pieces.append(project(lifted, range(n + m)))
    return SetFn(n, g.cone, tuple(nonempty(pieces))).normalized()


def fn_precompose(f: SetFn, matrix: np.ndarray) -> SetFn:
    """
    (f T)(x) = f(T x) for f on Y and T : X -> Y
    """
    k, n = matrix.shape
    if k != f.x_dim:
        raise ContractViolation("matrix with {} rows for a map on Q^{}".format(k, f.x_dim))
    lift = block_matrix(matrix, identity_matrix(f.z_dim))
    pieces = [p.substitute(lift) for p in f.pieces]
    region = [m.substitute(matrix) for m in f.full_region]
    return SetFn(n, f.cone, tuple(nonempty(pieces)), tuple(nonempty(region)))


def fn_pushforward(matrix: np.ndarray, g: SetFn) -> SetFn:
    """
    (T g)(y) = union of g(x) over T x = y
    """
    k, n = matrix.shape
    if n != g.x_dim:
        raise ContractViolation("matrix with {} columns for a map on Q^{}".format(n, g.x_dim))
    images = image_regions(block_matrix(matrix, identity_matrix(g.z_dim)), g.graph_pieces())
    return SetFn(k, g.cone, tuple(images)).normalized()


def fn_lattice_inf(family: Sequence[SetFn], x_dim: int, cone: Cone) -> SetFn:
    """
    Pointwise union; the empty family is the map that is empty everywhere
    """
    pieces: List[Polyhedron] = []
    region: List[Polyhedron] = []
    for g in family:
        if g.x_dim != x_dim or g.cone != cone:
            raise ContractViolation("lattice inf over maps on different spaces")
        pieces.extend(g.pieces)
        region.extend(g.full_region)
    return SetFn(x_dim, cone, tuple(pieces), tuple(region))


def fn_lattice_sup(family: Sequence[SetFn], x_dim: int, cone: Cone) -> SetFn:
    """
    Pointwise intersection; the empty family is the map that is Z everywhere
    """
    pieces = [Polyhedron.whole(x_dim + cone.dim)]
    for g in family:
        if g.x_dim != x_dim or g.cone != cone:
            raise ContractViolation("lattice sup over maps on different spaces")
        pieces = intersect_unions(pieces, g.graph_pieces())
    return SetFn(x_dim, cone, tuple(pieces)).normalized()
