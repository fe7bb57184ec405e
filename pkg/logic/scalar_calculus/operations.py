"""
Hulls, conjugates and the inf-convolution / image / preimage calculus of scalar functions.

Every construction works on epigraph pieces: lifts are preimages under linear maps, images are
Fourier-Motzkin projections and hulls go through generators.
"""
import logging
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from logic.extended_reals.ext_real import NEG_INF, POS_INF, ExtReal
from logic.polyhedra.canonical import canonicalize
from logic.polyhedra.generators import closed_hull, to_generators
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.projection import minkowski_sum, project
from logic.polyhedra.rational import rat_matrix, rat_vector, to_rat, zero_vector
from logic.polyhedra.regions import covers, intersect_unions, nonempty, uncovered_point
from logic.polyhedra.simplex import LPStatus, find_point, lexicographic_argmin, lp_solve
from logic.scalar_calculus.scalar_fn import ScalarFn, lift_region
from shared.errors import ContractViolation

logger = logging.getLogger(__name__)

INF_ADDITION = "inf"
SUP_ADDITION = "sup"


def _selector(rows: Sequence[Sequence[int]], width: int) -> np.ndarray:
    """
    Matrix whose row i is the sum of signed unit vectors listed in rows[i]; entries are
    (column, coefficient) pairs
    """
    matrix = [[Fraction(0)] * width for _ in rows]
    for i, entries in enumerate(rows):
        for column, coefficient in entries:
            matrix[i][column] += coefficient
    return rat_matrix(matrix, columns=width)


def _same_dim(g: ScalarFn, h: ScalarFn):
    if g.domain_dim != h.domain_dim:
        raise ContractViolation("functions on Q^{} and Q^{} cannot be combined".format(g.domain_dim, h.domain_dim))


def minkowski_regions(left: Sequence[Polyhedron], right: Sequence[Polyhedron]) -> List[Polyhedron]:
    """
    Pairwise Minkowski sums of two unions (strict rows honoured), by projection of a lift
    """
    return nonempty([minkowski_sum(a, b) for a in nonempty(left) for b in nonempty(right)])


def image_regions(matrix: np.ndarray, regions: Sequence[Polyhedron]) -> List[Polyhedron]:
    """
    Images of polyhedra in Q^k under matrix (n x k)
    """
    n, k = matrix.shape
    out = []
    for region in nonempty(regions):
        # coordinates (x, y): y in region, x = matrix @ y
        lifted = region.embed(n + k, range(n, n + k))
        rows = []
        for i in range(n):
            normal = tuple([Fraction(1) if j == i else Fraction(0) for j in range(n)] +
                           [-Fraction(matrix[i, j]) for j in range(k)])
            rows.append(Constraint(normal, 0))
            rows.append(Constraint(tuple(-a for a in normal), 0))
        out.append(project(lifted.with_constraints(*rows), range(n)))
    return nonempty(out)


def conjugate(g: ScalarFn) -> ScalarFn:
    """
    g*(x*) = sup_x (<x*, x> -. g(x))

    Any -inf value makes g* identically +inf and g identically +inf gives g* identically -inf.
    Otherwise the sup over each piece is read off the generators of its closure: points give
    affine lower bounds on g*, rays and lines restrict its domain.

    :param g: the function to conjugate
    :return: g* as a single convex piece
    :rtype: ScalarFn
    """
    n = g.domain_dim
    g = g.normalized()
    if g.has_minus_inf():
        return ScalarFn.constant(n, POS_INF)
    if g.is_plus_inf():
        return ScalarFn.constant(n, NEG_INF)
    rows = []
    for p in g.pieces:
        gens = to_generators(p)
        for v in gens.points:
            rows.append(Constraint(v[:-1] + (Fraction(-1),), v[-1]))
        for d in gens.rays:
            rows.append(Constraint(d[:-1] + (Fraction(0),), d[-1]))
        for line in gens.lines:
            rows.append(Constraint(line[:-1] + (Fraction(0),), line[-1]))
            rows.append(Constraint(tuple(-a for a in line[:-1]) + (Fraction(0),), -line[-1]))
    epigraph = canonicalize(Polyhedron(n + 1, tuple(rows)))
    logger.debug("conjugate epigraph has %d rows", len(epigraph.constraints))
    return ScalarFn(n, (epigraph,)).normalized()


def biconjugate(g: ScalarFn) -> ScalarFn:
    return conjugate(conjugate(g))


def cl_co(g: ScalarFn) -> ScalarFn:
    """
    Closed convex hull: the function whose epigraph is cl co (epi g)
    """
    n = g.domain_dim
    g = g.normalized()
    parts = list(g.pieces) + [lift_region(m) for m in g.minus_inf_region]
    if not parts:
        return g
    up = tuple(Fraction(0) for _ in range(n)) + (Fraction(1),)
    hull = closed_hull(parts, n + 1, rays=[up])
    return ScalarFn(n, (hull,)).normalized()


def inf_convolve(g: ScalarFn, h: ScalarFn, addition: str = INF_ADDITION) -> ScalarFn:
    """
    (g box h)(x) = inf_u (g(x - u) + h(u)) with the chosen extended addition

    :param g: first function
    :param h: second function
    :param addition: "inf" (+inf dominates) or "sup" (-inf dominates)
    :return: the inf-convolution
    """
    _same_dim(g, h)
    n = g.domain_dim
    g, h = g.normalized(), h.normalized()
    if addition == SUP_ADDITION and (g.has_minus_inf() or h.has_minus_inf()):
        return ScalarFn.constant(n, NEG_INF)
    if addition == INF_ADDITION:
        region = minkowski_regions(g.minus_inf_region, h.domain()) + minkowski_regions(g.domain(), h.minus_inf_region)
    elif addition == SUP_ADDITION:
        region = []
    else:
        raise ContractViolation("addition must be 'inf' or 'sup', got {!r}".format(addition))
    # lifted coordinates (x, t, u, t1): (x - u, t1) in a piece of g, (u, t - t1) in a piece of h
    width = 2 * n + 2
    to_g = _selector([[(i, 1), (n + 1 + i, -1)] for i in range(n)] + [[(2 * n + 1, 1)]], width)
    to_h = _selector([[(n + 1 + i, 1)] for i in range(n)] + [[(n, 1), (2 * n + 1, -1)]], width)
    pieces = []
    for p in g.pieces:
        for q in h.pieces:
            lifted = p.substitute(to_g).intersect(q.substitute(to_h))
            pieces.append(project(lifted, range(n + 1)))
    return ScalarFn(n, tuple(pieces), tuple(region)).normalized()


def pushforward(s: np.ndarray, f: ScalarFn) -> ScalarFn:
    """
    (S f)(x) = inf {f(y) : S y = x} for S mapping Q^k to Q^n
    """
    n, k = s.shape
    if f.domain_dim != k:
        raise ContractViolation("matrix with {} columns pushing forward a function on Q^{}".format(k, f.domain_dim))
    f = f.normalized()
    # lifted coordinates (x, t, y)
    width = n + 1 + k
    to_f = _selector([[(n + 1 + j, 1)] for j in range(k)] + [[(n, 1)]], width)
    links = []
    for i in range(n):
        normal = tuple([Fraction(1) if j == i else Fraction(0) for j in range(n)] + [Fraction(0)] +
                       [-Fraction(s[i, j]) for j in range(k)])
        links.append(Constraint(normal, 0))
        links.append(Constraint(tuple(-a for a in normal), 0))
    pieces = [project(p.substitute(to_f).with_constraints(*links), range(n + 1)) for p in f.pieces]
    return ScalarFn(n, tuple(pieces), tuple(image_regions(s, f.minus_inf_region))).normalized()


def precompose(f: ScalarFn, t: np.ndarray) -> ScalarFn:
    """
    (f T)(x) = f(T x) for T mapping Q^n to Q^k
    """
    k, n = t.shape
    if f.domain_dim != k:
        raise ContractViolation("matrix with {} rows composed into a function on Q^{}".format(k, f.domain_dim))
    lifted = _selector([[(j, Fraction(t[i, j])) for j in range(n)] for i in range(k)] + [[(n, 1)]], n + 1)
    pieces = [p.substitute(lifted) for p in f.pieces]
    region = [m.substitute(t) for m in f.minus_inf_region]
    return ScalarFn(n, tuple(pieces), tuple(region)).normalized()


def fn_add(g: ScalarFn, h: ScalarFn, addition: str = INF_ADDITION) -> ScalarFn:
    """
    Pointwise g + h with the chosen extended addition
    """
    _same_dim(g, h)
    n = g.domain_dim
    g, h = g.normalized(), h.normalized()
    if addition == INF_ADDITION:
        region = intersect_unions(g.minus_inf_region, h.domain()) + intersect_unions(h.minus_inf_region, g.domain())
    elif addition == SUP_ADDITION:
        region = list(g.minus_inf_region) + list(h.minus_inf_region)
    else:
        raise ContractViolation("addition must be 'inf' or 'sup', got {!r}".format(addition))
    # lifted coordinates (x, t, t1): (x, t1) in a piece of g, (x, t - t1) in a piece of h
    width = n + 2
    to_g = _selector([[(i, 1)] for i in range(n)] + [[(n + 1, 1)]], width)
    to_h = _selector([[(i, 1)] for i in range(n)] + [[(n, 1), (n + 1, -1)]], width)
    pieces = []
    for p in g.pieces:
        for q in h.pieces:
            pieces.append(project(p.substitute(to_g).intersect(q.substitute(to_h)), range(n + 1)))
    return ScalarFn(n, tuple(pieces), tuple(region)).normalized()


def pointwise_min(g: ScalarFn, h: ScalarFn) -> ScalarFn:
    _same_dim(g, h)
    return ScalarFn(g.domain_dim, g.pieces + h.pieces, g.minus_inf_region + h.minus_inf_region).normalized()


def pointwise_max(g: ScalarFn, h: ScalarFn) -> ScalarFn:
    """
    max(g, h): epigraphs intersect, and -inf only survives where both are -inf
    """
    _same_dim(g, h)
    g, h = g.normalized(), h.normalized()
    pieces = intersect_unions(g.pieces, h.pieces)
    pieces += intersect_unions(g.pieces, [lift_region(m) for m in h.minus_inf_region])
    pieces += intersect_unions(h.pieces, [lift_region(m) for m in g.minus_inf_region])
    region = intersect_unions(g.minus_inf_region, h.minus_inf_region)
    return ScalarFn(g.domain_dim, tuple(pieces), tuple(region)).normalized()


def is_minorant(g: ScalarFn, h: ScalarFn) -> bool:
    """
    g <= h everywhere, i.e. epi h is contained in epi g
    """
    _same_dim(g, h)
    cover = g.epigraph_pieces()
    return all(covers(cover, piece) for piece in h.epigraph_pieces())


def same_function(g: ScalarFn, h: ScalarFn) -> bool:
    return is_minorant(g, h) and is_minorant(h, g)


def is_affine_minorant(x_star, r, g: ScalarFn) -> bool:
    """
    <x*, x> - r <= g(x) for every x
    """
    x_star, r = rat_vector(x_star), to_rat(r)
    g = g.normalized()
    if g.has_minus_inf():
        return False
    objective = tuple(-a for a in x_star) + (Fraction(1),)
    for p in g.pieces:
        result = lp_solve(objective, p, "min")
        if not result.is_optimal or result.value < -r:
            return False
    return True


def is_improper_affine_minorant(x_star, r, g: ScalarFn) -> bool:
    """
    The -inf/+inf extension of <x*, .> - r lies below g iff <x*, x> <= r on dom g
    """
    x_star, r = rat_vector(x_star), to_rat(r)
    for region in g.domain():
        result = lp_solve(x_star, region, "max")
        if result.status is LPStatus.UNBOUNDED or (result.is_optimal and result.value > r):
            return False
    return True


def improper_minorant_envelope(g: ScalarFn) -> ScalarFn:
    """
    Supremum of all improper affine minorants: -inf on cl co dom g, +inf elsewhere
    """
    n = g.domain_dim
    hull = closed_hull(g.domain(), n)
    return ScalarFn(n, (), (hull,)).normalized()


def affine_minorant_envelope(g: ScalarFn) -> ScalarFn:
    """
    Supremum of all affine minorants, proper and improper
    """
    conj = conjugate(g)
    if conj.is_proper():
        return conjugate(conj)
    return improper_minorant_envelope(g)


def shifted(g: ScalarFn, constant) -> ScalarFn:
    """
    g + c for a finite c
    """
    c = to_rat(constant)
    n = g.domain_dim
    pieces = [p.translated(zero_vector(n) + (c,)) for p in g.pieces]
    return ScalarFn(n, tuple(pieces), g.minus_inf_region)


def restricted(g: ScalarFn, region: Polyhedron) -> ScalarFn:
    """
    g on region, +inf elsewhere
    """
    pieces = [p.intersect(lift_region(region)) for p in g.pieces]
    minus = [m.intersect(region) for m in g.minus_inf_region]
    return ScalarFn(g.domain_dim, tuple(pieces), tuple(minus)).normalized()


def infimum(g: ScalarFn):
    """
    inf_x g(x) with an attaining (or approaching) x when one exists

    :return: (ExtReal, optional point)
    """
    g = g.normalized()
    n = g.domain_dim
    for m in g.minus_inf_region:
        return NEG_INF, find_point(m)
    best, where = POS_INF, None
    objective = zero_vector(n) + (Fraction(1),)
    for p in g.pieces:
        result = lp_solve(objective, p, "min")
        if result.status is LPStatus.UNBOUNDED:
            return NEG_INF, None
        if result.is_optimal and ExtReal.of(result.value) < best:
            best, where = ExtReal.of(result.value), result.point[:n]
    return best, where


def _lift_through(p: Polyhedron, matrix: np.ndarray, offset, value_column: int, width: int) -> Polyhedron:
    """
    Preimage of an epigraph piece under (y, t1, t2) -> (matrix @ y + offset, t_value_column)
    """
    n, k = matrix.shape
    rows = [[Fraction(matrix[i, j]) for j in range(k)] + [Fraction(0)] * (width - k) for i in range(n)]
    rows.append([Fraction(0)] * width)
    rows[n][value_column] = Fraction(1)
    full_offset = tuple(offset) + (Fraction(0),)
    return p.substitute(rat_matrix(rows, columns=width), full_offset)


def composite_infimum(first: ScalarFn, first_map, second: ScalarFn, second_map,
                      addition: str = INF_ADDITION):
    """
    inf over y of first(A y + a) + second(B y + b) with the chosen extended addition

    The finite part is one LP per pair of pieces in (y, t1, t2) minimizing t1 + t2; ties are broken
    towards the lexicographically smallest y.

    :param first_map: (A, a)
    :param second_map: (B, b)
    :return: (ExtReal value, attaining y or None)
    """
    (a_matrix, a_offset), (b_matrix, b_offset) = first_map, second_map
    k = a_matrix.shape[1]
    first, second = first.normalized(), second.normalized()
    first_minus = [m.substitute(a_matrix, a_offset) for m in first.minus_inf_region]
    second_minus = [m.substitute(b_matrix, b_offset) for m in second.minus_inf_region]
    if addition == SUP_ADDITION:
        candidates = first_minus + second_minus
    else:
        first_dom = [d.substitute(a_matrix, a_offset) for d in first.domain()]
        second_dom = [d.substitute(b_matrix, b_offset) for d in second.domain()]
        candidates = intersect_unions(first_minus, second_dom) + intersect_unions(second_minus, first_dom)
    for region in nonempty(candidates):
        return NEG_INF, find_point(region)
    width = k + 2
    objective = zero_vector(k) + (Fraction(1), Fraction(1))
    best, where = POS_INF, None
    for p in first.pieces:
        for q in second.pieces:
            lifted = _lift_through(p, a_matrix, a_offset, k, width).intersect(
                _lift_through(q, b_matrix, b_offset, k + 1, width))
            result = lexicographic_argmin(objective, lifted, range(k))
            if result.status is LPStatus.UNBOUNDED:
                return NEG_INF, None
            if result.is_optimal and ExtReal.of(result.value) < best:
                best, where = ExtReal.of(result.value), result.point[:k]
    return best, where


def difference_witness(g: ScalarFn, h: ScalarFn):
    """
    A point x where g and h differ, or None when they are the same function
    """
    epi_g, epi_h = g.epigraph_pieces(), h.epigraph_pieces()
    for mine, theirs in ((epi_g, epi_h), (epi_h, epi_g)):
        for piece in theirs:
            point = uncovered_point(mine, piece)
            if point is not None:
                return point[:g.domain_dim]
    return None
