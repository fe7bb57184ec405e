"""
Upper sets A = A + C in Z, ordered by reverse inclusion.

The empty set is the greatest element and Z the smallest. Lattice inf is union, lattice sup is
intersection, and A -. B = {z : B + z is contained in A} is the residual of Minkowski addition.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from logic.extended_reals.ext_real import NEG_INF, POS_INF, ExtReal
from logic.polyhedra.canonical import canonicalize, is_subset
from logic.polyhedra.generators import closed_hull, closed_minkowski_sum, recession_contains
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.projection import minkowski_sum
from logic.polyhedra.rational import Vector, is_zero, rat_vector, to_rat
from logic.polyhedra.regions import complement, covers, intersect_unions, nonempty, uncovered_point
from logic.polyhedra.simplex import LPStatus, lp_solve
from logic.upper_sets.cone import Cone
from shared.errors import ContractViolation, NotAnUpperSetError

logger = logging.getLogger(__name__)


def upper_closure(p: Polyhedron, cone: Cone) -> Polyhedron:
    """
    p + C
    """
    if p.is_closed():
        return closed_minkowski_sum(p, cone.polyhedron)
    return minkowski_sum(p, cone.polyhedron)


@dataclass(frozen=True)
class UpperSet:
    dim: int
    pieces: Tuple[Polyhedron, ...]
    cone: Cone

    def __post_init__(self):
        pieces = tuple(self.pieces)
        if self.cone.dim != self.dim:
            raise ContractViolation("cone of dimension {} for an upper set in dimension {}".format(self.cone.dim, self.dim))
        for p in pieces:
            if p.dim != self.dim:
                raise ContractViolation("piece of dimension {} in an upper set of dimension {}".format(p.dim, self.dim))
            for g in self.cone.generators:
                if not recession_contains(p, g):
                    raise NotAnUpperSetError("a piece does not recede along the cone generator {}".format(
                        [str(a) for a in g]))
        object.__setattr__(self, 'pieces', pieces)

    @classmethod
    def empty(cls, cone: Cone) -> 'UpperSet':
        return cls(cone.dim, (), cone)

    @classmethod
    def whole(cls, cone: Cone) -> 'UpperSet':
        return cls(cone.dim, (Polyhedron.whole(cone.dim),), cone)

    @classmethod
    def from_polyhedron(cls, p: Polyhedron, cone: Cone) -> 'UpperSet':
        return cls(cone.dim, (p,), cone)

    @classmethod
    def translate_cone(cls, point, cone: Cone) -> 'UpperSet':
        """
        {point} + C
        """
        return cls(cone.dim, (cone.polyhedron.translated(rat_vector(point)),), cone)

    @classmethod
    def halfspace(cls, z_star, cone: Cone, level=0) -> 'UpperSet':
        """
        {z : <z*, z> <= level}; z* = 0 gives Z or the empty set
        """
        z_star = cone.check_dual(z_star)
        level = to_rat(level)
        if is_zero(z_star):
            return cls.whole(cone) if level >= 0 else cls.empty(cone)
        return cls(cone.dim, (Polyhedron(cone.dim, (Constraint(z_star, level),)),), cone)

    @classmethod
    def upper_closed(cls, pieces: Sequence[Polyhedron], cone: Cone) -> 'UpperSet':
        return cls(cone.dim, tuple(upper_closure(p, cone) for p in nonempty(pieces)), cone)

    def contains(self, z) -> bool:
        z = rat_vector(z)
        return any(p.contains(z) for p in self.pieces)

    def is_empty(self) -> bool:
        return not nonempty(self.pieces)

    def is_whole(self) -> bool:
        return covers(self.pieces, Polyhedron.whole(self.dim))

    def is_closed(self) -> bool:
        return all(p.is_closed() for p in nonempty(self.pieces))

    def closure(self) -> 'UpperSet':
        return UpperSet(self.dim, tuple(p.closure() for p in self.pieces), self.cone)

    def negated_pieces(self) -> List[Polyhedron]:
        """
        The pieces of -A (an upper set for -C, so it is returned as plain polyhedra)
        """
        return [p.negated() for p in nonempty(self.pieces)]


def _same_space(a: UpperSet, b: UpperSet):
    if a.dim != b.dim or a.cone != b.cone:
        raise ContractViolation("upper sets over different spaces or cones cannot be combined")


def canonical(a: UpperSet) -> UpperSet:
    """
    Empty pieces dropped, pieces contained in another piece absorbed, closed pieces canonicalized
    """
    pieces = [canonicalize(p) if p.is_closed() else p for p in nonempty(a.pieces)]
    kept: List[Polyhedron] = []
    for i, p in enumerate(pieces):
        rest = kept + pieces[i + 1:]
        if any(is_subset(p, q) for q in rest):
            continue
        kept.append(p)
    kept.sort(key=Polyhedron.sort_key)
    return UpperSet(a.dim, tuple(kept), a.cone)


def includes(a: UpperSet, b: UpperSet) -> bool:
    """
    a contains b as point sets (a <= b in the upper-set order)
    """
    _same_space(a, b)
    return all(covers(a.pieces, p) for p in nonempty(b.pieces))


def set_equal(a: UpperSet, b: UpperSet) -> bool:
    return includes(a, b) and includes(b, a)


def uncovered(a: UpperSet, b: UpperSet) -> Optional[Vector]:
    """
    A point of b outside a, or None when a contains b
    """
    _same_space(a, b)
    for p in nonempty(b.pieces):
        point = uncovered_point(a.pieces, p)
        if point is not None:
            return point
    return None


def minkowski_add(a: UpperSet, b: UpperSet) -> UpperSet:
    """
    A + B; anything plus the empty set is empty
    """
    _same_space(a, b)
    pieces = []
    for p in nonempty(a.pieces):
        for q in nonempty(b.pieces):
            if p.is_closed() and q.is_closed():
                pieces.append(closed_minkowski_sum(p, q))
            else:
                pieces.append(minkowski_sum(p, q))
    return UpperSet(a.dim, tuple(pieces), a.cone)


def scale(t, a: UpperSet) -> UpperSet:
    """
    t A for t > 0, and 0 A = C
    """
    t = to_rat(t)
    if t < 0:
        raise ContractViolation("upper sets are scaled by nonnegative factors only")
    if t == 0:
        return UpperSet(a.dim, (a.cone.polyhedron,), a.cone)
    return UpperSet(a.dim, tuple(p.scaled(t) for p in a.pieces), a.cone)


def lattice_inf(family: Sequence[UpperSet], cone: Cone) -> UpperSet:
    """
    Union of the family; the empty family gives the empty set
    """
    pieces = []
    for a in family:
        if a.cone != cone:
            raise ContractViolation("lattice inf over different cones")
        pieces.extend(a.pieces)
    return UpperSet(cone.dim, tuple(pieces), cone)


def lattice_sup(family: Sequence[UpperSet], cone: Cone) -> UpperSet:
    """
    Intersection of the family; the empty family gives Z
    """
    pieces = [Polyhedron.whole(cone.dim)]
    for a in family:
        if a.cone != cone:
            raise ContractViolation("lattice sup over different cones")
        pieces = intersect_unions(pieces, a.pieces)
    return UpperSet(cone.dim, tuple(pieces), cone)


def support(pieces: Sequence[Polyhedron], normal: Vector):
    """
    sup of <normal, v> over a union, and whether the sup is attained

    :return: (ExtReal sup, attained)
    """
    best, attained = None, False
    for p in nonempty(pieces):
        result = lp_solve(normal, p, "max")
        if result.status is LPStatus.UNBOUNDED:
            return POS_INF, False
        value = result.value
        hit = not p.with_constraints(Constraint(tuple(-a for a in normal), -value)).is_empty()
        if best is None or value > best:
            best, attained = value, hit
        elif value == best:
            attained = attained or hit
    if best is None:
        return NEG_INF, False
    return ExtReal.of(best), attained


def _residual_convex(a_piece: Polyhedron, b: UpperSet) -> UpperSet:
    rows = []
    for c in a_piece.constraints:
        sigma, attained = support(b.pieces, c.normal)
        if sigma.is_pos_inf:
            return UpperSet.empty(b.cone)
        # a strict row of a only stays strict when the sup over b is attained
        rows.append(Constraint(c.normal, c.bound - sigma.value, c.strict and attained))
    return UpperSet(b.dim, (Polyhedron(b.dim, tuple(rows)),), b.cone)


def residual(a: UpperSet, b: UpperSet) -> UpperSet:
    """
    A -. B = {z : B + z is contained in A}

    For a single convex piece of A every row shifts by the support of B in its normal direction.
    For a union, the residual is the complement of the union of (E - Q) over the complement cells E
    of A and the pieces Q of B.

    :param a: the upper set that must contain the shifted copy
    :param b: the upper set being shifted
    :return: the residual, itself an upper set
    :rtype: UpperSet
    """
    _same_space(a, b)
    if b.is_empty():
        return UpperSet.whole(a.cone)
    live = nonempty(a.pieces)
    if not live:
        return UpperSet.empty(a.cone)
    if len(live) == 1:
        return _residual_convex(live[0], b)
    blocked = []
    for cell in complement(live, a.dim):
        for q in nonempty(b.pieces):
            blocked.append(minkowski_sum(cell, q.negated()))
    cells = complement(blocked, a.dim)
    logger.debug("union residual assembled from %d cells", len(cells))
    return UpperSet.upper_closed(cells, a.cone)


def sup_add(a: UpperSet, b: UpperSet) -> UpperSet:
    """
    A [+] B: Z when either summand is Z, the Minkowski sum otherwise
    """
    _same_space(a, b)
    if a.is_whole() or b.is_whole():
        return UpperSet.whole(a.cone)
    return minkowski_add(a, b)


def s_dual(a: UpperSet) -> UpperSet:
    """
    s(A) = Z minus (-A)

    A single closed piece gives the union of the open halfspaces opposite to its rows; unions go
    through complement cells, each closed upward again.
    """
    live = nonempty(a.pieces)
    if not live:
        return UpperSet.whole(a.cone)
    if len(live) == 1 and live[0].is_closed():
        pieces = []
        for c in live[0].constraints:
            if c.is_tautology():
                continue
            pieces.append(Polyhedron(a.dim, (Constraint(c.normal, -c.bound, True),)))
        return UpperSet(a.dim, tuple(nonempty(pieces)), a.cone)
    return UpperSet.upper_closed(complement(a.negated_pieces(), a.dim), a.cone)


def level_set(c: ExtReal, z_star, cone: Cone) -> UpperSet:
    """
    {z : c <= -<z*, z>}: Z for c = -inf, empty for c = +inf, a halfspace otherwise
    """
    c = ExtReal.of(c)
    z_star = cone.check_dual(z_star)
    if c.is_neg_inf:
        return UpperSet.whole(cone)
    if c.is_pos_inf:
        return UpperSet.empty(cone)
    return UpperSet.halfspace(z_star, cone, -c.value)


def closed_convex_hull(a: UpperSet) -> UpperSet:
    """
    cl co A, which is again an upper set
    """
    hull = closed_hull(a.pieces, a.dim, rays=a.cone.generators)
    return UpperSet(a.dim, tuple(nonempty([hull])), a.cone)


def translate(a: UpperSet, shift) -> UpperSet:
    shift = rat_vector(shift)
    return UpperSet(a.dim, tuple(p.translated(shift) for p in a.pieces), a.cone)


