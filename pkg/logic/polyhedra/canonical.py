"""
Redundancy removal, implicit equalities and the canonical form that makes set equality decidable
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.rational import integer_scaling, rref
from logic.polyhedra.simplex import find_point
from shared.errors import ContractViolation

logger = logging.getLogger(__name__)


def _is_empty(dim: int, constraints: Sequence[Constraint]) -> bool:
    return find_point(Polyhedron(dim, tuple(constraints))) is None


def _simplify(constraints: Sequence[Constraint]) -> Optional[List[Constraint]]:
    """
    Drop tautologies and keep only the tightest of each family of positively parallel rows

    :return: the reduced rows, or None when a trivial row is a contradiction
    """
    tightest: Dict[tuple, Constraint] = {}
    order = []
    for c in constraints:
        if c.is_trivial():
            if c.is_tautology():
                continue
            return None
        factor = integer_scaling(c.normal)
        direction = tuple(a * factor for a in c.normal)
        scaled = Constraint(direction, c.bound * factor, c.strict)
        best = tightest.get(direction)
        if best is None:
            tightest[direction] = scaled
            order.append(direction)
        elif scaled.bound < best.bound or (scaled.bound == best.bound and scaled.strict):
            tightest[direction] = scaled
    return [tightest[d] for d in order]


def remove_redundant(dim: int, constraints: Sequence[Constraint],
                     fixed: Sequence[Constraint] = ()) -> Tuple[Constraint, ...]:
    """
    Drop every constraint implied by the others (and by ``fixed``, which is never dropped)

    A row c is implied by the rest R exactly when R together with the complement of c is empty,
    which handles strict rows without any special casing.

    :param dim: ambient dimension
    :param constraints: rows to reduce
    :param fixed: context rows that stay out of the result
    :return: irredundant rows, or the designated empty form when the whole system is empty
    """
    rows = _simplify(constraints)
    if rows is None or _is_empty(dim, list(fixed) + rows):
        return Polyhedron.empty(dim).constraints
    kept = list(rows)
    for candidate in rows:
        others = [c for c in kept if c is not candidate] + list(fixed)
        if _is_empty(dim, others + [candidate.negated()]):
            kept.remove(candidate)
    return tuple(kept)


def _is_empty_form(constraints: Sequence[Constraint]) -> bool:
    return len(constraints) == 1 and constraints[0].is_trivial() and not constraints[0].is_tautology()


def implicit_equalities(p: Polyhedron) -> Tuple[Constraint, ...]:
    """
    Non-strict rows that hold with equality everywhere on a nonempty p
    """
    equalities = []
    for c in p.constraints:
        if c.strict or c.is_trivial():
            continue
        tightened = p.with_constraints(Constraint(c.normal, c.bound, True))
        if tightened.is_empty():
            equalities.append(c)
    return tuple(equalities)


def _canonical_parts(p: Polyhedron):
    """
    :return: (equality rows in RREF, reduced irredundant inequality rows), or None for an empty p
    """
    rows = remove_redundant(p.dim, p.constraints)
    if _is_empty_form(rows):
        return None
    reduced = Polyhedron(p.dim, rows)
    equalities = implicit_equalities(reduced)
    echelon, pivots = rref([c.normal + (c.bound,) for c in equalities], p.dim)
    equality_rows = [Constraint(row[:-1], row[-1]) for row in echelon]
    logger.debug("%d rows, %d implicit equalities of rank %d", len(rows), len(equalities), len(equality_rows))
    inequalities = []
    for c in rows:
        if c in equalities:
            continue
        normal, bound = list(c.normal), c.bound
        for row, column in zip(equality_rows, pivots):
            factor = normal[column]
            if factor:
                normal = [a - factor * b for a, b in zip(normal, row.normal)]
                bound -= factor * row.bound
        inequalities.append(Constraint(tuple(normal), bound, c.strict))
    context = []
    for row in equality_rows:
        context.append(row)
        context.append(Constraint(tuple(-a for a in row.normal), -row.bound))
    inequalities = list(remove_redundant(p.dim, inequalities, fixed=context))
    return equality_rows, inequalities


def canonicalize(p: Polyhedron) -> Polyhedron:
    """
    Unique H-representation of a closed polyhedron

    Redundant rows are removed, implicit equalities are put in reduced echelon form and emitted as
    opposite pairs, the remaining rows are reduced modulo those equalities, every row is scaled to
    coprime integers and the rows are sorted. All empty polyhedra map to ``Polyhedron.empty``.

    :param p: any polyhedron
    :return: the canonical form
    :rtype: Polyhedron
    """
    parts = _canonical_parts(p)
    if parts is None:
        return Polyhedron.empty(p.dim)
    equality_rows, inequalities = parts
    out = []
    for row in equality_rows:
        out.append(row.scaled())
        out.append(Constraint(tuple(-a for a in row.normal), -row.bound).scaled())
    out.extend(c.scaled() for c in inequalities)
    out.sort(key=Constraint.sort_key)
    return Polyhedron(p.dim, tuple(out))


def relative_interior(p: Polyhedron) -> Polyhedron:
    """
    The affine hull of p intersected with the open versions of all its facets
    """
    parts = _canonical_parts(p)
    if parts is None:
        return Polyhedron.empty(p.dim)
    equality_rows, inequalities = parts
    out = []
    for row in equality_rows:
        out.append(row)
        out.append(Constraint(tuple(-a for a in row.normal), -row.bound))
    out.extend(Constraint(c.normal, c.bound, True) for c in inequalities)
    return Polyhedron(p.dim, tuple(out))


def is_subset(inner: Polyhedron, outer: Polyhedron) -> bool:
    """
    inner is contained in outer, exactly and with strict rows honoured
    """
    if inner.dim != outer.dim:
        raise ContractViolation("comparing polyhedra of dimensions {} and {}".format(inner.dim, outer.dim))
    if inner.is_empty():
        return True
    for c in outer.constraints:
        if c.is_tautology():
            continue
        if not inner.with_constraints(c.negated()).is_empty():
            return False
    return True


def same_set(p: Polyhedron, q: Polyhedron) -> bool:
    return is_subset(p, q) and is_subset(q, p)
