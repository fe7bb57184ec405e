import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import shared.constants as constants
from logic.polyhedra.canonical import remove_redundant
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from shared.errors import ContractViolation, ResourceLimitError

logger = logging.getLogger(__name__)


def _drop_column(c: Constraint, column: int) -> Constraint:
    return Constraint(c.normal[:column] + c.normal[column + 1:], c.bound, c.strict)


def _combine(lam: Fraction, p: Constraint, mu: Fraction, q: Constraint) -> Constraint:
    normal = tuple(lam * a + mu * b for a, b in zip(p.normal, q.normal))
    return Constraint(normal, lam * p.bound + mu * q.bound, p.strict or q.strict)


def _equality_pair(rows: Sequence[Constraint], candidates: Sequence[int]) -> Optional[Tuple[int, int]]:
    """
    A non-strict row whose opposite row is also present, with a nonzero entry in a candidate column

    :return: (row index, column) or None
    """
    present = {(c.normal, c.bound) for c in rows if not c.strict}
    for i, c in enumerate(rows):
        if c.strict:
            continue
        if (tuple(-a for a in c.normal), -c.bound) not in present:
            continue
        for column in candidates:
            if c.normal[column] != 0:
                return i, column
    return None


def _substitute(rows: List[Constraint], index: int, column: int) -> List[Constraint]:
    equation = rows[index]
    pivot = equation.normal[column]
    out = []
    for c in rows:
        if c.normal == equation.normal or c.normal == tuple(-a for a in equation.normal):
            continue
        factor = c.normal[column]
        out.append(_combine(Fraction(1), c, -factor / pivot, equation) if factor else c)
    return out


def _eliminate(rows: List[Constraint], column: int) -> List[Constraint]:
    zero, positive, negative = [], [], []
    for c in rows:
        coefficient = c.normal[column]
        if coefficient > 0:
            positive.append(c)
        elif coefficient < 0:
            negative.append(c)
        else:
            zero.append(c)
    out = list(zero)
    for p in positive:
        for q in negative:
            out.append(_combine(-q.normal[column], p, p.normal[column], q))
    return out


def _pick_column(rows: Sequence[Constraint], candidates: Sequence[int]) -> int:
    best, best_cost = None, None
    for column in candidates:
        positive = sum(1 for c in rows if c.normal[column] > 0)
        negative = sum(1 for c in rows if c.normal[column] < 0)
        cost = positive * negative - positive - negative
        if best_cost is None or cost < best_cost:
            best, best_cost = column, cost
    return best


def project(p: Polyhedron, keep: Sequence[int]) -> Polyhedron:
    """
    Exact projection onto the kept coordinates by Fourier-Motzkin elimination

    Equality pairs are used for substitution first, otherwise the column with the fewest new rows
    goes next. Redundant rows are removed after every elimination; a combination of a strict and a
    non-strict row is strict.

    :param p: the polyhedron to project
    :param keep: coordinates to keep; the result lists them in increasing order
    :return: the shadow of p in dimension len(keep)
    :rtype: Polyhedron
    """
    keep = sorted(set(keep))
    if any(k < 0 or k >= p.dim for k in keep):
        raise ContractViolation("projection coordinates {} outside dimension {}".format(keep, p.dim))
    columns = list(range(p.dim))
    rows = list(remove_redundant(p.dim, p.constraints))
    if len(rows) == 1 and rows[0].is_trivial():
        return Polyhedron.empty(len(keep))
    while len(columns) > len(keep):
        candidates = [i for i, original in enumerate(columns) if original not in keep]
        pair = _equality_pair(rows, candidates)
        if pair is not None:
            index, column = pair
            rows = _substitute(rows, index, column)
            logger.debug("substituted out column %d using an equality", columns[column])
        else:
            column = _pick_column(rows, candidates)
            rows = _eliminate(rows, column)
            logger.debug("eliminated column %d, %d rows before reduction", columns[column], len(rows))
        if len(rows) > constants.FM_CONSTRAINT_CAP:
            raise ResourceLimitError("fourier-motzkin projection", constants.FM_CONSTRAINT_CAP, len(rows))
        rows = [_drop_column(c, column) for c in rows]
        del columns[column]
        rows = list(remove_redundant(len(columns), rows))
    return Polyhedron(len(columns), tuple(rows))


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    """
    p + q with strict rows honoured, as the shadow of {(x, u) : x - u in p, u in q}
    """
    if p.dim != q.dim:
        raise ContractViolation("minkowski sum of dimensions {} and {}".format(p.dim, q.dim))
    n = p.dim
    lifted = []
    for c in p.constraints:
        lifted.append(Constraint(c.normal + tuple(-a for a in c.normal), c.bound, c.strict))
    for c in q.constraints:
        lifted.append(Constraint(tuple(Fraction(0) for _ in range(n)) + c.normal, c.bound, c.strict))
    return project(Polyhedron(2 * n, tuple(lifted)), range(n))
