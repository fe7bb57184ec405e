"""
Finite unions of polyhedra: set difference by strict-complement cells, coverage and complements.

A difference P minus Q is split into the disjoint cells P & not(c1), P & c1 & not(c2), ... over the
constraints c_i of Q, which stays exact because the complement of a halfspace is again a (strict or
non-strict) halfspace.
"""
import logging
from typing import List, Optional, Sequence

import shared.constants as constants
from logic.polyhedra.canonical import remove_redundant
from logic.polyhedra.polyhedron import Polyhedron
from logic.polyhedra.rational import Vector
from logic.polyhedra.simplex import find_point
from shared.errors import ContractViolation, ResourceLimitError

logger = logging.getLogger(__name__)


def _tidy(p: Polyhedron) -> Polyhedron:
    return Polyhedron(p.dim, remove_redundant(p.dim, p.constraints))


def subtract(piece: Polyhedron, others: Sequence[Polyhedron]) -> List[Polyhedron]:
    """
    Nonempty disjoint cells whose union is piece minus the union of others

    :param piece: the polyhedron to cut
    :param others: the polyhedra to remove
    :return: list of nonempty polyhedra
    """
    for q in others:
        if q.dim != piece.dim:
            raise ContractViolation("subtracting dimension {} from dimension {}".format(q.dim, piece.dim))
    cells = [] if piece.is_empty() else [piece]
    for q in others:
        if not cells:
            break
        next_cells = []
        for cell in cells:
            if cell.intersect(q).is_empty():
                next_cells.append(cell)
                continue
            prefix = cell
            for c in q.constraints:
                if c.is_tautology():
                    continue
                part = prefix.with_constraints(c.negated())
                if not part.is_empty():
                    next_cells.append(_tidy(part))
                prefix = prefix.with_constraints(c)
            if len(next_cells) > constants.COMPLEMENT_CELL_CAP:
                raise ResourceLimitError("complement decomposition", constants.COMPLEMENT_CELL_CAP, len(next_cells))
        cells = next_cells
    logger.debug("difference split into %d cells", len(cells))
    return cells


def complement(pieces: Sequence[Polyhedron], dim: int) -> List[Polyhedron]:
    """
    Disjoint cells covering everything outside the union of pieces
    """
    return subtract(Polyhedron.whole(dim), pieces)


def covers(pieces: Sequence[Polyhedron], target: Polyhedron) -> bool:
    """
    target is contained in the union of pieces
    """
    return not subtract(target, pieces)


def union_covers(pieces: Sequence[Polyhedron], targets: Sequence[Polyhedron]) -> bool:
    return all(covers(pieces, t) for t in targets)


def uncovered_point(pieces: Sequence[Polyhedron], target: Polyhedron) -> Optional[Vector]:
    """
    A point of target outside every piece, or None when target is covered
    """
    cells = subtract(target, pieces)
    if not cells:
        return None
    return find_point(cells[0])


def intersect_unions(left: Sequence[Polyhedron], right: Sequence[Polyhedron]) -> List[Polyhedron]:
    """
    Pairwise intersections distributed over two unions, empty ones dropped
    """
    out = []
    for p in left:
        for q in right:
            both = p.intersect(q)
            if not both.is_empty():
                out.append(both)
    return out


def nonempty(pieces: Sequence[Polyhedron]) -> List[Polyhedron]:
    return [p for p in pieces if not p.is_empty()]
