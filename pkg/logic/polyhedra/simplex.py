"""
Exact simplex over the rationals.

``lp_solve`` maximizes (or minimizes) a linear objective over ``{x : A x <= b}`` with x free. It
works on the dual standard form ``min b.y  s.t.  A^T y = c, y >= 0`` (n equality rows, one column
per constraint), with a two-phase tableau and Bland's rule, so it always terminates. The primal
optimum is read back from the reduced costs of the artificial columns.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.rational import Vector, dot, is_zero, rat_vector, unit_vector, zero_vector
from shared.errors import ContractViolation

logger = logging.getLogger(__name__)


class LPStatus(Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Optional[Fraction] = None
    point: Optional[Vector] = None
    strictly_feasible: Optional[bool] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class _DualTableau:
    """
    Tableau for  min b.y  s.t.  A^T y = c, y >= 0  with one artificial column per equality row
    """

    def __init__(self, rows: Sequence[Tuple[Vector, Fraction]], objective: Vector):
        self.m = len(rows)
        self.n = len(objective)
        self.bounds = [bound for _, bound in rows]
        self.signs = [-1 if objective[j] < 0 else 1 for j in range(self.n)]
        width = self.m + self.n
        self.table: List[List[Fraction]] = []
        self.rhs: List[Fraction] = []
        for j in range(self.n):
            s = self.signs[j]
            line = [s * rows[i][0][j] for i in range(self.m)] + [Fraction(0)] * self.n
            line[self.m + j] = Fraction(1)
            self.table.append(line)
            self.rhs.append(s * objective[j])
        self.basis = [self.m + j for j in range(self.n)]
        self.reduced = [Fraction(0)] * width
        self.value = Fraction(0)

    def _price(self, costs: Sequence[Fraction]):
        width = self.m + self.n
        self.reduced = list(costs)
        self.value = Fraction(0)
        for r, var in enumerate(self.basis):
            weight = costs[var]
            if weight == 0:
                continue
            row = self.table[r]
            for k in range(width):
                if row[k]:
                    self.reduced[k] -= weight * row[k]
            self.value += weight * self.rhs[r]

    def _pivot(self, r: int, k: int):
        row = self.table[r]
        lead = row[k]
        if lead != 1:
            row = [v / lead for v in row]
            self.table[r] = row
            self.rhs[r] = self.rhs[r] / lead
        for other in range(self.n):
            if other == r:
                continue
            factor = self.table[other][k]
            if factor:
                self.table[other] = [a - factor * b for a, b in zip(self.table[other], row)]
                self.rhs[other] -= factor * self.rhs[r]
        factor = self.reduced[k]
        if factor:
            self.reduced = [a - factor * b for a, b in zip(self.reduced, row)]
            self.value += factor * self.rhs[r]
        self.basis[r] = k

    def _iterate(self, allowed: int) -> str:
        """
        Bland's rule on columns [0, allowed); returns 'optimal' or 'unbounded'
        """
        while True:
            entering = None
            for k in range(allowed):
                if self.reduced[k] < 0:
                    entering = k
                    break
            if entering is None:
                return 'optimal'
            leaving = None
            best = None
            for r in range(self.n):
                entry = self.table[r][entering]
                if entry > 0:
                    ratio = self.rhs[r] / entry
                    if best is None or ratio < best or (ratio == best and self.basis[r] < self.basis[leaving]):
                        best, leaving = ratio, r
            if leaving is None:
                return 'unbounded'
            self._pivot(leaving, entering)

    def solve(self) -> str:
        """
        :return: 'optimal', 'dual_infeasible' (primal infeasible or unbounded) or 'dual_unbounded'
                 (primal infeasible)
        """
        width = self.m + self.n
        self._price([Fraction(0)] * self.m + [Fraction(1)] * self.n)
        self._iterate(width)
        if self.value > 0:
            return 'dual_infeasible'
        # degenerate pivots to push artificials out of the basis where a real column can replace them
        for r in range(self.n):
            if self.basis[r] >= self.m:
                for k in range(self.m):
                    if self.table[r][k] != 0:
                        self._pivot(r, k)
                        break
        self._price(list(self.bounds) + [Fraction(0)] * self.n)
        outcome = self._iterate(self.m)
        return 'optimal' if outcome == 'optimal' else 'dual_unbounded'

    def primal_point(self) -> Vector:
        return tuple(-self.signs[j] * self.reduced[self.m + j] for j in range(self.n))


def _maximize(objective: Vector, rows: Sequence[Tuple[Vector, Fraction]], dim: int):
    kept = []
    for normal, bound in rows:
        if is_zero(normal):
            if bound < 0:
                return LPStatus.INFEASIBLE, None, None
            continue
        kept.append((normal, bound))
    if dim == 0:
        return LPStatus.OPTIMAL, Fraction(0), ()
    if not kept:
        if is_zero(objective):
            return LPStatus.OPTIMAL, Fraction(0), zero_vector(dim)
        return LPStatus.UNBOUNDED, None, None
    tableau = _DualTableau(kept, objective)
    outcome = tableau.solve()
    if outcome == 'optimal':
        point = tableau.primal_point()
        return LPStatus.OPTIMAL, dot(objective, point), point
    if outcome == 'dual_unbounded':
        return LPStatus.INFEASIBLE, None, None
    logger.debug("dual infeasible, deciding primal feasibility")
    if _DualTableau(kept, zero_vector(dim)).solve() == 'optimal':
        return LPStatus.UNBOUNDED, None, None
    return LPStatus.INFEASIBLE, None, None


def lp_solve(objective, p: Polyhedron, sense: str = "max", certify_strict: bool = False) -> LPResult:
    """
    Exact LP over a polyhedron; strict constraints are relaxed to non-strict for the optimization

    :param objective: length p.dim vector
    :param p: the feasible set
    :param sense: "max" or "min"
    :param certify_strict: also report whether p itself (with its strict constraints) is nonempty
    :return: trichotomous result with the exact optimum and an attaining point
    :rtype: LPResult
    """
    objective = rat_vector(objective)
    if len(objective) != p.dim:
        raise ContractViolation("objective of length {} over a polyhedron of dimension {}".format(len(objective), p.dim))
    if sense not in ("max", "min"):
        raise ContractViolation("sense must be 'max' or 'min', got {!r}".format(sense))
    signed = objective if sense == "max" else tuple(-a for a in objective)
    status, value, point = _maximize(signed, [(c.normal, c.bound) for c in p.constraints], p.dim)
    if value is not None and sense == "min":
        value = -value
    strictly_feasible = None
    if certify_strict:
        strictly_feasible = status is not LPStatus.INFEASIBLE and find_point(p) is not None
    return LPResult(status, value, point, strictly_feasible)


def find_point(p: Polyhedron) -> Optional[Vector]:
    """
    A point of p honouring strict constraints, or None when p is empty

    Strict rows get a common slack t <= 1 that is maximized; p is nonempty iff t can be positive.
    """
    strict = [c for c in p.constraints if c.strict]
    if not strict:
        status, _, point = _maximize(zero_vector(p.dim), [(c.normal, c.bound) for c in p.constraints], p.dim)
        return point if status is LPStatus.OPTIMAL else None
    rows = []
    for c in p.constraints:
        rows.append((c.normal + (Fraction(1) if c.strict else Fraction(0),), c.bound))
    rows.append((zero_vector(p.dim) + (Fraction(1),), Fraction(1)))
    status, value, point = _maximize(unit_vector(p.dim + 1, p.dim), rows, p.dim + 1)
    if status is LPStatus.OPTIMAL and value > 0:
        return point[:-1]
    return None


def lexicographic_argmin(objective, p: Polyhedron, order: Sequence[int]) -> LPResult:
    """
    Minimize ``objective``, then among optimal points minimize the listed coordinates in turn

    A coordinate that is unbounded below on the optimal face stops the refinement; the last
    optimal point found is returned.
    """
    first = lp_solve(objective, p, "min")
    if not first.is_optimal:
        return first
    current = p.with_constraints(Constraint(rat_vector(objective), first.value))
    point = first.point
    for index in order:
        unit = unit_vector(p.dim, index)
        step = lp_solve(unit, current, "min")
        if not step.is_optimal:
            break
        current = current.with_constraints(Constraint(unit, step.value))
        point = step.point
    return LPResult(LPStatus.OPTIMAL, first.value, point)
