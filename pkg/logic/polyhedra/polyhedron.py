from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from logic.polyhedra.rational import Vector, dot, integer_scaling, is_zero, rat_vector, to_rat, zero_vector
from shared.errors import ContractViolation


@dataclass(frozen=True)
class Constraint:
    """
    One rational halfspace <normal, v> <= bound, or < bound when ``strict``
    """
    normal: Vector
    bound: Fraction
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'normal', rat_vector(self.normal))
        object.__setattr__(self, 'bound', to_rat(self.bound))
        object.__setattr__(self, 'strict', bool(self.strict))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def holds(self, point: Sequence[Fraction]) -> bool:
        value = dot(self.normal, point)
        return value < self.bound if self.strict else value <= self.bound

    def closure(self) -> 'Constraint':
        return Constraint(self.normal, self.bound, False) if self.strict else self

    def negated(self) -> 'Constraint':
        """
        The complement halfspace: not(a.v <= b) is (-a).v < -b, not(a.v < b) is (-a).v <= -b
        """
        return Constraint(tuple(-a for a in self.normal), -self.bound, not self.strict)

    def is_trivial(self) -> bool:
        return is_zero(self.normal)

    def is_tautology(self) -> bool:
        return self.is_trivial() and (self.bound > 0 or (self.bound == 0 and not self.strict))

    def scaled(self) -> 'Constraint':
        """
        Coprime integer form (positive factor only, so the halfspace is unchanged)
        """
        factor = integer_scaling(self.normal + (self.bound,))
        if factor == 1:
            return self
        return Constraint(tuple(a * factor for a in self.normal), self.bound * factor, self.strict)

    def sort_key(self):
        return self.normal, self.bound, self.strict


@dataclass(frozen=True)
class Polyhedron:
    """
    Finite system of rational constraints; no constraints means the whole space
    """
    dim: int
    constraints: Tuple[Constraint, ...] = ()

    def __post_init__(self):
        constraints = tuple(self.constraints)
        for c in constraints:
            if c.dim != self.dim:
                raise ContractViolation("constraint of length {} in a polyhedron of dimension {}".format(c.dim, self.dim))
        object.__setattr__(self, 'constraints', constraints)

    @classmethod
    def whole(cls, dim: int) -> 'Polyhedron':
        return cls(dim, ())

    @classmethod
    def empty(cls, dim: int) -> 'Polyhedron':
        """
        The designated empty form: the single contradiction 0 <= -1
        """
        return cls(dim, (Constraint(zero_vector(dim), Fraction(-1)),))

    @classmethod
    def from_rows(cls, rows, bounds, strict: Optional[Iterable[bool]] = None) -> 'Polyhedron':
        rows = [rat_vector(row) for row in rows]
        bounds = [to_rat(b) for b in bounds]
        if len(rows) != len(bounds):
            raise ContractViolation("row and bound counts differ")
        flags = list(strict) if strict is not None else [False] * len(rows)
        if not rows:
            raise ContractViolation("from_rows needs at least one row; use Polyhedron.whole")
        return cls(len(rows[0]), tuple(Constraint(r, b, s) for r, b, s in zip(rows, bounds, flags)))

    @classmethod
    def point(cls, coordinates) -> 'Polyhedron':
        coordinates = rat_vector(coordinates)
        dim = len(coordinates)
        constraints = []
        for i, value in enumerate(coordinates):
            unit = tuple(Fraction(1) if j == i else Fraction(0) for j in range(dim))
            constraints.append(Constraint(unit, value))
            constraints.append(Constraint(tuple(-a for a in unit), -value))
        return cls(dim, tuple(constraints))

    @classmethod
    def box(cls, lower, upper) -> 'Polyhedron':
        lower, upper = rat_vector(lower), rat_vector(upper)
        dim = len(lower)
        constraints = []
        for i in range(dim):
            unit = tuple(Fraction(1) if j == i else Fraction(0) for j in range(dim))
            constraints.append(Constraint(unit, upper[i]))
            constraints.append(Constraint(tuple(-a for a in unit), -lower[i]))
        return cls(dim, tuple(constraints))

    def contains(self, point: Sequence[Fraction]) -> bool:
        point = rat_vector(point)
        if len(point) != self.dim:
            raise ContractViolation("point of length {} tested against dimension {}".format(len(point), self.dim))
        return all(c.holds(point) for c in self.constraints)

    def is_closed(self) -> bool:
        return not any(c.strict for c in self.constraints)

    def closure(self) -> 'Polyhedron':
        if self.is_closed():
            return self
        return Polyhedron(self.dim, tuple(c.closure() for c in self.constraints))

    def with_constraints(self, *constraints: Constraint) -> 'Polyhedron':
        return Polyhedron(self.dim, self.constraints + tuple(constraints))

    def intersect(self, other: 'Polyhedron') -> 'Polyhedron':
        if other.dim != self.dim:
            raise ContractViolation("intersecting dimensions {} and {}".format(self.dim, other.dim))
        return Polyhedron(self.dim, self.constraints + other.constraints)

    def substitute(self, matrix: np.ndarray, offset: Optional[Sequence[Fraction]] = None) -> 'Polyhedron':
        """
        Preimage under the affine map w -> matrix @ w + offset

        :param matrix: self.dim x k object array
        :param offset: length self.dim vector (zero when omitted)
        :return: polyhedron in dimension k
        """
        rows, columns = matrix.shape
        if rows != self.dim:
            raise ContractViolation("substitution matrix has {} rows for dimension {}".format(rows, self.dim))
        constraints = []
        for c in self.constraints:
            normal = tuple(dot(c.normal, matrix[:, j]) for j in range(columns))
            bound = c.bound - dot(c.normal, offset) if offset is not None else c.bound
            constraints.append(Constraint(normal, bound, c.strict))
        return Polyhedron(columns, tuple(constraints))

    def embed(self, dim: int, positions: Sequence[int]) -> 'Polyhedron':
        """
        Same set in a larger space: coordinate i of self becomes coordinate positions[i]
        """
        constraints = []
        for c in self.constraints:
            normal = [Fraction(0)] * dim
            for i, p in enumerate(positions):
                normal[p] += c.normal[i]
            constraints.append(Constraint(tuple(normal), c.bound, c.strict))
        return Polyhedron(dim, tuple(constraints))

    def fix(self, values: Sequence[Fraction]) -> 'Polyhedron':
        """
        Fiber over the leading coordinates: substitute the first len(values) coordinates

        :param values: the fixed leading coordinates
        :return: polyhedron in the remaining coordinates
        """
        k = len(values)
        constraints = []
        for c in self.constraints:
            constraints.append(Constraint(c.normal[k:], c.bound - dot(c.normal[:k], values), c.strict))
        return Polyhedron(self.dim - k, tuple(constraints))

    def negated(self) -> 'Polyhedron':
        return Polyhedron(self.dim, tuple(Constraint(tuple(-a for a in c.normal), c.bound, c.strict)
                                          for c in self.constraints))

    def translated(self, shift: Sequence[Fraction]) -> 'Polyhedron':
        return Polyhedron(self.dim, tuple(Constraint(c.normal, c.bound + dot(c.normal, shift), c.strict)
                                          for c in self.constraints))

    def scaled(self, t: Fraction) -> 'Polyhedron':
        if t <= 0:
            raise ContractViolation("polyhedra are scaled by positive factors only")
        return Polyhedron(self.dim, tuple(Constraint(c.normal, c.bound * t, c.strict) for c in self.constraints))

    def is_empty(self) -> bool:
        from logic.polyhedra.simplex import find_point
        return find_point(self) is None

    def sort_key(self):
        return tuple(c.sort_key() for c in self.constraints)
