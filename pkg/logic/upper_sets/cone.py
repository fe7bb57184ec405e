from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

from logic.polyhedra.generators import Generators, from_generators, to_generators
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.rational import Vector, dot, is_zero, rat_vector, zero_vector
from shared.errors import ContractViolation


@dataclass(frozen=True, eq=False)
class Cone:
    """
    Polyhedral ordering cone C in Z, given by generators

    The dual cone C^- = {z* : <z*, c> <= 0 for all c in C} is computed once at construction and
    must contain a nonzero element, i.e. C is not the whole space.
    """
    dim: int
    generators: Tuple[Vector, ...]
    polyhedron: Polyhedron = field(init=False)
    dual_generators: Tuple[Vector, ...] = field(init=False)

    def __post_init__(self):
        generators = tuple(rat_vector(g) for g in self.generators)
        if not generators:
            raise ContractViolation("a cone needs at least one generator")
        for g in generators:
            if len(g) != self.dim:
                raise ContractViolation("cone generator of length {} in dimension {}".format(len(g), self.dim))
            if is_zero(g):
                raise ContractViolation("cone generators must be nonzero")
        object.__setattr__(self, 'generators', generators)
        polyhedron = from_generators(Generators(self.dim, (zero_vector(self.dim),), generators))
        if not polyhedron.constraints:
            raise ContractViolation("the cone is the whole space, so its dual is trivial")
        object.__setattr__(self, 'polyhedron', polyhedron)
        dual = Polyhedron(self.dim, tuple(Constraint(g, 0) for g in generators))
        gens = to_generators(dual)
        duals = list(gens.rays)
        for line in gens.lines:
            duals.append(line)
            duals.append(tuple(-a for a in line))
        object.__setattr__(self, 'dual_generators', tuple(duals))

    @classmethod
    def nonnegative_orthant(cls, dim: int) -> 'Cone':
        return cls(dim, tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(dim)) for i in range(dim)))

    def contains(self, z) -> bool:
        return self.polyhedron.contains(z)

    def in_dual(self, z_star) -> bool:
        z_star = rat_vector(z_star)
        if len(z_star) != self.dim:
            raise ContractViolation("dual vector of length {} for a cone in dimension {}".format(len(z_star), self.dim))
        return all(dot(z_star, g) <= 0 for g in self.generators)

    def check_dual(self, z_star) -> Vector:
        z_star = rat_vector(z_star)
        if not self.in_dual(z_star):
            raise ContractViolation("{} is not in the dual cone".format([str(a) for a in z_star]))
        return z_star

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self.dim == other.dim and self.polyhedron == other.polyhedron

    def __hash__(self):
        return hash((self.dim, self.polyhedron.constraints))
