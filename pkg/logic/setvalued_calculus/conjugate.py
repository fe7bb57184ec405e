"""
Conjugates, biconjugates and dual representations of set-valued maps.

The conjugate value g*(x*, z*) is the level set {z : c <= -<z*, z>} of the scalar conjugate
c = (phi_{g,z*})*(x*). The defining intersection over x is kept as a cross-check on finite samples.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from logic.conaffine.conaffine import ConAffine, eval_conaffine
from logic.polyhedra.rational import Vector, is_zero, rat_vector
from logic.scalar_calculus.operations import biconjugate as scalar_biconjugate
from logic.scalar_calculus.operations import conjugate
from logic.scalar_calculus.scalar_fn import ScalarFn
from logic.setvalued_calculus.calculus import fn_lattice_sup
from logic.setvalued_calculus.set_fn import SetFn, cl_co_fn, facet_directions, scalarize, setify
from logic.upper_sets.upper_set import UpperSet, lattice_sup, level_set, residual

logger = logging.getLogger(__name__)


class SetConjugate:
    """
    g* with the scalar conjugates cached per z* and the values cached per (x*, z*)
    """

    def __init__(self, base: SetFn):
        self.base = base
        self.scalar_conjugates: Dict[Vector, ScalarFn] = {}
        self.table: Dict[Tuple[Vector, Vector], UpperSet] = {}

    def scalar_conjugate(self, z_star) -> ScalarFn:
        z_star = self.base.cone.check_dual(z_star)
        if z_star not in self.scalar_conjugates:
            self.scalar_conjugates[z_star] = conjugate(scalarize(self.base, z_star))
        return self.scalar_conjugates[z_star]

    def value(self, x_star, z_star) -> UpperSet:
        key = (rat_vector(x_star), self.base.cone.check_dual(z_star))
        if key not in self.table:
            c = self.scalar_conjugate(key[1]).evaluate(key[0])
            self.table[key] = level_set(c, key[1], self.base.cone)
        return self.table[key]

    __call__ = value


def conjugate_at(g: SetFn, x_star, z_star) -> UpperSet:
    """
    g*(x*, z*) through the scalarization in direction z*

    :param g: the set-valued map
    :param x_star: dual point in X*
    :param z_star: direction in C^-
    :return: a halfspace, Z or the empty set
    :rtype: UpperSet
    """
    return SetConjugate(g).value(x_star, z_star)


def conjugate_by_definition(g: SetFn, x_star, z_star, samples: Sequence[Vector]) -> UpperSet:
    """
    The intersection over x in ``samples`` of S(x*, 0, z*)(x) -. g(x)

    Over a finite sample this contains the true conjugate value.
    """
    s = ConAffine(x_star, 0, z_star, g.cone)
    terms = [residual(eval_conaffine(s, x), g.evaluate(x)) for x in samples]
    return lattice_sup(terms, g.cone)


def biconjugate(g: SetFn, directions: Optional[Sequence[Tuple[Vector, Vector]]] = None) -> SetFn:
    """
    g** over a finite set of dual directions

    Each distinct z* among the directions contributes {z : (phi_{g,z*})**(x) <= -<z*, z>}; the result
    is their pointwise intersection. Without a z* = 0 direction nothing bounds the domain of the
    result, which is reported. With the facet directions of g the result is cl co g.

    :param g: the set-valued map
    :param directions: (x*, z*) pairs; the facet directions of g when omitted
    :return: the biconjugate
    :rtype: SetFn
    """
    if directions is None:
        directions = facet_directions(g)
    z_stars = sorted({g.cone.check_dual(z) for _, z in directions})
    if not any(is_zero(z) for z in z_stars):
        logger.warning("biconjugate: no z* = 0 direction, the domain of the result is not cut down")
    parts = [setify(scalar_biconjugate(scalarize(g, z)), z, g.cone) for z in z_stars]
    logger.debug("biconjugate over %d directions", len(z_stars))
    return fn_lattice_sup(parts, g.x_dim, g.cone)


@dataclass(frozen=True)
class Properness:
    proper: bool
    zstar_proper_witness: Optional[Vector] = None
    full_fiber_point: Optional[Vector] = None


def properness(g: SetFn) -> Properness:
    """
    g is proper when its domain is nonempty and no value is Z

    A value Z is found through the full region or through fibers covered by several pieces together;
    the offending x is returned. For a single closed convex piece a z* != 0 with a proper
    scalarization is returned as witness.
    """
    g = g.normalized()
    if not g.domain():
        return Properness(False)
    point = g.full_fiber_point()
    if point is not None:
        return Properness(False, full_fiber_point=point)
    witness = None
    if len(g.pieces) == 1 and g.pieces[0].is_closed():
        for _, z_star in facet_directions(g):
            if not is_zero(z_star) and scalarize(g, z_star).is_proper():
                witness = z_star
                break
    return Properness(True, witness)


@dataclass(frozen=True)
class DualRepresentation:
    branch: str
    minorants: Tuple[ConAffine, ...]
    fn: SetFn

    @property
    def uses_domain_cuts(self) -> bool:
        return any(is_zero(m.z_star) for m in self.minorants)


def dual_representation(g: SetFn) -> DualRepresentation:
    """
    cl co g as the intersection of conaffine minorants built from its facet directions

    Proper branch: every direction with z* != 0 plus the z* = 0 directions with x* != 0, which cut
    the domain when it is not all of X. Improper branch: the z* = 0 directions alone. Each minorant
    uses the smallest admissible r, the scalar conjugate value at x*.

    :return: branch name ("proper", "improper" or "empty"), the minorants and their intersection
    :rtype: DualRepresentation
    """
    hull = cl_co_fn(g)
    if not hull.pieces:
        return DualRepresentation("empty", (), SetFn.empty(g.x_dim, g.cone))
    branch = "proper" if properness(hull).proper else "improper"
    conj = SetConjugate(g)
    minorants: List[ConAffine] = []
    for x_star, z_star in facet_directions(g):
        if is_zero(z_star) and is_zero(x_star):
            continue
        if branch == "improper" and not is_zero(z_star):
            continue
        c = conj.scalar_conjugate(z_star).evaluate(x_star)
        if c.is_finite:
            minorants.append(ConAffine(x_star, c.value, z_star, g.cone))
    fn = fn_lattice_sup([m.as_set_fn() for m in minorants], g.x_dim, g.cone)
    logger.debug("dual representation (%s) from %d minorants", branch, len(minorants))
    return DualRepresentation(branch, tuple(minorants), fn)
