"""
Set-valued Fenchel-Rockafellar duality.

The primal value is P = cl co of the union over x of g(x) + f(Tx). For every direction z* the dual
value D(z*) is the intersection over y* of H(z*) -. (g*(T^T y*, z*) + f*(-y*, z*)); weak duality says
D(z*) contains P, strong duality says cl(P + H(z*)) is attained by one y*.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import shared.constants as constants
from logic.extended_reals.ext_real import ExtReal
from logic.harness.sampling import SplitMix64
from logic.polyhedra.projection import project
from logic.polyhedra.rational import Vector, apply, integer_scaling, is_zero, scale_vector, transpose, unit_vector, \
    zero_vector
from logic.polyhedra.regions import nonempty
from logic.scalar_calculus.chain_rule import scalar_fenchel_rockafellar
from logic.setvalued_calculus.calculus import fn_precompose, fn_sum
from logic.setvalued_calculus.conjugate import SetConjugate
from logic.setvalued_calculus.set_fn import SetFn, scalarize
from logic.upper_sets.upper_set import (UpperSet, closed_convex_hull, includes, lattice_sup, minkowski_add, residual,
                                        set_equal, uncovered)
from shared.errors import ContractViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DirectionCheck:
    """
    Weak and strong duality in one direction z*

    ``achieved`` is None when no qualification holds, so strong duality is not certified either way.
    """
    z_star: Vector
    primal: ExtReal
    dual: ExtReal
    d_sample: UpperSet
    weak_duality: bool
    qualification: Optional[str] = None
    achieved: Optional[bool] = None
    y_star: Optional[Vector] = None
    gap_witness: Optional[Vector] = None

    @property
    def passed(self) -> bool:
        return self.weak_duality and self.achieved is not False


@dataclass(frozen=True)
class FRReport:
    instance: str
    p: UpperSet
    directions: Tuple[DirectionCheck, ...]
    representation_verified: Optional[bool]

    @property
    def d(self) -> Dict[Vector, UpperSet]:
        return {check.z_star: check.d_sample for check in self.directions}

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.directions) and self.representation_verified is not False


def primal_value(g: SetFn, f: SetFn, t: np.ndarray) -> UpperSet:
    """
    cl co of the union of g(x) + f(Tx) over x
    """
    h = fn_sum(g, fn_precompose(f, t))
    n, m = h.x_dim, h.z_dim
    shadows = [project(p, range(n, n + m)) for p in h.graph_pieces()]
    return closed_convex_hull(UpperSet(m, tuple(nonempty(shadows)), h.cone))


def ystar_sample(k: int, optimum: Optional[Vector], budget: int, rng: SplitMix64) -> List[Vector]:
    """
    The dual optimum, the origin and the unit directions, then random points up to ``budget``
    """
    sample = []
    candidates = [optimum, zero_vector(k)]
    for i in range(k):
        candidates.append(unit_vector(k, i))
        candidates.append(unit_vector(k, i, -1))
    for y in candidates:
        if y is not None and y not in sample and len(sample) < budget:
            sample.append(y)
    while len(sample) < budget:
        y = rng.vector(k)
        if y not in sample:
            sample.append(y)
    return sample


def _dual_term(g_conj: SetConjugate, f_conj: SetConjugate, t: np.ndarray, y_star: Vector, z_star: Vector,
               cone) -> UpperSet:
    h = UpperSet.halfspace(z_star, cone)
    value = minkowski_add(g_conj(apply(transpose(t), y_star), z_star), f_conj(tuple(-a for a in y_star), z_star))
    return residual(h, value)


def _normals_covered(p: UpperSet, z_stars: Sequence[Vector]) -> bool:
    scaled = {scale_vector(integer_scaling(z), z) for z in z_stars}
    for piece in p.pieces:
        for c in piece.constraints:
            if scale_vector(integer_scaling(c.normal), c.normal) not in scaled:
                return False
    return True


def fenchel_rockafellar(g: SetFn, f: SetFn, t: np.ndarray, zstars: Sequence[Vector],
                        ystar_budget: int = None, seed: int = None, instance: str = "") -> FRReport:
    """
    Weak duality in every direction, strong duality where a qualification holds

    :param g: map on X
    :param f: map on Y
    :param t: T : X -> Y
    :param zstars: nonzero directions in C^-
    :param ystar_budget: size of the y* sample per direction
    :param seed: seed of the random part of the y* sample
    :param instance: name carried into the report
    :return: the primal value, one check per direction and whether P is recovered from the directions
    :rtype: FRReport
    """
    budget = constants.DEFAULT_YSTAR_BUDGET if ystar_budget is None else ystar_budget
    rng = SplitMix64(constants.DEFAULT_SEED if seed is None else seed)
    cone = g.cone
    zstars = sorted({cone.check_dual(z) for z in zstars})
    if any(is_zero(z) for z in zstars):
        raise ContractViolation("duality directions must be nonzero")
    k = t.shape[0]
    p = primal_value(g, f, t)
    g_conj, f_conj = SetConjugate(g), SetConjugate(f)
    checks, attained_terms = [], []
    for z_star in zstars:
        scalar = scalar_fenchel_rockafellar(scalarize(g, z_star), scalarize(f, z_star), t)
        sample = ystar_sample(k, scalar.y_star, budget, rng)
        d_sample = lattice_sup([_dual_term(g_conj, f_conj, t, y, z_star, cone) for y in sample], cone)
        weak = includes(d_sample, p)
        if not weak:
            logger.warning("weak duality failed at z* = %s", [str(a) for a in z_star])
        if scalar.qualification is None:
            logger.warning("no qualification at z* = %s, strong duality not certified", [str(a) for a in z_star])
            checks.append(DirectionCheck(z_star, scalar.primal, scalar.dual, d_sample, weak))
            continue
        closed = minkowski_add(p, UpperSet.halfspace(z_star, cone)).closure()
        # y* is recorded only once its term has been seen to attain the closed primal value
        candidates = [scalar.y_star] if scalar.y_star is not None else (sample or [zero_vector(k)])
        y_star, term = None, None
        for candidate in candidates:
            candidate_term = _dual_term(g_conj, f_conj, t, candidate, z_star, cone)
            if term is None:
                term = candidate_term
            if set_equal(closed, candidate_term):
                y_star, term = candidate, candidate_term
                break
        attained_terms.append(term)
        achieved = y_star is not None
        witness = None
        if not achieved:
            witness = uncovered(closed, term) or uncovered(term, closed)
        checks.append(DirectionCheck(z_star, scalar.primal, scalar.dual, d_sample, weak, scalar.qualification,
                                     achieved, y_star, witness))
    representation = None
    if p.pieces and len(attained_terms) == len(zstars) and _normals_covered(p, zstars):
        representation = set_equal(p, lattice_sup(attained_terms, cone))
    logger.info("fenchel-rockafellar checked in %d directions", len(checks))
    return FRReport(instance, p, tuple(checks), representation)
