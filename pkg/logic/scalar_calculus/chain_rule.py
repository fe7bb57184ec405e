"""
Executable form of the scalar chain rule and of scalar Fenchel-Rockafellar duality.

For g on X, f on Y, T : X -> Y and S : Y -> X the checked statements are
  (a) (g box Sf)* = g* [+] f* S^T                      (unconditional)
  (b) (g + f T)* <= g* box[+] T^T f*                   (unconditional)
  (c) both sides are constant -inf when g or f is constant +inf
  (d) equality in (b), with an attaining y*, under a polyhedral qualification
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from logic.extended_reals.ext_real import NEG_INF, ExtReal, negate
from logic.polyhedra.canonical import relative_interior
from logic.polyhedra.rational import Vector, identity_matrix, rat_vector, transpose, unit_vector, zero_vector
from logic.polyhedra.regions import covers, intersect_unions, nonempty
from logic.scalar_calculus.operations import (INF_ADDITION, SUP_ADDITION, composite_infimum, conjugate,
                                              difference_witness, fn_add, inf_convolve, infimum, is_minorant,
                                              precompose, pushforward, same_function)
from logic.scalar_calculus.scalar_fn import ScalarFn

logger = logging.getLogger(__name__)

DOMINATION = "domination"
RELATIVE_INTERIOR = "relative-interior"
REAL_VALUED = "real-valued"


class Verdict(Enum):
    EQUAL = "equal"
    INCLUSION_ONLY = "inclusion-only"
    QUALIFICATION_FAILED = "qualification-failed"
    VIOLATED = "violated"


@dataclass(frozen=True)
class PartCheck:
    """
    Outcome of one part of a duality statement
    """
    part: str
    passed: bool
    verdict: Optional[Verdict] = None
    qualification: Optional[str] = None
    detail: str = ""
    witnesses: Dict[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class ScalarChainReport:
    parts: Tuple[PartCheck, ...]

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.parts)

    def part(self, name: str) -> PartCheck:
        for p in self.parts:
            if p.part == name:
                return p
        raise KeyError(name)


def _is_single_convex(g: ScalarFn) -> bool:
    g = g.normalized()
    return len(g.pieces) == 1 and not g.has_minus_inf()


def qualification(g: ScalarFn, f: ScalarFn, t: np.ndarray) -> Optional[str]:
    """
    Which polyhedral condition licenses equality in the rule for g + f T, if any

    Checked in order: a point of dom g where f T is -inf; a point of ri dom g mapped by T into
    ri dom f, for convex single-piece g and f; dom g inside dom f T with both pieces closed.
    """
    g, f = g.normalized(), f.normalized()
    f_t = precompose(f, t)
    if nonempty(intersect_unions(g.domain(), f_t.minus_inf_region)):
        return DOMINATION
    if not (_is_single_convex(g) and _is_single_convex(f)):
        return None
    dom_g, dom_f = g.domain()[0], f.domain()[0]
    if not relative_interior(dom_g).intersect(relative_interior(dom_f).substitute(t)).is_empty():
        return RELATIVE_INTERIOR
    if g.pieces[0].is_closed() and f.pieces[0].is_closed() and covers(f_t.domain(), dom_g):
        return REAL_VALUED
    return None


def default_duals(dim: int) -> List[Vector]:
    duals = [zero_vector(dim)]
    for i in range(dim):
        duals.append(unit_vector(dim, i))
        duals.append(unit_vector(dim, i, -1))
    return duals


def _witness(g: ScalarFn, h: ScalarFn) -> Dict[str, object]:
    point = difference_witness(g, h)
    if point is None:
        return {}
    return {"x": point, "left": g.evaluate(point), "right": h.evaluate(point)}


def chain_rule_scalar(g: ScalarFn, f: ScalarFn, t: np.ndarray, s: np.ndarray,
                      duals: Optional[Sequence[Vector]] = None) -> ScalarChainReport:
    """
    Check parts (a)-(d) of the scalar chain rule

    :param g: function on X
    :param f: function on Y
    :param t: matrix of T : X -> Y (dim Y x dim X)
    :param s: matrix of S : Y -> X (dim X x dim Y)
    :param duals: points x* where the attaining y* of part (d) is searched
    :return: report with one entry per part; failures are entries, never exceptions
    :rtype: ScalarChainReport
    """
    n = g.domain_dim
    duals = [rat_vector(d) for d in (duals if duals is not None else default_duals(n))]
    g_star, f_star = conjugate(g), conjugate(f)
    parts = []

    left_a = conjugate(inf_convolve(g, pushforward(s, f), INF_ADDITION))
    right_a = fn_add(g_star, precompose(f_star, transpose(s)), SUP_ADDITION)
    equal_a = same_function(left_a, right_a)
    parts.append(PartCheck("a", equal_a, Verdict.EQUAL if equal_a else Verdict.VIOLATED,
                           witnesses={} if equal_a else _witness(left_a, right_a)))

    f_t = precompose(f, t)
    left_b = conjugate(fn_add(g, f_t, INF_ADDITION))
    t_star_f_star = pushforward(transpose(t), f_star)
    right_b = inf_convolve(g_star, t_star_f_star, SUP_ADDITION)
    below = is_minorant(left_b, right_b)
    equal_b = below and is_minorant(right_b, left_b)
    if equal_b:
        verdict_b = Verdict.EQUAL
    elif below:
        verdict_b = Verdict.INCLUSION_ONLY
    else:
        verdict_b = Verdict.VIOLATED
    parts.append(PartCheck("b", below, verdict_b, witnesses={} if equal_b else _witness(left_b, right_b)))

    if g.normalized().is_plus_inf() or f.normalized().is_plus_inf():
        minus = ScalarFn.constant(n, NEG_INF)
        ok = same_function(left_b, minus) and same_function(right_b, minus)
        parts.append(PartCheck("c", ok, Verdict.EQUAL if ok else Verdict.VIOLATED,
                               detail="constant -inf on both sides"))
    else:
        parts.append(PartCheck("c", True, None, detail="not applicable"))

    label = qualification(g, f, t)
    if label is None:
        logger.warning("scalar chain rule: no qualification holds, part (d) downgraded to (b)")
        parts.append(PartCheck("d", below, Verdict.QUALIFICATION_FAILED))
    else:
        plus_reading = same_function(left_b, inf_convolve(g_star, t_star_f_star, INF_ADDITION))
        attained = []
        ok = equal_b
        for x_star in duals:
            target = left_b.evaluate(x_star)
            value, y_star = composite_infimum(g_star, (-transpose(t), x_star),
                                              f_star, (identity_matrix(t.shape[0]), zero_vector(t.shape[0])),
                                              SUP_ADDITION)
            hit = value == target and (not value.is_finite or y_star is not None)
            ok = ok and hit
            attained.append({"x_star": x_star, "value": value, "y_star": y_star, "attained": hit})
        parts.append(PartCheck("d", ok, Verdict.EQUAL if ok else Verdict.VIOLATED, qualification=label,
                               witnesses={"samples": attained, "plus_reading_equal": plus_reading}))
    return ScalarChainReport(tuple(parts))


@dataclass(frozen=True)
class ScalarFRResult:
    primal: ExtReal
    dual: ExtReal
    y_star: Optional[Vector]
    qualification: Optional[str]

    @property
    def weak_duality(self) -> bool:
        return self.dual <= self.primal

    @property
    def gap_free(self) -> bool:
        return self.dual == self.primal


def scalar_fenchel_rockafellar(g: ScalarFn, f: ScalarFn, t: np.ndarray) -> ScalarFRResult:
    """
    inf_x (g(x) + f(Tx)) against sup_y* -(g*(T^T y*) + f*(-y*))

    :return: both values, the attaining y* (lexicographically smallest) and the qualification label
    """
    f_t = precompose(f, t)
    primal, _ = infimum(fn_add(g, f_t, INF_ADDITION))
    k = t.shape[0]
    inner, y_star = composite_infimum(conjugate(g), (transpose(t), zero_vector(g.domain_dim)),
                                      conjugate(f), (-identity_matrix(k), zero_vector(k)),
                                      INF_ADDITION)
    dual = negate(inner)
    label = qualification(g, f, t)
    logger.debug("scalar duality: primal %s, dual %s, qualification %s", primal, dual, label)
    return ScalarFRResult(primal, dual, y_star, label)
