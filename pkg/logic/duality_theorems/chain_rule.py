"""
The set-valued chain rule, checked per dual pair (x*, z*) with z* != 0.

  (a) (g box Sf)*(x*, z*) = (g* [+] f* S^T)(x*, z*)
  (b) (g + f T)*(x*, z*) contains (g* box[+] T^T f*)(x*, z*)
  (c) both sides of (b) are Z when g or f is empty everywhere
  (d) equality in (b) with an attaining y* when a polyhedral qualification holds in direction z*

Every set is produced by the upper-set operations and compared with the coverage oracle.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from logic.polyhedra.rational import Vector, apply, identity_matrix, is_zero, rat_vector, transpose, zero_vector
from logic.scalar_calculus.chain_rule import PartCheck, Verdict, qualification
from logic.scalar_calculus.operations import SUP_ADDITION, composite_infimum
from logic.setvalued_calculus.calculus import fn_inf_convolve, fn_precompose, fn_pushforward, fn_sum
from logic.setvalued_calculus.conjugate import SetConjugate
from logic.setvalued_calculus.set_fn import SetFn, scalarize
from logic.upper_sets.upper_set import includes, level_set, set_equal, sup_add, uncovered
from shared.errors import ContractViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualCheck:
    x_star: Vector
    z_star: Vector
    parts: Tuple[PartCheck, ...]

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.parts)


@dataclass(frozen=True)
class ChainRuleReport:
    instance: str
    entries: Tuple[DualCheck, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def first_failure(self) -> Optional[Tuple[DualCheck, PartCheck]]:
        for entry in self.entries:
            for part in entry.parts:
                if not part.passed:
                    return entry, part
        return None


def _gap(left, right) -> dict:
    point = uncovered(left, right)
    if point is None:
        point = uncovered(right, left)
    return {"left": left, "right": right, "gap_point": point}


def chain_rule_verify(g: SetFn, f: SetFn, t: np.ndarray, s: np.ndarray, duals: Sequence[Tuple[Vector, Vector]],
                      instance: str = "") -> ChainRuleReport:
    """
    Check parts (a)-(d) of the chain rule at every supplied dual pair

    :param g: map on X
    :param f: map on Y
    :param t: T : X -> Y, shape (dim Y, dim X)
    :param s: S : Y -> X, shape (dim X, dim Y)
    :param duals: (x*, z*) pairs, every z* nonzero and in C^-
    :param instance: name carried into the report
    :return: one entry per dual pair; failures are entries, not exceptions
    :rtype: ChainRuleReport
    """
    duals = [(rat_vector(x), g.cone.check_dual(z)) for x, z in duals]
    if any(is_zero(z) for _, z in duals):
        raise ContractViolation("the chain rule is only checked for z* != 0")
    k = t.shape[0]
    g_conj, f_conj = SetConjugate(g), SetConjugate(f)
    convolved = SetConjugate(fn_inf_convolve(g, fn_pushforward(s, f)))
    summed = SetConjugate(fn_sum(g, fn_precompose(f, t)))
    either_empty = g.is_empty_fn() or f.is_empty_fn()
    entries = []
    for x_star, z_star in duals:
        parts = []

        left = convolved(x_star, z_star)
        right = sup_add(g_conj(x_star, z_star), f_conj(apply(transpose(s), x_star), z_star))
        equal = set_equal(left, right)
        parts.append(PartCheck("a", equal, Verdict.EQUAL if equal else Verdict.VIOLATED,
                               witnesses={"left": left, "right": right} if equal else _gap(left, right)))

        left_b = summed(x_star, z_star)
        value, y_star = composite_infimum(g_conj.scalar_conjugate(z_star), (-transpose(t), x_star),
                                          f_conj.scalar_conjugate(z_star), (identity_matrix(k), zero_vector(k)),
                                          SUP_ADDITION)
        right_b = level_set(value, z_star, g.cone)
        contained = includes(left_b, right_b)
        equal_b = contained and includes(right_b, left_b)
        if equal_b:
            verdict = Verdict.EQUAL
        elif contained:
            verdict = Verdict.INCLUSION_ONLY
        else:
            verdict = Verdict.VIOLATED
        witnesses = {"left": left_b, "right": right_b} if equal_b else _gap(left_b, right_b)
        parts.append(PartCheck("b", contained, verdict, witnesses=witnesses))

        if either_empty:
            ok = left_b.is_whole() and right_b.is_whole()
            parts.append(PartCheck("c", ok, Verdict.EQUAL if ok else Verdict.VIOLATED, detail="both sides Z",
                                   witnesses={"left": left_b, "right": right_b}))
        else:
            parts.append(PartCheck("c", True, None, detail="not applicable"))

        label = qualification(scalarize(g, z_star), scalarize(f, z_star), t)
        if label is None:
            logger.warning("chain rule at z* = %s: no qualification holds", [str(a) for a in z_star])
            parts.append(PartCheck("d", contained, Verdict.QUALIFICATION_FAILED, witnesses=witnesses))
        else:
            ok = equal_b and (not value.is_finite or y_star is not None)
            parts.append(PartCheck("d", ok, Verdict.EQUAL if ok else Verdict.VIOLATED, qualification=label,
                                   witnesses=dict(witnesses, y_star=y_star)))
        entries.append(DualCheck(x_star, z_star, tuple(parts)))
    logger.info("chain rule checked at %d dual pairs", len(entries))
    return ChainRuleReport(instance, tuple(entries))
