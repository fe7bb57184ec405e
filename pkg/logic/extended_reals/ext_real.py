"""
The extended reals with inf-addition, sup-addition and both residuations.

+inf dominates inf-addition and -inf dominates sup-addition; the residuals are the adjoints
r -. s = inf{t : r <= s (+) t} and r -: s = sup{t : s [+] t <= r}.
"""
import functools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

from logic.polyhedra.rational import format_rat, parse_rat, to_rat
from shared.errors import ContractViolation


class Tag(Enum):
    NEG_INF = -1
    FINITE = 0
    POS_INF = 1


@functools.total_ordering
@dataclass(frozen=True)
class ExtReal:
    tag: Tag
    value: Optional[Fraction] = None

    def __post_init__(self):
        if self.tag is Tag.FINITE:
            if self.value is None:
                raise ContractViolation("a finite extended real needs a value")
            object.__setattr__(self, 'value', to_rat(self.value))
        elif self.value is not None:
            raise ContractViolation("infinite extended reals carry no value")

    @classmethod
    def of(cls, value) -> 'ExtReal':
        if isinstance(value, ExtReal):
            return value
        return cls(Tag.FINITE, to_rat(value))

    @classmethod
    def parse(cls, text: str) -> 'ExtReal':
        """
        Read "-inf", "+inf" or a rational "p/q"
        """
        stripped = text.strip()
        if stripped == "-inf":
            return NEG_INF
        if stripped in ("+inf", "inf"):
            return POS_INF
        return cls(Tag.FINITE, parse_rat(stripped))

    def __str__(self):
        if self.tag is Tag.NEG_INF:
            return "-inf"
        if self.tag is Tag.POS_INF:
            return "+inf"
        return format_rat(self.value)

    @property
    def is_finite(self) -> bool:
        return self.tag is Tag.FINITE

    @property
    def is_pos_inf(self) -> bool:
        return self.tag is Tag.POS_INF

    @property
    def is_neg_inf(self) -> bool:
        return self.tag is Tag.NEG_INF

    def _key(self):
        return (self.tag.value, self.value if self.value is not None else Fraction(0))

    def __lt__(self, other):
        other = ExtReal.of(other)
        return self._key() < other._key()

    def __eq__(self, other):
        if not isinstance(other, ExtReal):
            try:
                other = ExtReal.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.tag is other.tag and self.value == other.value

    def __hash__(self):
        return hash((self.tag, self.value))

    def __neg__(self):
        return negate(self)

    def __repr__(self):
        return "ExtReal({})".format(self)


NEG_INF = ExtReal(Tag.NEG_INF)
POS_INF = ExtReal(Tag.POS_INF)
ZERO = ExtReal(Tag.FINITE, Fraction(0))


def inf_add(r: ExtReal, s: ExtReal) -> ExtReal:
    """
    r (+) s, where +inf absorbs everything
    """
    r, s = ExtReal.of(r), ExtReal.of(s)
    if r.is_pos_inf or s.is_pos_inf:
        return POS_INF
    if r.is_neg_inf or s.is_neg_inf:
        return NEG_INF
    return ExtReal(Tag.FINITE, r.value + s.value)


def sup_add(r: ExtReal, s: ExtReal) -> ExtReal:
    """
    r [+] s, where -inf absorbs everything
    """
    r, s = ExtReal.of(r), ExtReal.of(s)
    if r.is_neg_inf or s.is_neg_inf:
        return NEG_INF
    if r.is_pos_inf or s.is_pos_inf:
        return POS_INF
    return ExtReal(Tag.FINITE, r.value + s.value)


def negate(r: ExtReal) -> ExtReal:
    r = ExtReal.of(r)
    if r.is_pos_inf:
        return NEG_INF
    if r.is_neg_inf:
        return POS_INF
    return ExtReal(Tag.FINITE, -r.value)


def inf_residual(r: ExtReal, s: ExtReal) -> ExtReal:
    """
    r -. s = inf{t : r <= s (+) t}, which always equals r [+] (-s)

    :param r: minuend
    :param s: subtrahend
    :return: the inf-residual
    :rtype: ExtReal
    """
    r, s = ExtReal.of(r), ExtReal.of(s)
    if s.is_pos_inf:
        return NEG_INF
    if s.is_neg_inf:
        return NEG_INF if r.is_neg_inf else POS_INF
    if not r.is_finite:
        return r
    return ExtReal(Tag.FINITE, r.value - s.value)


def sup_residual(r: ExtReal, s: ExtReal) -> ExtReal:
    """
    r -: s = sup{t : s [+] t <= r}, which always equals r (+) (-s)
    """
    r, s = ExtReal.of(r), ExtReal.of(s)
    if s.is_neg_inf:
        return POS_INF
    if s.is_pos_inf:
        return POS_INF if r.is_pos_inf else NEG_INF
    if not r.is_finite:
        return r
    return ExtReal(Tag.FINITE, r.value - s.value)


def scale(t, r: ExtReal) -> ExtReal:
    """
    Multiplication by t >= 0 with 0 * (+-inf) = 0
    """
    t = to_rat(t)
    if t < 0:
        raise ContractViolation("extended reals are scaled by nonnegative factors only")
    r = ExtReal.of(r)
    if t == 0:
        return ZERO
    if not r.is_finite:
        return r
    return ExtReal(Tag.FINITE, t * r.value)


def ext_inf(values: Iterable[ExtReal]) -> ExtReal:
    """
    Infimum of a finite family; the empty family gives +inf
    """
    return min((ExtReal.of(v) for v in values), default=POS_INF)


def ext_sup(values: Iterable[ExtReal]) -> ExtReal:
    """
    Supremum of a finite family; the empty family gives -inf
    """
    return max((ExtReal.of(v) for v in values), default=NEG_INF)


PROBES = (NEG_INF, ExtReal.of(-1), ZERO, ExtReal.of(1), POS_INF)


def residual_by_search(r: ExtReal, s: ExtReal, kind: str = "inf") -> ExtReal:
    """
    Residual from its definition, for cross-checking the case tables

    The defining inf (or sup) runs over all of the extended reals. Feasible t form an up-set (for the
    inf-residual) or a down-set (for the sup-residual); the candidates are the infinities and
    the only finite boundary point, r - s, which exists when both are finite.

    :param r: minuend
    :param s: subtrahend
    :param kind: "inf" or "sup"
    :return: the residual found by scanning the candidates
    """
    r, s = ExtReal.of(r), ExtReal.of(s)
    candidates = list(PROBES)
    if r.is_finite and s.is_finite:
        candidates.append(ExtReal(Tag.FINITE, r.value - s.value))
    if kind == "inf":
        feasible = [t for t in candidates if r <= inf_add(s, t)]
        if not feasible:
            return POS_INF
        return min(feasible)
    if kind == "sup":
        feasible = [t for t in candidates if sup_add(s, t) <= r]
        if not feasible:
            return NEG_INF
        return max(feasible)
    raise ContractViolation("kind must be 'inf' or 'sup', got {!r}".format(kind))
