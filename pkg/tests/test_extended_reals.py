import itertools

import pytest

from logic.extended_reals.ext_real import (NEG_INF, POS_INF, PROBES, ZERO, ExtReal, Tag, ext_inf, ext_sup, inf_add,
                                           inf_residual, negate, residual_by_search, scale, sup_add, sup_residual)
from logic.harness.fixtures import random_ext_real
from shared.errors import ContractViolation

ONE = ExtReal.of(1)
TWO = ExtReal.of(2)


class TestOrder:
    def test_total_order(self):
        assert NEG_INF < ExtReal.of(-100) < ZERO < ExtReal.of("1/2") < POS_INF
        assert max(PROBES) == POS_INF
        assert min(PROBES) == NEG_INF

    def test_text_round_trip(self):
        for value in (NEG_INF, POS_INF, ExtReal.of("-3/4"), ZERO):
            assert ExtReal.parse(str(value)) == value
        assert str(ExtReal.of(3)) == "3/1"

    def test_finite_needs_value(self):
        with pytest.raises(ContractViolation):
            ExtReal(Tag.FINITE)


class TestAdditions:
    def test_inf_addition_lets_plus_inf_win(self):
        assert inf_add(POS_INF, NEG_INF) == POS_INF
        assert inf_add(NEG_INF, ONE) == NEG_INF
        assert inf_add(ONE, TWO) == ExtReal.of(3)

    def test_sup_addition_lets_minus_inf_win(self):
        assert sup_add(POS_INF, NEG_INF) == NEG_INF
        assert sup_add(POS_INF, ONE) == POS_INF

    def test_laws_on_test_points(self):
        for r, s, t in itertools.product(PROBES, repeat=3):
            assert inf_add(r, s) == inf_add(s, r)
            assert inf_add(inf_add(r, s), t) == inf_add(r, inf_add(s, t))
            assert sup_add(sup_add(r, s), t) == sup_add(r, sup_add(s, t))
            assert sup_add(r, s) <= inf_add(r, s)

    def test_negation_swaps_the_additions(self):
        for r, s in itertools.product(PROBES, repeat=2):
            assert negate(inf_add(r, s)) == sup_add(negate(r), negate(s))


class TestResiduals:
    def test_closed_forms(self):
        for r, s in itertools.product(PROBES, repeat=2):
            assert inf_residual(r, s) == sup_add(r, negate(s))
            assert sup_residual(r, s) == inf_add(r, negate(s))

    def test_against_definition(self):
        for r, s in itertools.product(PROBES, repeat=2):
            assert inf_residual(r, s) == residual_by_search(r, s, "inf")
            assert sup_residual(r, s) == residual_by_search(r, s, "sup")

    def test_against_definition_on_random_values(self, rng):
        for _ in range(200):
            r, s = random_ext_real(rng), random_ext_real(rng)
            assert inf_residual(r, s) == residual_by_search(r, s, "inf")
            assert sup_residual(r, s) == residual_by_search(r, s, "sup")

    def test_adjunction(self):
        # r <= s (+) t  iff  r -. s <= t
        for r, s, t in itertools.product(PROBES, repeat=3):
            assert (r <= inf_add(s, t)) == (inf_residual(r, s) <= t)

    def test_infinite_cases(self):
        assert inf_residual(POS_INF, POS_INF) == NEG_INF
        assert inf_residual(ONE, NEG_INF) == POS_INF
        assert inf_residual(NEG_INF, NEG_INF) == NEG_INF
        assert sup_residual(NEG_INF, NEG_INF) == POS_INF
        assert sup_residual(POS_INF, POS_INF) == POS_INF

    def test_unknown_kind(self):
        with pytest.raises(ContractViolation):
            residual_by_search(ONE, ONE, "mid")


class TestScaleAndFamilies:
    def test_zero_times_infinity(self):
        assert scale(0, POS_INF) == ZERO
        assert scale(0, NEG_INF) == ZERO
        assert scale(2, ExtReal.of("3/2")) == ExtReal.of(3)
        assert scale(3, NEG_INF) == NEG_INF

    def test_negative_scale(self):
        with pytest.raises(ContractViolation):
            scale(-1, ONE)

    def test_empty_families(self):
        assert ext_inf([]) == POS_INF
        assert ext_sup([]) == NEG_INF
        assert ext_inf([ONE, NEG_INF]) == NEG_INF
        assert ext_sup([ONE, TWO]) == TWO
