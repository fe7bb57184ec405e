import pytest

from conftest import q
from logic.extended_reals.ext_real import NEG_INF, POS_INF, ExtReal
from logic.harness.fixtures import SCALAR_KINDS, random_scalar_fn
from logic.polyhedra.polyhedron import Polyhedron
from logic.polyhedra.rational import rat_matrix
from logic.scalar_calculus.chain_rule import Verdict, chain_rule_scalar, scalar_fenchel_rockafellar
from logic.scalar_calculus.operations import (INF_ADDITION, SUP_ADDITION, affine_minorant_envelope, biconjugate, cl_co,
                                              composite_infimum, conjugate, fn_add, inf_convolve, infimum,
                                              is_affine_minorant, is_improper_affine_minorant, is_minorant,
                                              pointwise_max, pointwise_min, precompose, pushforward, restricted,
                                              same_function, shifted)
from logic.scalar_calculus.scalar_fn import ImproperAffine, ImproperMode, ScalarFn, improper_extend
from shared.errors import ContractViolation


def absolute_value():
    return ScalarFn.max_affine([((1,), 0), ((-1,), 0)])


def unit_interval():
    return Polyhedron.box([0], [1])


class TestScalarFn:
    def test_evaluate_max_affine(self):
        assert absolute_value().evaluate(q(-2)) == ExtReal.of(2)

    def test_constants(self):
        assert ScalarFn.constant(1, POS_INF).is_plus_inf()
        assert ScalarFn.constant(1, NEG_INF).evaluate(q(7)) == NEG_INF
        assert ScalarFn.constant(2, "1/2").evaluate(q(1, 1)) == ExtReal.of("1/2")

    def test_indicator(self):
        box = ScalarFn.indicator(unit_interval())
        assert box.evaluate(q("1/2")) == ExtReal.of(0)
        assert box.evaluate(q(2)) == POS_INF

    def test_flat_pieces_become_minus_inf(self):
        flat = ScalarFn(1, (Polyhedron.from_rows([[1, 0]], [0]),)).normalized()
        assert not flat.pieces
        assert flat.evaluate(q(-1)) == NEG_INF
        assert flat.evaluate(q(1)) == POS_INF

    def test_piece_must_recede_upward(self):
        with pytest.raises(ContractViolation):
            ScalarFn(1, (Polyhedron.from_rows([[0, 1]], [0]),))

    def test_wrong_point_length(self):
        with pytest.raises(ContractViolation):
            absolute_value().evaluate(q(1, 2))


class TestImproperAffine:
    def test_hat_inf(self):
        f = improper_extend(ImproperAffine(q(1), 0, ImproperMode.HAT_INF))
        assert f.evaluate(q(-1)) == NEG_INF
        assert f.evaluate(q(0)) == NEG_INF
        assert f.evaluate(q(1)) == POS_INF

    def test_hat_sup(self):
        f = improper_extend(ImproperAffine(q(1), 0, ImproperMode.HAT_SUP))
        assert f.evaluate(q(-1)) == NEG_INF
        assert f.evaluate(q(0)) == POS_INF

    def test_zero_slope_follows_case_split(self):
        assert improper_extend(ImproperAffine(q(0), 1)).evaluate(q(5)) == NEG_INF
        assert improper_extend(ImproperAffine(q(0), -1)).evaluate(q(5)) == POS_INF


class TestConjugate:
    def test_absolute_value(self):
        conj = conjugate(absolute_value())
        assert conj.evaluate(q("1/2")) == ExtReal.of(0)
        assert conj.evaluate(q(-1)) == ExtReal.of(0)
        assert conj.evaluate(q(2)) == POS_INF

    def test_constant(self):
        conj = conjugate(ScalarFn.constant(1, 3))
        assert conj.evaluate(q(0)) == ExtReal.of(-3)
        assert conj.evaluate(q(1)) == POS_INF

    def test_improper_cases(self):
        assert conjugate(ScalarFn.constant(1, POS_INF)).evaluate(q(4)) == NEG_INF
        assert conjugate(ScalarFn.constant(1, NEG_INF)).is_plus_inf()

    def test_biconjugate_of_closed_convex(self):
        assert same_function(biconjugate(absolute_value()), absolute_value())

    def test_biconjugate_is_hull(self):
        at_zero = ScalarFn.indicator(Polyhedron.point([0]))
        at_two = shifted(ScalarFn.indicator(Polyhedron.point([2])), 1)
        g = pointwise_min(at_zero, at_two)
        assert g.evaluate(q(1)) == POS_INF
        assert cl_co(g).evaluate(q(1)) == ExtReal.of("1/2")
        assert same_function(biconjugate(g), cl_co(g))

    def test_biconjugation_on_random_functions(self, rng):
        for kind in SCALAR_KINDS:
            g = random_scalar_fn(rng, 1, kind)
            if conjugate(g).is_proper():
                assert same_function(biconjugate(g), cl_co(g)), kind


class TestCalculus:
    def test_inf_convolution_shifts(self):
        moved = inf_convolve(absolute_value(), ScalarFn.indicator(Polyhedron.point([1])))
        assert moved.evaluate(q(3)) == ExtReal.of(2)
        assert moved.evaluate(q(1)) == ExtReal.of(0)

    def test_pushforward(self):
        sup_norm = ScalarFn.max_affine([((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), 0)])
        image = pushforward(rat_matrix([[1, 1]]), sup_norm)
        assert image.evaluate(q(2)) == ExtReal.of(1)
        assert image.evaluate(q(-1)) == ExtReal.of("1/2")

    def test_precompose(self):
        composed = precompose(absolute_value(), rat_matrix([[1, -1]]))
        assert composed.evaluate(q(3, 1)) == ExtReal.of(2)

    def test_additions_differ_on_infinities(self):
        minus = ScalarFn.constant(1, NEG_INF)
        box = ScalarFn.indicator(unit_interval())
        inf_sum = fn_add(minus, box, INF_ADDITION)
        sup_sum = fn_add(minus, box, SUP_ADDITION)
        assert inf_sum.evaluate(q(2)) == POS_INF
        assert inf_sum.evaluate(q("1/2")) == NEG_INF
        assert sup_sum.evaluate(q(2)) == NEG_INF

    def test_pointwise_max(self):
        top = pointwise_max(absolute_value(), ScalarFn.constant(1, 1))
        assert top.evaluate(q(0)) == ExtReal.of(1)
        assert top.evaluate(q(3)) == ExtReal.of(3)

    def test_restricted(self):
        g = restricted(absolute_value(), unit_interval())
        assert g.evaluate(q(-1)) == POS_INF
        assert g.evaluate(q(1)) == ExtReal.of(1)

    def test_dimension_mismatch(self):
        with pytest.raises(ContractViolation):
            fn_add(absolute_value(), ScalarFn.constant(2, 0))


class TestMinorants:
    def test_functions(self):
        assert is_minorant(ScalarFn.constant(1, 0), absolute_value())
        assert not is_minorant(absolute_value(), ScalarFn.constant(1, 0))

    def test_affine(self):
        assert is_affine_minorant(q(1), 0, absolute_value())
        assert not is_affine_minorant(q(2), 0, absolute_value())

    def test_improper_affine(self):
        box = ScalarFn.indicator(unit_interval())
        assert is_improper_affine_minorant(q(1), 1, box)
        assert not is_improper_affine_minorant(q(1), 0, box)

    def test_envelope_of_closed_convex(self):
        assert same_function(affine_minorant_envelope(absolute_value()), absolute_value())


class TestInfima:
    def test_infimum(self):
        value, where = infimum(shifted(absolute_value(), 2))
        assert value == ExtReal.of(2)
        assert where == q(0)
        assert infimum(ScalarFn.affine(q(1)))[0] == NEG_INF

    def test_composite_infimum_breaks_ties_low(self):
        identity = rat_matrix([[1]])
        value, where = composite_infimum(absolute_value(), (identity, q(-1)), absolute_value(), (identity, q(0)))
        assert value == ExtReal.of(1)
        assert where == q(0)


class TestScalarChainRule:
    def test_absolute_values(self):
        identity = rat_matrix([[1]])
        report = chain_rule_scalar(absolute_value(), absolute_value(), identity, identity)
        assert report.passed
        assert report.part("b").verdict is Verdict.EQUAL
        assert report.part("d").qualification is not None

    def test_plus_inf_gives_minus_inf_on_both_sides(self):
        identity = rat_matrix([[1]])
        report = chain_rule_scalar(ScalarFn.constant(1, POS_INF), absolute_value(), identity, identity)
        assert report.passed
        assert report.part("c").verdict is Verdict.EQUAL
        assert report.part("d").verdict is Verdict.QUALIFICATION_FAILED

    def test_fenchel_rockafellar(self):
        shifted_abs = ScalarFn.max_affine([((1,), 1), ((-1,), -1)])
        result = scalar_fenchel_rockafellar(absolute_value(), shifted_abs, rat_matrix([[1]]))
        assert result.primal == ExtReal.of(1)
        assert result.weak_duality
        assert result.gap_free
        assert result.qualification is not None
