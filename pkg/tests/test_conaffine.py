import pytest

from conftest import q
from logic.conaffine.conaffine import (ConAffine, additivity_holds, halfspace, is_minorant, scaling_holds,
                                       sublinearity_holds, z0_for)
from logic.harness.fixtures import random_zstar, shifted_identity
from logic.setvalued_calculus.set_fn import SetFn
from logic.upper_sets.upper_set import set_equal
from shared.errors import ContractViolation


class TestEvaluation:
    def test_halfspace_value(self, quadrant):
        s = ConAffine(q(1), 0, q(-1, 0), quadrant)
        value = s(q(2))
        assert value.contains(q(2, -100))
        assert not value.contains(q(1, 0))

    def test_zero_direction_is_all_or_nothing(self, quadrant):
        s = ConAffine(q(1), 0, q(0, 0), quadrant)
        assert s(q(-1)).is_whole()
        assert s(q(1)).is_empty()

    def test_direction_outside_dual_cone(self, quadrant):
        with pytest.raises(ContractViolation):
            ConAffine(q(1), 0, q(1, 0), quadrant)

    def test_graph_form(self, quadrant):
        s = ConAffine(q(1), 1, q(-1, -1), quadrant)
        g = s.as_set_fn()
        for x in (q(-2), q(0), q(3)):
            assert set_equal(g.evaluate(x), s(x))

    def test_z0(self):
        assert z0_for(q(0, -2)) == q(0, "-1/2")
        with pytest.raises(ContractViolation):
            z0_for(q(0, 0))

    def test_halfspace_of_direction(self, quadrant):
        assert halfspace(q(-1, -1), quadrant).contains(q(1, -1))


class TestMinorant:
    def test_shifted_identity(self):
        g = shifted_identity(2)
        cone = g.cone
        assert is_minorant(ConAffine(q(1, 0), 0, q(-1, 0), cone), g)
        assert not is_minorant(ConAffine(q(2, 0), 0, q(-1, 0), cone), g)
        assert not is_minorant(ConAffine(q(1, 0), -1, q(-1, 0), cone), g)

    def test_empty_map_has_every_minorant(self, quadrant):
        assert is_minorant(ConAffine(q(5), -7, q(-1, 0), quadrant), SetFn.empty(1, quadrant))

    def test_spaces_must_match(self, quadrant):
        with pytest.raises(ContractViolation):
            is_minorant(ConAffine(q(1, 1), 0, q(-1, 0), quadrant), SetFn.empty(1, quadrant))


class TestAlgebra:
    def test_sublinearity(self, quadrant):
        assert sublinearity_holds(q(1), q(-1, -1), quadrant, q(1), q(2))
        assert sublinearity_holds(q(1), q(0, 0), quadrant, q(1), q(-2))

    def test_additivity(self, quadrant):
        assert additivity_holds(q(1), q(2), 3, q(-1, -1), quadrant, q(1))

    def test_scaling(self, quadrant):
        assert scaling_holds(q(1), 2, q(-1, -1), quadrant, 3, q(1))
        with pytest.raises(ContractViolation):
            scaling_holds(q(1), 2, q(-1, -1), quadrant, 0, q(1))

    def test_on_random_data(self, rng, quadrant):
        for _ in range(10):
            z_star = random_zstar(rng, quadrant)
            x_star, x, y = rng.vector(1), rng.vector(1), rng.vector(1)
            assert sublinearity_holds(x_star, z_star, quadrant, x, y)
            assert additivity_holds(x_star, rng.vector(1), rng.rational(), z_star, quadrant, x)
