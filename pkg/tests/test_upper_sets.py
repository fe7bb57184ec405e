import pytest

from conftest import q
from logic.extended_reals.ext_real import NEG_INF, POS_INF, ExtReal
from logic.harness.fixtures import random_upper_set
from logic.polyhedra.polyhedron import Polyhedron
from logic.upper_sets.cone import Cone
from logic.upper_sets.upper_set import (UpperSet, closed_convex_hull, includes, lattice_inf, lattice_sup, level_set,
                                        minkowski_add, residual, s_dual, scale, set_equal, sup_add, uncovered)
from shared.errors import ContractViolation, NotAnUpperSetError


def corner(cone, *point):
    return UpperSet.translate_cone(q(*point), cone)


def two_corners(cone):
    return lattice_inf([corner(cone, 0, 2), corner(cone, 2, 0)], cone)


class TestCone:
    def test_dual_membership(self, quadrant):
        assert quadrant.in_dual(q(-1, -1))
        assert quadrant.in_dual(q(0, 0))
        assert not quadrant.in_dual(q(1, 0))
        with pytest.raises(ContractViolation):
            quadrant.check_dual(q(1, -1))

    def test_dual_generators_are_dual(self, quadrant):
        assert quadrant.dual_generators
        assert all(quadrant.in_dual(d) for d in quadrant.dual_generators)

    def test_whole_space_is_refused(self):
        with pytest.raises(ContractViolation):
            Cone(1, ((1,), (-1,)))

    def test_skewed_cone(self):
        cone = Cone(2, ((1, 0), (1, 1)))
        assert cone.contains(q(3, 1))
        assert not cone.contains(q(0, 1))
        assert not cone.in_dual(q(0, 1))
        assert cone.in_dual(q(-1, 1))


class TestUpperSet:
    def test_translate(self, quadrant):
        a = corner(quadrant, 1, 1)
        assert a.contains(q(2, 1))
        assert not a.contains(q(0, 5))

    def test_pieces_must_recede(self, quadrant):
        with pytest.raises(NotAnUpperSetError):
            UpperSet.from_polyhedron(Polyhedron.box([0, 0], [1, 1]), quadrant)

    def test_halfspace(self, quadrant):
        h = UpperSet.halfspace(q(-1, -1), quadrant)
        assert h.contains(q(1, -1))
        assert not h.contains(q(-1, 0))
        assert UpperSet.halfspace(q(0, 0), quadrant).is_whole()
        assert UpperSet.halfspace(q(0, 0), quadrant, -1).is_empty()

    def test_order(self, quadrant):
        assert includes(corner(quadrant, 0, 0), corner(quadrant, 1, 1))
        assert not includes(corner(quadrant, 1, 1), corner(quadrant, 0, 0))
        assert uncovered(corner(quadrant, 1, 1), corner(quadrant, 0, 0)) is not None

    def test_closure(self, quadrant):
        open_half = UpperSet(2, (Polyhedron.from_rows([[-1, 0]], [0], strict=[True]),), quadrant)
        assert not open_half.contains(q(0, 0))
        assert open_half.closure().contains(q(0, 0))


class TestAlgebra:
    def test_minkowski_sum_of_corners(self, quadrant):
        total = minkowski_add(corner(quadrant, 1, 0), corner(quadrant, 0, 1))
        assert set_equal(total, corner(quadrant, 1, 1))

    def test_empty_absorbs(self, quadrant):
        assert minkowski_add(corner(quadrant, 1, 0), UpperSet.empty(quadrant)).is_empty()

    def test_sup_addition_with_whole(self, quadrant):
        assert sup_add(UpperSet.whole(quadrant), UpperSet.empty(quadrant)).is_whole()

    def test_scale(self, quadrant):
        assert set_equal(scale(0, corner(quadrant, 5, 5)), corner(quadrant, 0, 0))
        assert set_equal(scale(2, corner(quadrant, 1, 0)), corner(quadrant, 2, 0))
        with pytest.raises(ContractViolation):
            scale(-1, corner(quadrant, 1, 0))

    def test_lattice_of_empty_families(self, quadrant):
        assert lattice_inf([], quadrant).is_empty()
        assert lattice_sup([], quadrant).is_whole()

    def test_lattice_sup_intersects(self, quadrant):
        meet = lattice_sup([corner(quadrant, 1, 0), corner(quadrant, 0, 1)], quadrant)
        assert set_equal(meet, corner(quadrant, 1, 1))


class TestResidual:
    def test_convex(self, quadrant):
        a = corner(quadrant, 1, 1)
        assert set_equal(residual(a, corner(quadrant, 0, 0)), a)

    def test_trivial_cases(self, quadrant):
        a = corner(quadrant, 1, 1)
        assert residual(a, UpperSet.empty(quadrant)).is_whole()
        assert residual(UpperSet.empty(quadrant), a).is_empty()

    def test_union(self, quadrant):
        a = two_corners(quadrant)
        assert set_equal(residual(a, corner(quadrant, 0, 0)), a)

    def test_adjunction_on_random_sets(self, rng, quadrant):
        for _ in range(10):
            a, b = random_upper_set(rng, quadrant), random_upper_set(rng, quadrant)
            r = residual(a, b)
            assert includes(a, minkowski_add(b, r))


class TestSDual:
    def test_of_the_cone(self, quadrant):
        s = s_dual(corner(quadrant, 0, 0))
        assert s.contains(q(1, -5))
        assert not s.contains(q(-1, -1))
        assert not s.contains(q(0, 0))

    def test_extremes(self, quadrant):
        assert s_dual(UpperSet.empty(quadrant)).is_whole()
        assert s_dual(UpperSet.whole(quadrant)).is_empty()


class TestLevelSetAndHull:
    def test_level_sets(self, quadrant):
        assert level_set(NEG_INF, q(-1, 0), quadrant).is_whole()
        assert level_set(POS_INF, q(-1, 0), quadrant).is_empty()
        level = level_set(ExtReal.of(1), q(-1, 0), quadrant)
        assert level.contains(q(1, 0))
        assert not level.contains(q(0, 0))

    def test_hull_of_two_corners(self, quadrant):
        hull = closed_convex_hull(two_corners(quadrant))
        assert hull.contains(q(1, 1))
        assert not hull.contains(q(0, 1))
        assert not two_corners(quadrant).contains(q(1, 1))
