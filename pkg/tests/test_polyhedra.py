from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

import shared.constants as constants
from conftest import q
from logic.harness.sampling import SplitMix64
from logic.polyhedra.canonical import canonicalize, is_subset, relative_interior, same_set
from logic.polyhedra.generators import closed_hull, closed_minkowski_sum, recession_contains
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.projection import minkowski_sum, project
from logic.polyhedra.rational import apply, dot, format_rat, integer_scaling, parse_rat, rat_matrix, to_rat
from logic.polyhedra.regions import complement, covers, subtract, uncovered_point
from logic.polyhedra.simplex import LPStatus, find_point, lexicographic_argmin, lp_solve
from shared.errors import ContractViolation, ResourceLimitError


def unit_box(dim):
    return Polyhedron.box([0] * dim, [1] * dim)


class TestRational:
    def test_parse_reduces(self):
        assert parse_rat("3/6") == Fraction(1, 2)
        assert parse_rat("-4") == Fraction(-4)

    def test_parse_rejects_zero_denominator(self):
        with pytest.raises(ValueError):
            parse_rat("1/0")

    def test_format_always_has_denominator(self):
        assert format_rat(Fraction(3)) == "3/1"
        assert format_rat(Fraction(-2, 4)) == "-1/2"

    def test_floats_are_refused(self):
        with pytest.raises(TypeError):
            to_rat(0.5)

    def test_integer_scaling(self):
        assert integer_scaling(q("1/2", "1/3")) == 6
        assert integer_scaling(q(0, 0)) == 1

    def test_matrix_product_is_exact(self):
        matrix = rat_matrix([["1/3", "1/3"], [1, 0]])
        assert apply(matrix, q(1, 2)) == (Fraction(1), Fraction(1))


class TestLPSolve:
    def test_box_maximum(self):
        result = lp_solve(q(1, 1), unit_box(2), "max")
        assert result.status is LPStatus.OPTIMAL
        assert result.value == 2
        assert result.point == q(1, 1)

    def test_minimum(self):
        assert lp_solve(q(1, 1), unit_box(2), "min").value == 0

    def test_unbounded(self):
        ray = Polyhedron.from_rows([[-1]], [0])
        assert lp_solve(q(1), ray, "max").status is LPStatus.UNBOUNDED

    def test_infeasible(self):
        nothing = Polyhedron.from_rows([[1], [-1]], [0, -1])
        assert lp_solve(q(1), nothing, "max").status is LPStatus.INFEASIBLE

    def test_strict_rows_are_certified(self):
        # x < 0 and x >= 0: the relaxation is the point 0, the set itself is empty
        p = Polyhedron.from_rows([[1], [-1]], [0, 0], strict=[True, False])
        result = lp_solve(q(1), p, "max", certify_strict=True)
        assert result.is_optimal
        assert result.strictly_feasible is False

    def test_dimension_mismatch(self):
        with pytest.raises(ContractViolation):
            lp_solve(q(1), unit_box(2))

    def test_matches_scipy(self):
        for seed in range(20):
            rng = SplitMix64(seed)
            dim = rng.integer(2, 3)
            rows = [rng.vector(dim) for _ in range(3)]
            bounds = [Fraction(rng.integer(0, 3)) for _ in rows]
            p = Polyhedron.from_rows(rows, bounds).intersect(Polyhedron.box([-2] * dim, [2] * dim))
            objective = rng.vector(dim)
            exact = lp_solve(objective, p, "max")
            assert exact.is_optimal
            assert p.contains(exact.point)
            assert dot(objective, exact.point) == exact.value

            a_ub = np.array([[float(a) for a in c.normal] for c in p.constraints])
            b_ub = np.array([float(c.bound) for c in p.constraints])
            approx = linprog(c=[-float(a) for a in objective], A_ub=a_ub, b_ub=b_ub,
                             bounds=[(None, None)] * dim, method="highs")
            assert approx.status == 0
            assert float(exact.value) == pytest.approx(-approx.fun, abs=1e-7)


class TestFindPoint:
    def test_open_interval(self):
        p = Polyhedron.from_rows([[1], [-1]], [1, 0], strict=[True, True])
        point = find_point(p)
        assert point is not None
        assert 0 < point[0] < 1

    def test_empty(self):
        p = Polyhedron.from_rows([[1], [-1]], [0, 0], strict=[True, True])
        assert find_point(p) is None
        assert p.is_empty()


class TestLexicographicArgmin:
    def test_ties_broken_towards_small_coordinates(self):
        p = unit_box(2).with_constraints(Constraint(q(-1, -1), Fraction(-1)))
        result = lexicographic_argmin(q(1, 1), p, [0])
        assert result.value == 1
        assert result.point == q(0, 1)


class TestCanonicalize:
    def test_same_interval_same_form(self):
        first = Polyhedron.from_rows([[2], [-1]], [2, 0])
        second = Polyhedron.from_rows([[1], [-3], [1]], [1, 0, 5])
        assert canonicalize(first) == canonicalize(second)

    def test_lower_dimensional_segment(self):
        first = Polyhedron.from_rows([[1, -1], [-1, 1], [1, 0], [-1, 0]], [0, 0, 1, 0])
        second = Polyhedron.from_rows([[2, -2], [-1, 1], [0, 1], [0, -1]], [0, 0, 1, 0])
        assert canonicalize(first) == canonicalize(second)

    def test_empty_forms_agree(self):
        first = Polyhedron.from_rows([[1], [-1]], [0, -1])
        second = Polyhedron.from_rows([[1, 1], [-1, -1]], [0, -3])
        assert canonicalize(first) == Polyhedron.empty(1)
        assert canonicalize(second) == Polyhedron.empty(2)

    def test_membership_is_kept(self, rng):
        p = Polyhedron.from_rows([[1, 1], [-1, 0], [0, -1], [2, 2]], [1, 0, 0, 3])
        c = canonicalize(p)
        for _ in range(30):
            v = rng.vector(2)
            assert c.contains(v) == p.contains(v)


class TestSubsets:
    def test_strict_inclusions(self):
        open_interval = Polyhedron.from_rows([[1], [-1]], [1, 0], strict=[True, True])
        closed_interval = unit_box(1)
        assert is_subset(open_interval, closed_interval)
        assert not is_subset(closed_interval, open_interval)
        assert same_set(closed_interval, open_interval.closure())

    def test_relative_interior_of_segment(self):
        segment = Polyhedron.from_rows([[1, -1], [-1, 1], [1, 0], [-1, 0]], [0, 0, 1, 0])
        inside = relative_interior(segment)
        assert inside.contains(q("1/2", "1/2"))
        assert not inside.contains(q(0, 0))


class TestProjection:
    def test_triangle_shadow(self):
        triangle = Polyhedron.from_rows([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])
        assert same_set(project(triangle, [0]), unit_box(1))

    def test_strict_rows_stay_strict(self):
        # 0 < x < y < 1 projects onto 0 < y < 1
        p = Polyhedron.from_rows([[-1, 0], [1, -1], [0, 1]], [0, 0, 1], strict=[True, True, True])
        shadow = project(p, [1])
        assert not shadow.contains(q(0))
        assert shadow.contains(q("1/2"))
        assert not shadow.contains(q(1))

    def test_minkowski_sum_with_open_interval(self):
        open_interval = Polyhedron.from_rows([[1], [-1]], [1, 0], strict=[True, True])
        total = minkowski_sum(unit_box(1), open_interval)
        assert not total.contains(q(0))
        assert total.contains(q(1))
        assert not total.contains(q(2))

    def test_cap(self, monkeypatch):
        monkeypatch.setattr(constants, "FM_CONSTRAINT_CAP", 0)
        triangle = Polyhedron.from_rows([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])
        with pytest.raises(ResourceLimitError):
            project(triangle, [0])


class TestRegions:
    def test_cover_and_gap(self):
        target = Polyhedron.box([0], [2])
        assert not covers([unit_box(1)], target)
        point = uncovered_point([unit_box(1)], target)
        assert 1 < point[0] <= 2
        assert covers([unit_box(1), Polyhedron.box([1], [2])], target)

    def test_subtract_is_disjoint(self):
        cells = subtract(Polyhedron.box([0], [2]), [unit_box(1)])
        assert cells
        assert not any(cell.contains(q(1)) for cell in cells)
        assert any(cell.contains(q("3/2")) for cell in cells)

    def test_complement_covers_the_rest(self):
        cells = complement([unit_box(1)], 1)
        assert covers(cells + [unit_box(1)], Polyhedron.whole(1))
        assert not any(cell.contains(q("1/2")) for cell in cells)

    def test_cell_cap(self, monkeypatch):
        monkeypatch.setattr(constants, "COMPLEMENT_CELL_CAP", 1)
        with pytest.raises(ResourceLimitError):
            complement([unit_box(2)], 2)


class TestGenerators:
    def test_hull_of_two_points(self):
        hull = closed_hull([Polyhedron.point([0]), Polyhedron.point([2])], 1)
        assert same_set(hull, Polyhedron.box([0], [2]))

    def test_hull_of_nothing_is_empty(self):
        assert closed_hull([], 2).is_empty()

    def test_minkowski_sum_of_intervals(self):
        total = closed_minkowski_sum(unit_box(1), Polyhedron.box([2], [3]))
        assert same_set(total, Polyhedron.box([2], [4]))

    def test_recession(self):
        quadrant = Polyhedron.from_rows([[-1, 0], [0, -1]], [0, 0])
        assert recession_contains(quadrant, q(1, 1))
        assert not recession_contains(quadrant, q(-1, 0))
