import dataclasses

import pytest

from conftest import q
import logic.duality_theorems.fenchel_rockafellar as fr_module
from logic.duality_theorems.chain_rule import chain_rule_verify
from logic.duality_theorems.fenchel_rockafellar import fenchel_rockafellar, primal_value, ystar_sample
from logic.harness.sampling import SplitMix64
from logic.polyhedra.polyhedron import Polyhedron
from logic.polyhedra.rational import is_zero, rat_matrix
from logic.scalar_calculus.chain_rule import Verdict
from logic.setvalued_calculus.set_fn import SetFn, facet_directions
from shared.errors import ContractViolation

T = rat_matrix([[1, 0]])
S = rat_matrix([[1], [0]])


@pytest.fixture
def pair(half_line):
    """
    g(x) = x1 + x2 + C on the unit square and f(y) = 1 - y + C
    """
    g = SetFn.shifted_cone(rat_matrix([[1, 1]]), half_line, domain=Polyhedron.box([0, 0], [1, 1]))
    f = SetFn.shifted_cone(rat_matrix([[-1]]), half_line, offset=[1])
    return g, f


class TestChainRule:
    def test_holds_at_facet_directions(self, pair):
        g, f = pair
        duals = [(x, z) for x, z in facet_directions(g) if not is_zero(z)]
        report = chain_rule_verify(g, f, T, S, duals, "pair")
        assert report.entries
        assert report.passed
        assert report.first_failure() is None

    def test_part_c_only_for_empty_maps(self, pair):
        g, f = pair
        report = chain_rule_verify(g, f, T, S, [(q(1, 1), q(-1))])
        part_c = [p for p in report.entries[0].parts if p.part == "c"][0]
        assert part_c.verdict is None

    def test_empty_map_gives_whole_space(self, pair, half_line):
        _, f = pair
        report = chain_rule_verify(SetFn.empty(2, half_line), f, T, S, [(q(0, 0), q(-1))])
        part_c = [p for p in report.entries[0].parts if p.part == "c"][0]
        assert part_c.verdict is Verdict.EQUAL

    def test_zero_direction_is_refused(self, pair):
        g, f = pair
        with pytest.raises(ContractViolation):
            chain_rule_verify(g, f, T, S, [(q(0, 0), q(0))])


class TestFenchelRockafellar:
    def test_primal_value(self, pair):
        g, f = pair
        p = primal_value(g, f, T)
        assert p.contains(q(1))
        assert not p.contains(q("1/2"))

    def test_duality(self, pair):
        g, f = pair
        report = fenchel_rockafellar(g, f, T, [q(-1)], ystar_budget=4, seed=0, instance="pair")
        assert report.passed
        assert all(check.weak_duality for check in report.directions)
        assert report.d[q(-1)].contains(q(1))

    def test_zero_direction_is_refused(self, pair):
        g, f = pair
        with pytest.raises(ContractViolation):
            fenchel_rockafellar(g, f, T, [q(0)])

    def test_ystar_sample_order(self):
        sample = ystar_sample(1, q(2), 4, SplitMix64(0))
        assert sample == [q(2), q(0), q(1), q(-1)]

    def test_ystar_sample_fills_budget(self):
        sample = ystar_sample(1, None, 6, SplitMix64(0))
        assert len(sample) == 6
        assert len(set(sample)) == 6


class TestUnattainedDual:
    @pytest.fixture
    def no_scalar_optimum(self, monkeypatch):
        original = fr_module.scalar_fenchel_rockafellar

        def without_optimum(g, f, t):
            return dataclasses.replace(original(g, f, t), y_star=None)

        monkeypatch.setattr(fr_module, "scalar_fenchel_rockafellar", without_optimum)

    def test_attaining_point_found_in_sample(self, pair, no_scalar_optimum):
        g, f = pair
        check = fenchel_rockafellar(g, f, T, [q(-1)], ystar_budget=4, seed=0).directions[0]
        assert check.achieved
        assert check.y_star == q(1)

    def test_no_attaining_point_leaves_y_star_empty(self, pair, no_scalar_optimum):
        g, f = pair
        check = fenchel_rockafellar(g, f, T, [q(-1)], ystar_budget=1, seed=0).directions[0]
        assert check.y_star is None
        assert check.achieved is False
        assert check.gap_witness is not None
