import json
import os

import pytest

import shared.constants as constants
from logic.harness.fixtures import random_cone
from logic.harness.instance import AUTO, dump_instance, dumps_instance, load_instance, parse_instance
from logic.harness.properties import PROPERTIES, property_seed, run_property, scaled_count
from logic.harness.report import build_report, dumps
from logic.harness.sampling import SplitMix64
from logic.harness.tasks import run_task, task_seed
from logic.setvalued_calculus.set_fn import same_set_fn
from shared.errors import InstanceParseError

BUNDLED = ("shifted-cone", "two-point", "not-closed", "chain")


def bundled(name):
    return load_instance(os.path.join(constants.INSTANCE_PATH, name + ".json"))


def document(cone):
    return json.dumps({"name": "bad", "spaces": {"x": 1, "z": 1}, "cone": cone, "tasks": []})


class TestSplitMix64:
    def test_reference_value(self):
        assert SplitMix64(0).next_u64() == 0xe220a8397b1dcdaf

    def test_replays(self):
        a, b = SplitMix64(7), SplitMix64(7)
        assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]

    def test_ranges(self):
        rng = SplitMix64(1)
        for _ in range(100):
            assert -2 <= rng.integer(-2, 2) <= 2
            value = rng.rational(3, 2)
            assert abs(value) <= 3
            assert value.denominator in (1, 2)


class TestFixtures:
    def test_random_cones_include_a_ray(self):
        rng = SplitMix64(0)
        sizes = {len(random_cone(rng, 2).generators) for _ in range(40)}
        assert sizes == {1, 2}

    def test_one_dimensional_cone_is_the_half_line(self):
        cone = random_cone(SplitMix64(0), 1)
        assert cone.in_dual((-1,))
        assert not cone.in_dual((1,))


class TestParseInstance:
    def test_zero_denominator(self):
        with pytest.raises(InstanceParseError) as info:
            parse_instance(document([["1/0"]]))
        assert info.value.location == "$.cone[0][0]"

    def test_floats_are_refused(self):
        with pytest.raises(InstanceParseError):
            parse_instance(document([[1.0]]))

    def test_not_json(self):
        with pytest.raises(InstanceParseError) as info:
            parse_instance('{"name": "bad",\n  "spaces": }')
        assert info.value.location == "line 2, column 13"

    def test_missing_spaces(self):
        with pytest.raises(InstanceParseError) as info:
            parse_instance(json.dumps({"cone": [["1"]]}))
        assert "spaces" in info.value.message

    def test_whole_space_cone(self):
        with pytest.raises(InstanceParseError) as info:
            parse_instance(document([["1"], ["-1"]]))
        assert info.value.location == "$.cone"

    @pytest.mark.parametrize("name", BUNDLED)
    def test_bundled_instances_load(self, name):
        instance = bundled(name)
        assert instance.name == name
        assert instance.seed == constants.DEFAULT_SEED
        assert instance.tasks

    def test_auto_parameters(self):
        instance = bundled("shifted-cone")
        assert instance.tasks[1].params["duals"] == AUTO

    def test_zero_chain_dual_is_refused(self):
        with open(os.path.join(constants.INSTANCE_PATH, "chain.json"), encoding="utf-8") as handle:
            document = json.load(handle)
        document["tasks"] = [{"task": "chain", "g": "g", "f": "f", "T": "T", "S": "S",
                              "duals": [{"x_star": ["0"] * document["spaces"]["x"], "z_star": ["0"]}]}]
        with pytest.raises(InstanceParseError) as info:
            parse_instance(json.dumps(document))
        assert info.value.location == "$.tasks[0].duals[0].z_star"


class TestDumpInstance:
    @pytest.mark.parametrize("name", BUNDLED)
    def test_dump_reads_back(self, name):
        instance = bundled(name)
        document = dump_instance(instance)
        again = parse_instance(dumps_instance(instance))
        assert dump_instance(again) == document
        assert again.name == instance.name
        assert again.seed == instance.seed
        assert again.dims == instance.dims
        assert [t.kind for t in again.tasks] == [t.kind for t in instance.tasks]

    def test_functions_survive(self):
        instance = bundled("shifted-cone")
        again = parse_instance(dumps_instance(instance))
        for name, fn in instance.functions.items():
            assert same_set_fn(again.functions[name], fn)

    def test_auto_and_inline_matrices(self):
        document = dump_instance(bundled("chain"))
        chain = document["tasks"][0]
        assert chain["duals"] == AUTO
        assert all(isinstance(entry, str) for row in chain["T"] for entry in row)


class TestTasks:
    def test_task_seed(self):
        rng = SplitMix64(5)
        first, second = rng.next_u64(), rng.next_u64()
        assert task_seed(5, 0) == first
        assert task_seed(5, 1) == second

    def test_two_point_biconjugate_is_the_hull(self):
        instance = bundled("two-point")
        outcome = run_task(1, instance, instance.seed)
        assert outcome.passed
        assert outcome.result["equals_cl_co"]
        assert not outcome.result["equals_input"]

    def test_not_closed_scalarization(self):
        instance = bundled("not-closed")
        outcome = run_task(0, instance, instance.seed)
        assert outcome.passed
        assert outcome.failure is None

    @pytest.mark.parametrize("name", BUNDLED)
    def test_bundled_instances_pass(self, name):
        instance = bundled(name)
        for index in range(len(instance.tasks)):
            assert run_task(index, instance, instance.seed).passed, (name, index)


class TestReport:
    def test_deterministic(self):
        instance = bundled("two-point")
        texts = []
        for _ in range(2):
            outcomes = [run_task(i, instance, instance.seed) for i in range(len(instance.tasks))]
            texts.append(dumps(build_report(instance.name, instance.seed, outcomes)))
        assert texts[0] == texts[1]

    def test_shape(self):
        instance = bundled("two-point")
        outcomes = [run_task(i, instance, instance.seed) for i in range(len(instance.tasks))]
        report = json.loads(dumps(build_report(instance.name, instance.seed, outcomes, [0.5, 0.25])))
        assert report["instance"] == "two-point"
        assert report["passed"]
        assert [t["task"] for t in report["tasks"]] == ["conjugate", "biconjugate"]
        assert report["tasks"][0]["seconds"] == 0.5

    def test_rationals_are_strings(self):
        instance = bundled("not-closed")
        report = build_report(instance.name, instance.seed, [run_task(0, instance, instance.seed)])
        values = report["tasks"][0]["result"]["directions"][0]["values"]
        assert values[0]["x"] == ["0/1"]


class TestProperties:
    def test_seeds_follow_registry_order(self):
        rng = SplitMix64(3)
        expected = {name: rng.next_u64() for name in PROPERTIES}
        assert all(property_seed(3, name) == value for name, value in expected.items())
        with pytest.raises(KeyError):
            property_seed(3, "no-such-property")

    def test_scaled_count(self):
        assert scaled_count(100, constants.FULL_ITERS) == 100
        assert scaled_count(1, 1) == 1

    @pytest.mark.parametrize("name", list(PROPERTIES))
    def test_small_runs_pass(self, name):
        result = run_property(name, constants.DEFAULT_SEED, 1)
        assert result.passed, result.first_failure
        assert result.checked > 0
