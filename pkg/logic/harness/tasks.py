"""
The tasks an instance file can ask for. Each task returns a ``TaskOutcome`` whose ``result`` holds plain
values, sets and functions; turning them into JSON is left to the report.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional

from logic.duality_theorems.chain_rule import chain_rule_verify
from logic.duality_theorems.fenchel_rockafellar import fenchel_rockafellar
from logic.harness.instance import AUTO, Instance, Task
from logic.harness.properties import PROPERTIES, run_property
from logic.harness.sampling import SplitMix64
from logic.polyhedra.rational import is_zero, zero_vector
from logic.scalar_calculus.chain_rule import chain_rule_scalar, scalar_fenchel_rockafellar
from logic.setvalued_calculus.conjugate import SetConjugate, biconjugate, conjugate_by_definition
from logic.setvalued_calculus.set_fn import (SetFn, cl_co_fn, facet_directions, graph_witness, same_set_fn,
                                             sample_points, scalarize, setify)
from logic.upper_sets.upper_set import UpperSet, includes, minkowski_add, set_equal, uncovered

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TaskOutcome:
    task: str
    passed: bool
    result: Dict[str, object]
    failure: Optional[Dict[str, object]] = None


def task_seed(seed: int, index: int) -> int:
    """
    Seed of the index-th task, so tasks replay the same stream whichever of them run
    """
    rng = SplitMix64(seed)
    value = rng.next_u64()
    for _ in range(index):
        value = rng.next_u64()
    return value


def _nonzero_dual_generators(g: SetFn):
    return [d for d in g.cone.dual_generators if not is_zero(d)]


def run_scalarize(instance: Instance, task: Task, seed: int) -> TaskOutcome:
    g = instance.functions[task.params["function"]]
    zstars = task.params["zstars"]
    if zstars == AUTO:
        zstars = [zero_vector(g.z_dim)] + _nonzero_dual_generators(g)
    points = task.params["points"]
    if points == AUTO:
        points = sample_points(g) + [zero_vector(g.x_dim)]
    directions, failure = [], None
    for z_star in zstars:
        phi = scalarize(g, z_star)
        round_trip = setify(phi, z_star, g.cone)
        h = UpperSet.halfspace(z_star, g.cone)
        values = []
        for x in points:
            expected = minkowski_add(g.evaluate(x), h).closure()
            got = round_trip.evaluate(x)
            same = set_equal(got, expected)
            if not same and failure is None:
                failure = {"z_star": z_star, "x": x, "setified": got, "closure": expected,
                           "gap_point": uncovered(got, expected) or uncovered(expected, got)}
            values.append({"x": x, "value": phi.evaluate(x), "round_trip": same})
        directions.append({"z_star": z_star, "scalarization": phi, "values": values})
    return TaskOutcome(task.kind, failure is None, {"function": task.params["function"], "directions": directions},
                       failure)


def run_conjugate(instance: Instance, task: Task, seed: int) -> TaskOutcome:
    g = instance.functions[task.params["function"]]
    duals = task.params["duals"]
    if duals == AUTO:
        duals = facet_directions(g)
    conj, hull_conj = SetConjugate(g), SetConjugate(cl_co_fn(g))
    samples = sample_points(g)
    entries, failure = [], None
    for x_star, z_star in duals:
        value = conj(x_star, z_star)
        by_definition = includes(conjugate_by_definition(g, x_star, z_star, samples), value)
        hull_invariant = set_equal(hull_conj(x_star, z_star), value)
        if not (by_definition and hull_invariant) and failure is None:
            failure = {"x_star": x_star, "z_star": z_star, "value": value, "contains_by_definition": by_definition,
                       "hull_invariant": hull_invariant}
        entries.append({"x_star": x_star, "z_star": z_star, "value": value,
                        "contains_by_definition": by_definition, "hull_invariant": hull_invariant})
    return TaskOutcome(task.kind, failure is None, {"function": task.params["function"], "values": entries}, failure)


def run_biconjugate(instance: Instance, task: Task, seed: int) -> TaskOutcome:
    g = instance.functions[task.params["function"]]
    directions = task.params["directions"]
    if directions == AUTO:
        directions = facet_directions(g)
    bi, hull = biconjugate(g, directions), cl_co_fn(g)
    equal = same_set_fn(bi, hull)
    result = {"function": task.params["function"], "directions": directions, "biconjugate": bi,
              "closed_convex_hull": hull, "equals_cl_co": equal, "equals_input": same_set_fn(bi, g)}
    failure = None
    if not equal:
        failure = {"graph_point": graph_witness(bi, hull)}
    return TaskOutcome(task.kind, equal, result, failure)


def run_chain(instance: Instance, task: Task, seed: int) -> TaskOutcome:
    p = task.params
    g, f = instance.functions[p["g"]], instance.functions[p["f"]]
    if not isinstance(g, SetFn):
        duals = None if p["duals"] == AUTO else p["duals"]
        report = chain_rule_scalar(g, f, p["T"], p["S"], duals)
        failure = next(({"part": part.part, "verdict": part.verdict, "witnesses": part.witnesses}
                        for part in report.parts if not part.passed), None)
        return TaskOutcome(task.kind, report.passed, {"g": p["g"], "f": p["f"], "parts": report.parts}, failure)
    duals = p["duals"]
    if duals == AUTO:
        duals = [(x_star, z_star) for x_star, z_star in facet_directions(g) if not is_zero(z_star)]
    report = chain_rule_verify(g, f, p["T"], p["S"], duals, instance.name)
    failure = None
    first = report.first_failure()
    if first is not None:
        entry, part = first
        failure = {"x_star": entry.x_star, "z_star": entry.z_star, "part": part.part, "verdict": part.verdict,
                   "witnesses": part.witnesses}
    return TaskOutcome(task.kind, report.passed, {"g": p["g"], "f": p["f"], "entries": report.entries}, failure)


def run_fenchel_rockafellar(instance: Instance, task: Task, seed: int) -> TaskOutcome:
    p = task.params
    g, f = instance.functions[p["g"]], instance.functions[p["f"]]
    if not isinstance(g, SetFn):
        scalar = scalar_fenchel_rockafellar(g, f, p["T"])
        passed = scalar.weak_duality and (scalar.qualification is None or scalar.gap_free)
        result = {"g": p["g"], "f": p["f"], "primal": scalar.primal, "dual": scalar.dual, "y_star": scalar.y_star,
                  "qualification": scalar.qualification}
        return TaskOutcome(task.kind, passed, result, None if passed else dict(result))
    zstars = p["zstars"]
    if zstars == AUTO:
        zstars = _nonzero_dual_generators(g)
    report = fenchel_rockafellar(g, f, p["T"], zstars, p["ystar_budget"], seed, instance.name)
    failure = None
    for check in report.directions:
        if not check.passed:
            failure = {"z_star": check.z_star, "weak_duality": check.weak_duality, "achieved": check.achieved,
                       "y_star": check.y_star, "gap_point": check.gap_witness}
            break
    if failure is None and report.representation_verified is False:
        failure = {"representation_verified": False}
    result = {"g": p["g"], "f": p["f"], "p": report.p, "directions": report.directions,
              "representation_verified": report.representation_verified}
    return TaskOutcome(task.kind, report.passed, result, failure)


def run_properties(instance: Instance, task: Task, seed: int) -> TaskOutcome:
    names = task.params["only"] or list(PROPERTIES)
    results = [run_property(name, seed, task.params["iters"]) for name in names]
    failure = next(({"property": r.name, "seed": r.seed, "counterexample": r.first_failure}
                    for r in results if not r.passed), None)
    return TaskOutcome(task.kind, failure is None, {"properties": results}, failure)


RUNNERS = {
    "scalarize": run_scalarize,
    "conjugate": run_conjugate,
    "biconjugate": run_biconjugate,
    "chain": run_chain,
    "fenchel-rockafellar": run_fenchel_rockafellar,
    "properties": run_properties,
}


def run_task(index: int, instance: Instance, seed: int) -> TaskOutcome:
    """
    Run the index-th task of an instance; verification failures come back as outcomes, not exceptions

    :param index: position in ``instance.tasks``
    :param instance: the parsed instance
    :param seed: the run seed, from which this task's own seed is derived
    :rtype: TaskOutcome
    """
    task = instance.tasks[index]
    logger.info("task %d: %s", index, task.kind)
    outcome = RUNNERS[task.kind](instance, task, task_seed(seed, index))
    if not outcome.passed:
        logger.warning("task %d (%s) failed", index, task.kind)
    return outcome

