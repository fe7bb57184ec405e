"""
Report assembly. Everything a task returns is turned into plain JSON here: rationals become "p/q"
strings, extended reals "-inf"/"+inf"/"p/q", sets and functions their exact H-representations.
"""
import dataclasses
import json
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Sequence

import numpy as np

import shared.constants as constants
from logic.conaffine.conaffine import ConAffine
from logic.extended_reals.ext_real import ExtReal
from logic.harness.instance import polyhedron_json
from logic.harness.tasks import TaskOutcome
from logic.polyhedra.polyhedron import Polyhedron
from logic.polyhedra.rational import format_rat
from logic.scalar_calculus.scalar_fn import ScalarFn
from logic.setvalued_calculus.set_fn import SetFn
from logic.upper_sets.cone import Cone
from logic.upper_sets.upper_set import UpperSet


def to_json(value):
    """
    Plain JSON form of any value a task can return
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, ExtReal):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Polyhedron):
        return polyhedron_json(value)
    if isinstance(value, UpperSet):
        return {"pieces": [polyhedron_json(p) for p in value.pieces]}
    if isinstance(value, SetFn):
        return {"x_dim": value.x_dim, "pieces": [polyhedron_json(p) for p in value.pieces],
                "full_region": [polyhedron_json(p) for p in value.full_region]}
    if isinstance(value, ScalarFn):
        return {"domain_dim": value.domain_dim, "pieces": [polyhedron_json(p) for p in value.pieces],
                "minus_inf_region": [polyhedron_json(p) for p in value.minus_inf_region]}
    if isinstance(value, ConAffine):
        return {"x_star": to_json(value.x_star), "r": to_json(value.r), "z_star": to_json(value.z_star)}
    if isinstance(value, Cone):
        return [to_json(g) for g in value.generators]
    if isinstance(value, np.ndarray):
        return [[to_json(Fraction(a)) for a in row] for row in value]
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    if dataclasses.is_dataclass(value):
        out = {f.name: to_json(getattr(value, f.name)) for f in dataclasses.fields(value)}
        if hasattr(type(value), "passed"):
            out["passed"] = value.passed
        return out
    raise TypeError("no JSON form for {}".format(type(value).__name__))


def build_report(instance_name: str, seed: int, outcomes: Sequence[TaskOutcome],
                 timings: Optional[Sequence[float]] = None) -> Dict[str, object]:
    """
    The report of one run, in task order

    :param instance_name: name from the instance file
    :param seed: the run seed
    :param outcomes: one outcome per executed task
    :param timings: wall-clock seconds per task, left out of the report when None
    """
    tasks = []
    for i, outcome in enumerate(outcomes):
        entry = {"task": outcome.task, "passed": outcome.passed, "result": to_json(outcome.result)}
        if outcome.failure is not None:
            entry["failure"] = to_json(outcome.failure)
        if timings is not None:
            entry["seconds"] = round(timings[i], 3)
        tasks.append(entry)
    return {"instance": instance_name, "seed": seed, "passed": all(o.passed for o in outcomes), "tasks": tasks}


def dumps(report: Dict[str, object]) -> str:
    return json.dumps(report, sort_keys=True, indent=constants.REPORT_INDENT, ensure_ascii=False) + "\n"


def write_report(report: Dict[str, object], path: str):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(dumps(report))
