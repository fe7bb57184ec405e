"""
Reading instance files.

An instance is a JSON document with named spaces, a cone, named matrices, named functions and a task
list. Every scalar is a rational string "p/q" (bare integers are accepted too). Errors carry the JSON
path of the offending block, or the line and column when the text is not JSON at all.
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

import shared.constants as constants
from logic.harness.properties import PROPERTIES
from logic.polyhedra.polyhedron import Constraint, Polyhedron
from logic.polyhedra.rational import Vector, format_rat, rat_matrix, rat_vector, to_rat
from logic.scalar_calculus.scalar_fn import ScalarFn
from logic.setvalued_calculus.set_fn import SetFn
from logic.upper_sets.cone import Cone
from logic.upper_sets.upper_set import UpperSet
from shared.errors import ContractViolation, InstanceParseError

logger = logging.getLogger(__name__)

AUTO = "auto"
SPACES = ("x", "y")
FUNCTION_KINDS = ("set", "shifted-cone", "constant", "scalar")


@dataclass(frozen=True)
class Task:
    kind: str
    params: Dict[str, object]
    location: str


@dataclass(frozen=True)
class Instance:
    name: str
    seed: int
    dims: Dict[str, int]
    cone: Cone
    matrices: Dict[str, np.ndarray]
    functions: Dict[str, Union[SetFn, ScalarFn]]
    tasks: Tuple[Task, ...]
    spaces: Dict[str, str] = field(default_factory=dict)


def _fail(location: str, message: str):
    raise InstanceParseError(location, message)


def _require(block, key: str, location: str):
    if not isinstance(block, dict):
        _fail(location, "expected an object")
    if key not in block:
        _fail(location, "missing key {!r}".format(key))
    return block[key]


def _rat(value, location: str):
    if isinstance(value, float):
        _fail(location, "floats are not exact, write the rational as a string \"p/q\"")
    try:
        return to_rat(value)
    except (TypeError, ValueError) as e:
        _fail(location, str(e))


def _int(value, location: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        _fail(location, "expected an integer >= {}".format(minimum))
    return value


def _vector(value, dim: int, location: str) -> Vector:
    if not isinstance(value, list):
        _fail(location, "expected a list of {} rationals".format(dim))
    if len(value) != dim:
        _fail(location, "expected {} entries, found {}".format(dim, len(value)))
    return tuple(_rat(v, "{}[{}]".format(location, i)) for i, v in enumerate(value))


def _matrix(value, rows: int, columns: int, location: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != rows:
        _fail(location, "expected {} rows".format(rows))
    return rat_matrix([_vector(row, columns, "{}[{}]".format(location, i)) for i, row in enumerate(value)],
                      columns=columns)


def _polyhedron(block, dim: int, location: str) -> Polyhedron:
    rows = _require(block, "rows", location)
    bounds = _require(block, "bounds", location)
    if not isinstance(rows, list) or not isinstance(bounds, list) or len(rows) != len(bounds):
        _fail(location, "rows and bounds must be lists of the same length")
    strict = block.get("strict", [False] * len(rows))
    if not isinstance(strict, list) or len(strict) != len(rows) or not all(isinstance(s, bool) for s in strict):
        _fail(location + ".strict", "expected one boolean per row")
    constraints = []
    for i, (row, bound) in enumerate(zip(rows, bounds)):
        constraints.append(Constraint(_vector(row, dim, "{}.rows[{}]".format(location, i)),
                                      _rat(bound, "{}.bounds[{}]".format(location, i)), strict[i]))
    return Polyhedron(dim, tuple(constraints))


def _polyhedra(value, dim: int, location: str) -> List[Polyhedron]:
    if not isinstance(value, list):
        _fail(location, "expected a list of pieces")
    return [_polyhedron(block, dim, "{}[{}]".format(location, i)) for i, block in enumerate(value)]


class _Reader:
    """
    Holds what has been parsed so far, so later blocks can refer to earlier ones by name
    """

    def __init__(self, document):
        if not isinstance(document, dict):
            _fail("$", "an instance is a JSON object")
        self.document = document
        self.dims: Dict[str, int] = {}
        self.cone: Optional[Cone] = None
        self.matrices: Dict[str, np.ndarray] = {}
        self.functions: Dict[str, Union[SetFn, ScalarFn]] = {}
        self.spaces: Dict[str, str] = {}

    def read_spaces(self):
        spaces = _require(self.document, "spaces", "$")
        for key in ("x", "y", "z"):
            default = self.dims.get("x") if key == "y" else None
            if key in spaces:
                self.dims[key] = _int(spaces[key], "$.spaces." + key, 1)
            elif default is not None:
                self.dims[key] = default
            else:
                _fail("$.spaces", "missing key {!r}".format(key))

    def read_cone(self):
        generators = _require(self.document, "cone", "$")
        if not isinstance(generators, list) or not generators:
            _fail("$.cone", "expected a nonempty list of generators")
        vectors = [_vector(g, self.dims["z"], "$.cone[{}]".format(i)) for i, g in enumerate(generators)]
        try:
            self.cone = Cone(self.dims["z"], tuple(vectors))
        except ContractViolation as e:
            _fail("$.cone", str(e))

    def read_matrices(self):
        matrices = self.document.get("matrices", {})
        if not isinstance(matrices, dict):
            _fail("$.matrices", "expected an object of named matrices")
        for name, rows in matrices.items():
            location = "$.matrices." + name
            if not isinstance(rows, list) or not rows or not isinstance(rows[0], list):
                _fail(location, "expected a nonempty list of rows")
            self.matrices[name] = _matrix(rows, len(rows), len(rows[0]), location)

    def matrix(self, reference, rows: int, columns: int, location: str) -> np.ndarray:
        if isinstance(reference, str):
            if reference not in self.matrices:
                _fail(location, "unknown matrix {!r}".format(reference))
            matrix = self.matrices[reference]
            if matrix.shape != (rows, columns):
                _fail(location, "matrix {!r} is {}x{}, expected {}x{}".format(reference, *matrix.shape, rows, columns))
            return matrix
        return _matrix(reference, rows, columns, location)

    def read_upper_set(self, block, location: str) -> UpperSet:
        m = self.dims["z"]
        if isinstance(block, dict) and "translate" in block:
            return UpperSet.translate_cone(_vector(block["translate"], m, location + ".translate"), self.cone)
        if isinstance(block, dict) and "halfspace" in block:
            inner = block["halfspace"]
            z_star = _vector(_require(inner, "z_star", location + ".halfspace"), m, location + ".halfspace.z_star")
            level = _rat(inner.get("level", 0), location + ".halfspace.level")
            return UpperSet.halfspace(z_star, self.cone, level)
        return UpperSet(m, tuple(_polyhedra(_require(block, "pieces", location), m, location + ".pieces")), self.cone)

    def read_function(self, name: str, block) -> Union[SetFn, ScalarFn]:
        location = "$.functions." + name
        kind = _require(block, "kind", location)
        if kind not in FUNCTION_KINDS:
            _fail(location + ".kind", "unknown kind {!r}, expected one of {}".format(kind, ", ".join(FUNCTION_KINDS)))
        space = block.get("space", "x")
        if space not in SPACES:
            _fail(location + ".space", "expected 'x' or 'y'")
        self.spaces[name] = space
        n, m = self.dims[space], self.dims["z"]
        domain = None
        if "domain" in block:
            domain = _polyhedron(block["domain"], n, location + ".domain")
        if kind == "scalar":
            pieces = _polyhedra(block.get("pieces", []), n + 1, location + ".pieces")
            region = _polyhedra(block.get("minus_inf_region", []), n, location + ".minus_inf_region")
            return ScalarFn(n, tuple(pieces), tuple(region)).normalized()
        if kind == "set":
            pieces = _polyhedra(block.get("pieces", []), n + m, location + ".pieces")
            region = _polyhedra(block.get("full_region", []), n, location + ".full_region")
            return SetFn(n, self.cone, tuple(pieces), tuple(region))
        if kind == "shifted-cone":
            matrix = self.matrix(_require(block, "T", location), m, n, location + ".T")
            offset = _vector(block["offset"], m, location + ".offset") if "offset" in block else None
            return SetFn.shifted_cone(matrix, self.cone, offset, domain)
        value = self.read_upper_set(_require(block, "value", location), location + ".value")
        return SetFn.constant(n, value, domain)

    def read_functions(self):
        functions = _require(self.document, "functions", "$")
        if not isinstance(functions, dict):
            _fail("$.functions", "expected an object of named functions")
        for name, block in functions.items():
            try:
                self.functions[name] = self.read_function(name, block)
            except ContractViolation as e:
                _fail("$.functions." + name, str(e))

    def function(self, params, key: str, location: str):
        name = _require(params, key, location)
        if name not in self.functions:
            _fail("{}.{}".format(location, key), "unknown function {!r}".format(name))
        return self.functions[name]

    def dual_pairs(self, value, x_dim: int, location: str, allow_zero: bool = True):
        if value == AUTO:
            return AUTO
        if not isinstance(value, list):
            _fail(location, "expected \"auto\" or a list of {x_star, z_star} pairs")
        pairs = []
        for i, pair in enumerate(value):
            here = "{}[{}]".format(location, i)
            x_star = _vector(_require(pair, "x_star", here), x_dim, here + ".x_star")
            z_star = _vector(_require(pair, "z_star", here), self.dims["z"], here + ".z_star")
            if not self.cone.in_dual(z_star):
                _fail(here + ".z_star", "not in the dual cone")
            if not allow_zero and not any(z_star):
                _fail(here + ".z_star", "z* must be nonzero here")
            pairs.append((x_star, z_star))
        return pairs

    def zstar_list(self, value, location: str, allow_zero: bool = True):
        if value == AUTO:
            return AUTO
        if not isinstance(value, list):
            _fail(location, "expected \"auto\" or a list of vectors")
        vectors = []
        for i, v in enumerate(value):
            z_star = _vector(v, self.dims["z"], "{}[{}]".format(location, i))
            if not self.cone.in_dual(z_star):
                _fail("{}[{}]".format(location, i), "not in the dual cone")
            if not allow_zero and not any(z_star):
                _fail("{}[{}]".format(location, i), "z* must be nonzero here")
            vectors.append(z_star)
        return vectors

    def read_task(self, index: int, block) -> Task:
        location = "$.tasks[{}]".format(index)
        kind = _require(block, "task", location)
        if kind not in constants.TASK_NAMES:
            _fail(location + ".task", "unknown task {!r}".format(kind))
        params: Dict[str, object] = {}
        if kind == "properties":
            params["iters"] = _int(block.get("iters", constants.DEFAULT_ITERS), location + ".iters", 1)
            only = block.get("only")
            if only is not None and (not isinstance(only, list) or not all(isinstance(s, str) for s in only)):
                _fail(location + ".only", "expected a list of property names")
            unknown = [name for name in only or () if name not in PROPERTIES]
            if unknown:
                _fail(location + ".only", "unknown properties {}".format(", ".join(unknown)))
            params["only"] = only
            return Task(kind, params, location)
        if kind in ("chain", "fenchel-rockafellar"):
            g = self.function(block, "g", location)
            f = self.function(block, "f", location)
            if isinstance(g, SetFn) != isinstance(f, SetFn):
                _fail(location, "g and f must both be set-valued or both scalar")
            if self.spaces[block["g"]] != "x" or self.spaces[block["f"]] != "y":
                _fail(location, "g lives on X and f on Y")
            n, k = self.dims["x"], self.dims["y"]
            params.update(g=block["g"], f=block["f"], T=self.matrix(_require(block, "T", location), k, n, location + ".T"))
            if kind == "chain":
                params["S"] = self.matrix(_require(block, "S", location), n, k, location + ".S")
                if isinstance(g, SetFn):
                    params["duals"] = self.dual_pairs(block.get("duals", AUTO), n, location + ".duals",
                                                      allow_zero=False)
                else:
                    duals = block.get("duals", AUTO)
                    if duals != AUTO and not isinstance(duals, list):
                        _fail(location + ".duals", "expected \"auto\" or a list of x* vectors")
                    params["duals"] = AUTO if duals == AUTO else [
                        _vector(d, n, "{}.duals[{}]".format(location, i)) for i, d in enumerate(duals)]
            else:
                params["zstars"] = self.zstar_list(block.get("zstars", AUTO), location + ".zstars", allow_zero=False)
                params["ystar_budget"] = _int(block.get("ystar_budget", constants.DEFAULT_YSTAR_BUDGET),
                                              location + ".ystar_budget", 1)
            return Task(kind, params, location)
        g = self.function(block, "function", location)
        if not isinstance(g, SetFn):
            _fail(location + ".function", "task {!r} needs a set-valued function".format(kind))
        params["function"] = block["function"]
        if kind == "scalarize":
            params["zstars"] = self.zstar_list(block.get("zstars", AUTO), location + ".zstars")
            points = block.get("points", AUTO)
            if points != AUTO and not isinstance(points, list):
                _fail(location + ".points", "expected \"auto\" or a list of points")
            params["points"] = AUTO if points == AUTO else [
                _vector(p, g.x_dim, "{}.points[{}]".format(location, i)) for i, p in enumerate(points)]
        elif kind == "conjugate":
            params["duals"] = self.dual_pairs(block.get("duals", AUTO), g.x_dim, location + ".duals")
        else:
            params["directions"] = self.dual_pairs(block.get("directions", AUTO), g.x_dim, location + ".directions")
        return Task(kind, params, location)

    def read(self) -> Instance:
        name = self.document.get("name", "unnamed")
        if not isinstance(name, str):
            _fail("$.name", "expected a string")
        seed = _int(self.document.get("seed", constants.DEFAULT_SEED), "$.seed")
        self.read_spaces()
        self.read_cone()
        self.read_matrices()
        self.read_functions()
        tasks = _require(self.document, "tasks", "$")
        if not isinstance(tasks, list):
            _fail("$.tasks", "expected a list")
        parsed = tuple(self.read_task(i, block) for i, block in enumerate(tasks))
        logger.info("instance %s: %d functions, %d tasks", name, len(self.functions), len(parsed))
        return Instance(name, seed, dict(self.dims), self.cone, dict(self.matrices), dict(self.functions), parsed,
                        dict(self.spaces))


def parse_instance(text: str) -> Instance:
    """
    Parse an instance document

    :param text: the JSON text
    :return: the parsed instance
    :rtype: Instance
    :raises InstanceParseError: with the JSON path, or line and column, of the first problem
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError("line {}, column {}".format(e.lineno, e.colno), e.msg) from e
    return _Reader(document).read()


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as handle:
        return parse_instance(handle.read())


def polyhedron_json(p: Polyhedron) -> Dict[str, list]:
    return {
        "rows": [[format_rat(a) for a in c.normal] for c in p.constraints],
        "bounds": [format_rat(c.bound) for c in p.constraints],
        "strict": [c.strict for c in p.constraints],
    }


def _vector_json(v: Vector) -> List[str]:
    return [format_rat(a) for a in v]


def _function_json(fn: Union[SetFn, ScalarFn], space: str) -> dict:
    if isinstance(fn, ScalarFn):
        return {"kind": "scalar", "space": space, "pieces": [polyhedron_json(p) for p in fn.pieces],
                "minus_inf_region": [polyhedron_json(p) for p in fn.minus_inf_region]}
    return {"kind": "set", "space": space, "pieces": [polyhedron_json(p) for p in fn.pieces],
            "full_region": [polyhedron_json(p) for p in fn.full_region]}


def _param_json(value):
    if value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, np.ndarray):
        return [_vector_json(row) for row in value]
    if value and isinstance(value[0], tuple) and isinstance(value[0][0], tuple):
        return [{"x_star": _vector_json(x_star), "z_star": _vector_json(z_star)} for x_star, z_star in value]
    if all(isinstance(v, str) for v in value):
        return list(value)
    return [_vector_json(v) for v in value]


def dump_instance(instance: Instance) -> dict:
    """
    The instance as a document ``parse_instance`` reads back

    Functions come out in their graph form (kind "set" or "scalar") whatever kind they were written
    with, and matrices are written inline in the tasks.
    """
    tasks = []
    for task in instance.tasks:
        block = {"task": task.kind}
        block.update({key: _param_json(value) for key, value in task.params.items() if value is not None})
        tasks.append(block)
    return {
        "name": instance.name,
        "seed": instance.seed,
        "spaces": dict(instance.dims),
        "cone": [_vector_json(rat_vector(g)) for g in instance.cone.generators],
        "matrices": {name: _param_json(m) for name, m in instance.matrices.items()},
        "functions": {name: _function_json(fn, instance.spaces.get(name, "x"))
                      for name, fn in instance.functions.items()},
        "tasks": tasks,
    }


def dumps_instance(instance: Instance) -> str:
    return json.dumps(dump_instance(instance), indent=constants.REPORT_INDENT, sort_keys=True)
