"""
JSON codecs for instance files and reports.

One file holds one instance. Every file carries a ``kind`` and, except for
explicit lattices, a ``ring``. Unknown keys are rejected.
"""

import hashlib
import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from . import __version__
from .adjugates import CubeAdjugate
from .bue import BeReport
from .complexes import ChainComplex
from .cubes import Cube, CubeIndex, parse_subset_key, subset_key
from .doublecubes import DoubleCube, grade_key, lowered, parse_grade_key
from .exceptions import CubeAlgebraError, SchemaError
from .lattices import ElementFamily, SubobjectFamily, TableLattice, subobject_family
from .linalg import Matrix
from .modules import FPModule, ModuleMorphism, Subobject
from .rings import RingDescriptor

logger = logging.getLogger(__name__)

KINDS = ("cube", "double", "complex", "lattice", "family", "adjugate-bundle", "be-complex")

# Allowed top-level keys per kind
INSTANCE_KEYS = {
    "cube": {"ring", "kind", "index", "vertices", "boundaries"},
    "double": {"ring", "kind", "index", "vertices", "boundaries"},
    "complex": {"ring", "kind", "lo", "hi", "modules", "boundaries"},
    "be-complex": {"ring", "kind", "lo", "hi", "modules", "boundaries"},
    "lattice": {"kind", "elements", "leq"},
    "family": {"ring", "kind", "lattice", "ambient", "members", "y", "upper"},
    "adjugate-bundle": {"ring", "kind", "cube", "adjugate"},
}


def _require(data: Mapping[str, Any], key: str) -> Any:
    if key not in data:
        raise SchemaError(f"{key} is required")
    return data[key]


def _check_keys(data: Mapping[str, Any], allowed: set, where: str) -> None:
    if not isinstance(data, Mapping):
        raise SchemaError(f"Invalid {where}: an object is required")
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise SchemaError(f"Unknown keys in {where}: {', '.join(unknown)}")


# Matrices and modules


def matrix_to_dict(a: Matrix) -> Dict[str, Any]:
    return {"rows": a.rows, "cols": a.cols, "entries": [a.ring.format(e) for e in a.entries]}


def matrix_from_dict(ring: RingDescriptor, data: Mapping[str, Any]) -> Matrix:
    _check_keys(data, {"rows", "cols", "entries"}, "matrix")
    rows, cols = _require(data, "rows"), _require(data, "cols")
    entries = _require(data, "entries")
    if not isinstance(entries, list):
        raise SchemaError("Invalid matrix: entries must be a list")
    return Matrix(ring, int(rows), int(cols), tuple(ring.element(e) for e in entries))


def module_to_dict(m: FPModule) -> Dict[str, Any]:
    return {"gens": m.gens, "relations": matrix_to_dict(m.relations)}


def module_from_dict(ring: RingDescriptor, data: Mapping[str, Any]) -> FPModule:
    _check_keys(data, {"gens", "relations"}, "module")
    gens = int(_require(data, "gens"))
    if "relations" in data:
        return FPModule(ring, gens, matrix_from_dict(ring, data["relations"]))
    return FPModule.free(ring, gens)


def subobject_to_dict(sub: Subobject) -> Dict[str, Any]:
    return {"ambient": module_to_dict(sub.ambient), "generators": matrix_to_dict(sub.generators)}


def subobject_from_dict(ring: RingDescriptor, data: Mapping[str, Any],
                        ambient: Optional[FPModule] = None) -> Subobject:
    _check_keys(data, {"ambient", "generators"}, "subobject")
    if ambient is None:
        ambient = module_from_dict(ring, _require(data, "ambient"))
    return Subobject.of(ambient, matrix_from_dict(ring, _require(data, "generators")))


# Complexes


def complex_to_dict(c: ChainComplex, kind: str = "complex") -> Dict[str, Any]:
    return {
        "ring": str(c.ring),
        "kind": kind,
        "lo": c.lo,
        "hi": c.hi,
        "modules": [module_to_dict(m) for m in c.modules],
        "boundaries": [matrix_to_dict(d.matrix) for d in c.boundaries],
    }


def complex_from_dict(data: Mapping[str, Any],
                      ring_override: Optional[RingDescriptor] = None) -> ChainComplex:
    ring = _ring_of(data, ring_override)
    lo = int(data.get("lo", 0))
    modules = [module_from_dict(ring, m) for m in _require(data, "modules")]
    if "hi" in data and int(data["hi"]) != lo + len(modules) - 1:
        raise SchemaError("Invalid complex: hi does not match the module count")
    matrices = [matrix_from_dict(ring, d) for d in _require(data, "boundaries")]
    if len(matrices) != len(modules) - 1:
        raise SchemaError(f"{len(modules)} modules need {len(modules) - 1} boundaries")
    boundaries = tuple(ModuleMorphism(modules[i + 1], modules[i], m) for i, m in enumerate(matrices))
    return ChainComplex(ring, lo, tuple(modules), boundaries)


# Cubes


def cube_to_dict(x: Cube) -> Dict[str, Any]:
    return {
        "ring": str(x.ring),
        "kind": "cube",
        "index": list(x.labels),
        "vertices": {subset_key(s): module_to_dict(x.vertex(s)) for s in x.index.subsets()},
        "boundaries": {f"{subset_key(s)}|{t}": matrix_to_dict(d.matrix)
                       for s, t, d in x.arrow_items()},
    }


def _split_arrow_key(key: str) -> Tuple[str, str]:
    if key.count("|") != 1:
        raise SchemaError(f"Invalid boundary key: {key!r}")
    left, label = key.split("|")
    return left, label


def cube_from_dict(data: Mapping[str, Any],
                   ring_override: Optional[RingDescriptor] = None) -> Cube:
    ring = _ring_of(data, ring_override)
    index = CubeIndex(tuple(_require(data, "index")))
    vertices = {parse_subset_key(k): module_from_dict(ring, v)
                for k, v in _require(data, "vertices").items()}
    arrows = {}
    for key, value in _require(data, "boundaries").items():
        left, label = _split_arrow_key(key)
        subset = parse_subset_key(left)
        if label not in subset or subset not in vertices:
            raise SchemaError(f"Invalid boundary key: {key!r}")
        target = vertices.get(subset - {label})
        if target is None:
            raise SchemaError(f"Missing vertex for boundary {key!r}")
        arrows[(subset, label)] = ModuleMorphism(vertices[subset], target,
                                                 matrix_from_dict(ring, value))
    extra = set(vertices) - set(index.subsets())
    if extra:
        raise SchemaError(f"Vertices outside the index: {sorted(subset_key(s) for s in extra)}")
    return Cube(index, vertices, arrows)


def double_to_dict(x: DoubleCube) -> Dict[str, Any]:
    index = x.index
    return {
        "ring": str(x.ring),
        "kind": "double",
        "index": list(index.labels),
        "vertices": {grade_key(index, g): module_to_dict(m) for g, m in sorted(x.vertices.items())},
        "boundaries": {f"{grade_key(index, g)}|{t}": matrix_to_dict(d.matrix)
                       for (g, t), d in sorted(x.boundaries.items())},
    }


def double_from_dict(data: Mapping[str, Any],
                     ring_override: Optional[RingDescriptor] = None) -> DoubleCube:
    ring = _ring_of(data, ring_override)
    index = CubeIndex(tuple(_require(data, "index")))
    vertices = {parse_grade_key(index, k): module_from_dict(ring, v)
                for k, v in _require(data, "vertices").items()}
    boundaries = {}
    for key, value in _require(data, "boundaries").items():
        left, label = _split_arrow_key(key)
        grade = parse_grade_key(index, left)
        if label not in index.labels or grade not in vertices:
            raise SchemaError(f"Invalid boundary key: {key!r}")
        target = vertices.get(lowered(index, grade, label))
        if target is None:
            raise SchemaError(f"Missing vertex for boundary {key!r}")
        boundaries[(grade, label)] = ModuleMorphism(vertices[grade], target,
                                                    matrix_from_dict(ring, value))
    return DoubleCube(index, vertices, boundaries)


# Adjugates


def adjugate_to_dict(adj: CubeAdjugate, ring: RingDescriptor) -> Dict[str, Any]:
    return {
        "scalars": {s: ring.format(a) for s, a in sorted(adj.scalars.items())},
        "stars": {f"{subset_key(s)}|{t}": matrix_to_dict(d.matrix)
                  for (s, t), d in sorted(adj.stars.items(), key=lambda i: (subset_key(i[0][0]), i[0][1]))},
    }


def adjugate_from_dict(x: Cube, data: Mapping[str, Any]) -> CubeAdjugate:
    _check_keys(data, {"scalars", "stars"}, "adjugate")
    ring = x.ring
    scalars = {s: ring.element(a) for s, a in _require(data, "scalars").items()}
    stars = {}
    for key, value in _require(data, "stars").items():
        left, label = _split_arrow_key(key)
        subset = parse_subset_key(left)
        if label not in subset or subset not in x.vertices:
            raise SchemaError(f"Invalid star key: {key!r}")
        stars[(subset, label)] = ModuleMorphism(x.vertex(subset - {label}), x.vertex(subset),
                                                matrix_from_dict(ring, value))
    return CubeAdjugate(scalars, stars)


def bundle_to_dict(x: Cube, adj: CubeAdjugate) -> Dict[str, Any]:
    cube = cube_to_dict(x)
    cube.pop("ring")
    cube.pop("kind")
    return {"ring": str(x.ring), "kind": "adjugate-bundle", "cube": cube,
            "adjugate": adjugate_to_dict(adj, x.ring)}


def bundle_from_dict(data: Mapping[str, Any],
                     ring_override: Optional[RingDescriptor] = None) -> Tuple[Cube, CubeAdjugate]:
    ring = _ring_of(data, ring_override)
    cube_data = dict(_require(data, "cube"))
    _check_keys(cube_data, {"index", "vertices", "boundaries"}, "bundle cube")
    cube_data.update({"ring": str(ring), "kind": "cube"})
    x = cube_from_dict(cube_data)
    return x, adjugate_from_dict(x, _require(data, "adjugate"))


# Lattices and families


def lattice_to_dict(lattice: TableLattice) -> Dict[str, Any]:
    return {"kind": "lattice", "elements": list(lattice.names), "leq": lattice.order_table()}


def lattice_from_dict(data: Mapping[str, Any]) -> TableLattice:
    _check_keys(data, {"kind", "elements", "leq"}, "lattice")
    names = [str(n) for n in _require(data, "elements")]
    leq = _require(data, "leq")
    return TableLattice(names, [[bool(v) for v in row] for row in leq])


@dataclass(frozen=True)
class FamilyInstance:
    """A family with its optional element ``y`` and upper family ``a``."""

    family: ElementFamily
    y: Optional[int] = None
    upper: Optional[ElementFamily] = None
    subobjects: Optional[SubobjectFamily] = None


def family_from_dict(data: Mapping[str, Any],
                     ring_override: Optional[RingDescriptor] = None) -> FamilyInstance:
    """
    Parse a family over an explicit lattice (members are element names) or
    over the subobject lattice of ``ambient`` (members are generator matrices).
    """
    members = _require(data, "members")
    if "lattice" in data:
        lattice = lattice_from_dict({"kind": "lattice", **data["lattice"]})
        family = ElementFamily(lattice, {s: lattice.index(n) for s, n in members.items()})
        y = lattice.index(data["y"]) if "y" in data else None
        upper = None
        if "upper" in data:
            upper = ElementFamily(lattice, {s: lattice.index(n) for s, n in data["upper"].items()})
        return FamilyInstance(family, y, upper)
    ring = _ring_of(data, ring_override)
    ambient = module_from_dict(ring, _require(data, "ambient"))

    def sub(value: Mapping[str, Any]) -> Subobject:
        return Subobject.of(ambient, matrix_from_dict(ring, value))

    parsed = {s: sub(m) for s, m in members.items()}
    extras: List[Subobject] = []
    if "y" in data:
        extras.append(sub(data["y"]))
    upper_subs = {s: sub(m) for s, m in data.get("upper", {}).items()}
    extras.extend(upper_subs[s] for s in sorted(upper_subs))
    built = subobject_family(ambient, parsed, extras)
    lattice = built.lattice
    y_index = built.extras[0] if "y" in data else None
    upper_family = None
    if upper_subs:
        upper_family = ElementFamily(
            lattice.table, {s: lattice.position(m) for s, m in upper_subs.items()})
    return FamilyInstance(built.family, y_index, upper_family, built)


# Instances


Instance = Union[Cube, DoubleCube, ChainComplex, TableLattice, FamilyInstance,
                 Tuple[Cube, CubeAdjugate]]


def _ring_of(data: Mapping[str, Any], override: Optional[RingDescriptor]) -> RingDescriptor:
    if override is not None:
        return override
    return RingDescriptor.parse(str(_require(data, "ring")))


def parse_instance(data: Mapping[str, Any],
                   ring_override: Optional[RingDescriptor] = None) -> Tuple[str, Instance]:
    """
    Validate and decode an instance object.

    Raises:
        SchemaError: On unknown kinds, unknown keys or malformed payloads
    """
    if not isinstance(data, Mapping):
        raise SchemaError("Invalid instance: a JSON object is required")
    kind = _require(data, "kind")
    if kind not in INSTANCE_KEYS:
        raise SchemaError(f"Invalid kind: {kind!r}")
    _check_keys(data, INSTANCE_KEYS[kind], f"{kind} instance")
    try:
        if kind == "cube":
            return kind, cube_from_dict(data, ring_override)
        if kind == "double":
            return kind, double_from_dict(data, ring_override)
        if kind in ("complex", "be-complex"):
            return kind, complex_from_dict(data, ring_override)
        if kind == "lattice":
            return kind, lattice_from_dict(data)
        if kind == "family":
            return kind, family_from_dict(data, ring_override)
        return kind, bundle_from_dict(data, ring_override)
    except SchemaError:
        raise
    except (CubeAlgebraError, KeyError, TypeError, ValueError, AttributeError) as e:
        raise SchemaError(f"Invalid {kind} instance: {e}")


def load_instance(path: str,
                  ring_override: Optional[RingDescriptor] = None) -> Tuple[str, Instance, str]:
    """Read, digest and decode an instance file; returns ``(kind, value, sha256)``."""
    try:
        with open(path, "rb") as handle:
            raw = handle.read()
    except OSError as e:
        raise SchemaError(f"Cannot read {path}: {e}")
    digest = hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise SchemaError(f"Invalid JSON in {path}: {e}")
    kind, value = parse_instance(data, ring_override)
    logger.debug("Loaded %s instance from %s", kind, path)
    return kind, value, digest


def dumps(data: Any) -> str:
    """Deterministic JSON text: sorted keys, UTF-8, two-space indent."""
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


# Reports


def be_report_to_dict(report: BeReport) -> Dict[str, Any]:
    return {
        "r": list(report.r),
        "fitting": [ideal.describe() for ideal in report.fitting],
        "fitting_canonical": [str(ideal) for ideal in report.fitting],
        "grades": [str(g) for g in report.grades],
        "spherical": report.spherical,
        "criterion": report.criterion,
        "equivalent": report.equivalent,
        "negative_rank": report.negative_rank,
        "witness": report.witness,
    }


def make_report(check: str, result: bool, details: Mapping[str, Any],
                digest: Optional[str] = None, witness: Any = None) -> Dict[str, Any]:
    return {
        "check": check,
        "result": result,
        "witness": witness,
        "details": dict(details),
        "version": __version__,
        "input_digest": digest,
    }
