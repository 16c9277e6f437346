"""JSON encoding of cones, instances and results."""

import dataclasses
import json
import math
from enum import Enum
from fractions import Fraction

from .cones import (DualSum, HRep, Intersection, LinearSubspace, Orthant, Preimage,
                    Product, PsdEmbedded, SecondOrder, VRep)
from .errors import InvalidInstance
from .geometry import Subspace, point_from_json, point_to_json, policy_named, scalar_to_json


def _vecs(vs):
    return [[scalar_to_json(a) for a in v] for v in vs]


def _unvecs(vs):
    return [point_from_json(v) for v in vs]


def cone_to_json(K):
    if isinstance(K, HRep):
        return {"variant": "hrep", "dim": K.dim, "normals": _vecs(K.normals)}
    if isinstance(K, VRep):
        return {"variant": "vrep", "dim": K.dim, "generators": _vecs(K.generators)}
    if isinstance(K, SecondOrder):
        return {"variant": "soc", "dim": K.dim}
    if isinstance(K, PsdEmbedded):
        return {"variant": "psd", "order": K.order}
    if isinstance(K, LinearSubspace):
        return {"variant": "subspace", "dim": K.dim, "basis": _vecs(K.space.basis)}
    if isinstance(K, Orthant):
        return {"variant": "orthant", "dim": K.dim}
    if isinstance(K, Product):
        return {"variant": "product", "left": cone_to_json(K.left), "right": cone_to_json(K.right)}
    if isinstance(K, Intersection):
        return {"variant": "intersection", "parts": [cone_to_json(p) for p in K.parts]}
    if isinstance(K, DualSum):
        return {"variant": "dualsum", "parts": [cone_to_json(p) for p in K.parts],
                "closed": K.closed, "closure": K.closure}
    if isinstance(K, Preimage):
        return {"variant": "preimage", "matrix": _vecs(K.matrix), "target": cone_to_json(K.target)}
    raise InvalidInstance(f"{type(K).__name__} has no JSON form")


def cone_from_json(obj):
    try:
        kind = obj["variant"]
        if kind == "hrep":
            return HRep(int(obj["dim"]), tuple(_unvecs(obj.get("normals", []))))
        if kind == "vrep":
            return VRep(int(obj["dim"]), tuple(_unvecs(obj.get("generators", []))))
        if kind == "soc":
            return SecondOrder(int(obj["dim"]))
        if kind == "psd":
            return PsdEmbedded(int(obj["order"]))
        if kind == "subspace":
            n = int(obj["dim"])
            if "normals" in obj:
                return LinearSubspace.orthogonal_to(_unvecs(obj["normals"]), n)
            return LinearSubspace(Subspace(n, tuple(_unvecs(obj.get("basis", [])))))
        if kind == "orthant":
            return Orthant(int(obj["dim"]))
        if kind == "product":
            return Product(cone_from_json(obj["left"]), cone_from_json(obj["right"]))
        if kind == "intersection":
            return Intersection(tuple(cone_from_json(p) for p in obj["parts"]))
        if kind == "dualsum":
            return DualSum(tuple(cone_from_json(p) for p in obj["parts"]),
                           closed=obj.get("closed", "unknown"), closure=bool(obj.get("closure", False)))
        if kind == "preimage":
            mat = tuple(_unvecs(obj["matrix"]))
            return Preimage(mat, cone_from_json(obj["target"]), len(mat[0]))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidInstance(f"malformed cone: {exc}") from exc
    raise InvalidInstance(f"unknown cone variant {obj.get('variant')!r}")


def instance_to_json(inst):
    return {"id": inst.instance_id, "K1": cone_to_json(inst.K1), "K2": cone_to_json(inst.K2),
            "q": point_to_json(inst.q), "h": point_to_json(inst.h), "policy": inst.policy.kind}


def instance_from_json(obj, policy=None):
    from .solver import HyperplaneInstance
    try:
        policy = policy or policy_named(obj.get("policy"))
        return HyperplaneInstance(cone_from_json(obj["K1"]), cone_from_json(obj["K2"]),
                                  point_from_json(obj["q"]), point_from_json(obj["h"]),
                                  policy=policy, instance_id=str(obj.get("id", "")))
    except (KeyError, TypeError) as exc:
        raise InvalidInstance(f"malformed instance: {exc}") from exc


def symmetric_to_json(s):
    return {"Jp": cone_to_json(s.Jp), "Jd": cone_to_json(s.Jd), "A": _vecs(s.A.matrix),
            "b": [scalar_to_json(a) for a in s.b], "c": [scalar_to_json(a) for a in s.c]}


def symmetric_from_json(obj):
    from .reformulate import LinearMap, SymmetricInstance
    try:
        return SymmetricInstance(cone_from_json(obj["Jp"]), cone_from_json(obj["Jd"]),
                                 LinearMap(tuple(_unvecs(obj["A"]))),
                                 point_from_json(obj["b"]), point_from_json(obj["c"]))
    except (KeyError, TypeError) as exc:
        raise InvalidInstance(f"malformed symmetric instance: {exc}") from exc


def to_jsonable(v):
    """Recursively convert results (dataclasses, enums, Fractions) to JSON values."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, Enum):
        return v.value
    if isinstance(v, (int, Fraction, float)):
        return scalar_to_json(v)
    if dataclasses.is_dataclass(v) and not isinstance(v, type):
        return {f.name: to_jsonable(getattr(v, f.name)) for f in dataclasses.fields(v)
                if f.name not in ("profile",)}
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    if hasattr(v, "tolist"):
        return to_jsonable(v.tolist())
    return str(v)


def dumps(v):
    return json.dumps(to_jsonable(v), indent=2, sort_keys=False)


def value_from_json(v):
    if v in ("inf", "-inf"):
        return math.inf if v == "inf" else -math.inf
    if isinstance(v, str):
        return Fraction(v)
    return v
