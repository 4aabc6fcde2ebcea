"""JSON problem descriptions: schema, loading and object construction.

A config is a single JSON object::

    {
      "mode": "bpp" | "vi",
      "space": {"euclidean": {"dim": 2, "p": 2}}
             | {"finite": {"matrix": [[...]]}} | {"finite": {"matrix_file": "d.txt"}},
      "A": <set>, "B": <set>,          # bpp mode and pair commands
      "K": <set>,                      # vi mode
      "map": {"affine": {"M": [[...]], "t": [...]}, "k": 0.5}
           | {"table": [2, 3, null, ...]}
           | {"vi": {"operator": {"affine": {"M": ..., "b": ...}}, "lambda": "auto"}},
      "point": [...] | 3,              # project / check-pair
      "solver": {"epsilon": 1e-8, "epsilon_stop": 1e-8, "max_iterations": 100000,
                 "seed": 0, "samples": 200, "starts": [[...], ...] | {"random": 10}}
    }

Sets are ``{"kind": ..., ...}`` objects using the catalog in
:mod:`bestprox.sets` (box, ball, hyperplane, halfspace, affine, simplex,
points, intersection); in finite spaces a set is a list of indices. Infinite
box bounds are written ``null`` or ``"inf"`` / ``"-inf"``.
"""
from __future__ import annotations

import copy
import hashlib
import json
import os

import jsonschema
import numpy as np

from .errors import ConfigError
from .metric import ConvergenceCriterion, EuclideanSpace, FiniteSpace
from .sets import (AffineSet, Ball, Box, FinitePointSet, Halfspace, Hyperplane, Intersection,
                   Simplex)

_num = {"type": "number"}
_vec = {"type": "array", "items": _num, "minItems": 1}
_mat = {"type": "array", "items": _vec, "minItems": 1}
_bound = {"type": "array", "minItems": 1,
          "items": {"anyOf": [_num, {"type": "null"}, {"enum": ["inf", "-inf"]}]}}


def _kind(name, props, required):
    return {
        "type": "object",
        "properties": {"kind": {"const": name}, **props},
        "required": ["kind", *required],
        "additionalProperties": False,
    }


SET_SCHEMA = {
    "anyOf": [
        {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        _kind("box", {"lower": _bound, "upper": _bound}, ["lower", "upper"]),
        _kind("ball", {"center": _vec, "radius": {"type": "number", "minimum": 0}},
              ["center", "radius"]),
        _kind("hyperplane", {"normal": _vec, "offset": _num}, ["normal", "offset"]),
        _kind("halfspace", {"normal": _vec, "offset": _num}, ["normal", "offset"]),
        _kind("affine", {"matrix": _mat, "rhs": _vec}, ["matrix", "rhs"]),
        _kind("simplex", {"dim": {"type": "integer", "minimum": 1},
                          "scale": {"type": "number", "exclusiveMinimum": 0}}, ["dim"]),
        _kind("points", {"points": _mat}, ["points"]),
        _kind("intersection", {"sets": {"type": "array", "items": {"$ref": "#/$defs/set"},
                                        "minItems": 1}}, ["sets"]),
    ]
}

_affine_op = {
    "type": "object",
    "properties": {"M": _mat, "b": _vec, "L": {"type": "number", "exclusiveMinimum": 0},
                   "eta": {"type": "number"}},
    "required": ["M", "b"],
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {"set": SET_SCHEMA},
    "type": "object",
    "properties": {
        "mode": {"enum": ["bpp", "vi"]},
        "space": {
            "type": "object",
            "properties": {
                "euclidean": {
                    "type": "object",
                    "properties": {"dim": {"type": "integer", "minimum": 1},
                                   "p": {"anyOf": [{"type": "number", "minimum": 1},
                                                   {"const": "inf"}]}},
                    "required": ["dim"],
                    "additionalProperties": False,
                },
                "finite": {
                    "type": "object",
                    "properties": {"matrix": _mat, "matrix_file": {"type": "string"}},
                    "additionalProperties": False,
                    "oneOf": [{"required": ["matrix"]}, {"required": ["matrix_file"]}],
                },
            },
            "additionalProperties": False,
            "oneOf": [{"required": ["euclidean"]}, {"required": ["finite"]}],
        },
        "A": {"$ref": "#/$defs/set"},
        "B": {"$ref": "#/$defs/set"},
        "K": {"$ref": "#/$defs/set"},
        "map": {
            "type": "object",
            "properties": {
                "affine": {"type": "object",
                           "properties": {"M": _mat, "t": _vec},
                           "required": ["M", "t"], "additionalProperties": False},
                "table": {"type": "array",
                          "items": {"anyOf": [{"type": "integer", "minimum": 0},
                                              {"type": "null"}]}},
                "vi": {"type": "object",
                       "properties": {
                           "operator": {"type": "object",
                                        "properties": {"affine": _affine_op},
                                        "required": ["affine"],
                                        "additionalProperties": False},
                           "lambda": {"anyOf": [_num, {"const": "auto"}]},
                       },
                       "required": ["operator"], "additionalProperties": False},
                "k": {"type": "number"},
            },
            "additionalProperties": False,
            "oneOf": [{"required": ["affine"]}, {"required": ["table"]}, {"required": ["vi"]}],
        },
        "point": {"anyOf": [_vec, {"type": "integer", "minimum": 0}]},
        "solver": {
            "type": "object",
            "properties": {
                "epsilon": {"type": "number", "exclusiveMinimum": 0},
                "epsilon_stop": {"type": "number", "exclusiveMinimum": 0},
                "max_iterations": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
                "samples": {"type": "integer", "minimum": 2},
                "starts": {"anyOf": [
                    {"type": "array", "minItems": 1,
                     "items": {"anyOf": [_vec, {"type": "integer", "minimum": 0}]}},
                    {"type": "object", "properties": {"random": {"type": "integer",
                                                                 "minimum": 1}},
                     "required": ["random"], "additionalProperties": False},
                ]},
            },
            "additionalProperties": False,
        },
    },
    "required": ["space"],
    "additionalProperties": False,
}

SOLVER_DEFAULTS = {"epsilon": 1e-8, "epsilon_stop": 1e-8, "max_iterations": 100_000,
                   "seed": 0, "samples": 200}


def validate(cfg: dict):
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from None


def load_config(path) -> dict:
    """Read, validate and normalise a config (or the config embedded in a run report).

    Matrix files are inlined so the returned dict is self-contained.
    """
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if isinstance(cfg, dict) and "input_digest" in cfg and "config" in cfg:
        cfg = cfg["config"]
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    validate(cfg)
    cfg = copy.deepcopy(cfg)
    fin = cfg["space"].get("finite")
    if fin and "matrix_file" in fin:
        mpath = fin.pop("matrix_file")
        if not os.path.isabs(mpath):
            mpath = os.path.join(os.path.dirname(os.path.abspath(path)), mpath)
        if not os.path.exists(mpath):
            raise ConfigError(f"matrix file not found: {mpath}")
        fin["matrix"] = np.loadtxt(mpath, dtype=float, ndmin=2).tolist()
    return cfg


def digest(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def solver_settings(cfg: dict) -> dict:
    return {**SOLVER_DEFAULTS, **cfg.get("solver", {})}


def criterion(cfg: dict) -> ConvergenceCriterion:
    s = solver_settings(cfg)
    return ConvergenceCriterion(s["epsilon_stop"], s["max_iterations"])


def build_space(cfg: dict):
    sp = cfg["space"]
    if "euclidean" in sp:
        e = sp["euclidean"]
        p = e.get("p", 2)
        return EuclideanSpace(e["dim"], np.inf if p == "inf" else float(p))
    return FiniteSpace(np.asarray(sp["finite"]["matrix"], dtype=float))


def _bounds(vals, fill):
    return np.array([fill if v is None else float(v) for v in vals], dtype=float)


def build_set(spec, space=None):
    """Instantiate a set description (index lists pass through as tuples)."""
    if isinstance(spec, list):
        if not isinstance(space, FiniteSpace):
            raise ConfigError("index-list sets need a finite space")
        return tuple(int(i) for i in spec)
    if isinstance(space, FiniteSpace):
        raise ConfigError("finite spaces take index-list sets")
    kind = spec["kind"]
    if kind == "box":
        return Box(_bounds(spec["lower"], -np.inf), _bounds(spec["upper"], np.inf))
    if kind == "ball":
        return Ball(spec["center"], spec["radius"])
    if kind == "hyperplane":
        return Hyperplane(spec["normal"], spec["offset"])
    if kind == "halfspace":
        return Halfspace(spec["normal"], spec["offset"])
    if kind == "affine":
        return AffineSet(spec["matrix"], spec["rhs"])
    if kind == "simplex":
        return Simplex(spec["dim"], spec.get("scale", 1.0))
    if kind == "points":
        return FinitePointSet(spec["points"])
    if kind == "intersection":
        return Intersection([build_set(s, space) for s in spec["sets"]])
    raise ConfigError(f"unknown set kind {kind!r}")


def require(cfg: dict, *keys):
    missing = [k for k in keys if k not in cfg]
    if missing:
        raise ConfigError(f"config is missing required key(s): {', '.join(missing)}")
