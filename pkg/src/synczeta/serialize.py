"""JSON encoding of models and reports.

Integers go out as decimal strings (no silent 53-bit truncation) and may
come in either as JSON integers or decimal strings.  Floats are rounded to
15 significant digits so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from .errors import InvalidInput
from .models import (CirclePower, FiniteMaps, HomologyData, SignedSubshiftSystem, SIntegerPair,
                     Subshift, ToralPair)

SCHEMA_ID = "synczeta/1"

_INT = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}
_INT_LIST = {"type": "array", "items": _INT}
_MATRIX = {"type": "array", "minItems": 1, "items": _INT_LIST}
_RATIONAL = {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}
_FLOAT = {"type": ["number", "null"]}


def _kind(name, props, required):
    return {
        "type": "object",
        "properties": {"kind": {"const": name}, **props},
        "required": ["kind", *required],
        "additionalProperties": False,
    }


MODEL_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "synczeta model",
    "oneOf": [
        _kind("FiniteMaps", {"sigma1": _INT_LIST, "sigma2": _INT_LIST}, ["sigma1", "sigma2"]),
        _kind("CirclePower", {"d_alpha": _INT, "d_beta": _INT}, ["d_alpha", "d_beta"]),
        _kind("ToralPair", {"A": _MATRIX, "B": _MATRIX}, ["A", "B"]),
        _kind("SIntegerPair", {"a": _INT, "b": _INT, "primes": _INT_LIST}, ["a", "b"]),
        _kind("Subshift", {"A": _MATRIX}, ["A"]),
        _kind("SignedSubshiftSystem", {"parts": {"type": "array", "items": {
            "type": "object",
            "properties": {"A": _MATRIX, "eps": {"enum": [1, -1, "1", "-1"]}},
            "required": ["A", "eps"], "additionalProperties": False}}}, ["parts"]),
        _kind("HomologyData", {"parts": {"type": "array", "items": {
            "type": "object",
            "properties": {"degree": _INT, "matrix": _MATRIX},
            "required": ["degree", "matrix"], "additionalProperties": False}}}, ["parts"]),
    ],
}

ANALYSES = ("counts", "zeta", "classify", "growth", "congruence", "trichotomy", "torsion", "entropy")

JOB_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "synczeta job",
    "type": "object",
    "properties": {
        "model": MODEL_SCHEMA,
        "analyses": {"type": "array", "items": {"enum": list(ANALYSES)}, "uniqueItems": True},
        "n_max": {"type": "integer", "minimum": 1},
        "order": {"type": "integer", "minimum": 1},
        "torsion_samples": {"type": "array", "items": _RATIONAL},
        "output": {
            "type": "object",
            "properties": {"path": {"type": "string"}, "format": {"enum": ["json", "csv"]}},
            "required": ["path"],
            "additionalProperties": False,
        },
    },
    "required": ["model", "analyses"],
    "additionalProperties": False,
}

BATCH_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {"jobs": {"type": "array", "items": JOB_SCHEMA}},
    "required": ["jobs"],
    "additionalProperties": False,
}

_ERROR = {
    "type": "object",
    "properties": {"type": {"type": "string"}, "message": {"type": "string"}},
    "required": ["type", "message"],
}
_POLY = {"type": "array", "items": _INT}
_RATFUNC = {"type": "object", "properties": {"num": _POLY, "den": _POLY}, "required": ["num", "den"]}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "synczeta report",
    "type": "object",
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "model": MODEL_SCHEMA,
        "n_max": {"type": "integer"},
        "error": _ERROR,
        "results": {
            "type": "object",
            "properties": {
                "counts": {"type": "object", "properties": {
                    "counts": {"type": "array", "items": {"anyOf": [_INT, {"type": "null"}]}}},
                    "required": ["counts"]},
                "zeta": {"type": "object", "properties": {
                    "form": {"enum": ["RationalForm", "CycleProduct", "ResidueForm", "SeriesOnly"]},
                    "verdict": {"type": "string"},
                    "rational": _RATFUNC,
                    "residue": {"type": "object", "properties": {
                        "L": {"type": "integer"}, "n0": {"type": "integer"},
                        "residues": {"type": "array", "items": {"type": "array", "items": _FLOAT}},
                        "A": {"type": "array", "items": _FLOAT},
                        "A_exact": {"anyOf": [{"type": "array", "items": _RATIONAL}, {"type": "null"}]},
                        "Q": {"type": "array", "items": _RATIONAL},
                    }, "required": ["L", "residues", "A", "Q"]},
                }, "required": ["form", "verdict"]},
                "classify": {"type": "object", "properties": {
                    "verdict": {"enum": ["Rational", "AlgebraicCandidate", "NaturalBoundary", "Unclassified"]},
                    "witnesses": {"type": "array", "items": {"type": "object", "properties": {"p": {"type": "integer"}},
                                                             "required": ["p"]}},
                }, "required": ["verdict", "witnesses"]},
                "growth": {"type": "object", "properties": {
                    "upper": _FLOAT, "lower": _FLOAT, "degenerate": {"type": "boolean"}},
                    "required": ["upper", "lower", "window"]},
                "congruence": {"type": "object", "required": ["n_max", "failures", "euler_failures"]},
                "trichotomy": {"type": "object", "properties": {
                    "case": {"enum": ["AllZero", "PeriodicLimitSet", "IntervalCandidate"]}}, "required": ["case"]},
                "torsion": {"type": "object", "required": ["lefschetz_zeta", "tau"]},
                "entropy": {"type": "object", "properties": {
                    "s_infty": _FLOAT, "exp_h": _FLOAT, "agree": {"type": "boolean"}},
                    "required": ["s_infty", "exp_h", "agree"]},
            },
            "additionalProperties": False,
        },
    },
    "required": ["schema"],
}


def validate(instance, schema) -> None:
    try:
        jsonschema.validate(instance, schema)
    except jsonschema.ValidationError as e:
        raise InvalidInput(f"schema violation at {'/'.join(map(str, e.absolute_path)) or '<root>'}: {e.message}")


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def fnum(x):
    """Float rounded to 15 significant digits; None for nan."""
    if x is None:
        return None
    x = float(x)
    if x != x:
        return None
    return float(f"{x:.15g}") + 0.0  # folds -0.0 into 0.0


def rat(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def ints(xs) -> list:
    return [rat(x) for x in xs]


def poly_json(f) -> dict:
    return {"num": ints(f.num), "den": ints(f.den)}


def cplx(z) -> list:
    z = complex(z)
    return [fnum(z.real), fnum(z.imag)]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

def _i(x) -> int:
    return int(x)


def _mat(m) -> tuple:
    return tuple(tuple(_i(x) for x in row) for row in m)


def model_from_json(obj: dict):
    validate(obj, MODEL_SCHEMA)
    kind = obj["kind"]
    if kind == "FiniteMaps":
        return FiniteMaps(tuple(map(_i, obj["sigma1"])), tuple(map(_i, obj["sigma2"])))
    if kind == "CirclePower":
        return CirclePower(_i(obj["d_alpha"]), _i(obj["d_beta"]))
    if kind == "ToralPair":
        return ToralPair(_mat(obj["A"]), _mat(obj["B"]))
    if kind == "SIntegerPair":
        return SIntegerPair(_i(obj["a"]), _i(obj["b"]), tuple(map(_i, obj.get("primes", ()))))
    if kind == "Subshift":
        return Subshift(_mat(obj["A"]))
    if kind == "SignedSubshiftSystem":
        return SignedSubshiftSystem(tuple((_mat(p["A"]), _i(p["eps"])) for p in obj["parts"]))
    if kind == "HomologyData":
        return HomologyData(tuple((_i(p["degree"]), _mat(p["matrix"])) for p in obj["parts"]))
    raise InvalidInput(f"unknown model kind {kind}")


def _mat_json(m) -> list:
    return [ints(row) for row in m]


def model_to_json(model) -> dict:
    if isinstance(model, FiniteMaps):
        return {"kind": "FiniteMaps", "sigma1": ints(model.sigma1), "sigma2": ints(model.sigma2)}
    if isinstance(model, CirclePower):
        return {"kind": "CirclePower", "d_alpha": rat(model.d_alpha), "d_beta": rat(model.d_beta)}
    if isinstance(model, ToralPair):
        return {"kind": "ToralPair", "A": _mat_json(model.A), "B": _mat_json(model.B)}
    if isinstance(model, SIntegerPair):
        return {"kind": "SIntegerPair", "a": rat(model.a), "b": rat(model.b), "primes": ints(model.primes)}
    if isinstance(model, Subshift):
        return {"kind": "Subshift", "A": _mat_json(model.A)}
    if isinstance(model, SignedSubshiftSystem):
        return {"kind": "SignedSubshiftSystem",
                "parts": [{"A": _mat_json(a), "eps": eps} for a, eps in model.parts]}
    if isinstance(model, HomologyData):
        return {"kind": "HomologyData",
                "parts": [{"degree": rat(k), "matrix": _mat_json(m)} for k, m in model.parts]}
    raise InvalidInput(f"cannot serialize {type(model).__name__}")
