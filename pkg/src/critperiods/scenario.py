"""Scenario files: JSON or TOML documents describing fields, a motive and characters."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema

from .arithmetic import (CMExtension, CMType, CoefficientField, TotallyRealField,
                         extension_from_maps, validate_cm_type)
from .characters import HeckeCharacter, construct_with_differences
from .groups.finite import FiniteGroup, fixture
from .hodge import DescentDatum, GLnWeight, HodgeData, hodge_from_weight

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

_INT = {"type": "integer"}
_STR = {"type": "string"}
_INTS = {"type": "array", "items": _INT}
_STRS = {"type": "array", "items": _STR}

_CHARACTER = {
    "type": "object",
    "properties": {
        "label": _STR,
        "weight": _INT,
        "infinity": {"type": "object", "additionalProperties": _INT},
        "differences": {"type": "object", "additionalProperties": _INT},
    },
    "oneOf": [{"required": ["infinity"]}, {"required": ["differences", "weight"]}],
    "additionalProperties": False,
}

SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "field": {
            "type": "object",
            "properties": {"label": _STR, "embeddings": _STRS, "galois_closure": _STR},
            "required": ["embeddings"],
            "additionalProperties": False,
        },
        "extension": {
            "type": "object",
            "properties": {
                "label": _STR, "ambient": _STR,
                "conjugation": {"type": "object", "additionalProperties": _STR},
                "restriction": {"type": "object", "additionalProperties": _STR},
            },
            "additionalProperties": False,
        },
        "coefficients": {
            "type": "object",
            "properties": {"label": _STR, "embeddings": _STRS, "distinguished": _STR},
            "additionalProperties": False,
        },
        "motive": {
            "type": "object",
            "properties": {
                "label": _STR, "rank": _INT, "weight": _INT, "n_plus": _INT,
                "epsilon": {"enum": [1, -1]},
                "delta_hypothesis": {"type": "boolean"},
                "hodge": {"type": "object", "additionalProperties": _INTS},
                "gln_weight": {"type": "object", "additionalProperties": _INTS},
            },
            "oneOf": [{"required": ["hodge", "rank", "weight"]}, {"required": ["gln_weight"]}],
            "additionalProperties": False,
        },
        "cm_type": _STRS,
        "chi": _CHARACTER,
        "psi": _CHARACTER,
        "k": _INT, "r": _INT, "j": _INT, "w0": _INT,
        "phi": _STR,
        "sigma": _STR,
        "descent": {
            "oneOf": [
                {"type": "array", "items": {
                    "type": "object",
                    "properties": {"subfield_label": _STR, "degree_over_Q": _INT,
                                   "degree_over_K": _INT, "multiplicity": _INT},
                    "required": ["subfield_label", "degree_over_Q", "degree_over_K",
                                 "multiplicity"],
                    "additionalProperties": False}},
                {"type": "object", "properties": {"group": _STR},
                 "required": ["group"], "additionalProperties": False},
            ]
        },
        "group": {
            "type": "object",
            "properties": {
                "name": _STR,
                "fixture": _STR,
                "permutations": {"type": "array", "items": _INTS},
                "table": {"type": "array", "items": _INTS},
            },
            "oneOf": [{"required": ["fixture"]}, {"required": ["permutations"]},
                      {"required": ["table"]}],
            "additionalProperties": False,
        },
        "mutate": {
            "type": "object",
            "properties": {"side": {"enum": ["lhs", "rhs"]}, "generator": _STR,
                           "delta": _INT},
            "required": ["generator"],
            "additionalProperties": False,
        },
        "random": {
            "type": "object",
            "properties": {"count": _INT, "max_rank": _INT, "max_degree": _INT},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


class ScenarioError(Exception):
    """Input problem; ``pointer`` is a JSON pointer into the scenario."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
        self.message = message


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path)


def load_document(path: str | Path) -> dict[str, Any]:
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise ScenarioError("", f"cannot read {p}: {exc.strerror}") from exc
    try:
        if p.suffix.lower() == ".toml":
            doc = tomllib.loads(raw.decode())
        else:
            doc = json.loads(raw)
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise ScenarioError("", f"parse error: {exc}") from exc
    validate_document(doc)
    return doc


def validate_document(doc: Any) -> None:
    v = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(v.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ScenarioError(_pointer(e.absolute_path), e.message)


@dataclass
class Scenario:
    doc: dict[str, Any]
    K: TotallyRealField | None = None
    ext: CMExtension | None = None
    E: CoefficientField | None = None
    M: HodgeData | None = None
    Phi: CMType | None = None
    chars: dict[str, HeckeCharacter] = field(default_factory=dict)

    def get(self, key: str, default=None):
        return self.doc.get(key, default)

    def need(self, key: str):
        if key not in self.doc:
            raise ScenarioError(f"/{key}", "required by this command")
        return self.doc[key]

    def motive(self) -> HodgeData:
        if self.M is None:
            raise ScenarioError("/motive", "required by this command")
        return self.M

    def character(self, key: str) -> HeckeCharacter:
        if key not in self.chars:
            raise ScenarioError(f"/{key}", "required by this command")
        return self.chars[key]

    def cm_type(self) -> CMType:
        if self.Phi is None:
            raise ScenarioError("/cm_type", "required by this command")
        return self.Phi


def _wrap(pointer: str, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except ScenarioError:
        raise
    except Exception as exc:  # validation errors from the domain constructors
        raise ScenarioError(pointer, str(exc)) from exc


def _character(S: Scenario, key: str) -> HeckeCharacter:
    spec = S.doc[key]
    label = spec.get("label", key)
    if "infinity" in spec:
        return _wrap(f"/{key}/infinity", HeckeCharacter.primitive, S.ext, spec["infinity"], label)
    if S.Phi is None:
        raise ScenarioError("/cm_type", f"needed to read /{key}/differences")
    return _wrap(f"/{key}/differences", construct_with_differences,
                 S.Phi, spec["differences"], spec["weight"], label)


def build(doc: dict[str, Any]) -> Scenario:
    S = Scenario(doc)
    if "field" in doc:
        f = doc["field"]
        S.K = _wrap("/field", TotallyRealField, f.get("label", "K"), tuple(f["embeddings"]),
                    f.get("galois_closure", ""))
        e = doc.get("extension", {})
        if "conjugation" in e or "restriction" in e:
            if not ("conjugation" in e and "restriction" in e):
                raise ScenarioError("/extension", "conjugation and restriction go together")
            S.ext = _wrap("/extension", extension_from_maps, S.K, e["conjugation"],
                          e["restriction"], e.get("label", "L"))
            if "ambient" in e:
                S.ext = _wrap("/extension", CMExtension, S.K, S.ext.embeddings,
                              S.ext.conjugation, S.ext.restriction, S.ext.label, e["ambient"])
        else:
            S.ext = CMExtension.standard(S.K, e.get("label", "L"), e.get("ambient", ""))
    c = doc.get("coefficients", {})
    S.E = _wrap("/coefficients", CoefficientField, c.get("label", "E"),
                tuple(c.get("embeddings", ["1"])), c.get("distinguished", "1"))
    if "motive" in doc:
        if S.K is None:
            raise ScenarioError("/field", "a motive needs a base field")
        m = doc["motive"]
        if "gln_weight" in m:
            wt = _wrap("/motive/gln_weight", GLnWeight, S.K, m["gln_weight"])
            S.M = _wrap("/motive", hodge_from_weight, wt, True, S.E, None,
                        m.get("epsilon", 1), m.get("n_plus"),
                        m.get("delta_hypothesis", False), m.get("label", "M"))
        else:
            hodge = {}
            for key, v in m["hodge"].items():
                if "|" not in key:
                    raise ScenarioError(f"/motive/hodge/{key}", "keys look like 'sigma|phi'")
                s, f = key.split("|", 1)
                hodge[(s, f)] = v
            S.M = _wrap("/motive", HodgeData, S.K, S.E, m["rank"], m["weight"], hodge,
                        m.get("epsilon", 1), m.get("n_plus"), None,
                        m.get("delta_hypothesis", False), m.get("label", "M"))
    if "cm_type" in doc:
        if S.ext is None:
            raise ScenarioError("/field", "a CM type needs a field")
        S.Phi = _wrap("/cm_type", validate_cm_type, S.ext, doc["cm_type"])
    for key in ("chi", "psi"):
        if key in doc:
            if S.ext is None:
                raise ScenarioError("/field", "characters need a field")
            S.chars[key] = _character(S, key)
    return S


def load(path: str | Path) -> Scenario:
    return build(load_document(path))


def descent_data(S: Scenario) -> tuple[list[DescentDatum], Any]:
    spec = S.need("descent")
    if isinstance(spec, dict):
        from .groups.brauer import brauer_decompose, descent_data_from_decomposition
        G = _wrap("/descent/group", fixture, spec["group"])
        dec = brauer_decompose(G)
        return descent_data_from_decomposition(dec, S.K.degree, S.K.label), dec
    return [_wrap(f"/descent/{i}", DescentDatum, **d) for i, d in enumerate(spec)], None


def group_from(S: Scenario) -> FiniteGroup:
    g = S.need("group")
    name = g.get("name", g.get("fixture", "G"))
    if "fixture" in g:
        return _wrap("/group/fixture", fixture, g["fixture"])
    if "permutations" in g:
        return _wrap("/group/permutations", FiniteGroup.from_permutations, g["permutations"], name)
    return _wrap("/group/table", FiniteGroup, g["table"], name)
