"""Workbench document format: strict JSON with exact rationals as "p/q".

A document is {"kind": ..., "meta": {"name": ..., "description"?}, "body":
{...}} with a kind-specific body schema.  Parsing checks shape and types
only; semantic validation (associativity, homomorphism laws, metric axioms)
happens when the domain object is built, so a well-shaped file with broken
algebra parses fine and fails in the relevant validator.

Serialization is deterministic (sorted keys) so identical inputs always
produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .catalog import TRIVIAL_GROUP  # noqa: F401  (re-exported convenience)
from .charts import BUILTIN_MODELS, ChartModel, polynomial_model
from .core import FiniteSemigroup, validate_semigroup
from .errors import SchemaError
from .metrics import (
    BowmanMetricData,
    YeagerMetricData,
    bowman_data_from_spec,
    discrete_metric,
    flat_bowman_data,
)
from .order import FinitePoset, flat_model, validate_poset
from .semilattice import StrongSemilatticeSpec, validate_spec
from .topology import TopologicalSemigroupModel, validate_topology

KINDS = ("cayley", "spec", "poset", "topology-model", "metric-data",
         "chart-model")


@dataclass(frozen=True)
class WorkbenchDocument:
    kind: str
    name: str
    description: str
    body: dict


def parse_rational(value, path: str) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(path, f"bad rational {value!r}: {exc}")
    raise SchemaError(path, f"expected rational string, got {type(value).__name__}")


def format_rational(f: Fraction) -> str:
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _require(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected object, got {type(obj).__name__}")
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"{path}.{key}", "unknown field")
    for key in required:
        if key not in obj:
            raise SchemaError(f"{path}.{key}", "missing field")


def _check_int_matrix(m, path):
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise SchemaError(path, "expected a list of rows")
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError(f"{path}[{i}][{j}]", "expected an integer")


def _check_cayley_body(body, path):
    _require(body, path, ["n", "table"], ["labels"])
    if not isinstance(body["n"], int):
        raise SchemaError(f"{path}.n", "expected an integer")
    _check_int_matrix(body["table"], f"{path}.table")
    if len(body["table"]) != body["n"]:
        raise SchemaError(f"{path}.table", f"expected {body['n']} rows")
    if "labels" in body:
        if not isinstance(body["labels"], list) or not all(
            isinstance(s, str) for s in body["labels"]
        ):
            raise SchemaError(f"{path}.labels", "expected a list of strings")


def _check_spec_body(body, path):
    _require(body, path, ["e", "groups", "bonding"])
    _check_cayley_body(body["e"], f"{path}.e")
    if not isinstance(body["groups"], dict):
        raise SchemaError(f"{path}.groups", "expected an object")
    for key, g in body["groups"].items():
        if not key.isdigit():
            raise SchemaError(f"{path}.groups.{key}", "keys are element indices")
        _check_cayley_body(g, f"{path}.groups.{key}")
    if not isinstance(body["bonding"], dict):
        raise SchemaError(f"{path}.bonding", "expected an object")
    for key, phi in body["bonding"].items():
        parts = key.split("->")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise SchemaError(f"{path}.bonding.{key}", 'keys look like "f->e"')
        if not isinstance(phi, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in phi
        ):
            raise SchemaError(f"{path}.bonding.{key}", "expected a list of ints")


_CHECKERS = {}


def _checker(kind):
    def wrap(fn):
        _CHECKERS[kind] = fn
        return fn
    return wrap


@_checker("cayley")
def _check_cayley(body):
    _check_cayley_body(body, "body")


@_checker("spec")
def _check_spec(body):
    _check_spec_body(body, "body")


@_checker("poset")
def _check_poset(body):
    _require(body, "body", ["n", "leq"])
    if not isinstance(body["n"], int):
        raise SchemaError("body.n", "expected an integer")
    leq = body["leq"]
    if not isinstance(leq, list) or len(leq) != body["n"]:
        raise SchemaError("body.leq", f"expected {body['n']} rows")
    for i, row in enumerate(leq):
        if not isinstance(row, list) or len(row) != body["n"]:
            raise SchemaError(f"body.leq[{i}]", f"expected {body['n']} entries")
        for j, v in enumerate(row):
            if not isinstance(v, (bool, int)):
                raise SchemaError(f"body.leq[{i}][{j}]", "expected 0/1 or bool")


@_checker("topology-model")
def _check_topology_model(body):
    _require(body, "body", ["semigroup", "opens"])
    _check_cayley_body(body["semigroup"], "body.semigroup")
    if not isinstance(body["opens"], list):
        raise SchemaError("body.opens", "expected a list of open sets")
    for i, O in enumerate(body["opens"]):
        if not isinstance(O, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in O
        ):
            raise SchemaError(f"body.opens[{i}]", "expected a list of indices")


@_checker("metric-data")
def _check_metric_data(body):
    if not isinstance(body, dict) or "type" not in body:
        raise SchemaError("body.type", "missing field")
    if body["type"] == "flat":
        _require(body, "body", ["type", "truncation", "fiber", "bonding"],
                 ["basis", "base_points", "pseudo"])
        if not isinstance(body["truncation"], int) or body["truncation"] < 1:
            raise SchemaError("body.truncation", "expected a positive integer")
        _check_cayley_body(body["fiber"], "body.fiber")
        if body["bonding"] not in ("identity", "collapse"):
            raise SchemaError("body.bonding", 'expected "identity" or "collapse"')
    elif body["type"] == "spec":
        _require(body, "body", ["type", "spec", "rho"],
                 ["basis", "d", "base_points", "enumerations", "pseudo"])
        _check_spec_body(body["spec"], "body.spec")
        for i, row in enumerate(body["rho"]):
            for j, v in enumerate(row):
                parse_rational(v, f"body.rho[{i}][{j}]")
        for e, m in body.get("d", {}).items():
            for i, row in enumerate(m):
                for j, v in enumerate(row):
                    parse_rational(v, f"body.d.{e}[{i}][{j}]")
    else:
        raise SchemaError("body.type", f"unknown metric-data type {body['type']!r}")
    if "basis" in body and not all(
        isinstance(v, int) and not isinstance(v, bool) for v in body["basis"]
    ):
        raise SchemaError("body.basis", "expected a list of element indices")
    if "pseudo" in body and not isinstance(body["pseudo"], bool):
        raise SchemaError("body.pseudo", "expected a boolean")


@_checker("chart-model")
def _check_chart_model(body):
    if not isinstance(body, dict):
        raise SchemaError("body", "expected object")
    if "builtin" in body:
        _require(body, "body", ["builtin"], ["dim", "radius"])
        if body["builtin"] not in BUILTIN_MODELS:
            raise SchemaError(
                "body.builtin",
                f"unknown builtin; have {sorted(BUILTIN_MODELS)}",
            )
    else:
        _require(body, "body", ["dim", "polynomials"], ["radius"])
        if not isinstance(body["polynomials"], list):
            raise SchemaError("body.polynomials", "expected a list per coordinate")
        for i, coord in enumerate(body["polynomials"]):
            for k, term in enumerate(coord):
                if (
                    not isinstance(term, list)
                    or len(term) != 2
                    or not isinstance(term[0], (int, float))
                    or not isinstance(term[1], list)
                ):
                    raise SchemaError(
                        f"body.polynomials[{i}][{k}]",
                        "expected [coefficient, [exponents]]",
                    )
    if "dim" in body and (not isinstance(body["dim"], int) or body["dim"] < 1):
        raise SchemaError("body.dim", "expected a positive integer")
    if "radius" in body and not isinstance(body["radius"], (int, float)):
        raise SchemaError("body.radius", "expected a number")


def parse_document(text: str) -> WorkbenchDocument:
    """Strict parse: unknown fields are rejected, shapes are checked, but no
    algebraic validation happens here."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}", exc.msg)
    _require(raw, "$", ["kind", "meta", "body"])
    kind = raw["kind"]
    if kind not in KINDS:
        raise SchemaError("$.kind", f"unknown kind {kind!r}; have {KINDS}")
    _require(raw["meta"], "$.meta", ["name"], ["description"])
    if not isinstance(raw["meta"]["name"], str):
        raise SchemaError("$.meta.name", "expected a string")
    _CHECKERS[kind](raw["body"])
    return WorkbenchDocument(
        kind=kind,
        name=raw["meta"]["name"],
        description=raw["meta"].get("description", ""),
        body=raw["body"],
    )


def serialize_document(doc: WorkbenchDocument) -> str:
    meta = {"name": doc.name}
    if doc.description:
        meta["description"] = doc.description
    payload = {"kind": doc.kind, "meta": meta, "body": doc.body}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# builders: document body -> validated domain object


def _cayley_from_body(body) -> FiniteSemigroup:
    return validate_semigroup(body["table"], body.get("labels"))


def _spec_from_body(body) -> StrongSemilatticeSpec:
    E = _cayley_from_body(body["e"])
    groups = {int(k): _cayley_from_body(g) for k, g in body["groups"].items()}
    bonding = {}
    for key, phi in body["bonding"].items():
        f, e = (int(p) for p in key.split("->"))
        bonding[(f, e)] = tuple(phi)
    return validate_spec(E, groups, bonding)


def build_semigroup(doc: WorkbenchDocument) -> FiniteSemigroup:
    _expect_kind(doc, "cayley")
    return _cayley_from_body(doc.body)


def build_spec(doc: WorkbenchDocument) -> StrongSemilatticeSpec:
    _expect_kind(doc, "spec")
    return _spec_from_body(doc.body)


def build_poset(doc: WorkbenchDocument) -> FinitePoset:
    _expect_kind(doc, "poset")
    return validate_poset(doc.body["leq"])


def build_topology_model(doc: WorkbenchDocument) -> TopologicalSemigroupModel:
    _expect_kind(doc, "topology-model")
    S = _cayley_from_body(doc.body["semigroup"])
    T = validate_topology(S.n, [frozenset(O) for O in doc.body["opens"]])
    return TopologicalSemigroupModel(S, T)


def build_bowman_data(doc: WorkbenchDocument) -> BowmanMetricData:
    _expect_kind(doc, "metric-data")
    body = doc.body
    if body["type"] == "flat":
        fiber = _cayley_from_body(body["fiber"])
        return flat_bowman_data(
            flat_model(body["truncation"]),
            fiber,
            body["bonding"],
            basis=tuple(body["basis"]) if "basis" in body else None,
            base_points={int(k): v for k, v in body.get("base_points", {}).items()}
            or None,
            pseudo=body.get("pseudo", False),
        )
    spec = _spec_from_body(body["spec"])
    rho = [
        [parse_rational(v, f"body.rho[{i}][{j}]") for j, v in enumerate(row)]
        for i, row in enumerate(body["rho"])
    ]
    d = {
        int(e): [[parse_rational(v, f"body.d.{e}") for v in row] for row in m]
        for e, m in body.get("d", {}).items()
    } or None
    return bowman_data_from_spec(
        spec,
        rho,
        basis=tuple(body["basis"]) if "basis" in body else None,
        d=d,
        base_points={int(k): v for k, v in body.get("base_points", {}).items()}
        or None,
        enumerations={int(k): tuple(v)
                      for k, v in body.get("enumerations", {}).items()} or None,
        pseudo=body.get("pseudo", False),
    )


def build_yeager_data(doc: WorkbenchDocument) -> YeagerMetricData:
    _expect_kind(doc, "metric-data")
    body = doc.body
    if body["type"] != "spec":
        raise SchemaError("body.type",
                          "the isometric metric needs a spec-type document")
    spec = _spec_from_body(body["spec"])
    rho = [[parse_rational(v, "body.rho") for v in row] for row in body["rho"]]
    d = {
        int(e): [[parse_rational(v, f"body.d.{e}") for v in row] for row in m]
        for e, m in body.get("d", {}).items()
    }
    for e in spec.E.elements():
        if e not in d:
            d[e] = discrete_metric(spec.groups[e].n)
    return YeagerMetricData(spec=spec, rho=rho, d=d)


def build_chart_model(doc: WorkbenchDocument) -> ChartModel:
    _expect_kind(doc, "chart-model")
    body = doc.body
    if "builtin" in body:
        kwargs = {}
        if "dim" in body:
            kwargs["dim"] = body["dim"]
        if "radius" in body:
            kwargs["radius"] = float(body["radius"])
        return BUILTIN_MODELS[body["builtin"]](**kwargs)
    return polynomial_model(
        body["dim"],
        [[(c, tuple(e)) for c, e in coord] for coord in body["polynomials"]],
        radius=float(body.get("radius", 1.0)),
    )


def _expect_kind(doc: WorkbenchDocument, kind: str):
    if doc.kind != kind:
        raise SchemaError("$.kind", f"expected {kind!r}, got {doc.kind!r}")


def semigroup_to_body(S: FiniteSemigroup) -> dict:
    body = {"n": S.n, "table": [list(row) for row in S.table]}
    if S.labels is not None:
        body["labels"] = list(S.labels)
    return body


def spec_to_body(spec: StrongSemilatticeSpec) -> dict:
    return {
        "e": semigroup_to_body(spec.E),
        "groups": {str(e): semigroup_to_body(g) for e, g in spec.groups.items()},
        "bonding": {
            f"{f}->{e}": list(phi)
            for (f, e), phi in sorted(spec.bonding.items())
            if f != e
        },
    }
