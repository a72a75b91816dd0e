"""JSON formats for graphs, Hamiltonian specs and verification bundles.

Graph::

    {"q": 3,
     "vertices": [{"id": "v1", "weight": "Z:1"}, ...],
     "edges": [{"id": "e1", "u": "v1", "v": "v2", "gamma": "symbolic" | 0.5 | {"J": 0.5}}, ...]}

A vertex weight is an int (``Z``), a list of ints (``ZV``), a list of exact
entries (``QV``; strings like ``"1/2"`` or ``"1/2+1/3i"``), a list containing
floats (numeric ``NV``), or a canonical encoding string. A missing weight
means ``Z:1``. Missing edge ids become ``e<k>``.

Spec::

    {"family": "general|zero|integer-scaled|constant|preferred|r-field|ising",
     "q": 2, "beta": 1.0, "J": {"e1": 0.5} | 0.5, "fields": {...}, "r": 1}

with ``fields`` a vertex → vector map (general, r-field), ``{"B": [...],
"k": {...}}`` (integer-scaled), ``{"B": [...]}`` (constant) or a vertex →
scalar map (preferred, ising).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ParseError, ValidationError
from .multigraph import EdgeWeight, WeightedMultigraph, natural_key
from .potts import Family, HamiltonianSpec
from .weights import GaussianRational, SemigroupWeight, WeightKind, parse_gaussian, parse_weight

__all__ = [
    "parse_number",
    "number_to_json",
    "parse_graph",
    "parse_graph_file",
    "graph_to_json",
    "parse_spec",
    "spec_to_json",
    "load_json",
    "complex_to_json",
    "complex_from_json",
]


def load_json(source: bytes | str | Path) -> Any:
    if isinstance(source, Path):
        source = source.read_bytes()
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None


def parse_number(value, field: str = "number"):
    """JSON value → int, Fraction, GaussianRational, float or complex.

    Strings are read exactly when possible (``"1/2"``, ``"0.25"``,
    ``"1/2-3/1i"``); ``"1+2j"`` gives a complex double.
    """
    if isinstance(value, bool):
        raise ParseError("booleans are not numbers", field=field)
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            f = Fraction(text)
            return f.numerator if f.denominator == 1 else f
        except ValueError:
            pass
        if text.endswith("i"):
            try:
                gr = parse_gaussian(text)
            except ValidationError:
                raise ParseError(f"bad Gaussian rational {value!r}", field=field) from None
            return gr.re if gr.im == 0 else gr
        try:
            return complex(text)
        except ValueError:
            pass
    if isinstance(value, dict) and set(value) <= {"re", "im"}:
        return complex(float(value.get("re", 0)), float(value.get("im", 0)))
    raise ParseError(f"not a number: {value!r}", field=field)


def number_to_json(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, GaussianRational):
        return x.encode()
    if isinstance(x, float):
        return x
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    raise TypeError(f"cannot serialise {x!r}")


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(value) -> complex:
    if isinstance(value, list) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    n = parse_number(value)
    return complex(n)


def _parse_weight(raw, field: str) -> SemigroupWeight:
    if raw is None:
        return SemigroupWeight.integer(1)
    if isinstance(raw, bool):
        raise ParseError("booleans are not weights", field=field)
    if isinstance(raw, int):
        return SemigroupWeight.integer(raw)
    if isinstance(raw, str):
        if ":" in raw:
            try:
                return parse_weight(raw)
            except ValidationError as exc:
                raise ParseError(str(exc), field=field) from None
        return SemigroupWeight.field_vector([parse_number(raw, field)])
    if isinstance(raw, list):
        if all(isinstance(v, int) and not isinstance(v, bool) for v in raw) and raw:
            return SemigroupWeight.integer_vector(raw)
        values = [parse_number(v, f"{field}[{i}]") for i, v in enumerate(raw)]
        return SemigroupWeight.field_vector(values)
    if isinstance(raw, float):
        return SemigroupWeight.numeric_vector([raw])
    raise ParseError(f"unsupported weight {raw!r}", field=field)


def _parse_gamma(raw, field: str) -> EdgeWeight:
    if raw is None or raw == "symbolic":
        return EdgeWeight.symbol()
    if isinstance(raw, dict):
        if set(raw) != {"J"}:
            raise ParseError("edge weight object must be {\"J\": <number>}", field=field)
        return EdgeWeight.coupling(parse_number(raw["J"], f"{field}.J"))
    return EdgeWeight.of_value(parse_number(raw, field))


def parse_graph(data: Any) -> WeightedMultigraph:
    """Validated graph from decoded JSON."""
    if not isinstance(data, dict):
        raise ParseError("graph must be a JSON object", field="<root>")
    vertices = data.get("vertices")
    if not isinstance(vertices, list):
        raise ParseError("missing vertex list", field="vertices")
    vlist = []
    for i, item in enumerate(vertices):
        f = f"vertices[{i}]"
        if isinstance(item, str):
            item = {"id": item}
        if not isinstance(item, dict) or not isinstance(item.get("id"), str):
            raise ParseError("vertex needs a string id", field=f"{f}.id")
        vlist.append((item["id"], _parse_weight(item.get("weight"), f"{f}.weight")))
    elist = []
    for i, item in enumerate(data.get("edges", [])):
        f = f"edges[{i}]"
        if not isinstance(item, dict):
            raise ParseError("edge must be an object", field=f)
        for end in ("u", "v"):
            if not isinstance(item.get(end), str):
                raise ParseError("edge endpoint must be a vertex id", field=f"{f}.{end}")
        eid = item.get("id")
        if eid is not None and (not isinstance(eid, str) or "[" in eid or "]" in eid):
            raise ParseError("edge id must be a string without brackets", field=f"{f}.id")
        elist.append((eid, item["u"], item["v"], _parse_gamma(item.get("gamma"), f"{f}.gamma")))
    return WeightedMultigraph.from_lists(vlist, elist)


def parse_graph_file(source: bytes | str | Path) -> WeightedMultigraph:
    return parse_graph(load_json(source))


def _weight_to_json(w: SemigroupWeight):
    if w.kind is WeightKind.NUMERIC_VECTOR:
        return [number_to_json(v) for v in w.entries]
    return w.encode()


def _gamma_to_json(w: EdgeWeight):
    if w.kind == "symbol":
        return "symbolic"
    if w.kind == "coupling":
        return {"J": number_to_json(w.value)}
    return number_to_json(w.value)


def graph_to_json(g: WeightedMultigraph, q: int | None = None) -> dict:
    out: dict[str, Any] = {}
    if q is not None:
        out["q"] = q
    out["vertices"] = [
        {"id": v, "weight": _weight_to_json(g.vertices[v])} for v in sorted(g.vertices, key=natural_key)
    ]
    out["edges"] = [
        {"id": eid, "u": g.edges[eid].u, "v": g.edges[eid].v, "gamma": _gamma_to_json(g.edges[eid].weight)}
        for eid in g.edge_ids()
    ]
    return out


def _vector(raw, field):
    if not isinstance(raw, list):
        raise ParseError("expected a list", field=field)
    return tuple(parse_number(v, f"{field}[{i}]") for i, v in enumerate(raw))


def parse_spec(data: Any) -> HamiltonianSpec:
    if not isinstance(data, dict):
        raise ParseError("spec must be a JSON object", field="<root>")
    try:
        family = Family(data.get("family", "general"))
    except ValueError:
        raise ParseError(f"unknown family {data.get('family')!r}", field="family") from None
    q = data.get("q", 2 if family is Family.ISING else None)
    if not isinstance(q, int) or isinstance(q, bool):
        raise ParseError("q must be an integer", field="q")
    if "beta" not in data:
        raise ParseError("missing beta", field="beta")
    beta = parse_number(data["beta"], "beta")
    rawJ = data.get("J")
    if rawJ is None:
        J = None
    elif isinstance(rawJ, dict):
        J = {str(e): parse_number(v, f"J.{e}") for e, v in rawJ.items()}
    else:
        J = parse_number(rawJ, "J")
    fields = data.get("fields", {}) or {}
    if not isinstance(fields, dict):
        raise ParseError("fields must be an object", field="fields")
    kw: dict[str, Any] = {}
    if family in (Family.GENERAL, Family.R_FIELD):
        kw["fields"] = {v: _vector(vec, f"fields.{v}") for v, vec in fields.items()}
        if family is Family.R_FIELD:
            if not isinstance(data.get("r"), int):
                raise ParseError("r-field needs an integer r", field="r")
            kw["r"] = data["r"]
    elif family in (Family.INTEGER_SCALED, Family.CONSTANT):
        if "B" not in fields:
            raise ParseError("missing base vector", field="fields.B")
        kw["B"] = _vector(fields["B"], "fields.B")
        if family is Family.INTEGER_SCALED:
            k = fields.get("k")
            if not isinstance(k, dict):
                raise ParseError("missing multipliers", field="fields.k")
            kw["k"] = dict(k)
    elif family in (Family.PREFERRED, Family.ISING):
        kw["z"] = {v: parse_number(z, f"fields.{v}") for v, z in fields.items()}
    return HamiltonianSpec(family, q, beta, J, **kw)


def spec_to_json(spec: HamiltonianSpec) -> dict:
    out: dict[str, Any] = {"family": spec.family.value, "q": spec.q, "beta": number_to_json(spec.beta)}
    if isinstance(spec.J, dict):
        out["J"] = {e: number_to_json(v) for e, v in spec.J.items()}
    elif spec.J is not None:
        out["J"] = number_to_json(spec.J)
    fam = spec.family
    if fam in (Family.GENERAL, Family.R_FIELD):
        out["fields"] = {v: [number_to_json(x) for x in vec] for v, vec in spec.fields.items()}
        if fam is Family.R_FIELD:
            out["r"] = spec.r
    elif fam in (Family.INTEGER_SCALED, Family.CONSTANT):
        out["fields"] = {"B": [number_to_json(x) for x in spec.B]}
        if fam is Family.INTEGER_SCALED:
            out["fields"]["k"] = dict(spec.k)
    elif fam in (Family.PREFERRED, Family.ISING):
        out["fields"] = {v: number_to_json(z) for v, z in spec.z.items()}
    return out
