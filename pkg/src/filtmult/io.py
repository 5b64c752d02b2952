"""JSON encoding of filtrations, ideals, polytopes, tensors and envelopes.

Scalars are accepted as integers, ``"p/q"`` strings or the tagged forms
``{"rat": ...}``, ``{"quad": {...}}`` and ``{"float": ..., "tol": ...}``.
Bare JSON floats are rejected so that exact inputs stay exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .convex import Polytope
from .divisorial import IntersectionTensor, NefEnvelope
from .errors import DimensionMismatch, InexactInput, SchemaError
from .monomial import (
    Adic,
    Closure,
    DivisorialToric,
    Filtration,
    MonomialIdeal,
    Product,
    Rescale,
    Table,
    Trivial,
    Truncate,
)
from .numeric import Scalar, scalar_from_json, scalar_to_json


def load(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from exc


def scalar_in(obj) -> Scalar:
    if isinstance(obj, bool):
        raise SchemaError("booleans are not scalars")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, float):
        raise InexactInput('bare floats are not accepted; use "p/q" or {"float": x, "tol": t}')
    if isinstance(obj, str):
        try:
            return Fraction(obj.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"cannot parse scalar {obj!r}") from exc
    if isinstance(obj, dict):
        try:
            return scalar_from_json(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad scalar {obj!r}") from exc
    raise SchemaError(f"bad scalar {obj!r}")


def _field(obj: dict, key: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r}")
    return obj[key]


def _int_vector(v) -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise SchemaError(f"expected a list of integers, got {v!r}")
    return tuple(v)


def ideal_from_json(obj, dim: int | None = None) -> MonomialIdeal:
    gens = obj["gens"] if isinstance(obj, dict) else obj
    if not isinstance(gens, list) or not gens:
        raise SchemaError("an ideal needs a nonempty generator list")
    vecs = [_int_vector(g) for g in gens]
    dims = {len(v) for v in vecs}
    if len(dims) != 1 or (dim is not None and dims != {dim}):
        raise DimensionMismatch("generators have inconsistent lengths")
    if any(x < 0 for v in vecs for x in v):
        raise SchemaError("exponents must be nonnegative")
    return MonomialIdeal(dims.pop(), vecs)


def ideal_to_json(ideal: MonomialIdeal) -> dict:
    return {"dim": ideal.dim, "gens": [list(g) for g in ideal.gens]}


def filtration_from_json(obj) -> Filtration:
    kind = _field(obj, "kind")
    if kind == "trivial":
        return Trivial(int(_field(obj, "dim")))
    if kind == "adic":
        return Adic(ideal_from_json(_field(obj, "gens"), obj.get("dim")))
    if kind == "divtoric":
        terms = []
        for t in _field(obj, "terms"):
            w = t.get("w", t.get("weights")) if isinstance(t, dict) else None
            if w is None:
                raise SchemaError("each divisorial term needs 'w' and 'a'")
            terms.append((_int_vector(w), scalar_in(_field(t, "a"))))
        return DivisorialToric(terms)
    if kind == "product":
        return Product(*(filtration_from_json(f) for f in _field(obj, "factors")))
    if kind == "rescale":
        return Rescale(filtration_from_json(_field(obj, "base")), _field(obj, "l"))
    if kind == "truncate":
        return Truncate(filtration_from_json(_field(obj, "base")), _field(obj, "a"))
    if kind == "closure":
        return Closure(filtration_from_json(_field(obj, "base")), obj.get("r_max", 1))
    if kind == "table":
        tail = ideal_from_json(_field(obj, "tail"))
        levels = [ideal_from_json(lv, tail.dim) for lv in _field(obj, "levels")]
        return Table(levels, tail)
    raise SchemaError(f"unknown filtration kind {kind!r}")


def filtration_to_json(f: Filtration) -> dict:
    if isinstance(f, Trivial):
        return {"kind": "trivial", "dim": f.dim}
    if isinstance(f, Adic):
        return {"dim": f.dim, "kind": "adic", "gens": [list(g) for g in f.ideal.gens]}
    if isinstance(f, DivisorialToric):
        return {"kind": "divtoric",
                "terms": [{"w": list(mu.weights), "a": scalar_to_json(a)} for mu, a in f.terms]}
    if isinstance(f, Product):
        return {"kind": "product", "factors": [filtration_to_json(g) for g in f.factors]}
    if isinstance(f, Rescale):
        return {"kind": "rescale", "base": filtration_to_json(f.base), "l": f.l}
    if isinstance(f, Truncate):
        return {"kind": "truncate", "base": filtration_to_json(f.base), "a": f.a}
    if isinstance(f, Closure):
        return {"kind": "closure", "base": filtration_to_json(f.base), "r_max": f.r_max}
    if isinstance(f, Table):
        return {"kind": "table", "levels": [[list(g) for g in lv.gens] for lv in f.table],
                "tail": [list(g) for g in f.tail.gens]}
    raise SchemaError(f"cannot encode {type(f).__name__}")


def polytope_from_json(obj) -> Polytope:
    pts = obj.get("verts", obj.get("vertices")) if isinstance(obj, dict) else obj
    if not isinstance(pts, list) or not pts:
        raise SchemaError("a polytope needs a nonempty vertex list")
    rows = [tuple(scalar_in(x) for x in p) for p in pts]
    dims = {len(r) for r in rows}
    if len(dims) != 1:
        raise DimensionMismatch("vertices have inconsistent lengths")
    return Polytope(dims.pop(), rows)


def polytope_to_json(p: Polytope) -> dict:
    return {"dim": p.dim, "verts": [[scalar_to_json(x) for x in v] for v in p.vertices]}


def body_to_json(tb) -> dict:
    """Polytope JSON plus the truncation data of a :class:`TruncatedBody`."""
    out = polytope_to_json(tb.body)
    out.update({"c": scalar_to_json(tb.c), "m_max": tb.m_max, "exact": tb.exact})
    return out


def tensor_from_json(obj) -> IntersectionTensor:
    entries = {k: scalar_in(v) for k, v in _field(obj, "entries").items()}
    return IntersectionTensor.from_labels(int(_field(obj, "d")), _field(obj, "labels"), entries)


def tensor_to_json(t: IntersectionTensor) -> dict:
    entries = {",".join(t.labels[i] for i in k): scalar_to_json(v) for k, v in sorted(t.entries.items())}
    return {"d": t.d, "labels": list(t.labels), "entries": entries}


def envelope_from_json(obj) -> NefEnvelope:
    cones = []
    for i, c in enumerate(_field(obj, "cones")):
        ineqs = [[scalar_in(x) for x in row] for row in _field(c, "ineqs")]
        gam = [[scalar_in(x) for x in row] for row in _field(c, "gamma")]
        cones.append((c.get("name", f"cone {i + 1}"), ineqs, gam))
    if not cones:
        raise SchemaError("an envelope needs at least one cone")
    rank = obj.get("rank", len(cones[0][2]))
    return NefEnvelope.build(int(rank), cones)


def envelope_to_json(env: NefEnvelope) -> dict:
    return {"rank": env.rank, "cones": [
        {"name": c.name,
         "ineqs": [[scalar_to_json(x) for x in row] for row in c.ineqs],
         "gamma": [[scalar_to_json(x) for x in row] for row in c.gamma]} for c in env.cones]}
