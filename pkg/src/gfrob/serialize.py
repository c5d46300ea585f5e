"""Canonical JSON encoding of every value the CLI reads or writes.

Rationals serialize as reduced "p/q" strings with positive q; terms and
keys are emitted in sorted order so identical inputs always produce
byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from . import linalg
from .errors import GfrobError
from .frobenius import FmData, GFrobeniusAlgebra, Metric, Potential
from .groups import FiniteGroup, group_from_table
from .modules import GradedModule, Tensor, graded_module
from .poly import MultiPoly


class ParseError(GfrobError):
    pass


def frac_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def frac_from_str(s: str | int) -> Fraction:
    try:
        if isinstance(s, int):
            return Fraction(s)
        if isinstance(s, str):
            return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}: {exc}") from None
    raise ParseError(f"bad rational {s!r}")


def matrix_to_json(m: Sequence[Sequence[Fraction]]) -> list[list[str]]:
    return [[frac_to_str(x) for x in row] for row in m]


def matrix_from_json(rows: Any) -> linalg.Mat:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    return tuple(tuple(frac_from_str(x) for x in row) for row in rows)


def vector_from_json(row: Any) -> linalg.Vec:
    if not isinstance(row, list):
        raise ParseError("vector must be a list")
    return tuple(frac_from_str(x) for x in row)


def group_to_json(g: FiniteGroup) -> dict:
    return {"order": g.order, "table": [list(row) for row in g.table]}


def group_from_json(obj: Any) -> FiniteGroup:
    if not isinstance(obj, dict) or "table" not in obj:
        raise ParseError("group object needs a 'table' field")
    return group_from_table(obj["table"])


def poly_to_json(p: MultiPoly) -> dict:
    return {
        "vars": list(p.vars),
        "terms": [
            {"exp": list(exp), "coef": frac_to_str(c)} for exp, c in p.sorted_terms()
        ],
    }


def poly_from_json(obj: Any) -> MultiPoly:
    if not isinstance(obj, dict) or "vars" not in obj or "terms" not in obj:
        raise ParseError("polynomial object needs 'vars' and 'terms'")
    terms = {}
    for t in obj["terms"]:
        exp = tuple(int(e) for e in t["exp"])
        terms[exp] = terms.get(exp, Fraction(0)) + frac_from_str(t["coef"])
    return MultiPoly(tuple(obj["vars"]), terms)


def module_to_json(h: GradedModule) -> dict:
    return {
        "group": group_to_json(h.group),
        "dim": h.dim,
        "degrees": list(h.degrees),
        "action": {str(g): matrix_to_json(h.action[g]) for g in h.group.elements()},
    }


def module_from_json(obj: Any) -> GradedModule:
    if not isinstance(obj, dict):
        raise ParseError("module must be an object")
    try:
        group = group_from_json(obj["group"])
        degrees = [int(d) for d in obj["degrees"]]
        action = [matrix_from_json(obj["action"][str(g)]) for g in group.elements()]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed module: {exc}") from None
    return graded_module(group, degrees, action)


def tensor_to_json(t: Tensor) -> dict:
    return {
        "n": t.n,
        "terms": [
            {"idx": list(idx), "coef": frac_to_str(c)} for idx, c in t.sorted_terms()
        ],
    }


def tensor_from_json(obj: Any) -> Tensor:
    if not isinstance(obj, dict) or "n" not in obj or "terms" not in obj:
        raise ParseError("tensor object needs 'n' and 'terms'")
    terms = {}
    for t in obj["terms"]:
        idx = tuple(int(i) for i in t["idx"])
        terms[idx] = terms.get(idx, Fraction(0)) + frac_from_str(t["coef"])
    return Tensor(int(obj["n"]), terms)


def metric_from_json(obj: Any, module: GradedModule) -> Metric:
    if isinstance(obj, dict) and "matrix" in obj:
        return Metric(module, matrix_from_json(obj["matrix"]))
    return Metric(module, matrix_from_json(obj))


def potential_from_json(obj: Any) -> Potential:
    if isinstance(obj, dict) and "names" in obj:
        poly = poly_from_json(obj["potential"] if "potential" in obj else obj["poly"])
        return Potential(tuple(obj["names"]), poly)
    poly = poly_from_json(obj)
    return Potential(poly.vars, poly)


def potential_to_json(p: Potential) -> dict:
    return {"names": list(p.names), "potential": poly_to_json(p.poly)}


def gfa_to_json(a: GFrobeniusAlgebra) -> dict:
    return {
        "module": module_to_json(a.module),
        "metric": matrix_to_json(a.metric),
        "mult": [
            [[frac_to_str(x) for x in a.mult[i][j]] for j in range(a.dim)]
            for i in range(a.dim)
        ],
        "unit": [frac_to_str(x) for x in a.unit],
    }


def gfa_from_json(obj: Any) -> GFrobeniusAlgebra:
    if not isinstance(obj, dict):
        raise ParseError("algebra must be an object")
    try:
        module = module_from_json(obj["module"])
        metric = matrix_from_json(obj["metric"])
        mult = tuple(
            tuple(tuple(frac_from_str(x) for x in row) for row in plane)
            for plane in obj["mult"]
        )
        unit = vector_from_json(obj["unit"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed algebra: {exc}") from None
    return GFrobeniusAlgebra(module, metric, mult, unit)


def fmdata_from_json(obj: Any) -> FmData:
    if not isinstance(obj, dict):
        raise ParseError("Frobenius manifold data must be an object")
    try:
        names = tuple(obj["names"])
        metric = matrix_from_json(obj["metric"])
        poly = poly_from_json(obj["potential"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed manifold data: {exc}") from None
    return FmData(names, metric, poly)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def dumps_line(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
