"""Algebra file format and report serialization.

Algebras are stored as JSON with rationals as exact "p/q" strings, never
floats.  Omitted bracket pairs mean a zero bracket.  Reports serialize with
sorted keys, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import json

from .liealg import InvalidStructureError, LieAlgebra
from .linalg import q_parse, q_str


class AlgebraFileError(ValueError):
    """Raised on a malformed algebra file."""


def serialize_algebra(g: LieAlgebra) -> str:
    brackets = []
    for (i, j) in sorted(g.table):
        v = g.table[(i, j)]
        value = [[k, q_str(x)] for k, x in enumerate(v) if x]
        brackets.append({"i": i, "j": j, "value": value})
    doc = {"dim": g.dim, "labels": list(g.labels), "brackets": brackets}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_algebra(text: str | bytes) -> LieAlgebra:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFileError(f"not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be an object")
    try:
        dim = doc["dim"]
        labels = doc.get("labels")
        brackets = doc.get("brackets", [])
    except KeyError as e:
        raise AlgebraFileError(f"missing field {e}") from None
    if not isinstance(dim, int) or dim < 0:
        raise AlgebraFileError("dim must be a non-negative integer")
    if labels is not None and (
        not isinstance(labels, list) or len(labels) != dim
    ):
        raise AlgebraFileError("labels must list one name per basis vector")
    table = {}
    for rec in brackets:
        try:
            i, j = rec["i"], rec["j"]
            value = rec["value"]
        except (KeyError, TypeError) as e:
            raise AlgebraFileError(f"malformed bracket record: {e}") from None
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < dim):
            raise AlgebraFileError(f"bracket indices ({i}, {j}) out of range or not i < j")
        vec = [q_parse("0")] * dim
        for entry in value:
            try:
                k, s = entry
            except (TypeError, ValueError):
                raise AlgebraFileError("bracket value entries must be [index, 'p/q'] pairs") from None
            if not (isinstance(k, int) and 0 <= k < dim):
                raise AlgebraFileError(f"bracket value index {k} out of range")
            try:
                vec[k] = q_parse(s)
            except (ValueError, ZeroDivisionError, TypeError):
                raise AlgebraFileError(f"bad rational string {s!r}") from None
        if (i, j) in table:
            raise AlgebraFileError(f"duplicate bracket record for ({i}, {j})")
        table[(i, j)] = tuple(vec)
    try:
        return LieAlgebra(dim, table, labels, check=True)
    except InvalidStructureError as e:
        raise AlgebraFileError(str(e)) from None


def check_to_dict(check) -> dict:
    return {"name": check.name, "pass": check.passed, "detail": check.detail}


def report_to_dict(report) -> dict:
    return {
        "name": report.name,
        "ok": report.ok,
        "checks": [check_to_dict(c) for c in report.checks],
        "dims": dict(report.dims),
        "notes": list(report.notes),
    }


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
