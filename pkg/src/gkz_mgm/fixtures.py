"""Bundled example data and the self-test summaries compared by ``gkz-mgm examples``."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

from .classify import Config, cofiber_support, fiber_support, sweep
from .cones import GkzDatum, build_datum, is_normal
from .ishida import graded_lc_dims, strongly_exceptional_contains
from .serialize import box_points, fmt_q, fmt_vec

FIXTURES: dict[str, list[list[int]]] = {
    "8isoms": [[1, 1, 0], [0, 1, 2]],
    "111-012": [[1, 1, 1], [0, 1, 2]],
    "five-col": [[1, 0, 1, 0, 0], [0, 1, 0, 1, 0], [0, 0, 1, 1, 2]],
    # Hilbert basis of the cone {3x - 2y >= 0, x + 2y >= 0}
    "zzd": [[2, 1, 1, 2], [-1, 0, 1, 3]],
}


def fixture_datum(name: str) -> GkzDatum:
    if name not in FIXTURES:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(FIXTURES)}")
    return build_datum(FIXTURES[name])


def _base(datum: GkzDatum) -> dict:
    return {
        "A": [list(r) for r in datum.A],
        "normal": is_normal(datum),
        "faces": [datum.face_label(f) for f in datum.faces],
        "facets": {datum.face_label(g): list(h.row) for g, h in datum.facets},
    }


def _sweep_json(datum: GkzDatum, lo: int, hi: int, config: Config) -> list[dict]:
    rows = sweep(datum, box_points([lo] * datum.d, [hi] * datum.d), config)
    return [
        {
            "fiber": r.fiber_support.labels(datum),
            "cofiber": r.cofiber_support.labels(datum),
            "count": r.count,
            "example": fmt_vec(r.example),
            "mgm": list(r.mgm),
            "dual_mgm": list(r.dual_mgm),
        }
        for r in rows
    ]


def fixture_summary(name: str, config: Config | None = None) -> dict[str, Any]:
    config = config or Config()
    datum = fixture_datum(name)
    out = _base(datum)
    if name == "111-012":
        out["sweep[-3,3]"] = _sweep_json(datum, -3, 3, config)
    elif name == "8isoms":
        out["sweep[-4,4]"] = _sweep_json(datum, -4, 4, config)
    elif name == "five-col":
        empty = datum.empty_face
        degrees = [(0, 0, -1), (0, 0, -2), (0, 0, -3), (0, 0, 1), (1, 0, -1), (0, 1, -3)]
        out["lc_empty_face"] = {
            ",".join(map(str, a)): list(graded_lc_dims(datum, empty, a).dims) for a in degrees
        }
        betas = [(0, 0, Fraction(-1, 2)), (0, 0, -1), (0, 0, -2), (1, 0, -1), (1, 1, 1)]
        out["strongly_exceptional"] = {
            ",".join(fmt_vec(b)): [
                datum.face_label(F) for F in datum.faces if strongly_exceptional_contains(datum, F, b)
            ]
            for b in betas
        }
    elif name == "zzd":
        betas = [(-1, Fraction(-1, 2)), (1, Fraction(1, 2))]
        out["parameters"] = {
            ",".join(fmt_vec(b)): {
                "h": {datum.face_label(g): fmt_q(h(b)) for g, h in datum.facets},
                "fiber": fiber_support(datum, b, config).labels(datum),
                "cofiber": cofiber_support(datum, b, config).labels(datum),
            }
            for b in betas
        }
    return out


def expected_summaries() -> dict[str, Any]:
    text = resources.files("gkz_mgm").joinpath("data/expected.json").read_text(encoding="utf-8")
    return json.loads(text)
