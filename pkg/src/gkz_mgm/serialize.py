"""Input parsing and exact JSON (de)serialization of reports.

Rationals are written as strings ("3", "-1/2") so that JSON stays exact.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from itertools import product
from typing import Any, Optional, Sequence

from .classify import (
    ClassificationReport,
    Config,
    FaceEntry,
    OpenSetDescription,
    OrbitSupport,
    TriState,
    Verdict,
)
from .cones import GkzDatum, build_datum
from .cosets import CosetSet
from .errors import ParseError

INPUT_KEYS = {"A", "beta", "beta_box", "config"}
CONFIG_KEYS = {"budget", "fast_path_k", "kmax", "box_radius", "sres_backend"}


def parse_rational(x: Any, where: str = "value") -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: invalid rational {x!r}") from None
    raise ParseError(f"{where}: expected an integer or a string \"p/q\", got {x!r}")


def parse_rational_csv(text: str, where: str = "value") -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise ParseError(f"{where}: empty entry in {text!r}")
    return tuple(parse_rational(p, f"{where}[{i}]") for i, p in enumerate(parts))


def fmt_q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v: Sequence) -> list[str]:
    return [fmt_q(x) for x in v]


def box_points(lo: Sequence[int], hi: Sequence[int]) -> list[tuple[Fraction, ...]]:
    if len(lo) != len(hi):
        raise ParseError("beta_box: lo and hi differ in length")
    return [tuple(Fraction(x) for x in p) for p in product(*(range(a, b + 1) for a, b in zip(lo, hi)))]


def _int_list(x: Any, where: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise ParseError(f"{where}: expected a list of integers")
    return x


def parse_config(obj: Any, base: Optional[Config] = None) -> Config:
    base = base or Config()
    if obj is None:
        return base
    if not isinstance(obj, dict):
        raise ParseError("config: expected an object")
    unknown = set(obj) - CONFIG_KEYS
    if unknown:
        raise ParseError(f"config: unknown keys {sorted(unknown)}")
    fields = {k: getattr(base, k) for k in CONFIG_KEYS}
    fields.update(obj)
    try:
        return Config(**fields)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"config: {exc}") from None


def parse_document(doc: Any) -> tuple[GkzDatum, list[tuple[Fraction, ...]], Config]:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    unknown = set(doc) - INPUT_KEYS
    if unknown:
        raise ParseError(f"top level: unknown keys {sorted(unknown)}")
    if "A" not in doc:
        raise ParseError("top level: missing key 'A'")
    A = doc["A"]
    if not isinstance(A, list) or not A:
        raise ParseError("A: expected a nonempty list of rows")
    rows = [_int_list(r, f"A[{i}]") for i, r in enumerate(A)]
    datum = build_datum(rows)
    betas: list[tuple[Fraction, ...]] = []
    for i, b in enumerate(doc.get("beta", [])):
        if not isinstance(b, list):
            raise ParseError(f"beta[{i}]: expected a list")
        vec = tuple(parse_rational(x, f"beta[{i}][{j}]") for j, x in enumerate(b))
        if len(vec) != datum.d:
            raise ParseError(f"beta[{i}]: expected {datum.d} entries, got {len(vec)}")
        betas.append(vec)
    if "beta_box" in doc:
        box = doc["beta_box"]
        if not isinstance(box, dict) or set(box) != {"lo", "hi"}:
            raise ParseError("beta_box: expected an object with keys 'lo' and 'hi'")
        lo = _int_list(box["lo"], "beta_box.lo")
        hi = _int_list(box["hi"], "beta_box.hi")
        if len(lo) != datum.d:
            raise ParseError(f"beta_box: expected {datum.d} coordinates")
        betas.extend(box_points(lo, hi))
    return datum, betas, parse_config(doc.get("config"))


def parse_input(source: str) -> tuple[GkzDatum, list[tuple[Fraction, ...]], Config]:
    """Read the JSON input format from a path, or from stdin when source is "-"."""
    text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
    return parse_text(text)


def parse_text(text: str) -> tuple[GkzDatum, list[tuple[Fraction, ...]], Config]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_document(doc)


# ---------------------------------------------------------------------------
# reports


def _coset_json(datum: GkzDatum, cs: CosetSet) -> list[list[str]]:
    return [fmt_vec(r) for r in cs.representatives]


def _verdict_json(v: Verdict) -> dict:
    return {
        "verdict": v.value.value,
        "witness": fmt_vec(v.witness) if v.witness is not None else None,
        "stage": v.stage,
        "evidence": list(v.evidence),
    }


def _open_json(datum: GkzDatum, o) -> Any:
    if isinstance(o, OpenSetDescription):
        return {
            "text": o.text,
            "excluded_maximal_faces": [list(f.indices) for f in o.excluded_maximal_faces],
            "ideals": [list(i) for i in o.ideal_description],
        }
    return o


def report_to_json(datum: GkzDatum, r: ClassificationReport) -> dict:
    return {
        "A": [list(row) for row in datum.A],
        "beta": fmt_vec(r.beta),
        "faces": [
            {
                "face": datum.face_label(e.face),
                "indices": list(e.face.indices),
                "E": _coset_json(datum, e.ef),
                "Estar": _coset_json(datum, e.estar),
            }
            for e in r.per_face
        ],
        "fiber_support": [list(f.indices) for f in r.fiber_support.faces],
        "cofiber_support": [list(f.indices) for f in r.cofiber_support.faces],
        "fiber_support_names": r.fiber_support.labels(datum),
        "cofiber_support_names": r.cofiber_support.labels(datum),
        "in_EA": r.in_EA,
        "sres": r.sres.value,
        "mgm": _verdict_json(r.mgm),
        "dual_mgm": _verdict_json(r.dual_mgm),
        "open_sets": {k: _open_json(datum, v) for k, v in r.open_sets.items()},
        "errors": list(r.errors),
    }


def _verdict_from(obj: dict) -> Verdict:
    w = obj.get("witness")
    return Verdict(
        TriState(obj["verdict"]),
        tuple(parse_rational(x) for x in w) if w is not None else None,
        obj.get("stage"),
        tuple(obj.get("evidence", ())),
    )


def report_from_json(datum: GkzDatum, obj: dict) -> ClassificationReport:
    entries = []
    for e in obj["faces"]:
        F = datum.face(e["indices"])
        L = datum.lattice_of(F)
        ef = CosetSet(F, tuple(tuple(parse_rational(x) for x in r) for r in e["E"]), L)
        es = CosetSet(F, tuple(tuple(parse_rational(x) for x in r) for r in e["Estar"]), L)
        entries.append(FaceEntry(F, ef, es))
    open_sets = {}
    for k, v in obj["open_sets"].items():
        if isinstance(v, dict):
            open_sets[k] = OpenSetDescription(
                tuple(datum.face(ix) for ix in v["excluded_maximal_faces"]),
                tuple(tuple(i) for i in v["ideals"]),
                v["text"],
            )
        else:
            open_sets[k] = v
    return ClassificationReport(
        beta=tuple(parse_rational(x) for x in obj["beta"]),
        per_face=entries,
        fiber_support=OrbitSupport(tuple(datum.face(ix) for ix in obj["fiber_support"])),
        cofiber_support=OrbitSupport(tuple(datum.face(ix) for ix in obj["cofiber_support"])),
        in_EA=obj["in_EA"],
        sres=TriState(obj["sres"]),
        mgm=_verdict_from(obj["mgm"]),
        dual_mgm=_verdict_from(obj["dual_mgm"]),
        open_sets=open_sets,
        errors=list(obj["errors"]),
    )


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
