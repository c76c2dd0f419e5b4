"""Command line interface: ``gkz-mgm <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .classify import (
    Config,
    TriState,
    classify,
    cofiber_support,
    ef_set,
    estar,
    fiber_support,
    open_set_description,
    sres_contains,
    sweep,
)
from .cones import Face, GkzDatum, build_datum, is_normal
from .errors import GkzError, NotClosedComplement, ParseError
from .fixtures import FIXTURES, expected_summaries, fixture_datum, fixture_summary
from .ishida import graded_lc_dims
from .lattice import as_int_vector
from .membership import find_nonneg_combination, in_localized_semigroup, zonotope_lattice_points
from .serialize import (
    box_points,
    dumps,
    fmt_vec,
    parse_config,
    parse_input,
    parse_rational_csv,
    report_to_json,
)

COMMANDS = (
    "faces",
    "normal",
    "membership",
    "lc",
    "ef",
    "efstar",
    "supports",
    "sres",
    "classify",
    "sweep",
    "examples",
)


class _Context:
    def __init__(self, datum: GkzDatum, betas: list, config: Config) -> None:
        self.datum = datum
        self.betas = betas
        self.config = config


def _parse_matrix(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise ParseError(f"--matrix: expected rows like '1,1,1;0,1,2', got {text!r}") from None


def _parse_box(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise ParseError(f"--box: expected 'a..b', got {text!r}") from None


def parse_face(datum: GkzDatum, text: Optional[str]) -> Face:
    """'empty', 'A', or a 1-based column list such as '1,3' or '[a1,a3]'."""
    if text is None or text.strip() in ("empty", "∅", "{}", "[]"):
        return datum.empty_face
    t = text.strip()
    if t in ("A", "all"):
        return datum.full_face
    t = t.strip("[]")
    try:
        idx = [int(p.strip().lstrip("a")) - 1 for p in t.split(",")]
    except ValueError:
        raise ParseError(f"--face: cannot read {text!r}") from None
    if any(i < 0 or i >= datum.n for i in idx):
        raise ParseError(f"--face: column index out of range in {text!r}")
    return datum.face(idx)


def _context(args: argparse.Namespace) -> _Context:
    sources = [x for x in (args.example, args.matrix, args.input) if x is not None]
    if len(sources) != 1:
        raise ParseError("give exactly one of --example, --matrix, --input")
    betas: list = []
    config = Config()
    if args.example is not None:
        datum = fixture_datum(args.example)
    elif args.matrix is not None:
        datum = build_datum(_parse_matrix(args.matrix))
    else:
        datum, betas, config = parse_input(args.input)
    overrides = {}
    for name in ("budget", "kmax", "box_radius", "fast_path_k", "sres_backend"):
        val = getattr(args, name, None)
        if val is not None:
            overrides[name] = val
    config = parse_config(overrides, config)
    if args.beta is not None:
        b = parse_rational_csv(args.beta, "--beta")
        if len(b) != datum.d:
            raise ParseError(f"--beta: expected {datum.d} entries")
        betas = [b]
    if args.box is not None:
        lo, hi = _parse_box(args.box)
        betas = box_points([lo] * datum.d, [hi] * datum.d)
    return _Context(datum, betas, config)


def _degree(ctx: _Context, args) -> tuple[int, ...]:
    if args.degree is None:
        raise ParseError("--degree is required")
    v = parse_rational_csv(args.degree, "--degree")
    if len(v) != ctx.datum.d or any(x.denominator != 1 for x in v):
        raise ParseError(f"--degree: expected {ctx.datum.d} integers")
    return as_int_vector(v)


def _need_betas(ctx: _Context) -> list:
    if not ctx.betas:
        raise ParseError("no parameter given: use --beta, --box or an input file with 'beta'")
    return ctx.betas


# ---------------------------------------------------------------------------
# commands; each returns (payload, text lines, unknown flag)


def cmd_faces(ctx: _Context, args):
    d = ctx.datum
    payload = {
        "A": [list(r) for r in d.A],
        "epsilon_A": list(d.epsilon_A),
        "faces": [
            {"face": d.face_label(f), "indices": list(f.indices), "rank": f.rank, "witness": list(f.witness)}
            for f in d.faces
        ],
        "facets": [{"face": d.face_label(g), "support_function": list(h.row)} for g, h in d.facets],
    }
    lines = [f"{'face':<16} {'rank':>4}  witness"]
    lines += [f"{d.face_label(f):<16} {f.rank:>4}  {list(f.witness)}" for f in d.faces]
    lines.append("")
    lines += [f"facet {d.face_label(g):<12} h = {list(h.row)}" for g, h in d.facets]
    return payload, lines, False


def cmd_normal(ctx: _Context, args):
    d = ctx.datum
    pts = zonotope_lattice_points(d.A)
    normal = is_normal(d)
    payload = {"normal": normal, "zonotope_points": [list(p) for p in pts]}
    return payload, [f"normal: {str(normal).lower()}", f"zonotope lattice points: {[list(p) for p in pts]}"], False


def cmd_membership(ctx: _Context, args):
    d = ctx.datum
    alpha = _degree(ctx, args)
    F = parse_face(d, args.face)
    member = in_localized_semigroup(d, F, alpha, budget=ctx.config.budget, fast_path_k=ctx.config.fast_path_k)
    payload = {"degree": list(alpha), "face": d.face_label(F), "member": member}
    lines = [f"{list(alpha)} in NA - N{d.face_label(F)}: {str(member).lower()}"]
    if member and not F.indices:
        u = find_nonneg_combination(d.A, alpha, budget=ctx.config.budget)
        payload["witness"] = list(u)
        lines.append(f"witness u = {list(u)}")
    return payload, lines, False


def cmd_lc(ctx: _Context, args):
    d = ctx.datum
    alpha = _degree(ctx, args)
    F = parse_face(d, args.face)
    prof = graded_lc_dims(d, F, alpha, budget=ctx.config.budget, fast_path_k=ctx.config.fast_path_k)
    payload = {"degree": list(alpha), "face": d.face_label(F), "dims": list(prof.dims)}
    return payload, [f"face {d.face_label(F)}, degree {list(alpha)}: dims {list(prof.dims)}"], False


def _coset_cmd(ctx: _Context, args, fn, label):
    d = ctx.datum
    F = parse_face(d, args.face)
    out, lines = [], []
    for b in _need_betas(ctx):
        cs = fn(d, F, b, ctx.config)
        reps = [fmt_vec(r) for r in cs.representatives]
        out.append({"beta": fmt_vec(b), "face": d.face_label(F), label: reps})
        lines.append(f"beta ({','.join(fmt_vec(b))})  {label}_{d.face_label(F)} = {_fmt_cosets(cs.representatives)}")
    return (out[0] if len(out) == 1 else out), lines, False


def cmd_ef(ctx, args):
    return _coset_cmd(ctx, args, ef_set, "E")


def cmd_efstar(ctx, args):
    return _coset_cmd(ctx, args, estar, "Estar")


def _open_text(d, supp) -> str:
    try:
        return open_set_description(d, supp).text
    except NotClosedComplement as exc:
        return f"not open ({exc})"


def cmd_supports(ctx: _Context, args):
    d = ctx.datum
    out, lines = [], []
    for b in _need_betas(ctx):
        f = fiber_support(d, b, ctx.config)
        c = cofiber_support(d, b, ctx.config)
        rec = {
            "beta": fmt_vec(b),
            "fiber_support": f.labels(d),
            "cofiber_support": c.labels(d),
            "U": _open_text(d, f),
            "V": _open_text(d, c),
        }
        out.append(rec)
        lines.append(f"beta ({','.join(fmt_vec(b))}): fiber {f.labels(d)}  cofiber {c.labels(d)}  U = {rec['U']}  V = {rec['V']}")
    return (out[0] if len(out) == 1 else out), lines, False


def cmd_sres(ctx: _Context, args):
    d = ctx.datum
    out, lines, unknown = [], [], False
    for b in _need_betas(ctx):
        s = sres_contains(d, b, ctx.config)
        unknown |= s is TriState.UNKNOWN
        out.append({"beta": fmt_vec(b), "strongly_resonant": s.value})
        lines.append(f"beta ({','.join(fmt_vec(b))}): strongly resonant = {s.value}")
    return (out[0] if len(out) == 1 else out), lines, unknown


def _report_lines(d: GkzDatum, r) -> list[str]:
    lines = [f"beta = ({','.join(fmt_vec(r.beta))})"]
    lines.append(f"{'face':<16} {'E_F':<28} E*_F")
    for e in r.per_face:
        lines.append(
            f"{d.face_label(e.face):<16} {_fmt_cosets(e.ef.representatives):<28} {_fmt_cosets(e.estar.representatives)}"
        )
    lines.append(f"fiber support:   {r.fiber_support.labels(d)}")
    lines.append(f"cofiber support: {r.cofiber_support.labels(d)}")
    for k in ("U", "V"):
        if k in r.open_sets:
            lines.append(f"{k} = {r.open_sets[k]}")
    lines.append(f"exceptional: {str(r.in_EA).lower()}   strongly resonant: {r.sres.value}")
    for name, v in (("mixed Gauss–Manin", r.mgm), ("dual mixed Gauss–Manin", r.dual_mgm)):
        w = f"  witness ({','.join(fmt_vec(v.witness))}) [{v.stage}]" if v.witness is not None else ""
        lines.append(f"{name}: {v.value.value}{w}")
        lines += [f"    {e}" for e in v.evidence]
    lines += [f"error: {e}" for e in r.errors]
    return lines


def cmd_classify(ctx: _Context, args):
    d = ctx.datum
    out, lines, unknown = [], [], False
    for b in _need_betas(ctx):
        r = classify(d, b, ctx.config)
        unknown |= r.has_unknown
        out.append(report_to_json(d, r))
        lines += _report_lines(d, r) + [""]
    return (out[0] if len(out) == 1 else out), lines[:-1], unknown


def cmd_sweep(ctx: _Context, args):
    d = ctx.datum
    rows = sweep(d, _need_betas(ctx), ctx.config)
    payload = [
        {
            "fiber": r.fiber_support.labels(d),
            "cofiber": r.cofiber_support.labels(d),
            "count": r.count,
            "example": fmt_vec(r.example),
            "mgm": list(r.mgm),
            "dual_mgm": list(r.dual_mgm),
        }
        for r in rows
    ]
    unknown = any("unknown" in r.mgm or "unknown" in r.dual_mgm for r in rows)
    head = f"{'#':>2}  {'fiber support':<28} {'cofiber support':<28} {'count':>5}  {'example':<12} mgm / dual"
    lines = [head]
    for i, p in enumerate(payload, 1):
        lines.append(
            f"{i:>2}  {','.join(p['fiber']):<28} {','.join(p['cofiber']):<28} {p['count']:>5}  "
            f"{'(' + ','.join(p['example']) + ')':<12} {'/'.join(p['mgm'])} / {'/'.join(p['dual_mgm'])}"
        )
    lines.append(f"{len(payload)} distinct (fiber, cofiber) pairs over {sum(p['count'] for p in payload)} parameters")
    return payload, lines, unknown


def run_examples(write: bool = False) -> tuple[int, list[str]]:
    current = {name: fixture_summary(name) for name in FIXTURES}
    if write:
        from importlib import resources

        path = resources.files("gkz_mgm").joinpath("data/expected.json")
        with open(str(path), "w", encoding="utf-8") as fh:
            fh.write(dumps(current) + "\n")
        return 0, [f"wrote {path}"]
    expected = expected_summaries()
    lines, bad = [], 0
    for name in FIXTURES:
        cur = json.loads(dumps(current[name]))
        exp = expected.get(name)
        if cur == exp:
            lines.append(f"ok     {name}")
            continue
        bad += 1
        lines.append(f"DRIFT  {name}")
        for key in sorted(set(cur) | set(exp or {})):
            a, b = (exp or {}).get(key), cur.get(key)
            if a != b:
                lines.append(f"    {key}: expected {json.dumps(a, ensure_ascii=False)}")
                lines.append(f"    {' ' * len(key)}  got      {json.dumps(b, ensure_ascii=False)}")
    return (1 if bad else 0), lines


HANDLERS = {
    "faces": cmd_faces,
    "normal": cmd_normal,
    "membership": cmd_membership,
    "lc": cmd_lc,
    "ef": cmd_ef,
    "efstar": cmd_efstar,
    "supports": cmd_supports,
    "sres": cmd_sres,
    "classify": cmd_classify,
    "sweep": cmd_sweep,
}


_VALUE_FLAGS = ("--box", "--beta", "--degree", "--face")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Let vector flags take values starting with '-' (e.g. --box -4..4)."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _fmt_cosets(reps) -> str:
    if not reps:
        return "∅"
    return "{" + ", ".join("(" + ",".join(fmt_vec(r)) + ")" for r in reps) + "}"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gkz-mgm",
        description="Supports, exceptional sets and mixed Gauss–Manin tests for A-hypergeometric parameters.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        if name == "examples":
            sp.add_argument("--write", action="store_true", help=argparse.SUPPRESS)
            continue
        src = sp.add_argument_group("input")
        src.add_argument("--example", choices=sorted(FIXTURES))
        src.add_argument("--matrix", help="rows separated by ';', entries by ','")
        src.add_argument("--input", help="JSON input file, or '-' for stdin")
        sp.add_argument("--strict", action="store_true", help="exit 2 when a verdict is unknown")
        sp.add_argument("--budget", type=int, help="membership node budget")
        sp.add_argument("--kmax", type=int, help="witness search length along epsilon_A")
        sp.add_argument("--box-radius", dest="box_radius", type=int, help="radius of the secondary witness box")
        sp.add_argument("--fast-path-k", dest="fast_path_k", type=int, help="localization fast-path bound")
        sp.add_argument("--backend", dest="sres_backend", choices=["auto", "normal", "exact"])
        sp.add_argument("--box", help="integer grid a..b in every coordinate")
        sp.add_argument("--face", help="'empty', 'A' or 1-based columns like 1,3")
        sp.add_argument("--degree", help="integer vector, comma separated")
        sp.add_argument("--beta", help="rational vector, comma separated (e.g. 0,-1/2)")
    return p


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0) and 1
    try:
        if args.command == "examples":
            code, lines = run_examples(write=args.write)
            if args.json:
                print(dumps({"ok": code == 0, "lines": lines}), file=out)
            else:
                print("\n".join(lines), file=out)
            return code
        ctx = _context(args)
        payload, lines, unknown = HANDLERS[args.command](ctx, args)
    except (GkzError, ValueError, KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 1
    print(dumps(payload) if args.json else "\n".join(lines), file=out)
    return 2 if (args.strict and unknown) else 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
