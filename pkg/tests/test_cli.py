from __future__ import annotations

import io
import json
from fractions import Fraction

import pytest

from gkz_mgm import ParseError, classify
from gkz_mgm.cli import run_command, run_examples
from gkz_mgm.serialize import parse_input, parse_rational, parse_text, report_from_json, report_to_json


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestParsing:
    def test_single_beta(self, tmp_path):
        p = tmp_path / "in.json"
        p.write_text('{"A":[[1,1,1],[0,1,2]],"beta":[["1","1"]]}')
        datum, betas, _ = parse_input(str(p))
        assert [list(r) for r in datum.A] == [[1, 1, 1], [0, 1, 2]]
        assert betas == [(1, 1)]

    def test_box(self):
        _, betas, _ = parse_text('{"A":[[1,1,0],[0,1,2]],"beta_box":{"lo":[-4,-4],"hi":[4,4]}}')
        assert len(betas) == 81

    def test_rationals(self):
        assert parse_rational("-1/2") == Fraction(-1, 2)
        assert parse_rational(3) == 3
        for bad in ("1/0", "x", True, 0.5):
            with pytest.raises(ParseError):
                parse_rational(bad)

    def test_errors(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_text('{"A": [[1, 2]')
        with pytest.raises(ParseError):
            parse_text('{"A":[[1,1,1],[0,1,2]],"beta":[["1/0","1"]]}')
        with pytest.raises(ParseError):
            parse_text('{"A":[[1,1,1],[0,1,2]],"beta":[["1"]]}')
        with pytest.raises(ParseError):
            parse_text('{"A":[[1,1,1],[0,1,2]],"colour":1}')
        with pytest.raises(ParseError):
            parse_text('{"A":[[1,1,1],[0,1,2]],"config":{"budget":0}}')

    def test_config(self):
        _, _, cfg = parse_text('{"A":[[1]],"config":{"budget":10,"kmax":3}}')
        assert cfg.budget == 10 and cfg.kmax == 3


class TestJson:
    def test_round_trip(self, isoms, normal2, zzd):
        for D, beta in ((isoms, (0, 0)), (normal2, (1, 1)), (zzd, (-1, Fraction(-1, 2)))):
            r = classify(D, beta)
            obj = report_to_json(D, r)
            back = report_from_json(D, json.loads(json.dumps(obj)))
            assert report_to_json(D, back) == obj


class TestCommands:
    def test_classify_class_one(self):
        code, out, _ = run("classify", "--example", "111-012", "--beta", "1,1")
        assert code == 0
        assert "U = (C*)³" in out and "V = Ĉ³" in out
        assert "mixed Gauss–Manin: yes" in out

    def test_classify_json(self):
        code, out, _ = run("classify", "--example", "111-012", "--beta", "0,1", "--json")
        assert code == 0
        obj = json.loads(out)
        assert obj["fiber_support_names"] == ["[a3]", "A"]
        assert obj["cofiber_support_names"] == ["[a1]", "A"]
        assert obj["open_sets"]["U"]["text"] == "Ĉ³ ∖ {∂₁-axis}"
        assert obj["open_sets"]["V"]["text"] == "Ĉ³ ∖ {∂₃-axis}"

    def test_lc(self):
        code, out, _ = run("lc", "--example", "five-col", "--face", "empty", "--degree", "0,0,-1", "--json")
        assert code == 0 and json.loads(out)["dims"] == [0, 0, 1, 0]

    def test_sweep_eight_classes(self):
        code, out, _ = run("sweep", "--example", "8isoms", "--box", "-4..4", "--json")
        assert code == 0
        rows = json.loads(out)
        assert sum(r["count"] for r in rows) == 81
        assert len(rows) == 8

    def test_faces_membership_normal(self):
        assert "h = [2, -1]" in run("faces", "--example", "111-012")[1]
        assert "false" in run("membership", "--example", "8isoms", "--face", "3", "--degree", "0,1")[1]
        assert "normal: true" in run("normal", "--matrix", "1,1,1;0,1,2")[1]

    def test_input_file(self, tmp_path):
        p = tmp_path / "in.json"
        p.write_text('{"A":[[1,1,1],[0,1,2]],"beta_box":{"lo":[-1,-1],"hi":[1,1]}}')
        code, out, _ = run("sweep", "--input", str(p))
        assert code == 0 and "distinct" in out

    def test_errors_exit_one(self):
        code, _, err = run("classify", "--matrix", "2", "--beta", "1")
        assert code == 1 and "ZA" in err
        code, _, err = run("classify", "--example", "111-012", "--beta", "1/0,1")
        assert code == 1
        code, _, _ = run("lc", "--example", "111-012", "--face", "2", "--degree", "0,0")
        assert code == 1

    def test_strict_unknown_exit_two(self):
        argv = ["classify", "--matrix", "1,1,1,1;0,3,7,11", "--beta", "5,17", "--budget", "1", "--fast-path-k", "0"]
        assert run(*argv)[0] == 0
        assert run(*argv, "--strict")[0] == 2

    def test_examples_self_test(self):
        code, lines = run_examples()
        assert code == 0, lines
        assert run("examples")[0] == 0
