import json

import pytest

from kernelforge.cli import main
from kernelforge.graph import parse_graph


@pytest.fixture
def instance(tmp_path):
    path = tmp_path / "g.gr"
    assert main(["gen", "--kind", "random-modulated", "--param", "n=12", "--param", "k=2",
                 "--param", "d=1", "--seed", "7", "--graph-out", str(path)]) == 0
    return path


def run_json(capsys, args):
    capsys.readouterr()
    code = main(args + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if code == 0 else None


def test_gen_writes_pace(instance):
    g = parse_graph(instance.read_text())
    assert g.n == 12
    assert "c kind random-modulated" in instance.read_text()


def test_decompose_report(tmp_path, instance):
    out = tmp_path / "report.json"
    assert main(["decompose", "--input", str(instance), "--d", "2", "--t", "3", "--out", str(out),
                 "--format", "json"]) == 0
    report = json.loads(out.read_text())
    assert report["schema"] == 1 and report["command"] == "decompose"
    assert {"y0", "clusters", "marked_bags"} <= report.keys()


def test_kernelize_lp_verify(capsys, instance):
    assert main(["kernelize-lp", "--input", str(instance), "--d", "1", "--verify"]) == 0
    assert "verified: longest path preserved" in capsys.readouterr().out


def test_build_table_and_reuse(tmp_path, capsys, instance):
    table = tmp_path / "vc.tbl"
    assert main(["build-table", "--problem", "vc", "--t", "2", "--d", "2", "--max-n", "6",
                 "--out", str(table)]) == 0
    assert "stabilized" in capsys.readouterr().out
    assert json.loads(table.read_text())["format"] == "kernelforge-representative-table"
    code, report = run_json(capsys, ["kernelize", "--input", str(instance), "--d", "1", "--t", "3",
                                     "--problem", "vc", "--table", str(table), "--verify"])
    assert code == 0 and report["verify"]["ok"]
    code, _ = run_json(capsys, ["kernelize", "--input", str(instance), "--d", "1",
                                "--problem", "lp", "--table", str(table)])
    assert code == 2


def test_kernelize_lp_problem(capsys, instance, tmp_path):
    out = tmp_path / "k.gr"
    code, report = run_json(capsys, ["kernelize", "--input", str(instance), "--d", "1", "--t", "3",
                                     "--problem", "lp", "--verify", "--graph-out", str(out)])
    assert code == 0 and report["verify"]["ok"]
    assert parse_graph(out.read_text()).n == report["n_after"]


@pytest.mark.parametrize("args,key", [
    (["modulator", "--d", "1"], "modulator"),
    (["modulator", "--d", "1", "--exact"], "modulator"),
    (["profile", "--ranks", "0,1"], "grad"),
    (["oracle", "--problem", "lp"], "value"),
    (["oracle", "--problem", "vc"], "value"),
    (["oracle", "--problem", "td"], "value"),
])
def test_other_commands(capsys, instance, args, key):
    code, report = run_json(capsys, args[:1] + ["--input", str(instance)] + args[1:])
    assert code == 0 and key in report


def test_usage_errors(capsys, tmp_path):
    assert main(["decompose", "--d", "1"]) == 2
    assert main(["decompose", "--input", str(tmp_path / "missing.gr"), "--d", "1"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["gen", "--kind", "apex-pendants", "--param", "k"]) == 2
    assert main(["gen", "--kind", "apex-pendants", "--threads", "0"]) == 2


def test_contract_violations(tmp_path, capsys):
    bad = tmp_path / "bad.gr"
    bad.write_text("p gr 2 2\n1 2\n")
    assert main(["oracle", "--input", str(bad), "--problem", "vc"]) == 1
    big = tmp_path / "big.gr"
    big.write_text("p gr 20 19\n" + "".join(f"{i} {i + 1}\n" for i in range(1, 20)))
    assert main(["oracle", "--input", str(big), "--problem", "lp"]) == 1
    err = capsys.readouterr().err
    assert "contract violation" in err and "exceeds budget" in err


def test_reports_are_deterministic(tmp_path, instance):
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        assert main(["kernelize", "--input", str(instance), "--d", "1", "--problem", "vc",
                     "--format", "json", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
