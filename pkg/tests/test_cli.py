import json

import pytest

from colorfix import io
from colorfix.cli import main
from colorfix.corpus import separating_example


@pytest.fixture
def sep(tmp_path):
    path = tmp_path / "sep.json"
    io.save(separating_example(), path)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_solve_fix(capsys, sep):
    code, out = run(capsys, "solve", sep)
    assert code == 0
    assert "optimum: 3" in out.out and "decision: YES" in out.out
    assert "R 0 2" in out.out


def test_solve_swap(capsys, sep):
    code, out = run(capsys, "solve", sep, "--variant", "swap")
    assert code == 0 and "optimum: 2" in out.out
    assert out.out.splitlines()[-2:] == ["S 0 2", "S 2 1"]


def test_usage_errors(capsys, sep, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "solve")[0] == 2
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "reduce", "--reduction", "prext-fix", sep)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, out = run(capsys, "solve", bad)
    assert code == 2 and "line 1" in out.err


def test_pipeline(capsys, tmp_path):
    src, red = tmp_path / "src.json", tmp_path / "red.json"
    assert run(capsys, "gen", "--kind", "indset", "--n", 4, "--k", 2, "--seed", 1, "--out", src)[0] == 0
    assert run(capsys, "reduce", "--reduction", "indset-3swap", src, "--out", red)[0] == 0
    code, out = run(capsys, "verify", "--replay", "indset", "--source", src, "--instance", red)
    assert code == 0 and "proper: True" in out.out
    small_src, small_red = tmp_path / "s1.json", tmp_path / "r1.json"
    run(capsys, "gen", "--kind", "indset", "--n", 3, "--k", 1, "--seed", 1, "--out", small_src)
    run(capsys, "reduce", "--reduction", "indset-3swap", small_src, "--out", small_red)
    code, out = run(capsys, "solve", small_red)
    assert code == 0 and "variant: swap" in out.out and "decision: YES" in out.out


def test_crosscompose_pipeline(capsys, tmp_path):
    src, red = tmp_path / "b.json", tmp_path / "cc.json"
    run(capsys, "gen", "--kind", "cnf3batch", "--n", 3, "--m", 2, "--t", 2, "--out", src)
    assert run(capsys, "reduce", "--reduction", "cross-compose", src, "--out", red)[0] == 0
    assert io.load(red).instance.k == 26
    code, out = run(capsys, "verify", "--replay", "crosscompose", "--source", src, "--instance", red)
    assert code == 0 and "budget: 26 proper: True" in out.out


def test_planar_and_strip(capsys, tmp_path):
    src = tmp_path / "p.json"
    io.save(io.loads(json.dumps({
        "format_version": 1, "kind": "prext", "n": 3, "edges": [[0, 1], [1, 2]],
        "r": 3, "W": [0, 2], "precoloring": [1, 2],
    })), src)
    red, stripped = tmp_path / "ps.json", tmp_path / "st.json"
    assert run(capsys, "reduce", "--reduction", "planar-swap-promise", src, "--out", red)[0] == 0
    assert run(capsys, "reduce", "--reduction", "strip-promise", red, "--out", stripped)[0] == 0
    assert not io.load(stripped).instance.promise
    code, out = run(capsys, "reduce", "--reduction", "planar-fix-promise", src, "--dimacs")
    assert code == 0 and out.out.startswith("p edge")


def test_lift_and_augment(capsys, tmp_path):
    src, red = tmp_path / "i.json", tmp_path / "r.json"
    run(capsys, "gen", "--kind", "indset", "--n", 2, "--k", 1, "--out", src)
    run(capsys, "reduce", "--reduction", "indset-3swap", src, "--out", red)
    code, out = run(capsys, "reduce", "--reduction", "lift-r", red, "--r", 4)
    assert code == 0 and json.loads(out.out)["r"] == 4
    assert run(capsys, "reduce", "--reduction", "lift-r", red)[0] == 2
    code, out = run(capsys, "reduce", "--reduction", "promise-augment", src)
    assert code == 0 and json.loads(out.out)["promise"] is True
    assert run(capsys, "reduce", "--reduction", "promise-augment", red)[0] == 2


def test_verify_sweep_and_report(capsys, tmp_path):
    rep = tmp_path / "rep.jsonl"
    code, out = run(capsys, "verify", "--sweep", "prext-fix", "--max-n", 3, "--out", rep)
    assert code == 0 and "0 disagreements" in out.out
    code, out = run(capsys, "report", rep)
    assert code == 0 and "prext-fix" in out.out and "ok" in out.out


def test_verify_gadget(capsys):
    code, out = run(capsys, "verify", "--gadget")
    assert code == 0 and out.out.rstrip().endswith("table pass")


def test_report_flags_disagreement(capsys, tmp_path):
    rep = tmp_path / "bad.jsonl"
    rep.write_text(json.dumps({"family": "f", "mode": "exhaustive", "seed": 1, "total": 1,
                               "yes": 1, "no": 0, "disagreements": 1, "skipped": 0}) + "\n")
    code, out = run(capsys, "report", rep)
    assert code == 1 and "DISAGREE" in out.out


def test_env_overrides(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("COLORFIX_MAX_N", "2")
    code, out = run(capsys, "verify", "--sweep", "prext-swap")
    assert code == 0
    small = out.out
    monkeypatch.setenv("COLORFIX_MAX_N", "3")
    _, out = run(capsys, "verify", "--sweep", "prext-swap")
    assert small != out.out
    monkeypatch.setenv("COLORFIX_SEED", "abc")
    assert run(capsys, "verify", "--sweep", "prext-swap")[0] == 2


def test_gen_is_deterministic(capsys, tmp_path):
    outs = []
    for _ in range(2):
        code, out = run(capsys, "gen", "--kind", "prext", "--n", 6, "--seed", 11, "--count", 3)
        assert code == 0
        outs.append(out.out)
    assert outs[0] == outs[1] and len(outs[0].splitlines()) == 3


def test_gen_directory(capsys, tmp_path):
    d = tmp_path / "corpus"
    assert run(capsys, "gen", "--kind", "repair", "--n", 5, "--k", 2, "--count", 3, "--out", d)[0] == 0
    assert sorted(p.name for p in d.iterdir()) == ["repair-0000.json", "repair-0001.json", "repair-0002.json"]
