import json
import subprocess
import sys

import pytest

from arboreal.cli import RunConfig, main, run_batch, run_classify

EXAMPLES = [
    ["--gamma", "0", "--c", "t", "--max-level", "10"],
    ["--gamma", "0", "--c", "t", "--base-change", "-t^2-1"],
    ["--gamma", "t", "--c", "t+1"],
]


def run_cli(args, tmp_path=None):
    return subprocess.run([sys.executable, "-m", "arboreal", *args], capture_output=True, text=True,
                          cwd=tmp_path)


def cli_json(capsys, args):
    assert main([*args, "--output", "json"]) == 0
    return json.loads(capsys.readouterr().out)


def bound(rep, kind):
    return next(b for b in rep["bounds"] if b["kind"] == kind)


def test_x2_plus_t(capsys):
    rep = cli_json(capsys, EXAMPLES[0])
    assert rep["stability"]["verdict"] == "certified_stable"
    assert rep["stability"]["checked_bound"] == 8
    assert [lv["verdict"] for lv in rep["levels"]] == ["certified_maximal"] * 10
    assert bound(rep, "part1")["log2_bound"] == 65519
    assert bound(rep, "accumulated")["log2_bound"] == 64506
    assert rep["index"]["sharp_log2"] == 0


def test_base_change_example(capsys):
    rep = cli_json(capsys, EXAMPLES[1])
    bc = rep["base_change"]
    assert bc["factorization"]["irreducible"]
    lv2 = next(lv for lv in bc["levels"] if lv["n"] == 2)
    assert lv2["verdict"] == "non_maximal_exact" and lv2["deficit"] == 1
    assert bc["index"]["sharp_log2"] == 1
    by_base = {b["inputs"]["base_kind"]: b for b in bc["bounds"]}
    assert by_base["part1"]["log2_bound"] == 65520 and by_base["part1"]["factor"] == 2
    assert by_base["accumulated"]["log2_bound"] == 64507


def test_isotrivial_example(capsys):
    rep = cli_json(capsys, EXAMPLES[2])
    assert rep["class"]["isotrivial"] and rep["class"]["pcf"]["kind"] == "infinite"
    assert bound(rep, "part3_count")["log2_bound"] == 0
    assert bound(rep, "pink")["log2_bound"] == 0
    assert all(lv["verdict"] == "certified_maximal" for lv in rep["levels"])


def test_json_top_level_keys(capsys):
    rep = cli_json(capsys, EXAMPLES[2])
    assert {"map", "class", "stability", "levels", "bounds", "identities", "version"} <= set(rep)
    assert {"n", "verdict", "witness"} <= set(rep["levels"][0])
    assert {"kind", "log2_bound", "threshold_level"} <= set(rep["bounds"][0])


def test_json_is_byte_identical_across_runs():
    args = EXAMPLES[1] + ["--output", "json"]
    a, b = run_cli(args), run_cli(args)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_text_and_json_verdicts_agree():
    for args in EXAMPLES:
        rep = run_classify(RunConfig(args[1], args[3], max_level=6))
        text = rep.to_text()
        data = json.loads(rep.to_json())
        assert data["stability"]["verdict"] in text
        for lv in data["levels"]:
            assert f"level {lv['n']}: {lv['verdict']}" in text
        for b in data["bounds"]:
            assert f"bound {b['kind']}: {b['log2_bound']}" in text


def test_batch_matches_single_runs(tmp_path, capsys):
    path = tmp_path / "maps.txt"
    path.write_text("# three examples\n" + "\n".join(" ".join(f'"{a}"' for a in args) for args in EXAMPLES) + "\n\n")
    out = list(run_batch(str(path)))
    assert [ln for ln, _, _ in out] == [2, 3, 4]
    for (_, rep, err), args in zip(out, EXAMPLES):
        assert err is None
        assert rep.to_dict() == cli_json(capsys, args)
    par = list(run_batch(str(path), workers=2))
    assert [r.to_json() for _, r, _ in par] == [r.to_json() for _, r, _ in out]


def test_batch_empty_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    res = run_cli(["--batch", str(path)])
    assert res.returncode == 0 and res.stdout == ""


def test_batch_malformed_line(tmp_path, capsys):
    path = tmp_path / "maps.txt"
    path.write_text('--gamma t --c "t+1" --max-level 3\n--gamma "t^" --c t\n--gamma 0 --c t --max-level 2\n')
    assert main(["--batch", str(path), "--output", "json"]) == 0
    recs = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [r["line"] for r in recs] == [1, 2, 3]
    assert "error" in recs[1] and "error" not in recs[0] and "error" not in recs[2]
    assert set(recs[1]) == {"line", "error"}


@pytest.mark.parametrize("args,code", [
    (["--gamma", "t^", "--c", "t"], 2),
    (["--gamma", "t"], 2),
    (["--gamma", "0", "--c", "t", "--max-level", "0"], 2),
    (["--gamma", "0", "--c", "t", "--base-change", "5"], 2),
    (["--gamma", "0", "--c", "-t^2", "--max-level", "3"], 0),
    (["--gamma", "t", "--c", "t-1", "--max-level", "3"], 0),
])
def test_exit_codes(args, code, capsys):
    assert main(args) == code


def test_inapplicable_reported_in_band(capsys):
    rep = cli_json(capsys, ["--gamma", "t", "--c", "t-1", "--max-level", "3"])
    assert rep["stability"]["verdict"] == "inapplicable"
    assert rep["levels"] == [] and rep["bounds"] == []


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig("0", "t", max_level=0)
    with pytest.raises(ValueError):
        RunConfig("0", "t", output="xml")
