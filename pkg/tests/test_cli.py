import json

import pytest
from click.testing import CliRunner

from ovalcodes.cli import cli
from ovalcodes.gf2m import ExtFieldCtx, field_new

QUIET = ["--log-level", "ERROR"]


def run(*args):
    return CliRunner().invoke(cli, QUIET + list(args), obj={})


def test_opoly_list_m3():
    result = run("opoly", "list", "--m", "3", "--format", "json")
    assert result.exit_code == 0, result.output
    families = [row["family"] for row in json.loads(result.output)]
    assert len(families) == 8
    assert families.count("subiaco") == 1
    for name in ("translation", "segre", "glynn_a", "glynn_b", "cherowitzo", "payne"):
        assert name in families


def test_opoly_list_m4_pretty():
    result = run("opoly", "list", "--m", "4")
    assert result.exit_code == 0
    assert "adelaide" in result.output
    assert "subiaco" in result.output


def test_opoly_list_m1_is_an_error():
    result = run("opoly", "list", "--m", "1")
    assert result.exit_code == 2


def test_opoly_list_requires_m():
    assert run("opoly", "list").exit_code == 2


def test_opoly_verify_pass_and_fail():
    ok = run("opoly", "verify", "--family", "segre", "--m", "5")
    assert ok.exit_code == 0
    assert ok.output.count("PASS") == 4

    bad = run("opoly", "verify", "--family", "segre", "--m", "4")
    assert bad.exit_code == 1
    assert "FAIL" in bad.output
    assert "witness" in bad.output


def test_opoly_verify_translation_gcd_error():
    result = run("opoly", "verify", "--family", "translation", "--m", "4", "--h", "2")
    assert result.exit_code == 2


@pytest.mark.parametrize("args", [
    ["opoly", "verify", "--family", "hermitian"],
    ["opoly", "verify", "--family", "translation", "--h", "9"],
    ["verify", "theorem", "4.1", "--family", "nosuchfamily"],
    ["verify", "theorem", "4.1", "--family", "adelaide"],
])
def test_sweep_with_nothing_to_verify_is_an_error(args):
    result = run(*args)
    assert result.exit_code == 2
    assert "error:" in result.output


def test_opoly_verify_sweep_skips_inapplicable_m():
    result = run("opoly", "verify", "--family", "glynn_b", "--format", "json")
    assert result.exit_code == 0, result.output
    assert [report["m"] for report in json.loads(result.output)] == [3, 7]


def test_opoly_verify_adelaide_beta_override():
    beta = next(b for b in ExtFieldCtx(field_new(4)).unit_circle() if b != (1, 0))
    ok = run("opoly", "verify", "--family", "adelaide", "--m", "4", "--beta", str(beta[0]), str(beta[1]),
             "--format", "json")
    assert ok.exit_code in (0, 1), ok.output
    verdicts = {c["criterion"]: c["verdict"] for c in json.loads(ok.output)[0]["criteria"]}
    assert verdicts["oval (Segre)"] == verdicts["2-to-1"] == verdicts["slope"] == "PASS"
    assert run("opoly", "verify", "--family", "adelaide", "--m", "4", "--beta", "1", "0").exit_code == 2
    assert run("opoly", "verify", "--family", "adelaide", "--m", "4", "--beta", "99", "0").exit_code == 2


def test_unknown_log_level_is_an_error():
    result = CliRunner().invoke(cli, ["--log-level", "CHATTY", "opoly", "list", "--m", "3"], obj={})
    assert result.exit_code == 2
    assert not isinstance(result.exception, ValueError)


def test_code_build_and_analyze(tmp_path):
    out = tmp_path / "c.json"
    built = run("code", "build", "--construction", "cf", "--family", "segre", "--m", "3", "--out", str(out))
    assert built.exit_code == 0, built.output
    matrix = json.loads(out.read_text(encoding="utf-8"))
    assert (matrix["k"], matrix["n"]) == (3, 9)

    csv_path = tmp_path / "w.csv"
    analyzed = run("code", "analyze", str(out), "--csv", str(csv_path))
    assert analyzed.exit_code == 0
    assert "[9,3,6] NMDS, Griesmer almost-optimal" in analyzed.output
    assert csv_path.read_text(encoding="utf-8").startswith("weight,count\n")


def test_code_build_is_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        run("code", "build", "--construction", "extended", "--family", "translation",
            "--m", "4", "--h", "1", "--out", str(path))
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text(encoding="utf-8"))["n"] == 19


def test_extended_analyze_reports_distance_optimal(tmp_path):
    out = tmp_path / "e.json"
    run("code", "build", "--construction", "extended", "--family", "segre", "--m", "3", "--out", str(out))
    result = run("code", "analyze", str(out), "--format", "json")
    report = json.loads(result.output)
    assert report["class"] == "NMDS"
    assert report["distance_optimal"] is True
    assert report["distribution"][8] == 35


def test_unknown_construction_is_a_usage_error(tmp_path):
    result = run("code", "build", "--construction", "rs", "--family", "segre", "--m", "3",
                 "--out", str(tmp_path / "x.json"))
    assert result.exit_code == 2


def test_truncated_code_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"m": 3, "modulus": 11, "generator": [[1, 2', encoding="utf-8")
    result = run("code", "analyze", str(path))
    assert result.exit_code == 2


def test_code_file_with_non_integer_generator(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"m": 3, "modulus": 11, "q": 8, "k": 1, "n": 1, "generator": 5}),
                    encoding="utf-8")
    result = run("code", "analyze", str(path))
    assert result.exit_code == 2
    assert "generator" in result.output


def test_budget_exit_code(tmp_path):
    out = tmp_path / "c.json"
    run("code", "build", "--construction", "cf", "--family", "segre", "--m", "3", "--out", str(out))
    result = CliRunner().invoke(cli, QUIET + ["--max-budget", "64", "code", "analyze", str(out)], obj={})
    assert result.exit_code == 3


def test_verify_theorem_pass():
    result = run("verify", "theorem", "4.1", "--family", "segre", "--m", "3")
    assert result.exit_code == 0, result.output
    assert "PASS" in result.output
    for count in ("42", "126", "189", "154"):
        assert count in result.output


def test_verify_theorem_translation_m4():
    result = run("verify", "theorem", "3.1", "--family", "translation", "--m", "4", "--h", "1")
    assert result.exit_code == 0


def test_verify_theorem_refuses_even_m():
    result = run("verify", "theorem", "4.1", "--family", "segre", "--m", "4")
    assert result.exit_code == 2
    assert "m must be odd" in result.output


def test_probe_reports_json():
    result = run("probe", "--construction", "cf", "--family", "translation", "--m", "4", "--h", "1")
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["theorem"] == "4.1"
    assert body["outside_hypotheses"]
