import pytest

from gakit.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

from conftest import ARITH_GAD, CORPUS


@pytest.fixture()
def arith_path(tmp_path):
    p = tmp_path / "arith.gad"
    p.write_text(ARITH_GAD)
    return str(p)


def test_eval(capsys, arith_path):
    assert main(["eval", "add(2, 3)", "--defs", arith_path,
                 "--fuel", "200"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "value:5"


def test_eval_assignment(capsys, arith_path):
    assert main(["eval", "add(v0, v1)", "--defs", arith_path, "--fuel", "200",
                 "--assign", "v0=2,v1=2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "value:4"


def test_eval_out_of_fuel(capsys, arith_path):
    assert main(["eval", "mult(4, 4)", "--defs", arith_path,
                 "--fuel", "5"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "out-of-fuel"


def test_eval_quantifier_elaborates(capsys, arith_path):
    assert main(["eval", "exists x. x = S(0)", "--defs", arith_path,
                 "--fuel", "5000"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "value:1"


def test_fuel_env_default(capsys, arith_path, monkeypatch):
    monkeypatch.setenv("GA_FUEL", "5")
    assert main(["eval", "mult(4, 4)", "--defs", arith_path]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "out-of-fuel"


def test_encode_decode_roundtrip(capsys):
    assert main(["encode", "S(S(0))"]) == EXIT_OK
    code = capsys.readouterr().out.strip()
    assert main(["decode", code]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "S(S(0))"


def test_decode_rejects_garbage(capsys):
    assert main(["decode", "12"]) == EXIT_FAIL


def test_check_bundled_script(capsys, arith_path):
    script = str(CORPUS / "add_total.gap")
    assert main(["check", script, "--defs", arith_path]) == EXIT_OK
    assert capsys.readouterr().out.startswith("ok add_total")


def test_check_bad_script(tmp_path, capsys, arith_path):
    bad = tmp_path / "bad.gap"
    bad.write_text("theorem t : [] |- `0 = 0`\n  s0: S=IE.fwd\n  qed\n")
    assert main(["check", str(bad), "--defs", arith_path]) == EXIT_FAIL


def test_prove_emits_replayable_script(tmp_path, capsys, arith_path):
    out = tmp_path / "add_total.gap"
    assert main(["prove", "add", "--defs", arith_path,
                 "--out", str(out)]) == EXIT_OK
    assert main(["check", str(out), "--defs", arith_path]) == EXIT_OK


def test_prove_unknown_definition(arith_path, capsys):
    assert main(["prove", "nonsense", "--defs", arith_path]) == EXIT_USAGE


def test_parse_error_is_usage(capsys):
    assert main(["eval", "S(S("]) == EXIT_USAGE


def test_harness_single_rule(capsys):
    assert main(["harness", "--rule", "=S", "--cases", "10",
                 "--domain", "3", "--fuel", "200"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "rule: =S" in out and "verdict: ok" in out


def test_harness_canary(capsys):
    assert main(["harness", "--rule", "canary", "--cases", "2",
                 "--domain", "3", "--fuel", "200"]) == EXIT_OK
    assert "counterexample: classical->I" in capsys.readouterr().out


def test_paradox_low_fuel(capsys):
    assert main(["paradox", "--fuel", "1000"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "paradox: liar" in out and "FAIL" not in out
