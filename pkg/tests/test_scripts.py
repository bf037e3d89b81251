import pytest

from gakit.certify import primrec_termination
from gakit.kernel import Judgment, Prover
from gakit.scripts import (
    ScriptError, check_script, format_script, parse_script,
)
from gakit.tactics import tactic_derived
from gakit.terms import Eq, Succ, Var, ZERO, bool_of, nat_of

from conftest import CORPUS


SIMPLE = """
# a two-step proof
theorem succ_refl : [] |- `S(0) = S(0)`
  s0: 0I []
  s1: S=IE.fwd from s0
  qed
"""


def test_parse_and_check_simple(arith):
    results = check_script(SIMPLE, arith)
    assert len(results) == 1
    name, thm = results[0]
    assert name == "succ_refl"
    assert thm.judgment == Judgment(frozenset(), Eq(Succ(ZERO), Succ(ZERO)))


def test_format_parse_roundtrip(arith):
    pv = Prover(arith)
    t = pv.rule("H", (nat_of(Var(0)), (nat_of(Var(1)),)), [])
    t = pv.rule("S=IE.fwd", (), [t])
    proof = pv.emit_for(t)
    text = format_script("succ_nat", t.judgment, proof, arith)
    parsed = parse_script(text, arith)
    assert len(parsed) == 1
    name, claim, proof2 = parsed[0]
    assert name == "succ_nat"
    assert claim == t.judgment
    results = check_script(text, arith)
    assert results[0][1].judgment == t.judgment


def test_termination_proofs_roundtrip(arith):
    for fname in ("add", "sub", "mult", "even"):
        thm, proof = primrec_termination(arith, fname, trace=True)
        text = format_script(f"{fname}_total", thm.judgment, proof, arith)
        results = check_script(text, arith)
        assert results[0][1].judgment == thm.judgment


def test_bundled_scripts_replay(arith):
    for fname in ("add", "sub", "mult", "even"):
        text = (CORPUS / f"{fname}_total.gap").read_text()
        results = check_script(text, arith)
        assert len(results) == 1


def test_multiple_theorems_per_file(arith):
    text = SIMPLE + "\ntheorem zero_refl : [] |- `0 = 0`\n  s0: 0I []\n  qed\n"
    results = check_script(text, arith)
    assert [name for name, _ in results] == ["succ_refl", "zero_refl"]


def test_tactic_output_roundtrips(arith):
    p = Eq(Var(0), ZERO)
    pv = Prover(arith)
    pb = pv.rule("H", (bool_of(p), ()), [])
    thm, proof = tactic_derived(
        arith, "negTI",
        [(pb, pv.emit_for(pb))],
        trace=True)
    text = format_script("neg_bool", thm.judgment, proof, arith)
    assert check_script(text, arith)[0][1].judgment == thm.judgment


def test_wrong_claim_rejected(arith):
    bad = SIMPLE.replace("`S(0) = S(0)`", "`S(0) = 0`")
    with pytest.raises(ScriptError):
        check_script(bad, arith)


def test_malformed_scripts_rejected(arith):
    with pytest.raises(ScriptError):
        parse_script("theorem t : [] |- `0 = 0`\n  s0: bogus\n  qed", arith)
    with pytest.raises(ScriptError):
        parse_script("s0: 0I []", arith)  # step outside a theorem
    with pytest.raises(ScriptError):
        parse_script("theorem t : [] |- `0 = 0`\n  s0: 0I []", arith)  # no qed
    with pytest.raises(ScriptError):
        parse_script(
            "theorem t : [] |- `0 = 0`\n  s0: S=IE.fwd from s9\n  qed", arith)


def test_failing_replay_reports_the_theorem(arith):
    bad = "theorem t : [] |- `0 = 0`\n  s0: 0I []\n  s1: S=IE.rev from s0\n  qed"
    with pytest.raises(ScriptError) as err:
        check_script(bad, arith)
    assert "t" in str(err.value)
