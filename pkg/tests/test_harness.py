import pytest

from gakit.harness import (
    CANARY_RULE, check_all_rules, check_determinism, check_rule,
    default_defs, default_paradox_cases, missing_generators, paradox_report,
    report_lines,
)
from gakit.kernel import RULES


def test_every_rule_has_a_generator():
    assert missing_generators() == []


@pytest.mark.parametrize("rule", sorted(RULES, key=repr))
def test_rule_preserves_truth_at_desk_scale(rule):
    report = check_rule(rule=rule, cases=40, domain=3, fuel=400, seed=11)
    assert report.cases == 40
    assert report.counterexamples == [], report.lines()


def test_planted_instances_mostly_fire():
    # generators must exercise the firing regime, not just vacuous truth
    for rule in ("=S", "\\/E1", "Ind", "?I1", "defIE.fwd"):
        report = check_rule(rule=rule, cases=50, domain=3, fuel=400, seed=5)
        assert report.satisfied >= 25, (rule, report.satisfied)


def test_canary_detects_the_unsound_rule():
    report = check_rule(rule=CANARY_RULE, cases=3, domain=3, fuel=400, seed=7)
    assert len(report.counterexamples) >= 1
    cex = report.counterexamples[0]
    assert cex.outcome == "out-of-fuel"  # the conclusion never reduces to 1


def test_reports_replay_per_seed():
    a = check_rule(rule="=E", cases=30, domain=3, fuel=300, seed=42)
    b = check_rule(rule="=E", cases=30, domain=3, fuel=300, seed=42)
    assert report_lines([a]) == report_lines([b])


def test_check_all_rules_covers_the_table():
    reports = check_all_rules(cases=2, domain=2, fuel=200, seed=1)
    assert [r.rule for r in reports] == list(RULES)


def test_determinism_sweep():
    report = check_determinism(cases=500, depth=4, fuel=200, seed=3)
    assert report.cases == 500
    assert report.violations == []


def test_paradox_report_low_fuel():
    reports = paradox_report(default_paradox_cases(max_fuel=1000))
    assert {r.name for r in reports} == {
        "liar", "curry", "truthteller", "yablo-0", "yablo-1", "yablo-2"}
    for r in reports:
        assert r.ok, r.lines()
        assert not r.bool_provable


def test_report_serialization_is_line_oriented():
    report = check_rule(rule="=S", cases=5, domain=2, fuel=200, seed=0)
    lines = report_lines([report])
    assert lines[0] == "rule: =S"
    assert any(line.startswith("cases:") for line in lines)
    assert any(line.startswith("verdict:") for line in lines)


def test_default_defs_contain_the_canary_target():
    defs = default_defs()
    assert defs.index_of("liar") is not None
