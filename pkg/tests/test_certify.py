import pytest

from gakit.certify import (
    NotPrimRecError, NotValueError, UncertifiableError, eval_certify,
    primrec_termination,
)
from gakit.evaluator import Value, eval_term
from gakit.kernel import Judgment, check_proof
from gakit.parser import load_gad, parse
from gakit.terms import Eq, Neg, Var, bool_of, nat_of, numeral


def _num(defs, text, n, fuel=2000):
    t = parse(text, defs)
    thm, value, proof = eval_certify(defs, t, fuel, kind="num", trace=True)
    assert value == n
    assert thm.judgment == Judgment(frozenset(), Eq(t, numeral(n)))
    assert check_proof(defs, proof)[-1].judgment == thm.judgment


def _bool(defs, text, out, fuel=2000):
    t = parse(text, defs)
    thm, value, proof = eval_certify(defs, t, fuel, kind="bool", trace=True)
    assert value is out
    want = t if out else Neg(t)
    assert thm.judgment == Judgment(frozenset(), want)
    assert check_proof(defs, proof)[-1].judgment == thm.judgment


def test_numeric_certificates(arith):
    _num(arith, "0", 0)
    _num(arith, "S(S(0))", 2)
    _num(arith, "P(S(S(0)))", 1)
    _num(arith, "add(2, 3)", 5)
    _num(arith, "mult(2, 3)", 6)
    _num(arith, "sub(5, 2)", 3)
    _num(arith, "(1 = 1) ? add(1, 1) : 0", 2)
    _num(arith, "(1 = 0) ? 0 : add(2, 2)", 4)


def test_boolean_certificates(arith):
    _bool(arith, "0 = 0", True)
    _bool(arith, "S(0) = 0", False)
    _bool(arith, "2 = 2", True)
    _bool(arith, "3 = 1", False)
    _bool(arith, "~(2 = 1)", True)
    _bool(arith, "~(2 = 2)", False)
    _bool(arith, "add(2, 3) = 5", True)
    _bool(arith, "add(2, 3) = 4", False)
    _bool(arith, "even(4) = 1", True)
    _bool(arith, "gt(4, 2)", True)
    _bool(arith, "1 = 0 \\/ 2 = 2", True)
    _bool(arith, "1 = 0 \\/ 2 = 0", False)


def test_ungrounded_left_disjunct_is_certifiable(paradox):
    # the right disjunct alone carries the value, so the certificate only
    # needs the right derivation
    defs = load_gad("liar := ~liar\nadd(x,y) := (y=0) ? x : S(add(x, P(y)))")
    t = parse("liar \\/ add(1, 1) = 2", defs)
    thm, value, proof = eval_certify(defs, t, 5000, kind="bool", trace=True)
    assert value is True
    assert check_proof(defs, proof)[-1].judgment == thm.judgment


def test_not_value_cases(paradox):
    with pytest.raises(NotValueError):
        eval_certify(paradox, parse("liar", paradox), 5000, kind="bool")
    with pytest.raises(NotValueError):
        eval_certify(paradox, parse("truthteller", paradox), 5000, kind="bool")


def test_uncertifiable_cases(arith):
    # P(0) = 0 holds operationally but has no equational certificate
    with pytest.raises(UncertifiableError):
        eval_certify(arith, parse("P(0)", arith), 100, kind="num")
    # disequalities with the smaller value on the left are underivable
    with pytest.raises(UncertifiableError):
        eval_certify(arith, parse("2 = 5", arith), 100, kind="bool")
    with pytest.raises(UncertifiableError):
        eval_certify(arith, parse("sub(2, 5)", arith), 1000, kind="num")


def test_open_or_impure_terms_rejected(arith):
    with pytest.raises(ValueError):
        eval_certify(arith, parse("v0 = 0", arith), 100, kind="bool")
    with pytest.raises(ValueError):
        eval_certify(arith, parse("forall x. x = x", arith), 100, kind="bool")


def test_certificate_agrees_with_evaluator(arith):
    for text in ("add(3, 4)", "mult(3, 3)", "sub(9, 3)"):
        t = parse(text, arith)
        r = eval_term(arith, {}, t, 5000)
        thm, value, _ = eval_certify(arith, t, 5000, kind="num", trace=True)
        assert isinstance(r, Value) and r.n == value


def test_primrec_termination_all_recursive_definitions(arith):
    for name in ("add", "sub", "mult"):
        thm, proof = primrec_termination(arith, name, trace=True)
        i = arith.index_of(name)
        call = parse(f"{name}(v0, v1)", arith)
        hyps = {nat_of(Var(0)), nat_of(Var(1))}
        assert thm.judgment == Judgment(frozenset(hyps), nat_of(call))
        assert check_proof(arith, proof)[-1].judgment == thm.judgment
    thm, proof = primrec_termination(arith, "even", trace=True)
    assert thm.judgment == Judgment(
        frozenset({nat_of(Var(0))}), nat_of(parse("even(v0)", arith)))
    assert check_proof(arith, proof)[-1].judgment == thm.judgment


def test_boolean_definition_typing(arith):
    thm, proof = primrec_termination(arith, "gt", trace=True)
    assert thm.judgment == Judgment(
        frozenset({nat_of(Var(0)), nat_of(Var(1))}),
        bool_of(parse("gt(v0, v1)", arith)))
    assert check_proof(arith, proof)[-1].judgment == thm.judgment


def test_non_primrec_definitions_rejected(paradox):
    with pytest.raises(NotPrimRecError):
        primrec_termination(paradox, "liar")
    defs = load_gad("bad(x) := (x=0) ? 0 : bad(x)")  # no descent
    with pytest.raises(NotPrimRecError):
        primrec_termination(defs, "bad")
