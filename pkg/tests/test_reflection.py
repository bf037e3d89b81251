import random

import pytest

from gakit.certify import eval_certify
from gakit.coding import (
    Aplus, DecodeError, E, Eplus, Reflection, ScanBudgetError, decode_judgment,
    decode_proof, decode_term, elaborate, encode_judgment, encode_list,
    encode_proof, encode_term, decode_list, pair, proof_check_C, search_exists,
    unpair, wf_proof_code, wf_term_code,
)
from gakit.coding import A as A_oracle
from gakit.evaluator import OutOfFuel, Value, eval_term
from gakit.kernel import Judgment, Prover, check_proof
from gakit.parser import parse
from gakit.terms import Eq, Neg, Succ, Var, ZERO, nat_of, numeral


def test_pairing_bijective_on_prefix():
    seen = {}
    for n in range(10 ** 4):
        x, y = unpair(n)
        assert pair(x, y) == n
        assert (x, y) not in seen
        seen[(x, y)] = n
    for x in range(100):
        for y in range(100):
            a, b = unpair(pair(x, y))
            assert (a, b) == (x, y)


def test_list_coding_roundtrip():
    rng = random.Random(0)
    for _ in range(200):
        xs = [rng.randrange(1000) for _ in range(rng.randrange(8))]
        assert decode_list(encode_list(xs)) == xs


def _random_term(rng, depth):
    from gakit.terms import Apply, Cond, Or, Pred
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice((ZERO, Var(rng.randrange(3)), numeral(rng.randrange(4))))
    k = rng.randrange(7)
    a = _random_term(rng, depth - 1)
    if k == 0:
        return Succ(a)
    if k == 1:
        return Pred(a)
    if k == 2:
        return Neg(a)
    b = _random_term(rng, depth - 1)
    if k == 3:
        return Or(a, b)
    if k == 4:
        return Eq(a, b)
    if k == 5:
        return Cond(a, b, _random_term(rng, depth - 1))
    return Apply(rng.randrange(3), (a, b))


def test_term_coding_roundtrip():
    rng = random.Random(1)
    for _ in range(2000):
        t = _random_term(rng, 4)
        code = encode_term(t)
        assert wf_term_code(code)
        assert decode_term(code) == t


def test_judgment_coding_roundtrip():
    rng = random.Random(2)
    for _ in range(300):
        hyps = frozenset(_random_term(rng, 2) for _ in range(rng.randrange(3)))
        j = Judgment(hyps, _random_term(rng, 3))
        assert decode_judgment(encode_judgment(j)) == j


def test_bad_codes_rejected():
    # a code whose bit stream ends mid-field
    bad = pair(9, 0)
    assert not wf_term_code(bad)
    with pytest.raises(DecodeError):
        decode_term(bad)


def _small_proof(defs):
    pv = Prover(defs)
    t = pv.rule("0I", ((),), [])
    t = pv.rule("S=IE.fwd", (), [t])
    t = pv.rule("S!=0I", (), [t])
    return pv.emit_for(t)


def test_proof_coding_roundtrip(arith):
    proof = _small_proof(arith)
    code = encode_proof(proof)
    assert wf_proof_code(code)
    decoded = decode_proof(code)
    assert [(s.rule, s.premises) for s in decoded.steps] == \
        [(s.rule, s.premises) for s in proof.steps]
    assert check_proof(arith, decoded)[-1].judgment == proof.steps[-1].judgment


def test_certificate_proofs_roundtrip(arith):
    for text in ("S(0) = S(0)", "2 = 1", "P(S(0)) = 0"):
        _, _, proof = eval_certify(arith, parse(text, arith), 200,
                                   kind="bool" if "=" in text else "num",
                                   trace=True)
        code = encode_proof(proof)
        decoded = decode_proof(code)
        assert [(s.rule, s.premises) for s in decoded.steps] == \
            [(s.rule, s.premises) for s in proof.steps]


def test_C_agrees_with_check_proof(arith):
    proof = _small_proof(arith)
    code = encode_proof(proof)
    claim = encode_judgment(proof.steps[-1].judgment)
    assert proof_check_C(arith, code, claim) == 1
    # a different claim is refused
    other = encode_judgment(Judgment(frozenset(), Eq(ZERO, ZERO)))
    assert proof_check_C(arith, code, other) == 0


def test_C_rejects_corrupted_proofs(arith):
    proof = _small_proof(arith)
    code = encode_proof(proof)
    claim = encode_judgment(proof.steps[-1].judgment)
    rng = random.Random(3)
    accepted = 0
    for _ in range(1000):
        mutant = code + rng.randrange(1, 1 << 16) * rng.choice((1, -1))
        if mutant < 0:
            mutant = -mutant
        if mutant == code:
            continue
        if proof_check_C(arith, mutant, claim) == 1:
            # acceptance is only legitimate if the mutant decodes to a
            # genuinely checking proof of the same claim
            thms = check_proof(arith, decode_proof(mutant))
            assert thms[-1].judgment == proof.steps[-1].judgment
            accepted += 1
    assert accepted == 0


def test_Eplus_base_case_is_zero(arith):
    p = encode_term(Eq(Var(0), Succ(ZERO)))
    assert Eplus(arith, 0, p, 0) == 0
    assert Aplus(arith, 0, p, 0) == 0


def test_Eplus_planted_certificate(arith):
    _, _, proof = eval_certify(arith, parse("S(0) = S(0)", arith), 100,
                               kind="bool", trace=True)
    s0 = pair(encode_proof(proof), 1)
    p = encode_term(Eq(Var(0), Succ(ZERO)))
    assert Eplus(arith, 0, p, s0 + 1) == 1
    # monotone: any larger bound still finds the planted witness
    assert Eplus(arith, 0, p, s0 + 17) == 1


def test_Eplus_small_scan_negative(arith):
    p = encode_term(Eq(Var(0), Succ(ZERO)))
    for s in (1, 10, 500):
        assert Eplus(arith, 0, p, s) == 0


def test_Eplus_monotone_in_bound(arith):
    p = encode_term(nat_of(Var(0)))
    hits = [Eplus(arith, 0, p, s) for s in range(0, 400, 40)]
    assert hits == sorted(hits)  # once 1, stays 1


def test_Eplus_refuses_huge_unplanted_bounds(arith):
    p = encode_term(Eq(Var(0), Succ(ZERO)))
    with pytest.raises(ScanBudgetError):
        Eplus(arith, 0, p, 10 ** 9, max_scan=1000)


def test_Aplus_planted_certificate(arith):
    pv = Prover(arith)
    thm = pv.rule("H", (nat_of(Var(0)), ()), [])
    code = encode_proof(pv.emit_for(thm))
    p = encode_term(nat_of(Var(0)))
    assert Aplus(arith, 0, p, code + 1) == 1
    assert Aplus(arith, 0, p, 500) == 0


def test_Eplus_Aplus_exclusivity(arith):
    """E+ of p and A+ of ~p can never both hit: that would give proofs of
    an instance and of its hypothesis-general negation."""
    cases = [Eq(Var(0), Succ(ZERO)), Neg(Eq(Succ(Var(0)), ZERO)), nat_of(Var(0))]
    for tp in cases:
        p = encode_term(tp)
        np = encode_term(Neg(tp))
        for s in (0, 50, 400):
            assert not (Eplus(arith, 0, p, s) == 1
                        and Aplus(arith, 0, np, s) == 1)


def test_two_sided_E(arith):
    # E(x, x = S(0), 0) finds witness 1 through the certificate search
    assert E(arith, 0, encode_term(Eq(Var(0), Succ(ZERO))), 0, 5000) == Value(1)
    # E(x, S(x) = 0, 0) is refuted by the universal proof of the negation
    assert E(arith, 0, encode_term(Eq(Succ(Var(0)), ZERO)), 0, 5000) == Value(0)


def test_two_sided_A(arith):
    assert A_oracle(arith, 0, encode_term(Eq(Succ(Var(0)), ZERO)), 0, 5000) == Value(0)
    assert A_oracle(arith, 0, encode_term(nat_of(Var(0))), 0, 5000) == Value(1)


def test_two_sided_low_fuel_is_out_of_fuel(arith):
    # below the acceleration threshold with an empty literal scan range
    assert E(arith, 0, encode_term(Eq(Var(0), Succ(ZERO))), 0, 50) == OutOfFuel()


def test_search_exists(arith):
    hit = search_exists(arith, 0, Eq(Var(0), numeral(3)))
    assert hit is not None
    n, thm, proof = hit
    assert n == 3
    assert check_proof(arith, proof)[-1].judgment == thm.judgment
    assert search_exists(arith, 0, Eq(Succ(Var(0)), ZERO), limit=16) is None


def test_elaborate_exists(arith):
    d2, t2 = elaborate(arith, parse("exists x. x = S(0)", arith))
    assert eval_term(d2, {}, t2, 5000) == Value(1)
    d2, t2 = elaborate(arith, parse("exists x. S(x) = 0", arith))
    assert eval_term(d2, {}, t2, 5000) == Value(0)


def test_elaborate_forall(arith):
    d2, t2 = elaborate(arith, parse("forall x. S(x) != 0", arith))
    assert eval_term(d2, {}, t2, 5000) == Value(1)
    d2, t2 = elaborate(arith, parse("forall x. S(x) = 0", arith))
    assert eval_term(d2, {}, t2, 5000) == Value(0)


def test_elaborate_open_body_substitutes_through_codes(arith):
    # the free variable is closed off at runtime via the code-substitution
    # oracle, so the elaborated term still depends on the assignment
    d2, t2 = elaborate(arith, parse("exists v1. add(v0, v1) = 3", arith))
    assert eval_term(d2, {0: 1}, t2, 8000) == Value(1)
    assert eval_term(d2, {0: 3}, t2, 8000) == Value(1)
    # refuting the instance at 5 would need an inductive universal proof,
    # which the bounded search cannot supply: the honest answer is no value
    assert not isinstance(eval_term(d2, {0: 5}, t2, 8000), Value)


def test_quantifier_duality(arith):
    # ~exists x. p and forall x. ~p agree on the corpus
    for body, want in (("S(x) = 0", 1), ("x = S(0)", 0)):
        d2, t2 = elaborate(arith, parse(f"~(exists x. {body})", arith))
        assert eval_term(d2, {}, t2, 8000) == Value(want)
        d2, t2 = elaborate(arith, parse(f"forall x. ~({body})", arith))
        assert eval_term(d2, {}, t2, 8000) == Value(want)


def test_elaborated_paradox_defs(paradox):
    refl = Reflection(paradox)
    t = refl.elaborate(parse("yablo(0)", paradox))
    assert not isinstance(eval_term(refl.defs, {}, t, 2000), Value)
