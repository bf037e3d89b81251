import pytest

from gakit.kernel import (
    Judgment, KernelError, Proof, ProofStep, Prover, RuleApp, RULES,
    Theorem, apply_rule, check_proof, conclusion_of,
)
from gakit.parser import parse
from gakit.terms import (
    Cond, Eq, Neg, Pred, Succ, TRUE, Var, ZERO, nat_of, numeral,
)


def test_theorems_are_unforgeable():
    with pytest.raises(KernelError):
        Theorem(Judgment(frozenset(), TRUE))
    with pytest.raises(KernelError):
        Theorem(Judgment(frozenset(), TRUE), token=object())


def test_theorems_are_immutable(arith):
    pv = Prover(arith)
    thm = pv.rule("0I", ((),), [])
    with pytest.raises(KernelError):
        thm.judgment = None


def test_hypothesis_and_weakening(arith):
    pv = Prover(arith)
    p = parse("v0 = 0", arith)
    q = parse("v1 = 0", arith)
    h = pv.rule("H", (p, (q,)), [])
    assert h.judgment == Judgment(frozenset({p, q}), p)
    w = pv.rule("W", (parse("v2 = 0", arith),), [h])
    assert w.judgment.concl == p
    assert len(w.judgment.hyps) == 3


def test_equality_rules(arith):
    pv = Prover(arith)
    h = pv.rule("H", (Eq(Var(0), Var(1)), ()), [])
    sym = pv.rule("=S", (), [h])
    assert sym.judgment.concl == Eq(Var(1), Var(0))
    # rewrite v0 to v1 inside v0 = v0 at the left position only
    refl = pv.rule("H", (Eq(Var(0), Var(0)), (Eq(Var(0), Var(1)),)), [])
    h2 = pv.rule("W", (Eq(Var(0), Var(0)),), [h])
    rew = pv.rule("=E", ((0,),), [h2, refl])
    assert rew.judgment.concl == Eq(Var(1), Var(0))


def test_successor_rules(arith):
    pv = Prover(arith)
    z = pv.rule("0I", ((),), [])
    s = pv.rule("S=IE.fwd", (), [z])
    assert s.judgment.concl == Eq(Succ(ZERO), Succ(ZERO))
    back = pv.rule("S=IE.rev", (), [s])
    assert back.judgment.concl == TRUE
    nz = pv.rule("S!=0I", (), [z])
    assert nz.judgment.concl == Neg(Eq(Succ(ZERO), ZERO))
    lifted = pv.rule("S!=IE.fwd", (), [nz])
    assert lifted.judgment.concl == Neg(
        Eq(Succ(Succ(ZERO)), Succ(ZERO))
    )


def test_predecessor_rules(arith):
    pv = Prover(arith)
    z = pv.rule("0I", ((),), [])
    p2 = pv.rule("P=I2", (), [z])
    assert p2.judgment.concl == Eq(Pred(Succ(ZERO)), ZERO)
    pt = pv.rule("PTIE.fwd", (), [z])
    assert pt.judgment.concl == nat_of(Pred(ZERO))
    back = pv.rule("PTIE.rev", (), [pt])
    assert back.judgment.concl == TRUE


def test_conditional_rules(arith):
    pv = Prover(arith)
    t = pv.rule("0I", ((),), [])
    c1 = pv.rule("?I1", (numeral(7),), [t, t])
    assert c1.judgment.concl == Eq(Cond(TRUE, ZERO, numeral(7)), ZERO)
    hn = pv.rule("H", (Neg(Eq(ZERO, Succ(ZERO))), ()), [])
    zn = pv.rule("0I", ((Neg(Eq(ZERO, Succ(ZERO))),),), [])
    c2 = pv.rule("?I2", (numeral(7),), [hn, zn])
    assert c2.judgment.concl == Eq(
        Cond(Eq(ZERO, Succ(ZERO)), numeral(7), ZERO), ZERO
    )


def test_definition_fold_unfold(arith):
    pv = Prover(arith)
    i = arith.index_of("add")
    # |- add(0, 0) = add(0, 0) from the expansion's reflexivity
    from gakit.terms import subst_many
    expansion = subst_many(arith.body(i), {0: ZERO, 1: ZERO})
    h = pv.rule("H", (Eq(expansion, expansion), ()), [])
    folded = pv.rule("defIE.fwd", (i, (ZERO, ZERO), (0,), (1,)), [h])
    app = parse("add(0, 0)", arith)
    assert folded.judgment.concl == Eq(app, app)
    unfolded = pv.rule("defIE.rev", ((0,), (1,)), [folded])
    assert unfolded.judgment == h.judgment


def test_induction(arith):
    pv = Prover(arith)
    p = nat_of(Var(0))  # template: v0 = v0
    base = pv.rule("0I", ((),), [])
    base = pv.rule("S=IE.fwd", (), [base])  # S(0) = S(0); wrong base on purpose
    with pytest.raises(KernelError):
        pv.rule("Ind", (0, p), [base, base, base])
    b = pv.rule("0I", ((),), [])  # 0 = 0, the real base
    g = frozenset({nat_of(Var(0)), p})
    hx = pv.rule("H", (nat_of(Var(0)), (p,)), [])
    step = pv.rule("S=IE.fwd", (), [hx])
    assert step.judgment == Judgment(g, nat_of(Succ(Var(0))))
    three = pv.rule("0I", ((),), [])
    for _ in range(3):
        three = pv.rule("S=IE.fwd", (), [three])
    out = pv.rule("Ind", (0, p), [b, step, three])
    assert out.judgment == Judgment(frozenset(), nat_of(numeral(3)))


def test_template_paths_cannot_cross_binders(arith):
    from gakit.terms import Forall
    pv = Prover(arith)
    eq = pv.rule("0I", ((),), [])
    body = Forall(1, Eq(ZERO, ZERO))
    h = pv.rule("H", (body, ()), [])
    hw = pv.rule("W", (Eq(ZERO, ZERO),), [h])
    eqw = pv.rule("H", (Eq(ZERO, ZERO), (body,)), [])
    with pytest.raises(KernelError):
        pv.rule("=E", ((0, 0),), [eqw, hw])


def test_check_proof_replays_and_rejects(arith):
    proof = Proof([
        ProofStep(RuleApp("0I", ((),)), ()),
        ProofStep(RuleApp("S=IE.fwd"), (0,)),
    ])
    thms = check_proof(arith, proof)
    assert thms[-1].judgment.concl == Eq(Succ(ZERO), Succ(ZERO))

    bad_forward = Proof([ProofStep(RuleApp("S=IE.fwd"), (0,))])
    with pytest.raises(KernelError):
        check_proof(arith, bad_forward)

    lying = Proof([
        ProofStep(RuleApp("0I", ((),)), (),
                  Judgment(frozenset(), Eq(ZERO, Succ(ZERO)))),
    ])
    with pytest.raises(KernelError):
        check_proof(arith, lying)


def test_unknown_rule_rejected(arith):
    with pytest.raises(KernelError):
        conclusion_of(arith, RuleApp("classical->I"), [])


def test_apply_rule_requires_theorems(arith):
    j = Judgment(frozenset(), TRUE)
    with pytest.raises(KernelError):
        apply_rule(arith, RuleApp("=S"), [j])


def test_prover_rejects_foreign_premises(arith):
    pv1, pv2 = Prover(arith), Prover(arith)
    t = pv1.rule("0I", ((),), [])
    with pytest.raises(KernelError):
        pv2.rule("S=IE.fwd", (), [t])


def test_emit_for_prunes_dead_steps(arith):
    pv = Prover(arith)
    pv.rule("H", (Eq(Var(0), ZERO), ()), [])  # dead
    t = pv.rule("0I", ((),), [])
    t = pv.rule("S=IE.fwd", (), [t])
    pruned = pv.emit_for(t)
    assert len(pruned.steps) == 2
    assert check_proof(arith, pruned)[-1].judgment == t.judgment


def test_every_rule_has_a_signature():
    for name, (checker, signature) in RULES.items():
        assert callable(checker)
        assert all(kind in ("N", "T", "G", "L", "P*") for kind in signature)
