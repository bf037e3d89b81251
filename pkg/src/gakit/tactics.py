"""Derived inference rules, built strictly from primitive kernel steps.

Every function takes a Prover (which records each primitive application),
so any tactic result can be emitted as a replayable Proof.  Conjunction,
implication and equivalence here always mean the official shorthand
expansions: p /\\ q is ~(~p \\/ ~q), p -> q is ~p \\/ q.

One typing rule deserves a note.  The equality typing rule (a:nat and
b:nat give (a=b):bool) is stated as derivable, but with the primitive
rules as printed the only source of disequalities is S(a)!=0, so every
derivable disequality has the syntactically larger side on the left;
~(0=S(0)) has no derivation (a model that reads a=b as "defined only when
a's value >= b's" validates every primitive rule yet leaves it valueless).
eq_type_intro therefore covers the derivable regime - identical sides,
right side 0 (by induction), or numerals m=n with m >= n - and raises
UnderivableError on the rest.
"""

from __future__ import annotations

from .kernel import KernelError, Prover, Theorem
from .terms import (
    Eq, Neg, Or, Succ, Var, ZERO, bool_of, conj, fresh_var, implies,
    nat_of, numeral_value,
)


class TacticError(KernelError):
    pass


class UnderivableError(TacticError):
    """The requested fact has no derivation from the primitive rules."""


def _concl(thm):
    return thm.judgment.concl


def _gamma(thm):
    return thm.judgment.hyps


def _expect(cond, msg):
    if not cond:
        raise TacticError(msg)


def _same_gamma(*thms):
    g = _gamma(thms[0])
    _expect(all(_gamma(t) == g for t in thms), "premises have different hypotheses")
    return g


def _bool_shape(thm, what="premise"):
    c = _concl(thm)
    _expect(
        isinstance(c, Or) and c.r == Neg(c.l),
        f"{what} must conclude p \\/ ~p",
    )
    return c.l


def _nat_shape(thm, what="premise"):
    c = _concl(thm)
    _expect(isinstance(c, Eq) and c.l == c.r, f"{what} must conclude a=a")
    return c.l


# -- A.2: conjunction -------------------------------------------------------


def conj_intro(pv: Prover, tp: Theorem, tq: Theorem) -> Theorem:
    _same_gamma(tp, tq)
    nnp = pv.rule("~~I", (), [tp])
    nnq = pv.rule("~~I", (), [tq])
    return pv.rule("\\/I3", (), [nnp, nnq])


def _conj_parts(thm):
    c = _concl(thm)
    _expect(
        isinstance(c, Neg) and isinstance(c.t, Or)
        and isinstance(c.t.l, Neg) and isinstance(c.t.r, Neg),
        "premise must conclude a conjunction ~(~p \\/ ~q)",
    )
    return c.t.l.t, c.t.r.t


def conj_elim1(pv: Prover, tpq: Theorem) -> Theorem:
    _conj_parts(tpq)
    nn = pv.rule("\\/E2", (), [tpq])
    return pv.rule("~~E", (), [nn])


def conj_elim2(pv: Prover, tpq: Theorem) -> Theorem:
    _conj_parts(tpq)
    nn = pv.rule("\\/E3", (), [tpq])
    return pv.rule("~~E", (), [nn])


# -- A.1: contradiction (habeas quid refutation) ----------------------------


def contradiction(pv: Prover, direction: str, p_bool: Theorem,
                  hyp_q: Theorem, hyp_nq: Theorem) -> Theorem:
    _expect(direction in ("refute", "prove"), "direction must be refute or prove")
    p = _bool_shape(p_bool, "habeas premise")
    g = _gamma(p_bool)
    assumed = p if direction == "refute" else Neg(p)
    target = Neg(p) if direction == "refute" else p
    _expect(
        _gamma(hyp_q) == g | {assumed} and _gamma(hyp_nq) == g | {assumed},
        "contradiction premises must extend the hypotheses with the assumed side",
    )
    _expect(_concl(hyp_nq) == Neg(_concl(hyp_q)),
            "contradiction premises must conclude q and ~q")
    closed = pv.rule("~E", (target,), [hyp_q, hyp_nq])
    trivial = pv.rule("H", (target, tuple(g)), [])
    if direction == "refute":
        return pv.rule("\\/E1", (), [p_bool, closed, trivial])
    return pv.rule("\\/E1", (), [p_bool, trivial, closed])


# -- A.3: implication and equivalence ---------------------------------------


def imp_intro(pv: Prover, p_bool: Theorem, hyp: Theorem) -> Theorem:
    p = _bool_shape(p_bool, "habeas premise")
    g = _gamma(p_bool)
    _expect(_gamma(hyp) == g | {p}, "hypothetical premise must assume p")
    q = _concl(hyp)
    b1 = pv.rule("\\/I2", (Neg(p),), [hyp])
    hn = pv.rule("H", (Neg(p), tuple(g)), [])
    b2 = pv.rule("\\/I1", (q,), [hn])
    return pv.rule("\\/E1", (), [p_bool, b1, b2])


def imp_elim(pv: Prover, timp: Theorem, tp: Theorem) -> Theorem:
    g = _same_gamma(timp, tp)
    c = _concl(timp)
    _expect(isinstance(c, Or) and isinstance(c.l, Neg) and c.l.t == _concl(tp),
            "first premise must conclude p -> q for the second's p")
    p, q = c.l.t, c.r
    w = pv.rule("W", (Neg(p),), [tp])
    hn = pv.rule("H", (Neg(p), tuple(g)), [])
    b1 = pv.rule("~E", (q,), [w, hn])
    b2 = pv.rule("H", (q, tuple(g)), [])
    return pv.rule("\\/E1", (), [timp, b1, b2])


def iff_intro(pv, p_bool, q_bool, hyp_pq, hyp_qp) -> Theorem:
    fwd = imp_intro(pv, p_bool, hyp_pq)
    bwd = imp_intro(pv, q_bool, hyp_qp)
    return conj_intro(pv, fwd, bwd)


def _iff_parts(thm):
    a, b = _conj_parts(thm)
    _expect(isinstance(a, Or) and isinstance(a.l, Neg), "not an equivalence")
    _expect(isinstance(b, Or) and isinstance(b.l, Neg), "not an equivalence")
    p, q = a.l.t, a.r
    _expect(b == implies(q, p), "not an equivalence")
    return p, q


def iff_elim1(pv, tiff, tp) -> Theorem:
    _iff_parts(tiff)
    fwd = conj_elim1(pv, tiff)
    return imp_elim(pv, fwd, tp)


def iff_elim2(pv, tiff, tq) -> Theorem:
    _iff_parts(tiff)
    bwd = conj_elim2(pv, tiff)
    return imp_elim(pv, bwd, tq)


# -- A.4: equality ----------------------------------------------------------


def eq_trans(pv, tab, tbc) -> Theorem:
    _same_gamma(tab, tbc)
    ca, cb = _concl(tab), _concl(tbc)
    _expect(isinstance(ca, Eq) and isinstance(cb, Eq) and ca.r == cb.l,
            "premises must conclude a=b and b=c")
    return pv.rule("=E", ((1,),), [tbc, tab])


def nat_from_eq(pv, teq) -> Theorem:
    """From a=b conclude a:nat (rewrite the right side back to a)."""
    c = _concl(teq)
    _expect(isinstance(c, Eq), "premise must conclude an equality")
    sym = pv.rule("=S", (), [teq])
    return pv.rule("=E", ((1,),), [sym, teq])


# -- A.5: typing rules ------------------------------------------------------


def neg_type_intro(pv, p_bool) -> Theorem:
    p = _bool_shape(p_bool)
    g = _gamma(p_bool)
    hp = pv.rule("H", (p, tuple(g)), [])
    nn = pv.rule("~~I", (), [hp])
    b1 = pv.rule("\\/I2", (Neg(p),), [nn])
    hn = pv.rule("H", (Neg(p), tuple(g)), [])
    b2 = pv.rule("\\/I1", (Neg(Neg(p)),), [hn])
    return pv.rule("\\/E1", (), [p_bool, b1, b2])


def neg_type_elim(pv, np_bool) -> Theorem:
    c = _concl(np_bool)
    _expect(
        isinstance(c, Or) and isinstance(c.l, Neg) and c.r == Neg(c.l),
        "premise must conclude ~p \\/ ~~p",
    )
    p = c.l.t
    g = _gamma(np_bool)
    hn = pv.rule("H", (Neg(p), tuple(g)), [])
    b1 = pv.rule("\\/I2", (p,), [hn])
    hnn = pv.rule("H", (Neg(Neg(p)), tuple(g)), [])
    e = pv.rule("~~E", (), [hnn])
    b2 = pv.rule("\\/I1", (Neg(p),), [e])
    return pv.rule("\\/E1", (), [np_bool, b1, b2])


def or_type_intro(pv, p_bool, q_bool) -> Theorem:
    p = _bool_shape(p_bool)
    q = _bool_shape(q_bool)
    g = _same_gamma(p_bool, q_bool)
    pq = Or(p, q)
    hp = pv.rule("H", (p, tuple(g)), [])
    o1 = pv.rule("\\/I1", (q,), [hp])
    b1 = pv.rule("\\/I1", (Neg(pq),), [o1])
    qb2 = pv.rule("W", (Neg(p),), [q_bool])
    g2 = g | {Neg(p)}
    hq = pv.rule("H", (q, tuple(g2)), [])
    o2 = pv.rule("\\/I2", (p,), [hq])
    bq = pv.rule("\\/I1", (Neg(pq),), [o2])
    hnp = pv.rule("H", (Neg(p), tuple(g | {Neg(q)})), [])
    hnq = pv.rule("H", (Neg(q), tuple(g2)), [])
    i3 = pv.rule("\\/I3", (), [hnp, hnq])
    bnq = pv.rule("\\/I2", (pq,), [i3])
    b2 = pv.rule("\\/E1", (), [qb2, bq, bnq])
    return pv.rule("\\/E1", (), [p_bool, b1, b2])


def or_type_elim(pv, t) -> Theorem:
    pq = _bool_shape(t)
    _expect(isinstance(pq, Or), "premise must type a disjunction")
    p, q = pq.l, pq.r
    g = _gamma(t)
    goal_r = bool_of(q)
    goal_l = bool_of(p)
    g1 = g | {pq}
    h = pv.rule("H", (pq, tuple(g)), [])
    hp = pv.rule("H", (p, tuple(g1)), [])
    op = pv.rule("\\/I1", (Neg(p),), [hp])
    bp = pv.rule("\\/I1", (goal_r,), [op])
    hq = pv.rule("H", (q, tuple(g1)), [])
    oq = pv.rule("\\/I1", (Neg(q),), [hq])
    bq = pv.rule("\\/I2", (goal_l,), [oq])
    b1 = pv.rule("\\/E1", (), [h, bp, bq])
    hn = pv.rule("H", (Neg(pq), tuple(g)), [])
    e2 = pv.rule("\\/E2", (), [hn])
    o = pv.rule("\\/I2", (p,), [e2])
    b2 = pv.rule("\\/I1", (goal_r,), [o])
    return pv.rule("\\/E1", (), [t, b1, b2])


def and_type_intro(pv, p_bool, q_bool) -> Theorem:
    p = _bool_shape(p_bool)
    q = _bool_shape(q_bool)
    g = _same_gamma(p_bool, q_bool)
    B = conj(p, q)
    g1 = g | {p}
    qb1 = pv.rule("W", (p,), [q_bool])
    np_ = pv.rule("~~I", (), [pv.rule("H", (p, tuple(g | {q})), [])])
    nq_ = pv.rule("~~I", (), [pv.rule("H", (q, tuple(g1)), [])])
    i3 = pv.rule("\\/I3", (), [np_, nq_])
    bq = pv.rule("\\/I1", (Neg(B),), [i3])
    hnq = pv.rule("H", (Neg(q), tuple(g1)), [])
    o = pv.rule("\\/I2", (Neg(p),), [hnq])
    nn = pv.rule("~~I", (), [o])
    bnq = pv.rule("\\/I2", (B,), [nn])
    case_p = pv.rule("\\/E1", (), [qb1, bq, bnq])
    hnp = pv.rule("H", (Neg(p), tuple(g)), [])
    o2 = pv.rule("\\/I1", (Neg(q),), [hnp])
    nn2 = pv.rule("~~I", (), [o2])
    case_np = pv.rule("\\/I2", (B,), [nn2])
    return pv.rule("\\/E1", (), [p_bool, case_p, case_np])


def and_type_elim(pv, t) -> Theorem:
    B = _bool_shape(t)
    _expect(
        isinstance(B, Neg) and isinstance(B.t, Or)
        and isinstance(B.t.l, Neg) and isinstance(B.t.r, Neg),
        "premise must type a conjunction",
    )
    p, q = B.t.l.t, B.t.r.t
    g = _gamma(t)
    goal_l, goal_r = bool_of(p), bool_of(q)
    h = pv.rule("H", (B, tuple(g)), [])
    e2 = pv.rule("\\/E2", (), [h])
    pp = pv.rule("~~E", (), [e2])
    o = pv.rule("\\/I1", (Neg(p),), [pp])
    b1 = pv.rule("\\/I1", (goal_r,), [o])
    g2 = g | {Neg(B)}
    hn = pv.rule("H", (Neg(B), tuple(g)), [])
    npq = pv.rule("~~E", (), [hn])
    h2 = pv.rule("H", (Neg(p), tuple(g2)), [])
    o2 = pv.rule("\\/I2", (p,), [h2])
    bp = pv.rule("\\/I1", (goal_r,), [o2])
    h3 = pv.rule("H", (Neg(q), tuple(g2)), [])
    o3 = pv.rule("\\/I2", (q,), [h3])
    bq = pv.rule("\\/I2", (goal_l,), [o3])
    b2 = pv.rule("\\/E1", (), [npq, bp, bq])
    return pv.rule("\\/E1", (), [t, b1, b2])


def imp_type_intro(pv, p_bool, q_bool) -> Theorem:
    nb = neg_type_intro(pv, p_bool)
    return or_type_intro(pv, nb, q_bool)


def imp_type_elim(pv, t) -> Theorem:
    c = _bool_shape(t)
    _expect(isinstance(c, Or) and isinstance(c.l, Neg), "premise must type an implication")
    p, q = c.l.t, c.r
    g = _gamma(t)
    ote = or_type_elim(pv, t)
    goal_l, goal_r = bool_of(p), bool_of(q)
    bnp = bool_of(Neg(p))
    h1 = pv.rule("H", (bnp, tuple(g)), [])
    pb = neg_type_elim(pv, h1)
    b1 = pv.rule("\\/I1", (goal_r,), [pb])
    h2 = pv.rule("H", (goal_r, tuple(g)), [])
    b2 = pv.rule("\\/I2", (goal_l,), [h2])
    return pv.rule("\\/E1", (), [ote, b1, b2])


def iff_type_intro(pv, p_bool, q_bool) -> Theorem:
    fwd = imp_type_intro(pv, p_bool, q_bool)
    bwd = imp_type_intro(pv, q_bool, p_bool)
    return and_type_intro(pv, fwd, bwd)


def _iff_type_parts(t):
    B = _bool_shape(t)
    _expect(
        isinstance(B, Neg) and isinstance(B.t, Or)
        and isinstance(B.t.l, Neg) and isinstance(B.t.r, Neg),
        "premise must type an equivalence",
    )
    fwd, bwd = B.t.l.t, B.t.r.t
    _expect(isinstance(fwd, Or) and isinstance(fwd.l, Neg), "premise must type an equivalence")
    p, q = fwd.l.t, fwd.r
    _expect(bwd == implies(q, p), "premise must type an equivalence")
    return B, p, q


def iff_type_elim1(pv, t) -> Theorem:
    B, p, q = _iff_type_parts(t)
    X, Y = Neg(implies(p, q)), Neg(implies(q, p))
    g = _gamma(t)
    goal = bool_of(p)
    g1 = g | {B}
    hB = pv.rule("H", (B, tuple(g)), [])
    pq = pv.rule("~~E", (), [pv.rule("\\/E2", (), [hB])])
    hnp = pv.rule("H", (Neg(p), tuple(g1)), [])
    c_np = pv.rule("\\/I2", (p,), [hnp])
    gq = g1 | {q}
    hB2 = pv.rule("H", (B, tuple(g1 | {q} - {B})), [])
    qp = pv.rule("~~E", (), [pv.rule("\\/E3", (), [hB2])])
    hq = pv.rule("H", (q, tuple(gq | {Neg(q)} - {q})), [])
    hnq = pv.rule("H", (Neg(q), tuple(gq)), [])
    c_nq = pv.rule("~E", (goal,), [hq, hnq])
    hp = pv.rule("H", (p, tuple(gq)), [])
    c_p = pv.rule("\\/I1", (Neg(p),), [hp])
    c_q = pv.rule("\\/E1", (), [qp, c_nq, c_p])
    case_B = pv.rule("\\/E1", (), [pq, c_np, c_q])
    g2 = g | {Neg(B)}
    hnB = pv.rule("H", (Neg(B), tuple(g)), [])
    xy = pv.rule("~~E", (), [hnB])
    hX = pv.rule("H", (X, tuple(g2)), [])
    px = pv.rule("~~E", (), [pv.rule("\\/E2", (), [hX])])
    c_X = pv.rule("\\/I1", (Neg(p),), [px])
    hY = pv.rule("H", (Y, tuple(g2)), [])
    npy = pv.rule("\\/E3", (), [hY])
    c_Y = pv.rule("\\/I2", (p,), [npy])
    case_nB = pv.rule("\\/E1", (), [xy, c_X, c_Y])
    return pv.rule("\\/E1", (), [t, case_B, case_nB])


def iff_type_elim2(pv, t) -> Theorem:
    B, p, q = _iff_type_parts(t)
    X, Y = Neg(implies(p, q)), Neg(implies(q, p))
    g = _gamma(t)
    goal = bool_of(q)
    g1 = g | {B}
    hB = pv.rule("H", (B, tuple(g)), [])
    qp = pv.rule("~~E", (), [pv.rule("\\/E3", (), [hB])])
    hnq = pv.rule("H", (Neg(q), tuple(g1)), [])
    c_nq = pv.rule("\\/I2", (q,), [hnq])
    gp = g1 | {p}
    hB2 = pv.rule("H", (B, tuple(g1 | {p} - {B})), [])
    pq = pv.rule("~~E", (), [pv.rule("\\/E2", (), [hB2])])
    hp = pv.rule("H", (p, tuple(gp | {Neg(p)} - {p})), [])
    hnp = pv.rule("H", (Neg(p), tuple(gp)), [])
    c_np = pv.rule("~E", (goal,), [hp, hnp])
    hq = pv.rule("H", (q, tuple(gp)), [])
    c_q = pv.rule("\\/I1", (Neg(q),), [hq])
    c_p = pv.rule("\\/E1", (), [pq, c_np, c_q])
    case_B = pv.rule("\\/E1", (), [qp, c_nq, c_p])
    g2 = g | {Neg(B)}
    hnB = pv.rule("H", (Neg(B), tuple(g)), [])
    xy = pv.rule("~~E", (), [hnB])
    hX = pv.rule("H", (X, tuple(g2)), [])
    nqx = pv.rule("\\/E3", (), [hX])
    c_X = pv.rule("\\/I2", (q,), [nqx])
    hY = pv.rule("H", (Y, tuple(g2)), [])
    qy = pv.rule("~~E", (), [pv.rule("\\/E2", (), [hY])])
    c_Y = pv.rule("\\/I1", (Neg(q),), [qy])
    case_nB = pv.rule("\\/E1", (), [xy, c_X, c_Y])
    return pv.rule("\\/E1", (), [t, case_B, case_nB])


def succ_type_intro(pv, tn) -> Theorem:
    _nat_shape(tn)
    return pv.rule("S=IE.fwd", (), [tn])


def succ_type_elim(pv, t) -> Theorem:
    c = _concl(t)
    _expect(isinstance(c, Eq) and c.l == c.r and isinstance(c.l, Succ),
            "premise must conclude S(a):nat")
    return pv.rule("S=IE.rev", (), [t])


def pred_type_intro(pv, tn) -> Theorem:
    _nat_shape(tn)
    return pv.rule("PTIE.fwd", (), [tn])


def pred_type_elim(pv, t) -> Theorem:
    return pv.rule("PTIE.rev", (), [t])


def numeral_nat(pv: Prover, n: int, gamma=()) -> Theorem:
    """The theorem Gamma |- numeral(n) : nat."""
    t = pv.rule("0I", (tuple(gamma),), [])
    for _ in range(n):
        t = pv.rule("S=IE.fwd", (), [t])
    return t


def numeral_neq(pv: Prover, m: int, n: int, gamma=()) -> Theorem:
    """Gamma |- ~(m=n) for numerals with m > n (the only derivable side)."""
    if m <= n:
        raise UnderivableError(
            f"~({m}={n}) needs the underivable 0!=S direction" if m < n
            else "equal numerals are not unequal"
        )
    base = numeral_nat(pv, m - n - 1, gamma)
    t = pv.rule("S!=0I", (), [base])
    for _ in range(n):
        t = pv.rule("S!=IE.fwd", (), [t])
    return t


def eq_type_intro(pv, ta, tb) -> Theorem:
    a = _nat_shape(ta, "first premise")
    b = _nat_shape(tb, "second premise")
    g = _same_gamma(ta, tb)
    if a == b:
        return pv.rule("\\/I1", (Neg(Eq(a, b)),), [ta])
    if b == ZERO:
        w = fresh_var(a, b, *g)
        p = Or(Eq(Var(w), ZERO), Neg(Eq(Var(w), ZERO)))
        z = pv.rule("0I", (tuple(g),), [])
        base = pv.rule("\\/I1", (Neg(Eq(ZERO, ZERO)),), [z])
        hw = pv.rule("H", (nat_of(Var(w)), tuple(g | {p})), [])
        sn = pv.rule("S!=0I", (), [hw])
        step = pv.rule("\\/I2", (Eq(Succ(Var(w)), ZERO),), [sn])
        return pv.rule("Ind", (w, p), [base, step, ta])
    ma, mb = numeral_value(a), numeral_value(b)
    if ma is not None and mb is not None and ma > mb:
        ne = numeral_neq(pv, ma, mb, g)
        return pv.rule("\\/I2", (Eq(a, b),), [ne])
    raise UnderivableError(
        "equality typing is derivable only for identical sides, a right side "
        "of 0, or numerals with the larger on the left; the primitive rules "
        "admit no disequality with the smaller side on the left"
    )


def cond_type_intro(pv, c_bool, ta, tb) -> Theorem:
    c = _bool_shape(c_bool, "condition premise")
    a = _nat_shape(ta, "second premise")
    b = _nat_shape(tb, "third premise")
    g = _same_gamma(c_bool, ta, tb)
    hc = pv.rule("H", (c, tuple(g)), [])
    an1 = pv.rule("W", (c,), [ta])
    e1 = pv.rule("?I1", (b,), [hc, an1])
    s1 = pv.rule("=S", (), [e1])
    case1 = pv.rule("=E", ((0,), (1,)), [s1, an1])
    hn = pv.rule("H", (Neg(c), tuple(g)), [])
    bn1 = pv.rule("W", (Neg(c),), [tb])
    e2 = pv.rule("?I2", (a,), [hn, bn1])
    s2 = pv.rule("=S", (), [e2])
    case2 = pv.rule("=E", ((0,), (1,)), [s2, bn1])
    return pv.rule("\\/E1", (), [c_bool, case1, case2])


# -- dispatcher -------------------------------------------------------------

_DERIVED = {
    "andI": (conj_intro, 2),
    "andE1": (conj_elim1, 1),
    "andE2": (conj_elim2, 1),
    "impI": (imp_intro, 2),
    "impE": (imp_elim, 2),
    "iffI": (iff_intro, 4),
    "iffE1": (iff_elim1, 2),
    "iffE2": (iff_elim2, 2),
    "=T": (eq_trans, 2),
    "negTI": (neg_type_intro, 1),
    "negTE": (neg_type_elim, 1),
    "orTI": (or_type_intro, 2),
    "orTE": (or_type_elim, 1),
    "andTI": (and_type_intro, 2),
    "andTE": (and_type_elim, 1),
    "impTI": (imp_type_intro, 2),
    "impTE": (imp_type_elim, 1),
    "iffTI": (iff_type_intro, 2),
    "iffTE1": (iff_type_elim1, 1),
    "iffTE2": (iff_type_elim2, 1),
    "STI": (succ_type_intro, 1),
    "STE": (succ_type_elim, 1),
    "PTI": (pred_type_intro, 1),
    "PTE": (pred_type_elim, 1),
    "=TI": (eq_type_intro, 2),
    "?TI": (cond_type_intro, 3),
}


def derived_rule_names():
    return tuple(_DERIVED)


def tactic_derived(defs, rule_name: str, premises, trace: bool = False):
    """Run a derived rule by name over kernel theorems.

    Returns (theorem, proof) where proof is a fully primitive replayable
    Proof when trace=True, else None.  Each premise is either a Theorem
    whose conclusion sits among its own hypotheses (re-established by H) or
    a (Theorem, Proof) pair carrying its derivation; traces must be
    self-contained, so nothing else is accepted.
    """
    if rule_name not in _DERIVED:
        raise TacticError(f"unknown derived rule {rule_name!r}")
    fn, n = _DERIVED[rule_name]
    if len(premises) != n:
        raise TacticError(f"{rule_name} expects {n} premises, got {len(premises)}")
    pv = Prover(defs)
    thms = []
    for p in premises:
        if isinstance(p, tuple):
            thm, proof = p
            thms.append(pv.adopt(thm, proof))
        elif isinstance(p, Theorem):
            j = p.judgment
            if j.concl not in j.hyps:
                raise TacticError(
                    "premise theorem is not a hypothesis restatement; pass "
                    "(theorem, proof) so the trace stays replayable"
                )
            thms.append(pv.rule("H", (j.concl, tuple(j.hyps - {j.concl})), []))
        else:
            raise TacticError(f"bad premise {p!r}")
    result = fn(pv, *thms)
    return result, (pv.emit_for(result) if trace else None)
