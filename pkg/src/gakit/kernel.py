"""The trusted proof kernel.

Judgments pair a finite hypothesis set with a conclusion.  Rule
applications name one primitive rule together with exactly the
instantiation data needed to rebuild the conclusion from the premises.
Theorems are unforgeable: the only constructors are apply_rule and
check_proof (structural contraction and permutation are identities because
hypotheses form a set; only H and W are exposed).

Template rules (=E and the definition fold/unfold rule) take explicit
dot-paths and rewrite exactly the addressed occurrences; paths may not
cross a quantifier node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .terms import (
    Apply, CaptureError, Cond, DefinitionList, Eq, Exists, Forall,
    NativeDef, Neg, Or, Pred, Succ, Term, Var, ZERO, Zero, children,
    free_vars, nat_of, replace_at, subst, subst_many, TRUE,
)


class KernelError(Exception):
    """A rule application or proof step failed to check."""


@dataclass(frozen=True)
class Judgment:
    hyps: frozenset
    concl: Term

    @staticmethod
    def mk(hyps, concl) -> "Judgment":
        return Judgment(frozenset(hyps), concl)

    def __repr__(self):
        return f"Judgment({set(self.hyps)!r} |- {self.concl!r})"


@dataclass(frozen=True)
class RuleApp:
    name: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class ProofStep:
    rule: RuleApp
    premises: tuple
    judgment: Optional[Judgment] = None


@dataclass
class Proof:
    steps: list = field(default_factory=list)

    @property
    def claim(self) -> Optional[Judgment]:
        return self.steps[-1].judgment if self.steps else None


_KERNEL_TOKEN = object()


class Theorem:
    """Witness of kernel acceptance; cannot be built outside this module."""

    __slots__ = ("judgment",)

    def __init__(self, judgment, token=None):
        if token is not _KERNEL_TOKEN:
            raise KernelError("theorems can only be made by the kernel")
        object.__setattr__(self, "judgment", judgment)

    def __setattr__(self, *a):
        raise KernelError("theorems are immutable")

    def __repr__(self):
        return f"Theorem({set(self.judgment.hyps)!r} |- {self.judgment.concl!r})"


# ---------------------------------------------------------------------------
# Rule checkers.  Each takes (defs, args, prems) where prems is a list of
# premise Judgments, and returns the conclusion Judgment.


def _fail(rule, msg):
    raise KernelError(f"{rule}: {msg}")


def _one(rule, prems):
    if len(prems) != 1:
        _fail(rule, f"expects 1 premise, got {len(prems)}")
    return prems[0]


def _n(rule, prems, n):
    if len(prems) != n:
        _fail(rule, f"expects {n} premises, got {len(prems)}")
    return prems


def _same_gamma(rule, *prems):
    g = prems[0].hyps
    for p in prems[1:]:
        if p.hyps != g:
            _fail(rule, "premises have different hypothesis sets")
    return g


def _nat_concl(rule, j, what="premise"):
    c = j.concl
    if not (isinstance(c, Eq) and c.l == c.r):
        _fail(rule, f"{what} must conclude a:nat (a=a), got {c!r}")
    return c.l


def _check_path(rule, t, path):
    """Paths used by template rules may not descend under a binder."""
    u = t
    for i in path:
        if isinstance(u, (Forall, Exists)):
            _fail(rule, "template path crosses a quantifier")
        kids = children(u)
        if not (0 <= i < len(kids)):
            _fail(rule, f"invalid path {'.'.join(map(str, path))}")
        u = kids[i]
    return u


def _rewrite(rule, p, paths, old, new):
    if not paths:
        _fail(rule, "needs at least one template path")
    for path in paths:
        at = _check_path(rule, p, tuple(path))
        if at != old:
            _fail(rule, f"subterm at path {'.'.join(map(str, path))} is not the expected one")
        p = replace_at(p, tuple(path), new)
    return p


def _gamma_arg(rule, args, i):
    g = args[i]
    if not (isinstance(g, tuple) and all(_is_term(t) for t in g)):
        _fail(rule, "hypothesis-list argument must be a tuple of terms")
    return frozenset(g)


def _is_term(t):
    return isinstance(t, (Var, Zero, Succ, Pred, Neg, Or, Eq, Cond, Apply, Forall, Exists))


def _term_arg(rule, args, i):
    if i >= len(args) or not _is_term(args[i]):
        _fail(rule, f"argument {i} must be a term")
    return args[i]


def _nat_arg(rule, args, i):
    if i >= len(args) or not isinstance(args[i], int) or args[i] < 0:
        _fail(rule, f"argument {i} must be a natural number")
    return args[i]


def _paths_args(rule, args, start):
    paths = args[start:]
    for p in paths:
        if not (isinstance(p, tuple) and all(isinstance(x, int) for x in p)):
            _fail(rule, "path arguments must be tuples of naturals")
    return paths


def _subst(rule, t, v, r):
    try:
        return subst(t, v, r)
    except CaptureError as e:
        _fail(rule, f"capture during substitution: {e}")


def _r_defIE_fwd(defs, args, prems):
    rule = "defIE.fwd"
    j = _one(rule, prems)
    i = _nat_arg(rule, args, 0)
    argts = args[1]
    if not (isinstance(argts, tuple) and all(_is_term(t) for t in argts)):
        _fail(rule, "argument 1 must be a tuple of argument terms")
    if not (0 <= i < len(defs)):
        _fail(rule, f"unknown definition index {i}")
    body = defs.body(i)
    if isinstance(body, NativeDef):
        _fail(rule, "cannot fold a native definition")
    if len(argts) != defs.arity(i):
        _fail(rule, f"definition {defs.name_of(i)} takes {defs.arity(i)} arguments")
    expansion = subst_many(body, dict(enumerate(argts)))
    folded = Apply(i, argts)
    concl = _rewrite(rule, j.concl, _paths_args(rule, args, 2), expansion, folded)
    return Judgment(j.hyps, concl)


def _r_defIE_rev(defs, args, prems):
    rule = "defIE.rev"
    j = _one(rule, prems)
    paths = _paths_args(rule, args, 0)
    if not paths:
        _fail(rule, "needs at least one template path")
    app = _check_path(rule, j.concl, tuple(paths[0]))
    if not isinstance(app, Apply):
        _fail(rule, "path does not address a definition application")
    i = app.def_index
    if not (0 <= i < len(defs)):
        _fail(rule, f"unknown definition index {i}")
    body = defs.body(i)
    if isinstance(body, NativeDef):
        _fail(rule, "cannot unfold a native definition")
    if len(app.args) != defs.arity(i):
        _fail(rule, f"definition {defs.name_of(i)} takes {defs.arity(i)} arguments")
    expansion = subst_many(body, dict(enumerate(app.args)))
    concl = _rewrite(rule, j.concl, paths, app, expansion)
    return Judgment(j.hyps, concl)


def _r_eqS(defs, args, prems):
    j = _one("=S", prems)
    if not isinstance(j.concl, Eq):
        _fail("=S", "premise must conclude an equality")
    return Judgment(j.hyps, Eq(j.concl.r, j.concl.l))


def _r_eqE(defs, args, prems):
    rule = "=E"
    jeq, jp = _n(rule, prems, 2)
    _same_gamma(rule, jeq, jp)
    if not isinstance(jeq.concl, Eq):
        _fail(rule, "first premise must conclude an equality")
    a, b = jeq.concl.l, jeq.concl.r
    concl = _rewrite(rule, jp.concl, _paths_args(rule, args, 0), a, b)
    return Judgment(jp.hyps, concl)


def _r_negnegI(defs, args, prems):
    j = _one("~~I", prems)
    return Judgment(j.hyps, Neg(Neg(j.concl)))


def _r_negnegE(defs, args, prems):
    j = _one("~~E", prems)
    c = j.concl
    if not (isinstance(c, Neg) and isinstance(c.t, Neg)):
        _fail("~~E", "premise must conclude a double negation")
    return Judgment(j.hyps, c.t.t)


def _r_negE(defs, args, prems):
    rule = "~E"
    jp, jn = _n(rule, prems, 2)
    _same_gamma(rule, jp, jn)
    q = _term_arg(rule, args, 0)
    if jn.concl != Neg(jp.concl):
        _fail(rule, "second premise must conclude the negation of the first")
    return Judgment(jp.hyps, q)


def _r_orI1(defs, args, prems):
    j = _one("\\/I1", prems)
    return Judgment(j.hyps, Or(j.concl, _term_arg("\\/I1", args, 0)))


def _r_orI2(defs, args, prems):
    j = _one("\\/I2", prems)
    return Judgment(j.hyps, Or(_term_arg("\\/I2", args, 0), j.concl))


def _r_orI3(defs, args, prems):
    rule = "\\/I3"
    jp, jq = _n(rule, prems, 2)
    _same_gamma(rule, jp, jq)
    if not (isinstance(jp.concl, Neg) and isinstance(jq.concl, Neg)):
        _fail(rule, "premises must conclude negations")
    return Judgment(jp.hyps, Neg(Or(jp.concl.t, jq.concl.t)))


def _r_orE1(defs, args, prems):
    rule = "\\/E1"
    jd, j1, j2 = _n(rule, prems, 3)
    if not isinstance(jd.concl, Or):
        _fail(rule, "first premise must conclude a disjunction")
    p, q = jd.concl.l, jd.concl.r
    g = jd.hyps
    if j1.hyps != g | {p}:
        _fail(rule, "second premise must assume the left disjunct over the same hypotheses")
    if j2.hyps != g | {q}:
        _fail(rule, "third premise must assume the right disjunct over the same hypotheses")
    if j1.concl != j2.concl:
        _fail(rule, "branch conclusions differ")
    return Judgment(g, j1.concl)


def _neg_or(rule, j):
    c = j.concl
    if not (isinstance(c, Neg) and isinstance(c.t, Or)):
        _fail(rule, "premise must conclude a negated disjunction")
    return c.t.l, c.t.r


def _r_orE2(defs, args, prems):
    j = _one("\\/E2", prems)
    p, _ = _neg_or("\\/E2", j)
    return Judgment(j.hyps, Neg(p))


def _r_orE3(defs, args, prems):
    j = _one("\\/E3", prems)
    _, q = _neg_or("\\/E3", j)
    return Judgment(j.hyps, Neg(q))


def _r_zeroI(defs, args, prems):
    _n("0I", prems, 0)
    return Judgment(_gamma_arg("0I", args, 0), TRUE)


def _r_sEqI(defs, args, prems):
    j = _one("S=IE.fwd", prems)
    if not isinstance(j.concl, Eq):
        _fail("S=IE.fwd", "premise must conclude an equality")
    return Judgment(j.hyps, Eq(Succ(j.concl.l), Succ(j.concl.r)))


def _r_sEqE(defs, args, prems):
    j = _one("S=IE.rev", prems)
    c = j.concl
    if not (isinstance(c, Eq) and isinstance(c.l, Succ) and isinstance(c.r, Succ)):
        _fail("S=IE.rev", "premise must conclude S(a)=S(b)")
    return Judgment(j.hyps, Eq(c.l.t, c.r.t))


def _r_sNeqI(defs, args, prems):
    j = _one("S!=IE.fwd", prems)
    c = j.concl
    if not (isinstance(c, Neg) and isinstance(c.t, Eq)):
        _fail("S!=IE.fwd", "premise must conclude a!=b")
    return Judgment(j.hyps, Neg(Eq(Succ(c.t.l), Succ(c.t.r))))


def _r_sNeqE(defs, args, prems):
    j = _one("S!=IE.rev", prems)
    c = j.concl
    if not (
        isinstance(c, Neg) and isinstance(c.t, Eq)
        and isinstance(c.t.l, Succ) and isinstance(c.t.r, Succ)
    ):
        _fail("S!=IE.rev", "premise must conclude S(a)!=S(b)")
    return Judgment(j.hyps, Neg(Eq(c.t.l.t, c.t.r.t)))


def _r_sNeqZeroI(defs, args, prems):
    j = _one("S!=0I", prems)
    a = _nat_concl("S!=0I", j)
    return Judgment(j.hyps, Neg(Eq(Succ(a), ZERO)))


def _r_pEqI2(defs, args, prems):
    j = _one("P=I2", prems)
    a = _nat_concl("P=I2", j)
    return Judgment(j.hyps, Eq(Pred(Succ(a)), a))


def _r_pTI(defs, args, prems):
    j = _one("PTIE.fwd", prems)
    a = _nat_concl("PTIE.fwd", j)
    return Judgment(j.hyps, nat_of(Pred(a)))


def _r_pTE(defs, args, prems):
    j = _one("PTIE.rev", prems)
    c = j.concl
    if not (isinstance(c, Eq) and c.l == c.r and isinstance(c.l, Pred)):
        _fail("PTIE.rev", "premise must conclude P(a):nat")
    return Judgment(j.hyps, nat_of(c.l.t))


def _r_condI1(defs, args, prems):
    rule = "?I1"
    jc, jn = _n(rule, prems, 2)
    _same_gamma(rule, jc, jn)
    b = _term_arg(rule, args, 0)
    a = _nat_concl(rule, jn, "second premise")
    return Judgment(jc.hyps, Eq(Cond(jc.concl, a, b), a))


def _r_condI2(defs, args, prems):
    rule = "?I2"
    jnc, jn = _n(rule, prems, 2)
    _same_gamma(rule, jnc, jn)
    a = _term_arg(rule, args, 0)
    if not isinstance(jnc.concl, Neg):
        _fail(rule, "first premise must conclude a negation")
    b = _nat_concl(rule, jn, "second premise")
    return Judgment(jnc.hyps, Eq(Cond(jnc.concl.t, a, b), b))


def _free_in_gamma(g, x):
    return any(x in free_vars(h) for h in g)


def _r_ind(defs, args, prems):
    rule = "Ind"
    j0, jstep, jnat = _n(rule, prems, 3)
    x = _nat_arg(rule, args, 0)
    p = _term_arg(rule, args, 1)
    g = jnat.hyps
    if j0.hyps != g:
        _fail(rule, "base premise hypotheses differ from the habeas premise's")
    a = _nat_concl(rule, jnat, "third premise")
    if _free_in_gamma(g, x):
        _fail(rule, f"induction variable v{x} occurs free in the hypotheses")
    if j0.concl != _subst(rule, p, x, ZERO):
        _fail(rule, "base premise does not conclude the 0 instance")
    if jstep.hyps != g | {nat_of(Var(x)), p}:
        _fail(rule, "step premise must assume v:nat and the template instance")
    if jstep.concl != _subst(rule, p, x, Succ(Var(x))):
        _fail(rule, "step premise does not conclude the successor instance")
    return Judgment(g, _subst(rule, p, x, a))


def _r_hyp(defs, args, prems):
    _n("H", prems, 0)
    p = _term_arg("H", args, 0)
    g = _gamma_arg("H", args, 1)
    return Judgment(g | {p}, p)


def _r_weaken(defs, args, prems):
    j = _one("W", prems)
    p = _term_arg("W", args, 0)
    return Judgment(j.hyps | {p}, j.concl)


def _r_forallI1(defs, args, prems):
    rule = "forallI1"
    j = _one(rule, prems)
    x = _nat_arg(rule, args, 0)
    h = nat_of(Var(x))
    if h not in j.hyps:
        _fail(rule, "premise must assume v:nat for the quantified variable")
    g = j.hyps - {h}
    if _free_in_gamma(g, x):
        _fail(rule, f"quantified variable v{x} occurs free in the hypotheses")
    return Judgment(g, Forall(x, j.concl))


def _r_forallE1(defs, args, prems):
    rule = "forallE1"
    jall, jnat = _n(rule, prems, 2)
    _same_gamma(rule, jall, jnat)
    if not isinstance(jall.concl, Forall):
        _fail(rule, "first premise must conclude a universal")
    a = _nat_concl(rule, jnat, "second premise")
    return Judgment(jall.hyps, _subst(rule, jall.concl.body, jall.concl.var, a))


def _r_forallI2(defs, args, prems):
    rule = "forallI2"
    jnat, jneg = _n(rule, prems, 2)
    _same_gamma(rule, jnat, jneg)
    x = _nat_arg(rule, args, 0)
    p = _term_arg(rule, args, 1)
    a = _nat_concl(rule, jnat, "first premise")
    if jneg.concl != Neg(_subst(rule, p, x, a)):
        _fail(rule, "second premise does not negate the instantiated template")
    return Judgment(jnat.hyps, Neg(Forall(x, p)))


def _r_forallE2(defs, args, prems):
    rule = "forallE2"
    jneg, jbr = _n(rule, prems, 2)
    c = jneg.concl
    if not (isinstance(c, Neg) and isinstance(c.t, Forall)):
        _fail(rule, "first premise must conclude a negated universal")
    x, p = c.t.var, c.t.body
    g = jneg.hyps
    if jbr.hyps != g | {nat_of(Var(x)), Neg(p)}:
        _fail(rule, "branch premise must assume v:nat and the negated body")
    q = jbr.concl
    if _free_in_gamma(g, x) or x in free_vars(q):
        _fail(rule, f"variable v{x} must not be free in the hypotheses or the conclusion")
    return Judgment(g, q)


def _r_existsI1(defs, args, prems):
    rule = "existsI1"
    jnat, jinst = _n(rule, prems, 2)
    _same_gamma(rule, jnat, jinst)
    x = _nat_arg(rule, args, 0)
    p = _term_arg(rule, args, 1)
    a = _nat_concl(rule, jnat, "first premise")
    if jinst.concl != _subst(rule, p, x, a):
        _fail(rule, "second premise does not conclude the instantiated template")
    return Judgment(jnat.hyps, Exists(x, p))


def _r_existsE1(defs, args, prems):
    rule = "existsE1"
    jex, jbr = _n(rule, prems, 2)
    if not isinstance(jex.concl, Exists):
        _fail(rule, "first premise must conclude an existential")
    x, p = jex.concl.var, jex.concl.body
    g = jex.hyps
    if jbr.hyps != g | {nat_of(Var(x)), p}:
        _fail(rule, "branch premise must assume v:nat and the body")
    q = jbr.concl
    if _free_in_gamma(g, x) or x in free_vars(q):
        _fail(rule, f"variable v{x} must not be free in the hypotheses or the conclusion")
    return Judgment(g, q)


def _r_existsI2(defs, args, prems):
    rule = "existsI2"
    j = _one(rule, prems)
    x = _nat_arg(rule, args, 0)
    h = nat_of(Var(x))
    if h not in j.hyps:
        _fail(rule, "premise must assume v:nat for the quantified variable")
    if not isinstance(j.concl, Neg):
        _fail(rule, "premise must conclude a negation")
    g = j.hyps - {h}
    if _free_in_gamma(g, x):
        _fail(rule, f"quantified variable v{x} occurs free in the hypotheses")
    return Judgment(g, Neg(Exists(x, j.concl.t)))


def _r_existsE2(defs, args, prems):
    rule = "existsE2"
    jneg, jnat = _n(rule, prems, 2)
    _same_gamma(rule, jneg, jnat)
    c = jneg.concl
    if not (isinstance(c, Neg) and isinstance(c.t, Exists)):
        _fail(rule, "first premise must conclude a negated existential")
    a = _nat_concl(rule, jnat, "second premise")
    return Judgment(jneg.hyps, Neg(_subst(rule, c.t.body, c.t.var, a)))


def _r_forallInd(defs, args, prems):
    rule = "forallInd"
    j0, jstep = _n(rule, prems, 2)
    x = _nat_arg(rule, args, 0)
    p = _term_arg(rule, args, 1)
    g = j0.hyps
    if _free_in_gamma(g, x):
        _fail(rule, f"induction variable v{x} occurs free in the hypotheses")
    if j0.concl != _subst(rule, p, x, ZERO):
        _fail(rule, "base premise does not conclude the 0 instance")
    if jstep.hyps != g | {nat_of(Var(x)), p}:
        _fail(rule, "step premise must assume v:nat and the template instance")
    if jstep.concl != _subst(rule, p, x, Succ(Var(x))):
        _fail(rule, "step premise does not conclude the successor instance")
    return Judgment(g, Forall(x, p))


# name -> (checker, argument signature).  Signature kinds: N natural,
# T term, G hypothesis list, L term list, P* trailing paths.
RULES = {
    "defIE.fwd": (_r_defIE_fwd, ("N", "L", "P*")),
    "defIE.rev": (_r_defIE_rev, ("P*",)),
    "=S": (_r_eqS, ()),
    "=E": (_r_eqE, ("P*",)),
    "~~I": (_r_negnegI, ()),
    "~~E": (_r_negnegE, ()),
    "~E": (_r_negE, ("T",)),
    "\\/I1": (_r_orI1, ("T",)),
    "\\/I2": (_r_orI2, ("T",)),
    "\\/I3": (_r_orI3, ()),
    "\\/E1": (_r_orE1, ()),
    "\\/E2": (_r_orE2, ()),
    "\\/E3": (_r_orE3, ()),
    "0I": (_r_zeroI, ("G",)),
    "S=IE.fwd": (_r_sEqI, ()),
    "S=IE.rev": (_r_sEqE, ()),
    "S!=IE.fwd": (_r_sNeqI, ()),
    "S!=IE.rev": (_r_sNeqE, ()),
    "S!=0I": (_r_sNeqZeroI, ()),
    "P=I2": (_r_pEqI2, ()),
    "PTIE.fwd": (_r_pTI, ()),
    "PTIE.rev": (_r_pTE, ()),
    "?I1": (_r_condI1, ("T",)),
    "?I2": (_r_condI2, ("T",)),
    "Ind": (_r_ind, ("N", "T")),
    "H": (_r_hyp, ("T", "G")),
    "W": (_r_weaken, ("T",)),
    "forallI1": (_r_forallI1, ("N",)),
    "forallE1": (_r_forallE1, ()),
    "forallI2": (_r_forallI2, ("N", "T")),
    "forallE2": (_r_forallE2, ()),
    "existsI1": (_r_existsI1, ("N", "T")),
    "existsE1": (_r_existsE1, ()),
    "existsI2": (_r_existsI2, ("N",)),
    "existsE2": (_r_existsE2, ()),
    "forallInd": (_r_forallInd, ("N", "T")),
}

QUANTIFIER_RULES = frozenset(
    n for n in RULES if n.startswith(("forall", "exists"))
)
BGA_RULES = tuple(n for n in RULES if n not in QUANTIFIER_RULES)


def conclusion_of(defs: DefinitionList, rule: RuleApp, premises) -> Judgment:
    """The conclusion judgment of one rule application over raw premise
    judgments.  This performs full checking but creates no Theorem; the
    harness uses it to test rules on unproven premises."""
    if rule.name not in RULES:
        raise KernelError(f"unknown rule {rule.name!r}")
    checker, _ = RULES[rule.name]
    return checker(defs, rule.args, list(premises))


def apply_rule(defs: DefinitionList, rule: RuleApp, premises) -> Theorem:
    for p in premises:
        if not isinstance(p, Theorem):
            raise KernelError(f"{rule.name}: premise {p!r} is not a Theorem")
    j = conclusion_of(defs, rule, [p.judgment for p in premises])
    return Theorem(j, _KERNEL_TOKEN)


def check_proof(defs: DefinitionList, proof: Proof):
    """Replay a proof object step by step; returns the step theorems."""
    theorems = []
    for k, step in enumerate(proof.steps):
        for idx in step.premises:
            if not (0 <= idx < k):
                raise KernelError(f"step {k}: premise index {idx} does not precede it")
        try:
            thm = apply_rule(defs, step.rule, [theorems[i] for i in step.premises])
        except KernelError as e:
            raise KernelError(f"step {k}: {e}") from e
        if step.judgment is not None and step.judgment != thm.judgment:
            raise KernelError(f"step {k}: stated judgment does not match the rule's conclusion")
        theorems.append(thm)
    return theorems


class Prover:
    """Records every rule application so tactics can emit replayable proofs."""

    def __init__(self, defs: DefinitionList):
        self.defs = defs
        self.steps = []
        self._index = {}

    def rule(self, name, args=(), premises=()) -> Theorem:
        idxs = []
        for p in premises:
            i = self._index.get(id(p))
            if i is None:
                raise KernelError("tactic premise does not come from this prover")
            idxs.append(i)
        thm = apply_rule(self.defs, RuleApp(name, tuple(args)), list(premises))
        self.steps.append(ProofStep(RuleApp(name, tuple(args)), tuple(idxs), thm.judgment))
        self._index[id(thm)] = len(self.steps) - 1
        return thm

    def adopt(self, thm: Theorem, proof: Proof):
        """Splice a previously emitted proof whose last step proves thm."""
        base = len(self.steps)
        for st in proof.steps:
            self.steps.append(
                ProofStep(st.rule, tuple(base + i for i in st.premises), st.judgment)
            )
        replayed = check_proof(self.defs, self.emit())[-1]
        if replayed.judgment != thm.judgment:
            raise KernelError("adopted proof does not prove the claimed theorem")
        self._index[id(thm)] = len(self.steps) - 1
        return thm

    def emit(self) -> Proof:
        return Proof(list(self.steps))

    def emit_for(self, thm: Theorem) -> Proof:
        """The pruned proof ending at thm (dead steps removed)."""
        last = self._index.get(id(thm))
        if last is None:
            raise KernelError("theorem does not come from this prover")
        keep = set()
        stack = [last]
        while stack:
            i = stack.pop()
            if i in keep:
                continue
            keep.add(i)
            stack.extend(self.steps[i].premises)
        order = sorted(keep)
        remap = {old: new for new, old in enumerate(order)}
        return Proof(
            [
                ProofStep(
                    self.steps[i].rule,
                    tuple(remap[p] for p in self.steps[i].premises),
                    self.steps[i].judgment,
                )
                for i in order
            ]
        )
