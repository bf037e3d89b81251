"""Bridges from computation to proof.

Two entry points:

* eval_certify - evaluate a closed pure term and package the result as a
  kernel theorem: |- t = n for arithmetic results, |- t or |- ~t for
  boolean ones.  The certificate is built by recursion over the evaluation,
  so it replays as a plain primitive proof.

* primrec_termination - for a definition of the shape
  f(xs, y) := (y = 0) ? base : step, with every self-call of the form
  f(xs, P(y)), derive {xs:nat, y:nat} |- f(xs, y):nat by induction on y.
  Definitions called inside base/step are certified inline by running the
  same induction at their call sites (there is no rule for instantiating a
  previously proved schema, so each call site gets its own induction).

Not everything that evaluates can be certified: the rules give P(a) a
value only for a >= 1, give no numeral equation for boolean-valued
subterms in arithmetic position, and refute a=b only when the left side
is the larger; those cases raise UncertifiableError with a reason.
"""

from __future__ import annotations

import sys

from .evaluator import _DEEP_FUEL, _run_deep, Value, eval_term, serialize_outcome
from .kernel import Prover
from .tactics import (
    UnderivableError, cond_type_intro, eq_trans, eq_type_intro,
    nat_from_eq, neg_type_intro, numeral_nat, numeral_neq, or_type_intro,
)
from .terms import (
    Apply, Cond, Eq, NativeDef, Neg, Or, Pred, Succ, Term, Var, ZERO, Zero,
    free_vars, fresh_var, is_pure, nat_of, numeral, subst_many, subterms,
)


class NotValueError(Exception):
    """The term does not evaluate to a value within the given fuel."""

    def __init__(self, outcome):
        self.outcome = outcome
        super().__init__(f"no value: {serialize_outcome(outcome)}")


class UncertifiableError(Exception):
    """The term has a value but the rules cannot derive it."""


# ---------------------------------------------------------------------------
# eval_certify


def _cert_num(pv, defs, t, fuel):
    """(theorem |- t = numeral(n), n) for a closed arithmetic term."""
    if isinstance(t, Zero):
        return pv.rule("0I", ((),), []), 0
    if isinstance(t, Succ):
        th, n = _cert_num(pv, defs, t.t, fuel)
        return pv.rule("S=IE.fwd", (), [th]), n + 1
    if isinstance(t, Pred):
        th, n = _cert_num(pv, defs, t.t, fuel)
        if n == 0:
            raise UncertifiableError(
                "predecessor of zero evaluates to 0 but has no derivable value"
            )
        m = n - 1
        nn = numeral_nat(pv, m)
        pz = pv.rule("P=I2", (), [nn])
        sym = pv.rule("=S", (), [th])
        return pv.rule("=E", ((0, 0),), [sym, pz]), m
    if isinstance(t, Cond):
        thc, v = _cert_bool(pv, defs, t.c, fuel)
        if v:
            tha, n = _cert_num(pv, defs, t.a, fuel)
            nat_a = nat_from_eq(pv, tha)
            e = pv.rule("?I1", (t.b,), [thc, nat_a])
            return eq_trans(pv, e, tha), n
        thb, n = _cert_num(pv, defs, t.b, fuel)
        nat_b = nat_from_eq(pv, thb)
        e = pv.rule("?I2", (t.a,), [thc, nat_b])
        return eq_trans(pv, e, thb), n
    if isinstance(t, Apply):
        return _cert_apply(pv, defs, t, fuel, _cert_num)
    if isinstance(t, (Eq, Or, Neg)):
        raise UncertifiableError(
            "boolean-valued subterm in arithmetic position has no derivable "
            "numeral equation"
        )
    raise UncertifiableError(f"cannot certify a value for {t!r}")


def _cert_apply(pv, defs, t, fuel, cert):
    body = defs.body(t.def_index)
    if isinstance(body, NativeDef):
        raise UncertifiableError(
            f"{defs.name_of(t.def_index)} is a native oracle; its steps "
            "cannot be unfolded into a proof"
        )
    arg_certs = [_cert_num(pv, defs, a, fuel) for a in t.args]
    nums = tuple(numeral(v) for _, v in arg_certs)
    expansion = subst_many(body, dict(enumerate(nums)))
    the, result = cert(pv, defs, expansion, fuel)
    if cert is _cert_num:
        fold_path, arg_prefix = (0,), (0,)
    else:
        fold_path = () if result else (0,)
        arg_prefix = () if result else (0,)
    cur = pv.rule("defIE.fwd", (t.def_index, nums, fold_path), [the])
    for j, (a, (thj, vj)) in enumerate(zip(t.args, arg_certs)):
        if a == numeral(vj):
            continue
        sym = pv.rule("=S", (), [thj])
        cur = pv.rule("=E", (arg_prefix + (j,),), [sym, cur])
    return cur, result


def _cert_bool(pv, defs, t, fuel):
    """(theorem, v) with theorem |- t when v else |- ~t."""
    if isinstance(t, Eq):
        tha, m = _cert_num(pv, defs, t.l, fuel)
        thb, n = _cert_num(pv, defs, t.r, fuel)
        if m == n:
            symb = pv.rule("=S", (), [thb])
            return eq_trans(pv, tha, symb), True
        if m > n:
            ne = numeral_neq(pv, m, n)
            cur = ne
            if t.l != numeral(m):
                syma = pv.rule("=S", (), [tha])
                cur = pv.rule("=E", ((0, 0),), [syma, cur])
            if t.r != numeral(n):
                symb = pv.rule("=S", (), [thb])
                cur = pv.rule("=E", ((0, 1),), [symb, cur])
            return cur, False
        raise UncertifiableError(
            f"{m}={n} is false but only disequalities with the larger side "
            "on the left are derivable"
        )
    if isinstance(t, Neg):
        th, v = _cert_bool(pv, defs, t.t, fuel)
        if v:
            return pv.rule("~~I", (), [th]), False
        return th, True
    if isinstance(t, Or):
        rp = eval_term(defs, {}, t.l, fuel)
        if isinstance(rp, Value) and rp.n == 1:
            thp, _ = _cert_bool(pv, defs, t.l, fuel)
            return pv.rule("\\/I1", (t.r,), [thp]), True
        if isinstance(rp, Value) and rp.n == 0:
            rq = eval_term(defs, {}, t.r, fuel)
            if isinstance(rq, Value) and rq.n == 1:
                thq, _ = _cert_bool(pv, defs, t.r, fuel)
                return pv.rule("\\/I2", (t.l,), [thq]), True
            if isinstance(rq, Value) and rq.n == 0:
                thp, _ = _cert_bool(pv, defs, t.l, fuel)
                thq, _ = _cert_bool(pv, defs, t.r, fuel)
                return pv.rule("\\/I3", (), [thp, thq]), False
            raise NotValueError(rq)
        rq = eval_term(defs, {}, t.r, fuel)
        if isinstance(rq, Value) and rq.n == 1:
            thq, _ = _cert_bool(pv, defs, t.r, fuel)
            return pv.rule("\\/I2", (t.l,), [thq]), True
        raise NotValueError(rp)
    if isinstance(t, Apply):
        return _cert_apply(pv, defs, t, fuel, _cert_bool)
    if isinstance(t, Cond):
        raise UncertifiableError(
            "conditional in boolean position: its value is a natural, and "
            "no rule turns that into a provable formula"
        )
    raise UncertifiableError(
        "arithmetic value in boolean position is not a provable formula"
    )


def eval_certify(defs, t: Term, fuel: int, kind: str = "num", trace: bool = False):
    """Evaluate the closed pure term t and certify the outcome.

    kind="num": returns (theorem |- t = numeral(n), n[, proof]).
    kind="bool": returns (theorem |- t or |- ~t, value-is-1[, proof]).
    Raises NotValueError when evaluation yields no value, and
    UncertifiableError when the value exists but the rules cannot state it.
    """
    if kind not in ("num", "bool"):
        raise ValueError("kind must be 'num' or 'bool'")
    if not is_pure(t):
        raise ValueError("eval_certify takes pure (quantifier-free) terms")
    if free_vars(t):
        raise ValueError("eval_certify takes closed terms")
    r = eval_term(defs, {}, t, fuel)
    if not isinstance(r, Value):
        raise NotValueError(r)
    if kind == "bool" and r.n not in (0, 1):
        raise UncertifiableError(f"value {r.n} is not a boolean")
    pv = Prover(defs)
    cert = _cert_num if kind == "num" else _cert_bool

    def run():
        return cert(pv, defs, t, fuel)

    if fuel <= _DEEP_FUEL:
        thm, out = run()
    else:
        limit = sys.getrecursionlimit()
        need = 4 * fuel + 10000
        if need > limit:
            sys.setrecursionlimit(need)
        try:
            thm, out = _run_deep(run)
        finally:
            if need > limit:
                sys.setrecursionlimit(limit)
    expected = r.n if kind == "num" else (r.n == 1)
    if out != expected:
        raise UncertifiableError(
            f"certificate disagrees with evaluation ({out} vs {expected})"
        )
    if trace:
        return thm, out, pv.emit_for(thm)
    return thm, out


# ---------------------------------------------------------------------------
# primrec_termination


class NotPrimRecError(Exception):
    """The definition does not have the supported recursion shape."""


def _primrec_shape(defs, i):
    """(guard_var, base, step, self_call) for a primitive-recursive body,
    or (None, None, None, None) for a body without self-calls."""
    body = defs.body(i)
    if isinstance(body, NativeDef):
        raise NotPrimRecError(f"{defs.name_of(i)} is native")
    arity = defs.arity(i)
    recursive = any(
        isinstance(s, Apply) and s.def_index == i for s in subterms(body)
    )
    if not recursive:
        return None, None, None, None
    if arity < 1:
        raise NotPrimRecError(f"{defs.name_of(i)} recurses without arguments")
    y = arity - 1
    want_call = Apply(i, tuple(Var(j) for j in range(y)) + (Pred(Var(y)),))
    if not (
        isinstance(body, Cond)
        and body.c == Eq(Var(y), ZERO)
    ):
        raise NotPrimRecError(
            f"{defs.name_of(i)} must test its last argument against 0"
        )
    for s in subterms(body):
        if isinstance(s, Apply) and s.def_index == i and s != want_call:
            raise NotPrimRecError(
                f"{defs.name_of(i)} may only call itself as "
                f"{defs.name_of(i)}(.., P(last))"
            )
    if any(
        isinstance(s, Apply) and s.def_index == i for s in subterms(body.a)
    ):
        raise NotPrimRecError(f"{defs.name_of(i)} recurses in its base branch")
    return y, body.a, body.b, want_call


def _nat_proof(pv, defs, gamma, t, env, stack):
    """Gamma |- t:nat for terms over the hypotheses and certified calls."""
    if t in env:
        return env[t]
    if isinstance(t, Var):
        h = nat_of(t)
        if h not in gamma:
            raise NotPrimRecError(f"no hypothesis types v{t.index}")
        thm = pv.rule("H", (h, tuple(gamma - {h})), [])
    elif isinstance(t, Zero):
        thm = pv.rule("0I", (tuple(gamma),), [])
    elif isinstance(t, Succ):
        thm = pv.rule("S=IE.fwd", (), [_nat_proof(pv, defs, gamma, t.t, env, stack)])
    elif isinstance(t, Pred):
        thm = pv.rule("PTIE.fwd", (), [_nat_proof(pv, defs, gamma, t.t, env, stack)])
    elif isinstance(t, Cond):
        cb = _bool_proof(pv, defs, gamma, t.c, env, stack)
        ta = _nat_proof(pv, defs, gamma, t.a, env, stack)
        tb = _nat_proof(pv, defs, gamma, t.b, env, stack)
        thm = cond_type_intro(pv, cb, ta, tb)
    elif isinstance(t, Apply):
        if t.def_index in stack:
            raise NotPrimRecError(
                f"{defs.name_of(t.def_index)} is mutually recursive; only "
                "direct primitive recursion is supported"
            )
        thm = _call_nat(pv, defs, gamma, t, env, stack)
    else:
        raise NotPrimRecError(f"{t!r} is boolean-valued, not a natural")
    env[t] = thm
    return thm


def _bool_proof(pv, defs, gamma, t, env, stack):
    """Gamma |- t:bool for the guard fragment of a body."""
    if isinstance(t, Eq):
        ta = _nat_proof(pv, defs, gamma, t.l, env, stack)
        tb = _nat_proof(pv, defs, gamma, t.r, env, stack)
        try:
            return eq_type_intro(pv, ta, tb)
        except UnderivableError as e:
            raise NotPrimRecError(str(e)) from e
    if isinstance(t, Neg):
        return neg_type_intro(pv, _bool_proof(pv, defs, gamma, t.t, env, stack))
    if isinstance(t, Or):
        return or_type_intro(
            pv,
            _bool_proof(pv, defs, gamma, t.l, env, stack),
            _bool_proof(pv, defs, gamma, t.r, env, stack),
        )
    raise NotPrimRecError(f"cannot type {t!r} as a boolean")


def _call_nat(pv, defs, gamma, call, env, stack):
    """Gamma |- call:nat where call applies a definition to typed terms."""
    i = call.def_index
    body = defs.body(i)
    if isinstance(body, NativeDef):
        raise NotPrimRecError(f"{defs.name_of(i)} is native")
    if len(call.args) != defs.arity(i):
        raise NotPrimRecError(f"wrong arity for {defs.name_of(i)}")
    y, base, step, self_call = _primrec_shape(defs, i)
    stack = stack | {i}
    if y is None:
        # non-recursive: type the expansion and fold it back
        expansion = subst_many(body, dict(enumerate(call.args)))
        th = _nat_proof(pv, defs, gamma, expansion, env, stack)
        return pv.rule("defIE.fwd", (i, call.args, (0,), (1,)), [th])
    xs, a = call.args[:-1], call.args[-1]
    jnat = _nat_proof(pv, defs, gamma, a, env, stack)
    w = fresh_var(a, body, *xs, *gamma)
    wcall = Apply(i, xs + (Var(w),))
    tmpl = nat_of(wcall)

    smap = dict(enumerate(xs))
    base0 = subst_many(base, smap | {y: ZERO})
    step0 = subst_many(step, smap | {y: ZERO})
    z = pv.rule("0I", (tuple(gamma),), [])
    nb = _nat_proof(pv, defs, gamma, base0, dict(env), stack)
    e0 = pv.rule("?I1", (step0,), [z, nb])
    n0 = nat_from_eq(pv, e0)
    j_base = pv.rule("defIE.fwd", (i, xs + (ZERO,), (0,), (1,)), [n0])

    gs = gamma | {nat_of(Var(w)), tmpl}
    hw = pv.rule("H", (nat_of(Var(w)), tuple(gs - {nat_of(Var(w))})), [])
    ih = pv.rule("H", (tmpl, tuple(gs - {tmpl})), [])
    # bridge the induction hypothesis to the recursive call at S(w)
    pe = pv.rule("P=I2", (), [hw])            # P(S(w)) = w
    ps = pv.rule("=S", (), [pe])              # w = P(S(w))
    k = len(xs)
    scall = Apply(i, xs + (Pred(Succ(Var(w))),))
    ih_s = pv.rule("=E", ((0, k), (1, k)), [ps, ih])
    baseS = subst_many(base, smap | {y: Succ(Var(w))})
    stepS = subst_many(step, smap | {y: Succ(Var(w))})
    senv = dict(env)
    senv[scall] = ih_s
    senv[Var(w)] = hw
    # hypotheses differ inside the step, so typed atoms must be re-proved
    step_env = {
        t: pv.rule("W", (tmpl,), [pv.rule("W", (nat_of(Var(w)),), [th])])
        if th.judgment.hyps == gamma else th
        for t, th in senv.items()
    }
    step_env[scall] = ih_s
    step_env[Var(w)] = hw
    sneq = pv.rule("S!=0I", (), [hw])
    ns = _nat_proof(pv, defs, gs, stepS, step_env, stack)
    eS = pv.rule("?I2", (baseS,), [sneq, ns])
    nS = nat_from_eq(pv, eS)
    j_step = pv.rule("defIE.fwd", (i, xs + (Succ(Var(w)),), (0,), (1,)), [nS])

    return pv.rule("Ind", (w, tmpl), [j_base, j_step, jnat])


def primrec_termination(defs, name_or_index, trace: bool = False):
    """Derive {args:nat} |- f(args):nat for a primitive-recursive definition.

    Returns the Theorem, or (Theorem, Proof) with trace=True.
    """
    i = name_or_index
    if isinstance(i, str):
        i = defs.index_of(i)
        if i is None:
            raise NotPrimRecError(f"no definition named {name_or_index!r}")
    arity = defs.arity(i)
    if arity < 1:
        raise NotPrimRecError(f"{defs.name_of(i)} takes no arguments")
    gamma = frozenset(nat_of(Var(j)) for j in range(arity))
    pv = Prover(defs)
    env = {
        Var(j): pv.rule("H", (nat_of(Var(j)), tuple(gamma - {nat_of(Var(j))})), [])
        for j in range(arity)
    }
    call = Apply(i, tuple(Var(j) for j in range(arity)))
    body = defs.body(i)
    if isinstance(body, (Eq, Neg, Or)):
        # boolean-valued definition: the typing theorem is f(args):bool
        y, _, _, _ = _primrec_shape(defs, i)
        if y is not None:
            raise NotPrimRecError(
                f"{defs.name_of(i)} is a recursive boolean definition; only "
                "natural-valued recursion is supported"
            )
        expansion = subst_many(body, dict(enumerate(call.args)))
        th = _bool_proof(pv, defs, gamma, expansion, env, frozenset({i}))
        thm = pv.rule("defIE.fwd", (i, call.args, (0,), (1, 0)), [th])
    else:
        thm = _call_nat(pv, defs, gamma, call, env, frozenset())
    if trace:
        return thm, pv.emit_for(thm)
    return thm
