"""Desk-scale executable metatheory.

Every kernel rule is fuzzed for truth preservation: generators plant
instances whose premises actually fire (not just vacuously), assignments
over a bounded domain are enumerated, and whenever every premise judgment
holds at the case's fuel the conclusion judgment is asserted to hold too.
Passing is evidence, not proof: the domain and fuel bounds are pragmatic
cuts, and counterexamples could in principle hide above them.

A deliberately broken rule (a classical implication introduction without
the boolean premise) is kept as a canary: it must produce at least one
counterexample per run, proving the harness can detect unsoundness at all.

The module also provides the determinism sweep over random closed terms
and the paradox corpus report (evaluation sweeps, certification attempts,
and exhaustive bounded proof search for groundedness of each paradox).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .certify import NotValueError, UncertifiableError, eval_certify
from .coding import Reflection
from .evaluator import OutOfFuel, Value, eval_term, serialize_outcome
from .kernel import Judgment, RuleApp, RULES, conclusion_of
from .parser import load_gad, print_term
from .search import search_proof
from .terms import (
    Apply, DefinitionList, Eq, Exists, Forall, Neg, Or, Pred, Succ,
    FALSE, Term, Var, ZERO, bool_of, free_vars, implies, is_pure,
    nat_of, numeral, subst,
)

# the default corpus: small arithmetic plus one ungrounded definition so
# the canary has something that never reduces
_DEFAULT_GAD = """
add(x,y) := (y=0) ? x : S(add(x, P(y)))
sub(x,y) := (y=0) ? x : P(sub(x, P(y)))
gt(x,y)  := ~(sub(x,y) = 0)
liar     := ~liar
"""


def default_defs() -> DefinitionList:
    return load_gad(_DEFAULT_GAD)


# quantified judgments only evaluate through the reflection oracles, whose
# acceleration paths need this much budget
_QUANT_FUEL = 4000
CANARY_RULE = "classical->I"


@dataclass
class Counterexample:
    rule: str
    case: int
    premises: list          # printed judgments
    conclusion: str         # printed judgment
    assignment: dict
    outcome: str            # conclusion outcome under the assignment

    def lines(self):
        out = [f"counterexample: {self.rule}", f"case: {self.case}"]
        for p in self.premises:
            out.append(f"premise: {p}")
        out.append(f"conclusion: {self.conclusion}")
        a = ",".join(f"v{v}={n}" for v, n in sorted(self.assignment.items()))
        out.append(f"assignment: {a or '-'}")
        out.append(f"outcome: {self.outcome}")
        return out


@dataclass
class RuleReport:
    rule: str
    cases: int = 0
    satisfied: int = 0      # cases whose premises all held non-vacuously
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.counterexamples

    def lines(self):
        out = [
            f"rule: {self.rule}",
            f"cases: {self.cases}",
            f"premises-satisfied: {self.satisfied}",
            f"verdict: {'ok' if self.ok else 'FAIL'}",
        ]
        for c in self.counterexamples:
            out.extend(c.lines())
        return out


def _print_judgment(defs, j):
    hyps = ", ".join(sorted(print_term(h, defs) for h in j.hyps))
    return f"[{hyps}] |- {print_term(j.concl, defs)}"


class _Sat:
    """Memoized bounded satisfaction, elaborating quantifiers on demand."""

    def __init__(self, defs):
        self.defs = defs
        self._refl = None
        self._memo = {}

    def __call__(self, t, A, fuel):
        key = (t, tuple(sorted((v, A[v]) for v in free_vars(t) if v in A)), fuel)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._eval(t, A, fuel)
            self._memo[key] = hit
        return isinstance(hit, Value) and hit.n == 1

    def _eval(self, t, A, fuel):
        defs = self.defs
        if not is_pure(t):
            if self._refl is None:
                self._refl = Reflection(self.defs)
            t = self._refl.elaborate(t)
            defs = self._refl.defs
            fuel = max(fuel, _QUANT_FUEL)
        return eval_term(defs, A, t, fuel)


def _judgment_holds(sat, j, A, fuel):
    if not all(sat(h, A, fuel) for h in j.hyps):
        return True
    return sat(j.concl, A, fuel)


# ---------------------------------------------------------------------------
# Instance generators.  Each returns (RuleApp, [premise Judgment]); the
# conclusion is recomputed through the kernel's own checker, so generators
# cannot desynchronize from the rules they exercise.


def _nat_term(rng, defs, depth, nv):
    """A random arithmetic term over variables v0..v(nv-1)."""
    if depth <= 0 or rng.random() < 0.3:
        if nv and rng.random() < 0.6:
            return Var(rng.randrange(nv))
        return numeral(rng.randrange(4))
    k = rng.randrange(4)
    a = _nat_term(rng, defs, depth - 1, nv)
    if k == 0:
        return Succ(a)
    if k == 1:
        return Pred(a)
    b = _nat_term(rng, defs, depth - 1, nv)
    if k == 2:
        return Apply(defs.index_of("add"), (a, b))
    return Apply(defs.index_of("sub"), (a, b))


def _bool_term(rng, defs, depth, nv):
    """A random boolean-valued term (grounded for any total assignment)."""
    a = _nat_term(rng, defs, depth, nv)
    b = _nat_term(rng, defs, depth, nv)
    k = rng.randrange(4)
    if k == 0:
        return Eq(a, b)
    if k == 1:
        return Neg(Eq(a, b))
    if k == 2:
        return Or(Eq(a, b), Neg(Eq(a, b)))
    return Apply(defs.index_of("gt"), (a, b))


def _true_stmt(rng, defs, nv):
    """A statement satisfied under every total assignment."""
    t = _nat_term(rng, defs, 2, nv)
    k = rng.randrange(4)
    if k == 0:
        return nat_of(t)
    if k == 1:
        return Eq(t, Pred(Succ(t)))
    if k == 2:
        return Eq(Apply(defs.index_of("add"), (t, ZERO)), t)
    return bool_of(_bool_term(rng, defs, 1, nv))


def _false_stmt(rng, defs, nv):
    """A statement refuted under every total assignment."""
    t = _nat_term(rng, defs, 2, nv)
    k = rng.randrange(3)
    if k == 0:
        return Eq(t, Succ(t))
    if k == 1:
        return Eq(Succ(t), ZERO)
    return Neg(nat_of(t))


def _eq_pair(rng, defs, nv):
    """(a, b) with a = b under every total assignment."""
    a = _nat_term(rng, defs, 2, nv)
    k = rng.randrange(3)
    if k == 0:
        return a, a
    if k == 1:
        return a, Pred(Succ(a))
    return a, Apply(defs.index_of("add"), (a, ZERO))


def _neq_pair(rng, defs, nv):
    a = _nat_term(rng, defs, 2, nv)
    if rng.random() < 0.5:
        return a, Succ(a)
    return a, Succ(Succ(a))


def _gamma(rng, defs, nv):
    """A small mostly-true hypothesis set."""
    out = []
    for _ in range(rng.randrange(3)):
        r = rng.random()
        if r < 0.7:
            out.append(_true_stmt(rng, defs, nv))
        elif r < 0.85:
            out.append(_bool_term(rng, defs, 1, nv))
        else:
            out.append(_false_stmt(rng, defs, nv))
    return frozenset(out)


def _nv(rng):
    return rng.choice((0, 0, 1, 1, 2))


def _j(g, c):
    return Judgment(frozenset(g), c)


def _gen_defIE_fwd(rng, defs):
    nv = _nv(rng)
    g = _gamma(rng, defs, nv)
    i = defs.index_of(rng.choice(("add", "sub")))
    args = (_nat_term(rng, defs, 1, nv), _nat_term(rng, defs, 1, nv))
    from .terms import subst_many
    expansion = subst_many(defs.body(i), dict(enumerate(args)))
    paths = rng.choice((((0,),), ((1,),), ((0,), (1,))))
    return (RuleApp("defIE.fwd", (i, args) + tuple(paths)),
            [_j(g, Eq(expansion, expansion))])


def _gen_defIE_rev(rng, defs):
    nv = _nv(rng)
    g = _gamma(rng, defs, nv)
    i = defs.index_of(rng.choice(("add", "sub")))
    app = Apply(i, (_nat_term(rng, defs, 1, nv), _nat_term(rng, defs, 1, nv)))
    paths = rng.choice((((0,),), ((0,), (1,))))
    return RuleApp("defIE.rev", tuple(paths)), [_j(g, Eq(app, app))]


def _gen_eqS(rng, defs):
    nv = _nv(rng)
    a, b = _eq_pair(rng, defs, nv)
    return RuleApp("=S"), [_j(_gamma(rng, defs, nv), Eq(a, b))]


def _gen_eqE(rng, defs):
    nv = _nv(rng)
    g = _gamma(rng, defs, nv)
    a, b = _eq_pair(rng, defs, nv)
    paths = rng.choice((((0,),), ((1,),), ((0,), (1,))))
    return (RuleApp("=E", tuple(paths)),
            [_j(g, Eq(a, b)), _j(g, Eq(a, a))])


def _gen_negnegI(rng, defs):
    nv = _nv(rng)
    return RuleApp("~~I"), [_j(_gamma(rng, defs, nv), _true_stmt(rng, defs, nv))]


def _gen_negnegE(rng, defs):
    nv = _nv(rng)
    p = _true_stmt(rng, defs, nv)
    return RuleApp("~~E"), [_j(_gamma(rng, defs, nv), Neg(Neg(p)))]


def _gen_negE(rng, defs):
    # both premises can only be true vacuously, so plant a refuted hypothesis
    nv = _nv(rng)
    g = _gamma(rng, defs, nv) | {_false_stmt(rng, defs, nv)}
    p = _bool_term(rng, defs, 1, nv)
    q = _bool_term(rng, defs, 1, nv)
    return RuleApp("~E", (q,)), [_j(g, p), _j(g, Neg(p))]


def _gen_orI1(rng, defs):
    nv = _nv(rng)
    q = _bool_term(rng, defs, 1, nv)
    return RuleApp("\\/I1", (q,)), [_j(_gamma(rng, defs, nv), _true_stmt(rng, defs, nv))]


def _gen_orI2(rng, defs):
    nv = _nv(rng)
    p = _bool_term(rng, defs, 1, nv)
    return RuleApp("\\/I2", (p,)), [_j(_gamma(rng, defs, nv), _true_stmt(rng, defs, nv))]


def _gen_orI3(rng, defs):
    nv = _nv(rng)
    g = _gamma(rng, defs, nv)
    return (RuleApp("\\/I3"),
            [_j(g, Neg(_false_stmt(rng, defs, nv))),
             _j(g, Neg(_false_stmt(rng, defs, nv)))])


def _gen_orE1(rng, defs):
    nv = _nv(rng)
    g = _gamma(rng, defs, nv)
    b = _bool_term(rng, defs, 1, nv)
    p, q = b, Neg(b)
    r = _true_stmt(rng, defs, nv)
    return (RuleApp("\\/E1"),
            [_j(g, Or(p, q)), _j(g | {p}, r), _j(g | {q}, r)])


def _gen_orE2(rng, defs):
    nv = _nv(rng)
    p, q = _false_stmt(rng, defs, nv), _false_stmt(rng, defs, nv)
    return RuleApp("\\/E2"), [_j(_gamma(rng, defs, nv), Neg(Or(p, q)))]


def _gen_orE3(rng, defs):
    nv = _nv(rng)
    p, q = _false_stmt(rng, defs, nv), _false_stmt(rng, defs, nv)
    return RuleApp("\\/E3"), [_j(_gamma(rng, defs, nv), Neg(Or(p, q)))]


def _gen_zeroI(rng, defs):
    nv = _nv(rng)
    return RuleApp("0I", (tuple(_gamma(rng, defs, nv)),)), []


def _gen_sEqI(rng, defs):
    nv = _nv(rng)
    a, b = _eq_pair(rng, defs, nv)
    return RuleApp("S=IE.fwd"), [_j(_gamma(rng, defs, nv), Eq(a, b))]


def _gen_sEqE(rng, defs):
    nv = _nv(rng)
    a, b = _eq_pair(rng, defs, nv)
    return RuleApp("S=IE.rev"), [_j(_gamma(rng, defs, nv), Eq(Succ(a), Succ(b)))]


def _gen_sNeqI(rng, defs):
    nv = _nv(rng)
    a, b = _neq_pair(rng, defs, nv)
    return RuleApp("S!=IE.fwd"), [_j(_gamma(rng, defs, nv), Neg(Eq(a, b)))]


def _gen_sNeqE(rng, defs):
    nv = _nv(rng)
    a, b = _neq_pair(rng, defs, nv)
    return (RuleApp("S!=IE.rev"),
            [_j(_gamma(rng, defs, nv), Neg(Eq(Succ(a), Succ(b))))])


def _gen_sNeqZeroI(rng, defs):
    nv = _nv(rng)
    a = _nat_term(rng, defs, 2, nv)
    return RuleApp("S!=0I"), [_j(_gamma(rng, defs, nv), nat_of(a))]


def _gen_pEqI2(rng, defs):
    nv = _nv(rng)
    a = _nat_term(rng, defs, 2, nv)
    return RuleApp("P=I2"), [_j(_gamma(rng, defs, nv), nat_of(a))]


def _gen_pTI(rng, defs):
    nv = _nv(rng)
    a = _nat_term(rng, defs, 2, nv)
    return RuleApp("PTIE.fwd"), [_j(_gamma(rng, defs, nv), nat_of(a))]


def _gen_pTE(rng, defs):
    nv = _nv(rng)
    a = _nat_term(rng, defs, 2, nv)
    return RuleApp("PTIE.rev"), [_j(_gamma(rng, defs, nv), nat_of(Pred(a)))]


def _gen_condI1(rng, defs):
    nv = _nv(rng)
    g = _gamma(rng, defs, nv)
    c = _true_stmt(rng, defs, nv)
    a = _nat_term(rng, defs, 2, nv)
    b = _nat_term(rng, defs, 2, nv)
    return RuleApp("?I1", (b,)), [_j(g, c), _j(g, nat_of(a))]


def _gen_condI2(rng, defs):
    nv = _nv(rng)
    g = _gamma(rng, defs, nv)
    c = _false_stmt(rng, defs, nv)
    a = _nat_term(rng, defs, 2, nv)
    b = _nat_term(rng, defs, 2, nv)
    return RuleApp("?I2", (a,)), [_j(g, Neg(c)), _j(g, nat_of(b))]


def _ind_template(rng, defs, x):
    """A template over v{x}, true of every natural."""
    v = Var(x)
    k = rng.randrange(4)
    if k == 0:
        return nat_of(v)
    if k == 1:
        return Neg(Eq(Succ(v), ZERO))
    if k == 2:
        return Eq(Pred(Succ(v)), v)
    return nat_of(Apply(defs.index_of("add"), (v, numeral(rng.randrange(3)))))


def _gen_ind(rng, defs):
    x = 0
    g = frozenset()  # the induction variable may not occur in hypotheses
    p = _ind_template(rng, defs, x)
    a = _nat_term(rng, defs, 2, 0)
    return (RuleApp("Ind", (x, p)),
            [_j(g, subst(p, x, ZERO)),
             _j(g | {nat_of(Var(x)), p}, subst(p, x, Succ(Var(x)))),
             _j(g, nat_of(a))])


def _gen_hyp(rng, defs):
    nv = _nv(rng)
    p = _bool_term(rng, defs, 1, nv)
    return RuleApp("H", (p, tuple(_gamma(rng, defs, nv)))), []


def _gen_weaken(rng, defs):
    nv = _nv(rng)
    p = _bool_term(rng, defs, 1, nv)
    return (RuleApp("W", (p,)),
            [_j(_gamma(rng, defs, nv), _true_stmt(rng, defs, nv))])


# quantifier instances draw from a curated pool where reflective
# evaluation (bounded certificate search) is feasible
def _quant_true(rng, x):
    v = Var(x)
    return rng.choice((nat_of(v), Neg(Eq(Succ(v), ZERO)), Eq(Pred(Succ(v)), v)))


def _quant_false(rng, x):
    v = Var(x)
    return rng.choice((Eq(Succ(v), ZERO), Neg(nat_of(v))))


def _quant_witnessed(rng, x):
    """(template, witness term) with the template true at the witness."""
    v = Var(x)
    n = rng.randrange(4)
    return rng.choice((
        (nat_of(v), numeral(n)),
        (Eq(v, numeral(n)), numeral(n)),
    ))


def _gen_forallI1(rng, defs):
    x = 0
    p = _quant_true(rng, x)
    return RuleApp("forallI1", (x,)), [_j({nat_of(Var(x))}, p)]


def _gen_forallE1(rng, defs):
    x = 0
    p = _quant_true(rng, x)
    a = numeral(rng.randrange(4))
    return (RuleApp("forallE1"),
            [_j((), Forall(x, p)), _j((), nat_of(a))])


def _gen_forallI2(rng, defs):
    x = 0
    p = _quant_false(rng, x)
    a = numeral(rng.randrange(4))
    return (RuleApp("forallI2", (x, p)),
            [_j((), nat_of(a)), _j((), Neg(subst(p, x, a)))])


def _gen_forallE2(rng, defs):
    x = 0
    p = _quant_false(rng, x)
    q = _true_stmt(rng, defs, 0)
    return (RuleApp("forallE2"),
            [_j((), Neg(Forall(x, p))),
             _j({nat_of(Var(x)), Neg(p)}, q)])


def _gen_existsI1(rng, defs):
    x = 0
    p, a = _quant_witnessed(rng, x)
    return (RuleApp("existsI1", (x, p)),
            [_j((), nat_of(a)), _j((), subst(p, x, a))])


def _gen_existsE1(rng, defs):
    x = 0
    p, _ = _quant_witnessed(rng, x)
    q = _true_stmt(rng, defs, 0)
    return (RuleApp("existsE1"),
            [_j((), Exists(x, p)), _j({nat_of(Var(x)), p}, q)])


def _gen_existsI2(rng, defs):
    x = 0
    p = _quant_false(rng, x)
    return RuleApp("existsI2", (x,)), [_j({nat_of(Var(x))}, Neg(p))]


def _gen_existsE2(rng, defs):
    x = 0
    p = _quant_false(rng, x)
    a = numeral(rng.randrange(4))
    return (RuleApp("existsE2"),
            [_j((), Neg(Exists(x, p))), _j((), nat_of(a))])


def _gen_forallInd(rng, defs):
    x = 0
    p = _quant_true(rng, x)
    return (RuleApp("forallInd", (x, p)),
            [_j((), subst(p, x, ZERO)),
             _j({nat_of(Var(x)), p}, subst(p, x, Succ(Var(x))))])


GENERATORS = {
    "defIE.fwd": _gen_defIE_fwd,
    "defIE.rev": _gen_defIE_rev,
    "=S": _gen_eqS,
    "=E": _gen_eqE,
    "~~I": _gen_negnegI,
    "~~E": _gen_negnegE,
    "~E": _gen_negE,
    "\\/I1": _gen_orI1,
    "\\/I2": _gen_orI2,
    "\\/I3": _gen_orI3,
    "\\/E1": _gen_orE1,
    "\\/E2": _gen_orE2,
    "\\/E3": _gen_orE3,
    "0I": _gen_zeroI,
    "S=IE.fwd": _gen_sEqI,
    "S=IE.rev": _gen_sEqE,
    "S!=IE.fwd": _gen_sNeqI,
    "S!=IE.rev": _gen_sNeqE,
    "S!=0I": _gen_sNeqZeroI,
    "P=I2": _gen_pEqI2,
    "PTIE.fwd": _gen_pTI,
    "PTIE.rev": _gen_pTE,
    "?I1": _gen_condI1,
    "?I2": _gen_condI2,
    "Ind": _gen_ind,
    "H": _gen_hyp,
    "W": _gen_weaken,
    "forallI1": _gen_forallI1,
    "forallE1": _gen_forallE1,
    "forallI2": _gen_forallI2,
    "forallE2": _gen_forallE2,
    "existsI1": _gen_existsI1,
    "existsE1": _gen_existsE1,
    "existsI2": _gen_existsI2,
    "existsE2": _gen_existsE2,
    "forallInd": _gen_forallInd,
}


def missing_generators():
    """Kernel rules without a registered instance generator (must be empty)."""
    return sorted(set(RULES) - set(GENERATORS))


def _classical_imp_conclusion(prems, p):
    """The deliberately unsound rule: from gamma, p |- q conclude
    gamma |- p -> q with no boolean premise for p."""
    j = prems[0]
    return Judgment(j.hyps - {p}, implies(p, j.concl))


def _gen_canary(rng, defs):
    liar = Apply(defs.index_of("liar"), ())
    return RuleApp(CANARY_RULE, (liar,)), [_j({liar}, FALSE)]


def check_rule(defs=None, rule: str = "=S", cases: int = 100, domain: int = 5,
               fuel: int = 1000, seed: int = 0) -> RuleReport:
    """Fuzz one rule for truth preservation over bounded assignments."""
    if defs is None:
        defs = default_defs()
    if rule == CANARY_RULE:
        gen = _gen_canary
    elif rule in GENERATORS:
        gen = GENERATORS[rule]
    else:
        raise KeyError(f"unknown rule {rule!r}")
    rng = random.Random((seed, rule).__repr__())
    sat = _Sat(defs)
    report = RuleReport(rule)
    big_fuel = max(8 * fuel + 200, _QUANT_FUEL)
    for case in range(cases):
        app, prems = gen(rng, defs)
        if app.name == CANARY_RULE:
            concl = _classical_imp_conclusion(prems, app.args[0])
        else:
            concl = conclusion_of(defs, app, [p for p in prems])
        report.cases += 1
        fv = set()
        for j in list(prems) + [concl]:
            fv |= free_vars(j.concl)
            for h in j.hyps:
                fv |= free_vars(h)
        fv = sorted(fv)
        assignments = [dict(zip(fv, vals))
                       for vals in itertools.product(range(domain), repeat=len(fv))]
        if not all(_judgment_holds(sat, p, A, fuel)
                   for A in assignments for p in prems):
            continue  # premises not established at this fuel: no claim made
        fired = any(
            all(sat(h, A, fuel) for h in p.hyps)
            for A in assignments for p in prems
        ) if prems else True
        if fired:
            report.satisfied += 1
        for A in assignments:
            if not all(sat(h, A, fuel) for h in concl.hyps):
                continue
            if sat(concl.concl, A, big_fuel):
                continue
            report.counterexamples.append(Counterexample(
                rule=app.name,
                case=case,
                premises=[_print_judgment(defs, p) for p in prems],
                conclusion=_print_judgment(defs, concl),
                assignment=dict(A),
                outcome=serialize_outcome(sat._eval(concl.concl, A, big_fuel)),
            ))
    return report


def check_all_rules(defs=None, cases: int = 100, domain: int = 5,
                    fuel: int = 1000, seed: int = 0):
    """Reports for every kernel rule, in table order."""
    missing = missing_generators()
    if missing:
        raise RuntimeError(f"rules without generators: {missing}")
    return [check_rule(defs, r, cases, domain, fuel, seed) for r in RULES]


# ---------------------------------------------------------------------------
# Determinism sweep


@dataclass
class DeterminismReport:
    cases: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def lines(self):
        out = [f"determinism-cases: {self.cases}",
               f"verdict: {'ok' if self.ok else 'FAIL'}"]
        for term, detail in self.violations:
            out.append(f"violation: {term} :: {detail}")
        return out


def check_determinism(defs=None, cases: int = 1000, depth: int = 4,
                      fuel: int = 200, seed: int = 0) -> DeterminismReport:
    """Random closed terms must have fuel-monotone, single-valued outcomes."""
    if defs is None:
        defs = default_defs()
    rng = random.Random(seed)
    report = DeterminismReport()
    fuels = sorted({1, fuel // 10 or 1, fuel // 2 or 1, fuel})
    for _ in range(cases):
        t = (_bool_term if rng.random() < 0.5 else _nat_term)(rng, defs, depth, 0)
        report.cases += 1
        seen_value = None
        had_value = False
        for f in fuels:
            r = eval_term(defs, {}, t, f)
            if isinstance(r, Value):
                if seen_value is not None and r.n != seen_value:
                    report.violations.append(
                        (print_term(t, defs),
                         f"value {seen_value} then {r.n} at fuel {f}"))
                seen_value = r.n
                had_value = True
            elif had_value and isinstance(r, OutOfFuel):
                report.violations.append(
                    (print_term(t, defs), f"value lost at higher fuel {f}"))
    return report


# ---------------------------------------------------------------------------
# Paradox corpus


@dataclass
class ParadoxCase:
    name: str
    defs: DefinitionList
    target: Term
    fuels: tuple = (100, 1000, 10000, 100000)


@dataclass
class ParadoxReport:
    name: str
    outcomes: dict = field(default_factory=dict)   # fuel -> serialized outcome
    certified: str = ""
    bool_provable: bool = False

    @property
    def ok(self):
        return (not self.bool_provable
                and not any(o.startswith("value") for o in self.outcomes.values())
                and self.certified.startswith("not-value"))

    def lines(self):
        out = [f"paradox: {self.name}"]
        for f, o in sorted(self.outcomes.items()):
            out.append(f"fuel-{f}: {o}")
        out.append(f"certify: {self.certified}")
        out.append(f"bool-provable-depth3: {'yes' if self.bool_provable else 'no'}")
        out.append(f"verdict: {'ok' if self.ok else 'FAIL'}")
        return out


_PARADOX_GAD = """
sub(x,y) := (y=0) ? x : P(sub(x, P(y)))
gt(x,y)  := ~(sub(x,y) = 0)
liar        := ~liar
curry       := liar_payload                       # placeholder, replaced below
truthteller := truthteller
yablo(i)    := forall j. gt(j, i) -> ~yablo(j)
"""


def paradox_defs() -> DefinitionList:
    text = _PARADOX_GAD.replace("liar_payload", "curry -> false")
    return load_gad(text)


def default_paradox_cases(max_fuel: int = 100000):
    defs = paradox_defs()
    fuels = tuple(f for f in (100, 1000, 10000, 100000) if f <= max_fuel)
    mk = lambda name, txt: ParadoxCase(name, defs, _parse(txt, defs), fuels)
    return [
        mk("liar", "liar"),
        mk("curry", "curry"),
        mk("truthteller", "truthteller"),
        mk("yablo-0", "yablo(0)"),
        mk("yablo-1", "yablo(1)"),
        mk("yablo-2", "yablo(2)"),
    ]


def _parse(txt, defs):
    from .parser import parse
    return parse(txt, defs)


def paradox_report(cases=None) -> list:
    """Evaluation sweep, certification attempt, and bounded groundedness
    search for each paradox; every probe is expected to come up empty."""
    if cases is None:
        cases = default_paradox_cases()
    reports = []
    for case in cases:
        rep = ParadoxReport(case.name)
        defs, target = case.defs, case.target
        refl = None
        if not is_pure(target) or not is_pure_defs(defs):
            refl = Reflection(defs)
            target = refl.elaborate(target)
            defs = refl.defs
        for f in case.fuels:
            rep.outcomes[f] = serialize_outcome(eval_term(defs, {}, target, f))
        try:
            eval_certify(defs, target, max(case.fuels), kind="bool")
            rep.certified = "value"  # would be a failure
        except NotValueError as e:
            rep.certified = f"not-value:{serialize_outcome(e.outcome)}"
        except UncertifiableError as e:
            rep.certified = f"uncertifiable:{e}"
        thm = search_proof(case.defs, frozenset(), bool_of(case.target), depth=3)
        rep.bool_provable = thm is not None
        reports.append(rep)
    return reports


def is_pure_defs(defs) -> bool:
    from .terms import NativeDef
    return all(isinstance(b, NativeDef) or is_pure(b) for b in defs.entries)


def report_lines(reports) -> list:
    """Line-oriented key:value serialization for any report list."""
    out = []
    for r in reports:
        out.extend(r.lines())
        out.append("")
    return out
