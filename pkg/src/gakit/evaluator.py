"""Fueled big-step evaluation of pure terms.

The semantics implemented here is: eval returns Value(n) exactly when the
big-step rules admit a derivation of t ⇓ n containing at most `fuel` rule
instances.  Each rule instance costs one unit.  Stuck means no rule can ever
apply at some blocking position (unassigned variable, undefined definition,
a boolean operation on a non-boolean value, a failing native call), no
matter the fuel.  OutOfFuel covers the rest.

Because "exists a derivation within the budget" is monotone in the budget
and the rules are deterministic, fuel monotonicity and value determinism
hold by construction.  The only subtle case is disjunction: the rule
deriving 1 from the right disjunct alone does not need the left disjunct's
(possibly infinite) evaluation, so when the left side runs out of fuel the
right side is still tried with the full remaining budget.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass

from .terms import (
    Apply, Cond, DefinitionList, Eq, Exists, Forall, NativeDef, Neg, Or,
    Pred, Succ, Term, Var, Zero, numeral, subst_many,
)

STUCK_UNASSIGNED = "unassigned-variable"
STUCK_UNDEFINED = "undefined-definition"
STUCK_NATIVE = "native-failure"
STUCK_NONBOOL = "non-boolean-operand"
STUCK_ARITY = "arity-mismatch"


@dataclass(frozen=True)
class Value:
    n: int


@dataclass(frozen=True)
class OutOfFuel:
    pass


@dataclass(frozen=True)
class Stuck:
    reason: str


OUT_OF_FUEL = OutOfFuel()

Outcome = object


class NotPureError(Exception):
    """A quantifier node reached the evaluator without elaboration."""


def serialize_outcome(r) -> str:
    if isinstance(r, Value):
        return f"value:{r.n}"
    if isinstance(r, OutOfFuel):
        return "out-of-fuel"
    if isinstance(r, Stuck):
        return f"stuck:{r.reason}"
    raise TypeError(f"not an outcome: {r!r}")


def _ev(defs, A, t, budget):
    """Returns (outcome, cost); cost is meaningful only for Value results
    and never exceeds the given budget."""
    if budget <= 0:
        # every rule instance costs one unit, so nothing derives in 0
        return OUT_OF_FUEL, 0
    if isinstance(t, Var):
        n = A.get(t.index)
        if n is None:
            return Stuck(STUCK_UNASSIGNED), 0
        return (Value(n), 1) if budget >= 1 else (OUT_OF_FUEL, 0)

    if isinstance(t, Zero):
        return (Value(0), 1) if budget >= 1 else (OUT_OF_FUEL, 0)

    if isinstance(t, (Succ, Pred)):
        r, c = _ev(defs, A, t.t, budget - 1)
        if not isinstance(r, Value):
            return r, 0
        if isinstance(t, Succ):
            return Value(r.n + 1), c + 1
        return Value(max(r.n - 1, 0)), c + 1

    if isinstance(t, Neg):
        r, c = _ev(defs, A, t.t, budget - 1)
        if not isinstance(r, Value):
            return r, 0
        if r.n in (0, 1):
            return Value(1 - r.n), c + 1
        return Stuck(STUCK_NONBOOL), 0

    if isinstance(t, Eq):
        ra, ca = _ev(defs, A, t.l, budget - 1)
        if not isinstance(ra, Value):
            return ra, 0
        rb, cb = _ev(defs, A, t.r, budget - 1 - ca)
        if not isinstance(rb, Value):
            return rb, 0
        return Value(1 if ra.n == rb.n else 0), ca + cb + 1

    if isinstance(t, Or):
        rp, cp = _ev(defs, A, t.l, budget - 1)
        if isinstance(rp, Value) and rp.n == 1:
            # the right side might admit a cheaper derivation of 1
            rq, cq = _ev(defs, A, t.r, cp)
            if isinstance(rq, Value) and rq.n == 1:
                return Value(1), cq + 1
            return Value(1), cp + 1
        if isinstance(rp, Value) and rp.n == 0:
            # evaluate the right side once, at the budget the 1-via-right
            # rule would get; the 0 rule's stricter budget is checked after
            rq, cq = _ev(defs, A, t.r, budget - 1)
            if isinstance(rq, Value):
                if rq.n == 1:
                    return Value(1), cq + 1
                if rq.n == 0:
                    if cp + cq + 1 <= budget:
                        return Value(0), cp + cq + 1
                    return OUT_OF_FUEL, 0
                return Stuck(STUCK_NONBOOL), 0
            return rq, 0
        if isinstance(rp, Value):  # non-boolean left: only right 1 can fire
            rq, cq = _ev(defs, A, t.r, budget - 1)
            if isinstance(rq, Value):
                if rq.n == 1:
                    return Value(1), cq + 1
                return Stuck(STUCK_NONBOOL), 0
            return rq, 0
        if isinstance(rp, Stuck):
            rq, cq = _ev(defs, A, t.r, budget - 1)
            if isinstance(rq, Value) and rq.n == 1:
                return Value(1), cq + 1
            if isinstance(rq, OutOfFuel):
                return OUT_OF_FUEL, 0
            return rp, 0
        # left out of fuel: fair attempt on the right
        rq, cq = _ev(defs, A, t.r, budget - 1)
        if isinstance(rq, Value) and rq.n == 1:
            return Value(1), cq + 1
        return OUT_OF_FUEL, 0

    if isinstance(t, Cond):
        rc, cc = _ev(defs, A, t.c, budget - 1)
        if not isinstance(rc, Value):
            return rc, 0
        if rc.n == 1:
            branch = t.a
        elif rc.n == 0:
            branch = t.b
        else:
            return Stuck(STUCK_NONBOOL), 0
        rb, cb = _ev(defs, A, branch, budget - 1 - cc)
        if not isinstance(rb, Value):
            return rb, 0
        return Value(rb.n), cc + cb + 1

    if isinstance(t, Apply):
        if not (0 <= t.def_index < len(defs)):
            return Stuck(STUCK_UNDEFINED), 0
        entry = defs.body(t.def_index)
        arity = defs.arity(t.def_index)
        if len(t.args) != arity:
            return Stuck(STUCK_ARITY), 0
        bud = budget - 1
        vals, spent = [], 0
        for a in t.args:
            r, c = _ev(defs, A, a, bud)
            if not isinstance(r, Value):
                return r, 0
            vals.append(r.n)
            bud -= c
            spent += c
        if isinstance(entry, NativeDef):
            if bud < 0:
                return OUT_OF_FUEL, 0
            r, used = entry.fn(tuple(vals), bud)
            if isinstance(r, Value):
                return r, spent + min(used, bud) + 1
            return r, 0
        body = subst_many(entry, {j: numeral(v) for j, v in enumerate(vals)})
        r, c = _ev(defs, A, body, bud)
        if not isinstance(r, Value):
            return r, 0
        return Value(r.n), spent + c + 1

    if isinstance(t, (Forall, Exists)):
        raise NotPureError(
            "quantifier node reached the evaluator; elaborate it first"
        )
    raise TypeError(f"not a term: {t!r}")


# above this fuel, evaluation may recurse past the default interpreter
# limits, so it runs in a helper thread with a large stack
_DEEP_FUEL = 200
_THREAD_STACK = 512 * 1024 * 1024


def _run_deep(fn):
    """Run fn in a thread with a large stack; deep fuel means deep recursion."""
    result, error = [], []

    def target():
        try:
            result.append(fn())
        except BaseException as e:  # noqa: BLE001 - reraised below
            error.append(e)

    old = threading.stack_size(_THREAD_STACK)
    try:
        th = threading.Thread(target=target)
        th.start()
        th.join()
    finally:
        threading.stack_size(old)
    if error:
        raise error[0]
    return result[0]


def eval_term(defs: DefinitionList, A: dict, t: Term, fuel: int):
    """Big-step evaluation outcome of t within the given fuel."""
    if fuel <= _DEEP_FUEL:
        return _ev(defs, A, t, fuel)[0]
    limit = sys.getrecursionlimit()
    need = 4 * fuel + 10000
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        return _run_deep(lambda: _ev(defs, A, t, fuel)[0])
    finally:
        if need > limit:
            sys.setrecursionlimit(limit)


def eval_within(defs: DefinitionList, t: Term, k: int) -> bool:
    """Decidable reduces-to-a-value-within-k-steps check for closed terms."""
    return isinstance(eval_term(defs, {}, t, k), Value)


def satisfies(defs: DefinitionList, A: dict, t: Term, fuel: int) -> bool:
    r = eval_term(defs, A, t, fuel)
    return isinstance(r, Value) and r.n == 1
