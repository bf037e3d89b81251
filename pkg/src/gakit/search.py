"""Bounded backward proof search over the primitive rules.

The search explores every rule whose premises are determined by the goal
(introduction/structural rules read backwards, definition unfolding, and
hypothesis lookup), to a given depth.  Rules that would require guessing a
premise out of thin air (cut-like eliminations, induction, weakening) are
not inverted; within the deterministic fragment the search is exhaustive,
which is what the paradox diagnostics rely on.

Found proofs are rebuilt forward through a Prover, so the result is an
ordinary kernel theorem with a replayable trace.
"""

from __future__ import annotations

from .kernel import Prover
from .terms import (
    Apply, Eq, Exists, Forall, NativeDef, Neg, Or, Pred, Succ, TRUE, ZERO,
    children, nat_of, replace_at, subst_many, subterm_at,
)


def _apply_positions(t):
    """Paths of definition applications in t (not under binders)."""
    out = []

    def walk(u, path):
        if isinstance(u, (Forall, Exists)):
            return
        if isinstance(u, Apply):
            out.append(tuple(path))
        for i, c in enumerate(children(u)):
            walk(c, path + [i])

    walk(t, [])
    return out


def search_proof(defs, gamma, concl, depth: int = 3, prover=None):
    """A Theorem for gamma |- concl found within `depth` backward steps,
    or None.  Optionally records into an existing Prover."""
    pv = prover if prover is not None else Prover(defs)
    g = frozenset(gamma)
    seen = set()

    def attempt(goal, d):
        if (goal, d) in seen:
            return None
        # hypothesis and axioms are depth-free
        if goal in g:
            return pv.rule("H", (goal, tuple(g - {goal})), [])
        if goal == TRUE:
            return pv.rule("0I", (tuple(g),), [])
        if d <= 0:
            seen.add((goal, d))
            return None

        def sub(newgoal):
            return attempt(newgoal, d - 1)

        # double negation introduction
        if isinstance(goal, Neg) and isinstance(goal.t, Neg):
            p = sub(goal.t.t)
            if p is not None:
                return pv.rule("~~I", (), [p])
        # disjunction introductions
        if isinstance(goal, Or):
            p = sub(goal.l)
            if p is not None:
                return pv.rule("\\/I1", (goal.r,), [p])
            q = sub(goal.r)
            if q is not None:
                return pv.rule("\\/I2", (goal.l,), [q])
        if isinstance(goal, Neg) and isinstance(goal.t, Or):
            p = sub(Neg(goal.t.l))
            if p is not None:
                q = sub(Neg(goal.t.r))
                if q is not None:
                    return pv.rule("\\/I3", (), [p, q])
        # equality symmetry
        if isinstance(goal, Eq) and goal.l != goal.r:
            p = sub(Eq(goal.r, goal.l))
            if p is not None:
                return pv.rule("=S", (), [p])
        # successor congruences
        if (
            isinstance(goal, Eq)
            and isinstance(goal.l, Succ) and isinstance(goal.r, Succ)
        ):
            p = sub(Eq(goal.l.t, goal.r.t))
            if p is not None:
                return pv.rule("S=IE.fwd", (), [p])
        if isinstance(goal, Neg) and isinstance(goal.t, Eq):
            e = goal.t
            if isinstance(e.l, Succ) and e.r == ZERO:
                p = sub(nat_of(e.l.t))
                if p is not None:
                    return pv.rule("S!=0I", (), [p])
            if isinstance(e.l, Succ) and isinstance(e.r, Succ):
                p = sub(Neg(Eq(e.l.t, e.r.t)))
                if p is not None:
                    return pv.rule("S!=IE.fwd", (), [p])
        # predecessor rules
        if (
            isinstance(goal, Eq) and isinstance(goal.l, Pred)
            and isinstance(goal.l.t, Succ) and goal.l.t.t == goal.r
        ):
            p = sub(nat_of(goal.r))
            if p is not None:
                return pv.rule("P=I2", (), [p])
        if (
            isinstance(goal, Eq) and goal.l == goal.r
            and isinstance(goal.l, Pred)
        ):
            p = sub(nat_of(goal.l.t))
            if p is not None:
                return pv.rule("PTIE.fwd", (), [p])
        if isinstance(goal, Eq) and goal.l == goal.r and isinstance(goal.l, Succ):
            p = sub(nat_of(goal.l.t))
            if p is not None:
                return pv.rule("S=IE.fwd", (), [p])
        # definition unfolding: prove the expanded goal, then fold back
        for path in _apply_positions(goal):
            app = subterm_at(goal, path)
            body = defs.body(app.def_index) if 0 <= app.def_index < len(defs) else None
            if body is None or isinstance(body, NativeDef):
                continue
            if len(app.args) != defs.arity(app.def_index):
                continue
            expansion = subst_many(body, dict(enumerate(app.args)))
            expanded = replace_at(goal, path, expansion)
            if expanded == goal:
                continue
            p = sub(expanded)
            if p is not None:
                return pv.rule(
                    "defIE.fwd", (app.def_index, app.args, path), [p]
                )
        seen.add((goal, d))
        return None

    return attempt(concl, depth)
