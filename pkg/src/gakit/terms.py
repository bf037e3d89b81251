"""Term representation for grounded arithmetic.

Terms form a small variant tree: nine computational constructors (variables,
zero, successor, predecessor, negation, disjunction, equality, conditional,
and definition application) plus two quantifier constructors that only the
elaboration layer knows how to run.  A term containing no quantifier node is
called "pure".

Variables are indexed by naturals (v0, v1, ...).  Surface syntax may use
names; the parser resolves them to indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union


class CaptureError(Exception):
    """Substitution would move a free variable under a binder that captures it."""


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    t: "Term"


@dataclass(frozen=True)
class Pred:
    t: "Term"


@dataclass(frozen=True)
class Neg:
    t: "Term"


@dataclass(frozen=True)
class Or:
    l: "Term"
    r: "Term"


@dataclass(frozen=True)
class Eq:
    l: "Term"
    r: "Term"


@dataclass(frozen=True)
class Cond:
    c: "Term"
    a: "Term"
    b: "Term"


@dataclass(frozen=True)
class Apply:
    def_index: int
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Forall:
    var: int
    body: "Term"


@dataclass(frozen=True)
class Exists:
    var: int
    body: "Term"


Term = Union[Var, Zero, Succ, Pred, Neg, Or, Eq, Cond, Apply, Forall, Exists]

ZERO = Zero()
TRUE = Eq(ZERO, ZERO)          # true  := 0=0
FALSE = Eq(ZERO, Succ(ZERO))   # false := 0=S(0)


def nat_of(a: Term) -> Term:
    """The shorthand a:nat, i.e. a=a."""
    return Eq(a, a)


def bool_of(p: Term) -> Term:
    """The shorthand p:bool, i.e. p \\/ ~p."""
    return Or(p, Neg(p))


def conj(p: Term, q: Term) -> Term:
    return Neg(Or(Neg(p), Neg(q)))


def implies(p: Term, q: Term) -> Term:
    return Or(Neg(p), q)


def iff(p: Term, q: Term) -> Term:
    return conj(implies(p, q), implies(q, p))


def neq(a: Term, b: Term) -> Term:
    return Neg(Eq(a, b))


def children(t: Term) -> tuple:
    """Immediate subterms, in the order used by path addressing."""
    if isinstance(t, (Var, Zero)):
        return ()
    if isinstance(t, (Succ, Pred, Neg)):
        return (t.t,)
    if isinstance(t, (Or, Eq)):
        return (t.l, t.r)
    if isinstance(t, Cond):
        return (t.c, t.a, t.b)
    if isinstance(t, Apply):
        return t.args
    if isinstance(t, (Forall, Exists)):
        return (t.body,)
    raise TypeError(f"not a term: {t!r}")


def with_children(t: Term, kids: tuple) -> Term:
    if isinstance(t, (Var, Zero)):
        return t
    if isinstance(t, Succ):
        return Succ(kids[0])
    if isinstance(t, Pred):
        return Pred(kids[0])
    if isinstance(t, Neg):
        return Neg(kids[0])
    if isinstance(t, Or):
        return Or(kids[0], kids[1])
    if isinstance(t, Eq):
        return Eq(kids[0], kids[1])
    if isinstance(t, Cond):
        return Cond(kids[0], kids[1], kids[2])
    if isinstance(t, Apply):
        return Apply(t.def_index, tuple(kids))
    if isinstance(t, Forall):
        return Forall(t.var, kids[0])
    if isinstance(t, Exists):
        return Exists(t.var, kids[0])
    raise TypeError(f"not a term: {t!r}")


def is_pure(t: Term) -> bool:
    """True iff t contains no quantifier node."""
    if isinstance(t, (Forall, Exists)):
        return False
    return all(is_pure(c) for c in children(t))


def term_size(t: Term) -> int:
    return 1 + sum(term_size(c) for c in children(t))


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for c in children(t):
        yield from subterms(c)


def subterm_at(t: Term, path: tuple) -> Term:
    """The subterm addressed by a dot-path of child indices."""
    for i in path:
        kids = children(t)
        if not (0 <= i < len(kids)):
            raise IndexError(f"path step {i} invalid at {t!r}")
        t = kids[i]
    return t


def replace_at(t: Term, path: tuple, new: Term) -> Term:
    if not path:
        return new
    i = path[0]
    kids = list(children(t))
    if not (0 <= i < len(kids)):
        raise IndexError(f"path step {i} invalid at {t!r}")
    kids[i] = replace_at(kids[i], path[1:], new)
    return with_children(t, tuple(kids))


def positions_of(t: Term, target: Term, under_binders: bool = False) -> list:
    """All paths at which `target` occurs in t.

    By default does not descend under quantifiers, since the template rules
    that consume these paths refuse to rewrite under a binder.
    """
    out = []

    def walk(u, path):
        if u == target:
            out.append(tuple(path))
            return
        if isinstance(u, (Forall, Exists)) and not under_binders:
            return
        for i, c in enumerate(children(u)):
            walk(c, path + [i])

    walk(t, [])
    return out


def free_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.index,))
    if isinstance(t, (Forall, Exists)):
        return free_vars(t.body) - {t.var}
    out = frozenset()
    for c in children(t):
        out |= free_vars(c)
    return out


def fresh_var(*terms: Term) -> int:
    """An index not free (nor bound) in any of the given terms."""
    used = set()

    def walk(u):
        if isinstance(u, Var):
            used.add(u.index)
        elif isinstance(u, (Forall, Exists)):
            used.add(u.var)
            walk(u.body)
        else:
            for c in children(u):
                walk(c)

    for t in terms:
        walk(t)
    return max(used, default=-1) + 1


def subst(t: Term, v: int, r: Term) -> Term:
    """Replace every free occurrence of variable v in t by r.

    Raises CaptureError if the replacement would be captured by a binder;
    callers rename with fresh_var first.
    """
    if isinstance(t, Var):
        return r if t.index == v else t
    if isinstance(t, (Forall, Exists)):
        if t.var == v:
            return t
        if v in free_vars(t.body) and t.var in free_vars(r):
            raise CaptureError(
                f"substituting v{v} under binder v{t.var} captures a free "
                f"variable of the replacement"
            )
        return with_children(t, (subst(t.body, v, r),))
    kids = children(t)
    if not kids:
        return t
    return with_children(t, tuple(subst(c, v, r) for c in kids))


def subst_many(t: Term, mapping: dict) -> Term:
    """Simultaneous substitution of several variables."""
    if isinstance(t, Var):
        return mapping.get(t.index, t)
    if isinstance(t, (Forall, Exists)):
        live = {v: r for v, r in mapping.items() if v != t.var and v in free_vars(t.body)}
        if not live:
            return t
        for r in live.values():
            if t.var in free_vars(r):
                raise CaptureError(
                    f"simultaneous substitution under binder v{t.var} captures"
                )
        return with_children(t, (subst_many(t.body, live),))
    kids = children(t)
    if not kids:
        return t
    return with_children(t, tuple(subst_many(c, mapping) for c in kids))


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are naturals")
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def numeral_value(t: Term) -> Optional[int]:
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.t
    return n if isinstance(t, Zero) else None


# ---------------------------------------------------------------------------
# Definition lists


@dataclass(frozen=True)
class NativeDef:
    """An oracle entry: a host function standing in for a definition body.

    fn(args, budget) receives the already-evaluated numeric arguments and the
    remaining fuel, and returns (outcome, fuel_consumed) using the evaluator's
    outcome types.
    """
    name: str
    arity: int
    fn: Callable = field(compare=False)


class DefinitionList:
    """Ordered definition bodies; indices are the definition symbols.

    Bodies may reference any index, including their own and undefined ones
    (the latter simply denote stuck computations).  Arity of a term body is
    the least natural strictly greater than every free variable index.
    """

    def __init__(self, entries=(), names=None):
        self.entries = tuple(entries)
        if names is None:
            names = tuple(f"d{i}" for i in range(len(self.entries)))
        self.names = tuple(names)
        if len(self.names) != len(self.entries):
            raise ValueError("names/entries length mismatch")
        self._by_name = {n: i for i, n in enumerate(self.names)}

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, DefinitionList)
            and self.entries == other.entries
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.entries, self.names))

    def index_of(self, name: str) -> Optional[int]:
        return self._by_name.get(name)

    def name_of(self, i: int) -> str:
        return self.names[i] if 0 <= i < len(self.names) else f"d{i}"

    def body(self, i: int):
        if not (0 <= i < len(self.entries)):
            raise IndexError(f"no definition with index {i}")
        return self.entries[i]

    def arity(self, i: int) -> int:
        entry = self.body(i)
        if isinstance(entry, NativeDef):
            return entry.arity
        fv = free_vars(entry)
        return max(fv, default=-1) + 1

    def extended(self, name: str, entry) -> "DefinitionList":
        if name in self._by_name:
            raise ValueError(f"duplicate definition name {name!r}")
        return DefinitionList(self.entries + (entry,), self.names + (name,))


EMPTY_DEFS = DefinitionList()
