"""Arithmetization: codes for terms, judgments and proofs, the proof-check
predicate C, and the reflective quantifier oracles.

Terms, judgments, lists and proofs are coded as self-delimiting bit
streams read back off the code's binary expansion (a leading sentinel
bit preserves leading zeros; every field is an Elias-gamma natural), so
a code's bit length is linear in the size of the object.  Nesting
objects through the Cantor pairing instead would double the bit length
at every level of structure, which makes proof codes astronomically
large.  The pairing function itself is still the glue for search stages:
a candidate stage s' splits as pair(proof-code, witness).

The quantifier oracles realize bounded positive/negative search:

  Eplus(v, p, s): some s' < s splits into (proof, witness w) where the
      proof checks |- p[v:=w].
  Aplus(v, p, s): some s' < s is a proof of {v:nat} |- p.
  E(v, p, s): 1 if the positive arm ever fires while raising the stage
      from s, 0 if the negative arm (Aplus on ~p) fires first; otherwise
      the search just consumes fuel.  A is the dual.

They are exposed both as plain functions and as native definition entries
so that elaborated quantifiers evaluate under the ordinary evaluator.  At
top level with enough fuel the oracles take shortcuts that produce the
same answers faster: the existential arm searches witnesses by evaluation
and certifies the hit, and the universal arm runs a bounded proof search;
nested oracle calls stay on the literal scan so towers of quantifiers
cannot multiply the shortcut work.
"""

from __future__ import annotations

from math import isqrt

from .certify import NotValueError, UncertifiableError, eval_certify
from .evaluator import OUT_OF_FUEL, STUCK_NATIVE, Stuck, Value, eval_term
from .kernel import (
    BGA_RULES, Judgment, KernelError, Proof, ProofStep, RuleApp, RULES,
    check_proof,
)
from .search import search_proof
from .terms import (
    Apply, Cond, DefinitionList, Eq, Exists, Forall, NativeDef, Neg, Or,
    Pred, Succ, Term, Var, ZERO, Zero, free_vars, is_pure, nat_of, numeral,
    subst,
)


class DecodeError(Exception):
    """The number is not a code of the expected kind."""


def pair(x: int, y: int) -> int:
    """The Cantor pairing of two naturals."""
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(n: int) -> tuple:
    """The inverse of pair."""
    if n < 0:
        raise ValueError("codes are naturals")
    w = (isqrt(8 * n + 1) - 1) // 2
    y = n - w * (w + 1) // 2
    return w - y, y


# ---------------------------------------------------------------------------
# Self-delimiting bitstream primitives

_MAX_LIST_ITEMS = 1 << 20


def _w_nat(out, n: int) -> None:
    """Append the Elias-gamma code of n: k zeros, then n+1 in k+1 bits."""
    if n < 0:
        raise DecodeError("codes are naturals")
    b = bin(n + 1)[2:]
    out.append("0" * (len(b) - 1))
    out.append(b)


def _finish(out) -> int:
    """A sentinel 1 bit keeps leading zeros of the stream significant."""
    return int("1" + "".join(out), 2)


class _Reader:
    """Reads gamma-coded naturals back off a code's binary expansion."""

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise DecodeError(f"{n!r} is not a code")
        self.bits = bin(n)[3:]  # strip '0b' and the sentinel bit
        self.pos = 0

    def nat(self) -> int:
        bits, pos = self.bits, self.pos
        z = pos
        while z < len(bits) and bits[z] == "0":
            z += 1
        width = z - pos + 1
        end = z + width
        if end > len(bits):
            raise DecodeError("truncated code")
        self.pos = end
        return int(bits[z:end], 2) - 1

    def close(self) -> None:
        if self.pos != len(self.bits):
            raise DecodeError("trailing bits in code")


def encode_list(items) -> int:
    out = []
    items = list(items)
    _w_nat(out, len(items))
    for h in items:
        _w_nat(out, h)
    return _finish(out)


def decode_list(n: int) -> list:
    r = _Reader(n)
    count = r.nat()
    if count > _MAX_LIST_ITEMS:
        raise DecodeError(f"list length {count} exceeds the decoder's cap")
    out = [r.nat() for _ in range(count)]
    r.close()
    return out


# ---------------------------------------------------------------------------
# Term codes

_TAG_ZERO, _TAG_VAR, _TAG_SUCC, _TAG_PRED, _TAG_NEG = 0, 1, 2, 3, 4
_TAG_OR, _TAG_EQ, _TAG_COND, _TAG_APPLY = 5, 6, 7, 8


def _w_term(out, t: Term) -> None:
    if isinstance(t, Zero):
        _w_nat(out, _TAG_ZERO)
    elif isinstance(t, Var):
        _w_nat(out, _TAG_VAR)
        _w_nat(out, t.index)
    elif isinstance(t, (Succ, Pred, Neg)):
        _w_nat(out, {Succ: _TAG_SUCC, Pred: _TAG_PRED, Neg: _TAG_NEG}[type(t)])
        _w_term(out, t.t)
    elif isinstance(t, (Or, Eq)):
        _w_nat(out, _TAG_OR if isinstance(t, Or) else _TAG_EQ)
        _w_term(out, t.l)
        _w_term(out, t.r)
    elif isinstance(t, Cond):
        _w_nat(out, _TAG_COND)
        _w_term(out, t.c)
        _w_term(out, t.a)
        _w_term(out, t.b)
    elif isinstance(t, Apply):
        _w_nat(out, _TAG_APPLY)
        _w_nat(out, t.def_index)
        _w_nat(out, len(t.args))
        for a in t.args:
            _w_term(out, a)
    else:
        raise DecodeError("quantifier nodes have no code; elaborate first")


def _r_term(r: _Reader) -> Term:
    tag = r.nat()
    if tag == _TAG_ZERO:
        return ZERO
    if tag == _TAG_VAR:
        return Var(r.nat())
    if tag in (_TAG_SUCC, _TAG_PRED, _TAG_NEG):
        cls = {_TAG_SUCC: Succ, _TAG_PRED: Pred, _TAG_NEG: Neg}[tag]
        return cls(_r_term(r))
    if tag in (_TAG_OR, _TAG_EQ):
        cls = Or if tag == _TAG_OR else Eq
        return cls(_r_term(r), _r_term(r))
    if tag == _TAG_COND:
        return Cond(_r_term(r), _r_term(r), _r_term(r))
    if tag == _TAG_APPLY:
        i = r.nat()
        arity = r.nat()
        if arity > _MAX_LIST_ITEMS:
            raise DecodeError(f"arity {arity} exceeds the decoder's cap")
        return Apply(i, tuple(_r_term(r) for _ in range(arity)))
    raise DecodeError(f"unknown term tag {tag}")


def encode_term(t: Term) -> int:
    out = []
    _w_term(out, t)
    return _finish(out)


def decode_term(n: int) -> Term:
    r = _Reader(n)
    try:
        t = _r_term(r)
    except RecursionError:
        raise DecodeError("term nesting exceeds the decoder's stack") from None
    r.close()
    return t


def wf_term_code(n: int) -> bool:
    """Total well-formedness test for term codes."""
    if n < 0:
        return False
    try:
        decode_term(n)
        return True
    except (DecodeError, RecursionError):
        return False


# ---------------------------------------------------------------------------
# Judgment and proof codes

def _w_judgment(out, j: Judgment) -> None:
    hyps = sorted(j.hyps, key=encode_term)  # canonical order for the set
    _w_nat(out, len(hyps))
    for h in hyps:
        _w_term(out, h)
    _w_term(out, j.concl)


def _r_judgment(r: _Reader) -> Judgment:
    count = r.nat()
    if count > _MAX_LIST_ITEMS:
        raise DecodeError(f"hypothesis count {count} exceeds the decoder's cap")
    hyps = frozenset(_r_term(r) for _ in range(count))
    return Judgment(hyps, _r_term(r))


def encode_judgment(j: Judgment) -> int:
    out = []
    _w_judgment(out, j)
    return _finish(out)


def decode_judgment(n: int) -> Judgment:
    r = _Reader(n)
    try:
        j = _r_judgment(r)
    except RecursionError:
        raise DecodeError("term nesting exceeds the decoder's stack") from None
    r.close()
    return j


_RULE_ID = {name: i for i, name in enumerate(BGA_RULES)}


def _w_rule_args(out, name, args) -> None:
    # the argument kinds are recovered from the rule's signature, so the
    # stream carries no per-argument tags
    sig = RULES[name][1]
    for k, kind in enumerate(sig):
        if kind == "P*":
            paths = args[k:]
            _w_nat(out, len(paths))
            for path in paths:
                _w_nat(out, len(path))
                for i in path:
                    _w_nat(out, i)
            return
        a = args[k]
        if kind == "N":
            _w_nat(out, a)
        elif kind == "T":
            _w_term(out, a)
        elif kind in ("G", "L"):
            items = sorted(a, key=encode_term) if kind == "G" else list(a)
            _w_nat(out, len(items))
            for t in items:
                _w_term(out, t)


def _r_rule_args(r: _Reader, name):
    sig = RULES[name][1]
    args = []
    for kind in sig:
        if kind == "P*":
            npaths = r.nat()
            if npaths > _MAX_LIST_ITEMS:
                raise DecodeError("path count exceeds the decoder's cap")
            for _ in range(npaths):
                plen = r.nat()
                if plen > _MAX_LIST_ITEMS:
                    raise DecodeError("path length exceeds the decoder's cap")
                args.append(tuple(r.nat() for _ in range(plen)))
            break
        if kind == "N":
            args.append(r.nat())
        elif kind == "T":
            args.append(_r_term(r))
        elif kind in ("G", "L"):
            count = r.nat()
            if count > _MAX_LIST_ITEMS:
                raise DecodeError("term-list length exceeds the decoder's cap")
            args.append(tuple(_r_term(r) for _ in range(count)))
    return tuple(args)


def _w_step(out, step: ProofStep) -> None:
    if step.rule.name not in _RULE_ID:
        raise DecodeError(f"rule {step.rule.name} is outside the coded fragment")
    # the step's judgment is deliberately not coded: replaying the rule
    # recomputes it, so the stored judgment would be redundant weight
    _w_nat(out, _RULE_ID[step.rule.name])
    _w_rule_args(out, step.rule.name, step.rule.args)
    _w_nat(out, len(step.premises))
    for i in step.premises:
        _w_nat(out, i)


def _r_step(r: _Reader) -> ProofStep:
    rid = r.nat()
    if rid >= len(BGA_RULES):
        raise DecodeError(f"unknown rule id {rid}")
    name = BGA_RULES[rid]
    args = _r_rule_args(r, name)
    count = r.nat()
    if count > _MAX_LIST_ITEMS:
        raise DecodeError("premise count exceeds the decoder's cap")
    premises = tuple(r.nat() for _ in range(count))
    return ProofStep(RuleApp(name, args), premises, None)


_MAX_PROOF_STEPS = 1 << 20


def encode_proof(proof: Proof) -> int:
    if not proof.steps:
        raise DecodeError("empty proofs have no code")
    out = []
    _w_nat(out, len(proof.steps))
    for s in proof.steps:
        _w_step(out, s)
    return _finish(out)


def decode_proof(n: int) -> Proof:
    r = _Reader(n)
    count = r.nat()
    if count == 0:
        raise DecodeError("empty proof")
    if count > _MAX_PROOF_STEPS:
        raise DecodeError(f"{count} steps exceeds the decoder's cap")
    try:
        steps = [_r_step(r) for _ in range(count)]
    except RecursionError:
        raise DecodeError("term nesting exceeds the decoder's stack") from None
    r.close()
    return Proof(steps)


def wf_proof_code(n: int) -> bool:
    if n < 0:
        return False
    try:
        decode_proof(n)
        return True
    except (DecodeError, RecursionError):
        return False


def proof_check_C(defs: DefinitionList, p: int, j: int) -> int:
    """1 iff p codes a proof that checks under defs and claims judgment j."""
    try:
        proof = decode_proof(p)
        claim = decode_judgment(j)
    except (DecodeError, RecursionError):
        return 0
    try:
        theorems = check_proof(defs, proof)
    except (KernelError, RecursionError):
        return 0
    return 1 if theorems[-1].judgment == claim else 0


# ---------------------------------------------------------------------------
# Bounded search oracles

# cap on the witness half of a scanned candidate: it bounds the work of
# substituting the numeral and encoding the target judgment per candidate
_MAX_WITNESS = 64
_SCAN_CAP = 10 ** 6
_ACCEL_FUEL = 2000
_ACCEL_WITNESSES = 64
_ACCEL_DEPTH = 6
_LITERAL_CAP = 2048
_NESTED_CAP = 64


class ScanBudgetError(Exception):
    """The requested bound exceeds what the scanner is willing to do."""


def _positive_hit(defs, v, tp, s_prime, hyp=False, cache=None):
    """Does s_prime = pair(proof, w) certify p[v:=w] (or {v:nat} |- p)?

    cache maps witness values (or "hyp") to precomputed target judgment
    codes, so staged scans do not re-encode the goal per candidate.
    """
    if cache is None:
        cache = {}
    if hyp:
        target = cache.get("hyp")
        if target is None:
            target = encode_judgment(Judgment(frozenset({nat_of(Var(v))}), tp))
            cache["hyp"] = target
        return proof_check_C(defs, s_prime, target) == 1
    pc, w = unpair(s_prime)
    if w > _MAX_WITNESS:
        return False
    target = cache.get(w)
    if target is None:
        try:
            inst = subst(tp, v, numeral(w))
            target = encode_judgment(Judgment(frozenset(), inst))
        except (DecodeError, RecursionError):
            return False
        cache[w] = target
    return proof_check_C(defs, pc, target) == 1


def Eplus(defs: DefinitionList, v: int, p: int, s: int,
          max_scan: int = _SCAN_CAP) -> int:
    """1 iff some s' < s splits into a checking proof of |- p[v:=witness].

    At most max_scan candidates are examined, scanning downward from s-1
    (certificates are usually planted just below the bound).  A hit in that
    window settles the answer at 1; an exhausted window with candidates
    left unexamined raises, since 0 could not be trusted.
    """
    if not wf_term_code(p):
        return 0
    tp = decode_term(p)
    cache = {}
    for sp in range(s - 1, max(s - 1 - max_scan, -1), -1):
        if _positive_hit(defs, v, tp, sp, cache=cache):
            return 1
    if s > max_scan:
        raise ScanBudgetError(f"no hit in the top {max_scan} of {s} candidates")
    return 0


def Aplus(defs: DefinitionList, v: int, p: int, s: int,
          max_scan: int = _SCAN_CAP) -> int:
    """1 iff some s' < s codes a checking proof of {v:nat} |- p.

    Scans downward from s-1 through at most max_scan candidates, like Eplus.
    """
    if not wf_term_code(p):
        return 0
    tp = decode_term(p)
    cache = {}
    for sp in range(s - 1, max(s - 1 - max_scan, -1), -1):
        if _positive_hit(defs, v, tp, sp, hyp=True, cache=cache):
            return 1
    if s > max_scan:
        raise ScanBudgetError(f"no hit in the top {max_scan} of {s} candidates")
    return 0


def search_exists(defs: DefinitionList, v: int, body: Term,
                  limit: int = _ACCEL_WITNESSES, fuel: int = _ACCEL_FUEL):
    """The least witness n with a certificate |- body[v:=n], as (n, theorem,
    proof); None when no witness up to the limit certifies."""
    for n in range(limit):
        inst = subst(body, v, numeral(n))
        if free_vars(inst) or not is_pure(inst):
            return None
        r = eval_term(defs, {}, inst, fuel)
        if not (isinstance(r, Value) and r.n == 1):
            continue
        try:
            thm, out, prf = eval_certify(defs, inst, fuel, kind="bool", trace=True)
        except (UncertifiableError, NotValueError):
            continue
        if out:
            return n, thm, prf
    return None


_accel_depth = 0


def _two_sided(defs, v, p, s, budget, universal: bool):
    """The E (universal=False) or A (universal=True) oracle body."""
    global _accel_depth
    if not wf_term_code(p):
        return OUT_OF_FUEL, budget
    tp = decode_term(p)
    pos_body = tp          # arm that returns 1
    neg_body = Neg(tp)     # arm that returns 0

    if budget >= _ACCEL_FUEL and _accel_depth == 0:
        _accel_depth += 1
        try:
            inner = budget // 2
            if universal:
                thm = search_proof(
                    defs, {nat_of(Var(v))}, pos_body, _ACCEL_DEPTH
                )
                if thm is not None:
                    return Value(1), budget // 4
                hit = search_exists(defs, v, neg_body, fuel=inner)
                if hit is not None:
                    return Value(0), budget // 4
            else:
                hit = search_exists(defs, v, pos_body, fuel=inner)
                if hit is not None:
                    return Value(1), budget // 4
                thm = search_proof(
                    defs, {nat_of(Var(v))}, neg_body, _ACCEL_DEPTH
                )
                if thm is not None:
                    return Value(0), budget // 4
            return OUT_OF_FUEL, budget
        finally:
            _accel_depth -= 1

    # literal staged scan; each candidate checked costs one unit.  The
    # number of candidates examined per call is capped: past the cap the
    # call reports out-of-fuel (always a sound answer for a bounded
    # search) instead of burning arbitrarily large budgets on decoding.
    # Scans nested inside an acceleration probe are speculative and get a
    # much smaller allowance.
    budget = min(budget, _LITERAL_CAP if _accel_depth == 0 else _NESTED_CAP)
    spent = 0
    c_one, c_zero = {}, {}

    def check_one(sp):
        return _positive_hit(defs, v, pos_body, sp, hyp=universal, cache=c_one)

    def check_zero(sp):
        return _positive_hit(defs, v, neg_body, sp, hyp=not universal, cache=c_zero)
    # everything below the starting stage is already visible: the
    # 1-arm is consulted before the 0-arm
    lo = min(s, budget)
    for sp in range(lo):
        spent += 1
        if check_one(sp):
            return Value(1), spent
    for sp in range(lo):
        spent += 1
        if spent > budget:
            return OUT_OF_FUEL, budget
        if check_zero(sp):
            return Value(0), spent
    sp = s
    while spent < budget:
        spent += 1
        if check_one(sp):
            return Value(1), spent
        if check_zero(sp):
            return Value(0), spent
        sp += 1
    return OUT_OF_FUEL, budget


def E(defs: DefinitionList, v: int, p: int, s: int, fuel: int):
    """Reflective existential: evaluator outcome of the two-sided search."""
    return _two_sided(defs, v, p, s, fuel, universal=False)[0]


def A(defs: DefinitionList, v: int, p: int, s: int, fuel: int):
    """Reflective universal: evaluator outcome of the two-sided search."""
    return _two_sided(defs, v, p, s, fuel, universal=True)[0]


# ---------------------------------------------------------------------------
# Elaboration of quantifiers into oracle applications

class Reflection:
    """A definition list extended with the native reflection oracles.

    elaborate() rewrites quantifier nodes into oracle applications; coded
    bodies are stored as zero-argument native constants so that terms stay
    small, and open bodies are closed at runtime through the SUBSTC
    oracle, which substitutes a numeral into a coded formula.
    """

    def __init__(self, defs: DefinitionList):
        self.defs = defs
        cell = self

        def mk(name, arity, fn):
            return NativeDef(name, arity, fn)

        def c_fn(vals, budget):
            return Value(proof_check_C(cell.defs, vals[0], vals[1])), 1

        def scan_fn(universal_hyp):
            def fn(vals, budget):
                v, p, s = vals
                if s > budget:
                    return OUT_OF_FUEL, budget
                if not wf_term_code(p):
                    return Value(0), min(s, budget) + 1
                tp = decode_term(p)
                cache = {}
                for sp in range(s - 1, -1, -1):
                    if _positive_hit(cell.defs, v, tp, sp,
                                     hyp=universal_hyp, cache=cache):
                        return Value(1), s - sp
                return Value(0), s + 1
            return fn

        def e_fn(vals, budget):
            return _two_sided(cell.defs, vals[0], vals[1], vals[2], budget, False)

        def a_fn(vals, budget):
            return _two_sided(cell.defs, vals[0], vals[1], vals[2], budget, True)

        def substc_fn(vals, budget):
            pc, v, val = vals
            if val > _MAX_WITNESS or not wf_term_code(pc):
                return Stuck(STUCK_NATIVE), 0
            try:
                t2 = subst(decode_term(pc), v, numeral(val))
                return Value(encode_term(t2)), 1
            except Exception:
                return Stuck(STUCK_NATIVE), 0

        for name, arity, fn in (
            ("C", 2, c_fn),
            ("Eplus", 3, scan_fn(False)),
            ("Aplus", 3, scan_fn(True)),
            ("E", 3, e_fn),
            ("A", 3, a_fn),
            ("SUBSTC", 3, substc_fn),
        ):
            if self.defs.index_of(name) is None:
                self.defs = self.defs.extended(name, mk(name, arity, fn))
        self.i_c = self.defs.index_of("C")
        self.i_eplus = self.defs.index_of("Eplus")
        self.i_aplus = self.defs.index_of("Aplus")
        self.i_e = self.defs.index_of("E")
        self.i_a = self.defs.index_of("A")
        self.i_substc = self.defs.index_of("SUBSTC")
        self._consts = {}
        self._elaborate_bodies()

    def _const(self, code: int) -> int:
        """Index of a zero-argument native returning the given code."""
        if code in self._consts:
            return self._consts[code]
        name = f"code{len(self._consts)}"
        self.defs = self.defs.extended(
            name, NativeDef(name, 0, lambda vals, budget, k=code: (Value(k), 0))
        )
        idx = self.defs.index_of(name)
        self._consts[code] = idx
        return idx

    def elaborate(self, t: Term) -> Term:
        """Rewrite quantifier nodes into reflective oracle applications."""
        if isinstance(t, (Forall, Exists)):
            body = self.elaborate(t.body)
            oracle = self.i_a if isinstance(t, Forall) else self.i_e
            carg: Term = Apply(self._const(encode_term(body)), ())
            for f in sorted(free_vars(body) - {t.var}):
                carg = Apply(self.i_substc, (carg, numeral(f), Var(f)))
            return Apply(oracle, (numeral(t.var), carg, ZERO))
        from .terms import children, with_children
        kids = children(t)
        if not kids:
            return t
        return with_children(t, tuple(self.elaborate(c) for c in kids))

    def _elaborate_bodies(self):
        for i in range(len(self.defs)):
            body = self.defs.body(i)
            if isinstance(body, NativeDef) or is_pure(body):
                continue
            new = self.elaborate(body)
            entries = list(self.defs.entries)
            entries[i] = new
            self.defs = DefinitionList(entries, self.defs.names)


def elaborate(defs: DefinitionList, t: Term):
    """Convenience wrapper: (extended definition list, elaborated term)."""
    r = Reflection(defs)
    t2 = r.elaborate(t)  # may append coded-constant natives to r.defs
    return r.defs, t2
