"""Proof-script (.gap) serialization.

A script holds one or more theorems.  Each theorem names its claim and
lists primitive rule applications, one per line, in dependency order:

    theorem add_total : [`nat(v0)`] |- `nat(add(v0, v1))`
      s0: H `nat(v0)` []
      s1: =S from s0
      qed

Rule arguments follow each rule's signature: naturals are bare digits,
terms are backquoted, hypothesis sets are bracketed lists of backquoted
terms, argument tuples are parenthesized lists of backquoted terms, and
template paths are written `@0.1` (a bare `@` is the empty path).  Premise
labels come after `from`.  Step judgments are not written; the kernel
recomputes every one on replay, and the final step must land exactly on
the claimed judgment.
"""

from __future__ import annotations

import re

from .kernel import Judgment, Proof, ProofStep, RuleApp, RULES, check_proof
from .parser import ParseError, parse, print_term
from .terms import DefinitionList


class ScriptError(Exception):
    pass


_THEOREM_RE = re.compile(
    r"^theorem\s+(?P<name>[A-Za-z_][A-Za-z_0-9]*)\s*:\s*(?P<judgment>.*)$"
)
_STEP_RE = re.compile(
    r"^(?P<label>[A-Za-z_][A-Za-z_0-9]*)\s*:\s*(?P<rest>.*)$"
)
_TOK = re.compile(
    r"""
    \s+
  | `(?P<term>[^`]*)`
  | (?P<path>@(?:\d+(?:\.\d+)*)?)
  | (?P<nat>\d+)
  | (?P<punct>[\[\](),])
  | (?P<word>[^\s\[\](),`@]+)
    """,
    re.VERBOSE,
)


def _tokens(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise ScriptError(f"bad script token at {text[pos:pos + 20]!r}")
        if m.lastgroup == "term":
            out.append(("term", m.group("term")))
        elif m.lastgroup == "path":
            out.append(("path", m.group("path")))
        elif m.lastgroup == "nat":
            out.append(("nat", int(m.group("nat"))))
        elif m.lastgroup == "punct":
            out.append(("punct", m.group("punct")))
        elif m.lastgroup == "word":
            out.append(("word", m.group("word")))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, toks):
        self.toks, self.i = toks, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", None)

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def done(self):
        return self.i >= len(self.toks)


def _term_list(cur, defs, open_p, close_p):
    kind, val = cur.next()
    if (kind, val) != ("punct", open_p):
        raise ScriptError(f"expected {open_p!r}")
    out = []
    while cur.peek() != ("punct", close_p):
        kind, val = cur.next()
        if kind == "punct" and val == ",":
            continue
        if kind != "term":
            raise ScriptError(f"expected a backquoted term, got {val!r}")
        out.append(parse(val, defs))
    cur.next()
    return tuple(out)


def _parse_args(cur, defs, signature):
    args = []
    for kind in signature:
        if kind == "N":
            tk, val = cur.next()
            if tk != "nat":
                raise ScriptError(f"expected a natural argument, got {val!r}")
            args.append(val)
        elif kind == "T":
            tk, val = cur.next()
            if tk != "term":
                raise ScriptError(f"expected a term argument, got {val!r}")
            args.append(parse(val, defs))
        elif kind == "G":
            args.append(_term_list(cur, defs, "[", "]"))
        elif kind == "L":
            args.append(_term_list(cur, defs, "(", ")"))
        elif kind == "P*":
            while cur.peek()[0] == "path":
                spec = cur.next()[1][1:]
                args.append(tuple(int(x) for x in spec.split(".")) if spec else ())
        else:  # pragma: no cover - signature kinds are fixed
            raise ScriptError(f"unknown signature kind {kind!r}")
    return tuple(args)


def _parse_judgment(text, defs):
    if "|-" not in text:
        raise ScriptError(f"claim {text!r} lacks '|-'")
    left, right = text.rsplit("|-", 1)
    cur = _Cursor(_tokens(left))
    hyps = _term_list(cur, defs, "[", "]")
    if not cur.done():
        raise ScriptError(f"trailing input in hypothesis list of {text!r}")
    concl = right.strip()
    if concl.startswith("`") and concl.endswith("`"):
        concl = concl[1:-1]
    return Judgment(frozenset(hyps), parse(concl, defs))


def parse_script(text: str, defs: DefinitionList):
    """[(name, claimed Judgment, Proof)] for each theorem in the script."""
    out = []
    name = claim = None
    labels = {}
    steps = []

    def close():
        nonlocal name, claim, labels, steps
        if name is not None:
            raise ScriptError(f"theorem {name!r} lacks qed")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            m = _THEOREM_RE.match(line)
            if m:
                close()
                name = m.group("name")
                claim = _parse_judgment(m.group("judgment"), defs)
                labels, steps = {}, []
                continue
            if line == "qed":
                if name is None:
                    raise ScriptError("qed outside a theorem")
                if not steps:
                    raise ScriptError(f"theorem {name!r} has no steps")
                steps[-1] = ProofStep(steps[-1].rule, steps[-1].premises, claim)
                out.append((name, claim, Proof(steps)))
                name = claim = None
                continue
            if name is None:
                raise ScriptError(f"step outside a theorem: {line!r}")
            m = _STEP_RE.match(line)
            if not m:
                raise ScriptError(f"bad step line: {line!r}")
            label = m.group("label")
            if label in labels:
                raise ScriptError(f"duplicate label {label!r}")
            rest = m.group("rest").lstrip()
            rule_name, _, arg_text = rest.partition(" ")
            if rule_name not in RULES:
                raise ScriptError(f"unknown rule {rule_name!r}")
            cur = _Cursor(_tokens(arg_text))
            args = _parse_args(cur, defs, RULES[rule_name][1])
            premises = []
            if not cur.done():
                tk, val = cur.next()
                if (tk, val) != ("word", "from"):
                    raise ScriptError(f"expected 'from', got {val!r}")
                while not cur.done():
                    tk, val = cur.next()
                    if tk == "punct" and val == ",":
                        continue
                    if tk != "word" or val not in labels:
                        raise ScriptError(f"unknown premise label {val!r}")
                    premises.append(labels[val])
            labels[label] = len(steps)
            steps.append(ProofStep(RuleApp(rule_name, args), tuple(premises)))
        except (ScriptError, ParseError) as e:
            raise ScriptError(f"line {lineno}: {e}") from e
    close()
    return out


def check_script(text: str, defs: DefinitionList):
    """Replay every theorem; [(name, Theorem)] or ScriptError."""
    out = []
    for name, claim, proof in parse_script(text, defs):
        try:
            thms = check_proof(defs, proof)
        except Exception as e:
            raise ScriptError(f"theorem {name!r} failed to replay: {e}") from e
        if thms[-1].judgment != claim:
            raise ScriptError(
                f"theorem {name!r} proves {thms[-1].judgment!r}, "
                f"not the claimed {claim!r}"
            )
        out.append((name, thms[-1]))
    return out


def _fmt_term(t, defs):
    return f"`{print_term(t, defs)}`"


def _fmt_args(rule_name, args, defs):
    signature = RULES[rule_name][1]
    parts = []
    i = 0
    for kind in signature:
        if kind == "N":
            parts.append(str(args[i]))
            i += 1
        elif kind == "T":
            parts.append(_fmt_term(args[i], defs))
            i += 1
        elif kind == "G":
            inner = ", ".join(sorted(_fmt_term(t, defs) for t in args[i]))
            parts.append(f"[{inner}]")
            i += 1
        elif kind == "L":
            inner = ", ".join(_fmt_term(t, defs) for t in args[i])
            parts.append(f"({inner})")
            i += 1
        elif kind == "P*":
            for path in args[i:]:
                parts.append("@" + ".".join(map(str, path)))
            i = len(args)
    return parts


def format_script(name: str, claim: Judgment, proof: Proof,
                  defs: DefinitionList) -> str:
    hyps = ", ".join(sorted(_fmt_term(h, defs) for h in claim.hyps))
    lines = [f"theorem {name} : [{hyps}] |- {_fmt_term(claim.concl, defs)}"]
    for k, step in enumerate(proof.steps):
        parts = [f"  s{k}: {step.rule.name}"]
        parts.extend(_fmt_args(step.rule.name, step.rule.args, defs))
        if step.premises:
            parts.append("from " + ", ".join(f"s{i}" for i in step.premises))
        lines.append(" ".join(parts))
    lines.append("  qed")
    return "\n".join(lines) + "\n"
