"""Surface grammar for terms and definition files.

Precedence, loosest to tightest:  `?:`  <  `<->`  <  `->`  <  `\\/` `/\\`
<  `=` `!=`  <  `~`  <  application.  Shorthands (true, false, nat, bool,
`/\\`, `->`, `<->`, `!=`) are expanded during parsing, so parse results only
ever contain the eleven real constructors.

The printer emits expanded syntax; `parse(print(t))` is the identity on
terms.  Definition files (.gad) hold one `name(params) := body` per line
with `#` comments; definition order fixes indices.
"""

from __future__ import annotations

import re

from .terms import (
    Apply, Cond, DefinitionList, EMPTY_DEFS, Eq, Exists, Forall, Neg,
    Or, Pred, Succ, Term, Var, ZERO, Zero, bool_of, conj, free_vars, iff,
    implies, nat_of, neq, numeral,
)


class ParseError(Exception):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(msg + where)


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<nat>\d+)
  | (?P<op><->|->|\\/|/\\|!=|[=~?:().,])
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"S", "P", "true", "false", "nat", "bool", "forall", "exists"}
_VAR_RE = re.compile(r"^v(\d+)$")
_ANON_DEF_RE = re.compile(r"^d(\d+)$")


def tokenize(text):
    toks, pos, line, linestart = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad character {text[pos]!r}", line, pos - linestart + 1)
        kind = m.lastgroup
        val = m.group()
        if kind == "ws":
            line += val.count("\n")
            if "\n" in val:
                linestart = m.end() - (len(val) - val.rfind("\n") - 1)
        else:
            toks.append((kind, val, line, pos - linestart + 1))
        pos = m.end()
    toks.append(("eof", "", line, pos - linestart + 1))
    return toks


class _Parser:
    def __init__(self, text, defs, env):
        self.toks = tokenize(text)
        self.i = 0
        self.defs = defs
        self.env = dict(env)

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        kind, v, line, col = self.peek()
        if v != val:
            raise ParseError(f"expected {val!r}, found {v or 'end of input'!r}", line, col)
        return self.next()

    def at(self, val):
        return self.peek()[1] == val

    def error(self, msg):
        _, v, line, col = self.peek()
        raise ParseError(msg, line, col)

    # precedence ladder -----------------------------------------------------

    def term(self) -> Term:
        t = self.cond()
        return t

    def cond(self) -> Term:
        c = self.iff_()
        if self.at("?"):
            self.next()
            a = self.iff_()
            self.expect(":")
            b = self.cond()
            return Cond(c, a, b)
        return c

    def iff_(self) -> Term:
        l = self.imp()
        while self.at("<->"):
            self.next()
            l = iff(l, self.imp())
        return l

    def imp(self) -> Term:
        l = self.or_()
        if self.at("->"):
            self.next()
            return implies(l, self.imp())
        return l

    def or_(self) -> Term:
        l = self.eq()
        while self.at("\\/") or self.at("/\\"):
            op = self.next()[1]
            r = self.eq()
            l = Or(l, r) if op == "\\/" else conj(l, r)
        return l

    def eq(self) -> Term:
        l = self.neg()
        while self.at("=") or self.at("!="):
            op = self.next()[1]
            r = self.neg()
            l = Eq(l, r) if op == "=" else neq(l, r)
        return l

    def neg(self) -> Term:
        if self.at("~"):
            self.next()
            return Neg(self.neg())
        return self.atom()

    def args(self) -> tuple:
        self.expect("(")
        out = []
        if not self.at(")"):
            out.append(self.term())
            while self.at(","):
                self.next()
                out.append(self.term())
        self.expect(")")
        return tuple(out)

    def binder(self, cls) -> Term:
        kind, name, line, col = self.next()
        if kind not in ("ident", "nat"):
            raise ParseError("expected a variable name after quantifier", line, col)
        m = _VAR_RE.match(name)
        if m:
            idx = int(m.group(1))
        else:
            used = set(self.env.values())
            idx = 0
            while idx in used:
                idx += 1
        self.expect(".")
        saved = self.env.get(name)
        self.env[name] = idx
        body = self.cond()
        if saved is None:
            del self.env[name]
        else:
            self.env[name] = saved
        return cls(idx, body)

    def atom(self) -> Term:
        kind, val, line, col = self.peek()
        if kind == "nat":
            self.next()
            return numeral(int(val))
        if val == "(":
            self.next()
            t = self.term()
            self.expect(")")
            return t
        if kind != "ident":
            self.error(f"unexpected {val or 'end of input'!r}")
        if val in ("S", "P"):
            self.next()
            inner = self.args()
            if len(inner) != 1:
                raise ParseError(f"{val} takes one argument", line, col)
            return Succ(inner[0]) if val == "S" else Pred(inner[0])
        if val == "true":
            self.next()
            return Eq(ZERO, ZERO)
        if val == "false":
            self.next()
            return Eq(ZERO, Succ(ZERO))
        if val in ("nat", "bool"):
            self.next()
            inner = self.args()
            if len(inner) != 1:
                raise ParseError(f"{val} takes one argument", line, col)
            return nat_of(inner[0]) if val == "nat" else bool_of(inner[0])
        if val == "forall":
            self.next()
            return self.binder(Forall)
        if val == "exists":
            self.next()
            return self.binder(Exists)
        self.next()
        m = _VAR_RE.match(val)
        if m and val not in self.env and self.defs.index_of(val) is None:
            return Var(int(m.group(1)))
        if val in self.env:
            return Var(self.env[val])
        di = self.defs.index_of(val)
        if di is None:
            m = _ANON_DEF_RE.match(val)
            if m:
                di = int(m.group(1))
        if di is not None:
            call_args = self.args() if self.at("(") else ()
            return Apply(di, call_args)
        raise ParseError(f"unknown name {val!r}", line, col)


def parse(text: str, defs: DefinitionList = EMPTY_DEFS, env=None) -> Term:
    p = _Parser(text, defs, env or {})
    t = p.term()
    kind, val, line, col = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", line, col)
    return t


# ---------------------------------------------------------------------------
# Printing

_PREC_COND, _PREC_OR, _PREC_EQ, _PREC_NEG, _PREC_ATOM = 1, 2, 3, 4, 5


def print_term(t: Term, defs: DefinitionList = EMPTY_DEFS) -> str:
    def paren(s, inner, outer):
        return f"({s})" if inner < outer else s

    def pr(u, prec):
        if isinstance(u, Var):
            return f"v{u.index}"
        if isinstance(u, Zero):
            return "0"
        if isinstance(u, Succ):
            return f"S({pr(u.t, _PREC_COND)})"
        if isinstance(u, Pred):
            return f"P({pr(u.t, _PREC_COND)})"
        if isinstance(u, Neg):
            return paren(f"~{pr(u.t, _PREC_NEG)}", _PREC_NEG, prec)
        if isinstance(u, Or):
            s = f"{pr(u.l, _PREC_OR)} \\/ {pr(u.r, _PREC_EQ)}"
            return paren(s, _PREC_OR, prec)
        if isinstance(u, Eq):
            s = f"{pr(u.l, _PREC_NEG)} = {pr(u.r, _PREC_NEG)}"
            return paren(s, _PREC_EQ, prec)
        if isinstance(u, Cond):
            s = f"{pr(u.c, _PREC_OR)} ? {pr(u.a, _PREC_OR)} : {pr(u.b, _PREC_COND)}"
            return paren(s, _PREC_COND, prec)
        if isinstance(u, Apply):
            name = defs.name_of(u.def_index)
            if not u.args:
                return f"{name}()"
            return f"{name}({', '.join(pr(a, _PREC_COND) for a in u.args)})"
        if isinstance(u, Forall):
            return paren(f"forall v{u.var}. {pr(u.body, _PREC_COND)}", _PREC_COND, prec)
        if isinstance(u, Exists):
            return paren(f"exists v{u.var}. {pr(u.body, _PREC_COND)}", _PREC_COND, prec)
        raise TypeError(f"not a term: {u!r}")

    return pr(t, _PREC_COND)


# ---------------------------------------------------------------------------
# Definition files

_DEF_LINE = re.compile(
    r"^\s*(?P<name>[A-Za-z_][A-Za-z_0-9]*)\s*(?:\((?P<params>[^)]*)\))?\s*:=\s*(?P<body>.+)$"
)


def load_gad(text: str, base: DefinitionList = EMPTY_DEFS) -> DefinitionList:
    """Parse a .gad definition file on top of an existing definition list.

    Two passes so bodies may reference themselves and later definitions.
    """
    entries = []  # (name, params, body_text, line_no)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _DEF_LINE.match(line)
        if not m:
            raise ParseError(f"bad definition line: {line!r}", lineno, 1)
        params = [p.strip() for p in (m.group("params") or "").split(",") if p.strip()]
        entries.append((m.group("name"), params, m.group("body"), lineno))

    names = list(base.names) + [e[0] for e in entries]
    if len(set(names)) != len(names):
        raise ParseError("duplicate definition name in .gad file")
    placeholder = DefinitionList([ZERO] * len(names), names)
    bodies = list(base.entries)
    for name, params, body_text, lineno in entries:
        env = {p: i for i, p in enumerate(params)}
        try:
            body = parse(body_text, placeholder, env)
        except ParseError as e:
            raise ParseError(f"in definition {name!r}: {e}", lineno, 1) from e
        fv = free_vars(body)
        if params and any(v >= len(params) for v in fv):
            raise ParseError(
                f"definition {name!r} uses a variable beyond its parameters", lineno, 1
            )
        bodies.append(body)
    return DefinitionList(bodies, names)
