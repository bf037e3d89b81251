"""Batch front door: the `ga` command.

Subcommands: check (replay .gap proof scripts), eval, encode, decode,
prove (tactic-generated scripts), harness, paradox, selftest.

Exit codes: 0 success, 1 proof or harness failure, 2 parse/config error.
The default evaluation fuel can be set with the GA_FUEL environment
variable; flags override it.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import harness as _harness
from .certify import primrec_termination
from .coding import decode_term, elaborate, encode_term, wf_term_code
from .evaluator import eval_term, serialize_outcome
from .kernel import KernelError
from .parser import ParseError, load_gad, parse, print_term
from .scripts import ScriptError, check_script, format_script
from .terms import EMPTY_DEFS, is_pure

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class CliError(Exception):
    """A configuration or input problem (exit code 2)."""


def _default_fuel():
    raw = os.environ.get("GA_FUEL", "1000")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"GA_FUEL must be an integer, got {raw!r}")


def _load_defs(path):
    if path is None:
        return EMPTY_DEFS
    try:
        with open(path) as fh:
            return load_gad(fh.read())
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}")
    except ParseError as e:
        raise CliError(f"{path}: {e}")


def _parse_assign(text):
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise CliError(f"bad assignment {item!r}; expected v<i>=<n>")
        var, _, val = item.partition("=")
        var = var.strip()
        if not (var.startswith("v") and var[1:].isdigit() and val.strip().isdigit()):
            raise CliError(f"bad assignment {item!r}; expected v<i>=<n>")
        out[int(var[1:])] = int(val)
    return out


def _cmd_check(args):
    defs = _load_defs(args.defs)
    try:
        with open(args.script) as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(f"cannot read {args.script}: {e}")
    try:
        results = check_script(text, defs)
    except ScriptError as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    for name, thm in results:
        hyps = ", ".join(sorted(print_term(h, defs) for h in thm.judgment.hyps))
        print(f"ok {name}: [{hyps}] |- {print_term(thm.judgment.concl, defs)}")
    return EXIT_OK


def _cmd_eval(args):
    defs = _load_defs(args.defs)
    t = parse(args.term, defs)
    assignment = _parse_assign(args.assign)
    if not is_pure(t):
        defs, t = elaborate(defs, t)
    print(serialize_outcome(eval_term(defs, assignment, t, args.fuel)))
    return EXIT_OK


def _cmd_encode(args):
    defs = _load_defs(args.defs)
    print(encode_term(parse(args.term, defs)))
    return EXIT_OK


def _cmd_decode(args):
    defs = _load_defs(args.defs)
    if not args.code.isdigit():
        raise CliError(f"decode expects a natural number, got {args.code!r}")
    code = int(args.code)
    if not wf_term_code(code):
        print("not a well-formed term code", file=sys.stderr)
        return EXIT_FAIL
    print(print_term(decode_term(code), defs))
    return EXIT_OK


def _cmd_prove(args):
    defs = _load_defs(args.defs)
    if args.tactic != "primrec":
        raise CliError(f"unknown tactic {args.tactic!r}")
    if defs.index_of(args.name) is None:
        raise CliError(f"no definition named {args.name!r}")
    try:
        thm, proof = primrec_termination(defs, args.name, trace=True)
    except KernelError as e:
        print(f"prove failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except Exception as e:
        print(f"prove failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    script = format_script(f"{args.name}_total", thm.judgment, proof, defs)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(script)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(script)
    return EXIT_OK


def _cmd_harness(args):
    defs = _load_defs(args.defs) if args.defs else _harness.default_defs()
    if args.rule == "all":
        rules = list(_harness.RULES)
    elif args.rule == "canary":
        rules = [_harness.CANARY_RULE]
    else:
        rules = [args.rule]
    reports = [
        _harness.check_rule(defs, r, cases=args.cases, domain=args.domain,
                            fuel=args.fuel, seed=args.seed)
        for r in rules
    ]
    for line in _harness.report_lines(reports):
        print(line)
    failed = any(not r.ok for r in reports if r.rule != _harness.CANARY_RULE)
    canary = [r for r in reports if r.rule == _harness.CANARY_RULE]
    if canary and canary[0].ok:
        print("canary produced no counterexample", file=sys.stderr)
        failed = True
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_paradox(args):
    cases = _harness.default_paradox_cases(max_fuel=args.fuel)
    reports = _harness.paradox_report(cases)
    for line in _harness.report_lines(reports):
        print(line)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _cmd_selftest(args):
    failures = []

    det = _harness.check_determinism(cases=200, fuel=200, seed=0)
    print(f"determinism: {det.cases} cases, "
          f"{len(det.violations)} violations")
    if not det.ok:
        failures.append("determinism")

    for rule in ("=S", "~~E", "\\/E1", "defIE.fwd", "Ind"):
        rep = _harness.check_rule(rule=rule, cases=25, domain=3,
                                  fuel=300, seed=0)
        print(f"rule {rule}: {rep.cases} cases, "
              f"{len(rep.counterexamples)} counterexamples")
        if not rep.ok:
            failures.append(rule)

    canary = _harness.check_rule(rule=_harness.CANARY_RULE, cases=2,
                                 domain=3, fuel=300, seed=0)
    print(f"canary: {len(canary.counterexamples)} counterexamples (want >= 1)")
    if canary.ok:
        failures.append("canary")

    cases = _harness.default_paradox_cases(max_fuel=1000)
    reports = _harness.paradox_report(cases)
    for rep in reports:
        print(f"paradox {rep.name}: "
              f"{'ok' if rep.ok else 'FAIL'}")
        if not rep.ok:
            failures.append(rep.name)

    defs = _harness.default_defs()
    thm, _ = primrec_termination(defs, "add", trace=True)
    print(f"add termination: {print_term(thm.judgment.concl, defs)}")

    if failures:
        print(f"selftest FAILED: {failures}", file=sys.stderr)
        return EXIT_FAIL
    print("selftest ok")
    return EXIT_OK


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="ga",
        description="proof checker, evaluator, and reflection toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    fuel = _default_fuel

    p = sub.add_parser("check", help="replay a .gap proof script")
    p.add_argument("script")
    p.add_argument("--defs")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("eval", help="evaluate a term")
    p.add_argument("term")
    p.add_argument("--defs")
    p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--assign", default="")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("encode", help="numeric code of a term")
    p.add_argument("term")
    p.add_argument("--defs")
    p.set_defaults(fn=_cmd_encode)

    p = sub.add_parser("decode", help="term of a numeric code")
    p.add_argument("code")
    p.add_argument("--defs")
    p.set_defaults(fn=_cmd_decode)

    p = sub.add_parser("prove", help="generate a proof script by tactic")
    p.add_argument("name")
    p.add_argument("--tactic", default="primrec")
    p.add_argument("--defs")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_prove)

    p = sub.add_parser("harness", help="truth-preservation fuzzing")
    p.add_argument("--rule", default="all")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--domain", type=int, default=5)
    p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--defs")
    p.set_defaults(fn=_cmd_harness)

    p = sub.add_parser("paradox", help="paradox corpus report")
    p.add_argument("--fuel", type=int, default=100000)
    p.set_defaults(fn=_cmd_paradox)

    p = sub.add_parser("selftest", help="run the bundled corpus checks")
    p.set_defaults(fn=_cmd_selftest)

    return ap, fuel


def main(argv=None) -> int:
    ap, fuel = _build_parser()
    try:
        args = ap.parse_args(argv)
        if getattr(args, "fuel", None) is None and hasattr(args, "fuel"):
            args.fuel = fuel()
        return args.fn(args)
    except (CliError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
