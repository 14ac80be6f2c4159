"""Command-line interface.

Exit codes: 0 success / identity holds, 1 identity fails or nothing found,
2 usage or runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import __version__
from .algebra import (
    FiniteAlgebra,
    aperiodic_index,
    derive_addition,
    find_all_ai_additions,
    idempotents,
    natural_order,
)
from .engine import (
    DEFAULT_TERM_BUDGET,
    check_identity,
    find_separating_identity,
    identity_spectrum,
    parse_signature,
)
from .errors import SeminfError
from .formats import ParsedAlgebra, format_algebra, load_algebra, parse_algebra
from .parallel import default_jobs
from .rook import DEFAULT_BUDGET, brandt_b21, cn, mk
from .suites import SUITES, verify_suite
from .terms import operations, parse_identity, to_text

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def cache_dir() -> Path:
    env = os.environ.get("SEMINF_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "seminf"


def cached_cn_text(n: int, budget: int, use_cache: bool = True) -> str:
    path = cache_dir() / f"cn-n{n}-b{budget}.alg"
    if use_cache and path.is_file():
        return path.read_text(encoding="utf-8")
    gen = cn(n, budget=budget)
    text = format_algebra(gen.base, gen.reps)
    if use_cache:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".tmp{os.getpid()}")
            tmp.write_text(text, encoding="utf-8")
            tmp.replace(path)
        except OSError:
            pass  # caching is best effort
    return text


def resolve_algebra(source: str, use_cache: bool = True) -> ParsedAlgebra:
    """A file path, or one of the built-in names b21, cnN, mkN_K."""
    if os.path.exists(source):
        return load_algebra(source)
    if source == "b21":
        gen = brandt_b21()
        return ParsedAlgebra(gen.base, gen.reps)
    m = re.fullmatch(r"cn(\d+)", source)
    if m:
        return parse_algebra(cached_cn_text(int(m.group(1)), DEFAULT_BUDGET, use_cache))
    m = re.fullmatch(r"mk(\d+)_(\d+)", source)
    if m:
        return _mk(int(m.group(1)), int(m.group(2)))
    raise UsageError(f"no such algebra file: {source}")


def _mk(n: int, k: int) -> ParsedAlgebra:
    gen = cn(n)
    subset = mk(n, k, gen)
    S = gen.base.restrict(subset, name=f"M{k}_{n}")
    return ParsedAlgebra(S, tuple(gen.reps[i] for i in subset))


def _prepare(S: FiniteAlgebra, ops) -> FiniteAlgebra:
    # attach inverse map / derived addition on demand, noting it on stderr
    ops = set(ops)
    if ("inv" in ops or "add" in ops) and S.inv is None:
        S = S.with_inverse()
        print(f"note: using the unique-inverse map of {S.name}", file=sys.stderr)
    if "add" in ops and S.add is None:
        index = aperiodic_index(S)
        S = S.with_addition(derive_addition(S, index))
        print(f"note: using the derived addition (x y')^{index} x on {S.name}", file=sys.stderr)
    return S


def _emit(args, text: str | None, payload: dict) -> None:
    if args.format == "json":
        base = {"verdict": None, "counterexample": None, "counts": {}, "seed": args.seed}
        base.update(payload)
        sys.stdout.write(json.dumps(base, indent=2, ensure_ascii=False) + "\n")
    elif text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _write_output(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _names(S: FiniteAlgebra, assignment: dict) -> dict:
    return {v: S.elements[e] for v, e in assignment.items()}


# ------------------------------------------------------------- subcommands

def cmd_gen(args) -> int:
    if args.what == "b21":
        gen = brandt_b21()
        text = format_algebra(gen.base, gen.reps)
    elif args.what == "cn":
        if args.n is None:
            raise UsageError("gen cn needs --n")
        if args.n < 2:
            raise UsageError("--n must be at least 2")
        text = cached_cn_text(args.n, args.budget, use_cache=not args.no_cache)
    else:
        if args.n is None or args.k is None:
            raise UsageError("gen mk needs --n and --k")
        if args.n < 2 or not 1 <= args.k <= args.n:
            raise UsageError("need n >= 2 and 1 <= k <= n")
        parsed = _mk(args.n, args.k)
        text = format_algebra(parsed.algebra, parsed.reps)
    _write_output(args, text)
    return 0


def cmd_derive_add(args) -> int:
    parsed = resolve_algebra(args.algebra, not args.no_cache)
    S = parsed.algebra.with_inverse()
    power = args.power if args.power is not None else aperiodic_index(S)
    S = S.with_addition(derive_addition(S, power))
    _write_output(args, format_algebra(S, parsed.reps))
    return 0


def cmd_additions(args) -> int:
    S = resolve_algebra(args.algebra, not args.no_cache).algebra
    found = find_all_ai_additions(S, jobs=args.jobs)
    derived = None
    try:
        Si = S.with_inverse()
        derived = derive_addition(Si, aperiodic_index(Si))
    except SeminfError:
        pass
    lines = [f"algebra {S.name}: {len(found)} ai-semiring addition(s)"]
    width = max(len(e) for e in S.elements)
    tables = []
    for i, t in enumerate(found, start=1):
        same = derived is not None and t == derived
        lines.append(f"addition {i}{' (equals the derived addition)' if same else ''}")
        rows = [" ".join(f"{S.elements[x]:<{width}}" for x in row).rstrip() for row in t.table.tolist()]
        lines += rows
        tables.append({"table": [[S.elements[x] for x in row] for row in t.table.tolist()],
                       "equals_derived": same})
    _emit(args, "\n".join(lines), {
        "verdict": "found" if found else "none",
        "counts": {"elements": S.size, "additions": len(found)},
        "additions": tables,
    })
    return 0 if found else 1


def cmd_order(args) -> int:
    S = resolve_algebra(args.algebra, not args.no_cache).algebra.with_inverse()
    order = natural_order(S)
    covers = order.covers()
    names = S.elements
    lines = [f"algebra {S.name}: natural partial order",
             "idempotents: " + " ".join(names[e] for e in idempotents(S)),
             f"covering pairs ({len(covers)}):"]
    lines += [f"  {names[a]} < {names[b]}" for a, b in covers]
    if args.dot:
        dot = order.to_dot()
        if args.dot == "-":
            sys.stdout.write(dot)
        else:
            Path(args.dot).write_text(dot, encoding="utf-8")
    if args.dot != "-":
        _emit(args, "\n".join(lines), {
            "verdict": "ok",
            "counts": {"elements": S.size, "covers": len(covers)},
            "covers": [[names[a], names[b]] for a, b in covers],
        })
    return 0


def cmd_check(args) -> int:
    ident = parse_identity(args.identity)
    S = resolve_algebra(args.algebra, not args.no_cache).algebra
    S = _prepare(S, operations(ident.lhs) | operations(ident.rhs))
    rep = check_identity(S, ident, jobs=args.jobs)
    ce = _names(S, rep.counterexample) if rep.counterexample else None
    if rep.holds:
        text = f"holds in {S.name}: {to_text(ident)}  ({rep.evaluations} evaluations)"
    else:
        text = (f"fails in {S.name}: {to_text(ident)}\n"
                f"counterexample: {' '.join(f'{k}={v}' for k, v in ce.items())}\n"
                f"lhs = {S.elements[rep.lhs_value]}, rhs = {S.elements[rep.rhs_value]}")
    _emit(args, text, {
        "verdict": rep.verdict,
        "counterexample": ce,
        "counts": {"evaluations": rep.evaluations},
        "identity": to_text(ident),
    })
    return 0 if rep.holds else 1


def cmd_spectrum(args) -> int:
    sig = parse_signature(args.signature)
    S = _prepare(resolve_algebra(args.algebra, not args.no_cache).algebra, sig)
    spectrum = identity_spectrum(S, args.vars, args.max_size, sig, budget=args.term_budget, jobs=args.jobs)
    terms = spectrum.table.terms
    ids = spectrum.identity_pairs()
    lines = [f"algebra {S.name}: {spectrum.term_count} terms, {len(spectrum.classes)} classes, "
             f"{len(ids)} identities (vars={args.vars}, max-size={args.max_size}, "
             f"signature={','.join(o for o in ('mul', 'inv', 'add') if o in sig)})"]
    for i, cls in enumerate(spectrum.classes, start=1):
        lines.append(f"class {i} ({len(cls)}): " + " ; ".join(to_text(terms[j]) for j in cls))
    _emit(args, "\n".join(lines), {
        "verdict": "ok",
        "counts": {"terms": spectrum.term_count, "classes": len(spectrum.classes), "identities": len(ids)},
        "classes": [[to_text(terms[j]) for j in cls] for cls in spectrum.classes],
    })
    return 0


def cmd_separate(args) -> int:
    sig = parse_signature(args.signature)
    A = _prepare(resolve_algebra(args.holds_in, not args.no_cache).algebra, sig)
    B = _prepare(resolve_algebra(args.fails_in, not args.no_cache).algebra, sig)
    res = find_separating_identity(A, B, args.vars, args.max_size, sig,
                                   budget=args.term_budget, jobs=args.jobs)
    if res is None:
        _emit(args, f"no identity of {A.name} fails in {B.name} within vars={args.vars}, "
                    f"max-size={args.max_size}", {"verdict": "none"})
        return 1
    ce = _names(B, res.counterexample)
    text = (f"holds in {A.name}, fails in {B.name}: {to_text(res.identity)}\n"
            f"counterexample in {B.name}: {' '.join(f'{k}={v}' for k, v in ce.items())}\n"
            f"lhs = {B.elements[res.lhs_value]}, rhs = {B.elements[res.rhs_value]}")
    _emit(args, text, {"verdict": "found", "counterexample": ce,
                       "identity": to_text(res.identity)})
    return 0


def cmd_verify(args) -> int:
    report = verify_suite(args.suite, args.n, seed=args.seed, jobs=args.jobs)
    passed = sum(ok for _, ok, _ in report.rows)
    lines = [f"verify {report.name} --n {report.n}"] + report.lines()
    lines.append(f"{passed}/{len(report.rows)} checks passed")
    _emit(args, "\n".join(lines), {
        "verdict": "pass" if report.passed else "fail",
        "counts": {"passed": passed, "failed": len(report.rows) - passed},
        "checks": [{"check": label, "passed": ok, "detail": detail}
                   for label, ok, detail in report.rows],
    })
    return 0 if report.passed else 1


# ------------------------------------------------------------------ parser

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=_positive, default=default_jobs(),
                        help="worker processes (output does not depend on it)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--no-cache", action="store_true", help="bypass the C_n cache")

    parser = argparse.ArgumentParser(
        prog="seminf", description="Finite inverse semigroups, derived ai-semiring additions and identities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="build B21, C_n or M_k(n)")
    p.add_argument("what", choices=("b21", "cn", "mk"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--out")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("derive-add", parents=[common], help="attach x+y = (x y')^P x")
    p.add_argument("--algebra", required=True)
    p.add_argument("--power", type=_positive)
    p.add_argument("--out")
    p.set_defaults(func=cmd_derive_add)

    p = sub.add_parser("additions", parents=[common], help="find every ai-semiring addition")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_additions)

    p = sub.add_parser("order", parents=[common], help="natural partial order")
    p.add_argument("--algebra", required=True)
    p.add_argument("--dot", help="write the Hasse diagram in DOT format ('-' for stdout)")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("check", parents=[common], help="check an identity exhaustively")
    p.add_argument("--algebra", required=True)
    p.add_argument("identity")
    p.set_defaults(func=cmd_check)

    for name, func, help_ in (("spectrum", cmd_spectrum, "group bounded terms by fingerprint"),
                              ("separate", cmd_separate, "search for a separating identity")):
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "spectrum":
            p.add_argument("--algebra", required=True)
        else:
            p.add_argument("--holds-in", required=True)
            p.add_argument("--fails-in", required=True)
        p.add_argument("--vars", type=_positive, required=True)
        p.add_argument("--max-size", type=_positive, required=True)
        p.add_argument("--signature", required=True, help="comma list from mul,inv,add")
        p.add_argument("--term-budget", type=_positive, default=DEFAULT_TERM_BUDGET)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="run a bundled property suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UsageError, SeminfError, ValueError, OSError) as exc:
        print(f"seminf: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
