"""Command-line front door: ``python -m cplstab <verb> [options]``.

Exit status is 0 on success, 1 when a check suite fails and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import inspect
import json
import sys
from typing import Sequence

from . import checks
from .combinatorics import enum_P, format_triple, parse_partition, parse_triple
from .cpl import B_vec, Bbar_vec, CL_vec, make_wn
from .fkops import T
from .fock import FockVector, V_LAMBDA0, parse_text, to_text
from .limit import stable_basis_at
from .straighten import HypothesisViolation, f_lambda, straighten_yx


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _triple(text: str):
    try:
        return parse_triple(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _partition(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = _Parser(prog="cplstab", description="CPL bases of local Weyl modules and their stable limit.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    for verb, helptext in (("cl", "CL(xi) as a Fock vector"), ("b", "B(xi) as a Fock vector"),
                           ("bbar", "Bbar(xi) as a Fock vector")):
        p = sub.add_parser(verb, parents=[common], help=helptext)
        p.add_argument("--xi", type=_triple, required=True, help="index triple n:k:parts, e.g. 4:2:2,1")

    p = sub.add_parser("wn", parents=[common], help="the cyclic generator w_n")
    p.add_argument("--n", type=_nonneg, required=True)

    p = sub.add_parser("straighten", parents=[common], help="normal-order (prod y t^p_i)(prod x t^-q_j) v0")
    p.add_argument("--p", type=_int_list, required=True)
    p.add_argument("--q", type=_int_list, required=True)

    p = sub.add_parser("flambda", parents=[common], help="the Heisenberg polynomial f_lambda")
    p.add_argument("--lam", type=_partition, required=True)

    p = sub.add_parser("stable-basis", parents=[common], help="stable basis of one weight space")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--odd", action="store_true", help="use the L(Lambda1) sector")

    p = sub.add_parser("check", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("all", *checks.SUITES), default="all")
    p.add_argument("--n-max", type=_nonneg, help="size bound for suites that take one")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    p = sub.add_parser("dim", parents=[common], help="|P(n)|, the dimension of W(n)")
    p.add_argument("--n", type=_nonneg, required=True)

    p = sub.add_parser("apply-T", parents=[common], help="apply the translation operator T(p)")
    p.add_argument("--p", type=int, required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--vector", help="Fock vector in text form (default: the vacuum of L(Lambda0))")
    src.add_argument("--xi", type=_triple, help="apply to CL(xi)")
    return parser


def _vector_payload(v: FockVector, fmt: str) -> str:
    return json.dumps(v.to_json()) if fmt == "json" else to_text(v)


def _run_check(args) -> tuple[str, int]:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        fn = checks.SUITES[name]
        params = inspect.signature(fn.__wrapped__).parameters
        kwargs = {}
        if args.n_max is not None and "n_max" in params:
            kwargs["n_max"] = args.n_max
        if "seed" in params:
            kwargs["seed"] = args.seed
        results.append(fn(**kwargs))
    if args.format == "json":
        text = json.dumps([r.to_json() for r in results], indent=2)
    else:
        lines = []
        for r in results:
            lines.append(r.line())
            lines.extend(f"  {msg}" for msg in r.failures[:20])
        text = "\n".join(lines)
    return text, 0 if all(r.passed for r in results) else 1


def _dispatch(args) -> tuple[str, int]:
    fmt = args.format
    verb = args.verb
    if verb in ("cl", "b", "bbar"):
        fn = {"cl": CL_vec, "b": B_vec, "bbar": Bbar_vec}[verb]
        return _vector_payload(fn(args.xi), fmt), 0
    if verb == "wn":
        return _vector_payload(make_wn(args.n), fmt), 0
    if verb in ("straighten", "flambda"):
        poly = straighten_yx(args.p, args.q) if verb == "straighten" else f_lambda(args.lam)
        return (json.dumps(poly.to_json()) if fmt == "json" else poly.to_text()), 0
    if verb == "stable-basis":
        entry = stable_basis_at(args.j, args.d, odd=args.odd)
        if fmt == "json":
            return json.dumps(entry.to_json(), indent=2), 0
        lines = [f"weight {entry.mu}  n = {entry.chosen_n}  vectors = {len(entry.vectors)}"]
        lines += [f"{format_triple(xi)}: {to_text(v)}" for xi, v in entry.vectors]
        return "\n".join(lines), 0
    if verb == "dim":
        count = len(enum_P(args.n))
        return (json.dumps({"n": args.n, "dim": count}) if fmt == "json" else str(count)), 0
    if verb == "apply-T":
        if args.xi is not None:
            v = CL_vec(args.xi)
        elif args.vector is not None:
            v = parse_text(args.vector)
        else:
            v = V_LAMBDA0
        return _vector_payload(T(args.p)(v), fmt), 0
    if verb == "check":
        return _run_check(args)
    raise UsageError(f"unknown verb {verb!r}")


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, code = _dispatch(args)
    except (UsageError, HypothesisViolation, ValueError) as exc:
        print(f"cplstab: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main() -> None:
    sys.exit(run())
