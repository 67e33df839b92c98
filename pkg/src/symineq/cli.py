"""Command-line front end.

Every command builds one JSON-serializable report; ``--json`` prints it
verbatim, otherwise a short human-readable rendering of the same payload is
printed.  Exit codes: 0 claim supported, 1 counterexample or certificate
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .certificates import D8Certificate, build_d8_certificate, load_appendix
from .errors import CertificateError, ClaimViolation, DomainError, ParseError, SymineqError
from .optimizer import (
    Config,
    Status,
    _merge,
    check_pair,
    parse_n_range,
    scan_incomparable,
    verify_counterexample,
)
from .partitions import Partition, enumerate_partitions, majorizes
from .symmetric import (
    EvalPoint,
    Family,
    eval_normalized,
    family_value,
    format_rational,
    normalization_constant,
)

SCHEMA = "symineq-report/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _int_range(text: str):
    try:
        return parse_n_range(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _global_parser() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--json", action="store_true", help="print the full JSON report")
    g.add_argument("--seed", type=int, default=None, help="sampling seed (default 0)")
    g.add_argument("--samples", type=int, default=None, help="random points per n")
    g.add_argument("--n", type=_int_range, default=None, metavar="N|LO..HI",
                   help="number of variables, or an inclusive range")
    g.add_argument("--config", default=None, metavar="FILE",
                   help="JSON config with samples, seed, t_grid, n_range, numerator_bound")
    g.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override a config key; repeatable")
    g.add_argument("-v", "--verbose", action="store_true")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_parser()
    parser = argparse.ArgumentParser(
        prog="symineq",
        description="Exact checks of inequalities among term-normalized symmetric functions.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", parents=[common], help="list Par(d) and the dominance matrix")
    p.add_argument("d", type=int)

    p = sub.add_parser("majorize", parents=[common], help="decide mu >= lambda in dominance order")
    p.add_argument("mu", type=_partition)
    p.add_argument("lam", type=_partition, metavar="lambda")

    p = sub.add_parser("eval", parents=[common], help="evaluate a normalized symmetric function")
    p.add_argument("lam", type=_partition, metavar="lambda")
    p.add_argument("point", help="comma-separated rationals, e.g. 1,1/2,0")
    p.add_argument("--family", default="h", help="h, m or p (default h)")

    p = sub.add_parser("verify", parents=[common], help="search for violations of F_mu >= F_lambda")
    p.add_argument("mu", type=_partition)
    p.add_argument("lam", type=_partition, metavar="lambda")
    p.add_argument("--family", default="h", help="h, m or p (default h)")

    p = sub.add_parser("certify-d8", parents=[common], help="build the degree-8 certificate")
    p.add_argument("--t-range", type=_int_range, default=(3, 200), metavar="LO..HI",
                   help="range for the T(n) monotonicity check (default 3..200)")
    p.add_argument("--appendix", default=None, metavar="FILE",
                   help="replacement file for the literal c_i expressions")

    p = sub.add_parser("theorem", parents=[common], help="evidence for the degree-d counterexample")
    p.add_argument("d", type=int)

    p = sub.add_parser("scan", parents=[common], help="search all incomparable pairs of Par(d)")
    p.add_argument("d", type=int)
    p.add_argument("--family", default="h", help="h, m or p (default h)")
    return parser


def _config(args, default_n=(1, 6), default_samples=1000) -> Config:
    cfg = Config(samples=default_samples, n_range=default_n)
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        cfg = Config.from_mapping(data, cfg)
    pairs = {}
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--set expects KEY=VALUE, got {item!r}")
        pairs[key.strip()] = value.strip()
    if pairs:
        cfg = Config.from_mapping(pairs, cfg)
    flags = {}
    if args.seed is not None:
        flags["seed"] = args.seed
    if args.samples is not None:
        flags["samples"] = args.samples
    if args.n is not None:
        flags["n_range"] = list(args.n)
    return Config.from_mapping(flags, cfg) if flags else cfg


# -- commands -----------------------------------------------------------------------------


def cmd_partitions(args):
    parts = enumerate_partitions(args.d)
    matrix = [[majorizes(a, b) for b in parts] for a in parts]
    result = {"d": args.d, "count": len(parts),
              "partitions": [p.compact() for p in parts], "majorizes": matrix}
    return {"d": args.d}, result, EXIT_OK, 0


def cmd_majorize(args):
    if args.mu.degree != args.lam.degree:
        raise UsageError(f"degrees differ: {args.mu.degree} vs {args.lam.degree}")
    result = {"mu_majorizes_lambda": majorizes(args.mu, args.lam),
              "lambda_majorizes_mu": majorizes(args.lam, args.mu)}
    return {"mu": args.mu.compact(), "lambda": args.lam.compact()}, result, EXIT_OK, 0


def cmd_eval(args):
    family = Family.parse(args.family)
    pt = EvalPoint.parse(args.point, identity_mode=True)
    result = {
        "n": pt.n,
        "value": format_rational(family_value(family, pt, args.lam)),
        "normalization": str(normalization_constant(family, pt.n, args.lam)),
        "normalized": format_rational(eval_normalized(family, pt.n, args.lam, pt)),
        "nonnegative_point": pt.nonnegative,
    }
    inputs = {"lambda": args.lam.compact(), "point": str(pt), "family": family.value}
    return inputs, result, EXIT_OK, 0


def cmd_verify(args):
    family = Family.parse(args.family)
    mu, lam = args.mu, args.lam
    if mu.degree != lam.degree:
        raise UsageError(f"degrees differ: {mu.degree} vs {lam.degree}")
    cfg = _config(args)
    verdicts, skipped = [], []
    for n in cfg.ns:
        if family is Family.MONOMIAL and max(len(mu), len(lam)) > n:
            skipped.append(n)
            continue
        verdicts.append(check_pair((mu, lam), n, cfg, family))
    if not verdicts:
        raise UsageError("no n in range where both monomial functions are defined")
    merged = _merge(mu, lam, family, verdicts)
    result = {
        "mu_majorizes_lambda": majorizes(mu, lam),
        "verdict": merged.to_dict(),
        "per_n": {str(v.n_range[0]): v.status.value for v in verdicts},
        "skipped_n": skipped,
    }
    inputs = {"mu": mu.compact(), "lambda": lam.compact(), "family": family.value,
              "config": cfg.to_dict()}
    code = EXIT_FAIL if merged.status is Status.COUNTEREXAMPLE else EXIT_OK
    return inputs, result, code, cfg.seed


def cmd_certify_d8(args):
    lo, hi = args.t_range
    if lo < 2 or hi < lo:
        raise UsageError(f"bad --t-range {lo}..{hi}")
    text = None
    if args.appendix:
        try:
            with open(args.appendix) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read appendix file: {exc}")
    try:
        appendix = None if text is None else load_appendix(text)
    except CertificateError as exc:
        cert = D8Certificate(failure=exc)
    else:
        cert = build_d8_certificate(t_range=(lo, hi), appendix=appendix)
    inputs = {"t_range": [lo, hi], "appendix": args.appendix or "bundled"}
    return inputs, cert.to_dict(), EXIT_OK if cert.valid else EXIT_FAIL, 0


def cmd_theorem(args):
    if args.d < 8:
        raise UsageError(f"the construction needs d >= 8 (C(d) holds for d <= 7), got {args.d}")
    cfg = _config(args)
    inputs = {"d": args.d, "config": cfg.to_dict()}
    try:
        evidence = verify_counterexample(args.d, cfg, strict=True)
    except ClaimViolation as exc:
        result = {"error": str(exc),
                  "verdict": None if exc.verdict is None else exc.verdict.to_dict()}
        return inputs, result, EXIT_FAIL, cfg.seed
    return inputs, evidence.to_dict(), EXIT_OK if evidence.supported else EXIT_FAIL, cfg.seed


def cmd_scan(args):
    family = Family.parse(args.family)
    cfg = _config(args, default_n=(2, 4), default_samples=200)
    scans = scan_incomparable(args.d, cfg, family)
    result = {
        "pairs": [s.to_dict() for s in scans],
        "incomparable_pairs": len(scans),
        "unfalsified": [f"{s.mu.compact()} | {s.lam.compact()}" for s in scans if not s.violated],
    }
    inputs = {"d": args.d, "family": family.value, "config": cfg.to_dict()}
    return inputs, result, EXIT_OK, cfg.seed


COMMANDS = {
    "partitions": cmd_partitions,
    "majorize": cmd_majorize,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "certify-d8": cmd_certify_d8,
    "theorem": cmd_theorem,
    "scan": cmd_scan,
}


# -- rendering ------------------------------------------------------------------------------


def _render(report: dict) -> str:
    cmd, res = report["command"], report["result"]
    lines = []
    if "error" in res:
        lines.append(f"error: {res['error']}")
    elif cmd == "partitions":
        parts = res["partitions"]
        width = max(len(p) for p in parts)
        lines.append(f"Par({res['d']}): {res['count']} partitions")
        for p, row in zip(parts, res["majorizes"]):
            marks = " ".join("#" if x else "." for x in row)
            lines.append(f"  {p:<{width}}  {marks}")
    elif cmd == "majorize":
        lines.append(f"mu >= lambda: {res['mu_majorizes_lambda']}")
        lines.append(f"lambda >= mu: {res['lambda_majorizes_mu']}")
    elif cmd == "eval":
        lines.append(f"f = {res['value']}, f(1..1) = {res['normalization']}, "
                     f"F = {res['normalized']}")
    elif cmd == "verify":
        v = res["verdict"]
        lines.append(f"mu >= lambda (dominance): {res['mu_majorizes_lambda']}")
        for n, status in res["per_n"].items():
            lines.append(f"  n={n}: {status}")
        if v["witness"]:
            w = v["witness"]
            lines.append(f"witness ({','.join(w['point'])}): "
                         f"F_mu = {w['value_mu']} < F_lambda = {w['value_lam']}")
    elif cmd == "certify-d8":
        for step in res["steps"]:
            lines.append(f"  {step['name']}: {step['status']}")
            ev = step["evidence"]
            if step["name"] == "base_case" and "quotient_coeffs" in ev:
                lines.append(f"    {ev['scale']} * P coefficients: ({', '.join(ev['quotient_coeffs'])})")
            if step["status"] == "fail" and "message" in ev:
                lines.append(f"    {ev['message']}")
        lines.append(f"valid: {res['valid']}")
    elif cmd == "theorem":
        lines.append(f"d={res['d']}: mu=({res['mu']}) lambda=({res['lambda']})")
        lines.append(f"mu >= lambda: {res['mu_majorizes_lambda']}")
        lines.append(f"violations: {res['violations']}")
        lines.append(f"d=8 certificate valid: {res['certificate']['valid']}")
        for r in res["reductions"]:
            lines.append(f"  {r['name']} {r.get('from_degree', '')}->{r.get('to_degree', '')}: {r['status']}")
        lines.append(f"supported: {res['supported']}")
    elif cmd == "scan":
        lines.append(f"{res['incomparable_pairs']} incomparable ordered pairs")
        for p in res["pairs"]:
            tag = f"violated at n={p['witness_n']}" if p["violated"] else "NO VIOLATION FOUND"
            lines.append(f"  ({p['mu']}) vs ({p['lambda']}): {tag}")
    return "\n".join(lines)


def make_report(command: str, inputs: dict, result: dict, seed: int, exit_code: int) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "result": result,
        "seed": seed,
        "version": __version__,
        "exit_code": exit_code,
    }


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        inputs, result, code, seed = COMMANDS[args.command](args)
    except (UsageError, DomainError, ParseError) as exc:
        print(f"symineq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SymineqError as exc:
        print(f"symineq {args.command}: failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = make_report(args.command, inputs, result, seed, code)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
