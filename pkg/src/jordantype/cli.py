"""Command line front end: ``jordantype <command> -p 4,2,1 [--json]``."""

from __future__ import annotations

import argparse
import json
import sys

from . import verify
from .commutator import core, gf
from .greene import greene_lambda
from .partitions import PartitionError, parse_partition, r_P
from .poset import build_diagram
from .uchains import UChainError, lambda_U, maximal_specs, oblak_recursion, parse_spec, s_uchain, u_sequence

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _partition(text: str):
    try:
        return parse_partition(text)
    except PartitionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _common(sub: argparse.ArgumentParser, partition: bool = True):
    if partition:
        sub.add_argument("-p", "--partition", type=_partition, required=True,
                         help='partition such as "4,2,1" or "5,4,3^3,2^3,1^2"')
    sub.add_argument("--json", action="store_true", help="machine readable output")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--field", type=int, default=gf.DEFAULT_PRIME, help="prime modulus")
    sub.add_argument("--samples", type=int, default=25)
    sub.add_argument("--augmented", action="store_true")
    sub.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jordantype", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_text in [
        ("qp", "estimate the generic Jordan type Q(P)"),
        ("lambda-u", "lambda_U from U-chains, cross-checked with the Oblak recursion"),
        ("lambda", "Greene-Kleitman partition of the poset D_P"),
        ("oblak", "Oblak peeling recursion"),
        ("poset", "cover diagram of D_P as DOT (or JSON)"),
        ("uchains", "maximal multi U-chains with their lengths"),
        ("verify", "run every consistency check on one partition"),
    ]:
        _common(subs.add_parser(name, help=help_text))
    det = subs.add_parser("det-m", help="determinant of the chain matrix of a U-chain spec")
    _common(det)
    det.add_argument("--spec", required=True, help='levels such as "4,2"')
    det.add_argument("--symbolic", action="store_true")
    sw = subs.add_parser("sweep", help="verify every partition of 1..max-n")
    _common(sw, partition=False)
    sw.add_argument("--max-n", type=int, default=8)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--timings", action="store_true", help="add per-n wall-clock timings")
    return parser


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _config(args) -> verify.CheckConfig:
    return verify.CheckConfig(samples=args.samples, field=args.field, seed=args.seed)


def cmd_qp(args) -> int:
    est = verify.estimate_Q(args.partition, args.field, args.samples, args.seed)
    _emit(args, _dump(est.to_json()) if args.json else str(est.estimate))
    return EXIT_OK


def cmd_lambda_u(args) -> int:
    P = args.partition
    lam, obl = lambda_U(P), oblak_recursion(P)
    agree = lam == obl
    if args.json:
        _emit(args, _dump({"partition": str(P), "lambda_u": str(lam), "oblak": str(obl),
                           "u_sequence": list(u_sequence(P)), "agree": agree}))
    else:
        _emit(args, str(lam) if agree else f"{lam} (oblak recursion gives {obl})")
    return EXIT_OK if agree else EXIT_CHECK_FAILED


def cmd_lambda(args) -> int:
    lam = greene_lambda(build_diagram(args.partition, args.augmented))
    _emit(args, _dump({"partition": str(args.partition), "lambda": str(lam)}) if args.json else str(lam))
    return EXIT_OK


def cmd_oblak(args) -> int:
    obl = oblak_recursion(args.partition)
    _emit(args, _dump({"partition": str(args.partition), "oblak": str(obl)}) if args.json else str(obl))
    return EXIT_OK


def cmd_poset(args) -> int:
    D = build_diagram(args.partition, args.augmented)
    _emit(args, _dump(D.to_json()) if args.json else D.to_dot())
    return EXIT_OK


def cmd_uchains(args) -> int:
    P = args.partition
    chains = [s_uchain(P, spec) for spec in maximal_specs(P)]
    if args.json:
        _emit(args, _dump({"partition": str(P), "r_p": r_P(P), "chains": [c.to_json() for c in chains]}))
    else:
        lines = [f"{c.spec}\t{c.length}\t" + " | ".join(" ".join(map(str, comp)) for comp in c.components)
                 for c in chains]
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_det_m(args) -> int:
    P = args.partition
    spec = parse_spec(args.spec)
    if args.symbolic:
        text = str(core.det_M(P, spec, "symbolic"))
    else:
        text = str(core.det_M(P, spec, "numeric", args.field, args.seed))
    if args.json:
        _emit(args, _dump({"partition": str(P), "spec": str(spec), "symbolic": args.symbolic,
                           "field": None if args.symbolic else args.field,
                           "det": text}))
    else:
        _emit(args, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = verify.check_partition(args.partition, _config(args))
    if args.json:
        _emit(args, _dump(rep.to_json()))
    else:
        lines = [f"partition {rep.partition}: Q estimate {rep.q_estimate.estimate}, "
                 f"lambda_U {rep.lambda_u}, lambda {rep.greene}"]
        lines += [f"  {c.status:8s}{c.name}" for c in rep.checks]
        _emit(args, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_CHECK_FAILED


def cmd_sweep(args) -> int:
    result = verify.sweep(args.max_n, _config(args), jobs=args.jobs, include_timing=args.timings)
    if args.json:
        _emit(args, result.dumps())
    else:
        s = result.summary()
        lines = [f"{s['partitions']} partitions, {s['failed_partitions']} failed, {s['findings']} findings"]
        for name, counts in s["by_check"].items():
            lines.append(f"  {name}: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
        if result.timings:
            lines += [f"  n={n}: {t:.3f}s" for n, t in sorted(result.timings.items())]
        _emit(args, "\n".join(lines))
    return EXIT_OK if result.ok else EXIT_CHECK_FAILED


COMMANDS = {
    "qp": cmd_qp, "lambda-u": cmd_lambda_u, "lambda": cmd_lambda, "oblak": cmd_oblak,
    "poset": cmd_poset, "uchains": cmd_uchains, "det-m": cmd_det_m, "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "samples", 1) < 1:
            raise UsageError("--samples must be at least 1")
        gf.check_modulus(args.field)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"jordantype: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PartitionError, UChainError, ValueError) as exc:
        print(f"jordantype: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
