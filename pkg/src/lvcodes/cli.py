"""Command-line front end: ``lvcodes {params,encode,decode,simulate,rmt}``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .field import FieldError
from .adversary import AdversarySpec, InfeasibleBudget, rmt_transmit, simulate
from .lvcode import (
    InfeasibleParams, MalformedInput, asymptotic_preset, derive_params, format_codeword,
    format_message, lv_decode, lv_encode, parse_codeword, parse_message, u1_for_width,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4
EXIT_MALFORMED = 5


class UsageError(Exception):
    pass


def _add_code_args(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--N", type=int, required=True, help="code length (components)")
    ap.add_argument("--u1", type=int, help="FRS folding parameter")
    ap.add_argument("--v", type=int, help="FRS decoder parameter")
    ap.add_argument("--R", type=Fraction, required=True, help="information rate, e.g. 0.1 or 1/10")
    ap.add_argument("--eps", type=Fraction, help="asymptotic preset: v = ceil(1/eps), u = 2/eps^4 + 2N/eps^2")
    ap.add_argument("--q", type=int, help="prime field size override")


def _params(args):
    v, u1 = args.v, args.u1
    if args.eps is not None:
        pv, pu = asymptotic_preset(args.eps, args.N)
        v = pv if v is None else v
        u1 = u1_for_width(args.N, pu) if u1 is None else u1
    if v is None or u1 is None:
        raise UsageError("--u1 and --v are required unless --eps is given")
    return derive_params(args.N, u1, v, args.R, args.q)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def cmd_params(args) -> int:
    p = _params(args)
    summary = p.summary()
    if args.json:
        _write(args.output, json.dumps(summary, indent=2) + "\n")
    else:
        _write(args.output, "".join(f"{k}={v}\n" for k, v in summary.items()))
    return EXIT_OK


def cmd_encode(args) -> int:
    p = _params(args)
    msg = parse_message(_read(args.input), p)
    c = lv_encode(p, msg, random.Random(args.seed))
    _write(args.output, format_codeword(p, c))
    return EXIT_OK


def cmd_decode(args) -> int:
    p, y = parse_codeword(_read(args.input))
    out = lv_decode(p, y)
    _write(args.output, "BOTTOM\n" if out.bottom else format_message(out.message))
    return EXIT_OK


def _spec(args, p) -> AdversarySpec:
    rho_r = Fraction(p.budget, p.N) if args.rho_r is None else args.rho_r
    rho_w = rho_r if args.rho_w is None else args.rho_w
    return AdversarySpec(rho_r, rho_w, not args.different_sets, args.strategy, args.seed)


def cmd_simulate(args) -> int:
    p = _params(args)
    report = simulate(_spec(args, p), p, args.trials)
    _write(args.output, report.to_json() + "\n" if args.json else report.to_text())
    return EXIT_OK


def cmd_rmt(args) -> int:
    p = _params(args)
    if args.paths:
        paths = [int(tok) for tok in args.paths.split(",") if tok.strip()]
    else:
        paths = list(range(p.budget if args.corrupt is None else args.corrupt))
    rng = random.Random(args.seed)
    counts = {"correct": 0, "bottom": 0, "wrong": 0}
    rate = None
    for _ in range(args.trials):
        msg = [rng.randrange(p.q) for _ in range(p.msg_len)]
        res = rmt_transmit(p, msg, paths, args.strategy, random.Random(rng.getrandbits(64)))
        rate = res.rate
        if res.outcome.bottom:
            counts["bottom"] += 1
        elif res.outcome.message == tuple(msg):
            counts["correct"] += 1
        else:
            counts["wrong"] += 1
    lines = [f"paths={','.join(map(str, paths))}", f"in_model={len(paths) <= p.budget}",
             f"trials={args.trials}", *(f"{k}={v}" for k, v in counts.items()),
             f"transmission_rate={rate}", f"inverse_rate={1 / p.R}"]
    _write(args.output, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lvcodes", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("params", help="print derived parameters and bounds")
    _add_code_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("encode", help="encode a message file")
    _add_code_args(sp)
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--output", "-o")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="decode a codeword file (writes BOTTOM on failure)")
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("simulate", help="Monte-Carlo failure estimate")
    _add_code_args(sp)
    sp.add_argument("--strategy", default="random_error",
                    help="random_error, substitution, or a comma-separated list")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--rho-r", type=Fraction)
    sp.add_argument("--rho-w", type=Fraction)
    sp.add_argument("--different-sets", action="store_true",
                    help="let the write set differ from the read set (outside the construction model)")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("rmt", help="one-round transmission over N disjoint paths")
    _add_code_args(sp)
    sp.add_argument("--paths", help="comma-separated corrupt path indices")
    sp.add_argument("--corrupt", type=int, help="corrupt the first t paths")
    sp.add_argument("--strategy", default="substitution")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_rmt)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MalformedInput as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (InfeasibleParams, InfeasibleBudget, FieldError) as exc:
        print(f"infeasible parameters: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
