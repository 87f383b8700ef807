"""Command-line front end.

Every command prints one JSON object per line.  Integers are decimal
strings; ring elements are {"re": ..., "im": ...} unless --pretty is given.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
import time

from . import __version__, builder, conjecture, pell
from .errors import BadInput, DnqError
from .quadring import RingElt, classify_mod4, make_ctx, require_nonzero

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1


class _Out:
    def __init__(self, args, stream=None):
        self.command = args.command
        self.pretty_d = args.d if getattr(args, "pretty", False) and hasattr(args, "d") else None
        self.timing = args.timing
        self.stream = stream or sys.stdout
        self.t0 = time.perf_counter()

    def _render(self, obj):
        if self.pretty_d is None:
            return obj
        if isinstance(obj, dict):
            if set(obj) == {"re", "im"}:
                re, im = int(obj["re"]), int(obj["im"])
                if im == 0:
                    return str(re)
                return f"{re} {'-' if im < 0 else '+'} {abs(im)}√{self.pretty_d}"
            return {k: self._render(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [self._render(v) for v in obj]
        return obj

    def emit(self, payload, status="ok", **extra):
        record = {"command": self.command, "status": status, "tool_version": __version__}
        record.update(extra)
        if payload is not None:
            record["payload"] = self._render(payload)
        if self.timing:
            record["timing_ms"] = round((time.perf_counter() - self.t0) * 1000, 3)
        self.stream.write(json.dumps(record, ensure_ascii=False) + "\n")
        self.stream.flush()


def _n_from(args) -> RingElt:
    re = args.n_re_opt if args.n_re_opt is not None else args.n_re
    im = args.n_im_opt if args.n_im_opt is not None else args.n_im
    if re is None or im is None:
        raise BadInput("n needs both a rational part and a sqrt(d) part")
    return RingElt(re, im)


def cmd_pell(args, out):
    ctx = make_ctx(args.d)
    sols = pell.solve_norm(ctx, args.N)
    payload = sols.to_json()
    if args.count:
        payload["enumerated"] = ([e.to_json() for e in pell.enumerate_norm(ctx, args.N, args.count)]
                                 if sols.solvable else [])
    out.emit(payload)
    return EXIT_OK


def cmd_classify(args, out):
    make_ctx(args.d)
    tag = classify_mod4(RingElt(args.n_re, args.n_im))
    out.emit(tag.to_json())
    return EXIT_OK


def cmd_construct(args, out):
    ctx = make_ctx(args.d)
    n = require_nonzero(_n_from(args))
    q = builder.construct(ctx, n, args.seed_index)
    out.emit(q.to_json())
    return EXIT_OK


def cmd_verify(args, out):
    ctx = make_ctx(args.d)
    n = RingElt(args.n_re, args.n_im)
    vals = args.elements
    elems = [RingElt(vals[i], vals[i + 1]) for i in range(0, 8, 2)]
    report = builder.verify(ctx, n, elems)
    payload = {"d": str(ctx.d), "n": n.to_json(), "elements": [e.to_json() for e in elems]}
    payload.update(report.to_json())
    out.emit(payload, status="ok" if report.ok else "fail")
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def cmd_counterexample(args, out):
    ctx = make_ctx(args.d)
    records = conjecture.iter_counterexamples(ctx, args.max_x)
    for rec in itertools.islice(records, args.limit):
        out.emit(rec.to_json())
    return EXIT_OK


def cmd_hunt_d(args, out):
    for cand in conjecture.hunt_d(args.lprime_max):
        out.emit(cand.to_json())
    return EXIT_OK


def cmd_check(args, out):
    ctx = make_ctx(args.d)
    report = pell.hypothesis_check(ctx)
    payload = report.to_json()
    payload["fund_unit"] = ctx.fund_unit.to_json()
    payload["unit_norm"] = ctx.unit_norm
    if report.holds:
        payload["norm_pm2_certificate"] = conjecture.norm_pm2_impossible(ctx)
    out.emit(payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="render elements as a + b√d")
    common.add_argument("--timing", action="store_true", help="add wall-clock milliseconds to each record")

    ap = argparse.ArgumentParser(prog="dnq", description="D(n)-quadruples in Z[sqrt(d)], d = 2 mod 4.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pell", parents=[common], help="solve x^2 - d y^2 = N")
    p.add_argument("d", type=int)
    p.add_argument("N", type=int)
    p.add_argument("--count", type=int, default=0, help="also list the first COUNT solutions")
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("classify", parents=[common], help="residue class of n modulo (4, 4)")
    p.add_argument("d", type=int)
    p.add_argument("n_re", type=int)
    p.add_argument("n_im", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", parents=[common], help="build a D(n)-quadruple")
    p.add_argument("d", type=int)
    p.add_argument("n_re", type=int, nargs="?")
    p.add_argument("n_im", type=int, nargs="?")
    p.add_argument("--n-re", dest="n_re_opt", type=int)
    p.add_argument("--n-im", dest="n_im_opt", type=int)
    p.add_argument("--seed-index", type=int, default=0)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check the D(n) property of four elements")
    p.add_argument("d", type=int)
    p.add_argument("n_re", type=int)
    p.add_argument("n_im", type=int)
    p.add_argument("elements", type=int, nargs=8, metavar="X",
                   help="re im pairs of the four elements")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexample", parents=[common], help="stream counterexample records")
    p.add_argument("d", type=int)
    p.add_argument("--max-x", type=int, default=1001)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("hunt-d", parents=[common], help="radicands from the prime family")
    p.add_argument("--lprime-max", type=int, default=10)
    p.set_defaults(func=cmd_hunt_d)

    p = sub.add_parser("check", parents=[common], help="solvability of norms -1, 6, -6")
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    out = _Out(args)
    try:
        return args.func(args, out)
    except DnqError as exc:
        out.emit(None, status="error", code=exc.code, message=str(exc))
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
