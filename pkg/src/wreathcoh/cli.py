"""Command-line interface.

Exit codes: 0 on success or a full match, 1 when a verification finds a
mismatch, 2 on bad usage or malformed input.  Windows are written
``lo:hi`` (inclusive); use ``--window=-1:8`` when ``lo`` is negative.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import arith, formulas, spectral, verify
from .complexes import build_cyclic_complex
from .equivariant import cyclic_power, hom_double_complex
from .exactlin import PreconditionError
from .graded import GradedAbelianGroup, MalformedGroupError, format_orders


class UsageError(Exception):
    pass


def parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"window must look like lo:hi, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty window {text!r}")
    return lo, hi


def parse_pages(text: str) -> list[int]:
    try:
        out = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"pages must be a comma-separated list of integers, got {text!r}") from None
    if not out or out[0] < 1:
        raise UsageError("page numbers start at 1")
    return out


def load_group(path: str) -> GradedAbelianGroup:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return GradedAbelianGroup.from_json(text)


def emit(args, data, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def group_text(H: GradedAbelianGroup, lo: int, hi: int) -> str:
    rows = [f"{d:>5}  {format_orders(o)}" for d, o in H.degree_table(lo, hi).items()]
    return "\n".join(["  deg  group"] + rows) if rows else "(zero in window)"


# ---------------------------------------------------------------------------
# subcommands


def cmd_bruteforce(args) -> int:
    window = parse_window(args.window) if args.window else verify.default_window(args.p, args.d)
    H = verify.brute_force(args.p, args.n, args.d, window)
    head = f"H^*(Tot Hom_C{args.p}(W, D({args.n},{args.d}))) on {window[0]}..{window[1]}"
    emit(args, {"parameters": {"p": args.p, "n": args.n, "d": args.d}, "window": list(window),
                "result": H.to_dict()}, head + "\n" + group_text(H, *window))
    return 0


def cmd_predict(args) -> int:
    H = load_group(args.input)
    pred = formulas.predict_wreath_cohomology(H, args.p, args.max_degree)
    lo = min(args.p * ((H.min_degree() or 0) - 1), 0)
    emit(args, pred.to_dict(), group_text(pred.result, lo, args.max_degree))
    return 0


def _page_text(page) -> str:
    lines = [f"E_{page.r} (type {page.kind}), columns {page.window[0]}..{page.window[1]}"]
    for (i, j), fac in page.nonzero().items():
        lines.append(f"  ({i:>3},{j:>4})  {format_orders(list(fac))}")
    diffs = page.nonzero_differentials()
    if diffs:
        lines.append("  nonzero d_%d: " % page.r + ", ".join(f"{s}->{t}" for s, t in diffs))
    return "\n".join(lines)


def cmd_spectral(args) -> int:
    cols = parse_window(args.window) if args.window else (0, 8)
    if args.kind not in ("I", "II"):
        raise UsageError("--kind must be I or II")
    if args.scaled_check is not None:
        if args.kind != "II":
            raise UsageError("--scaled-check compares type-II differentials")
        rep = spectral.check_scaled_differential(build_cyclic_complex(1, args.d), args.scaled_check,
                                                 args.r, cols, p=args.p)
        lines = [f"scaled check n={rep.n} r={rep.r}: {rep.status}",
                 f"  verified bidegrees: {len(rep.verified)}"]
        lines += [f"  failure at {f['bidegree']}: {f['reason']}" for f in rep.failures]
        emit(args, rep.to_dict(), "\n".join(lines))
        return 0 if rep.status != "fail" else 1
    E = cyclic_power(build_cyclic_complex(args.n, args.d), args.p)
    lo, hi = E.underlying.lo, E.underlying.hi
    D = hom_double_complex(E, spectral.required_columns(lo, hi, cols[1]))
    ss = spectral.SpectralSequence(D, args.kind)
    pages = [ss.page(r, cols) for r in parse_pages(args.pages)]
    data = {"parameters": {"p": args.p, "n": args.n, "d": args.d}, "certified_region": list(cols),
            "pages": [pg.to_dict() for pg in pages]}
    emit(args, data, "\n".join(_page_text(pg) for pg in pages))
    return 0


def cmd_kernel(args) -> int:
    H = load_group(args.input)
    if args.group == "Cp":
        K = formulas.detection_kernel(H, args.p, args.max_degree)
    elif args.group == "Sp":
        K = formulas.detection_kernel_sigma_p(H, args.p, args.max_degree)
    else:
        raise UsageError("--group must be Cp or Sp")
    emit(args, K.to_dict(), group_text(K, min(K.min_degree() or 0, 0), args.max_degree))
    return 0


def cmd_exponents(args) -> int:
    if args.tower:
        rep = arith.tower(args.tower)
        ex = rep.exponents
    elif args.input:
        if args.p is None:
            raise UsageError("--input needs --p")
        ex = arith.exponents_of_graded(load_group(args.input), args.p)
        if args.wreath:
            ex = arith.wreath_exponents(ex, args.p)
    else:
        raise UsageError("give --tower or --input")
    text = f"e = {ex.e}\nee = {ex.ee}"
    if ex.p2_caveat:
        text += f"\ncaveat: e is one of {list(ex.e_choices)}"
    emit(args, ex.to_dict(), text)
    return 0


def cmd_varieties(args) -> int:
    if args.sym is not None:
        if args.p is None:
            raise UsageError("--sym needs --p")
        dims = []
        i = 0
        while True:
            v = arith.dim_w_symmetric(args.sym, args.p, i)
            if v == 0:
                break
            dims.append(v)
            i += 1
        vec = arith.DimensionVector(tuple(dims))
    elif args.tower:
        vec = arith.tower(args.tower).dims
    else:
        raise UsageError("give --sym or --tower")
    data = {"dims": list(vec.dims), "nu_p_che": arith.nu_p_che(vec)}
    text = "\n".join(f"dim W_{i} = {v}" for i, v in enumerate(vec.dims)) or "all W_i are points"
    emit(args, data, text + f"\nnu_p(che) = {data['nu_p_che']}")
    return 0


def _verify_text(report) -> str:
    lines = []
    for e in report.entries:
        params = " ".join(f"{k}={v}" for k, v in e.parameters.items() if k != "input")
        lines.append(f"{e.status:<12} {params} window {e.window[0]}:{e.window[1]}")
        for d in e.diffs:
            if "degree" in d:
                lines.append(f"    degree {d['degree']}: brute {d['left']} predicted {d['right']}")
            else:
                lines.append(f"    {d}")
    c = report.counts()
    lines.append(f"{c['match']} match, {c['mismatch']} mismatch, {c['inconclusive']} inconclusive")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    window = parse_window(args.window) if args.window else None
    if args.input:
        if args.p is None or window is None:
            raise UsageError("--input needs --p and --window")
        report = verify.VerifyReport([verify.verify_input(load_group(args.input), args.p, window)])
    elif args.n is not None or args.d is not None:
        if args.p is None or args.n is None or args.d is None:
            raise UsageError("a single check needs --p, --n and --d")
        report = verify.VerifyReport([verify.verify_single(args.p, args.n, args.d, window)])
    else:
        primes = (args.p,) if args.p else (2, 3, 5)
        report = verify.run_corpus(verify.corpus(primes))
    emit(args, report.to_dict(), _verify_text(report))
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wreathcoh", description="Integral cohomology of wreath constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    b = sub.add_parser("bruteforce", help="cohomology of Tot Hom_{C_p}(W, D(n,d)) by Smith normal form")
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--window")
    common(b)
    b.set_defaults(func=cmd_bruteforce)

    pr = sub.add_parser("predict", help="closed-form wreath cohomology for an input group")
    pr.add_argument("--p", type=int, required=True)
    pr.add_argument("--input", required=True)
    pr.add_argument("--max-degree", type=int, required=True)
    common(pr)
    pr.set_defaults(func=cmd_predict)

    s = sub.add_parser("spectral", help="spectral sequence pages of the wreath double complex")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--d", type=int, default=0)
    s.add_argument("--kind", default="II")
    s.add_argument("--pages", default="2")
    s.add_argument("--window", help="column range lo:hi")
    s.add_argument("--scaled-check", type=int, metavar="N")
    s.add_argument("--r", type=int, default=3, help="page for --scaled-check")
    common(s)
    s.set_defaults(func=cmd_spectral)

    k = sub.add_parser("kernel", help="kernel of restriction to the base group")
    k.add_argument("--group", default="Cp")
    k.add_argument("--p", type=int, required=True)
    k.add_argument("--input", required=True)
    k.add_argument("--max-degree", type=int, required=True)
    common(k)
    k.set_defaults(func=cmd_kernel)

    e = sub.add_parser("exponents", help="exponent arithmetic")
    e.add_argument("--tower")
    e.add_argument("--input")
    e.add_argument("--p", type=int)
    e.add_argument("--wreath", action="store_true", help="apply one wreath step to the input exponents")
    e.add_argument("--format", choices=("text", "json"), default="json")
    e.set_defaults(func=cmd_exponents)

    v = sub.add_parser("varieties", help="dimensions of the varieties W_i")
    v.add_argument("--sym", type=int)
    v.add_argument("--p", type=int)
    v.add_argument("--tower")
    common(v)
    v.set_defaults(func=cmd_varieties)

    vf = sub.add_parser("verify", help="compare brute force with the closed form")
    vf.add_argument("--p", type=int)
    vf.add_argument("--n", type=int)
    vf.add_argument("--d", type=int)
    vf.add_argument("--window")
    vf.add_argument("--input")
    common(vf)
    vf.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"wreathcoh: error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, MalformedGroupError) as exc:
        print(f"wreathcoh: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
