"""Command-line front end.

Exit status: 0 success, 1 fixture check failed (``fixtures --check --strict``),
2 invalid arguments, 3 malformed input table, 4 generation or refinement failure.
"""

import argparse
import json
import sys
import time

import numpy as np

from . import _backend, chaos, metrics, reference, tableio
from .errors import GenerationStalled, InvalidTableError, RefinementFailed
from .generate import GenConfig, generate, generate_initial_batch, refine

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3
EXIT_GENERATION = 4


class UsageError(Exception):
    pass


def _add_key_args(p, need_b=True):
    p.add_argument("--x0", type=float, required=True, help="initial state, 0 < x0 < 1")
    p.add_argument("--a", type=float, required=True, help="control parameter, 0 < a < 2")
    if need_b:
        p.add_argument("--b", type=float, required=True, help="byte scale, 0 < b <= 1e9")
    p.add_argument("--mode", choices=[m.value for m in chaos.Mode], default="alg1")


def build_parser():
    parser = argparse.ArgumentParser(prog="sbox-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate an S-box from a key")
    _add_key_args(p)
    p.add_argument("--refine", action="store_true", help="remove fixed points and raise NL")
    p.add_argument("--format", choices=tableio.FORMATS, default="hex")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--max-iterations", type=int, default=GenConfig.max_iterations)
    p.add_argument("--refine-max-passes", type=int, default=GenConfig.refine_max_passes)

    p = sub.add_parser("analyze", help="compute the security metrics of a table")
    p.add_argument("--in", dest="input", required=True, help="table file (.hex, .bin or .json)")
    p.add_argument("--in-format", choices=tableio.FORMATS, help="override format detection")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("bifurcate", help="emit bifurcation data as CSV")
    p.add_argument("--a-min", type=float, default=0.1)
    p.add_argument("--a-max", type=float, default=1.9)
    p.add_argument("--a-steps", type=int, default=400)
    p.add_argument("--x0", type=float, default=0.33)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--transient", type=int, default=1000)
    p.add_argument("--mode", choices=[m.value for m in chaos.Mode], default="alg1")
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("lyapunov", help="estimate the Lyapunov exponent")
    _add_key_args(p, need_b=False)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("bench", help="time the generation of many initial S-boxes")
    p.add_argument("--count", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=[m.value for m in chaos.Mode], default="alg1")
    p.add_argument("--refine", action="store_true", help="also time refinement of each S-box")
    p.add_argument("--chunk", type=int, default=10_000, help=argparse.SUPPRESS)
    p.add_argument("--json", action="store_true", help="print the summary as JSON")

    p = sub.add_parser("fixtures", help="export or check the published reference tables")
    p.add_argument("--name", choices=("final", "initial", "aes"), default="final")
    p.add_argument("--format", choices=tableio.FORMATS, default="hex")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--check", action="store_true", help="compare computed metrics with the published ones")
    p.add_argument("--strict", action="store_true", help="with --check, exit 1 on any mismatch")
    return parser


def _emit(payload, out):
    if out:
        mode = "wb" if isinstance(payload, bytes) else "w"
        kwargs = {} if mode == "wb" else {"encoding": "utf-8", "newline": "\n"}
        with open(out, mode, **kwargs) as fh:
            fh.write(payload)
    elif isinstance(payload, bytes):
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        sys.stdout.write(payload)


def _key(args, b=1.0):
    try:
        return chaos.MapParams(args.x0, args.a, getattr(args, "b", b), args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_generate(args):
    key = _key(args)
    try:
        cfg = GenConfig(args.max_iterations, args.refine, args.refine_max_passes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(tableio.dumps(generate(key, cfg), args.format), args.out)


def _format_text(rep):
    lines = [
        f"bijective                {rep.bijective}",
        f"fixed points             {rep.fixed_point_count} {list(rep.fixed_points)}",
        f"nonlinearity per bit     {list(rep.nl_per_bit)} (min {rep.nl_min})",
        f"SAC mean                 {rep.sac_mean:.6f}",
        f"BIC-NL min               {rep.bic_nl_min}",
        f"BIC-SAC average          {rep.bic_sac_avg:.6f}",
        f"LAP                      {rep.lap:.6f} ({rep.lap_ratio})",
        f"DAP                      {rep.dap:.6f} ({rep.dap_ratio})",
        f"differential uniformity  {rep.differential_uniformity}",
        f"algebraic degree per bit {list(rep.algebraic_degree_per_bit)} (min {rep.degree_min})",
        "SAC matrix (row = flipped input bit, column = output bit):",
    ]
    lines += ["  " + " ".join(f"{v:.4f}" for v in row) for row in rep.sac]
    return "\n".join(lines) + "\n"


def _cmd_analyze(args):
    try:
        table = tableio.read_table(args.input, args.in_format)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    rep = metrics.full_report(table)
    if args.format == "json":
        payload = json.dumps(rep.to_json(), sort_keys=True, indent=2) + "\n"
    else:
        payload = _format_text(rep)
    _emit(payload, args.out)


def _cmd_bifurcate(args):
    try:
        scan = chaos.bifurcation_scan(
            args.a_min, args.a_max, args.a_steps, args.x0, args.samples, args.transient, args.mode
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(scan.to_csv(), args.out)


def _cmd_lyapunov(args):
    key = _key(args)
    try:
        est = chaos.lyapunov(key, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    record = {"a": key.a, "mode": key.mode.value, "x0": key.x0, **est.to_dict()}
    _emit(json.dumps(record, sort_keys=True) + "\n", args.out)


def bench_keys(count, seed):
    """Deterministic pseudo-random keys for the benchmark."""
    rng = np.random.default_rng(seed)
    x0 = rng.uniform(0.01, 0.99, count)
    a = rng.uniform(0.05, 1.95, count)
    b = 10.0 ** rng.uniform(4.0, 9.0, count)
    return x0, a, b


def _cmd_bench(args):
    if args.count < 1 or args.chunk < 1:
        raise UsageError("--count and --chunk must be >= 1")
    x0, a, b = bench_keys(args.count, args.seed)
    mode = chaos.Mode.parse(args.mode)
    # compile outside the timed region
    generate_initial_batch(x0[:1], a[:1], b[:1], mode)
    seen = set()
    gen_time = 0.0
    refine_time = 0.0
    cfg = GenConfig(refine=True)
    for lo in range(0, args.count, args.chunk):
        hi = min(lo + args.chunk, args.count)
        t0 = time.perf_counter()
        tables = generate_initial_batch(x0[lo:hi], a[lo:hi], b[lo:hi], mode)
        gen_time += time.perf_counter() - t0
        seen.update(row.astype(np.uint8).tobytes() for row in tables)
        if args.refine:
            t0 = time.perf_counter()
            for i, row in enumerate(tables):
                key = chaos.MapParams(x0[lo + i], a[lo + i], b[lo + i], mode)
                refine(row, cfg, key)
            refine_time += time.perf_counter() - t0
    summary = {
        "backend": _backend.NAME,
        "count": args.count,
        "distinct": len(seen),
        "initial_total_s": gen_time,
        "initial_mean_us": gen_time / args.count * 1e6,
    }
    if args.refine:
        summary["refine_total_s"] = refine_time
        summary["refine_mean_us"] = refine_time / args.count * 1e6
    if args.json:
        _emit(json.dumps(summary, sort_keys=True) + "\n", None)
        return
    lines = [
        f"backend: {summary['backend']}",
        f"initial S-boxes: {args.count} generated, {summary['distinct']} distinct",
        f"initial total: {gen_time:.3f} s, mean {summary['initial_mean_us']:.1f} us",
    ]
    if args.refine:
        lines.append(f"refine total: {refine_time:.3f} s, mean {summary['refine_mean_us']:.1f} us")
    _emit("\n".join(lines) + "\n", None)


def _cmd_fixtures(args):
    if args.name == "aes":
        fx = reference.ReferenceFixture("aes", reference.aes_sbox())
    else:
        fx = reference.fixture(args.name)
    if not args.check:
        _emit(tableio.dumps(fx.table, args.format), args.out)
        return EXIT_OK
    mismatches = reference.check(fx, strict=False)
    lines = [f"fixture {fx.name}: {len(mismatches)} mismatch(es) against published values"]
    lines += [f"  {m}" for m in mismatches]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_CHECK_FAILED if (args.strict and mismatches) else EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "analyze": _cmd_analyze,
    "bifurcate": _cmd_bifurcate,
    "lyapunov": _cmd_lyapunov,
    "bench": _cmd_bench,
    "fixtures": _cmd_fixtures,
}


def run(args) -> int:
    """Execute a parsed command and return its exit status."""
    try:
        status = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"sbox-forge {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidTableError as exc:
        print(f"sbox-forge {args.command}: malformed table: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (GenerationStalled, RefinementFailed) as exc:
        print(f"sbox-forge {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    return EXIT_OK if status is None else status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
