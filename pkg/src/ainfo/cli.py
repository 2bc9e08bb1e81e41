"""``ainfo`` command-line front end.

Exit codes: 0 success, 2 bad input (argument, file or order), 3 the solver
hit its iteration limit (the value is still printed).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from ainfo import _backend
from ainfo.ao import AOConfig, Init
from ainfo.capacity import AlgorithmId, run_capacity
from ainfo.core import Channel, Distribution, DomainError, ValidationError
from ainfo.io import ChannelFile, bundled_channel, channel_json, read_channel, write_channel
from ainfo.mi import ac_mi, arimoto_mi_closed, lp_mi_def_ao, lp_mi_vc_ao, sibson_mi_closed
from ainfo.oracle import GridSpec, exhaustive_joint_min, grid_ac_mi, grid_sibson_mi

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NONCONVERGED = 3

BENCH_COLUMNS = ["algo", "alpha", "init", "value", "iterations", "wall_ms"]
INIT_CHOICES = [Init.UNIFORM.value, Init.UNIFORM_JOINT.value, Init.INPUT_TIMES_CHANNEL.value]


class UsageError(Exception):
    pass


def fmt(v: float) -> str:
    """Nine significant digits; values below 5e-10 in magnitude print as zero."""
    if abs(v) < 5e-10:
        return f"{0.0:.9f}"
    return f"{v:.9g}"


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _name_list(choices):
    def parse(text: str) -> list[str]:
        names = [t.strip().lower() for t in text.split(",") if t.strip()]
        bad = [n for n in names if n not in choices]
        if bad or not names:
            raise argparse.ArgumentTypeError(f"choose from {', '.join(choices)}; got {text!r}")
        return names

    return parse


def _load_channel(path) -> Channel:
    if path is None:
        return bundled_channel()
    try:
        return read_channel(path).to_channel()
    except OSError as e:
        raise UsageError(f"cannot read channel file: {e}") from None


def _load_input(spec: str | None, ch: Channel) -> Distribution:
    if spec is None or spec == "uniform":
        return Distribution.uniform(ch.x_size)
    p = Distribution(np.array(_float_list(spec)))
    if p.alphabet_size != ch.x_size:
        raise UsageError(f"input has {p.alphabet_size} entries, channel has {ch.x_size} inputs")
    return p


def _config(args) -> AOConfig:
    return AOConfig(tolerance=args.tol, max_iterations=args.max_iter, initialization=Init(args.init))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_mi(args) -> int:
    ch = _load_channel(args.channel)
    p = _load_input(args.input, ch)
    if args.measure == "sibson":
        value, result = sibson_mi_closed(args.alpha, p, ch), None
    elif args.measure == "arimoto":
        value, result = arimoto_mi_closed(args.alpha, p, ch), None
    else:
        cfg = _config(args)
        if args.measure == "ac":
            result = ac_mi(args.alpha, p, ch, cfg)
        elif args.lp_solver == "def":
            result = lp_mi_def_ao(args.alpha, p, ch, cfg)
        else:
            result = lp_mi_vc_ao(args.alpha, p, ch, cfg)
        value = result.value
        for flag in result.flags:
            print(f"warning: {flag}", file=sys.stderr)
    print(fmt(value))
    if args.trace:
        if result is None or result.trace is None:
            print(f"note: {args.measure} has a closed form; no trace written", file=sys.stderr)
        else:
            result.trace.write_csv(args.trace)
    if result is not None and not result.converged:
        return EXIT_NONCONVERGED
    return EXIT_OK


def cmd_capacity(args) -> int:
    ch = _load_channel(args.channel)
    res = run_capacity(args.algo, args.alpha, ch, _config(args))
    print(f"{fmt(res.value)} {res.iterations}")
    if args.trace:
        res.trace.write_csv(args.trace)
    return EXIT_OK if res.converged else EXIT_NONCONVERGED


def _threads() -> int:
    raw = os.environ.get("AINFO_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise UsageError(f"AINFO_THREADS must be an integer, got {raw!r}") from None
        if n < 1:
            raise UsageError("AINFO_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def _trace_name(algo: str, alpha: float, init: str) -> str:
    return f"{algo}_alpha{alpha!r}_{init}.csv"


def cmd_bench(args) -> int:
    ch = _load_channel(args.channel)
    cells = []
    for algo in args.algo:
        for alpha in args.alpha:
            if alpha == 1.0 or (AlgorithmId(algo).needs_alpha_above_one and alpha < 1):
                raise UsageError(f"algorithm {algo} is not defined at alpha={alpha}")
            for init in args.init:
                cells.append((algo, alpha, init))
    if not cells:
        raise UsageError("nothing to run")
    out = Path(args.out)
    trace_dir = Path(args.trace) if args.trace else out.with_name(out.stem + "_traces")
    trace_dir.mkdir(parents=True, exist_ok=True)

    def run(cell):
        algo, alpha, init = cell
        cfg = AOConfig(tolerance=args.tol, max_iterations=args.max_iter, initialization=Init(init))
        t0 = time.perf_counter()
        res = run_capacity(algo, alpha, ch, cfg)
        wall = (time.perf_counter() - t0) * 1e3
        res.trace.write_csv(trace_dir / _trace_name(algo, alpha, init))
        return res, wall

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(run, cells))  # map keeps input order

    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(BENCH_COLUMNS)
        for (algo, alpha, init), (res, wall) in zip(cells, results):
            w.writerow([algo, repr(alpha), init, repr(res.value), res.iterations, f"{wall:.3f}"])
    meta = {
        "channel": ch.name or (str(args.channel) if args.channel else "bundled"),
        "channel_rows": ch.rows.tolist(),
        "tolerance": args.tol,
        "max_iterations": args.max_iter,
        "backend": _backend.BACKEND,
        "traces": str(trace_dir),
    }
    out.with_suffix(".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    unconverged = [c for c, (r, _) in zip(cells, results) if not r.converged]
    for c in unconverged:
        print(f"warning: {c[0]} alpha={c[1]} init={c[2]} hit the iteration limit", file=sys.stderr)
    print(f"wrote {len(cells)} rows to {out}")
    return EXIT_NONCONVERGED if unconverged else EXIT_OK


def cmd_gen_channel(args) -> int:
    if args.x < 2 or args.y < 2:
        raise UsageError("channel dimensions must be at least 2")
    rng = np.random.default_rng(args.seed % 2**64)
    w = rng.uniform(size=(args.x, args.y))
    ch = Channel.from_weights(w)
    cf = ChannelFile.from_channel(ch, name=f"random-{args.x}x{args.y}-seed{args.seed}")
    if args.out:
        write_channel(args.out, cf)
    else:
        sys.stdout.write(channel_json(cf))
    return EXIT_OK


def cmd_oracle(args) -> int:
    ch = _load_channel(args.channel)
    p = _load_input(args.input, ch)
    spec = GridSpec(args.resolution, args.levels, args.shrink)
    if args.alpha == 1.0:
        raise UsageError("the grid oracle needs alpha != 1")
    if args.measure == "sibson":
        value = grid_sibson_mi(args.alpha, p.probs, ch.rows, spec)[1]
    elif args.measure == "ac":
        value = grid_ac_mi(args.alpha, p.probs, ch.rows, spec)[1]
    else:
        value = exhaustive_joint_min(args.alpha, p.probs, ch.rows, spec)
    print(fmt(value))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ainfo", description="alpha-mutual information and alpha-capacity")
    sub = ap.add_subparsers(dest="command", required=True)

    def channel_opt(p):
        p.add_argument("--channel", help="channel file (.json or .csv); default: bundled 3x3 channel")

    def solver_opts(p):
        p.add_argument("--init", choices=INIT_CHOICES, default="uniform")
        p.add_argument("--tol", type=float, default=1e-11)
        p.add_argument("--max-iter", type=int, default=10**6)

    p = sub.add_parser("mi", help="one alpha-MI value")
    p.add_argument("--measure", required=True, choices=["sibson", "arimoto", "ac", "lp"])
    p.add_argument("--alpha", type=float, required=True)
    channel_opt(p)
    p.add_argument("--input", help="'uniform' (default) or comma-separated probabilities")
    p.add_argument("--lp-solver", choices=["def", "vc"], default="def",
                   help="Lapidoth-Pfister solver: product-factor AO (def) or surrogate joint (vc)")
    p.add_argument("--trace", help="write the AO trace CSV here")
    solver_opts(p)
    p.set_defaults(func=cmd_mi)

    p = sub.add_parser("capacity", help="alpha-capacity by one AO algorithm")
    p.add_argument("--algo", required=True, choices=[a.value for a in AlgorithmId])
    p.add_argument("--alpha", type=float, required=True)
    channel_opt(p)
    p.add_argument("--trace", help="write the AO trace CSV here")
    solver_opts(p)
    p.set_defaults(func=cmd_capacity)

    algos = [a.value for a in AlgorithmId]
    p = sub.add_parser("bench", help="sweep algorithms x orders x initializations")
    p.add_argument("--alpha", type=_float_list, default=[1.03, 1.5, 2.0, 5.0])
    p.add_argument("--algo", type=_name_list(algos), default=algos)
    p.add_argument("--init", type=_name_list(INIT_CHOICES), default=["uniform", "input-times-channel"])
    channel_opt(p)
    p.add_argument("--out", required=True, help="report CSV")
    p.add_argument("--trace", help="directory for per-run traces (default: <out>_traces/)")
    p.add_argument("--tol", type=float, default=1e-11)
    p.add_argument("--max-iter", type=int, default=10**6)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen-channel", help="random channel with uniform rows, normalized")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (.json or .csv); default: stdout")
    p.set_defaults(func=cmd_gen_channel)

    p = sub.add_parser("oracle", help="grid-search reference value")
    p.add_argument("--measure", required=True, choices=["sibson", "ac", "lp"])
    p.add_argument("--alpha", type=float, required=True)
    channel_opt(p)
    p.add_argument("--input")
    p.add_argument("--resolution", type=int, default=60)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--shrink", type=float, default=0.15)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValidationError, DomainError, ValueError) as e:
        print(f"ainfo {args.command}: error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
