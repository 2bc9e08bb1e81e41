"""Time the compiled kernels against the numpy fallback.

Runs every capacity algorithm on the bundled 3x3 channel at the four
benchmark orders with both initializations, once per backend, and prints
per-cell and total wall time plus the largest value disagreement.

    python3 benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

from ainfo import _backend
from ainfo.ao import AOConfig, Init
from ainfo.capacity import run_capacity
from ainfo.io import bundled_channel

ALPHAS = (1.03, 1.5, 2.0, 5.0)
ALGOS = ("s1", "jo", "c", "lp")
INITS = (Init.UNIFORM, Init.INPUT_TIMES_CHANNEL)


def run_cells(backend, repeat):
    _backend.kernels = _backend.get(backend)
    ch = bundled_channel()
    out = {}
    for algo in ALGOS:
        for a in ALPHAS:
            for init in INITS:
                cfg = AOConfig(initialization=init)
                best = float("inf")
                for _ in range(repeat):
                    t0 = time.perf_counter()
                    r = run_capacity(algo, a, ch, cfg)
                    best = min(best, time.perf_counter() - t0)
                out[algo, a, init.value] = (r.value, r.iterations, best)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1, help="keep the best of N runs per cell")
    args = ap.parse_args()

    try:
        _backend.get("cython")
    except ImportError:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    saved = _backend.kernels
    try:
        cy = run_cells("cython", args.repeat)
        py = run_cells("python", args.repeat)
    finally:
        _backend.kernels = saved

    print(f"{'algo':<4} {'alpha':>5} {'init':<20} {'iters':>6} {'cython ms':>10} {'python ms':>10} {'ratio':>7}")
    for key in cy:
        (_, n, tc), (_, _, tp) = cy[key], py[key]
        algo, a, init = key
        print(f"{algo:<4} {a:>5} {init:<20} {n:>6} {tc * 1e3:>10.2f} {tp * 1e3:>10.1f} {tp / tc:>7.0f}")
    tc = sum(v[2] for v in cy.values())
    tp = sum(v[2] for v in py.values())
    gap = max(abs(cy[k][0] - py[k][0]) for k in cy)
    print(f"total: cython {tc:.3f} s, python {tp:.3f} s, speedup {tp / tc:.0f}x, max |value gap| {gap:.1e}")


if __name__ == "__main__":
    main()
