"""Acceptance suite.

Each test prints one ``[PASS]``/``[FAIL]`` line for its criterion (visible
with ``pytest -s`` or ``python3 tests/test_acceptance.py``) and then
asserts it.
"""

from __future__ import annotations

import sys
import time

import numpy as np

import ainfo
from ainfo import _fallback as steps
from ainfo import oracle
from ainfo.ao import AOConfig, Init
from ainfo.capacity import run_capacity
from ainfo.core import Channel, Distribution
from ainfo.functionals import c_functional, c_tilde_functional, s1_functional
from ainfo.io import bundled_channel
from ainfo.mi import ac_mi, arimoto_mi_closed, arimoto_mi_entropy_difference, lp_mi_def_ao, lp_mi_vc_ao
from ainfo.mi import sibson_mi_closed

ALPHAS = (1.03, 1.5, 2.0, 5.0)
ALGOS = ("s1", "jo", "c", "lp")
INITS = (Init.UNIFORM, Init.INPUT_TIMES_CHANNEL)

# (F^(N) per order) for each algorithm row of the published capacity table
TABLE = {
    ("s1", Init.UNIFORM): (0.054204678, 0.07617995, 0.097030615, 0.183426237),
    ("jo", Init.UNIFORM): (0.054201694, 0.07617965, 0.097030139, 0.183426230),
    ("jo", Init.INPUT_TIMES_CHANNEL): (0.054201694, 0.07617965, 0.097030139, 0.183426230),
    ("c", Init.UNIFORM): (0.054204678, 0.07617991, 0.097030445, 0.183426230),
    ("c", Init.INPUT_TIMES_CHANNEL): (0.054204678, 0.07617991, 0.097030445, 0.183426231),
    ("lp", Init.UNIFORM): (0.054204763, 0.07618003, 0.097030811, 0.183426237),
    ("lp", Init.INPUT_TIMES_CHANNEL): (0.054204763, 0.07618003, 0.097030811, 0.183426237),
}

ORACLE_ALPHAS = (0.5, 0.8, 1.5, 3.0)


def report(n: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    sys.stdout.flush()


def random_channel(rng, nx, ny) -> Channel:
    return Channel.from_weights(rng.uniform(size=(nx, ny)))


def random_input(rng, n) -> Distribution:
    return Distribution.from_weights(rng.dirichlet(np.ones(n)))


def random_channels_c3():
    rng = np.random.default_rng(20240603)
    for _ in range(50):
        nx, ny = rng.integers(2, 5, size=2)
        yield random_channel(rng, nx, ny)


def oracle_instances():
    rng = np.random.default_rng(777)
    for _ in range(20):
        nx, ny = rng.integers(2, 4, size=2)
        yield random_input(rng, nx), random_channel(rng, nx, ny)


def table_runs():
    ch = bundled_channel()
    out = {}
    for algo in ALGOS:
        for init in INITS:
            for a in ALPHAS:
                out[algo, init, a] = run_capacity(algo, a, ch, AOConfig(initialization=init))
    return out


# ---------------------------------------------------------------------------


def test_criterion_1_table_values():
    t0 = time.perf_counter()
    runs = table_runs()
    elapsed = time.perf_counter() - t0
    worst, where = 0.0, None
    misses = 0
    for (algo, init), row in TABLE.items():
        for a, ref in zip(ALPHAS, row):
            err = abs(runs[algo, init, a].value - ref)
            misses += err > 1e-6
            if err > worst:
                worst, where = err, (algo, init.value, a)
    ok = misses == 0 and elapsed < 5.0
    s1 = ", ".join(f"{runs['s1', Init.UNIFORM, a].value:.9f}" for a in ALPHAS)
    report(1, ok, f"{misses}/{len(TABLE) * len(ALPHAS)} cells off by >1e-6, worst {worst:.2e} at {where}; "
                  f"S1 = [{s1}]; {elapsed:.2f}s")
    assert ok


def test_criterion_2_s1_fastest():
    runs = table_runs()
    bad = []
    for init in INITS:
        for a in ALPHAS:
            n = {algo: runs[algo, init, a].iterations for algo in ALGOS}
            if n["s1"] > min(n.values()):
                bad.append((init.value, a, n))
    ok = not bad
    counts = "; ".join(
        f"a={a}: " + "/".join(str(runs[algo, Init.UNIFORM, a].iterations) for algo in ALGOS) for a in ALPHAS
    )
    report(2, ok, f"S1/JO/C/LP iterations {counts}" + (f"; violations {bad}" if bad else ""))
    assert ok


def test_criterion_3_capacity_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    for ch in random_channels_c3():
        for a in (1.3, 2.0, 5.0):
            vals = [run_capacity(algo, a, ch).value for algo in ALGOS]
            worst = max(worst, max(vals) - min(vals))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 60
    report(3, ok, f"max pairwise gap {worst:.2e} over 150 cases, {elapsed:.2f}s")
    assert ok


def test_criterion_4_monotone_traces():
    traces = [r.trace for r in table_runs().values()]
    for ch in random_channels_c3():
        for a in (1.3, 2.0, 5.0):
            traces += [run_capacity(algo, a, ch).trace for algo in ALGOS]
    for p, ch in oracle_instances():
        for a in ORACLE_ALPHAS:
            traces += [ac_mi(a, p, ch).trace, lp_mi_def_ao(a, p, ch).trace, lp_mi_vc_ao(a, p, ch).trace]
    violations = sum(t.violations(1e-12).size for t in traces)
    ok = violations == 0
    report(4, ok, f"{violations} monotonicity violations across {len(traces)} traces")
    assert ok


def test_criterion_5_oracle_equivalence():
    worst = {"ac": 0.0, "lp_def": 0.0, "lp_vc": 0.0, "sibson": 0.0}
    for p, ch in oracle_instances():
        for a in ORACLE_ALPHAS:
            lp_ref = oracle.exhaustive_joint_min(a, p.probs, ch.rows)
            pairs = {
                "ac": (ac_mi(a, p, ch).value, oracle.grid_ac_mi(a, p.probs, ch.rows)[1]),
                "lp_def": (lp_mi_def_ao(a, p, ch).value, lp_ref),
                "lp_vc": (lp_mi_vc_ao(a, p, ch).value, lp_ref),
                "sibson": (sibson_mi_closed(a, p, ch), oracle.grid_sibson_mi(a, p.probs, ch.rows)[1]),
            }
            for k, (v, ref) in pairs.items():
                worst[k] = max(worst[k], abs(v - ref))
    ok = all(v <= 1e-4 for v in worst.values())
    report(5, ok, "max |solver - grid| " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))
    assert ok


def test_criterion_6_shannon_limit():
    rng = np.random.default_rng(606)
    worst = 0.0
    for _ in range(20):
        p, ch = random_input(rng, 3), random_channel(rng, 3, 3)
        ref = ainfo.shannon_mi(p, ch)
        for a in (1 - 1e-4, 1 + 1e-4):
            vals = [
                sibson_mi_closed(a, p, ch),
                arimoto_mi_closed(a, p, ch),
                ac_mi(a, p, ch).value,
                lp_mi_def_ao(a, p, ch).value,
                lp_mi_vc_ao(a, p, ch).value,
            ]
            worst = max(worst, max(abs(v - ref) for v in vals))
    ok = worst <= 1e-3
    report(6, ok, f"max |I_a - I| at a = 1 +- 1e-4: {worst:.2e}")
    assert ok


def test_criterion_7_lp_below_sibson():
    worst = -np.inf
    for p, ch in oracle_instances():
        for a in ORACLE_ALPHAS:
            s = sibson_mi_closed(a, p, ch)
            for lp in (lp_mi_def_ao(a, p, ch).value, lp_mi_vc_ao(a, p, ch).value):
                worst = max(worst, lp - s)
    ok = worst <= 1e-9
    report(7, ok, f"max (I_LP - I_S) = {worst:.2e}")
    assert ok


def _certify_instance(rng, nx, ny):
    """Stationarity reports for every derived update on one random instance."""
    W = random_channel(rng, nx, ny).rows
    lw = np.log(W)
    p = random_input(rng, nx).probs
    out = []
    for a in (0.5, 0.8, 1.5, 3.0):
        # S1 r-step: maximizer over reverse channels (columns)
        r = np.exp(steps.s1_r_step(lw, a, np.log(p)))
        out.append(("s1-r", a, oracle.verify_stationarity(
            lambda rr: s1_functional(a, p, W, rr), r, 1e-4, maximize=True, axis=0)))
        # S1 p-step: maximizer over inputs for a random reverse channel
        r_any = rng.dirichlet(np.ones(nx), size=ny).T
        p_new = np.exp(steps.s1_p_step(lw, a, np.log(r_any))[0])
        out.append(("s1-p", a, oracle.verify_stationarity(
            lambda pp: s1_functional(a, pp, W, r_any), p_new, 1e-4, maximize=True)))
    for a in (1.5, 3.0):
        qt = rng.dirichlet(np.ones(ny), size=nx)
        r_any = rng.dirichlet(np.ones(nx), size=ny).T
        p_new = np.exp(steps.c_p_step(lw, a, np.log(qt), np.log(r_any))[0])
        out.append(("c-p", a, oracle.verify_stationarity(
            lambda pp: c_tilde_functional(a, pp, W, qt, r_any), p_new, 1e-4, maximize=True)))
    for a in (0.5, 0.8):
        qt = rng.dirichlet(np.ones(ny), size=nx)
        qy = np.exp(steps.ac_qy_step(np.log(p), np.log(qt)))
        out.append(("ac-qy", a, oracle.verify_stationarity(
            lambda q: c_functional(a, p, W, qt, q), qy, 1e-4, maximize=False)))
        qy_any = rng.dirichlet(np.ones(ny))
        qt_new = np.exp(steps.ac_q_step(lw, a, np.log(qy_any))[0])
        out.append(("ac-qt", a, oracle.verify_stationarity(
            lambda q: c_functional(a, p, W, q, qy_any), qt_new, 1e-4, maximize=False, axis=1)))
    return out


def test_criterion_8_update_certification():
    rng = np.random.default_rng(808)
    failures, total = [], 0
    for _ in range(20):
        nx, ny = rng.integers(2, 4, size=2)
        for name, a, rep in _certify_instance(rng, nx, ny):
            total += 1
            if not rep:
                failures.append((name, a, rep.worst_slope, rep.worst_direction))
    ok = not failures
    report(8, ok, f"{total - len(failures)}/{total} update outputs stationary"
                  + (f"; failures {failures[:3]}" if failures else ""))
    assert ok


def test_criterion_9_arimoto_dual_path():
    rng = np.random.default_rng(909)
    worst = 0.0
    for _ in range(100):
        nx, ny = rng.integers(2, 6, size=2)
        p, ch = random_input(rng, nx), random_channel(rng, nx, ny)
        a = float(rng.choice([rng.uniform(0.1, 0.95), rng.uniform(1.05, 8.0)]))
        worst = max(worst, abs(arimoto_mi_closed(a, p, ch) - arimoto_mi_entropy_difference(a, p, ch)))
    ok = worst <= 1e-10
    report(9, ok, f"max |closed - entropy difference| = {worst:.2e} over 100 instances")
    assert ok


if __name__ == "__main__":
    # run every criterion, keep going past failures
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
