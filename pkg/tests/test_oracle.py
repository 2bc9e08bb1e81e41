import ast
import math
from pathlib import Path

import numpy as np
import pytest

from ainfo import _fallback as steps
from ainfo import oracle
from ainfo.core import Distribution, renyi_divergence
from ainfo.functionals import lp_tilde_functional, s1_functional
from ainfo.mi import lp_mi_def_ao, lp_mi_vc_ao
from ainfo.oracle import DimensionTooLarge, GridSpec
from conftest import rand_channel, rand_dist, useless


def test_gridspec_validation():
    GridSpec(10, 1, 0.5)
    for bad in [dict(resolution=9), dict(refinement_levels=0), dict(shrink_factor=1.0), dict(shrink_factor=0)]:
        with pytest.raises(ValueError):
            GridSpec(**bad)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lattice(n):
    lat = oracle.simplex_lattice(n, 12)
    assert lat.shape == (math.comb(12 + n - 1, n - 1), n)
    np.testing.assert_allclose(lat.sum(axis=1), 1.0)
    assert lat.min() >= 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_divergence_minimizer_is_target(n, rng):
    p = rng.dirichlet(np.ones(n))
    q, v = oracle.grid_min_over_simplex(lambda q: renyi_divergence(2.0, p, q), n, GridSpec(20, 3, 0.15))
    assert v == pytest.approx(0.0, abs=1e-5)
    np.testing.assert_allclose(q, p, atol=5e-3)


def test_dimension_guard(bench_ch):
    with pytest.raises(DimensionTooLarge):
        oracle.grid_min_over_simplex(lambda q: 0.0, 5)
    with pytest.raises(DimensionTooLarge):
        oracle.exhaustive_joint_min(2.0, np.full(4, 0.25), np.full((4, 2), 0.5))


def test_refinement_levels_monotone(rng, bench_ch):
    p = rand_dist(rng, 3).probs
    _, _, levels = oracle.grid_min_over_simplex(
        lambda q: oracle.direct_ac_objective(1.5, p, bench_ch.rows, q), 3, vectorized=True, return_levels=True
    )
    assert len(levels) == 4 and all(b <= a for a, b in zip(levels, levels[1:]))
    _, levels = oracle.exhaustive_joint_min(0.7, p, bench_ch.rows, return_levels=True)
    assert all(b <= a for a, b in zip(levels, levels[1:]))


def test_deterministic(bench_ch):
    u = np.full(3, 1 / 3)
    a = oracle.exhaustive_joint_min(2.0, u, bench_ch.rows)
    assert a == oracle.exhaustive_joint_min(2.0, u, bench_ch.rows)
    assert oracle.grid_sibson_mi(2.0, u, bench_ch.rows)[1] == oracle.grid_sibson_mi(2.0, u, bench_ch.rows)[1]


def test_vectorized_matches_pointwise(rng, bench_ch):
    p = rand_dist(rng, 3).probs
    f = lambda q: oracle.direct_sibson_objective(0.5, p, bench_ch.rows, q)  # noqa: E731
    spec = GridSpec(12, 1, 0.3)
    a = oracle.grid_min_over_simplex(f, 3, spec, vectorized=True)
    b = oracle.grid_min_over_simplex(lambda q: float(f(q)[0]), 3, spec)
    assert a[1] == pytest.approx(b[1], abs=1e-15)


def test_joint_min_values(rng, bench_ch):
    assert oracle.exhaustive_joint_min(2.0, np.full(3, 1 / 3), useless(3, 3).rows) == pytest.approx(0.0, abs=1e-6)
    u = Distribution.uniform(3)
    assert oracle.exhaustive_joint_min(2.0, u.probs, bench_ch.rows) == pytest.approx(
        lp_mi_def_ao(2.0, u, bench_ch).value, abs=1e-4
    )
    p, ch = rand_dist(rng, 2), rand_channel(rng, 2, 2)
    assert oracle.exhaustive_joint_min(0.7, p.probs, ch.rows) == pytest.approx(
        lp_mi_vc_ao(0.7, p, ch).value, abs=1e-4
    )


def test_objectives_survive_zeros():
    W = np.array([[1.0, 0.0], [0.5, 0.5]])
    p = np.array([0.5, 0.5])
    v = oracle.direct_ac_objective(2.0, p, W, np.array([[1.0, 0.0], [0.5, 0.5]]))
    assert v[0] == np.inf and np.isfinite(v[1])
    v = oracle.direct_lp_objective(3.0, p[:, None] * W, np.array([[1.0, 0.0]]), np.array([[0.5, 0.5]]))
    assert v[0, 0] == np.inf


def test_alpha_one_rejected():
    with pytest.raises(ValueError):
        oracle.direct_sibson_objective(1.0, np.ones(2) / 2, np.eye(2), np.ones(2) / 2)


# --- stationarity ---


def _s1_setup(rng, a=2.0):
    p, ch = rand_dist(rng, 3), rand_channel(rng, 3, 3)
    r = np.exp(steps.s1_r_step(np.log(ch.rows), a, np.log(p.probs)))
    return p.probs, ch.rows, r


def test_stationarity_accepts_s1_r_step(rng):
    p, W, r = _s1_setup(rng)
    rep = oracle.verify_stationarity(lambda rr: s1_functional(2.0, p, W, rr), r, axis=0)
    assert rep and rep.directions_checked == 18 and rep.worst_slope <= 1e-7


def test_stationarity_rejects_swapped_entries(rng):
    p, W, r = _s1_setup(rng)
    bad = r.copy()
    i, j = np.argmax(bad[:, 0]), np.argmin(bad[:, 0])
    bad[[i, j], 0] = bad[[j, i], 0]
    rep = oracle.verify_stationarity(lambda rr: s1_functional(2.0, p, W, rr), bad, axis=0)
    assert not rep
    assert rep.worst_direction[0] == 0 and rep.worst_slope > 1e-7


def test_stationarity_minimizer_sign():
    q = np.array([0.2, 0.3, 0.5])
    f = lambda x: renyi_divergence(0.5, q, x)  # noqa: E731
    assert oracle.verify_stationarity(f, q, maximize=False)
    assert not oracle.verify_stationarity(f, q, maximize=True)
    assert not oracle.verify_stationarity(f, np.array([0.3, 0.3, 0.4]), maximize=False)


def test_stationarity_accepts_lp_q_step(rng):
    # q-step of the Lapidoth-Pfister capacity iteration
    a = 2.5
    p, ch = rand_dist(rng, 3), rand_channel(rng, 3, 3)
    r = rng.dirichlet(np.ones(3), size=3).T
    lq, _ = steps.lp_q_step(np.log(ch.rows), a, np.log(p.probs), np.log(r))
    q = np.exp(lq)
    f = lambda qq: lp_tilde_functional(a, p.probs, ch.rows, qq, r)  # noqa: E731
    assert oracle.verify_stationarity(f, q, axis=None)


def test_stationarity_perturbation_range():
    with pytest.raises(ValueError):
        oracle.verify_stationarity(lambda x: 0.0, np.ones(2) / 2, perturbation=1e-2)


def test_oracle_is_independent_of_solvers():
    src = Path(oracle.__file__).read_text()
    imported = set()
    for node in ast.walk(ast.parse(src)):
        if isinstance(node, ast.Import):
            imported |= {a.name for a in node.names}
        elif isinstance(node, ast.ImportFrom):
            imported.add(node.module)
    assert not any(m and m.startswith("ainfo") for m in imported)
