"""The compiled kernels and the numpy fallback must agree."""

import subprocess
import sys

import numpy as np
import pytest

from ainfo import _backend
from ainfo.ao import AOConfig, Init
from ainfo.capacity import run_capacity
from ainfo.core import Channel, Distribution
from ainfo.mi import ac_mi, lp_mi_def_ao, lp_mi_vc_ao
from conftest import rand_channel, rand_dist

try:
    _backend.get("cython")
    HAVE_EXT = True
except ImportError:
    HAVE_EXT = False

needs_ext = pytest.mark.skipif(not HAVE_EXT, reason="compiled kernels not built")


@pytest.fixture
def use_backend():
    saved = _backend.kernels

    def switch(name):
        _backend.kernels = _backend.get(name)

    yield switch
    _backend.kernels = saved


def _both(use_backend, fn):
    use_backend("python")
    a = fn()
    use_backend("cython")
    b = fn()
    return a, b


@needs_ext
@pytest.mark.parametrize("algo", ["s1", "jo", "c", "lp"])
@pytest.mark.parametrize("alpha", [1.5, 5.0])
def test_capacity_parity(algo, alpha, use_backend, bench_ch):
    cfg = AOConfig(initialization=Init.INPUT_TIMES_CHANNEL)
    py, cy = _both(use_backend, lambda: run_capacity(algo, alpha, bench_ch, cfg))
    assert py.value == pytest.approx(cy.value, abs=1e-10)
    assert abs(py.iterations - cy.iterations) <= max(5, py.iterations // 100)
    k = min(py.iterations, cy.iterations, 200)
    np.testing.assert_allclose(py.trace.objectives[:k], cy.trace.objectives[:k], atol=1e-12)
    np.testing.assert_allclose(py.achiever_p_X.probs, cy.achiever_p_X.probs, atol=1e-6)


@needs_ext
@pytest.mark.parametrize("alpha", [0.5, 0.8, 2.0])
def test_mi_parity(alpha, use_backend, rng):
    p, ch = rand_dist(rng, 3), rand_channel(rng, 3, 4)
    for solve in (ac_mi, lp_mi_def_ao, lp_mi_vc_ao):
        py, cy = _both(use_backend, lambda: solve(alpha, p, ch))
        assert py.value == pytest.approx(cy.value, abs=1e-10)
        for key in py.optimizers:
            np.testing.assert_allclose(py.optimizers[key], cy.optimizers[key], atol=1e-6)


@needs_ext
def test_parity_with_zeros(use_backend):
    ch = Channel(np.array([[1.0, 0.0, 0.0], [0.2, 0.3, 0.5], [0.0, 0.5, 0.5]]))
    p = Distribution(np.array([0.5, 0.0, 0.5]))
    for alpha in (0.5, 2.0):
        for solve in (ac_mi, lp_mi_def_ao, lp_mi_vc_ao):
            py, cy = _both(use_backend, lambda: solve(alpha, p, ch))
            assert py.value == pytest.approx(cy.value, abs=1e-10)
    for algo in ("s1", "jo", "c", "lp"):
        py, cy = _both(use_backend, lambda: run_capacity(algo, 2.0, ch))
        assert py.value == pytest.approx(cy.value, abs=1e-10)


def test_env_forces_fallback():
    out = subprocess.run(
        [sys.executable, "-c", "import ainfo; print(ainfo.BACKEND)"],
        env={"AINFO_BACKEND": "python", "PATH": ""},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        _backend.get("fortran")
