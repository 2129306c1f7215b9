import os
import subprocess
import sys

import numpy as np
import pytest

from dd_metrology import _kernels_py, kernels

try:
    from dd_metrology import _kernels_ext
except ImportError:  # extension not built
    _kernels_ext = None

needs_ext = pytest.mark.skipif(_kernels_ext is None, reason="compiled extension not built")

CASES = [
    (np.array([]), 3.0),
    (np.array([1.5]), 3.0),
    (np.sort(np.random.default_rng(0).uniform(0, 10, 17)), 10.0),
    (20.0 * np.sin(np.arange(1, 51) * np.pi / 102) ** 2, 20.0),
]


@needs_ext
@pytest.mark.parametrize("times, t", CASES)
def test_backends_agree(times, t):
    w = np.linspace(1e-3, 60.0, 513)
    for name in ("filter_raw", "kernel_raw"):
        a = getattr(_kernels_py, name)(times, t, w)
        b = getattr(_kernels_ext, name)(times, t, w)
        # at small omega t the kernel is a difference of terms of size ~ (n + 1) t / omega
        cancel = (times.size + 1) * t / w if name == "kernel_raw" else 0.0
        tol = 1e-9 * np.abs(a) + 1e-13 * np.max(np.abs(a)) + 1e-14 * cancel
        assert np.all(np.abs(a - b) <= tol)


def test_selected_backend_reported():
    expected = "python" if os.environ.get("DD_METROLOGY_PURE") == "1" or _kernels_ext is None else "cython"
    assert kernels.BACKEND == expected


def test_pure_override():
    code = "from dd_metrology import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, DD_METROLOGY_PURE="1")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "python"
