import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fdboot import _fallback, kernels
from fdboot.core import Grid

compiled = pytest.importorskip("fdboot._kernels")

NAMES = ["le_counts", "fm_depth_scores", "pairwise_l2", "pairwise_linf",
         "l2_to_reference", "linf_to_reference"]


def call(mod, name, X, w):
    ref = X[0] * 0.5
    args = {
        "le_counts": (X,),
        "fm_depth_scores": (X, w),
        "pairwise_l2": (X, w),
        "pairwise_linf": (X,),
        "l2_to_reference": (X, ref, w),
        "linf_to_reference": (X, ref),
    }[name]
    return getattr(mod, name)(*args)


def test_backend_reports_a_name():
    assert kernels.BACKEND in ("cython", "python")
    assert _fallback.BACKEND == "python"
    assert compiled.BACKEND == "cython"


@pytest.mark.parametrize("name", NAMES)
def test_backends_bitwise_equal_on_gp_sample(name, gp_sample):
    X, w = gp_sample.values, gp_sample.grid.weights
    assert np.array_equal(call(_fallback, name, X, w), call(compiled, name, X, w))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: arrays(
    np.float64, (n, 4), elements=st.integers(-3, 3).map(float))))
def test_backends_agree_with_ties(X):
    w = Grid(np.array([0.0, 0.5, 1.5, 2.0])).weights
    for name in NAMES:
        assert np.array_equal(call(_fallback, name, X, w), call(compiled, name, X, w)), name


def test_env_var_forces_fallback():
    code = "import fdboot.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, FDBOOT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
