"""Backend equivalence: the compiled loops must match the Python ones.

The fallback and the extension are written to perform the same floating
point operations in the same order, so the comparisons here are exact, not
approximate.
"""

import os
import subprocess
import sys

import numpy as np
import pytest

from larspath import _kernels_py, kernels
from larspath.preprocess import standardize

needs_extension = pytest.mark.skipif(
    not kernels.HAVE_EXTENSION, reason="compiled extension not built"
)


def make_problem(seed, n=30, m=6):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, m))
    y = X @ rng.normal(size=m) + 0.5 * rng.normal(size=n)
    d = standardize(X, y)
    G = np.ascontiguousarray(d.gram())
    c0 = d.columns.T @ d.response
    return G, c0


def test_backend_name_is_consistent():
    assert kernels.backend_name() in ("compiled", "python")
    assert (kernels.backend_name() == "compiled") == kernels.HAVE_EXTENSION


def test_env_var_forces_the_python_fallback():
    env = dict(os.environ, LARSPATH_NO_EXTENSION="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from larspath import kernels; print(kernels.backend_name())"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"


def test_cd_sweeps_reaches_a_soft_threshold_fixed_point():
    G, c0 = make_problem(0)
    lam = 0.3 * float(np.abs(c0).max())
    beta = np.zeros(6)
    c = c0.copy()
    sweeps = kernels.cd_sweeps(beta, c, G, lam, 1e-12, 100000)
    assert sweeps > 0
    for j in range(6):
        if beta[j] == 0.0:
            assert abs(c[j]) <= lam + 1e-8
        else:
            assert abs(c[j] - lam * np.sign(beta[j])) < 1e-8


def test_cd_sweeps_reports_nonconvergence():
    G, c0 = make_problem(1)
    beta = np.zeros(6)
    c = c0.copy()
    assert kernels.cd_sweeps(beta, c, G, 0.01, 1e-14, 1) == -1


def test_stagewise_chunk_sits_still_without_correlation():
    G, _ = make_problem(2)
    beta = np.full(6, 0.5)
    c = np.zeros(6)
    traj = np.empty((4, 6))
    kernels.stagewise_chunk(beta, c, G, 0.01, 4, traj, 0)
    assert np.all(traj == 0.5)


def test_givens_downdate_is_orthogonal_and_zeroes_the_subdiagonal():
    rng = np.random.default_rng(3)
    R0 = np.triu(rng.normal(size=(6, 6))) + 4 * np.eye(6)
    M = np.delete(R0, 2, axis=1)
    before = M.T @ M
    _kernels_py.givens_downdate(M, 2)
    assert np.abs(M.T @ M - before).max() < 1e-12
    for i in range(2, 5):
        assert abs(M[i + 1, i]) < 1e-12


@needs_extension
def test_cd_sweeps_backends_agree_exactly():
    for seed in range(10):
        G, c0 = make_problem(seed)
        lam = (0.1 + 0.08 * seed) * float(np.abs(c0).max())
        b1, c1 = np.zeros(6), c0.copy()
        b2, c2 = np.zeros(6), c0.copy()
        s1 = _kernels_py.cd_sweeps(b1, c1, G, lam, 1e-10, 100000)
        s2 = kernels.cd_sweeps(b2, c2, G, lam, 1e-10, 100000)
        assert s1 == s2
        assert np.array_equal(b1, b2)
        assert np.array_equal(c1, c2)


@needs_extension
def test_stagewise_chunk_backends_agree_exactly():
    for seed in range(5):
        G, c0 = make_problem(seed)
        b1, c1 = np.zeros(6), c0.copy()
        b2, c2 = np.zeros(6), c0.copy()
        t1 = np.empty((200, 6))
        t2 = np.empty((200, 6))
        _kernels_py.stagewise_chunk(b1, c1, G, 0.01, 200, t1, 0)
        kernels.stagewise_chunk(b2, c2, G, 0.01, 200, t2, 0)
        assert np.array_equal(t1, t2)
        assert np.array_equal(b1, b2)
        assert np.array_equal(c1, c2)


@needs_extension
def test_givens_downdate_backends_agree():
    rng = np.random.default_rng(4)
    for _ in range(10):
        R0 = np.triu(rng.normal(size=(8, 8))) + 4 * np.eye(8)
        drop = int(rng.integers(0, 7))
        M1 = np.delete(R0, drop, axis=1)
        M2 = M1.copy()
        _kernels_py.givens_downdate(M1, drop)
        kernels.givens_downdate(M2, drop)
        assert np.abs(M1 - M2).max() <= 1e-15
