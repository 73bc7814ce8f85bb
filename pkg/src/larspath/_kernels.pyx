# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twins of the loops in ``_kernels_py``.

The floating-point operation sequence here mirrors the pure-Python fallback
exactly, so the two backends return identical results.
"""

from libc.math cimport sqrt


def cd_sweeps(double[::1] beta, double[::1] c, double[:, ::1] G,
              double lam, double tol, long max_sweeps):
    """See ``_kernels_py.cd_sweeps``."""
    cdef Py_ssize_t m = beta.shape[0]
    cdef Py_ssize_t i, j
    cdef long sweeps = 0
    cdef bint converged = False
    cdef double delta, bj, z, nb, d, ad
    while sweeps < max_sweeps:
        delta = 0.0
        for j in range(m):
            bj = beta[j]
            z = bj + c[j]
            if z > lam:
                nb = z - lam
            elif z < -lam:
                nb = z + lam
            else:
                nb = 0.0
            d = nb - bj
            if d != 0.0:
                beta[j] = nb
                for i in range(m):
                    c[i] -= d * G[j, i]
                ad = -d if d < 0.0 else d
                if ad > delta:
                    delta = ad
        sweeps += 1
        if delta < tol:
            converged = True
            break
    return sweeps if converged else -1


def stagewise_chunk(double[::1] beta, double[::1] c, double[:, ::1] G,
                    double eps, long n_steps, double[:, ::1] traj, long t0):
    """See ``_kernels_py.stagewise_chunk``."""
    cdef Py_ssize_t m = beta.shape[0]
    cdef Py_ssize_t i, j, best
    cdef long t
    cdef double cj, ac, abest, es
    for t in range(n_steps):
        best = 0
        abest = c[0] if c[0] >= 0.0 else -c[0]
        for i in range(1, m):
            ac = c[i] if c[i] >= 0.0 else -c[i]
            if ac > abest:
                abest = ac
                best = i
        j = best
        cj = c[j]
        if cj > 0.0:
            es = eps
        elif cj < 0.0:
            es = -eps
        else:
            es = 0.0
        beta[j] += es
        for i in range(m):
            c[i] -= es * G[j, i]
        for i in range(m):
            traj[t0 + t, i] = beta[i]


def givens_downdate(double[:, ::1] R, Py_ssize_t start):
    """See ``_kernels_py.givens_downdate``."""
    cdef Py_ssize_t ncols = R.shape[1]
    cdef Py_ssize_t i, j
    cdef double a, b, r, cs, sn, t1, t2
    for i in range(start, ncols):
        a = R[i, i]
        b = R[i + 1, i]
        if b == 0.0:
            continue
        r = sqrt(a * a + b * b)
        cs = a / r
        sn = b / r
        for j in range(i, ncols):
            t1 = R[i, j]
            t2 = R[i + 1, j]
            R[i, j] = cs * t1 + sn * t2
            R[i + 1, j] = cs * t2 - sn * t1
