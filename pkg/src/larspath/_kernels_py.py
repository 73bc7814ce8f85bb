"""Pure-Python/NumPy implementations of the hot inner loops.

These are the fallback twins of the compiled ``_kernels`` extension.  Both
implementations perform the same floating-point operations in the same order,
so switching backends does not change results.  The coordinate loops here use
plain Python floats (not NumPy scalars) because that is several times faster
for the small dimensions these kernels see.

All kernels assume unit-diagonal Gram matrices (standardized designs).
"""

import math

import numpy as np


def cd_sweeps(beta, c, G, lam, tol, max_sweeps):
    """Cyclic coordinate-descent sweeps for the L1-penalized problem.

    Arguments ``beta`` (coefficients) and ``c`` (residual correlations,
    maintained as c = X'y - G·beta) are updated in place.  Returns the number
    of sweeps used, or -1 if ``max_sweeps`` was reached before the largest
    coordinate change in a sweep fell below ``tol``.
    """
    m = beta.shape[0]
    bl = beta.tolist()
    cl = c.tolist()
    Gl = G.tolist()
    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        delta = 0.0
        for j in range(m):
            bj = bl[j]
            z = bj + cl[j]
            if z > lam:
                nb = z - lam
            elif z < -lam:
                nb = z + lam
            else:
                nb = 0.0
            d = nb - bj
            if d != 0.0:
                bl[j] = nb
                Gj = Gl[j]
                for i in range(m):
                    cl[i] -= d * Gj[i]
                ad = -d if d < 0.0 else d
                if ad > delta:
                    delta = ad
        sweeps += 1
        if delta < tol:
            converged = True
            break
    beta[:] = bl
    c[:] = cl
    return sweeps if converged else -1


def stagewise_chunk(beta, c, G, eps, n_steps, traj, t0):
    """Run ``n_steps`` fixed-size stagewise updates, recording each vertex.

    ``beta`` and ``c`` are updated in place; row ``t0 + t`` of ``traj``
    receives the coefficient vector after update ``t``.  Ties in the
    most-correlated variable go to the lowest index.
    """
    for t in range(n_steps):
        j = int(np.argmax(np.abs(c)))
        cj = c[j]
        if cj > 0.0:
            es = eps
        elif cj < 0.0:
            es = -eps
        else:
            es = 0.0
        beta[j] += es
        c -= es * G[j]
        traj[t0 + t] = beta


def givens_downdate(R, start):
    """Re-triangularize ``R`` in place after a column deletion.

    ``R`` is a k x (k-1) array whose subdiagonal is nonzero from column
    ``start`` onward.  Rotations act on row pairs (i, i+1); the caller
    discards the final row and fixes diagonal signs afterwards.
    """
    ncols = R.shape[1]
    for i in range(start, ncols):
        a = float(R[i, i])
        b = float(R[i + 1, i])
        if b == 0.0:
            continue
        r = math.sqrt(a * a + b * b)
        cs = a / r
        sn = b / r
        t1 = R[i, i:].copy()
        t2 = R[i + 1, i:].copy()
        R[i, i:] = cs * t1 + sn * t2
        R[i + 1, i:] = cs * t2 - sn * t1
