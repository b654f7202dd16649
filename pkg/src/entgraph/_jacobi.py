"""Cyclic complex Jacobi eigensolver for small dense Hermitian matrices.

Each pivot (p, q) is annihilated by a unitary built from a phase that makes
``a[p, q]`` real followed by a classical real Jacobi rotation.  The kernel is
compiled with numba when available; otherwise the identical code runs as
plain Python (correct, just slower).
"""
import math

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

OFF_TOL = 1e-14
MAX_SWEEPS = 50


@njit(cache=True)
def _jacobi_kernel(a, off_tol, max_sweeps, vectors):
    n = a.shape[0]
    a = a.copy()
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0

    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j].real ** 2 + a[i, j].imag ** 2
    tol = off_tol * max(1.0, math.sqrt(scale))

    sweeps = 0
    while True:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if math.sqrt(off) < tol:
            break
        if sweeps >= max_sweeps:
            return a, v, False
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # phase d_q = conj(apq)/|apq| makes the pivot real
                dq = apq.conjugate() / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # U restricted to (p, q): [[c, s], [-s*dq, c*dq]]
                upp = complex(c, 0.0)
                upq = complex(s, 0.0)
                uqp = -s * dq
                uqq = c * dq
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * upp + akq * uqp
                    a[k, q] = akp * upq + akq * uqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = upp.conjugate() * apk + uqp.conjugate() * aqk
                    a[q, k] = upq.conjugate() * apk + uqq.conjugate() * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if not vectors:
                    continue
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * upp + vkq * uqp
                    v[k, q] = vkp * upq + vkq * uqq
    return a, v, True


def jacobi_eigh(m, off_tol=OFF_TOL, max_sweeps=MAX_SWEEPS):
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, v)`` with ``m ≈ v @ diag(w) @ v.conj().T``.  The caller is
    responsible for checking Hermiticity.
    """
    a = np.ascontiguousarray(m, dtype=np.complex128)
    d, v, ok = _jacobi_kernel(a, off_tol, max_sweeps, True)
    if not ok:  # pragma: no cover - Hermitian Jacobi always converges
        raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diagonal(d).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def jacobi_eigvalsh(m, off_tol=OFF_TOL, max_sweeps=MAX_SWEEPS):
    """Eigenvalues only (descending); skips accumulating the rotations."""
    a = np.ascontiguousarray(m, dtype=np.complex128)
    d, _, ok = _jacobi_kernel(a, off_tol, max_sweeps, False)
    if not ok:  # pragma: no cover
        raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return np.sort(np.diagonal(d).real)[::-1]
