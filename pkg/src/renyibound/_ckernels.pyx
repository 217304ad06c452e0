# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled recurrence kernels. Same signatures as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, fabs, M_PI

cnp.import_array()


def gegenbauer_array(int n, double lam, x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(xs)
    # recurrence coefficients, hoisted so the inner loop has no division
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.empty(max(n + 1, 2))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] b = np.empty(max(n + 1, 2))
    cdef Py_ssize_t i, size = xs.shape[0]
    cdef int k
    cdef double xi, prev, cur, nxt
    for k in range(2, n + 1):
        a[k] = 2.0 * (k + lam - 1.0) / k
        b[k] = (k + 2.0 * lam - 2.0) / k
    if n == 0:
        out[:] = 1.0
        return out.reshape(np.shape(x))
    for i in range(size):
        xi = xs[i]
        prev = 1.0
        cur = 2.0 * lam * xi
        for k in range(2, n + 1):
            nxt = a[k] * xi * cur - b[k] * prev
            prev = cur
            cur = nxt
        out[i] = cur
    return out.reshape(np.shape(x))


def laguerre_array(int n, double alpha, x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(xs)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] inv = np.empty(max(n + 1, 2))
    cdef Py_ssize_t i, size = xs.shape[0]
    cdef int k
    cdef double xi, prev, cur, nxt
    for k in range(2, n + 1):
        inv[k] = 1.0 / k
    if n == 0:
        out[:] = 1.0
        return out.reshape(np.shape(x))
    for i in range(size):
        xi = xs[i]
        prev = 1.0
        cur = 1.0 + alpha - xi
        for k in range(2, n + 1):
            nxt = ((2.0 * k - 1.0 + alpha - xi) * cur - (k - 1.0 + alpha) * prev) * inv[k]
            prev = cur
            cur = nxt
        out[i] = cur
    return out.reshape(np.shape(x))


cdef inline double _legendre_pair(int n, double x, double *deriv) nogil:
    cdef double p0 = 1.0, p1 = x, p2
    cdef int k
    for k in range(2, n + 1):
        p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k
        p0 = p1
        p1 = p2
    deriv[0] = n * (x * p1 - p0) / (x * x - 1.0)
    return p1


def legendre_rule(int n):
    cdef int m = (n + 1) // 2
    cdef cnp.ndarray[cnp.float64_t, ndim=1] nodes = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] weights = np.empty(n)
    cdef int i, it
    cdef double x, p, dp, dx, w
    for i in range(m):
        x = cos(M_PI * (i + 0.75) / (n + 0.5))
        for it in range(100):
            p = _legendre_pair(n, x, &dp)
            dx = p / dp
            x -= dx
            if fabs(dx) < 1e-16:
                break
        _legendre_pair(n, x, &dp)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        nodes[i] = -x
        nodes[n - 1 - i] = x
        weights[i] = w
        weights[n - 1 - i] = w
    if n % 2 == 1:
        nodes[m - 1] = 0.0
    return nodes, weights
