# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled alternating-optimization loops.

Mirrors ``ainfo._fallback`` function by function: log-domain arrays laid out
``[x, y]``, reverse channels with columns summing to one, and a status code
(0 tolerance, 1 max iterations, 2 non-finite objective).  The loops run
without the GIL.
"""

import numpy as np

from libc.math cimport INFINITY, exp, fabs, isnan, log

cdef double INF = INFINITY
cdef double NINF = -INFINITY


cdef inline double _lse_vec(double[::1] a) noexcept nogil:
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double m = NINF, s = 0.0
    for i in range(n):
        if a[i] > m:
            m = a[i]
    if m == INF or m == NINF:
        return m
    for i in range(n):
        s += exp(a[i] - m)
    return m + log(s)


cdef inline double _lse_row(double[:, ::1] a, Py_ssize_t i) noexcept nogil:
    cdef Py_ssize_t j, n = a.shape[1]
    cdef double m = NINF, s = 0.0
    for j in range(n):
        if a[i, j] > m:
            m = a[i, j]
    if m == INF or m == NINF:
        return m
    for j in range(n):
        s += exp(a[i, j] - m)
    return m + log(s)


cdef inline double _lse_col(double[:, ::1] a, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double m = NINF, s = 0.0
    for i in range(n):
        if a[i, j] > m:
            m = a[i, j]
    if m == INF or m == NINF:
        return m
    for i in range(n):
        s += exp(a[i, j] - m)
    return m + log(s)


cdef inline double _lse_all(double[:, ::1] a) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double m = NINF, s = 0.0
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if a[i, j] > m:
                m = a[i, j]
    if m == INF or m == NINF:
        return m
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            s += exp(a[i, j] - m)
    return m + log(s)


cdef inline void _norm_cols(double[:, ::1] t, double[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t i, j, nx = t.shape[0], ny = t.shape[1]
    cdef double z, lx = log(<double>nx)
    for j in range(ny):
        z = _lse_col(t, j)
        if z == NINF or z == INF or isnan(z):
            for i in range(nx):
                out[i, j] = -lx
        else:
            for i in range(nx):
                out[i, j] = t[i, j] - z


cdef inline void _norm_rows(double[:, ::1] t, double[:, ::1] out, double[:, ::1] fallback,
                            double[::1] z) noexcept nogil:
    cdef Py_ssize_t i, j, nx = t.shape[0], ny = t.shape[1]
    for i in range(nx):
        z[i] = _lse_row(t, i)
        if z[i] == NINF or z[i] == INF or isnan(z[i]):
            for j in range(ny):
                out[i, j] = fallback[i, j]
        else:
            for j in range(ny):
                out[i, j] = t[i, j] - z[i]


cdef inline int _stop(double[::1] trace, Py_ssize_t k, double tol) noexcept nogil:
    cdef double f = trace[k]
    if isnan(f) or f == INF or f == NINF:
        return 2
    if k > 0 and fabs(f - trace[k - 1]) <= tol:
        return 0
    return -1


cdef inline double _term(double lw, double v) noexcept nogil:
    # weight-zero terms are dropped before any inf arithmetic
    if lw == NINF:
        return NINF
    return lw + v


def s1(double[:, ::1] lw, double alpha, double[::1] logp0, double tol, Py_ssize_t max_iter):
    cdef Py_ssize_t nx = lw.shape[0], ny = lw.shape[1], i, j, k, n = 0
    cdef double beta = 1.0 - 1.0 / alpha, ratio = alpha / (alpha - 1.0), z
    cdef int status = 1, st
    lp_arr = np.array(logp0, dtype=np.float64)
    lr_arr = np.empty((nx, ny))
    tr_arr = np.empty(max_iter)
    cdef double[::1] lp = lp_arr, tr = tr_arr
    cdef double[:, ::1] lr = lr_arr
    cdef double[:, ::1] t = np.empty((nx, ny))
    cdef double[::1] v = np.empty(nx)
    with nogil:
        for k in range(max_iter):
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = lp[i] + alpha * lw[i, j]
            _norm_cols(t, lr)
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = _term(lw[i, j], beta * lr[i, j])
                v[i] = ratio * _lse_row(t, i)
            z = _lse_vec(v)
            for i in range(nx):
                lp[i] = v[i] - z
            tr[k] = z
            n = k + 1
            st = _stop(tr, k, tol)
            if st >= 0:
                status = st
                break
    return lp_arr, lr_arr, tr_arr[:n].copy(), status


def jo(double[:, ::1] lw, double alpha, double[:, ::1] logq0, double tol, Py_ssize_t max_iter):
    cdef Py_ssize_t nx = lw.shape[0], ny = lw.shape[1], i, j, k, n = 0
    cdef double beta = 1.0 - 1.0 / alpha, ratio = alpha / (alpha - 1.0), z
    cdef int status = 1, st
    lq_arr = np.array(logq0, dtype=np.float64)
    lr_arr = np.empty((nx, ny))
    lp_arr = np.empty(nx)
    tr_arr = np.empty(max_iter)
    cdef double[:, ::1] lq = lq_arr, lr = lr_arr
    cdef double[::1] lp = lp_arr, tr = tr_arr
    with nogil:
        for k in range(max_iter):
            _norm_cols(lq, lr)
            for i in range(nx):
                lp[i] = _lse_row(lq, i)
            for i in range(nx):
                for j in range(ny):
                    lq[i, j] = _term(lw[i, j], lp[i] / alpha + beta * lr[i, j])
            z = _lse_all(lq)
            for i in range(nx):
                for j in range(ny):
                    lq[i, j] = lq[i, j] - z
            tr[k] = ratio * z
            n = k + 1
            st = _stop(tr, k, tol)
            if st >= 0:
                status = st
                break
    return lq_arr, lr_arr, lp_arr, tr_arr[:n].copy(), status


def c_ao(double[:, ::1] lw, double alpha, double[::1] logp0, double[:, ::1] logqt0,
         bint update_p, double tol, Py_ssize_t max_iter):
    cdef Py_ssize_t nx = lw.shape[0], ny = lw.shape[1], i, j, k, n = 0
    cdef double beta = 1.0 - 1.0 / alpha, ratio = alpha / (alpha - 1.0)
    cdef double negratio = alpha / (1.0 - alpha), z, h = 0.0, q, a, b
    cdef int status = 1, st
    lp_arr = np.array(logp0, dtype=np.float64)
    lq_arr = np.array(logqt0, dtype=np.float64)
    lr_arr = np.empty((nx, ny))
    tr_arr = np.empty(max_iter)
    cdef double[::1] lp = lp_arr, tr = tr_arr
    cdef double[:, ::1] lq = lq_arr, lr = lr_arr
    cdef double[:, ::1] t = np.empty((nx, ny))
    cdef double[::1] logc = np.empty(nx), g = np.empty(nx)
    for i in range(nx):
        if lp[i] > NINF:
            h -= exp(lp[i]) * lp[i]
    with nogil:
        for k in range(max_iter):
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = lp[i] + lq[i, j]
            _norm_cols(t, lr)
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = _term(lw[i, j], beta * lr[i, j])
            _norm_rows(t, lq, lw, logc)
            if update_p:
                for i in range(nx):
                    a = 0.0
                    b = 0.0
                    for j in range(ny):
                        if lq[i, j] > NINF:
                            q = exp(lq[i, j])
                            a += q * lr[i, j]
                            b += q * (lq[i, j] - lw[i, j])
                    g[i] = a + negratio * b
                z = _lse_vec(g)
                for i in range(nx):
                    lp[i] = g[i] - z
            else:
                z = h
                for i in range(nx):
                    if lp[i] > NINF:
                        z += ratio * exp(lp[i]) * logc[i]
            tr[k] = z
            n = k + 1
            st = _stop(tr, k, tol)
            if st >= 0:
                status = st
                break
    return lp_arr, lq_arr, lr_arr, tr_arr[:n].copy(), status


def lp_ao(double[:, ::1] lw, double alpha, double[::1] logp0, double[:, ::1] logq0,
          bint update_p, double tol, Py_ssize_t max_iter):
    cdef Py_ssize_t nx = lw.shape[0], ny = lw.shape[1], i, j, k, n = 0
    cdef double beta = 1.0 - 1.0 / alpha, e = alpha / (2.0 * alpha - 1.0)
    cdef double coef = (2.0 * alpha - 1.0) / (alpha - 1.0), z
    cdef int status = 1, st
    lp_arr = np.array(logp0, dtype=np.float64)
    lq_arr = np.array(logq0, dtype=np.float64)
    lr_arr = np.empty((nx, ny))
    tr_arr = np.empty(max_iter)
    cdef double[::1] lp = lp_arr, tr = tr_arr
    cdef double[:, ::1] lq = lq_arr, lr = lr_arr
    cdef double[:, ::1] t = np.empty((nx, ny)), qyx = np.empty((nx, ny))
    cdef double[::1] logc = np.empty(nx), s = np.empty(nx)
    with nogil:
        for k in range(max_iter):
            _norm_cols(lq, lr)
            if update_p:
                for i in range(nx):
                    lp[i] = _lse_row(lq, i)
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = _term(lw[i, j], beta * lr[i, j])
            _norm_rows(t, qyx, lw, logc)
            for i in range(nx):
                if lp[i] == NINF:
                    s[i] = NINF
                else:
                    s[i] = e * (lp[i] + logc[i])
            z = _lse_vec(s)
            for i in range(nx):
                for j in range(ny):
                    lq[i, j] = (s[i] - z) + qyx[i, j]
            tr[k] = coef * z
            n = k + 1
            st = _stop(tr, k, tol)
            if st >= 0:
                status = st
                break
    return lp_arr, lq_arr, lr_arr, tr_arr[:n].copy(), status


def ac_lt1(double[:, ::1] lw, double alpha, double[::1] logp, double[:, ::1] logqt0,
           double tol, Py_ssize_t max_iter):
    cdef Py_ssize_t nx = lw.shape[0], ny = lw.shape[1], i, j, k, n = 0
    cdef double z
    cdef int status = 1, st
    lq_arr = np.array(logqt0, dtype=np.float64)
    ly_arr = np.empty(ny)
    tr_arr = np.empty(max_iter)
    cdef double[:, ::1] lq = lq_arr
    cdef double[::1] ly = ly_arr, tr = tr_arr
    cdef double[:, ::1] t = np.empty((nx, ny))
    cdef double[::1] lz = np.empty(nx)
    with nogil:
        for k in range(max_iter):
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = logp[i] + lq[i, j]
            for j in range(ny):
                ly[j] = _lse_col(t, j)
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = _term(lw[i, j], (alpha - 1.0) * lw[i, j] + (1.0 - alpha) * ly[j])
            _norm_rows(t, lq, lw, lz)
            z = 0.0
            for i in range(nx):
                if logp[i] > NINF:
                    z += exp(logp[i]) * lz[i]
            tr[k] = z / (alpha - 1.0)
            n = k + 1
            st = _stop(tr, k, tol)
            if st >= 0:
                status = st
                break
    return lq_arr, ly_arr, tr_arr[:n].copy(), status


def lp_def(double[:, ::1] logP, double alpha, double[::1] logqy0, double tol, Py_ssize_t max_iter):
    cdef Py_ssize_t nx = logP.shape[0], ny = logP.shape[1], i, j, k, n = 0
    cdef double ratio = alpha / (alpha - 1.0), z
    cdef int status = 1, st
    ly_arr = np.array(logqy0, dtype=np.float64)
    lx_arr = np.empty(nx)
    tr_arr = np.empty(max_iter)
    cdef double[::1] ly = ly_arr, lx = lx_arr, tr = tr_arr
    cdef double[:, ::1] t = np.empty((nx, ny))
    with nogil:
        for k in range(max_iter):
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = _term(logP[i, j], (alpha - 1.0) * logP[i, j] + (1.0 - alpha) * ly[j])
                lx[i] = _lse_row(t, i) / alpha
            z = _lse_vec(lx)
            for i in range(nx):
                lx[i] = lx[i] - z
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = _term(logP[i, j], (alpha - 1.0) * logP[i, j] + (1.0 - alpha) * lx[i])
            for j in range(ny):
                ly[j] = _lse_col(t, j) / alpha
            z = _lse_vec(ly)
            for j in range(ny):
                ly[j] = ly[j] - z
            tr[k] = ratio * z
            n = k + 1
            st = _stop(tr, k, tol)
            if st >= 0:
                status = st
                break
    return lx_arr, ly_arr, tr_arr[:n].copy(), status


def lp_vc_lt1(double[:, ::1] lw, double alpha, double[::1] logp, double[:, ::1] logq0,
              double tol, Py_ssize_t max_iter):
    cdef Py_ssize_t nx = lw.shape[0], ny = lw.shape[1], i, j, k, n = 0
    cdef double ratio = alpha / (alpha - 1.0), z
    cdef int status = 1, st
    lq_arr = np.array(logq0, dtype=np.float64)
    ly_arr = np.empty(ny)
    tr_arr = np.empty(max_iter)
    cdef double[:, ::1] lq = lq_arr
    cdef double[::1] ly = ly_arr, tr = tr_arr
    cdef double[:, ::1] t = np.empty((nx, ny)), qyx = np.empty((nx, ny))
    cdef double[::1] lz = np.empty(nx), s = np.empty(nx)
    with nogil:
        for k in range(max_iter):
            for j in range(ny):
                ly[j] = _lse_col(lq, j)
            for i in range(nx):
                for j in range(ny):
                    t[i, j] = _term(lw[i, j], (alpha - 1.0) * lw[i, j] + (1.0 - alpha) * ly[j])
            _norm_rows(t, qyx, lw, lz)
            for i in range(nx):
                if logp[i] == NINF:
                    s[i] = NINF
                else:
                    s[i] = logp[i] + lz[i] / alpha
            z = _lse_vec(s)
            for i in range(nx):
                for j in range(ny):
                    lq[i, j] = (s[i] - z) + qyx[i, j]
            tr[k] = ratio * z
            n = k + 1
            st = _stop(tr, k, tol)
            if st >= 0:
                status = st
                break
    return lq_arr, ly_arr, tr_arr[:n].copy(), status
