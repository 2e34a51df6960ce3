# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled series kernels.

Mirrors ``reference.py`` operation-for-operation; see that module for the
mathematical contract.  The test suite asserts bit-for-bit agreement.
"""

from libc.math cimport fabs, sqrt

import numpy as np

DEF SPLITTER = 134217729.0  # 2**27 + 1


cdef inline double _prod_err(double x, double y, double p) noexcept nogil:
    cdef double cx = SPLITTER * x
    cdef double xh = cx - (cx - x)
    cdef double xl = x - xh
    cdef double cy = SPLITTER * y
    cdef double yh = cy - (cy - y)
    cdef double yl = y - yh
    return ((xh * yh - p) + xh * yl + xl * yh) + xl * yl


cdef inline double _coupling_combo(double m, double D, double a, double b,
                                   double w, double t1) noexcept nogil:
    cdef double p1 = b * t1
    cdef double e1 = _prod_err(b, t1, p1)
    cdef double d4 = 4.0 * D
    cdef double da = d4 * a
    cdef double e_da = _prod_err(d4, a, da)
    cdef double p2 = da * w
    cdef double e2 = _prod_err(da, w, p2)
    cdef double d = (p1 - p2) + (e1 - (e2 + e_da * w))
    cdef double sw = sqrt(w)
    return 2.0 * m * d / (w * sw)


def coupling_combo(double m, double D, double a, double b, double w, double t1):
    return _coupling_combo(m, D, a, b, w, t1)


def heun_coefficients(double tau_abs, double theta, double s, double chi, Py_ssize_t count):
    out = np.empty(count, dtype=np.float64)
    cdef double[::1] v = out
    cdef double t1, c, half_s, denom
    cdef Py_ssize_t i
    v[0] = 1.0
    if count == 1:
        return out
    t1 = 2.0 * tau_abs + 1.0
    v[1] = s / (2.0 * t1)
    c = chi + 0.25 * theta * theta - 2.0 * tau_abs - 2.0
    half_s = 0.5 * s
    for i in range(count - 2):
        denom = (i + 2.0) * (i + 2.0 + 2.0 * tau_abs)
        v[i + 2] = ((theta * (i + 1.0) + half_s) * v[i + 1] + (2.0 * i - c) * v[i]) / denom
    return out


def truncated_coefficients(double tau_abs, double theta, double s, Py_ssize_t n):
    out = np.empty(n + 1, dtype=np.float64)
    cdef double[::1] v = out
    cdef double t1, half_s, denom
    cdef Py_ssize_t i
    v[0] = 1.0
    t1 = 2.0 * tau_abs + 1.0
    if n >= 1:
        v[1] = s / (2.0 * t1)
    half_s = 0.5 * s
    for i in range(n - 1):
        denom = (i + 2.0) * (i + 2.0 + 2.0 * tau_abs)
        v[i + 2] = ((theta * (i + 1.0) + half_s) * v[i + 1] + (2.0 * <double>(i - n)) * v[i]) / denom
    return out


cdef inline double _tail(double tau_abs, double theta, double s, Py_ssize_t n) noexcept nogil:
    cdef double t1 = 2.0 * tau_abs + 1.0
    cdef double b_prev = 1.0
    cdef double b_cur = s / (2.0 * t1)
    cdef double half_s = 0.5 * s
    cdef double denom, b_next
    cdef Py_ssize_t i
    for i in range(n):
        denom = (i + 2.0) * (i + 2.0 + 2.0 * tau_abs)
        b_next = ((theta * (i + 1.0) + half_s) * b_cur + (2.0 * <double>(i - n)) * b_prev) / denom
        b_prev = b_cur
        b_cur = b_next
    return b_cur


def truncation_tail(double tau_abs, double theta, double s, Py_ssize_t n):
    return _tail(tau_abs, theta, s, n)


def residual_scan(eff, double m, double D, double a, double b, double tau_abs, Py_ssize_t n):
    eff_arr = np.ascontiguousarray(eff, dtype=np.float64)
    out = np.empty(eff_arr.shape[0], dtype=np.float64)
    cdef double[::1] e = eff_arr
    cdef double[::1] o = out
    cdef double w, sw, theta, s
    cdef double t1 = 2.0 * tau_abs + 1.0
    cdef Py_ssize_t j
    with nogil:
        for j in range(e.shape[0]):
            w = 0.5 * m * e[j]
            sw = sqrt(w)
            theta = 2.0 * m * b / (w * sw)
            s = _coupling_combo(m, D, a, b, w, t1)
            o[j] = _tail(tau_abs, theta, s, n)
    return out


def eval_poly(coeffs, double y):
    c_arr = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef double[::1] c = c_arr
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(c.shape[0] - 1, -1, -1):
        acc = acc * y + c[i]
    return acc


def eval_poly_compensated(coeffs, double y):
    c_arr = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef double[::1] c = c_arr
    cdef double s = 0.0, comp = 0.0, p = 1.0
    cdef double term, t
    cdef Py_ssize_t i
    for i in range(c.shape[0]):
        term = c[i] * p
        t = s + term
        if fabs(s) >= fabs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        p *= y
    return s + comp


def eval_series_free(double tau_abs, double theta, double s, double chi,
                     double y, double tail_tol, Py_ssize_t max_terms):
    cdef double t1 = 2.0 * tau_abs + 1.0
    cdef double c = chi + 0.25 * theta * theta - 2.0 * tau_abs - 2.0
    cdef double half_s = 0.5 * s
    cdef double b_prev = 1.0
    cdef double b_cur = s / (2.0 * t1)
    cdef double acc = b_prev + b_cur * y
    cdef double p = y
    cdef double denom, b_next, term
    cdef Py_ssize_t i, small = 0
    for i in range(max_terms):
        denom = (i + 2.0) * (i + 2.0 + 2.0 * tau_abs)
        b_next = ((theta * (i + 1.0) + half_s) * b_cur + (2.0 * i - c) * b_prev) / denom
        p *= y
        term = b_next * p
        acc += term
        if fabs(term) <= tail_tol * (fabs(acc) + 1e-300):
            small += 1
            if small >= 3:
                return acc, i + 3, True
        else:
            small = 0
        b_prev = b_cur
        b_cur = b_next
    return acc, max_terms + 2, False
