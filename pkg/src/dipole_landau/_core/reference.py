"""Pure-Python reference kernels for the power-series recurrence.

These definitions are the behavioural contract for the compiled extension in
``_compiled.pyx``; both backends follow the same floating-point operation
order so the test suite can hold them to bit-for-bit agreement.

The series solves the radial equation in canonical form

    H'' + [(2*t + 1)/y - theta - 2*y] H'
        + [chi + theta^2/4 - 2*t - 2 + (2*mu - theta*(2*t + 1))/(2*y)] H = 0

with t = |tau|, via H(y) = sum_i b_i y^i and b_0 = 1.  Writing
s = theta*(2*t + 1) - 2*mu (the only way mu enters):

    b_1 = s / (2*(2*t + 1))
    (i+2)(i+2+2*t) b_{i+2} = [theta*(i+1) + s/2] b_{i+1}
                             + [2*i - (chi + theta^2/4 - 2*t - 2)] b_i

At a constrained frequency s is a near-cancelling difference, so the
physics-facing kernels take it precomputed; ``coupling_combo`` builds it
from the primitive couplings with a Dekker two-product compensation, and
the truncation kernels use the exact identity
chi + theta^2/4 - 2*t - 2 = 2*n so the b_i coefficient is the exact
integer 2*(i - n).
"""

from __future__ import annotations

import math

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_prod(x: float, y: float):
    # Dekker: p + e == x*y exactly (barring overflow)
    p = x * y
    cx = _SPLITTER * x
    xh = cx - (cx - x)
    xl = x - xh
    cy = _SPLITTER * y
    yh = cy - (cy - y)
    yl = y - yh
    e = ((xh * yh - p) + xh * yl + xl * yh) + xl * yl
    return p, e


def coupling_combo(m: float, D: float, a: float, b: float, w: float, t1: float) -> float:
    """s = theta*t1 - 2*mu evaluated without catastrophic cancellation.

    theta = 2*m*b/w^1.5 and mu = 4*m*D*a/w^0.5 give
    s = 2*m*(b*t1 - 4*D*a*w)/w^1.5; the inner difference is computed with
    compensated products of the exact inputs.
    """
    p1, e1 = _two_prod(b, t1)
    da, e_da = _two_prod(4.0 * D, a)  # 4*D is exact
    p2, e2 = _two_prod(da, w)
    d = (p1 - p2) + (e1 - (e2 + e_da * w))
    sw = math.sqrt(w)
    return 2.0 * m * d / (w * sw)


def heun_coefficients(tau_abs: float, theta: float, s: float, chi: float, count: int) -> np.ndarray:
    """First ``count`` series coefficients, b0 = 1 normalization."""
    out = np.empty(count, dtype=np.float64)
    out[0] = 1.0
    if count == 1:
        return out
    t1 = 2.0 * tau_abs + 1.0
    out[1] = s / (2.0 * t1)
    c = chi + 0.25 * theta * theta - 2.0 * tau_abs - 2.0
    half_s = 0.5 * s
    for i in range(count - 2):
        denom = (i + 2.0) * (i + 2.0 + 2.0 * tau_abs)
        out[i + 2] = ((theta * (i + 1.0) + half_s) * out[i + 1] + (2.0 * i - c) * out[i]) / denom
    return out


def truncated_coefficients(tau_abs: float, theta: float, s: float, n: int) -> np.ndarray:
    """b0..bn of the degree-n polynomial (truncation condition folded in)."""
    out = np.empty(n + 1, dtype=np.float64)
    out[0] = 1.0
    t1 = 2.0 * tau_abs + 1.0
    if n >= 1:
        out[1] = s / (2.0 * t1)
    half_s = 0.5 * s
    for i in range(n - 1):
        denom = (i + 2.0) * (i + 2.0 + 2.0 * tau_abs)
        out[i + 2] = ((theta * (i + 1.0) + half_s) * out[i + 1] + (2.0 * (i - n)) * out[i]) / denom
    return out


def truncation_tail(tau_abs: float, theta: float, s: float, n: int) -> float:
    """b_{n+1} with the first truncation condition folded in."""
    t1 = 2.0 * tau_abs + 1.0
    b_prev = 1.0
    b_cur = s / (2.0 * t1)
    half_s = 0.5 * s
    for i in range(n):
        denom = (i + 2.0) * (i + 2.0 + 2.0 * tau_abs)
        b_next = ((theta * (i + 1.0) + half_s) * b_cur + (2.0 * (i - n)) * b_prev) / denom
        b_prev = b_cur
        b_cur = b_next
    return b_cur


def residual_scan(
    eff: np.ndarray, m: float, D: float, a: float, b: float, tau_abs: float, n: int
) -> np.ndarray:
    """Truncation residual b_{n+1} over an array of effective frequencies.

    Vectorized with the same elementwise operation order as the scalar path,
    including the compensated coupling combination.
    """
    eff = np.ascontiguousarray(eff, dtype=np.float64)
    w = 0.5 * m * eff
    sw = np.sqrt(w)
    theta = 2.0 * m * b / (w * sw)
    t1 = 2.0 * tau_abs + 1.0
    p1, e1 = _two_prod(b, t1)
    da, e_da = _two_prod(4.0 * D, a)
    p2 = da * w
    cd = _SPLITTER * da
    dah = cd - (cd - da)
    dal = da - dah
    cw = _SPLITTER * w
    wh = cw - (cw - w)
    wl = w - wh
    e2 = ((dah * wh - p2) + dah * wl + dal * wh) + dal * wl
    d = (p1 - p2) + (e1 - (e2 + e_da * w))
    s = 2.0 * m * d / (w * sw)
    b_prev = np.ones_like(w)
    b_cur = s / (2.0 * t1)
    half_s = 0.5 * s
    for i in range(n):
        denom = (i + 2.0) * (i + 2.0 + 2.0 * tau_abs)
        b_next = ((theta * (i + 1.0) + half_s) * b_cur + (2.0 * (i - n)) * b_prev) / denom
        b_prev = b_cur
        b_cur = b_next
    return b_cur


def eval_poly(coeffs, y: float) -> float:
    """Horner evaluation of a finite coefficient sequence (lowest order first)."""
    acc = 0.0
    for i in range(len(coeffs) - 1, -1, -1):
        acc = acc * y + coeffs[i]
    return acc


def eval_poly_compensated(coeffs, y: float) -> float:
    """Term-by-term evaluation with Neumaier-compensated summation."""
    s = 0.0
    comp = 0.0
    p = 1.0
    for i in range(len(coeffs)):
        term = coeffs[i] * p
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        p *= y
    return s + comp


def eval_series_free(
    tau_abs: float,
    theta: float,
    s: float,
    chi: float,
    y: float,
    tail_tol: float,
    max_terms: int,
):
    """Open-ended series evaluation at ``y``.

    Generates coefficients on the fly and stops once three consecutive terms
    fall below ``tail_tol`` relative to the partial sum.  Returns
    ``(value, terms_used, converged)``.
    """
    t1 = 2.0 * tau_abs + 1.0
    c = chi + 0.25 * theta * theta - 2.0 * tau_abs - 2.0
    half_s = 0.5 * s
    b_prev = 1.0
    b_cur = s / (2.0 * t1)
    acc = b_prev + b_cur * y
    p = y
    small = 0
    for i in range(max_terms):
        denom = (i + 2.0) * (i + 2.0 + 2.0 * tau_abs)
        b_next = ((theta * (i + 1.0) + half_s) * b_cur + (2.0 * i - c) * b_prev) / denom
        p *= y
        term = b_next * p
        acc += term
        if math.fabs(term) <= tail_tol * (math.fabs(acc) + 1e-300):
            small += 1
            if small >= 3:
                return acc, i + 3, True
        else:
            small = 0
        b_prev = b_cur
        b_cur = b_next
    return acc, max_terms + 2, False
