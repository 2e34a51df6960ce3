"""Power-series solution of the radial equation and the truncation test.

The regular solution about the origin is F(y) = exp(-y^2/2 - theta*y/2) *
y^|tau| * H(y), where H satisfies an equation of biconfluent-Heun type and
is given by a power series whose coefficients obey a three-term recurrence
(see ``_core.reference`` for the exact relations).  H collapses to a
polynomial of degree n when two conditions hold simultaneously:

* chi + theta^2/4 - 2|tau| - 2 = 2n, which fixes the energy, and
* b_{n+1} = 0, which constrains the cyclotron frequency.

``truncation_residual`` imposes the first condition at a trial frequency and
returns b_{n+1}; its zeros are the allowed cyclotron frequencies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _core
from .errors import NonPositiveFrequency, SeriesNotConverged, UnsupportedLevel
from .params import DerivedScales, Frame, SystemParams, effective_angular, scales_at

__all__ = [
    "SERIES_TAIL_TOL",
    "SERIES_TERM_CAP",
    "HeunParams",
    "HeunSeries",
    "RadialSolution",
    "series_coefficients",
    "series_for_level",
    "truncated_solution",
    "truncation_residual",
    "truncation_residual_scan",
    "evaluate_series",
    "radial_wavefunction",
]

SERIES_TAIL_TOL = 1e-14
SERIES_TERM_CAP = 10_000


@dataclass(frozen=True)
class HeunParams:
    """Canonical parameter quadruple (2|tau|, theta, chi + theta^2/4, -2*mu)."""

    alpha_h: float
    beta_h: float
    gamma_h: float
    delta_h: float

    def __post_init__(self) -> None:
        if self.alpha_h < 0:
            raise ValueError(f"alpha_h = 2|tau| must be nonnegative, got {self.alpha_h}")

    @property
    def tau_abs(self) -> float:
        return 0.5 * self.alpha_h

    @property
    def theta(self) -> float:
        return self.beta_h

    @property
    def mu(self) -> float:
        return -0.5 * self.delta_h

    @property
    def chi(self) -> float:
        return self.gamma_h - 0.25 * self.beta_h * self.beta_h

    @classmethod
    def from_scales(cls, scales: DerivedScales, chi: float) -> "HeunParams":
        return cls(
            alpha_h=2.0 * scales.tau,
            beta_h=scales.theta,
            gamma_h=chi + 0.25 * scales.theta * scales.theta,
            delta_h=-2.0 * scales.mu,
        )


@dataclass(frozen=True)
class HeunSeries:
    """Series coefficients b0..bN (b0 = 1).

    ``polynomial=True`` marks the stored coefficients as the entire function;
    otherwise they are a prefix of an open-ended series and evaluation
    extends it on the fly.
    """

    params: HeunParams
    coefficients: tuple[float, ...]
    polynomial: bool = False

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("at least one coefficient is required")
        if self.coefficients[0] != 1.0:
            raise ValueError(f"b0 must be 1, got {self.coefficients[0]}")


@dataclass(frozen=True)
class RadialSolution:
    """Full radial ansatz: scales, series factor and the polynomial degree.

    ``degree`` is None for a non-truncating (open-ended) series.
    """

    scales: DerivedScales
    series: HeunSeries
    degree: int | None


def series_coefficients(hp: HeunParams, count: int) -> np.ndarray:
    """First ``count`` coefficients (count >= 2)."""
    if count < 2:
        raise ValueError(f"count must be at least 2, got {count}")
    s = hp.theta * (2.0 * hp.tau_abs + 1.0) - 2.0 * hp.mu
    return _core.heun_coefficients(hp.tau_abs, hp.theta, s, hp.chi, count)


def _chi_for_level(scales: DerivedScales, n: int) -> float:
    # first truncation condition solved for chi
    return 2.0 * n + 2.0 * scales.tau + 2.0 - 0.25 * scales.theta * scales.theta


def _coupling_combo_at(p: SystemParams, scales: DerivedScales) -> float:
    # s = theta*(2|tau|+1) - 2*mu, compensated: it nearly cancels at a
    # constrained frequency and plain evaluation costs ~7 digits there
    w = 0.5 * p.m * scales.varpi
    return float(_core.coupling_combo(p.m, p.D, p.a, p.b, w, 2.0 * scales.tau + 1.0))


def series_for_level(
    p: SystemParams, l: int, frame: Frame, n: int, omega: float
) -> HeunSeries:
    """Degree-n polynomial series at a trial frequency (first condition imposed)."""
    if n < 1:
        raise UnsupportedLevel(f"polynomial degree must be n >= 1, got n = {n}")
    scales = scales_at(p, l, frame, omega)
    chi = _chi_for_level(scales, n)
    hp = HeunParams.from_scales(scales, chi)
    s = _coupling_combo_at(p, scales)
    coeffs = _core.truncated_coefficients(scales.tau, scales.theta, s, n)
    return HeunSeries(params=hp, coefficients=tuple(float(c) for c in coeffs), polynomial=True)


def truncated_solution(
    p: SystemParams, l: int, frame: Frame, n: int, omega: float
) -> RadialSolution:
    """Closed-form radial solution at a constrained frequency."""
    series = series_for_level(p, l, frame, n, omega)
    scales = scales_at(p, l, frame, omega)
    chi = _chi_for_level(scales, n)
    return RadialSolution(
        scales=DerivedScales(
            omega=scales.omega,
            varpi=scales.varpi,
            tau=scales.tau,
            mu=scales.mu,
            theta=scales.theta,
            chi=chi,
        ),
        series=series,
        degree=n,
    )


def truncation_residual(p: SystemParams, l: int, frame: Frame, n: int, omega: float) -> float:
    """b_{n+1} at a trial frequency; zero means the frequency is allowed for level n."""
    if n < 1:
        raise UnsupportedLevel(f"polynomial degree must be n >= 1, got n = {n}")
    scales = scales_at(p, l, frame, omega)  # raises NonPositiveFrequency for omega <= 0
    s = _coupling_combo_at(p, scales)
    return float(_core.truncation_tail(scales.tau, scales.theta, s, n))


def truncation_residual_scan(
    p: SystemParams, l: int, frame: Frame, n: int, omegas: np.ndarray
) -> np.ndarray:
    """Vectorized ``truncation_residual`` over an array of trial frequencies."""
    if n < 1:
        raise UnsupportedLevel(f"polynomial degree must be n >= 1, got n = {n}")
    omegas = np.ascontiguousarray(omegas, dtype=np.float64)
    if omegas.size and omegas.min() <= 0:
        raise NonPositiveFrequency("all trial frequencies must be positive")
    if frame is Frame.ROTATING and p.Omega != 0.0:
        eff = np.sqrt(omegas * omegas + 4.0 * p.Omega * omegas)
    else:
        eff = omegas
    tau = effective_angular(p, l)
    return _core.residual_scan(eff, p.m, p.D, p.a, p.b, tau, n)


def evaluate_series(hs: HeunSeries, y: float, *, compensated: bool = False) -> float:
    """H(y) for y >= 0.

    Polynomial mode evaluates the stored coefficients exactly (Horner, or
    Neumaier-compensated term summation when ``compensated`` is set).  Free
    mode extends the series until the relative tail drops below
    ``SERIES_TAIL_TOL`` and raises SeriesNotConverged at ``SERIES_TERM_CAP``.
    """
    if y < 0:
        raise ValueError(f"series argument must be nonnegative, got {y}")
    if hs.polynomial:
        if compensated:
            return float(_core.eval_poly_compensated(hs.coefficients, y))
        return float(_core.eval_poly(hs.coefficients, y))
    hp = hs.params
    s = hp.theta * (2.0 * hp.tau_abs + 1.0) - 2.0 * hp.mu
    value, _, converged = _core.eval_series_free(
        hp.tau_abs, hp.theta, s, hp.chi, y, SERIES_TAIL_TOL, SERIES_TERM_CAP
    )
    if not converged:
        raise SeriesNotConverged(
            f"series at y = {y:g} did not meet tail tolerance {SERIES_TAIL_TOL:g} "
            f"within {SERIES_TERM_CAP} terms"
        )
    return float(value)


def radial_wavefunction(rs: RadialSolution, y):
    """F(y) = exp(-y^2/2 - theta*y/2) * y^|tau| * H(y); scalar or array ``y``."""
    arr = np.asarray(y, dtype=np.float64)
    if arr.ndim == 0:
        return float(_radial_values(rs, arr.reshape(1))[0])
    return _radial_values(rs, arr)


def _radial_values(rs: RadialSolution, ys: np.ndarray) -> np.ndarray:
    if ys.size and ys.min() < 0:
        raise ValueError("radial coordinate must be nonnegative")
    theta = rs.scales.theta
    tau = rs.scales.tau
    if rs.series.polynomial:
        h = np.polynomial.polynomial.polyval(ys, np.asarray(rs.series.coefficients))
    else:
        h = np.array([evaluate_series(rs.series, float(v)) for v in ys])
    pref = np.exp(-0.5 * ys * ys - 0.5 * theta * ys)
    return pref * np.power(ys, tau) * h
