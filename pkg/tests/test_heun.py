import math

import numpy as np
import pytest

from dipole_landau import (
    Frame,
    HeunParams,
    HeunSeries,
    NonPositiveFrequency,
    SeriesNotConverged,
    SystemParams,
    UnsupportedLevel,
    evaluate_series,
    heun_scales,
    radial_wavefunction,
    series_coefficients,
    series_for_level,
    truncated_solution,
    truncation_residual,
    truncation_residual_scan,
)


def make_params(tau_abs, theta, mu, chi):
    return HeunParams(
        alpha_h=2.0 * tau_abs,
        beta_h=theta,
        gamma_h=chi + 0.25 * theta * theta,
        delta_h=-2.0 * mu,
    )


def test_heun_params_roundtrip():
    hp = make_params(1.3, 0.7, 2.1, -4.0)
    assert hp.tau_abs == pytest.approx(1.3)
    assert hp.theta == 0.7
    assert hp.mu == pytest.approx(2.1)
    assert hp.chi == pytest.approx(-4.0)
    s = heun_scales(SystemParams(m=1, D=1, a=1, b=1, B0=2.0), 2, Frame.STATIC)
    hp2 = HeunParams.from_scales(s, 5.0)
    assert hp2.alpha_h == 2.0 * s.tau and hp2.beta_h == s.theta
    assert hp2.mu == pytest.approx(s.mu) and hp2.chi == pytest.approx(5.0)


def test_series_trivial_cases():
    # theta = mu = 0 -> b1 = 0
    assert list(series_coefficients(make_params(0.7, 0.0, 0.0, 1.0), 2)) == [1.0, 0.0]
    # forced truncation: |tau| = 1, chi = 4 kills b2
    coeffs = series_coefficients(make_params(1.0, 0.0, 0.0, 4.0), 3)
    assert list(coeffs) == [1.0, 0.0, 0.0]


def test_series_count_validation():
    with pytest.raises(ValueError):
        series_coefficients(make_params(1.0, 0.0, 0.0, 4.0), 1)


def test_series_against_symbolic_ode_matching():
    """Oracle: substitute the power series into the series-form equation with
    sympy and solve the coefficient identities independently."""
    sp = pytest.importorskip("sympy")
    y = sp.symbols("y", positive=True)
    cases = [
        (sp.sqrt(2), sp.Integer(1), sp.Integer(1), sp.Integer(2)),
        (sp.Rational(3, 2), sp.Rational(1, 3), sp.Rational(7, 5), sp.Rational(-9, 4)),
        (sp.Integer(0), sp.Rational(2, 7), sp.Rational(1, 2), sp.Integer(5)),
    ]
    order = 6
    for s, theta, mu, chi in cases:
        b = sp.symbols(f"b0:{order}")
        series = sum(b[i] * y**i for i in range(order))
        lhs = (
            sp.diff(series, y, 2)
            + ((2 * s + 1) / y - theta - 2 * y) * sp.diff(series, y)
            + (chi + theta**2 / 4 - 2 * s - 2 + (2 * mu - theta * (2 * s + 1)) / (2 * y))
            * series
        )
        poly = sp.expand(lhs * y)
        sols = {b[0]: sp.Integer(1)}
        for k in range(order - 2):
            eq = poly.coeff(y, k).subs(sols)
            sols[b[k + 1]] = sp.solve(sp.Eq(eq, 0), b[k + 1])[0]
        expected = [float(sp.N(sols[b[i]], 30)) for i in range(order - 1)]
        got = series_coefficients(
            make_params(float(s), float(theta), float(mu), float(chi)), order - 1
        )
        np.testing.assert_allclose(got, expected, rtol=1e-13, atol=1e-15)


def test_series_frozen_example_values():
    # |tau|=sqrt2, theta=1, mu=1, chi=2; values frozen from the symbolic oracle
    got = series_coefficients(make_params(math.sqrt(2.0), 1.0, 1.0, 2.0), 4)
    expected = [1.0, 0.23879612503625855, 0.3143398282201787, 0.11491745564380798]
    np.testing.assert_allclose(got, expected, rtol=1e-14)


def test_full_ansatz_reduces_radial_equation():
    """Oracle: substituting F = exp(-y^2/2 - theta*y/2) y^s H into the radial
    equation must leave exactly the series-form equation for H (sympy)."""
    sp = pytest.importorskip("sympy")
    y = sp.symbols("y", positive=True)
    s, theta, mu, chi = sp.symbols("s theta mu chi", positive=True)
    H = sp.Function("H")
    F = sp.exp(-(y**2) / 2 - theta * y / 2) * y**s * H(y)
    radial = (
        sp.diff(F, y, 2)
        + sp.diff(F, y) / y
        - (s**2 / y**2) * F
        - y**2 * F
        + (mu / y) * F
        - theta * y * F
        + chi * F
    )
    reduced = sp.expand(sp.simplify(radial / (sp.exp(-(y**2) / 2 - theta * y / 2) * y**s)))
    series_form = (
        sp.diff(H(y), y, 2)
        + ((2 * s + 1) / y - theta - 2 * y) * sp.diff(H(y), y)
        + (chi + theta**2 / 4 - 2 * s - 2 + (2 * mu - theta * (2 * s + 1)) / (2 * y)) * H(y)
    )
    assert sp.simplify(reduced - series_form) == 0


def test_parity_when_theta_mu_vanish():
    # odd coefficients vanish identically
    coeffs = series_coefficients(make_params(1.7, 0.0, 0.0, 9.3), 12)
    assert all(coeffs[i] == 0.0 for i in range(1, 12, 2))
    assert any(coeffs[i] != 0.0 for i in range(0, 12, 2))


def test_recurrence_remainder_degree():
    """Substituting N coefficients into the series-form equation leaves only
    terms of degree >= N - 1 (coefficient-matching identity)."""
    sp = pytest.importorskip("sympy")
    y = sp.symbols("y", positive=True)
    tau_abs, theta, mu, chi = 1.25, 0.6, 1.9, 3.7
    n_coeffs = 8
    coeffs = series_coefficients(make_params(tau_abs, theta, mu, chi), n_coeffs)
    series = sum(sp.Float(c, 20) * y**i for i, c in enumerate(coeffs))
    s, th, m_, ch = [sp.Float(v, 20) for v in (tau_abs, theta, mu, chi)]
    lhs = (
        sp.diff(series, y, 2)
        + ((2 * s + 1) / y - th - 2 * y) * sp.diff(series, y)
        + (ch + th**2 / 4 - 2 * s - 2 + (2 * m_ - th * (2 * s + 1)) / (2 * y)) * series
    )
    poly = sp.expand(lhs * y)
    for k in range(n_coeffs - 2):
        assert abs(float(poly.coeff(y, k))) < 1e-12


def test_truncation_residual_landau_constant():
    # theta = mu = 0, n = 1: residual is -1/(2 + 2|tau|), independent of omega
    p = SystemParams(m=1.0, D=0.0, a=0.0, b=0.0)
    for l in (0, 2, -3):
        tau = abs(l)
        expected = -2.0 / (2.0 * (2.0 + 2.0 * tau))
        for w in (0.3, 1.0, 17.0):
            assert truncation_residual(p, l, Frame.STATIC, 1, w) == pytest.approx(
                expected, rel=1e-15
            )


def test_truncation_residual_rotating_limit():
    p = SystemParams(m=1.4, D=0.8, a=1.2, b=0.5, Omega=0.0)
    for w in (0.5, 2.0, 9.0):
        rs = truncation_residual(p, 1, Frame.STATIC, 2, w)
        rr = truncation_residual(p, 1, Frame.ROTATING, 2, w)
        assert rs == rr


def test_truncation_residual_errors():
    p = SystemParams()
    with pytest.raises(NonPositiveFrequency):
        truncation_residual(p, 0, Frame.STATIC, 1, 0.0)
    with pytest.raises(UnsupportedLevel):
        truncation_residual(p, 0, Frame.STATIC, 0, 1.0)


def test_residual_scan_matches_pointwise():
    p = SystemParams(m=1.1, D=0.9, a=0.8, b=1.3, Omega=0.7)
    omegas = np.geomspace(0.1, 20, 41)
    for frame in (Frame.STATIC, Frame.ROTATING):
        scan = truncation_residual_scan(p, 2, frame, 3, omegas)
        for j in (0, 10, 40):
            assert scan[j] == truncation_residual(p, 2, frame, 3, float(omegas[j]))


def test_evaluate_series_polynomial():
    hp = make_params(1.0, 0.0, 0.0, 4.0)
    hs = HeunSeries(params=hp, coefficients=(1.0, 2.0, 3.0), polynomial=True)
    assert evaluate_series(hs, 2.0) == 17.0
    assert evaluate_series(hs, 2.0, compensated=True) == pytest.approx(17.0, rel=1e-15)
    const = HeunSeries(params=hp, coefficients=(1.0,), polynomial=True)
    assert evaluate_series(const, 3.3) == 1.0


def test_evaluate_series_free_mode_matches_truncating():
    # at a truncating parameter set the open-ended sum reproduces the polynomial
    p = SystemParams(m=1.0, D=1.0, a=1.0, b=1.0)
    from dipole_landau import allowed_frequencies_n1

    w = allowed_frequencies_n1(p, 0, Frame.STATIC)[0]
    hs = series_for_level(p, 0, Frame.STATIC, 1, w)
    free = HeunSeries(params=hs.params, coefficients=(1.0,), polynomial=False)
    for y in (0.3, 0.7, 1.9):
        assert evaluate_series(free, y) == pytest.approx(
            evaluate_series(hs, y), rel=1e-12
        )
    # independent Horner oracle at y = 0.7
    y = 0.7
    acc = 0.0
    for c in reversed(hs.coefficients):
        acc = acc * y + c
    assert evaluate_series(hs, y) == acc


def test_evaluate_series_not_converged():
    import dipole_landau.heun as heun_mod

    hp = make_params(0.5, 0.1, 0.2, 3.0)
    hs = HeunSeries(params=hp, coefficients=(1.0,), polynomial=False)
    orig = heun_mod.SERIES_TERM_CAP
    heun_mod.SERIES_TERM_CAP = 4
    try:
        with pytest.raises(SeriesNotConverged):
            evaluate_series(hs, 6.0)
    finally:
        heun_mod.SERIES_TERM_CAP = orig


def test_evaluate_series_rejects_negative():
    hp = make_params(1.0, 0.0, 0.0, 4.0)
    hs = HeunSeries(params=hp, coefficients=(1.0, 2.0), polynomial=True)
    with pytest.raises(ValueError):
        evaluate_series(hs, -0.5)


def test_series_b0_validation():
    hp = make_params(1.0, 0.0, 0.0, 4.0)
    with pytest.raises(ValueError):
        HeunSeries(params=hp, coefficients=(2.0, 1.0), polynomial=True)
    with pytest.raises(ValueError):
        HeunSeries(params=hp, coefficients=(), polynomial=True)


def test_radial_wavefunction_values():
    p = SystemParams(m=1.0, D=1.0, a=1.0, b=1.0)
    from dipole_landau import allowed_frequencies_n1

    w = allowed_frequencies_n1(p, 0, Frame.STATIC)[0]
    sol = truncated_solution(p, 0, Frame.STATIC, 1, w)
    # power-law prefactor kills the origin for |tau| > 0
    assert radial_wavefunction(sol, 0.0) == 0.0
    # superexponential decay in the tail
    ys = np.linspace(0.0, 10.0, 101)
    f = radial_wavefunction(sol, ys)
    assert abs(f[ys >= 8.0]).max() < 1e-10 * abs(f).max()
    # scalar/array agreement
    assert radial_wavefunction(sol, 1.7) == pytest.approx(float(f[17]), rel=1e-15)


def test_radial_wavefunction_gaussian_only():
    # theta = 0, |tau| = 0, H == 1: F(1) = exp(-1/2)
    hp = make_params(0.0, 0.0, 0.0, 2.0)
    hs = HeunSeries(params=hp, coefficients=(1.0,), polynomial=True)
    from dipole_landau import DerivedScales
    from dipole_landau.heun import RadialSolution

    sol = RadialSolution(
        scales=DerivedScales(omega=2.0, varpi=2.0, tau=0.0, mu=0.0, theta=0.0, chi=2.0),
        series=hs,
        degree=0,
    )
    assert radial_wavefunction(sol, 1.0) == pytest.approx(math.exp(-0.5), rel=1e-15)
    assert radial_wavefunction(sol, 0.0) == 1.0  # bounded at the origin when tau = 0
