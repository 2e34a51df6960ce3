"""Energy levels and the frequency constraints that close the series.

For the lowest level (n = 1) the b_2 = 0 condition is a cubic in the
effective frequency u (u = omega in the static frame, u = varpi in the
rotating frame):

    u^3 - [16 m D^2 a^2 / (2|tau|+1)] u^2
        + [32 D a b (|tau|+1) / (2|tau|+1)] u - 4 b^2 (2|tau|+3) / m = 0

solved in closed form (trigonometric/Cardano) with a Newton polish.  For
n >= 2 no closed form is attempted: the truncation residual b_{n+1}(omega)
is scanned over a bracket and its sign changes are refined by bisection.
Rotating-frame roots u = varpi map back through the positive branch
omega = -2*Omega + sqrt(4*Omega^2 + u^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateConstraint,
    EmptyBracket,
    NoPositiveRoot,
    UnsupportedLevel,
)
from .heun import truncation_residual, truncation_residual_scan
from .params import (
    Frame,
    SystemParams,
    effective_angular,
    effective_frequency_at,
)

__all__ = [
    "ROOT_REL_TOL",
    "DEFAULT_SCAN_POINTS",
    "SpectrumEntry",
    "FrequencyConstraint",
    "cubic_constraint_coefficients",
    "energy_level",
    "allowed_frequencies_n1",
    "allowed_frequencies",
    "default_bracket",
    "spectrum",
]

ROOT_REL_TOL = 1e-12
NEWTON_POLISH_TOL = 1e-14
DEFAULT_SCAN_POINTS = 8192


def energy_level(p: SystemParams, n: int, l: int, omega: float, frame: Frame) -> float:
    """Bound-state energy for level (n, l) at cyclotron frequency ``omega``.

    Static frame: (omega/2)[n + tau - l + 1] - 2 b^2/(m omega^2) + k^2/(2m).
    Rotating frame: same with varpi in the oscillator and centrifugal-shift
    terms plus the rotational coupling -Omega*l.  Both frames evaluate one
    shared expression so the Omega -> 0 limit is exact.
    """
    if n < 1:
        raise UnsupportedLevel(f"energy levels start at n = 1, got n = {n}")
    eff = effective_frequency_at(p, frame, omega)
    rot = p.Omega if frame is Frame.ROTATING else 0.0
    tau = effective_angular(p, l)
    return (
        0.5 * eff * (n + tau + 1.0)
        - 0.5 * omega * float(l)
        - 2.0 * p.b * p.b / (p.m * eff * eff)
        + 0.5 * p.k * p.k / p.m
        - rot * float(l)
    )


def cubic_constraint_coefficients(p: SystemParams, l: int) -> tuple[float, float, float]:
    """Monic-cubic coefficients (c2, c1, c0) for the n = 1 constraint in u."""
    tau = effective_angular(p, l)
    t1 = 2.0 * tau + 1.0
    da = p.D * p.a
    c2 = -16.0 * p.m * da * da / t1
    c1 = 32.0 * da * p.b * (tau + 1.0) / t1
    c0 = -4.0 * p.b * p.b * (2.0 * tau + 3.0) / p.m
    return c2, c1, c0


def _real_cubic_roots(c2: float, c1: float, c0: float) -> list[float]:
    """Real roots of x^3 + c2 x^2 + c1 x + c0, Newton-polished, ascending."""
    q = (3.0 * c1 - c2 * c2) / 9.0
    r = (9.0 * c2 * c1 - 27.0 * c0 - 2.0 * c2 * c2 * c2) / 54.0
    disc = q * q * q + r * r
    shift = c2 / 3.0
    roots: list[float]
    if disc > 0.0:
        # one real root (Cardano)
        s = math.copysign(abs(r + math.sqrt(disc)) ** (1.0 / 3.0), r + math.sqrt(disc))
        t = math.copysign(abs(r - math.sqrt(disc)) ** (1.0 / 3.0), r - math.sqrt(disc))
        roots = [s + t - shift]
    elif q == 0.0:
        # triple root (r must be ~0 as well)
        roots = [math.copysign(abs(2.0 * r) ** (1.0 / 3.0), 2.0 * r) - shift if r != 0.0 else -shift]
    else:
        # three real roots (trigonometric form)
        angle = math.acos(max(-1.0, min(1.0, r / math.sqrt(-(q * q * q)))))
        mag = 2.0 * math.sqrt(-q)
        roots = [
            mag * math.cos((angle + 2.0 * math.pi * j) / 3.0) - shift for j in range(3)
        ]
    polished = []
    for x in roots:
        scale = max(1.0, abs(x))
        for _ in range(40):
            f = ((x + c2) * x + c1) * x + c0
            df = (3.0 * x + 2.0 * c2) * x + c1
            if df == 0.0:
                break
            step = f / df
            x -= step
            if abs(step) <= NEWTON_POLISH_TOL * scale:
                break
        polished.append(x)
    return sorted(polished)


def _merge_close(values: list[float], rel: float = 1e-9) -> list[float]:
    out: list[float] = []
    for v in values:
        if out and abs(v - out[-1]) <= rel * max(abs(v), abs(out[-1])):
            continue
        out.append(v)
    return out


def _check_not_degenerate(p: SystemParams) -> None:
    if p.b == 0.0 and p.D * p.a == 0.0:
        raise DegenerateConstraint(
            "b = 0 and D*a = 0: the truncation condition does not constrain the "
            "cyclotron frequency (pure Landau-type configuration)"
        )


def _omega_from_effective(u: float, Omega: float) -> float:
    # unique positive solution of omega^2 + 4*Omega*omega = u^2, written in
    # the conjugate form: the textbook -2*Omega + sqrt(...) cancels badly
    # when u << Omega
    if Omega == 0.0:
        return u
    return u * u / (2.0 * Omega + math.sqrt(4.0 * Omega * Omega + u * u))


def allowed_frequencies_n1(p: SystemParams, l: int, frame: Frame) -> list[float]:
    """All positive cyclotron frequencies allowed for n = 1, ascending."""
    _check_not_degenerate(p)
    if p.b == 0.0:
        # cubic factors as u^2 (u + c2); avoid polishing the double root at zero
        roots_u = [-cubic_constraint_coefficients(p, l)[0]]
    else:
        c2, c1, c0 = cubic_constraint_coefficients(p, l)
        roots_u = [u for u in _real_cubic_roots(c2, c1, c0) if u > 0.0]
        roots_u = _merge_close(roots_u)
    if not roots_u:
        raise NoPositiveRoot(f"the n = 1 frequency cubic has no positive real root for l = {l}")
    rot = p.Omega if frame is Frame.ROTATING else 0.0
    omegas = [_omega_from_effective(u, rot) for u in roots_u]
    omegas = [w for w in omegas if w > 0.0]
    if not omegas:
        raise NoPositiveRoot(f"no positive cyclotron frequency for l = {l} after frame mapping")
    return omegas


def default_bracket(p: SystemParams, l: int) -> tuple[float, float]:
    """Scan bracket spanning [1e-3, 1e3] times both characteristic scales.

    The linear coupling and the Kratzer coupling each set a frequency scale;
    roots can sit near either, so the bracket runs from well below the
    smaller to well above the larger.
    """
    tau = effective_angular(p, l)
    da = p.D * p.a
    scales = [
        s
        for s in (
            (p.b * p.b / p.m) ** (1.0 / 3.0),
            16.0 * p.m * da * da / (2.0 * tau + 1.0),
        )
        if s > 0.0
    ]
    if not scales:
        raise DegenerateConstraint(
            "no frequency scale: b = 0 and D*a = 0 leave the constraint degenerate"
        )
    if p.b > 0.0 and da > 0.0:
        # mixed coupling scales (coefficient ratios of the level-1 constraint)
        t1 = 2.0 * tau + 1.0
        scales.append(p.b * (2.0 * tau + 3.0) * t1 / (8.0 * p.m * da * (tau + 1.0)))
        scales.append(2.0 * p.b * (tau + 1.0) / (p.m * da))
    return 1e-3 * min(scales), 1e3 * max(scales)


def _bisect(f, lo: float, hi: float, f_lo: float, f_hi: float) -> float:
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (hi - lo) <= ROOT_REL_TOL * hi:
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)


def allowed_frequencies(
    p: SystemParams,
    n: int,
    l: int,
    frame: Frame,
    bracket: tuple[float, float] | None = None,
    scan_points: int = DEFAULT_SCAN_POINTS,
) -> list[float]:
    """Sign-change roots of the truncation residual in the bracket, ascending."""
    if n < 1:
        raise UnsupportedLevel(f"frequency constraints start at n = 1, got n = {n}")
    _check_not_degenerate(p)
    if bracket is None:
        bracket = default_bracket(p, l)
    lo, hi = bracket
    if not (0.0 < lo < hi):
        raise ValueError(f"bracket must satisfy 0 < lo < hi, got {bracket}")
    omegas = np.geomspace(lo, hi, scan_points)
    res = truncation_residual_scan(p, l, frame, n, omegas)

    def f(w: float) -> float:
        return truncation_residual(p, l, frame, n, w)

    roots: list[float] = []
    for i in range(scan_points - 1):
        r0, r1 = res[i], res[i + 1]
        if r0 == 0.0:
            roots.append(float(omegas[i]))
        elif (r0 < 0.0) != (r1 < 0.0):
            roots.append(_bisect(f, float(omegas[i]), float(omegas[i + 1]), float(r0), float(r1)))
    if res[-1] == 0.0:
        roots.append(float(omegas[-1]))
    roots = _merge_close(sorted(roots))
    if not roots:
        raise EmptyBracket(
            f"no sign change of the level-{n} residual in [{lo:g}, {hi:g}] "
            f"at {scan_points} scan points"
        )
    return roots


@dataclass(frozen=True)
class FrequencyConstraint:
    """Constraint attached to one (n, l, frame) cell.

    ``cubic`` holds the monic coefficients (c2, c1, c0) in the effective
    frequency for n = 1 and is None otherwise; ``residual`` is always
    available as the general route.
    """

    n: int
    l: int
    frame: Frame
    params: SystemParams
    cubic: tuple[float, float, float] | None

    @classmethod
    def for_level(cls, p: SystemParams, l: int, frame: Frame, n: int) -> "FrequencyConstraint":
        if n < 1:
            raise UnsupportedLevel(f"frequency constraints start at n = 1, got n = {n}")
        cubic = cubic_constraint_coefficients(p, l) if n == 1 else None
        return cls(n=n, l=l, frame=frame, params=p, cubic=cubic)

    def residual(self, omega: float) -> float:
        return truncation_residual(self.params, self.l, self.frame, self.n, omega)

    def solve(self, bracket: tuple[float, float] | None = None) -> list[float]:
        if self.n == 1:
            return allowed_frequencies_n1(self.params, self.l, self.frame)
        return allowed_frequencies(self.params, self.n, self.l, self.frame, bracket)


@dataclass(frozen=True)
class SpectrumEntry:
    """One spectrum cell: status 'ok' rows carry a constrained (omega, energy)."""

    n: int
    l: int
    frame: Frame
    tau: float
    omega: float | None = None
    varpi: float | None = None
    energy: float | None = None
    residual: float | None = None
    method: str = ""
    status: str = "ok"


def _as_range(spec) -> list[int]:
    if isinstance(spec, tuple) and len(spec) == 2:
        lo, hi = spec
        if lo > hi:
            raise ValueError(f"empty range {spec}")
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in spec]


def spectrum(
    p: SystemParams,
    n_range,
    l_range,
    frame: Frame,
    bracket: tuple[float, float] | None = None,
) -> list[SpectrumEntry]:
    """Spectrum sweep over inclusive (lo, hi) ranges or explicit index lists.

    Cells whose constraint degenerates or yields no root are reported with a
    status flag instead of being dropped; one bad cell never aborts the sweep.
    """
    entries: list[SpectrumEntry] = []
    for n in _as_range(n_range):
        for l in _as_range(l_range):
            tau = effective_angular(p, l)
            try:
                if n == 1:
                    omegas = allowed_frequencies_n1(p, l, frame)
                    method = "cubic"
                else:
                    omegas = allowed_frequencies(p, n, l, frame, bracket)
                    method = "bisection"
            except DegenerateConstraint:
                entries.append(SpectrumEntry(n=n, l=l, frame=frame, tau=tau, status="degenerate"))
                continue
            except (NoPositiveRoot, EmptyBracket):
                entries.append(SpectrumEntry(n=n, l=l, frame=frame, tau=tau, status="no_root"))
                continue
            for w in omegas:
                entries.append(
                    SpectrumEntry(
                        n=n,
                        l=l,
                        frame=frame,
                        tau=tau,
                        omega=w,
                        varpi=effective_frequency_at(p, frame, w),
                        energy=energy_level(p, n, l, w, frame),
                        residual=truncation_residual(p, l, frame, n, w),
                        method=method,
                    )
                )
    return entries
