"""Physical inputs and derived scales of the radial problem.

All quantities are in natural units (hbar = c = 1).  A neutral particle of
mass ``m`` and polarizability ``alpha`` moves through crossed fields
(axial magnetic field ``B0``, radial electric field of a uniform charge
density ``lam``), which act on its induced dipole moment like a uniform
effective magnetic field with cyclotron frequency ``omega = alpha*lam*B0/m``.
On top of that the particle feels a Kratzer well (depth ``D``, length ``a``)
and a linear confining term ``b*r``.  In a frame rotating at angular
velocity ``Omega`` the oscillator stiffness is controlled by the effective
frequency ``varpi = sqrt(omega**2 + 4*Omega*omega)`` instead of ``omega``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .errors import NonPositiveFrequency

__all__ = [
    "Frame",
    "SystemParams",
    "DerivedScales",
    "cyclotron_frequency",
    "effective_frequency",
    "effective_frequency_at",
    "effective_angular",
    "heun_scales",
    "scales_at",
    "chi",
    "chi_at",
]


class Frame(enum.Enum):
    """Reference frame of the observer."""

    STATIC = "static"
    ROTATING = "rotating"

    @classmethod
    def from_string(cls, s: str) -> "Frame":
        try:
            return cls(s.strip().lower())
        except ValueError:
            raise ValueError(f"unknown frame {s!r}; expected 'static' or 'rotating'") from None


@dataclass(frozen=True)
class SystemParams:
    """Primitive physical constants of the system.

    ``lam`` is the charge-density parameter (lambda), ``D`` and ``a`` the
    Kratzer depth and length, ``b`` the linear-confinement coefficient,
    ``k`` the axial wavenumber and ``Omega`` the frame angular velocity.
    """

    m: float = 1.0
    alpha: float = 1.0
    lam: float = 1.0
    B0: float = 1.0
    b: float = 0.0
    D: float = 0.0
    a: float = 0.0
    k: float = 0.0
    Omega: float = 0.0

    def __post_init__(self) -> None:
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        for name in ("b", "D", "a", "Omega"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)}")

    def with_omega(self, omega: float) -> "SystemParams":
        """Retune B0 so the cyclotron frequency equals ``omega`` (alpha, lam fixed)."""
        if omega <= 0:
            raise NonPositiveFrequency(f"target cyclotron frequency must be positive, got {omega}")
        al = self.alpha * self.lam
        if al == 0:
            raise ValueError("cannot retune B0 when alpha*lam == 0")
        return replace(self, B0=self.m * omega / al)


@dataclass(frozen=True)
class DerivedScales:
    """Frame-dependent quantities entering the dimensionless radial equation.

    ``mu`` and ``theta`` are evaluated with ``varpi`` in the rotating frame
    and with ``omega`` in the static frame (where ``varpi == omega`` exactly).
    ``chi`` depends on the energy and is left unset until one is chosen.
    """

    omega: float
    varpi: float
    tau: float
    mu: float
    theta: float
    chi: float | None = None


def cyclotron_frequency(p: SystemParams) -> float:
    """omega = alpha*lam*B0/m; raises NonPositiveFrequency if not positive."""
    w = p.alpha * p.lam * p.B0 / p.m
    if w <= 0:
        raise NonPositiveFrequency(
            f"alpha*lam*B0 = {p.alpha * p.lam * p.B0:g} does not give a positive "
            "cyclotron frequency; the configuration has no Landau-type bound states"
        )
    return w


def effective_frequency_at(p: SystemParams, frame: Frame, omega: float) -> float:
    """Effective oscillator frequency for a trial cyclotron frequency.

    Static frame: omega itself.  Rotating: sqrt(omega^2 + 4*Omega*omega).
    Omega == 0 short-circuits to omega exactly so both frames coincide
    bit-for-bit in the no-rotation limit.
    """
    if omega <= 0:
        raise NonPositiveFrequency(f"cyclotron frequency must be positive, got {omega}")
    if frame is Frame.ROTATING and p.Omega != 0.0:
        return math.sqrt(omega * omega + 4.0 * p.Omega * omega)
    return omega


def effective_frequency(p: SystemParams, frame: Frame) -> float:
    return effective_frequency_at(p, frame, cyclotron_frequency(p))


def effective_angular(p: SystemParams, l: int) -> float:
    """tau = sqrt(l^2 + 2*m*D*a^2); the Kratzer well stiffens the centrifugal term."""
    return math.sqrt(float(l) * float(l) + 2.0 * p.m * p.D * p.a * p.a)


def scales_at(p: SystemParams, l: int, frame: Frame, omega: float) -> DerivedScales:
    """Derived scales at a trial cyclotron frequency (chi left unset)."""
    eff = effective_frequency_at(p, frame, omega)
    w = 0.5 * p.m * eff
    sw = math.sqrt(w)
    theta = 2.0 * p.m * p.b / (w * sw)
    mu = 4.0 * p.m * p.D * p.a / sw
    return DerivedScales(
        omega=omega,
        varpi=eff,
        tau=effective_angular(p, l),
        mu=mu,
        theta=theta,
    )


def heun_scales(p: SystemParams, l: int, frame: Frame) -> DerivedScales:
    return scales_at(p, l, frame, cyclotron_frequency(p))


def chi_at(p: SystemParams, l: int, frame: Frame, energy: float, omega: float) -> float:
    """Spectral parameter for a trial energy at a trial cyclotron frequency.

    Affine and strictly increasing in the energy with slope 4/varpi.
    """
    eff = effective_frequency_at(p, frame, omega)
    rot = p.Omega if frame is Frame.ROTATING else 0.0
    bracket = 2.0 * p.m * energy - p.k * p.k + p.m * omega * float(l) + 2.0 * p.m * float(l) * rot
    return 2.0 * bracket / (p.m * eff)


def chi(p: SystemParams, l: int, frame: Frame, energy: float) -> float:
    return chi_at(p, l, frame, energy, cyclotron_frequency(p))
