"""Analytic transforms: the F-transform of a probability measure and the
Voiculescu transform of a freely infinitely divisible law.

The Voiculescu transform is described either by its Lévy-Hinčin data
``(gamma, sigma)`` or by one of the closed-form stable families.  Besides
plain evaluation every descriptor exposes the quantities the inversion and
regularity layers need: the derivative, the Nevanlinna quotient
``-Im phi(w) / Im w`` and its real-axis limits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from ._numerics import Undecided, NonConvergence, vertical_limit
from .measure import (
    MeasureRep,
    cauchy_transform,
    cauchy_transform_sq,
    moment,
    quadratic_poisson_integral,
    total_mass,
    weighted_quadratic_integral,
)


def F_transform(nu: MeasureRep, z: complex) -> complex:
    """Reciprocal Cauchy transform ``1 / G_nu(z)``."""
    return 1.0 / cauchy_transform(nu, z)


@dataclass(frozen=True)
class LevyHincin:
    """Lévy-Hinčin data: ``phi(w) = gamma + int (1 + s w) / (w - s) dsigma``."""

    gamma: float
    sigma: MeasureRep

    @property
    def degenerate(self) -> bool:
        return self.sigma.is_zero

    def scaled(self, t: float) -> "LevyHincin":
        return LevyHincin(t * self.gamma, self.sigma.scaled(t))

    def __call__(self, w: complex) -> complex:
        if self.degenerate:
            return complex(self.gamma)
        g = cauchy_transform(self.sigma, w)
        return self.gamma - w * total_mass(self.sigma) + (1 + w * w) * g

    def derivative(self, w: complex) -> complex:
        if self.degenerate:
            return 0j
        g = cauchy_transform(self.sigma, w)
        g2 = cauchy_transform_sq(self.sigma, w)
        return -((1 + w * w) * g2 - 2 * w * g + total_mass(self.sigma))

    def quotient(self, w: complex) -> float:
        """``-Im phi(w) / Im w = int (1 + s^2) / |w - s|^2 dsigma``."""
        if self.degenerate:
            return 0.0
        return quadratic_poisson_integral(self.sigma, w)

    def real_quotient(self, u: float) -> float:
        """Limit of the quotient at a real point: ``int (1+s^2)/(u-s)^2 dsigma``."""
        if self.degenerate:
            return 0.0
        return weighted_quadratic_integral(self.sigma, u)

    def variance(self) -> float:
        if self.degenerate:
            return 0.0
        return total_mass(self.sigma) + moment(self.sigma, 2)

    def drift_at_infinity(self) -> float:
        """``lim phi(iy)`` as ``y -> inf``, i.e. ``gamma + m1(sigma)``."""
        if self.degenerate:
            return self.gamma
        return self.gamma + moment(self.sigma, 1)

    def boundary_value(self, u: float) -> complex:
        """Real-axis value of ``phi`` where the quotient is finite."""
        from .measure import _real_axis_integrals

        j1, j2 = _real_axis_integrals(self.sigma, u)
        if math.isinf(j2):
            raise NonConvergence("phi has no finite boundary value here")
        return complex(self.gamma - u * total_mass(self.sigma) + (1 + u * u) * j1)


@dataclass(frozen=True)
class Stable:
    """Free stable law with index ``a`` and asymmetry ``theta``, dilated by
    the semigroup parameter ``scale``."""

    a: float
    theta: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not 0 < self.a <= 2:
            raise ValueError("stability index must lie in (0, 2]")
        if self.a != 2 and not -1 <= self.theta <= 1:
            raise ValueError("asymmetry must lie in [-1, 1]")
        if not self.scale > 0:
            raise ValueError("scale must be positive")
        _check_nevanlinna(self)

    @property
    def degenerate(self) -> bool:
        return False

    def scaled(self, t: float) -> "Stable":
        return replace(self, scale=self.scale * t)

    def _prefactor(self) -> complex:
        a = self.a
        return -(1j + self.theta * math.tan(a * math.pi / 2)) * cmath.exp(1j * math.pi / 2 * (a - 1))

    def __call__(self, w: complex) -> complex:
        w = complex(w)
        if self.a == 2:
            return self.scale / w
        if self.a == 1:
            return self.scale * (2 * self.theta * cmath.log(w) - 1j * math.pi * (1 + self.theta))
        return self.scale * self._prefactor() * w ** (1 - self.a)

    def derivative(self, w: complex) -> complex:
        w = complex(w)
        if self.a == 2:
            return -self.scale / (w * w)
        if self.a == 1:
            return self.scale * 2 * self.theta / w
        return self.scale * self._prefactor() * (1 - self.a) * w ** (-self.a)

    def quotient(self, w: complex) -> float:
        if self.a == 2:
            return self.scale / abs(w) ** 2
        return -self(w).imag / w.imag

    def real_quotient(self, u: float) -> float:
        if self.a == 2:
            return math.inf if u == 0 else self.scale / (u * u)
        if u == 0:
            return math.inf
        if abs(self(complex(u, 0.0)).imag) > 1e-14 * self.scale:
            return math.inf
        return _quotient_limit(self, u)

    def variance(self) -> float:
        return self.scale if self.a == 2 else math.inf

    def drift_at_infinity(self) -> float:
        if self.a == 2:
            return 0.0
        return math.nan

    def boundary_value(self, u: float) -> complex:
        if u == 0:
            raise NonConvergence("phi is singular at the origin")
        return self(complex(u, 0.0))


@dataclass(frozen=True)
class Cauchy:
    """Cauchy law: ``phi(w) = location - i * scale``."""

    location: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    @property
    def degenerate(self) -> bool:
        return False

    def scaled(self, t: float) -> "Cauchy":
        return Cauchy(self.location * t, self.scale * t)

    def __call__(self, w: complex) -> complex:
        return complex(self.location, -self.scale)

    def derivative(self, w: complex) -> complex:
        return 0j

    def quotient(self, w: complex) -> float:
        return self.scale / w.imag

    def real_quotient(self, u: float) -> float:
        return math.inf

    def variance(self) -> float:
        return math.inf

    def drift_at_infinity(self) -> float:
        return math.nan

    def boundary_value(self, u: float) -> complex:
        return complex(self.location, -self.scale)


PhiDescriptor = Union[LevyHincin, Stable, Cauchy]


def _check_nevanlinna(phi) -> None:
    for r in (0.1, 1.0, 10.0):
        for ang in np.linspace(0.05, math.pi - 0.05, 7):
            w = r * cmath.exp(1j * ang)
            if phi(w).imag > 1e-12 * max(1.0, abs(phi(w))):
                raise ValueError("transform does not map the upper half plane correctly")


def _quotient_limit(phi, u: float) -> float:
    """``lim -Im phi(u + i eps) / eps``, with divergence reported as inf."""
    try:
        return vertical_limit(lambda eps: phi.quotient(complex(u, eps))).value.real
    except NonConvergence as exc:
        raw = exc.args[1]
        if abs(raw[-1]) > 2 * abs(raw[-2]) * 0.9:
            return math.inf
        raise


def phi_eval(phi: PhiDescriptor, w: complex) -> complex:
    """Voiculescu transform at ``w`` in the upper half plane."""
    w = complex(w)
    if not w.imag > 0:
        raise ValueError("phi needs Im w > 0")
    return phi(w)


def scale_semigroup(phi: PhiDescriptor, t: float) -> PhiDescriptor:
    """Descriptor of ``mu_t`` whose transform is ``t * phi``."""
    if not t > 0:
        raise ValueError("semigroup parameter must be positive")
    return phi.scaled(t)


@dataclass(frozen=True)
class SMuRecord:
    exists: bool
    location: float | None
    atom_mass: float


def s_mu(phi: PhiDescriptor) -> SMuRecord:
    """The real zero of ``F_mu`` and the mass of ``mu`` there.

    Closed-form families are nondegenerate stable laws, which are atomless;
    they are reported as having no such point.
    """
    if not isinstance(phi, LevyHincin):
        return SMuRecord(False, None, 0.0)
    if phi.degenerate:
        raise ValueError("s_mu needs a nondegenerate Lévy measure")
    g0 = weighted_quadratic_integral(phi.sigma, 0.0)
    if g0 > 1:
        return SMuRecord(False, None, 0.0)
    from .measure import _real_axis_integrals

    j1, _ = _real_axis_integrals(phi.sigma, 0.0)
    # int ds/s = -int dsigma/(0 - s)
    location = phi.gamma + j1
    return SMuRecord(True, location, max(1.0 - g0, 0.0))


def variance_of_mu(phi: PhiDescriptor) -> float:
    return phi.variance()


__all__ = [
    "F_transform",
    "LevyHincin",
    "Stable",
    "Cauchy",
    "PhiDescriptor",
    "phi_eval",
    "scale_semigroup",
    "SMuRecord",
    "s_mu",
    "variance_of_mu",
    "Undecided",
]
