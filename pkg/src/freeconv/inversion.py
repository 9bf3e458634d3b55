"""Global inversion of ``H(z) = z + phi(F_nu(z))``.

``H`` maps the domain ``{Im H > 0}`` bijectively onto the upper half plane.
Its lower boundary is the graph of ``f``; ``V = {f > 0}``; ``h`` is the
boundary homeomorphism ``x -> H(x + i f(x))`` and ``omega`` the inverse of
``H``.  The density of the free convolution is read off these objects.

``f(x)`` is the root in ``y`` of ``I_x(y) = 1`` where

    I_x(y) = 1 - Im H(x + iy) / y
           = P_nu(x, y) * Q(F_nu(x + iy)) / |G_nu(x + iy)|^2

with ``P_nu`` the Poisson integral of ``nu`` and ``Q(w) = -Im phi(w)/Im w``.
``I_x`` is strictly decreasing in ``y``, so bisection-type root finding is
safe.  The factored form keeps full relative accuracy as ``y -> 0``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ._numerics import (
    NonConvergence,
    NumericalConflict,
    Undecided,
    is_diverging,
    is_pole,
    vertical_limit,
)
from .measure import (
    MeasureRep,
    atom_mass,
    cauchy_and_poisson,
    cauchy_transform,
    cauchy_transform_sq,
    support_components,
    total_mass,
    vertical_limit_G,
    _real_axis_integrals,
)
from .transform import LevyHincin, PhiDescriptor, s_mu

# Equality band for g(alpha) = 1.
TIE_TOL = 1e-8


@dataclass(frozen=True)
class Tolerances:
    y_floor: float = 1e-9
    root_tol: float = 1e-12
    quad_tol: float = 1e-10


class ConvolutionModel:
    """The pair ``(phi_mu, nu)`` together with tolerances.

    The model is immutable; memo tables for ``f`` are private caches.
    """

    __slots__ = ("phi", "nu", "tol", "_f_cache", "_g_cache")

    def __init__(self, phi: PhiDescriptor, nu: MeasureRep, tol: Tolerances | None = None):
        if getattr(phi, "degenerate", False):
            raise ValueError("mu must be nondegenerate (nonzero Lévy measure)")
        mass = total_mass(nu)
        if abs(mass - 1.0) > 1e-9:
            raise ValueError(f"nu must be a probability measure (mass {mass})")
        self.phi = phi
        self.nu = nu
        self.tol = tol or Tolerances()
        self._f_cache: dict[float, float] = {}
        self._g_cache: dict[float, float] = {}

    # -- pointwise evaluation ------------------------------------------------

    def H(self, z: complex) -> complex:
        return z + self.phi(1.0 / cauchy_transform(self.nu, z))

    def H_prime(self, z: complex) -> complex:
        g = cauchy_transform(self.nu, z)
        g2 = cauchy_transform_sq(self.nu, z)
        return 1.0 + self.phi.derivative(1.0 / g) * g2 / (g * g)

    def I(self, x: float, y: float) -> float:
        """``1 - Im H(x+iy)/y``, strictly decreasing in ``y``."""
        z = complex(x, y)
        g, pois = cauchy_and_poisson(self.nu, z)
        mod2 = abs(g) ** 2
        fz = complex((1.0 / g).real, y * pois / mod2)
        return pois * self.phi.quotient(fz) / mod2

    def y_floor(self, x: float) -> float:
        return self.tol.y_floor * (1.0 + abs(x))

    def zero_threshold(self, x: float) -> float:
        return 10.0 * self.y_floor(x)

    def f(self, x: float, guess: float | None = None) -> float:
        x = float(x)
        cached = self._f_cache.get(x)
        if cached is not None:
            return cached
        val = self._f_uncached(x, guess)
        if len(self._f_cache) > 200_000:
            self._f_cache.clear()
        self._f_cache[x] = val
        return val

    def _f_uncached(self, x: float, guess: float | None) -> float:
        yf = self.y_floor(x)
        if self.I(x, yf) <= 1.0:
            return 0.0
        y = max(guess or 1.0, yf)
        if self.I(x, y) > 1.0:
            lo = y
            hi = 2.0 * y
            while self.I(x, hi) > 1.0:
                lo, hi = hi, 2.0 * hi
                if hi > 1e15:
                    raise NonConvergence(f"f bracket failed at x={x}")
        else:
            hi = y
            lo = 0.5 * y
            while lo > yf and self.I(x, lo) <= 1.0:
                hi, lo = lo, 0.5 * lo
            lo = max(lo, yf)
        return brentq(lambda t: self.I(x, t) - 1.0, lo, hi, xtol=self.tol.root_tol * 1e-2, rtol=1e-15, maxiter=200)

    # -- g: the limit of I_x(y) ----------------------------------------------

    def g_exact(self, x: float) -> float:
        """Limit of ``I_x(y)`` from the measure metadata.

        Raises :class:`Undecided` or :class:`NonConvergence` when the
        metadata cannot decide.
        """
        x = float(x)
        if x in self._g_cache:
            return self._g_cache[x]
        val = self._g_exact_uncached(x)
        self._g_cache[x] = val
        return val

    def _g_exact_uncached(self, x: float) -> float:
        w_atom = atom_mass(self.nu, x)
        if w_atom > 0:
            return self.phi.real_quotient(0.0) / w_atom
        j1, j2 = _real_axis_integrals(self.nu, x)
        if math.isinf(j2):
            return math.inf
        return j2 * self._i4(j1)

    def _i4(self, limit_g: float) -> float:
        if limit_g == 0:
            return self.phi.variance()
        return self.phi.real_quotient(1.0 / limit_g) / limit_g**2

    def g_numeric(self, x: float) -> float:
        """Limit of ``I_x(eps)`` by extrapolation along a geometric sequence."""
        try:
            return vertical_limit(lambda eps: self.I(x, eps)).value.real
        except NonConvergence as exc:
            raw = exc.args[1]
            if is_diverging(raw) or is_pole(raw):
                return math.inf
            raise Undecided(f"g({x}) neither converges nor diverges") from exc

    def g(self, x: float, cross_check: bool = False) -> float:
        try:
            val = self.g_exact(x)
        except (Undecided, NonConvergence):
            return self.g_numeric(x)
        if cross_check and math.isfinite(val):
            num = self.g_numeric(x)
            if abs(num - val) > 1e-6 * max(1.0, abs(val)):
                raise NumericalConflict(f"g({x}): exact {val} vs extrapolated {num}")
        return val

    def in_V(self, x: float) -> bool:
        """Membership in ``{f > 0}``: exact ``g`` when decisive, else the
        thresholded boundary height."""
        try:
            if self.g_exact(x) > 1.0 + TIE_TOL:
                return True
        except (Undecided, NonConvergence):
            pass
        return self.f(x) > self.zero_threshold(x)

    # -- boundary map ----------------------------------------------------------

    def boundary_H(self, x: float) -> complex:
        """Vertical limit ``H*(x)`` at a point with ``f(x) = 0``."""
        try:
            lim = vertical_limit_G(self.nu, x)
            if lim.infinite:
                val = self.phi.boundary_value(0.0)
            elif lim.exact and lim.value == 0:
                val = complex(self.phi.drift_at_infinity())
            elif lim.exact:
                val = self.phi.boundary_value(1.0 / lim.value.real)
            else:
                raise NonConvergence("inexact")
            if math.isfinite(val.real):
                return complex(x + val.real, val.imag)
        except (Undecided, NonConvergence):
            pass
        return vertical_limit(lambda eps: self.H(complex(x, eps))).value

    def h(self, x: float, guess: float | None = None) -> float:
        fx = self.f(x, guess)
        if fx > 0:
            val = self.H(complex(x, fx))
            if abs(val.imag) > 10 * self.tol.root_tol * max(1.0, abs(x), abs(val.real), fx):
                raise NumericalConflict(f"Im H(x + i f(x)) = {val.imag} at x={x}")
            return val.real
        return self.boundary_H(x).real

    def h_prime(self, x: float) -> float:
        """Derivative of ``h`` where ``f(x) > 0``: ``|H'|^2 / Re H'``."""
        fx = self.f(x)
        d = self.H_prime(complex(x, fx if fx > 0 else self.y_floor(x)))
        return abs(d) ** 2 / d.real

    def h_inverse(self, s: float, guess: float | None = None) -> float:
        """Solve ``h(x) = s``: expanding bracket, then Newton steps on ``h``
        safeguarded by bisection."""
        x = s if guess is None else guess
        hx = self.h(x)
        lo = hi = x
        hlo = hhi = hx
        step = 1.0
        while hlo > s:
            hi, hhi = lo, hlo
            lo -= step
            step *= 2
            if abs(lo) > 1e12:
                raise NonConvergence("h_inverse bracket exceeded 1e12")
            hlo = self.h(lo)
        step = 1.0
        while hhi < s:
            lo, hlo = hi, hhi
            hi += step
            step *= 2
            if abs(hi) > 1e12:
                raise NonConvergence("h_inverse bracket exceeded 1e12")
            hhi = self.h(hi)
        if hlo == s:
            return lo
        if hhi == s:
            return hi
        x = x if lo < x < hi else 0.5 * (lo + hi)
        for _ in range(200):
            hx = self.h(x)
            if hx == s:
                return x
            if hx < s:
                lo = x
            else:
                hi = x
            if hi - lo <= self.tol.root_tol * max(1.0, abs(x)):
                break
            xn = None
            if self.f(x) > 0:
                d = self.h_prime(x)
                if d > 0 and math.isfinite(d):
                    xn = x - (hx - s) / d
            if xn is None or not lo < xn < hi:
                xn = 0.5 * (lo + hi)
            if abs(xn - x) <= 0.25 * self.tol.root_tol * max(1.0, abs(x)):
                return xn
            x = xn
        return 0.5 * (lo + hi)

    # -- global inverse ----------------------------------------------------------

    def omega(self, w: complex, max_steps: int = 10_000) -> complex:
        """The unique ``z`` above the graph of ``f`` with ``H(z) = w``."""
        w = complex(w)
        if not w.imag > 0:
            raise ValueError("omega needs Im w > 0")
        z = w
        prev_step = math.inf
        steps = 0
        while True:
            # damped fixed-point phase; stop once steps are small relative
            # to the distance from the real axis
            for _ in range(200):
                steps += 1
                znew = w - self.phi(1.0 / cauchy_transform(self.nu, z))
                step = abs(znew - z)
                if step > prev_step:
                    znew = 0.5 * (znew + z)
                z, prev_step = znew, step
                if step < 1e-2 * z.imag or step < 1e-15 * max(1.0, abs(z)):
                    break
            cand = self._newton(z, w)
            resid = abs(self.H(cand) - w)
            if resid < self.tol.root_tol * max(1.0, abs(w)) and cand.imag > self.f(cand.real):
                return cand
            if steps >= max_steps:
                raise NonConvergence(f"omega({w}) did not converge (residual {resid})")

    def _newton(self, z: complex, w: complex) -> complex:
        r = self.H(z) - w
        for _ in range(60):
            d = self.H_prime(z)
            delta = r / d
            lam = 1.0
            while True:
                znew = z - lam * delta
                if znew.imag > 0:
                    rnew = self.H(znew) - w
                    if abs(rnew) < abs(r) or lam < 1e-6:
                        break
                lam *= 0.5
                if lam < 1e-12:
                    return z
            z, r = znew, rnew
            if abs(r) < 1e-15 * max(1.0, abs(w)) or abs(lam * delta) < 1e-16 * max(1.0, abs(z)):
                break
        return z

    def omega_real(self, s: float) -> complex:
        """``omega`` on the real line: ``x + i f(x)`` with ``x = h^{-1}(s)``."""
        x = self.h_inverse(s)
        return complex(x, self.f(x))


# ---------------------------------------------------------------------------
# Operation-style API
# ---------------------------------------------------------------------------


def H_eval(model: ConvolutionModel, z: complex) -> complex:
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("H needs Im z > 0")
    return model.H(z)


def f_boundary(model: ConvolutionModel, x: float) -> float:
    return model.f(x)


def g_eval(model: ConvolutionModel, x: float, cross_check: bool = False) -> float:
    return model.g(x, cross_check=cross_check)


def h_map(model: ConvolutionModel, x: float) -> float:
    return model.h(x)


def h_inverse(model: ConvolutionModel, s: float) -> float:
    return model.h_inverse(s)


def omega(model: ConvolutionModel, w: complex) -> complex:
    return model.omega(w)


def omega_prime_at(model: ConvolutionModel, alpha: float) -> float:
    """Angular derivative ``1 / (1 - g(alpha))`` at a boundary point."""
    if model.f(alpha) > model.zero_threshold(alpha):
        raise ValueError(f"{alpha} is inside V")
    gval = model.g(alpha)
    return angular_derivative(gval)


def tangency_ratios(model: ConvolutionModel, alpha: float, n: int = 8) -> list[tuple[float, float]]:
    """``(delta, max f(alpha +- delta) / delta)`` for ``delta = 10**-k``.

    Ratios tending to zero suggest the boundary of the domain is tangent to
    the real line at ``alpha``.  Diagnostic only: nothing is asserted.
    """
    out = []
    for k in range(1, n + 1):
        delta = 10.0**-k
        out.append((delta, max(model.f(alpha - delta), model.f(alpha + delta)) / delta))
    return out


def angular_derivative(gval: float) -> float:
    if abs(gval - 1.0) <= TIE_TOL:
        return math.inf
    if gval > 1.0:
        raise ValueError("g exceeds 1: not a boundary point")
    return 1.0 / (1.0 - gval)


@dataclass(frozen=True)
class IntervalSet:
    intervals: tuple[tuple[float, float], ...]
    truncated: tuple[bool, bool] = (False, False)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def contains(self, x: float) -> bool:
        return any(lo < x < hi for lo, hi in self.intervals)


def structural_points(model: ConvolutionModel) -> list[float]:
    """Points where an isolated zero of ``f`` can sit: atoms of ``nu``,
    piece endpoints, monomial centers and vanishing table samples."""
    pts = {a.location for a in model.nu.atoms}
    for p in model.nu.pieces:
        for e in p.interval:
            if math.isfinite(e):
                pts.add(float(e))
        center = getattr(p, "center", None)
        if center is not None:
            pts.add(float(center))
        if hasattr(p, "points"):
            for x, v in zip(p.points, p.values):
                if v == 0:
                    pts.add(float(x))
    return sorted(pts)


def positivity_set(
    model: ConvolutionModel, window: tuple[float, float], n_seed: int = 256
) -> IntervalSet:
    """Components of ``V`` inside ``window``, endpoints localized to the
    root tolerance."""
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError("window must satisfy lo < hi")
    if n_seed < 16:
        raise ValueError("n_seed must be at least 16")
    seeds = set(np.linspace(lo, hi, n_seed).tolist())
    seeds.update(p for p in structural_points(model) if lo <= p <= hi)
    # absolutely continuous parts of nu lie in the closure of V
    for piece in model.nu.pieces:
        a, b = max(piece.interval[0], lo), min(piece.interval[1], hi)
        if a < b:
            seeds.update(np.linspace(a, b, 9)[1:-1].tolist())
    xs = sorted(seeds)
    flags = [model.in_V(x) for x in xs]
    isolated = set(structural_points(model))

    tol = model.tol.root_tol

    def edge(inside: float, outside: float) -> float:
        # shrink the bracket; the returned point is outside V
        while abs(outside - inside) > tol * max(1.0, abs(inside), abs(outside)):
            m = 0.5 * (inside + outside)
            if m == inside or m == outside:
                break
            if model.in_V(m):
                inside = m
            else:
                outside = m
        return outside

    comps: list[tuple[float, float]] = []
    start = xs[0] if flags[0] else None
    for i in range(1, len(xs)):
        if flags[i] == flags[i - 1]:
            continue
        a, b = xs[i - 1], xs[i]
        if flags[i]:
            # entering V between a (outside) and b (inside)
            start = a if a in isolated and _adjacent_only(model, a, b) else edge(b, a)
        else:
            end = b if b in isolated and _adjacent_only(model, b, a) else edge(a, b)
            comps.append((start, end))
            start = None
    if start is not None:
        comps.append((start, xs[-1]))
    truncated = (bool(flags[0]), bool(flags[-1]))
    if any(truncated):
        warnings.warn("window boundary cuts a component of V", RuntimeWarning, stacklevel=2)
    return IntervalSet(tuple(comps), truncated)


def _adjacent_only(model: ConvolutionModel, point: float, inside: float) -> bool:
    """True when every point strictly between ``point`` and ``inside`` lies
    in ``V`` (the zero at ``point`` is approached from V directly)."""
    # probe geometrically towards the structural point
    d = inside - point
    for k in range(1, 40):
        x = point + d * 2.0 ** (-k)
        if x == point:
            break
        if not model.in_V(x):
            return False
    return True


__all__ = [
    "Tolerances",
    "ConvolutionModel",
    "IntervalSet",
    "TIE_TOL",
    "H_eval",
    "f_boundary",
    "g_eval",
    "h_map",
    "h_inverse",
    "omega",
    "omega_prime_at",
    "angular_derivative",
    "tangency_ratios",
    "positivity_set",
    "structural_points",
]
