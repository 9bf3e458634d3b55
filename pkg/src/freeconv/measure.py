"""Finite positive Borel measures on the real line.

A measure is a list of point masses plus density pieces drawn from a few
typed families.  Keeping the family parameters (rather than a black-box
callable) lets the singular integrals below decide divergence exactly from
the vanishing order of the density.

Extended reals are plain floats with ``math.inf``; an indeterminate verdict
raises :class:`~freeconv._numerics.Undecided`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import integrate, special

from ._numerics import Undecided, NonConvergence, gauss_legendre, vertical_limit

QUAD_TOL = 1e-10
# Relative distance beyond which a piece is integrated by a fixed
# Gauss-Legendre rule instead of its closed form.
FAR_FIELD = 1.0


def _clog_ratio(p: complex, q: complex) -> complex:
    """``log(p/q)`` for ``p, q`` in the closed upper half plane, with the
    imaginary part taken from ``arg(p * conj(q))`` so it stays accurate in
    relative terms when both arguments are nearly real."""
    prod = p * q.conjugate()
    return complex(math.log(abs(p) / abs(q)), math.atan2(prod.imag, prod.real))


def ext_mul(a: float, b: float) -> float:
    """Product on ``[0, +inf]``; ``0 * inf`` is indeterminate."""
    if (a == 0 and math.isinf(b)) or (b == 0 and math.isinf(a)):
        raise Undecided("indeterminate product 0 * inf")
    return a * b


# ---------------------------------------------------------------------------
# Density pieces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AtomComponent:
    location: float
    mass: float

    def __post_init__(self):
        if not (math.isfinite(self.location) and math.isfinite(self.mass)):
            raise ValueError("atom location and mass must be finite")
        if self.mass <= 0:
            raise ValueError("atom mass must be positive")


class _PolynomialPiece:
    """Shared machinery for densities that are polynomials on a bounded
    interval.  Subclasses expose ``lo``, ``hi`` and ``_coeffs``: the density
    in powers of ``s - mid``."""

    lo: float
    hi: float
    analytic: bool

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def interval(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def _coeffs(self) -> np.ndarray:
        raise NotImplementedError

    def density(self, s):
        s = np.asarray(s, dtype=float)
        inside = (s >= self.lo) & (s <= self.hi)
        return np.where(inside, npoly.polyval(s - self.mid, self._coeffs()), 0.0)

    def moment(self, k: int) -> float:
        # integrate (v + mid)^k * density(v) over the shifted interval
        shift = npoly.polypow([self.mid, 1.0], k)
        prod = npoly.polyint(npoly.polymul(shift, self._coeffs()))
        half = 0.5 * (self.hi - self.lo)
        return float(npoly.polyval(half, prod) - npoly.polyval(-half, prod))

    def mass(self) -> float:
        return self.moment(0)

    def _far(self, z: complex) -> bool:
        length = self.hi - self.lo
        dist = abs(z - min(max(z.real, self.lo), self.hi))
        return dist > FAR_FIELD * length

    def _gl(self, z: complex, power: int) -> complex:
        coeffs = self._coeffs()
        x, w = gauss_legendre(24 + len(coeffs))
        half = 0.5 * (self.hi - self.lo)
        v = half * x
        dens = npoly.polyval(v, coeffs)
        return complex(half * np.sum(w * dens / (z - self.mid - v) ** power))

    def cauchy(self, z: complex) -> complex:
        """``int density(s) / (z - s) ds``; ``z`` off the closed interval
        when real."""
        if self._far(z):
            return self._gl(z, 1)
        coeffs = self._coeffs()
        half = 0.5 * (self.hi - self.lo)
        w = z - self.mid
        lg = _clog_ratio(w + half, w - half)
        total = 0j
        for k, a in enumerate(coeffs):
            if a == 0:
                continue
            acc = w**k * lg
            for j in range(k):
                acc -= w ** (k - 1 - j) * (half ** (j + 1) - (-half) ** (j + 1)) / (j + 1)
            total += a * acc
        return total

    def cauchy2(self, z: complex) -> complex:
        """``int density(s) / (z - s)**2 ds`` with the same domain."""
        if self._far(z):
            return self._gl(z, 2)
        coeffs = self._coeffs()
        half = 0.5 * (self.hi - self.lo)
        w = z - self.mid
        lg = _clog_ratio(w + half, w - half)
        pole = 1.0 / (w + half) - 1.0 / (w - half)
        total = 0j
        for k, a in enumerate(coeffs):
            if a == 0:
                continue
            acc = w**k * pole
            if k:
                acc += k * w ** (k - 1) * lg
            for j in range(k - 1):
                acc -= (k - 1 - j) * w ** (k - 2 - j) * (half ** (j + 1) - (-half) ** (j + 1)) / (j + 1)
            total -= a * acc
        return total

    def vanishing_order(self, x: float) -> float:
        return 0.0

    def in_closure_integrals(self, x: float) -> tuple[float, float]:
        """``(int dm/(x-s), int dm/(x-s)^2)`` for ``x`` in the closure."""
        return math.nan, math.inf


@dataclass(frozen=True)
class Uniform(_PolynomialPiece):
    """Constant density ``c`` on ``[lo, hi]``."""

    c: float
    lo: float
    hi: float
    analytic: bool = True

    def __post_init__(self):
        _check_bounded(self.lo, self.hi)
        if not self.c > 0:
            raise ValueError("uniform density must be positive")

    def _coeffs(self) -> np.ndarray:
        return np.array([self.c])


@dataclass(frozen=True)
class Monomial(_PolynomialPiece):
    """Density ``c * (s - center)**k`` on ``[lo, hi]``."""

    c: float
    k: int
    center: float
    lo: float
    hi: float
    analytic: bool = True

    def __post_init__(self):
        _check_bounded(self.lo, self.hi)
        if not self.c > 0:
            raise ValueError("monomial coefficient must be positive")
        if int(self.k) != self.k or self.k < 0:
            raise ValueError("monomial exponent must be a nonnegative integer")
        if self.k % 2 == 1 and self.lo < self.center < self.hi:
            raise ValueError("odd monomial changes sign inside its interval")
        if self.k % 2 == 1 and self.hi <= self.center:
            raise ValueError("odd monomial is negative left of its center")

    def _coeffs(self) -> np.ndarray:
        # c * (v + mid - center)^k in powers of v = s - mid
        return self.c * npoly.polypow([self.mid - self.center, 1.0], int(self.k))

    def vanishing_order(self, x: float) -> float:
        return float(self.k) if x == self.center else 0.0

    def in_closure_integrals(self, x: float) -> tuple[float, float]:
        if x != self.center:
            return math.nan, math.inf
        # substitute u = s - x: c * (-1)^n * int u^(k-n) du
        a, b = self.lo - x, self.hi - x
        out = []
        for n in (1, 2):
            e = int(self.k) - n
            if e < 0:
                out.append(math.nan if n == 1 else math.inf)
                continue
            out.append(self.c * (-1) ** n * (b ** (e + 1) - a ** (e + 1)) / (e + 1))
        return out[0], out[1]


@lru_cache(maxsize=64)
def _jacobi_nodes(p: float, n: int = 40) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on ``[0, 1]`` for the weight ``u**(p-1)``."""
    x, w = special.roots_jacobi(n, 0.0, p - 1.0)
    return 0.5 * (x + 1.0), w * 0.5**p


@dataclass(frozen=True)
class PowerTail:
    """Density ``c * |s|**(-p)`` on an unbounded interval ``[L, inf)`` or
    ``(-inf, -L]`` with ``L > 0``."""

    c: float
    p: float
    lo: float
    hi: float
    analytic: bool = True

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("power-tail coefficient must be positive")
        if not self.p > 1:
            raise ValueError("piece mass infinite: power tail needs p > 1")
        if math.isinf(self.hi) and self.hi > 0 and math.isfinite(self.lo) and self.lo > 0:
            return
        if math.isinf(self.lo) and self.lo < 0 and math.isfinite(self.hi) and self.hi < 0:
            return
        raise ValueError("power tail must sit on [L, inf) or (-inf, -L] with L > 0")

    @property
    def interval(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    @property
    def side(self) -> int:
        return 1 if self.hi > 0 else -1

    @property
    def edge(self) -> float:
        return self.lo if self.side > 0 else -self.hi

    def density(self, s):
        s = np.asarray(s, dtype=float)
        inside = (s >= self.lo) & (s <= self.hi)
        with np.errstate(divide="ignore"):
            return np.where(inside, self.c * np.abs(s) ** (-self.p), 0.0)

    def mass(self) -> float:
        return self.c * self.edge ** (1 - self.p) / (self.p - 1)

    def moment(self, k: int) -> float:
        if self.p <= k + 1:
            return self.side**k * math.inf
        return self.side**k * self.c * self.edge ** (k + 1 - self.p) / (self.p - k - 1)

    # The right tail is handled directly; the left tail by reflection
    # s -> -s, which maps G(z) to -G_right(-z) and keeps the squared kernel.

    def _kernel(self, zeta: complex) -> complex:
        """``int_0^1 u^(p-1) / (zeta*u - L) du`` (the right tail after
        ``u = L/s``)."""
        L = self.edge
        p = self.p
        if abs(zeta) < 0.5 * L:
            u, w = _jacobi_nodes(p)
            return complex(np.sum(w / (zeta * u - L)))
        a = L / zeta
        lg = _clog_ratio(1.0 - a, -a)
        if float(p).is_integer():
            n = int(p)
            acc = a ** (n - 1) * lg
            for j in range(n - 1):
                acc += a ** (n - 2 - j) / (j + 1)
            return acc / zeta
        # subtract the pole at u = a, integrate the smooth remainder
        ap = a ** (p - 1)

        def rem(u):
            return (u ** (p - 1) - ap) / (u - a)

        re = integrate.quad(lambda u: rem(u).real, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)[0]
        im = integrate.quad(lambda u: rem(u).imag, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)[0]
        return (complex(re, im) + ap * lg) / zeta

    def _right_g(self, zeta: complex) -> complex:
        L = self.edge
        return self.c * L ** (1 - self.p) * self._kernel(zeta)

    def _right_g2(self, zeta: complex) -> complex:
        L = self.edge
        p = self.p
        scale = self.c * L ** (1 - p)
        if abs(zeta) < 0.5 * L:
            u, w = _jacobi_nodes(p)
            return scale * complex(np.sum(w * u / (zeta * u - L) ** 2))
        # integration by parts reduces the squared kernel to the plain one
        return scale * (-1.0 / (zeta * (zeta - L)) + p / zeta * self._kernel(zeta))

    def cauchy(self, z: complex) -> complex:
        if self.side > 0:
            return self._right_g(z)
        return -self._right_g(-z.conjugate()).conjugate() if z.imag > 0 else -self._right_g(-z)

    def cauchy2(self, z: complex) -> complex:
        if self.side > 0:
            return self._right_g2(z)
        return self._right_g2(-z.conjugate()).conjugate() if z.imag > 0 else self._right_g2(-z)

    def vanishing_order(self, x: float) -> float:
        return 0.0

    def in_closure_integrals(self, x: float) -> tuple[float, float]:
        return math.nan, math.inf


@dataclass(frozen=True)
class Table:
    """Piecewise-linear density through sampled ``(points, values)``."""

    points: tuple[float, ...]
    values: tuple[float, ...]
    analytic: bool = False

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if pts.ndim != 1 or pts.size < 2 or pts.shape != vals.shape:
            raise ValueError("table needs matching point and value lists of length >= 2")
        if not np.all(np.isfinite(pts)) or not np.all(np.isfinite(vals)):
            raise ValueError("table entries must be finite")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("table points must be strictly increasing")
        if np.any(vals < 0):
            raise ValueError("table values must be nonnegative")
        if not np.any(vals > 0):
            raise ValueError("table density is identically zero")

    @property
    def lo(self) -> float:
        return float(self.points[0])

    @property
    def hi(self) -> float:
        return float(self.points[-1])

    @property
    def interval(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def _segments(self):
        x = np.asarray(self.points, dtype=float)
        y = np.asarray(self.values, dtype=float)
        delta = np.diff(x)
        return x[:-1], y[:-1], (y[1:] - y[:-1]) / delta, delta

    def density(self, s):
        s = np.asarray(s, dtype=float)
        inside = (s >= self.lo) & (s <= self.hi)
        return np.where(inside, np.interp(s, self.points, self.values), 0.0)

    def moment(self, k: int) -> float:
        a, y0, m, d = self._segments()
        total = 0.0
        for ai, yi, mi, di in zip(a, y0, m, d):
            poly = npoly.polymul(npoly.polypow([ai, 1.0], k), [yi, mi])
            prim = npoly.polyint(poly)
            total += npoly.polyval(di, prim) - npoly.polyval(0.0, prim)
        return float(total)

    def mass(self) -> float:
        return self.moment(0)

    def _eval(self, z: complex, power: int) -> complex:
        a, y0, m, d = self._segments()
        w = z - a
        dist = np.abs(z - np.clip(z.real, a, a + d))
        far = dist > FAR_FIELD * d
        total = 0j
        if np.any(far):
            x, gw = gauss_legendre(12)
            u = 0.5 * d[far, None] * (x[None, :] + 1.0)
            dens = y0[far, None] + m[far, None] * u
            vals = dens / (w[far, None] - u) ** power
            total += complex(np.sum(0.5 * d[far] * np.sum(gw[None, :] * vals, axis=1)))
        near = ~far
        for wi, yi, mi, di in zip(w[near], y0[near], m[near], d[near]):
            lg = _clog_ratio(complex(wi), complex(wi - di))
            if power == 1:
                total += (yi + mi * wi) * lg - mi * di
            else:
                total += (yi + mi * wi) * di / (wi * (wi - di)) - mi * lg
        return total

    def cauchy(self, z: complex) -> complex:
        return self._eval(z, 1)

    def cauchy2(self, z: complex) -> complex:
        return self._eval(z, 2)

    def vanishing_order(self, x: float) -> float:
        if float(np.interp(x, self.points, self.values)) > 0:
            return 0.0
        raise Undecided(f"table density vanishes at {x}; order not certifiable")

    def in_closure_integrals(self, x: float) -> tuple[float, float]:
        return math.nan, math.inf

    def support(self) -> list[tuple[float, float]]:
        x = np.asarray(self.points, dtype=float)
        y = np.asarray(self.values, dtype=float)
        out: list[tuple[float, float]] = []
        for i in range(len(x) - 1):
            if y[i] == 0 and y[i + 1] == 0:
                continue
            if out and out[-1][1] == x[i]:
                out[-1] = (out[-1][0], float(x[i + 1]))
            else:
                out.append((float(x[i]), float(x[i + 1])))
        return out


DensityPiece = Union[Uniform, Monomial, PowerTail, Table]


def _check_bounded(lo: float, hi: float) -> None:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("piece mass infinite: bounded family on an unbounded interval")
    if not lo < hi:
        raise ValueError("piece interval must satisfy lo < hi")


def _piece_support(piece: DensityPiece) -> list[tuple[float, float]]:
    if isinstance(piece, Table):
        return piece.support()
    return [piece.interval]


# ---------------------------------------------------------------------------
# Measures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeasureRep:
    atoms: tuple[AtomComponent, ...] = ()
    pieces: tuple[DensityPiece, ...] = ()
    allow_zero: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "pieces", tuple(self.pieces))
        locs = [a.location for a in self.atoms]
        if len(set(locs)) != len(locs):
            raise ValueError("atom locations must be distinct")
        ivals = sorted(p.interval for p in self.pieces)
        for (_, h1), (l2, _) in zip(ivals, ivals[1:]):
            if l2 < h1:
                raise ValueError("density pieces overlap")
        if not self.allow_zero and not self.atoms and not self.pieces:
            raise ValueError("measure is zero")

    @property
    def is_zero(self) -> bool:
        return not self.atoms and not self.pieces

    def scaled(self, t: float) -> "MeasureRep":
        """The measure ``t * m``."""
        from dataclasses import replace

        atoms = tuple(AtomComponent(a.location, t * a.mass) for a in self.atoms)
        pieces = []
        for p in self.pieces:
            if isinstance(p, Table):
                pieces.append(replace(p, values=tuple(t * v for v in p.values)))
            else:
                pieces.append(replace(p, c=t * p.c))
        return MeasureRep(atoms, tuple(pieces), allow_zero=self.allow_zero)

    def shifted(self, c: float) -> "MeasureRep":
        """The translate ``m(. - c)``; power tails are not translation
        invariant and are rejected."""
        from dataclasses import replace

        atoms = tuple(AtomComponent(a.location + c, a.mass) for a in self.atoms)
        pieces = []
        for p in self.pieces:
            if isinstance(p, Table):
                pieces.append(replace(p, points=tuple(x + c for x in p.points)))
            elif isinstance(p, Monomial):
                pieces.append(replace(p, center=p.center + c, lo=p.lo + c, hi=p.hi + c))
            elif isinstance(p, Uniform):
                pieces.append(replace(p, lo=p.lo + c, hi=p.hi + c))
            else:
                raise ValueError("power tails cannot be translated")
        return MeasureRep(atoms, tuple(pieces), allow_zero=self.allow_zero)

    def density(self, s):
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        for p in self.pieces:
            out = out + p.density(s)
        return out


def dirac(at: float = 0.0, mass: float = 1.0) -> MeasureRep:
    return MeasureRep((AtomComponent(at, mass),))


def total_mass(m: MeasureRep) -> float:
    return sum(a.mass for a in m.atoms) + sum(p.mass() for p in m.pieces)


def moment(m: MeasureRep, k: int) -> float:
    """``int s^k dm`` for ``k`` in {1, 2}; NaN when ``k = 1`` and both
    tails diverge."""
    if k not in (1, 2):
        raise ValueError("moment order must be 1 or 2")
    total = sum(a.mass * a.location**k for a in m.atoms)
    pos = neg = False
    for p in m.pieces:
        v = p.moment(k)
        if math.isinf(v):
            pos |= v > 0
            neg |= v < 0
        else:
            total += v
    if pos and neg:
        return math.nan
    if pos:
        return math.inf
    if neg:
        return -math.inf
    return total


def atom_mass(m: MeasureRep, alpha: float) -> float:
    for a in m.atoms:
        if a.location == alpha:
            return a.mass
    return 0.0


def support_components(m: MeasureRep) -> list[tuple[float, float]]:
    """Disjoint closed intervals whose union is the support; isolated atoms
    appear as degenerate ``(a, a)``."""
    ivals = sorted(iv for p in m.pieces for iv in _piece_support(p))
    merged: list[list[float]] = []
    for lo, hi in ivals:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    out = [tuple(iv) for iv in merged]
    for a in m.atoms:
        if not any(lo <= a.location <= hi for lo, hi in out):
            out.append((a.location, a.location))
    return sorted(out)


def _closure_hits(m: MeasureRep, x: float) -> list[DensityPiece]:
    return [p for p in m.pieces if p.interval[0] <= x <= p.interval[1]]


def _cauchy_any(m: MeasureRep, z: complex) -> complex:
    total = sum(a.mass / (z - a.location) for a in m.atoms)
    for p in m.pieces:
        total += p.cauchy(z)
    return complex(total)


def _cauchy2_any(m: MeasureRep, z: complex) -> complex:
    total = sum(a.mass / (z - a.location) ** 2 for a in m.atoms)
    for p in m.pieces:
        total += p.cauchy2(z)
    return complex(total)


def cauchy_transform(m: MeasureRep, z: complex) -> complex:
    """Cauchy transform ``int dm(s) / (z - s)`` on the upper half plane."""
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("Cauchy transform needs Im z > 0")
    return _cauchy_any(m, z)


def cauchy_transform_sq(m: MeasureRep, z: complex) -> complex:
    """``int dm(s) / (z - s)**2``, minus the derivative of the Cauchy
    transform."""
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("needs Im z > 0")
    return _cauchy2_any(m, z)


def poisson_integral(m: MeasureRep, x: float, y: float) -> float:
    """``int dm(s) / ((x - s)^2 + y^2)`` for ``y > 0``."""
    total = sum(a.mass / ((x - a.location) ** 2 + y * y) for a in m.atoms)
    if m.pieces:
        z = complex(x, y)
        total += -sum(p.cauchy(z) for p in m.pieces).imag / y
    return float(total)


def cauchy_and_poisson(m: MeasureRep, z: complex) -> tuple[complex, float]:
    """``(G_m(z), int dm / |z - s|^2)`` sharing one pass over the pieces."""
    x, y = z.real, z.imag
    g = 0j
    pois = 0.0
    for a in m.atoms:
        d = z - a.location
        g += a.mass / d
        pois += a.mass / ((x - a.location) ** 2 + y * y)
    if m.pieces:
        gp = sum(p.cauchy(z) for p in m.pieces)
        g += gp
        pois += -gp.imag / y
    return complex(g), float(pois)


def quadratic_poisson_integral(m: MeasureRep, w: complex) -> float:
    """``int (1 + s^2) / |w - s|^2 dm(s)`` for ``Im w > 0``."""
    u, v = w.real, w.imag
    total = sum(a.mass * (1 + a.location**2) / ((u - a.location) ** 2 + v * v) for a in m.atoms)
    if m.pieces:
        g = sum(p.cauchy(w) for p in m.pieces)
        mass = sum(p.mass() for p in m.pieces)
        total += mass + (1 + u * u - v * v) * (-g.imag / v) - 2 * u * g.real
    return float(total)


def _real_axis_integrals(m: MeasureRep, x: float) -> tuple[float, float]:
    """``(int dm/(x-s), int dm/(x-s)^2)``; the second is ``inf`` when it
    diverges, in which case the first is NaN."""
    x = float(x)
    if atom_mass(m, x) > 0:
        return math.nan, math.inf
    j1 = sum(a.mass / (x - a.location) for a in m.atoms)
    j2 = sum(a.mass / (x - a.location) ** 2 for a in m.atoms)
    z = complex(x, 0.0)
    for p in m.pieces:
        lo, hi = p.interval
        if lo <= x <= hi:
            order = p.vanishing_order(x)
            if order <= 1:
                return math.nan, math.inf
            a1, a2 = p.in_closure_integrals(x)
            j1 += a1
            j2 += a2
        else:
            j1 += p.cauchy(z).real
            j2 += p.cauchy2(z).real
    return j1, j2


def inverse_square_integral(m: MeasureRep, x: float) -> float:
    return _real_axis_integrals(m, x)[1]


def weighted_quadratic_integral(m: MeasureRep, x: float) -> float:
    """``int (1 + s^2) / (x - s)^2 dm(s)`` in ``(0, inf]``."""
    j1, j2 = _real_axis_integrals(m, x)
    if math.isinf(j2):
        return math.inf
    val = (1 + x * x) * j2 - 2 * x * j1 + total_mass(m)
    return max(val, 0.0)


@dataclass(frozen=True)
class BoundaryLimit:
    """Vertical limit of a Cauchy transform at a real point."""

    value: complex | None
    infinite: bool = False
    error: float = 0.0
    exact: bool = True


def vertical_limit_G(m: MeasureRep, alpha: float) -> BoundaryLimit:
    """``lim G_m(alpha + i eps)`` as ``eps -> 0+``.

    Exact when the inverse-square integral converges (the limit is then the
    real integral ``int dm/(alpha - s)``); infinite at atoms; otherwise by
    Richardson extrapolation along a geometric sequence.
    """
    if atom_mass(m, alpha) > 0:
        return BoundaryLimit(None, infinite=True)
    try:
        j1, j2 = _real_axis_integrals(m, alpha)
    except Undecided:
        j2 = math.inf
    if math.isfinite(j2):
        return BoundaryLimit(complex(j1, 0.0))
    res = vertical_limit(lambda eps: _cauchy_any(m, complex(alpha, eps)))
    return BoundaryLimit(res.value, error=res.error, exact=False)


__all__ = [
    "AtomComponent",
    "Uniform",
    "Monomial",
    "PowerTail",
    "Table",
    "DensityPiece",
    "MeasureRep",
    "BoundaryLimit",
    "dirac",
    "ext_mul",
    "total_mass",
    "moment",
    "atom_mass",
    "support_components",
    "cauchy_transform",
    "cauchy_transform_sq",
    "poisson_integral",
    "quadratic_poisson_integral",
    "cauchy_and_poisson",
    "inverse_square_integral",
    "weighted_quadratic_integral",
    "vertical_limit_G",
    "NonConvergence",
]
