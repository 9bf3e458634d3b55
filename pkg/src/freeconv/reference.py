"""Independent oracles for testing: closed-form densities and a slow
brute-force inverse of ``H``.

None of these routines use the inversion engine's root finders; the dense
search below only evaluates ``H`` itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .measure import MeasureRep


def semicircle_density(t: float, s: float) -> float:
    """Semicircle law of variance ``t``."""
    if not t > 0:
        raise ValueError("t must be positive")
    return math.sqrt(max(0.0, 4 * t - s * s)) / (2 * math.pi * t)


@dataclass(frozen=True)
class MPValue:
    density: float
    atom_at_zero: float


def marchenko_pastur_density(t: float, s: float) -> MPValue:
    """Free Poisson law with rate ``t``: density and the atom at zero."""
    if not t > 0:
        raise ValueError("t must be positive")
    atom = max(1.0 - t, 0.0)
    if s <= 0:
        return MPValue(0.0, atom)
    return MPValue(math.sqrt(max(0.0, 4 * t - (s - 1 - t) ** 2)) / (2 * math.pi * s), atom)


def cauchy_poisson_density(scale: float, nu: MeasureRep, s: float) -> float:
    """Classical convolution of a centred Cauchy law with ``nu``, via the
    Poisson integral of the raw density of ``nu``."""
    if not scale > 0:
        raise ValueError("scale must be positive")
    total = sum(a.mass / ((s - a.location) ** 2 + scale**2) for a in nu.atoms)
    for p in nu.pieces:
        lo, hi = p.interval
        brk = [b for b in (s,) if lo < b < hi] if math.isfinite(lo) and math.isfinite(hi) else None
        val, _ = integrate.quad(
            lambda u: float(p.density(u)) / ((s - u) ** 2 + scale**2),
            lo,
            hi,
            points=brk or None,
            epsabs=1e-14,
            epsrel=1e-12,
            limit=400,
        )
        total += val
    return scale / math.pi * total


def omega_dense_oracle(model, w: complex, grid: int = 15, tol: float = 1e-13) -> complex:
    """Solve ``H(z) = w`` by repeated grid zooming on ``|H(z) - w|``.

    The solution satisfies ``Im z >= Im w``.  Because ``H`` is 2-Lipschitz
    and its inverse expands distances by at most 2, the best grid point lies
    within three cells of the solution, which fixes the zoom factor.
    """
    w = complex(w)
    if not w.imag > 0:
        raise ValueError("w must lie in the upper half plane")

    def resid(z: complex) -> float:
        hz = model.H(z)
        return abs(hz - w) if hz.imag > 0 else math.inf

    # |omega - w| = |phi(F(omega))|; grow the box until it is interior
    radius = 2.0 * (1.0 + abs(model.phi(1.0 / _g(model, w))))
    for _ in range(60):
        cx, cy, half = w.real, w.imag + radius, radius
        best = _scan(resid, cx, cy, half, w.imag, grid)
        if abs(best.real - cx) < 0.9 * half and best.imag < cy + 0.9 * half:
            break
        radius *= 2
    else:
        raise RuntimeError("dense oracle search window exhausted")
    z = best
    cell = 2 * half / (grid - 1)
    while cell > tol * max(1.0, abs(z)):
        half = 3 * cell
        z = _scan(resid, z.real, z.imag, half, w.imag, grid)
        cell = 2 * half / (grid - 1)
    return z


def _g(model, z):
    from .measure import cauchy_transform

    return cauchy_transform(model.nu, z)


def _scan(resid, cx: float, cy: float, half: float, ymin: float, grid: int) -> complex:
    xs = np.linspace(cx - half, cx + half, grid)
    ys = np.linspace(max(cy - half, ymin), cy + half, grid)
    best, best_val = complex(cx, cy), math.inf
    for y in ys:
        if y <= 0:
            continue
        for x in xs:
            z = complex(x, y)
            v = resid(z)
            if v < best_val:
                best, best_val = z, v
    return best


def verify_closed_forms(tol: float = 1e-8) -> dict[str, float]:
    """Normalisation, mean and variance of the closed-form laws; returns the
    largest deviation per check.  Used before the oracles are trusted."""
    dev = {}
    for t in (0.5, 1.0, 2.0):
        a, b = -2 * math.sqrt(t), 2 * math.sqrt(t)
        mass = integrate.quad(lambda s: semicircle_density(t, s), a, b, epsabs=1e-13)[0]
        var = integrate.quad(lambda s: s * s * semicircle_density(t, s), a, b, epsabs=1e-13)[0]
        dev[f"semicircle t={t} mass"] = abs(mass - 1)
        dev[f"semicircle t={t} variance"] = abs(var - t)
        lo, hi = (1 - math.sqrt(t)) ** 2, (1 + math.sqrt(t)) ** 2
        dens = lambda s: marchenko_pastur_density(t, s).density
        atom = marchenko_pastur_density(t, 1.0).atom_at_zero
        m0 = integrate.quad(dens, lo, hi, epsabs=1e-13)[0] + atom
        m1 = integrate.quad(lambda s: s * dens(s), lo, hi, epsabs=1e-13)[0]
        m2 = integrate.quad(lambda s: s * s * dens(s), lo, hi, epsabs=1e-13)[0]
        dev[f"mp t={t} mass"] = abs(m0 - 1)
        dev[f"mp t={t} mean"] = abs(m1 - t)
        dev[f"mp t={t} variance"] = abs(m2 - m1 * m1 - t)
    return dev


__all__ = [
    "semicircle_density",
    "marchenko_pastur_density",
    "MPValue",
    "cauchy_poisson_density",
    "omega_dense_oracle",
    "verify_closed_forms",
]
