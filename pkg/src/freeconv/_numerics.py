"""Shared numerical plumbing: error types, fixed Gauss-Legendre rules and
the vertical-limit extrapolation used for boundary values."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np


class FreeConvError(Exception):
    """Base class for engine errors."""


class Undecided(FreeConvError):
    """A verdict that cannot be certified from the data at hand."""


class NonConvergence(FreeConvError):
    """An iterative or extrapolated computation failed its acceptance test."""


class NumericalConflict(FreeConvError):
    """Two independent routes to the same quantity disagree."""


# Richardson acceptance for vertical limits.
EPS0 = 1e-2
N_HALVINGS = 21
LIMIT_TOL = 1e-9


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def gl_integrate(func: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int = 24):
    """Fixed-order Gauss-Legendre rule on [a, b] for a vectorised integrand."""
    x, w = gauss_legendre(n)
    half = 0.5 * (b - a)
    s = 0.5 * (a + b) + half * x
    return half * np.sum(w * func(s))


@dataclass(frozen=True)
class LimitResult:
    value: complex
    error: float
    eps: float


def vertical_limit(
    func: Callable[[float], complex],
    eps0: float = EPS0,
    n: int = N_HALVINGS,
    tol: float = LIMIT_TOL,
) -> LimitResult:
    """Limit of ``func(eps)`` as ``eps -> 0+`` by first-order Richardson
    extrapolation along ``eps0 * 2**-j``.

    Accepts as soon as three successive extrapolated values agree within
    ``tol * max(1, |value|)``.  Raises :class:`NonConvergence` otherwise; the
    exception carries the raw sequence in ``args[1]``.
    """
    raw = []
    extrap = []
    for j in range(n):
        eps = eps0 * 2.0 ** (-j)
        raw.append(complex(func(eps)))
        if j == 0:
            continue
        extrap.append(2.0 * raw[-1] - raw[-2])
        if len(extrap) >= 3:
            r0, r1, r2 = extrap[-3:]
            scale = tol * max(1.0, abs(r2))
            if abs(r2 - r1) <= scale and abs(r1 - r0) <= scale:
                return LimitResult(r2, max(abs(r2 - r1), abs(r1 - r0)), eps)
    raise NonConvergence("vertical limit did not settle", raw)


def is_diverging(raw: list[complex], window: int = 5) -> bool:
    """Heuristic growth test on an extrapolation sequence: the tail keeps
    increasing in modulus without geometric decay of its increments."""
    if len(raw) < window + 1:
        return False
    tail = [abs(v) for v in raw[-(window + 1):]]
    steps = np.diff(tail)
    if np.any(steps <= 0):
        return False
    ratios = steps[1:] / steps[:-1]
    return bool(np.all(ratios >= 0.9))


def is_pole(raw: list[complex], window: int = 5) -> bool:
    """True when ``|raw|`` grows like ``1/eps`` along the halving sequence."""
    if len(raw) < window + 1:
        return False
    tail = np.abs(np.asarray(raw[-(window + 1):]))
    if np.any(tail[:-1] <= 0):
        return False
    ratios = tail[1:] / tail[:-1]
    return bool(np.all(ratios > 1.8))


def fmt_ext(x: float) -> str:
    """Render an extended real for reports."""
    if math.isinf(x):
        return "+inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "undefined"
    return f"{x:.12g}"
