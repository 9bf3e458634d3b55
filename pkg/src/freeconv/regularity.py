"""Regularity of the free convolution: density, atoms, boundary-point
classification, property (H), support structure and analyticity reports."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from ._numerics import NonConvergence, NumericalConflict, Undecided
from .inversion import (
    TIE_TOL,
    ConvolutionModel,
    IntervalSet,
    angular_derivative,
    positivity_set,
)
from .measure import (
    AtomComponent,
    Monomial,
    MeasureRep,
    PowerTail,
    Table,
    Uniform,
    _real_axis_integrals,
    atom_mass,
    moment,
    poisson_integral,
    support_components,
    total_mass,
    vertical_limit_G,
    weighted_quadratic_integral,
)
from .transform import Cauchy, LevyHincin, PhiDescriptor, Stable, s_mu

INTERIOR = "interior-of-V"


@dataclass(frozen=True)
class BoundaryPoint:
    alpha: float
    kind: str
    omega_prime: float
    image: float
    certificates: dict = field(default_factory=dict)
    margin: float = math.nan  # 1 - product; ties sit inside the tie band

    @property
    def tie(self) -> bool:
        return math.isinf(self.omega_prime)


@dataclass(frozen=True)
class ConvolutionAtom:
    location: float
    mass: float
    boundary_equality: bool = False


@dataclass
class DensityProfile:
    samples: list[tuple[float, float]]
    atoms: list[ConvolutionAtom]
    components: list[tuple[float, float]]
    zero_points: list[tuple[float, BoundaryPoint]]
    ac_mass: float = math.nan
    mean: float = math.nan
    variance: float = math.nan
    warnings: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class PropertyHVerdict:
    status: str  # "holds", "fails" or "undecided"
    witness: float | str | None = None
    reason: str = ""

    def __str__(self) -> str:
        if self.status == "holds":
            return "holds"
        if self.status == "fails":
            return f"fails({self.witness})"
        return f"undecided({self.reason})"


# ---------------------------------------------------------------------------
# Density
# ---------------------------------------------------------------------------


def _density_from_x(model: ConvolutionModel, x: float) -> float:
    fx = model.f(x)
    if fx <= 0:
        return 0.0
    return fx * poisson_integral(model.nu, x, fx) / math.pi


def density_at(model: ConvolutionModel, s: float, guess: float | None = None) -> float:
    """Density of the absolutely continuous part at ``s``."""
    return _density_from_x(model, model.h_inverse(s, guess))


def density_curve(model: ConvolutionModel, s_values) -> np.ndarray:
    """Density on an increasing grid, warm-starting each inversion."""
    out = np.empty(len(s_values))
    guess = None
    for i, s in enumerate(s_values):
        x = model.h_inverse(float(s), guess)
        out[i] = _density_from_x(model, x)
        guess = x
    return out


def atoms_of_convolution(model: ConvolutionModel) -> list[ConvolutionAtom]:
    """Atoms sit at ``alpha + s_mu`` for atoms ``alpha`` of ``nu`` with
    ``nu({alpha}) + mu({s_mu}) >= 1``."""
    rec = s_mu(model.phi)
    if not rec.exists:
        return []
    out = []
    for a in sorted(model.nu.atoms, key=lambda a: a.location):
        excess = a.mass + rec.atom_mass - 1.0
        if excess > TIE_TOL:
            out.append(ConvolutionAtom(a.location + rec.location, excess))
        elif excess >= -TIE_TOL:
            out.append(ConvolutionAtom(a.location + rec.location, 0.0, boundary_equality=True))
    return out


# ---------------------------------------------------------------------------
# Boundary points
# ---------------------------------------------------------------------------


def classify_boundary_point(model: ConvolutionModel, alpha: float):
    """Type A/B/C classification of a zero of ``f``."""
    alpha = float(alpha)
    if model.in_V(alpha):
        return INTERIOR
    lim = vertical_limit_G(model.nu, alpha)
    phi = model.phi
    if lim.infinite:
        w = atom_mass(model.nu, alpha)
        rec = s_mu(phi)
        i3 = phi.real_quotient(0.0)
        product = i3 / w
        certs = {"nu_atom": w, "mu_atom": rec.atom_mass, "I3": i3}
        kind = "A"
        identity = alpha + rec.location if rec.exists else math.nan
    elif not lim.exact:
        raise Undecided(f"vertical limit of G at {alpha} only known numerically")
    else:
        L = lim.value.real
        _, i1 = _real_axis_integrals(model.nu, alpha)
        if L != 0:
            kind = "B"
            i4 = phi.real_quotient(1.0 / L) / L**2
            identity = alpha + phi.boundary_value(1.0 / L).real
        else:
            kind = "C"
            i4 = phi.variance()
            identity = alpha + phi.drift_at_infinity()
        product = i1 * i4
        certs = {"G_limit": L, "I1": i1, "I4": i4}
    certs["product"] = product
    if product > 1.0 + TIE_TOL:
        raise NumericalConflict(f"f({alpha}) = 0 but the type-{kind} product is {product} > 1")
    omega_prime = angular_derivative(product)
    image = model.h(alpha)
    certs["image_identity"] = identity
    if math.isfinite(identity) and abs(identity - image) > 1e-8 * max(1.0, abs(image)):
        raise NumericalConflict(f"h({alpha}) = {image} disagrees with the type-{kind} identity {identity}")
    return BoundaryPoint(alpha, kind, omega_prime, image, certs, 1.0 - product)


# ---------------------------------------------------------------------------
# Profiles and support
# ---------------------------------------------------------------------------


def _x_window(model: ConvolutionModel, window) -> tuple[float, float]:
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError("window must satisfy lo < hi")
    return model.h_inverse(lo), model.h_inverse(hi)


def _merge(intervals: list[tuple[float, float]]) -> list[tuple[float, float]]:
    out: list[list[float]] = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1] + 1e-12 * max(1.0, abs(lo)):
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [tuple(iv) for iv in out]


def _support_in_window(model, window, vset: IntervalSet, atoms) -> list[tuple[float, float]]:
    comps = _merge([(model.h(a), model.h(b)) for a, b in vset])
    lo, hi = window
    for at in atoms:
        if at.mass > 0 and lo <= at.location <= hi:
            if not any(a <= at.location <= b for a, b in comps):
                comps.append((at.location, at.location))
    return sorted(comps)


def _boundary_candidates(vset: IntervalSet) -> list[float]:
    pts = []
    n = len(vset.intervals)
    for i, (a, b) in enumerate(vset.intervals):
        if not (i == 0 and vset.truncated[0]):
            pts.append(a)
        if not (i == n - 1 and vset.truncated[1]):
            pts.append(b)
    return sorted(set(pts))


def density_profile(model: ConvolutionModel, window, n: int = 128) -> DensityProfile:
    """Sample the density over the part of ``V`` mapped into ``window``.

    Each component of ``V`` gets ``n`` Chebyshev-clustered nodes; the
    matching quadrature weights give the mass, mean and variance of the
    absolutely continuous part.
    """
    if n < 32:
        raise ValueError("n must be at least 32")
    notes: list[str] = []
    xlo, xhi = _x_window(model, window)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        vset = positivity_set(model, (xlo, xhi), max(64, n // 2))
    notes.extend(str(c.message) for c in caught)
    theta = (np.arange(n) + 0.5) * math.pi / n
    samples: list[tuple[float, float]] = []
    m0 = m1 = m2 = 0.0
    for a, b in vset:
        half = 0.5 * (b - a)
        xs = 0.5 * (a + b) - half * np.cos(theta)
        guess = None
        for th, x in zip(theta, xs):
            fx = model.f(float(x), guess)
            guess = fx if fx > 0 else None
            p = _density_from_x(model, float(x))
            s = model.h(float(x))
            samples.append((s, p))
            if p > 0:
                wt = (math.pi / n) * half * math.sin(th) * model.h_prime(float(x))
                m0 += wt * p
                m1 += wt * p * s
                m2 += wt * p * s * s
    for x in _boundary_candidates(vset):
        samples.append((model.h(x), 0.0))
    samples.sort()
    atoms = [a for a in atoms_of_convolution(model) if window[0] <= a.location <= window[1]]
    comps = _support_in_window(model, window, vset, atoms)
    zeros = []
    for x in _boundary_candidates(vset):
        try:
            bp = classify_boundary_point(model, x)
        except (Undecided, NonConvergence, NumericalConflict) as exc:
            notes.append(f"boundary point {x}: {exc}")
            continue
        if bp != INTERIOR:
            zeros.append((bp.image, bp))
    total = m0 + sum(a.mass for a in atoms)
    mean = (m1 + sum(a.mass * a.location for a in atoms)) / total if total > 0 else math.nan
    second = (m2 + sum(a.mass * a.location**2 for a in atoms)) / total if total > 0 else math.nan
    if not vset.intervals:
        notes.append("V does not meet the window: density vanishes there")
    return DensityProfile(samples, atoms, comps, zeros, m0, mean, second - mean**2, notes)


def _count_components(m: MeasureRep) -> tuple[int, int]:
    """``(n(supp m), n(R minus supp m))``."""
    comps = support_components(m)
    gaps = len(comps) - 1
    if comps[0][0] > -math.inf:
        gaps += 1
    if comps[-1][1] < math.inf:
        gaps += 1
    return len(comps), gaps


def component_bound(model: ConvolutionModel) -> int | None:
    """Upper bound on the number of components of the support."""
    if not isinstance(model.phi, LevyHincin):
        return None
    n_nu, gaps_nu = _count_components(model.nu)
    n_sigma, _ = _count_components(model.phi.sigma)
    rec = s_mu(model.phi)
    atoms_bound = math.floor(1.0 / (1.0 - rec.atom_mass)) if rec.exists else 1
    return 2 + n_nu + (1 + 3 * n_sigma) * gaps_nu + atoms_bound


@dataclass(frozen=True)
class SupportReport:
    components: list[tuple[float, float]]
    count: int
    bound: int | None
    bound_satisfied: bool | None
    truncated: tuple[bool, bool] = (False, False)


def support_report(model: ConvolutionModel, window, n_seed: int = 256) -> SupportReport:
    xlo, xhi = _x_window(model, window)
    vset = positivity_set(model, (xlo, xhi), n_seed)
    atoms = atoms_of_convolution(model)
    comps = _support_in_window(model, window, vset, atoms)
    bound = component_bound(model)
    ok = None if bound is None else len(comps) <= bound
    return SupportReport(comps, len(comps), bound, ok, vset.truncated)


# ---------------------------------------------------------------------------
# Property (H)
# ---------------------------------------------------------------------------


def _levy_inf_on_support(sigma: MeasureRep) -> tuple[float, float] | None:
    """Smallest value of ``int (1+s^2)/(x-s)^2 dsigma`` over the support of
    ``sigma``; only structural zeros of the density can give a finite one."""
    best = None
    for p in sigma.pieces:
        cands = []
        if isinstance(p, Monomial) and p.k >= 2:
            cands.append(p.center)
        if isinstance(p, Table):
            cands.extend(x for x, v in zip(p.points, p.values) if v == 0)
        for x in cands:
            val = weighted_quadratic_integral(sigma, x)
            if best is None or val < best[1]:
                best = (x, val)
    return best


def _gap_minimum(sigma: MeasureRep, a: float, b: float) -> tuple[float, float]:
    """Minimum of the convex map ``x -> int (1+s^2)/(x-s)^2 dsigma`` on a
    bounded gap ``(a, b)`` of the support."""
    func = lambda x: weighted_quadratic_integral(sigma, x)
    res = minimize_scalar(func, bounds=(a, b), method="bounded", options={"xatol": 1e-12 * max(1.0, abs(a), abs(b))})
    x, val = float(res.x), float(res.fun)
    for e in (a, b):
        ev = func(e)
        if ev < val:
            x, val = e, ev
    return x, val


def _unbounded_witness(sigma: MeasureRep, start: float, direction: int) -> float | None:
    x = start + direction
    for _ in range(200):
        if weighted_quadratic_integral(sigma, x) <= 1.0:
            return x
        x = start + 2 * (x - start)
    return None


def property_H(phi: PhiDescriptor, probe_window=(-10.0, 10.0), n_probe: int = 201) -> PropertyHVerdict:
    """Whether ``mu`` gives a positive analytic density against every
    ``nu``: the quadratic Lévy integral must exceed 1 everywhere and the
    variance must be infinite."""
    if isinstance(phi, Stable) and phi.a == 2:
        phi = LevyHincin(0.0, MeasureRep((AtomComponent(0.0, phi.scale),)))
    if isinstance(phi, LevyHincin):
        return _property_H_levy(phi.sigma)
    return _property_H_closed(phi, probe_window, n_probe)


def _property_H_levy(sigma: MeasureRep) -> PropertyHVerdict:
    if sigma.is_zero:
        return PropertyHVerdict("fails", "finite-variance", "degenerate law")
    try:
        if math.isfinite(total_mass(sigma) + moment(sigma, 2)):
            return PropertyHVerdict("fails", "finite-variance")
        found = _levy_inf_on_support(sigma)
        if found is not None and found[1] <= 1.0:
            return PropertyHVerdict("fails", found[0], "integral at most 1 inside the support")
        comps = support_components(sigma)
        if comps[0][0] > -math.inf:
            w = _unbounded_witness(sigma, comps[0][0], -1)
            return PropertyHVerdict("fails", w, "integral decays on the left unbounded gap")
        if comps[-1][1] < math.inf:
            w = _unbounded_witness(sigma, comps[-1][1], 1)
            return PropertyHVerdict("fails", w, "integral decays on the right unbounded gap")
        for (_, a), (b, _) in zip(comps, comps[1:]):
            x, val = _gap_minimum(sigma, a, b)
            if val <= 1.0:
                return PropertyHVerdict("fails", x, "integral at most 1 in a gap of the support")
    except Undecided as exc:
        return PropertyHVerdict("undecided", reason=str(exc))
    return PropertyHVerdict("holds")


def _property_H_closed(phi, probe_window, n_probe) -> PropertyHVerdict:
    if not math.isinf(phi.variance()):
        return PropertyHVerdict("fails", "finite-variance")
    # the quotient increases as eps decreases, so a value above 1 at any
    # eps certifies the limit; the real-axis limit is used when finite
    for x in np.linspace(probe_window[0], probe_window[1], n_probe):
        try:
            val = phi.real_quotient(float(x))
        except NonConvergence:
            return PropertyHVerdict("undecided", reason=f"no boundary limit at {x}")
        if val <= 1.0:
            return PropertyHVerdict("fails", float(x))
    return PropertyHVerdict("holds", reason=f"verified on {n_probe} probes in {tuple(probe_window)}")


# ---------------------------------------------------------------------------
# Analyticity at zeros
# ---------------------------------------------------------------------------


def _same_formula(p, q) -> bool:
    if type(p) is not type(q):
        return False
    if isinstance(p, Uniform):
        return p.c == q.c
    if isinstance(p, Monomial):
        return (p.c, p.k, p.center) == (q.c, q.k, q.center)
    return False


def _density_analytic_at(m: MeasureRep, x: float, allow_atom: bool = False):
    """Structural analyticity of the density part of ``m`` at ``x``;
    returns True, False or "unknown"."""
    if atom_mass(m, x) > 0 and not allow_atom:
        return False
    hits = [p for p in m.pieces if p.interval[0] <= x <= p.interval[1]]
    if not hits:
        return True
    if len(hits) == 1:
        p = hits[0]
        if p.interval[0] < x < p.interval[1]:
            if isinstance(p, Table):
                return True if p.analytic else "unknown"
            return bool(p.analytic)
        return False
    if len(hits) == 2 and _same_formula(*hits) and all(p.analytic for p in hits):
        return True
    return False


def _sigma_analytic_at(phi, point: float | None):
    """Analyticity of the Lévy measure at a real point, or at infinity when
    ``point`` is None."""
    if isinstance(phi, Stable) and phi.a == 2:
        return point is None or point != 0
    if not isinstance(phi, LevyHincin):
        return "unknown"
    sigma = phi.sigma
    if point is not None:
        return _density_analytic_at(sigma, point)
    tails = [p for p in sigma.pieces if isinstance(p, PowerTail)]
    unbounded = [p for p in sigma.pieces if not all(math.isfinite(e) for e in p.interval)]
    if not unbounded:
        return True
    # c|s|^-p on both sides becomes c|u|^(p-2) du under s = 1/u
    if len(tails) == 2 and tails[0].c == tails[1].c and tails[0].p == tails[1].p:
        q = tails[0].p - 2
        return bool(float(q).is_integer() and q >= 0 and int(q) % 2 == 0)
    return False


def _isolated(model: ConvolutionModel, alpha: float) -> bool:
    delta = 1e-3 * (1.0 + abs(alpha))
    for k in range(31):
        d = delta * 2.0 ** (-k)
        if not (model.in_V(alpha - d) and model.in_V(alpha + d)):
            return False
    return True


@dataclass(frozen=True)
class AnalyticityReport:
    analytic: bool | str
    reason: str
    identity_check: float = math.nan


def analyticity_report(model: ConvolutionModel, zero: BoundaryPoint) -> AnalyticityReport:
    """Decide analyticity of the density at the image of a boundary point."""
    ident = zero.certificates.get("image_identity", math.nan)
    check = abs(ident - zero.image) if math.isfinite(ident) else math.nan
    if math.isinf(zero.omega_prime):
        return AnalyticityReport(False, "angular derivative is infinite", check)
    if not _isolated(model, zero.alpha):
        return AnalyticityReport(False, "zero is not isolated", check)
    if zero.kind == "A":
        fstar = 0.0
    elif zero.kind == "B":
        fstar = 1.0 / zero.certificates["G_limit"]
    else:
        fstar = None
    sig = _sigma_analytic_at(model.phi, fstar)
    where = "infinity" if fstar is None else f"{fstar:.12g}"
    if sig == "unknown":
        return AnalyticityReport("unknown", f"Lévy measure analyticity at {where} not certifiable", check)
    if not sig:
        return AnalyticityReport(False, f"Lévy measure not analytic at {where}", check)
    if zero.kind == "A":
        nu_ok = _density_analytic_at(model.nu, zero.alpha, allow_atom=True)
        label = "meromorphic"
    else:
        nu_ok = _density_analytic_at(model.nu, zero.alpha)
        label = "analytic"
    if nu_ok == "unknown":
        return AnalyticityReport("unknown", f"nu {label} at {zero.alpha:.12g} not certifiable", check)
    if nu_ok:
        return AnalyticityReport(True, f"nu {label} at {zero.alpha:.12g}", check)
    return AnalyticityReport(False, f"nu not {label} at {zero.alpha:.12g}", check)


# ---------------------------------------------------------------------------
# Combined diagnosis
# ---------------------------------------------------------------------------


@dataclass
class Diagnosis:
    property_H: PropertyHVerdict
    variance_mu: float
    s_mu: tuple[float, float] | None
    component_count: int
    component_bound: int | None
    boundary_points: list[BoundaryPoint]
    analyticity_reports: list[tuple[float, AnalyticityReport]]
    notes: list[str] = field(default_factory=list)


def diagnose(model: ConvolutionModel, window, n_seed: int = 256) -> Diagnosis:
    notes: list[str] = []
    verdict = property_H(model.phi)
    rec = s_mu(model.phi)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        xlo, xhi = _x_window(model, window)
        vset = positivity_set(model, (xlo, xhi), n_seed)
    notes.extend(str(c.message) for c in caught)
    atoms = atoms_of_convolution(model)
    comps = _support_in_window(model, window, vset, atoms)
    massive = [a.location for a in atoms if a.mass > 0]
    for left, right in zip(massive, massive[1:]):
        # expected from known results, reported rather than asserted
        if not any(left < lo < right or left < hi < right or lo < left < hi for lo, hi in comps if lo < hi):
            notes.append(f"expected some density between atoms {left:.12g} and {right:.12g}; none found in the window")
    bps: list[BoundaryPoint] = []
    reports = []
    for x in _boundary_candidates(vset):
        try:
            bp = classify_boundary_point(model, x)
        except (Undecided, NonConvergence, NumericalConflict) as exc:
            notes.append(f"boundary point {x:.12g}: undecided ({exc})")
            continue
        if bp == INTERIOR:
            continue
        bps.append(bp)
        reports.append((bp.image, analyticity_report(model, bp)))
    return Diagnosis(
        verdict,
        model.phi.variance(),
        (rec.location, rec.atom_mass) if rec.exists else None,
        len(comps),
        component_bound(model),
        bps,
        reports,
        notes,
    )


__all__ = [
    "INTERIOR",
    "BoundaryPoint",
    "ConvolutionAtom",
    "DensityProfile",
    "PropertyHVerdict",
    "SupportReport",
    "AnalyticityReport",
    "Diagnosis",
    "density_at",
    "density_curve",
    "density_profile",
    "atoms_of_convolution",
    "classify_boundary_point",
    "property_H",
    "support_report",
    "component_bound",
    "analyticity_report",
    "diagnose",
]
