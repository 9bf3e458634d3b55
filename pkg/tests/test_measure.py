from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from fixtures import atom_plus_uniform, bernoulli, even_quadratic_tails, heavy_tail_levy, quadratic_density
from freeconv._numerics import Undecided
from freeconv.measure import (
    AtomComponent,
    MeasureRep,
    Monomial,
    PowerTail,
    Table,
    Uniform,
    atom_mass,
    cauchy_transform,
    cauchy_transform_sq,
    dirac,
    ext_mul,
    inverse_square_integral,
    moment,
    poisson_integral,
    support_components,
    total_mass,
    vertical_limit_G,
    weighted_quadratic_integral,
)


def brute_integral(piece, kernel, pole: float | None = None) -> float:
    """Adaptive quadrature of ``density * kernel``, split at table nodes
    and at ``pole`` so quad never straddles a kink."""
    lo, hi = piece.interval
    cuts = [float(v) for v in getattr(piece, "points", ())[1:-1]]
    if pole is not None and lo < pole < hi:
        cuts.append(pole)
    edges = [lo, *sorted(cuts), hi]
    fn = lambda s: float(piece.density(s)) * kernel(s)
    return sum(integrate.quad(fn, a, b, epsabs=1e-13, epsrel=1e-13, limit=500)[0] for a, b in zip(edges, edges[1:]))


def brute_cauchy(piece, z: complex, power: int = 1) -> complex:
    re = brute_integral(piece, lambda s: (1 / (z - s) ** power).real, z.real)
    im = brute_integral(piece, lambda s: (1 / (z - s) ** power).imag, z.real)
    return complex(re, im)


# ---------------------------------------------------------------------------
# examples
# ---------------------------------------------------------------------------


def test_total_mass_examples():
    assert total_mass(dirac(0.0)) == 1
    assert total_mass(MeasureRep((AtomComponent(1.0, 0.25),))) == pytest.approx(0.25, abs=1e-15)
    assert total_mass(even_quadratic_tails()) == pytest.approx(1.0, abs=1e-14)


def test_moment_examples():
    assert moment(MeasureRep((AtomComponent(1.0, 0.5),)), 2) == pytest.approx(0.5)
    assert moment(heavy_tail_levy(), 2) == math.inf
    t = 0.25
    uni = MeasureRep(pieces=(Uniform(1 - 2 * t, 0.0, 1.0),))
    assert moment(uni, 1) == pytest.approx(0.25, abs=1e-15)


def test_moment_undefined_when_both_tails_diverge():
    both = MeasureRep(pieces=(PowerTail(1.0, 1.5, -math.inf, -1.0), PowerTail(1.0, 1.5, 1.0, math.inf)))
    assert math.isnan(moment(both, 1))
    assert moment(both, 2) == math.inf


def test_moment_rejects_other_orders():
    with pytest.raises(ValueError):
        moment(dirac(0.0), 3)


def test_atom_mass_examples():
    assert atom_mass(bernoulli(), 1.0) == 0.5
    assert atom_mass(atom_plus_uniform(0.2), 0.5) == pytest.approx(0.4)
    assert atom_mass(quadratic_density(), 0.3) == 0.0


def test_support_components_examples():
    assert support_components(dirac(0.0)) == [(0.0, 0.0)]
    abutting = MeasureRep(pieces=(Monomial(1.0, 2, 0.0, -1.0, 0.0), Monomial(1.0, 2, 0.0, 0.0, 1.0)))
    assert support_components(abutting) == [(-1.0, 1.0)]
    mixed = MeasureRep((AtomComponent(3.0, 0.4),), (Uniform(0.6, 0.0, 1.0),))
    assert support_components(mixed) == [(0.0, 1.0), (3.0, 3.0)]


def test_cauchy_transform_examples():
    assert cauchy_transform(dirac(0.0), 1j) == pytest.approx(-1j, abs=1e-15)
    assert cauchy_transform(bernoulli(), 2j) == pytest.approx(-0.4j, abs=1e-15)
    uni = MeasureRep(pieces=(Uniform(1.0, 0.0, 1.0),))
    got = cauchy_transform(uni, 1j)
    assert got == pytest.approx(-0.34657359027997264 - 0.7853981633974483j, abs=1e-14)
    assert got == pytest.approx(brute_cauchy(uni.pieces[0], 1j), abs=1e-12)


def test_cauchy_transform_rejects_real_axis():
    with pytest.raises(ValueError):
        cauchy_transform(dirac(0.0), 1.0 + 0j)
    with pytest.raises(ValueError):
        cauchy_transform(dirac(0.0), 1.0 - 1j)


def test_inverse_square_integral_examples():
    assert inverse_square_integral(quadratic_density(), 0.0) == pytest.approx(1.0, abs=1e-14)
    assert inverse_square_integral(quadratic_density(), 0.5) == math.inf
    assert inverse_square_integral(even_quadratic_tails(), 0.0) == pytest.approx(1.0, abs=1e-14)


def test_weighted_quadratic_integral_examples():
    t = 0.5
    sigma = MeasureRep((AtomComponent(1.0, t / 2),))
    assert weighted_quadratic_integral(sigma, 0.0) == pytest.approx(0.5)
    for x in (-3.0, 0.0, 0.7, 5.0):
        assert weighted_quadratic_integral(heavy_tail_levy(), x) == math.inf
    assert weighted_quadratic_integral(sigma, 1.0) == math.inf


def test_vertical_limit_examples():
    lim = vertical_limit_G(quadratic_density(), 0.0)
    assert lim.exact and not lim.infinite
    assert lim.value.real == pytest.approx(-0.5, abs=1e-14)
    lim = vertical_limit_G(even_quadratic_tails(), 0.0)
    assert lim.value.real == pytest.approx(0.0, abs=1e-14)
    assert vertical_limit_G(dirac(2.0), 2.0).infinite


def test_vertical_limit_extrapolated_inside_density():
    # inside a uniform density the limit is a complex number with Im = -pi c
    uni = MeasureRep(pieces=(Uniform(1.0, 0.0, 1.0),))
    lim = vertical_limit_G(uni, 0.25)
    assert not lim.exact
    expected = complex(math.log(0.25 / 0.75), -math.pi)
    assert lim.value == pytest.approx(expected, abs=1e-8)


def test_ext_mul_rules():
    assert ext_mul(2.0, math.inf) == math.inf
    assert ext_mul(0.5, 0.25) == 0.125
    with pytest.raises(Undecided):
        ext_mul(0.0, math.inf)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "build",
    [
        lambda: AtomComponent(0.0, 0.0),
        lambda: AtomComponent(0.0, -1.0),
        lambda: Uniform(-1.0, 0.0, 1.0),
        lambda: Uniform(1.0, 1.0, 0.0),
        lambda: Monomial(1.0, 1, 0.0, -1.0, 1.0),
        lambda: Monomial(1.0, 1.5, 0.0, 0.0, 1.0),
        lambda: PowerTail(1.0, 1.0, 1.0, math.inf),
        lambda: PowerTail(1.0, 2.0, 0.0, math.inf),
        lambda: Table((0.0, 1.0), (1.0, -1.0)),
        lambda: Table((0.0, 0.0), (1.0, 1.0)),
        lambda: MeasureRep((AtomComponent(0.0, 1.0), AtomComponent(0.0, 1.0))),
        lambda: MeasureRep(pieces=(Uniform(1.0, 0.0, 1.0), Uniform(1.0, 0.5, 2.0))),
        lambda: MeasureRep(),
    ],
)
def test_invalid_measures_rejected(build):
    with pytest.raises(ValueError):
        build()


def test_zero_measure_allowed_when_explicit():
    zero = MeasureRep(allow_zero=True)
    assert zero.is_zero and total_mass(zero) == 0


def test_table_zero_is_undecided():
    tab = MeasureRep(pieces=(Table((0.0, 1.0, 2.0), (1.0, 0.0, 1.0)),))
    with pytest.raises(Undecided):
        inverse_square_integral(tab, 1.0)


def test_table_positive_floor_diverges():
    tab = MeasureRep(pieces=(Table((0.0, 1.0, 2.0), (1.0, 2.0, 1.0)),))
    assert inverse_square_integral(tab, 1.0) == math.inf


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

SAMPLE_MEASURES = [
    dirac(0.0),
    bernoulli(),
    atom_plus_uniform(0.2),
    quadratic_density(),
    even_quadratic_tails(),
    heavy_tail_levy(),
    MeasureRep(pieces=(Table((0.0, 0.5, 1.5, 2.0), (0.0, 1.0, 0.25, 0.0)),)),
    MeasureRep(pieces=(PowerTail(2.0, 2.5, 1.0, math.inf),)),
]

coords = st.floats(-5, 5, allow_nan=False)
heights = st.floats(1e-3, 10, allow_nan=False)


@pytest.mark.parametrize("m", SAMPLE_MEASURES)
@settings(max_examples=40, deadline=None)
@given(x=coords, y=heights)
def test_cauchy_transform_maps_to_lower_half_plane(m, x, y):
    assert cauchy_transform(m, complex(x, y)).imag < 0


@pytest.mark.parametrize("m", SAMPLE_MEASURES)
def test_cauchy_transform_mass_at_infinity(m):
    y = 1e6
    mass = total_mass(m)
    assert abs(1j * y * cauchy_transform(m, 1j * y) - mass) <= 1e-3 * mass


@pytest.mark.parametrize("m", SAMPLE_MEASURES)
@settings(max_examples=40, deadline=None)
@given(x=coords, y1=heights, dy=heights)
def test_quadratic_poisson_strictly_decreasing_in_height(m, x, y1, dy):
    def weighted(y):
        total = sum(a.mass * (1 + a.location**2) / ((x - a.location) ** 2 + y * y) for a in m.atoms)
        z = complex(x, y)
        for p in m.pieces:
            # (1+s^2)/((x-s)^2+y^2) = 1 + ((1+x^2-y^2) - 2x(x-s)) / |z-s|^2 written via G
            g = p.cauchy(z)
            total += p.mass() + (1 + x * x - y * y) * (-g.imag / y) - 2 * x * g.real
        return total

    y2 = y1 + dy
    assert weighted(y2) < weighted(y1)


@pytest.mark.parametrize(
    "m, alpha",
    [
        (quadratic_density(), 0.0),
        (even_quadratic_tails(), 0.0),
        (bernoulli(), 0.0),
        (atom_plus_uniform(0.2), 1.5),
        (MeasureRep(pieces=(PowerTail(2.0, 2.5, 1.0, math.inf),)), -0.5),
        (MeasureRep(pieces=(Monomial(1.0, 2, 1.0, 1.0, 2.0),)), 1.0),
        (MeasureRep(pieces=(Monomial(1.0, 3, -1.0, -1.0, 0.5),)), -1.0),
    ],
)
def test_finite_inverse_square_matches_direct_quadrature(m, alpha):
    j2 = inverse_square_integral(m, alpha)
    assert math.isfinite(j2)
    direct = sum(a.mass / (alpha - a.location) for a in m.atoms)
    for p in m.pieces:
        lo, hi = p.interval
        pts = [v for v in (alpha,) if lo < v < hi] if math.isfinite(lo) and math.isfinite(hi) else None
        direct += integrate.quad(
            lambda s: float(p.density(s)) / (alpha - s), lo, hi, points=pts or None, epsabs=1e-14, epsrel=1e-13, limit=500
        )[0]
    lim = vertical_limit_G(m, alpha)
    assert lim.value.real == pytest.approx(direct, abs=1e-9)


piece_strategy = st.one_of(
    st.builds(
        lambda c, lo, w: Uniform(c, lo, lo + w),
        st.floats(0.1, 5),
        st.floats(-3, 3),
        st.floats(0.1, 4),
    ),
    st.builds(
        lambda c, k, lo, w, shift: Monomial(c, 2 * k, lo + shift * w, lo, lo + w),
        st.floats(0.1, 5),
        st.integers(0, 3),
        st.floats(-3, 3),
        st.floats(0.1, 4),
        st.floats(0, 1),
    ),
    st.builds(
        lambda c, k, lo, w: Monomial(c, 2 * k + 1, lo, lo, lo + w),
        st.floats(0.1, 5),
        st.integers(0, 2),
        st.floats(-3, 3),
        st.floats(0.1, 4),
    ),
    st.builds(
        lambda c, p, edge, side: PowerTail(c, p, edge, math.inf) if side else PowerTail(c, p, -math.inf, -edge),
        st.floats(0.1, 5),
        st.floats(1.2, 4.5),
        st.floats(0.2, 3),
        st.booleans(),
    ),
    st.builds(
        lambda lo, vals: Table(tuple(lo + 0.5 * np.arange(len(vals))), tuple(vals)),
        st.floats(-3, 3),
        st.lists(st.floats(0.05, 3), min_size=2, max_size=8),
    ),
)


@settings(max_examples=60, deadline=None)
@given(piece=piece_strategy, x=st.floats(-6, 6), y=st.floats(0.05, 5))
def test_closed_forms_match_brute_quadrature(piece, x, y):
    z = complex(x, y)
    got = piece.cauchy(z)
    want = brute_cauchy(piece, z)
    assert abs(got - want) <= 1e-10 * max(1.0, abs(want))
    mass = brute_integral(piece, lambda s: 1.0)
    assert piece.mass() == pytest.approx(mass, abs=1e-10, rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(piece=piece_strategy, x=st.floats(-6, 6), y=st.floats(0.1, 5))
def test_squared_kernel_matches_brute_quadrature(piece, x, y):
    z = complex(x, y)
    got = piece.cauchy2(z)
    want = brute_cauchy(piece, z, power=2)
    assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


def test_poisson_integral_is_imaginary_part():
    m = atom_plus_uniform(0.2)
    z = complex(0.3, 0.7)
    assert poisson_integral(m, z.real, z.imag) == pytest.approx(-cauchy_transform(m, z).imag / z.imag, rel=1e-14)


def test_squared_transform_is_minus_derivative():
    m = quadratic_density()
    z, h = complex(0.4, 0.3), 1e-6
    deriv = (cauchy_transform(m, z + h) - cauchy_transform(m, z - h)) / (2 * h)
    assert cauchy_transform_sq(m, z) == pytest.approx(-deriv, rel=1e-7)


def test_scaled_and_shifted():
    m = atom_plus_uniform(0.2)
    assert total_mass(m.scaled(3.0)) == pytest.approx(3.0)
    moved = m.shifted(2.0)
    assert atom_mass(moved, 2.5) == pytest.approx(0.4)
    assert moment(moved, 1) == pytest.approx(moment(m, 1) + 2.0)
    with pytest.raises(ValueError):
        heavy_tail_levy().shifted(1.0)
