from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fixtures import bernoulli, free_poisson, heavy_tail_levy, uniform01
from freeconv.measure import AtomComponent, MeasureRep, Uniform, dirac
from freeconv.transform import (
    Cauchy,
    F_transform,
    LevyHincin,
    Stable,
    phi_eval,
    s_mu,
    scale_semigroup,
    variance_of_mu,
)

DESCRIPTORS = [
    free_poisson(1.0),
    free_poisson(0.3),
    LevyHincin(0.0, heavy_tail_levy()),
    LevyHincin(-1.0, MeasureRep((AtomComponent(-2.0, 0.3),), (Uniform(0.5, 0.0, 1.0),))),
    Stable(2.0),
    Stable(0.5, 0.0),
    Stable(0.5, 1.0),
    Stable(1.5, -0.7),
    Stable(1.0, 0.4),
    Stable(1.0, 0.0, 2.5),
    Cauchy(1.0, 0.5),
]

upper = st.builds(complex, st.floats(-20, 20), st.floats(1e-3, 20))


def test_F_transform_examples():
    for z in (1j, 2 + 0.5j, -3 + 4j):
        assert F_transform(dirac(1.5), z) == pytest.approx(z - 1.5, abs=1e-14)
    assert F_transform(bernoulli(), 2j) == pytest.approx(2.5j, abs=1e-14)
    assert F_transform(uniform01(), 1j) == pytest.approx(1 / (-0.34657359027997264 - 0.7853981633974483j), abs=1e-13)


def test_phi_eval_examples():
    assert phi_eval(free_poisson(1.0), 2j) == pytest.approx(0.8 - 0.4j, abs=1e-14)
    for w in (1j, 1 + 1j, -2 + 0.3j):
        assert phi_eval(Stable(2.0), w) == pytest.approx(1 / w, abs=1e-14)
        assert phi_eval(LevyHincin(0.7, MeasureRep(allow_zero=True)), w) == 0.7


def test_phi_eval_matches_free_poisson_closed_form():
    for t in (0.25, 1.0, 3.0):
        for w in (0.5 + 0.1j, -1 + 2j, 10 + 1j):
            assert phi_eval(free_poisson(t), w) == pytest.approx(t * w / (w - 1), rel=1e-13)


def test_stable_one_is_cauchy_when_symmetric():
    for w in (1j, 3 + 2j):
        assert phi_eval(Stable(1.0, 0.0), w) == pytest.approx(phi_eval(Cauchy(0.0, math.pi), w), abs=1e-14)


def test_phi_eval_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        phi_eval(free_poisson(1.0), 1.0 + 0j)


def test_scale_semigroup_examples():
    half = scale_semigroup(free_poisson(1.0), 0.5)
    assert half.gamma == pytest.approx(0.25)
    assert half.sigma.atoms == (AtomComponent(1.0, 0.25),)
    for phi in DESCRIPTORS:
        assert phi_eval(scale_semigroup(phi, 1.0), 0.3 + 2j) == phi_eval(phi, 0.3 + 2j)
    stable = Stable(0.5, 0.0)
    w = 1 + 1j
    assert abs(phi_eval(scale_semigroup(stable, 3.0), w) - 3 * phi_eval(stable, w)) < 1e-12


def test_scale_semigroup_rejects_nonpositive():
    with pytest.raises(ValueError):
        scale_semigroup(Stable(2.0), 0.0)


def test_s_mu_examples():
    rec = s_mu(free_poisson(0.5))
    assert rec.exists and rec.location == pytest.approx(0.0, abs=1e-15) and rec.atom_mass == pytest.approx(0.5)
    assert not s_mu(LevyHincin(0.0, dirac(0.0, 1.0))).exists
    rec = s_mu(LevyHincin(5.0, MeasureRep((AtomComponent(1.0, 0.1),))))
    assert rec.exists
    assert rec.location == pytest.approx(4.9, abs=1e-14)
    assert rec.atom_mass == pytest.approx(0.8, abs=1e-14)


def test_s_mu_is_a_zero_of_F():
    # F_mu(s_mu) = 0 means s_mu = F_mu^{-1}(0) = phi(0)
    phi = LevyHincin(5.0, MeasureRep((AtomComponent(1.0, 0.1),)))
    rec = s_mu(phi)
    assert phi(1e-9j).real == pytest.approx(rec.location, abs=1e-8)


def test_s_mu_continuity_in_degenerate_limit():
    gamma = 2.0
    for eps in (1e-1, 1e-2, 1e-3, 1e-4):
        rec = s_mu(LevyHincin(gamma, MeasureRep((AtomComponent(1.0, eps),))))
        assert rec.atom_mass == pytest.approx(1 - 2 * eps, abs=1e-14)
        assert rec.location == pytest.approx(gamma - eps, abs=1e-14)


def test_s_mu_rejects_degenerate():
    with pytest.raises(ValueError):
        s_mu(LevyHincin(1.0, MeasureRep(allow_zero=True)))


def test_s_mu_for_closed_forms_is_absent():
    assert not s_mu(Stable(0.5)).exists
    assert not s_mu(Cauchy()).exists


def test_variance_examples():
    assert variance_of_mu(free_poisson(1.0)) == pytest.approx(1.0)
    assert variance_of_mu(LevyHincin(0.0, heavy_tail_levy())) == math.inf
    assert variance_of_mu(LevyHincin(0.0, dirac(0.0, 0.1))) == pytest.approx(0.1)
    assert variance_of_mu(Stable(2.0, scale=2.0)) == 2.0
    assert variance_of_mu(Stable(1.5)) == math.inf


@pytest.mark.parametrize(
    "a, theta",
    [(0.0, 0.0), (2.5, 0.0), (0.5, 1.5), (1.0, -2.0)],
)
def test_stable_rejects_inadmissible(a, theta):
    with pytest.raises(ValueError):
        Stable(a, theta)


@pytest.mark.parametrize("phi", DESCRIPTORS)
@settings(max_examples=50, deadline=None)
@given(w=upper)
def test_nevanlinna_direction(phi, w):
    assert phi_eval(phi, w).imag <= 1e-12 * max(1.0, abs(phi_eval(phi, w)))


@pytest.mark.parametrize("nu", [dirac(0.0), bernoulli(), uniform01(), MeasureRep(pieces=(Uniform(0.5, -1.0, 1.0),))])
def test_F_transform_normalised_at_infinity(nu):
    y = 1e6
    assert abs(F_transform(nu, 1j * y) / (1j * y) - 1) < 1e-3


@settings(max_examples=50, deadline=None)
@given(w=upper, nu_loc=st.floats(-5, 5), spread=st.floats(0.1, 3))
def test_F_transform_increases_imaginary_part(w, nu_loc, spread):
    nu = MeasureRep(pieces=(Uniform(1 / spread, nu_loc, nu_loc + spread),))
    assert F_transform(nu, w).imag >= w.imag * (1 - 1e-12)


@pytest.mark.parametrize("phi", DESCRIPTORS)
@settings(max_examples=25, deadline=None)
@given(w=upper, s=st.floats(0.05, 5), t=st.floats(0.05, 5))
def test_semigroup_additivity(phi, w, s, t):
    total = phi_eval(scale_semigroup(phi, s + t), w)
    parts = phi_eval(scale_semigroup(phi, s), w) + phi_eval(scale_semigroup(phi, t), w)
    assert abs(total - parts) <= 1e-12 * max(1.0, abs(total))


@pytest.mark.parametrize("phi", DESCRIPTORS)
def test_derivative_matches_finite_difference(phi):
    for w in (0.3 + 0.7j, -2 + 1.5j):
        h = 1e-6
        fd = (phi(w + h) - phi(w - h)) / (2 * h)
        assert phi.derivative(w) == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_stable_principal_branch():
    phi = Stable(0.5, 0.0)
    w = cmath.rect(2.0, 3.0)
    expected = -(1j) * cmath.exp(1j * math.pi / 2 * (0.5 - 1)) * cmath.exp(0.5 * cmath.log(w))
    assert phi(w) == pytest.approx(expected, rel=1e-14)
    assert np.isfinite(abs(phi(-1 + 1e-12j)))
