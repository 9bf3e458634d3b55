"""Model constructors shared by the test modules."""

from __future__ import annotations

import math

from freeconv.inversion import ConvolutionModel
from freeconv.measure import AtomComponent, MeasureRep, Monomial, PowerTail, Uniform, dirac
from freeconv.transform import Cauchy, LevyHincin, Stable, scale_semigroup


def free_poisson(t: float) -> LevyHincin:
    return LevyHincin(t / 2, MeasureRep((AtomComponent(1.0, t / 2),)))


def semicircle(t: float = 1.0) -> Stable:
    return scale_semigroup(Stable(2.0), t)


def bernoulli() -> MeasureRep:
    return MeasureRep((AtomComponent(-1.0, 0.5), AtomComponent(1.0, 0.5)))


def uniform01() -> MeasureRep:
    return MeasureRep(pieces=(Uniform(1.0, 0.0, 1.0),))


def atom_plus_uniform(t: float, alpha: float = 0.5) -> MeasureRep:
    """``2t delta_alpha + (1 - 2t) U[0, 1]``."""
    return MeasureRep((AtomComponent(alpha, 2 * t),), (Uniform(1 - 2 * t, 0.0, 1.0),))


def quadratic_density() -> MeasureRep:
    """Density ``s^2/3`` on ``[-1, 2]``."""
    return MeasureRep(pieces=(Monomial(1 / 3, 2, 0.0, -1.0, 2.0),))


def even_quadratic_tails() -> MeasureRep:
    """``(3/8) s^2`` on ``[-1, 1]`` and ``(3/8) s^-2`` outside."""
    c = 3 / 8
    return MeasureRep(
        pieces=(
            PowerTail(c, 2.0, -math.inf, -1.0),
            Monomial(c, 2, 0.0, -1.0, 1.0),
            PowerTail(c, 2.0, 1.0, math.inf),
        )
    )


def kinked_density() -> MeasureRep:
    """``(12/7) s^2`` on ``[-1, 0]`` and ``(12/7) s^3`` on ``[0, 1]``."""
    c = 12 / 7
    return MeasureRep(pieces=(Monomial(c, 2, 0.0, -1.0, 0.0), Monomial(c, 3, 0.0, 0.0, 1.0)))


def heavy_tail_levy() -> MeasureRep:
    """Density 1 on ``[-1, 1]`` and ``|s|^-3`` outside."""
    return MeasureRep(
        pieces=(
            PowerTail(1.0, 3.0, -math.inf, -1.0),
            Uniform(1.0, -1.0, 1.0),
            PowerTail(1.0, 3.0, 1.0, math.inf),
        )
    )


def semicircle_model(t: float = 1.0) -> ConvolutionModel:
    return ConvolutionModel(semicircle(t), dirac(0.0))


def free_poisson_model(t: float) -> ConvolutionModel:
    return ConvolutionModel(free_poisson(t), dirac(0.0))


def type_a_model(t: float = 0.2) -> ConvolutionModel:
    return ConvolutionModel(free_poisson(t), atom_plus_uniform(t))


def type_b_model(t: float = 1.0) -> ConvolutionModel:
    return ConvolutionModel(free_poisson(t), quadratic_density())


def type_c_model(t: float = 0.5) -> ConvolutionModel:
    return ConvolutionModel(free_poisson(t), even_quadratic_tails())


def cauchy_model(nu: MeasureRep, scale: float = 1.0) -> ConvolutionModel:
    return ConvolutionModel(Cauchy(0.0, scale), nu)
