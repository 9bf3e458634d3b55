"""Numerical free additive convolution with a freely infinitely divisible law."""

from ._numerics import FreeConvError, NonConvergence, NumericalConflict, Undecided
from .inversion import ConvolutionModel, Tolerances
from .measure import AtomComponent, MeasureRep, Monomial, PowerTail, Table, Uniform, dirac
from .transform import Cauchy, LevyHincin, Stable, scale_semigroup

__version__ = "0.1.0"

__all__ = [
    "FreeConvError",
    "NonConvergence",
    "NumericalConflict",
    "Undecided",
    "ConvolutionModel",
    "Tolerances",
    "AtomComponent",
    "MeasureRep",
    "Monomial",
    "PowerTail",
    "Table",
    "Uniform",
    "dirac",
    "Cauchy",
    "LevyHincin",
    "Stable",
    "scale_semigroup",
]
