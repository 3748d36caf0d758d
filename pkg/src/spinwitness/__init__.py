"""Degeneracies and decidable fractions of the total-spin-squared entanglement witness."""

from spinwitness.errors import (
    CapExceededError,
    ClusteringError,
    ConvergenceError,
    InvalidArgumentError,
    LimitExceededError,
    NoJumpError,
    SpinWitnessError,
)
from spinwitness.spins import StepSet, TwiceSpin, allowed_steps, irrep_dim, tp_coeff

__all__ = [
    "CapExceededError",
    "ClusteringError",
    "ConvergenceError",
    "InvalidArgumentError",
    "LimitExceededError",
    "NoJumpError",
    "SpinWitnessError",
    "StepSet",
    "TwiceSpin",
    "allowed_steps",
    "irrep_dim",
    "tp_coeff",
]
