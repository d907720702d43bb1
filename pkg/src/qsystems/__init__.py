"""Finite-dimensional verification toolkit for the algebraic laws of
many-component quantum systems.

Subpackages cover the association calculus of physical systems, dense
states/operators over explicit tensor factors, the centrally extended
Galilei algebra with concrete representations, permutation symmetrization,
spin-spin dynamics, charge superselection, and correlated-pair / CHSH
machinery with local hidden-variable baselines.
"""

__version__ = "0.1.0"

from .hilbert import (
    DensityOperator,
    Operator,
    SpaceSpec,
    StateVector,
    born_probability,
    conjugate_by_unitary,
    lift,
    partial_trace,
    sharp_value,
    tensor,
)

__all__ = [
    "__version__",
    "SpaceSpec",
    "StateVector",
    "Operator",
    "DensityOperator",
    "tensor",
    "lift",
    "born_probability",
    "sharp_value",
    "conjugate_by_unitary",
    "partial_trace",
]
