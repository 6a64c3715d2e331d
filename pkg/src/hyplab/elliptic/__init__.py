"""Divergence-form PDE family div(a(|grad u|)/|grad u| grad u) + C = 0 on
hyperbolic annuli and disks: exact radial solutions, a finite-volume solver,
and the comparison / gradient-bound / translation verification checks."""

from .laws import FluxLaw, linear_law, mse_law, p_laplace_law
from .radial import NoSolutionError, RadialSolution, radial_solve, radial_solve_disk
from .grid import AnnulusGrid, DiscreteField
from .solve2d import (
    NotConvergedError,
    SolverParams,
    discrete_gradient,
    discrete_residual,
    fd_solve,
)
from .checks import (
    ComparisonReport,
    DecayRow,
    GradientBoundReport,
    TranslateReport,
    comparison_check,
    decay_scan,
    gradient_bound_check,
    left_translate_check,
)

__all__ = [
    "FluxLaw",
    "linear_law",
    "p_laplace_law",
    "mse_law",
    "NoSolutionError",
    "RadialSolution",
    "radial_solve",
    "radial_solve_disk",
    "AnnulusGrid",
    "DiscreteField",
    "SolverParams",
    "NotConvergedError",
    "fd_solve",
    "discrete_residual",
    "discrete_gradient",
    "ComparisonReport",
    "GradientBoundReport",
    "TranslateReport",
    "DecayRow",
    "comparison_check",
    "gradient_bound_check",
    "left_translate_check",
    "decay_scan",
]
