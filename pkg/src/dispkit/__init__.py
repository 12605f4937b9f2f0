"""Verification and simulation toolkit for the homogeneous dispersive
family u_t = a (eps u_xxx - 2 u_x u_xx / u).

Layers, bottom to top: exact rational expression trees (expr, calculus),
equation definitions and symbolic identity checks (equations, operators),
closed-form solutions (catalog), finite-difference marching (solver,
stencils), conserved integrals (conserve), the second-derivative-ratio
map onto Schroedinger kernels (miura), distributional verification of
peaked waves (weakform), and a command-line frontend (cli).
"""

from . import (calculus, catalog, cli, conserve, equations, errors, expr,
               miura, operators, solver, stencils, weakform)
from .calculus import (EvolutionRule, euler_operator, frechet, integrate_x,
                       total_dt, total_dx, total_dx_n)
from .catalog import make, kinds, residual_on_grid
from .conserve import DriftReport, IntegralSpec, drift_report, evaluate
from .equations import family, kdv, kernel_flow_rhs, log_form, variant71, \
    variant72
from .errors import ConfigError, DispkitError
from .expr import DiffExpr, jet_expr, parse, to_text
from .miura import (KdvPotential, KernelBasis, LegendreSecondMode,
                    LinearCombo, airy_solution, evolve_in_kernel,
                    kernel_residual, kernel_solve, legendre_modes,
                    miura_map)
from .solver import (GridField, SolveOptions, Trajectory, grid_from_entry,
                     rhs_eval, solve, stable_dt)
from .weakform import (PeakonData, TestFunction, initial_convergence_check,
                       peak_profile_check, weak_residual)

__version__ = "0.4.1"

__all__ = [
    "calculus", "catalog", "cli", "conserve", "equations", "errors",
    "expr", "miura", "operators", "solver", "stencils", "weakform",
    "EvolutionRule", "euler_operator", "frechet", "integrate_x",
    "total_dt", "total_dx", "total_dx_n",
    "make", "kinds", "residual_on_grid",
    "DriftReport", "IntegralSpec", "drift_report", "evaluate",
    "family", "kdv", "kernel_flow_rhs", "log_form", "variant71",
    "variant72",
    "ConfigError", "DispkitError",
    "DiffExpr", "jet_expr", "parse", "to_text",
    "KdvPotential", "KernelBasis", "LegendreSecondMode", "LinearCombo",
    "airy_solution", "evolve_in_kernel", "kernel_residual", "kernel_solve",
    "legendre_modes", "miura_map",
    "GridField", "SolveOptions", "Trajectory", "grid_from_entry",
    "rhs_eval", "solve", "stable_dt",
    "PeakonData", "TestFunction", "initial_convergence_check",
    "peak_profile_check", "weak_residual",
    "__version__",
]
