"""High-order one-step finite-difference schemes for 1D conservation laws.

Compact approximate Taylor (CAT) schemes of arbitrary even order with
flux-limited and WENO-stabilized variants, the linear Lax-Wendroff and
WENO5+TVD-RK3 baselines, and a harness for convergence and shock tests.
"""

from .driver import (ConfigError, ErrorReport, ErrorRow, Grid, RunConfig,
                     RunResult, apply_boundary, compute_dt, convergence_study,
                     initial_condition, l1_error, run)
from .fd_coeffs import (CoefficientTable, centered_coeffs, formula_order,
                        get_table, interface_coeffs, offgrid_coeffs)
from .models import (Advection, Burgers, Euler, FluxModel, StateError,
                     make_model)
from .schemes import (at_fluxes, cat_flux, cat_fluxes, fl_cat_flux,
                      fl_cat_fluxes, lw_fluxes, lw_linear_flux, make_scheme,
                      van_albada_phi, weno_cat_fluxes, weno_rk3_step)
from .stability import h1, h2, linearly_stable
from .weno import WenoConfig, weno5_interface_flux

__version__ = "0.1.0"

__all__ = [
    "Advection", "Burgers", "CoefficientTable", "ConfigError", "ErrorReport",
    "ErrorRow", "Euler", "FluxModel", "Grid", "RunConfig", "RunResult",
    "StateError", "WenoConfig", "apply_boundary", "at_fluxes", "cat_flux",
    "cat_fluxes", "centered_coeffs", "compute_dt", "convergence_study",
    "fl_cat_flux", "fl_cat_fluxes", "formula_order", "get_table", "h1", "h2",
    "initial_condition", "interface_coeffs", "l1_error", "linearly_stable",
    "lw_fluxes", "lw_linear_flux", "make_model", "make_scheme",
    "offgrid_coeffs", "run", "van_albada_phi", "weno5_interface_flux",
    "weno_cat_fluxes", "weno_rk3_step",
]
