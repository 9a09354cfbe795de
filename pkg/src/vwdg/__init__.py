"""Energy-conservative and energy-dissipative DG schemes for the variational wave equation.

    psi_tt - c(psi) (c(psi) psi_x)_x = 0,   c^2 = alpha cos^2 psi + beta sin^2 psi

Two first-order formulations are provided, Riemann invariants (R, S) and
(v, w) = (psi_t, c psi_x), each with nodal GLL elements of order p = 0..3,
central fluxes, and an optional dissipative variant.
"""
from .basis import NodalBasis, make_basis
from .diagnostics import (EnergyTrace, convergence_rates, discrete_energy, energy_production,
                          l2_distance, l2_error_psi)
from .errors import (BlowUpError, InvalidInitialDataError, MeshTooSmallError,
                     UndefinedRateError, UnsupportedOrderError)
from .mesh import Field, Formulation, Mesh, State
from .problems import get_problem
from .schemes import Mode, SchemeConfig, rate_function, rhs
from .timestepper import TimeControls, march, rk5_step
from .wavespeed import ElasticConstants, c, c_prime, c_sup

__version__ = "0.1.0"
