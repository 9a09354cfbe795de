from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from ..errors import MeshTooSmallError
from ..mesh import interface_traces
from ..shock_capturing import (RESIDUAL_SOURCES, ResidualInputs, epsilons, local_rates,
                               viscous_rates)
from ..wavespeed import ElasticConstants, c


class Mode(str, Enum):
    CONSERVATIVE = "conservative"
    DISSIPATIVE = "dissipative"


@dataclass(frozen=True)
class SchemeConfig:
    """Settings shared by both formulations.

    ``source``, when given, is a callable ``Q(x, t)`` evaluated at the nodes
    and added to the rates of the first unknown (and of S for RS).
    """

    ec: ElasticConstants = field(default_factory=ElasticConstants)
    mode: Mode = Mode.CONSERVATIVE
    shock_C: float = 0.1
    shock_theta: float = 1.0
    source: Optional[Callable] = None
    residual: str = "local"

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.residual not in RESIDUAL_SOURCES:
            raise ValueError(f"residual must be one of {RESIDUAL_SOURCES}, got {self.residual!r}")
        if self.shock_C < 0:
            raise ValueError(f"shock_C must be nonnegative, got {self.shock_C}")
        if self.shock_theta < 0.5:
            raise ValueError(f"shock_theta must be at least 1/2, got {self.shock_theta}")

    @property
    def dissipative(self):
        return self.mode is Mode.DISSIPATIVE


class Interfaces:
    """Traces, averages and jumps of (a, b, psi) at the N+1 interfaces."""

    def __init__(self, ec, data, periodic, cn=None):
        minus, plus = interface_traces(data, periodic)
        self.minus = minus
        self.plus = plus
        if cn is None:
            c_minus, c_plus = c(ec, minus[2]), c(ec, plus[2])
        else:
            # psi traces are end-node values, so c traces are too
            c_minus, c_plus = interface_traces(cn, periodic)
        self.cbar = 0.5 * (c_minus + c_plus)
        self.s = np.maximum(c_minus, c_plus)
        self.avg = 0.5 * (minus + plus)
        self.jump = plus - minus


def check_mesh(mesh):
    if mesh.N < 2:
        raise MeshTooSmallError(f"need at least 2 elements, got {mesh.N}")


def volume_weak(basis, cn, f):
    """sum_a rho_a c_a f_a D[a, i]: the quadrature of int c f phi_i'."""
    return (basis.weights * cn * f) @ basis.deriv


def volume_strong(basis, cn, f):
    """rho_i c_i (D f)_i: the quadrature of int c f_x phi_i."""
    return basis.weights * cn * (f @ basis.deriv.T)


def add_boundary(weak, right, left):
    """Add interface contributions to the end nodes of each element.

    ``right`` and ``left`` have shape (N,) and target the last and first
    node; for p = 0 both land on the single node.
    """
    weak[:, -1] += right
    weak[:, 0] += left


def mass_solve(basis, dx, weak):
    return weak / (0.5 * dx * basis.weights)


def interface_viscosity_weak(itf, idx, shape):
    """Weak form of the s/2 [[f]] flux correction for unknown row ``idx``.

    Both equations of either system receive it with the same pattern, the
    one giving -1/2 sum s [[f]]^2 when tested against f itself.
    """
    half_s_jump = 0.5 * itf.s * itf.jump[idx]
    weak = np.zeros(shape)
    add_boundary(weak, half_s_jump[1:], -half_s_jump[:-1])
    return weak


def add_dissipation(cfg, formulation, mesh, basis, data, itf, out, interface_viscosity=True,
                    cn=None):
    """Add interface viscosity and the shock-capturing term to ``out`` in place.

    ``out[0:2]`` must hold the conservative rates on entry.
    """
    a, b, psi = data
    dx = mesh.dx
    if cfg.residual == "local":
        a_t, b_t = local_rates(formulation, cfg.ec, basis, dx, a, b, psi, cn)
    else:
        a_t, b_t = out[0], out[1]
    inp = ResidualInputs(formulation, mesh, basis, cfg.ec, a, b, psi, a_t, b_t, cn)
    eps = epsilons(cfg.shock_C, cfg.shock_theta, inp)
    if interface_viscosity:
        out[0] += mass_solve(basis, dx, interface_viscosity_weak(itf, 0, a.shape))
        out[1] += mass_solve(basis, dx, interface_viscosity_weak(itf, 1, b.shape))
    out[0] += viscous_rates(eps, a, basis, dx)
    out[1] += viscous_rates(eps, b, basis, dx)
    return eps
