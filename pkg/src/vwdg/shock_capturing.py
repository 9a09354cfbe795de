"""Residual-driven artificial viscosity shared by the dissipative schemes.

The element viscosity is

    eps_j = dx * C * ||Res||_j / (||(a_x, b_x)||_j + dx**theta)

where Res is the pointwise residual of the local energy balance,
``(a^2 + b^2)_t - g_x`` with ``g = c (a^2 - b^2)`` for (R, S) and
``g = 2 c a b`` for (v, w).  All norms use GLL quadrature on the element.

The time derivatives in Res come from one of two sources:

``"local"`` (default)
    the strong form of the PDE evaluated element by element with the
    derivative matrix, so Res measures how far the nodal representation
    is from satisfying the energy balance inside each element;
``"scheme"``
    the conservative DG rates of the current state, interface terms
    included.  With C = 0.1 this couples eps to grid-scale jumps strongly
    enough to destabilise smooth RS runs at p = 3.

Neither source contains a viscous term.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .mesh import Formulation
from .wavespeed import c


@dataclass
class ResidualInputs:
    formulation: Formulation
    mesh: object
    basis: object
    ec: object
    a: np.ndarray
    b: np.ndarray
    psi: np.ndarray
    a_t: np.ndarray
    b_t: np.ndarray
    # nodal wave speed, computed from psi when omitted
    cn: Optional[np.ndarray] = None

    def __post_init__(self):
        shape = (self.mesh.N, self.basis.size)
        for name in ("a", "b", "psi", "a_t", "b_t"):
            if np.shape(getattr(self, name)) != shape:
                raise ValueError(f"{name} has shape {np.shape(getattr(self, name))}, expected {shape}")


RESIDUAL_SOURCES = ("local", "scheme")


def local_rates(formulation, ec, basis, dx, a, b, psi, cn=None):
    """Element-local strong-form rates (a_t, b_t) without viscosity or source."""
    D = (2.0 / dx) * basis.deriv.T
    if cn is None:
        cn = c(ec, psi)
    if Formulation(formulation) is Formulation.RS:
        half_cx_diff = 0.5 * (cn @ D) * (a - b)
        return (cn * a) @ D - half_cx_diff, -(cn * b) @ D - half_cx_diff
    return cn * (b @ D), (cn * a) @ D


def energy_flux(formulation, ec, a, b, psi, cn=None):
    if cn is None:
        cn = c(ec, psi)
    if Formulation(formulation) is Formulation.RS:
        return cn * (a * a - b * b)
    return 2.0 * cn * a * b


def nodal_residual(inp):
    """Res at every node, shape (N, p+1)."""
    dx = inp.mesh.dx
    g = energy_flux(inp.formulation, inp.ec, inp.a, inp.b, inp.psi, inp.cn)
    g_x = (2.0 / dx) * g @ inp.basis.deriv.T
    return 2.0 * (inp.a * inp.a_t + inp.b * inp.b_t) - g_x


def residual_norms(inp):
    """Element L2 norms of the residual, shape (N,)."""
    res = nodal_residual(inp)
    return np.sqrt(0.5 * inp.mesh.dx * (res * res) @ inp.basis.weights)


def gradient_norms(mesh, basis, a, b):
    """Element norms (int a_x^2 + b_x^2 dx)^(1/2), shape (N,)."""
    da = a @ basis.deriv.T
    db = b @ basis.deriv.T
    return np.sqrt((2.0 / mesh.dx) * (da * da + db * db) @ basis.weights)


def epsilons(shock_C, shock_theta, inp, res_norms=None):
    if res_norms is None:
        res_norms = residual_norms(inp)
    dx = inp.mesh.dx
    grad = gradient_norms(inp.mesh, inp.basis, inp.a, inp.b)
    return dx * shock_C * res_norms / (grad + dx ** shock_theta)


def element_residual_norm(inp, j):
    return float(residual_norms(inp)[j])


def epsilon(cfg, inp, j):
    """Viscosity coefficient of element ``j`` for scheme settings ``cfg``."""
    return float(epsilons(cfg.shock_C, cfg.shock_theta, inp)[j])


def viscous_rates(eps, f, basis, dx):
    """Rate contribution of ``-eps_j * int f_x phi_x`` after the diagonal mass solve."""
    df = f @ basis.deriv.T
    stiff = (df * basis.weights) @ basis.deriv
    return -(4.0 / (dx * dx)) * eps[:, None] * stiff / basis.weights
