"""Semi-discrete DG right-hand side for the Riemann-invariant system.

Unknowns are R = psi_t + c psi_x, S = psi_t - c psi_x and psi, evolved in
the conservative form

    R_t - (c R)_x = -c_x (R - S) / 2
    S_t + (c S)_x = -c_x (R - S) / 2
    psi_t = (R + S) / 2

with central fluxes cbar * fbar.  The c_x source is integrated by parts
onto the test function, which is what makes the GLL-quadrature energy
production vanish identically on periodic meshes.  The dissipative variant
adds s/2 [[f]] upwinding and the residual-based element viscosity.
"""
import numpy as np

from ..mesh import Formulation
from ..wavespeed import c
from .common import (Interfaces, add_boundary, add_dissipation, check_mesh, mass_solve,
                     volume_strong, volume_weak)


def conservative_weak(ec, basis, data, itf, cn=None):
    R, S, psi = data
    if cn is None:
        cn = c(ec, psi)
    cr, cl = itf.cbar[1:], itf.cbar[:-1]
    R_minus, R_plus = itf.minus[0], itf.plus[0]
    S_minus, S_plus = itf.minus[1], itf.plus[1]

    AR, AS = volume_weak(basis, cn, R), volume_weak(basis, cn, S)
    shared = 0.5 * (AR + volume_strong(basis, cn, R)) - 0.5 * (AS + volume_strong(basis, cn, S))
    add_boundary(shared,
                 -0.5 * cr * R_minus[1:] + 0.5 * cr * S_minus[1:],
                 0.5 * cl * R_plus[:-1] - 0.5 * cl * S_plus[:-1])

    flux_R = itf.cbar * itf.avg[0]
    flux_S = itf.cbar * itf.avg[1]
    weak_R = shared - AR
    add_boundary(weak_R, flux_R[1:], -flux_R[:-1])
    weak_S = shared + AS
    add_boundary(weak_S, -flux_S[1:], flux_S[:-1])
    return weak_R, weak_S


def rs_rates(cfg, mesh, basis, data, t, x_nodes=None, interface_viscosity=True):
    """Rates of the coefficient array ``data`` of shape (3, N, p+1)."""
    check_mesh(mesh)
    dx = mesh.dx
    cn = c(cfg.ec, data[2])
    itf = Interfaces(cfg.ec, data, mesh.periodic, cn)
    weak_R, weak_S = conservative_weak(cfg.ec, basis, data, itf, cn)
    out = np.empty_like(data)
    out[0] = mass_solve(basis, dx, weak_R)
    out[1] = mass_solve(basis, dx, weak_S)

    if cfg.dissipative:
        add_dissipation(cfg, Formulation.RS, mesh, basis, data, itf, out, interface_viscosity, cn)

    if cfg.source is not None:
        if x_nodes is None:
            x_nodes = mesh.nodes(basis)
        q = cfg.source(x_nodes, t)
        out[0] += q
        out[1] += q

    out[2] = 0.5 * (data[0] + data[1])
    return out


def rhs_rs(cfg, st, t):
    """Rates (R_t, S_t, psi_t) of an RS state, returned as a State."""
    if st.formulation is not Formulation.RS:
        raise ValueError(f"rhs_rs needs an RS state, got {st.formulation.value}")
    return st.with_data(rs_rates(cfg, st.mesh, st.basis, st.data, t))
