"""Semi-discrete DG right-hand side for the (v, w) system.

    v_t - (c w)_x = -c_x w
    w_t - (c v)_x = 0
    psi_t = v

with v = psi_t and w = c psi_x.  The v-equation keeps the integrated-by-
parts volume term int c (w phi)_x together with its trace terms exactly as
derived; collapsing them algebraically changes the roundoff pattern of the
energy cancellation.
"""
import numpy as np

from ..mesh import Formulation
from ..wavespeed import c
from .common import (Interfaces, add_boundary, add_dissipation, check_mesh, mass_solve,
                     volume_strong, volume_weak)


def conservative_weak(ec, basis, data, itf, cn=None):
    v, w, psi = data
    if cn is None:
        cn = c(ec, psi)
    cr, cl = itf.cbar[1:], itf.cbar[:-1]

    Aw = volume_weak(basis, cn, w)
    weak_v = -Aw + (Aw + volume_strong(basis, cn, w))
    flux_w = itf.cbar * itf.avg[1]
    add_boundary(weak_v, flux_w[1:], -flux_w[:-1])
    add_boundary(weak_v, -cr * itf.minus[1][1:], cl * itf.plus[1][:-1])

    weak_w = -volume_weak(basis, cn, v)
    flux_v = itf.cbar * itf.avg[0]
    add_boundary(weak_w, flux_v[1:], -flux_v[:-1])
    return weak_v, weak_w


def vw_rates(cfg, mesh, basis, data, t, x_nodes=None, interface_viscosity=True):
    """Rates of the coefficient array ``data`` of shape (3, N, p+1)."""
    check_mesh(mesh)
    dx = mesh.dx
    cn = c(cfg.ec, data[2])
    itf = Interfaces(cfg.ec, data, mesh.periodic, cn)
    weak_v, weak_w = conservative_weak(cfg.ec, basis, data, itf, cn)
    out = np.empty_like(data)
    out[0] = mass_solve(basis, dx, weak_v)
    out[1] = mass_solve(basis, dx, weak_w)

    if cfg.dissipative:
        add_dissipation(cfg, Formulation.VW, mesh, basis, data, itf, out, interface_viscosity, cn)

    if cfg.source is not None:
        if x_nodes is None:
            x_nodes = mesh.nodes(basis)
        out[0] += cfg.source(x_nodes, t)

    out[2] = data[0]
    return out


def rhs_vw(cfg, st, t):
    """Rates (v_t, w_t, psi_t) of a VW state, returned as a State."""
    if st.formulation is not Formulation.VW:
        raise ValueError(f"rhs_vw needs a VW state, got {st.formulation.value}")
    return st.with_data(vw_rates(cfg, st.mesh, st.basis, st.data, t))
