"""Discrete energy, quadrature L2 errors and convergence rates."""
from dataclasses import dataclass, field

import numpy as np

from .errors import UndefinedRateError
from .mesh import Formulation


@dataclass
class EnergyTrace:
    times: list = field(default_factory=list)
    energies: list = field(default_factory=list)

    def append(self, t, e):
        if self.times and not t > self.times[-1]:
            raise ValueError(f"energy trace times must increase, got {t} after {self.times[-1]}")
        self.times.append(float(t))
        self.energies.append(float(e))

    def __len__(self):
        return len(self.times)

    def relative_drift(self):
        e = np.asarray(self.energies)
        return float(np.max(np.abs(e - e[0])) / e[0])


def discrete_energy(st):
    """GLL quadrature of (R^2 + S^2)/4 or (v^2 + w^2)/2 over the mesh."""
    a, b = st.data[0], st.data[1]
    q = float(np.sum((a * a + b * b) @ st.basis.weights))
    if st.formulation is Formulation.RS:
        return 0.125 * st.mesh.dx * q
    return 0.25 * st.mesh.dx * q


def energy_production(st, rates):
    """GLL quadrature of a*a_t + b*b_t, the semi-discrete energy rate (up to the formulation factor)."""
    prod = st.data[0] * rates.data[0] + st.data[1] * rates.data[1]
    return 0.5 * st.mesh.dx * float(np.sum(prod @ st.basis.weights))


def l2_norm(field_values, mesh, basis):
    """GLL quadrature L2 norm of nodal values of shape (N, p+1)."""
    sq = np.asarray(field_values) ** 2
    return float(np.sqrt(0.5 * mesh.dx * np.sum(sq @ basis.weights)))


def l2_error_psi(st, exact, t):
    """Quadrature L2 distance between the psi field and ``exact(x, t)``."""
    x = st.mesh.nodes(st.basis)
    return l2_norm(exact(x, t) - st.data[2], st.mesh, st.basis)


def l2_distance(coarse, fine):
    """L2 distance between two Fields on possibly different meshes.

    The coarse field's polynomials are evaluated at the fine field's GLL
    nodes and the fine quadrature is used.
    """
    x = fine.nodes()
    return l2_norm(coarse(x) - fine.coeffs, fine.mesh, fine.basis)


def convergence_rates(errors):
    """Successive log2 ratios e[i-1]/e[i]."""
    e = np.asarray(errors, dtype=float)
    if e.size < 2:
        raise ValueError("need at least two errors to form a rate")
    if np.any(e <= 0) or not np.all(np.isfinite(e)):
        raise UndefinedRateError(f"rates need positive finite errors, got {errors!r}")
    return list(np.log2(e[:-1] / e[1:]))
