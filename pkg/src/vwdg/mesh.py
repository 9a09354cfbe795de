"""Uniform 1D meshes, nodal fields and interface traces.

Interfaces are numbered 0..N from left to right; interface ``k`` sits at
``x_left + k*dx`` between elements ``k-1`` and ``k`` (0-based).  On a
periodic mesh interfaces 0 and N are the same point.  On a non-periodic
mesh the missing outer trace is a constant extrapolation of the inner one.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidInitialDataError


@dataclass(frozen=True)
class Mesh:
    x_left: float
    x_right: float
    N: int
    periodic: bool = True

    def __post_init__(self):
        if not self.x_right > self.x_left:
            raise ValueError("x_right must exceed x_left")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"element count must be a positive integer, got {self.N!r}")

    @property
    def dx(self):
        return (self.x_right - self.x_left) / self.N

    @property
    def length(self):
        return self.x_right - self.x_left

    def centers(self):
        return self.x_left + (np.arange(self.N) + 0.5) * self.dx

    def nodes(self, basis):
        """Physical node locations, shape (N, p+1)."""
        return self.centers()[:, None] + 0.5 * self.dx * basis.nodes[None, :]


class Formulation(str, Enum):
    RS = "rs"
    VW = "vw"


class Field:
    """One scalar unknown stored as per-element nodal coefficients."""

    def __init__(self, mesh, basis, coeffs=None):
        self.mesh = mesh
        self.basis = basis
        if coeffs is None:
            coeffs = np.zeros((mesh.N, basis.size))
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (mesh.N, basis.size):
            raise ValueError(f"coefficient shape {coeffs.shape} does not match ({mesh.N}, {basis.size})")
        self.coeffs = coeffs

    def __repr__(self):
        return f"Field(N={self.mesh.N}, p={self.basis.order})"

    def nodes(self):
        return self.mesh.nodes(self.basis)

    def __call__(self, x):
        """Evaluate the piecewise polynomial at physical points ``x``.

        A point lying exactly on an interior interface is assigned to the
        element on its right, except the right end of the domain.
        """
        x = np.asarray(x, dtype=float)
        m = self.mesh
        j = np.clip(np.floor((x - m.x_left) / m.dx).astype(int), 0, m.N - 1)
        eta = 2.0 * (x - (m.x_left + (j + 0.5) * m.dx)) / m.dx
        phi = self.basis.interpolants(eta)
        return np.sum(self.coeffs[j] * phi, axis=-1)

    def derivative(self):
        """Nodal values of the element-local x-derivative, shape (N, p+1)."""
        return (2.0 / self.mesh.dx) * self.coeffs @ self.basis.deriv.T


def project_nodal(mesh, basis, g):
    """Interpolate ``g`` at the mapped GLL nodes of every element."""
    x = mesh.nodes(basis)
    vals = np.asarray(g(x), dtype=float)
    vals = np.broadcast_to(vals, x.shape).copy()
    bad = ~np.isfinite(vals)
    if bad.any():
        j, k = np.argwhere(bad)[0]
        raise InvalidInitialDataError(f"non-finite value at node {k} of element {j} (x={x[j, k]!r})")
    return Field(mesh, basis, vals)


def interface_traces(coeffs, periodic):
    """Left and right traces at all N+1 interfaces of a coefficient array.

    Works on the trailing two axes so stacked fields can be handled at once.
    """
    right_ends = coeffs[..., :, -1]
    left_ends = coeffs[..., :, 0]
    shape = coeffs.shape[:-2] + (coeffs.shape[-2] + 1,)
    minus = np.empty(shape)
    plus = np.empty(shape)
    minus[..., 1:] = right_ends
    plus[..., :-1] = left_ends
    if periodic:
        minus[..., 0] = right_ends[..., -1]
        plus[..., -1] = left_ends[..., 0]
    else:
        minus[..., 0] = left_ends[..., 0]
        plus[..., -1] = right_ends[..., -1]
    return minus, plus


def traces(f, k):
    """(minus, plus) traces of field ``f`` at interface ``k`` in 0..N."""
    if not 0 <= k <= f.mesh.N:
        raise IndexError(f"interface index {k} outside 0..{f.mesh.N}")
    minus, plus = interface_traces(f.coeffs, f.mesh.periodic)
    return float(minus[k]), float(plus[k])


def jump(f, k):
    minus, plus = traces(f, k)
    return plus - minus


def average(f, k):
    minus, plus = traces(f, k)
    return 0.5 * (plus + minus)


class State:
    """The three unknowns of one formulation stored in a single array.

    ``data`` has shape (3, N, p+1); rows are (R, S, psi) for the RS
    formulation and (v, w, psi) for VW.  The Field attributes are views.
    """

    def __init__(self, formulation, mesh, basis, data=None):
        self.formulation = Formulation(formulation)
        self.mesh = mesh
        self.basis = basis
        if data is None:
            data = np.zeros((3, mesh.N, basis.size))
        data = np.ascontiguousarray(data, dtype=float)
        if data.shape != (3, mesh.N, basis.size):
            raise ValueError(f"state array shape {data.shape} does not match (3, {mesh.N}, {basis.size})")
        self.data = data

    @classmethod
    def from_fields(cls, formulation, a, b, psi):
        for f in (b, psi):
            if f.mesh != a.mesh or f.basis is not a.basis:
                raise ValueError("all fields of a state must share mesh and basis")
        return cls(formulation, a.mesh, a.basis, np.stack([a.coeffs, b.coeffs, psi.coeffs]))

    def with_data(self, data):
        return State(self.formulation, self.mesh, self.basis, data)

    @property
    def a(self):
        return Field(self.mesh, self.basis, self.data[0])

    @property
    def b(self):
        return Field(self.mesh, self.basis, self.data[1])

    @property
    def psi(self):
        return Field(self.mesh, self.basis, self.data[2])

    def __repr__(self):
        return f"State({self.formulation.value}, N={self.mesh.N}, p={self.basis.order})"
