"""Test problems: manufactured sine wave, Gaussian pulse, weak travelling wave.

All problems run on periodic meshes.  Domains were chosen so that the
periodic wrap is harmless: the sine fits a whole number of periods, the Gaussian tails
are below roundoff at |x| = 30 and no signal reaches the ends by t = 12,
and the travelling wave's flux variables vanish outside its support.
"""
from dataclasses import dataclass
from math import pi
from typing import Callable, Optional

import numpy as np

from .errors import InvalidInitialDataError
from .mesh import Formulation, Mesh, State
from .wavespeed import ElasticConstants, c

PROBLEM_NAMES = ("manufactured", "gaussian", "travelling")

SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    ec: ElasticConstants
    x_left: float
    x_right: float
    psi0: Callable
    psi1: Callable
    psix0: Callable
    default_N: int
    default_t_end: float
    source: Optional[Callable] = None
    exact: Optional[Callable] = None
    # replace non-finite psi_x node values by an in-element neighbour
    clamp_singular: bool = False

    def mesh(self, N=None):
        return Mesh(self.x_left, self.x_right, self.default_N if N is None else N, periodic=True)

    def initial_state(self, formulation, mesh, basis):
        return to_state(formulation, mesh, basis, self.ec, self.psi0, self.psi1, self.psix0,
                        clamp_singular=self.clamp_singular)


def _clamp(values):
    """Fill non-finite entries from the nearest finite node of the same element."""
    out = values.copy()
    P = values.shape[1]
    for j, k in np.argwhere(~np.isfinite(values)):
        candidates = [m for m in range(P) if np.isfinite(values[j, m])]
        if not candidates:
            continue
        # interior nodes first, then by distance in node index
        m = min(candidates, key=lambda m: (m in (0, P - 1) and P > 2, abs(m - k)))
        out[j, k] = values[j, m]
    return out


def _nodal(fn, x, name, clamp=False):
    vals = np.broadcast_to(np.asarray(fn(x), dtype=float), x.shape).copy()
    if clamp:
        vals = _clamp(vals)
    bad = ~np.isfinite(vals)
    if bad.any():
        j, k = np.argwhere(bad)[0]
        raise InvalidInitialDataError(
            f"{name} is not finite at node {k} of element {j} (x={x[j, k]!r})")
    return vals


def to_state(formulation, mesh, basis, ec, psi0, psi1, psix0, clamp_singular=False):
    """Convert (psi, psi_t, psi_x) initial data to nodal unknowns."""
    formulation = Formulation(formulation)
    x = mesh.nodes(basis)
    p0 = _nodal(psi0, x, "psi0")
    p1 = _nodal(psi1, x, "psi1", clamp_singular)
    px = _nodal(psix0, x, "psix0", clamp_singular)
    cpx = c(ec, p0) * px
    if formulation is Formulation.RS:
        a, b = p1 + cpx, p1 - cpx
    else:
        a, b = p1, cpx
    return State(formulation, mesh, basis, np.stack([a, b, p0]))


def manufactured_source(ec, x, t):
    """Source making psi = sin(x - t) an exact solution of both systems."""
    s = np.sin(x - t)
    co = np.cos(x - t)
    c2 = c(ec, s) ** 2
    # c c'(psi) = (beta - alpha) sin(psi) cos(psi)
    cc_prime = 0.5 * (ec.beta - ec.alpha) * np.sin(2.0 * s)
    return s * (c2 - 1.0) - cc_prime * co * co


MANUFACTURED_PERIODS = 3


def manufactured_problem(ec=None, periods=MANUFACTURED_PERIODS):
    """Sine wave on ``periods`` whole periods, [0, 2*pi*periods].

    Three periods reproduce the published error magnitudes; the rates do not
    depend on the choice.
    """
    ec = ec or ElasticConstants()
    if int(periods) != periods or periods < 1:
        raise ValueError(f"periods must be a positive integer, got {periods}")
    return ProblemSpec(
        name="manufactured",
        ec=ec,
        x_left=0.0,
        x_right=2.0 * pi * periods,
        psi0=np.sin,
        psi1=lambda x: -np.cos(x),
        psix0=np.cos,
        default_N=320,
        default_t_end=1.0,
        source=lambda x, t: manufactured_source(ec, x, t),
        exact=lambda x, t: np.sin(x - t),
    )


def gaussian_problem(ec=None):
    ec = ec or ElasticConstants()

    def psi0(x):
        return pi / 4.0 + np.exp(-x * x)

    def psix0(x):
        return -2.0 * x * np.exp(-x * x)

    def psi1(x):
        return -c(ec, psi0(x)) * psix0(x)

    return ProblemSpec(
        name="gaussian",
        ec=ec,
        x_left=-30.0,
        x_right=30.0,
        psi0=psi0,
        psi1=psi1,
        psix0=psix0,
        default_N=1000,
        default_t_end=10.0,
    )


def travelling_psi(ec, x, t):
    xi = np.asarray(x, dtype=float) - np.sqrt(ec.alpha) * t
    inside = (xi > 0.0) & (xi < 1.0)
    out = np.where(xi >= 1.0, pi, 0.0)
    return np.where(inside, np.arccos(np.clip(1.0 - 2.0 * xi, -1.0, 1.0)), out)


def travelling_psix(ec, x, t):
    """psi_x of the travelling wave; inf where the profile is singular.

    The support-end nodes with xi - xi^2 <= 1e-12 are reported as inf so the
    caller can clamp them.
    """
    xi = np.asarray(x, dtype=float) - np.sqrt(ec.alpha) * t
    arg = xi - xi * xi
    inside = (xi > 0.0) & (xi < 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.where(arg > SINGULAR_TOL, 1.0 / np.sqrt(np.where(arg > 0, arg, 1.0)), np.inf)
    return np.where(inside, val, 0.0)


def travelling_problem(ec=None):
    ec = ec or ElasticConstants()
    if ec.alpha == ec.beta:
        raise ValueError("the travelling wave needs alpha != beta")
    speed = np.sqrt(ec.alpha)
    return ProblemSpec(
        name="travelling",
        ec=ec,
        x_left=-2.0,
        x_right=4.0,
        psi0=lambda x: travelling_psi(ec, x, 0.0),
        psi1=lambda x: -speed * travelling_psix(ec, x, 0.0),
        psix0=lambda x: travelling_psix(ec, x, 0.0),
        default_N=1000,
        default_t_end=1.0,
        exact=lambda x, t: travelling_psi(ec, x, t),
        clamp_singular=True,
    )


_FACTORIES = {
    "manufactured": manufactured_problem,
    "gaussian": gaussian_problem,
    "travelling": travelling_problem,
}


def get_problem(name, ec=None):
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise ValueError(f"unknown problem {name!r}; choose from {', '.join(PROBLEM_NAMES)}") from None
    return factory(ec)
