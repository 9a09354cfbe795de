"""Six-stage fifth-order explicit Runge-Kutta marching with a fixed CFL step."""
from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .errors import BlowUpError

_R6 = sqrt(6.0)

# stage abscissae
_C2 = 4.0 / 11.0
_C3 = 2.0 / 5.0
_C5 = (6.0 - _R6) / 10.0
_C6 = (6.0 + _R6) / 10.0
# stage 5 and 6 combinations, divided by 600
_A51, _A53, _A54 = 81.0 + 9.0 * _R6, 255.0 - 55.0 * _R6, 24.0 - 14.0 * _R6
_A61, _A63, _A64 = 81.0 - 9.0 * _R6, 255.0 + 55.0 * _R6, 24.0 + 14.0 * _R6
# final update, divided by 36
_B1, _B5, _B6 = 4.0, 16.0 + _R6, 16.0 - _R6


def rk5_step(f, t, u, dt):
    """Advance ``u`` from ``t`` to ``t + dt`` with the six-stage RK5 scheme.

    ``f(t, u)`` returns the rate of ``u``; ``u`` may be a scalar or any
    numpy array.
    """
    if not dt > 0:
        raise ValueError(f"time step must be positive, got {dt}")
    k1 = f(t, u)
    k2 = f(t + _C2 * dt, u + _C2 * dt * k1)
    k3 = f(t + _C3 * dt, u + (dt / 50.0) * (9.0 * k1 + 11.0 * k2))
    k4 = f(t + dt, u + (dt / 4.0) * (-11.0 * k2 + 15.0 * k3))
    k5 = f(t + _C5 * dt, u + (dt / 600.0) * (_A51 * k1 + _A53 * k3 + _A54 * k4))
    k6 = f(t + _C6 * dt, u + (dt / 600.0) * (_A61 * k1 + _A63 * k3 + _A64 * k4))
    return u + (dt / 36.0) * (_B1 * k1 + _B5 * k5 + _B6 * k6)


def cfl_time_step(cfl_factor, dx, wave_speed):
    return cfl_factor * dx / wave_speed


@dataclass
class TimeControls:
    t_end: float
    cfl_factor: float = 0.1
    snapshot_times: list = field(default_factory=list)

    def __post_init__(self):
        if not self.cfl_factor > 0:
            raise ValueError(f"cfl_factor must be positive, got {self.cfl_factor}")
        if self.t_end < 0:
            raise ValueError(f"t_end must be nonnegative, got {self.t_end}")
        times = sorted(float(s) for s in self.snapshot_times)
        if any(s < 0 or s > self.t_end for s in times):
            raise ValueError("snapshot times must lie in [0, t_end]")
        self.snapshot_times = times


@dataclass
class MarchResult:
    state: object
    trace: object
    snapshots: list
    dt: float
    steps: int


def _first_bad_element(u):
    bad = np.argwhere(~np.isfinite(u))
    if bad.size == 0 or u.ndim < 2:
        return None
    return int(bad[0][-2])


def _largest_element(u):
    if u.ndim < 2:
        return None
    return int(np.unravel_index(np.argmax(np.abs(u)), u.shape)[-2])


def march(f, st0, controls, wave_speed, energy=None):
    """Integrate a State from t = 0 to ``controls.t_end``.

    The step is ``cfl_factor * dx / wave_speed``; steps are shortened to
    land exactly on each snapshot time and on ``t_end``.  ``energy`` maps a
    State to a scalar and is recorded after every step; a non-finite state
    or energy raises BlowUpError.  Snapshots are
    returned as a list of ``(t, State)``.
    """
    from .diagnostics import EnergyTrace

    dt = cfl_time_step(controls.cfl_factor, st0.mesh.dx, wave_speed)
    trace = EnergyTrace()
    if energy is not None:
        with np.errstate(over="ignore"):
            trace.append(0.0, energy(st0))

    targets = sorted(set(controls.snapshot_times) | {float(controls.t_end)})
    snapshots = []
    u = st0.data
    t = 0.0
    steps = 0
    for target in targets:
        while t < target:
            remaining = target - t
            if remaining <= dt * (1.0 + 1e-10):
                h, t_next = remaining, target
            else:
                h, t_next = dt, t + dt
            # overflow is reported through BlowUpError instead
            with np.errstate(over="ignore", invalid="ignore"):
                u = rk5_step(f, t, u, h)
                t = t_next
                steps += 1
                if not np.isfinite(u).all():
                    raise BlowUpError(t, _first_bad_element(u), trace)
                if energy is not None:
                    e = energy(st0.with_data(u))
                    if not np.isfinite(e):
                        raise BlowUpError(t, _largest_element(u), trace)
                    trace.append(t, e)
        if target in controls.snapshot_times:
            snapshots.append((target, st0.with_data(u)))
    return MarchResult(st0.with_data(u), trace, snapshots, dt, steps)
