"""Acceptance criteria, each run at its stated tolerance.

Every check records a PASS/FAIL line; the terminal summary aggregates them
per criterion. Reference errors below are the published convergence tables
for the manufactured sine solution at N = 20 * 2**i, i = 4..8.
"""
from functools import lru_cache

import numpy as np
import pytest

from vwdg.basis import eval_interpolant, make_basis
from vwdg.cli import RunConfig, convergence_table, parse_scheme, simulate
from vwdg.diagnostics import energy_production, l2_distance, l2_norm
from vwdg.mesh import Mesh, State
from vwdg.schemes import SchemeConfig, rhs
from vwdg.timestepper import rk5_step
from vwdg.wavespeed import ElasticConstants

pytestmark = pytest.mark.slow

SCHEMES = [f"{f}{p}{m}" for f in ("rs", "vw") for p in range(4) for m in "cd"]

EXPECTED_RATE = {"0c": 2.0, "0d": 1.0, "1c": 1.0, "1d": 2.0, "2c": 3.0, "2d": 3.0, "3c": 3.0, "3d": 4.0}

TABLE_ERRORS = {
    "rs0c": [2.279e-3, 5.698e-4, 1.424e-4, 3.561e-5, 8.901e-6],
    "rs0d": [4.053e-2, 2.063e-2, 1.041e-2, 5.231e-3, 2.622e-3],
    "rs1c": [3.925e-2, 1.962e-2, 9.811e-3, 4.906e-3, 2.453e-3],
    "rs1d": [3.590e-3, 9.068e-4, 2.275e-4, 5.695e-5, 1.425e-5],
    "rs2c": [1.820e-5, 2.255e-6, 2.812e-7, 3.513e-8, 4.390e-9],
    "rs2d": [2.090e-5, 2.594e-6, 3.235e-7, 4.040e-8, 5.049e-9],
    "rs3c": [2.445e-6, 3.058e-7, 3.822e-8, 4.777e-9, 5.971e-10],
    "rs3d": [2.577e-7, 1.609e-8, 1.005e-9, 6.282e-11, 3.926e-12],
    "vw0c": [2.279e-3, 5.698e-4, 1.424e-4, 3.561e-5, 8.901e-6],
    "vw0d": [5.294e-2, 2.676e-2, 1.345e-2, 6.746e-3, 3.380e-3],
    "vw1c": [4.096e-2, 2.046e-2, 1.022e-2, 5.109e-3, 2.554e-3],
    "vw1d": [3.590e-3, 9.068e-4, 2.275e-4, 5.695e-5, 1.425e-5],
    "vw2c": [1.820e-5, 2.255e-6, 2.812e-7, 3.513e-8, 4.390e-9],
    "vw2d": [1.852e-5, 2.296e-6, 2.863e-7, 3.575e-8, 4.468e-9],
    "vw3c": [2.445e-6, 3.058e-7, 3.822e-8, 4.778e-9, 5.971e-10],
    "vw3d": [2.577e-7, 1.609e-8, 1.005e-9, 6.282e-11, 3.926e-12],
}


def config(name, **kw):
    form, p, mode = parse_scheme(name)
    return RunConfig(formulation=form, mode=mode, p=p, **kw)


# 1. manufactured convergence

@pytest.mark.parametrize("name", SCHEMES)
def test_convergence_table(name, acceptance):
    rows = convergence_table(config(name, alpha=0.5, beta=1.5), range(4, 9))
    errors = np.array([r[2] for r in rows])
    rate = rows[-1][3]
    target = EXPECTED_RATE[name[2:]]
    factor = np.max(np.maximum(errors / TABLE_ERRORS[name], TABLE_ERRORS[name] / errors))
    ok = abs(rate - target) <= 0.05 and factor <= 3.0
    acceptance(1, ok, f"{name} finest rate {rate:.3f} (want {target}), worst table factor {factor:.2f}")
    assert ok


# 2. semi-discrete energy identity

@pytest.mark.parametrize("p", range(4))
@pytest.mark.parametrize("form", ["rs", "vw"])
def test_energy_production_random_states(form, p, acceptance):
    r = np.random.default_rng(1000 + 10 * p + (form == "vw"))
    basis = make_basis(p)
    worst_cons = worst_diss = -np.inf
    for _ in range(100):
        N = int(r.integers(2, 33))
        ec = ElasticConstants(*r.uniform(0.1, 5.0, size=2))
        scale = 10.0 ** r.uniform(-3, 3)
        st = State(form, Mesh(0.0, float(r.uniform(0.5, 10.0)), N), basis, scale * r.normal(size=(3, N, p + 1)))
        norm2 = l2_norm(st.data[0], st.mesh, basis) ** 2 + l2_norm(st.data[1], st.mesh, basis) ** 2
        cons = energy_production(st, rhs(SchemeConfig(ec=ec), st, 0.0)) / norm2
        diss = energy_production(st, rhs(SchemeConfig(ec=ec, mode="dissipative"), st, 0.0)) / norm2
        worst_cons, worst_diss = max(worst_cons, abs(cons)), max(worst_diss, diss)
    ok = worst_cons <= 1e-12 and worst_diss <= 1e-12
    acceptance(2, ok, f"{form}{p}: max |conservative|/norm {worst_cons:.1e}, max dissipative/norm {worst_diss:.1e}")
    assert ok


# 3 and 4. Gaussian pulse

@lru_cache(maxsize=None)
def gaussian_run(name):
    return simulate(config(name, problem="gaussian", alpha=0.5, beta=1.5, N=1000, t_end=10.0,
                           snapshot_times=(0.0, 6.5, 10.0)))


@pytest.mark.parametrize("name", SCHEMES)
def test_gaussian_energy(name, acceptance):
    out = gaussian_run(name)
    e = np.array(out.trace.energies)
    if name.endswith("c"):
        drift = out.trace.relative_drift()
        ok = out.ok and drift < 1e-6
        detail = f"{name} relative drift {drift:.2e} (want < 1e-6)"
    else:
        rise = float(np.max(np.diff(e)))
        drop = (e[0] - e[-1]) / e[0]
        ok = out.ok and rise <= 1e-12 and (drop > 0.01 or name[2] == "0")
        detail = f"{name} max step increase {rise:.1e}, total drop {drop:.1%}"
    acceptance(3, ok, detail)
    assert ok


def max_nodal_slope(st):
    psi = st.data[2]
    return float(np.max(np.abs(psi @ st.basis.deriv.T)) * 2.0 / st.mesh.dx)


@pytest.mark.parametrize("name", [s for s in SCHEMES if s[2] != "0"])
def test_gaussian_gradient_growth(name, acceptance):
    snaps = dict(gaussian_run(name).snapshots)
    g0, g65 = max_nodal_slope(snaps[0.0]), max_nodal_slope(snaps[6.5])
    ok = g65 > 10.0 * g0
    acceptance(4, ok, f"{name} max |psi_x| {g0:.3f} -> {g65:.3f}, ratio {g65 / g0:.2f} (want > 10)")
    assert ok


# 5. conservative/dissipative dichotomy

DICHOTOMY = dict(formulation="vw", p=3, problem="gaussian", alpha=0.5, beta=4.5, t_end=12.0)


@lru_cache(maxsize=None)
def dichotomy_run(mode, N, snapshot_times=(4.0, 12.0)):
    return simulate(RunConfig(mode=mode, N=N, snapshot_times=snapshot_times, **DICHOTOMY))


def test_dichotomy_distance(acceptance):
    c, d = dict(dichotomy_run("conservative", 2000).snapshots), dict(dichotomy_run("dissipative", 2000).snapshots)
    d4, d12 = l2_distance(c[4.0].psi, d[4.0].psi), l2_distance(c[12.0].psi, d[12.0].psi)
    ok = d12 > 10.0 * d4
    acceptance(5, ok, f"vw3c-vw3d distance {d4:.3e} at t=4, {d12:.3e} at t=12, ratio {d12 / d4:.2f} (want > 10)")
    assert ok


def test_dichotomy_energy(acceptance):
    c, d = dichotomy_run("conservative", 2000), dichotomy_run("dissipative", 2000)
    drift = c.trace.relative_drift()
    ed = np.array(d.trace.energies)
    loss = (ed[0] - ed[-1]) / ed[0]
    ok = c.ok and d.ok and drift < 1e-4 and loss > 0.05
    acceptance(5, ok, f"vw3c energy drift {drift:.2e} (want < 1e-4), vw3d loss {loss:.1%} (want > 5%)")
    assert ok


def test_dichotomy_self_convergence(acceptance):
    ref = dichotomy_run("dissipative", 4000, (12.0,)).state.psi
    errs = [l2_distance(dichotomy_run("dissipative", 20 * 2 ** i, (12.0,)).state.psi, ref) for i in range(3, 7)]
    ok = bool(np.all(np.diff(errs) < 0))
    acceptance(5, ok, "vw3d errors vs N=4000 for i=3..6: " + ", ".join(f"{e:.3e}" for e in errs))
    assert ok


# 6. travelling wave

def midpoint(st):
    """x where psi first crosses pi/2 going up, by linear interpolation between nodes."""
    x, psi = st.mesh.nodes(st.basis).ravel(), st.data[2].ravel()
    for i in np.nonzero((psi[:-1] < np.pi / 2) & (psi[1:] >= np.pi / 2) & (x[1:] > x[:-1]))[0]:
        return x[i] + (np.pi / 2 - psi[i]) * (x[i + 1] - x[i]) / (psi[i + 1] - psi[i])
    return np.nan


@pytest.mark.parametrize("name", SCHEMES)
def test_travelling_wave(name, acceptance):
    runs = [simulate(config(name, problem="travelling", alpha=0.5, beta=1.5, N=N, t_end=1.0))
            for N in (250, 500, 1000)]
    if not all(r.ok for r in runs):
        blown = [r.config.N for r in runs if not r.ok]
        acceptance(6, False, f"{name} blew up at N={blown}")
        pytest.fail(f"{name} blew up at N={blown}")
    errs = [r.error_l2 for r in runs]
    fine = runs[-1].state
    xm, target = midpoint(fine), 0.5 + np.sqrt(0.5)
    decreasing = bool(np.all(np.diff(errs) < 0))
    located = abs(xm - target) <= 2 * fine.mesh.dx
    ok = decreasing and located
    acceptance(6, ok, f"{name} e_L2 " + ", ".join(f"{e:.4f}" for e in errs)
               + f"; midpoint {xm:.4f} vs {target:.4f} (tol {2 * fine.mesh.dx:.3f})")
    assert ok


# 7. RK5 order

def test_rk5_order(acceptance):
    errs = [abs(rk5_step(lambda t, u: u, 0.0, 1.0, dt) - np.exp(dt)) for dt in (0.1, 0.05, 0.025)]
    ratios = np.array(errs[:-1]) / errs[1:]
    ok = bool(np.all(np.abs(ratios - 64) <= 8))
    acceptance(7, ok, "error ratios " + ", ".join(f"{q:.2f}" for q in ratios))
    assert ok


# 8. basis invariants

@pytest.mark.parametrize("p", range(4))
def test_basis_invariants(p, acceptance):
    b = make_basis(p)
    row_sums = np.max(np.abs(b.deriv.sum(axis=1)))
    quad = max(abs(b.weights @ b.nodes ** k - (2.0 / (k + 1) if k % 2 == 0 else 0.0)) for k in range(max(2 * p, 1)))
    cardinal = max(np.max(np.abs(eval_interpolant(b, k, b.nodes) - np.eye(p + 1)[k])) for k in range(p + 1))
    ok = max(row_sums, quad, cardinal) <= 1e-12
    acceptance(8, ok, f"p={p} row sums {row_sums:.1e}, quadrature {quad:.1e}, cardinal {cardinal:.1e}")
    assert ok
