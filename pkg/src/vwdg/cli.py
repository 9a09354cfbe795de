"""Command-line driver: single runs and convergence studies.

Usage::

    vwdg run vw3c --problem gaussian --N 1000 --t-end 10 --output out/
    vwdg convergence rs2d --i-min 4 --i-max 8 --output rs2d.csv

Exit codes are 0 on success, 1 for invalid configurations and I/O
failures, and 2 when the solution blows up.
"""
import argparse
import csv
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import List, Optional

import numpy as np

from .basis import make_basis
from .diagnostics import EnergyTrace, convergence_rates, discrete_energy, l2_error_psi
from .errors import BlowUpError, UnsupportedOrderError
from .mesh import Formulation
from .problems import PROBLEM_NAMES, get_problem
from .schemes import Mode, SchemeConfig, rate_function
from .timestepper import TimeControls, cfl_time_step, march
from .wavespeed import ElasticConstants, c_sup

EXIT_OK, EXIT_ERROR, EXIT_BLOWUP = 0, 1, 2

_SCHEME_RE = re.compile(r"^(rs|vw)([0-9]+)([cd])$", re.IGNORECASE)


def parse_scheme(name):
    """Split shorthand such as ``"vw3d"`` into (formulation, p, mode)."""
    m = _SCHEME_RE.match(name.strip())
    if m is None:
        raise ValueError(f"scheme must look like rs0c..vw3d, got {name!r}")
    form, p, mode = m.groups()
    mode = Mode.CONSERVATIVE if mode.lower() == "c" else Mode.DISSIPATIVE
    return Formulation(form.lower()), int(p), mode


def scheme_name(formulation, p, mode):
    return f"{Formulation(formulation).value}{p}{Mode(mode).value[0]}"


@dataclass(frozen=True)
class RunConfig:
    formulation: str = "vw"
    mode: str = "conservative"
    p: int = 3
    N: Optional[int] = None
    alpha: float = 0.5
    beta: float = 1.5
    problem: str = "gaussian"
    t_end: Optional[float] = None
    snapshot_times: Optional[List[float]] = None
    shock_C: float = 0.1
    shock_theta: float = 1.0
    cfl_factor: float = 0.1
    output: Optional[str] = None

    @property
    def scheme(self):
        return scheme_name(self.formulation, self.p, self.mode)

    def resolved(self):
        """Validate every field and fill problem defaults for N, t_end and snapshots."""
        formulation = Formulation(self.formulation).value
        mode = Mode(self.mode).value
        if self.p not in (0, 1, 2, 3):
            raise UnsupportedOrderError(f"p must be 0..3, got {self.p}")
        if self.problem not in PROBLEM_NAMES:
            raise ValueError(f"unknown problem {self.problem!r}; choose from {', '.join(PROBLEM_NAMES)}")
        prob = get_problem(self.problem, ElasticConstants(self.alpha, self.beta))
        N = prob.default_N if self.N is None else int(self.N)
        t_end = prob.default_t_end if self.t_end is None else float(self.t_end)
        snaps = [t_end] if self.snapshot_times is None else [float(s) for s in self.snapshot_times]
        out = replace(self, formulation=formulation, mode=mode, N=N, t_end=t_end,
                      snapshot_times=sorted(set(snaps)))
        # constructors below raise on the remaining invalid values
        prob.mesh(N)
        out.scheme_config(prob)
        TimeControls(t_end, self.cfl_factor, out.snapshot_times)
        return out

    def scheme_config(self, prob):
        return SchemeConfig(ec=prob.ec, mode=self.mode, shock_C=self.shock_C,
                            shock_theta=self.shock_theta, source=prob.source)


@dataclass
class RunOutcome:
    config: RunConfig
    state: object = None
    trace: EnergyTrace = field(default_factory=EnergyTrace)
    snapshots: list = field(default_factory=list)
    dt: Optional[float] = None
    steps: int = 0
    wall_time: float = 0.0
    error_l2: Optional[float] = None
    blowup_time: Optional[float] = None

    @property
    def ok(self):
        return self.blowup_time is None

    def manifest(self):
        final_energy = self.trace.energies[-1] if len(self.trace) else None
        return {
            "scheme": self.config.scheme,
            "config": asdict(self.config),
            "dt": self.dt,
            "steps": self.steps,
            "wall_time": self.wall_time,
            "final_energy": final_energy,
            "error_l2": self.error_l2,
            "blowup_time": self.blowup_time,
            "snapshots": [{"t": t, "file": _snapshot_name(k)} for k, (t, _) in enumerate(self.snapshots)],
        }


def simulate(cfg):
    """Run one configuration in memory; blow-up is reported, not raised."""
    cfg = cfg.resolved()
    prob = get_problem(cfg.problem, ElasticConstants(cfg.alpha, cfg.beta))
    mesh = prob.mesh(cfg.N)
    basis = make_basis(cfg.p)
    st0 = prob.initial_state(cfg.formulation, mesh, basis)
    f = rate_function(cfg.scheme_config(prob), cfg.formulation, mesh, basis)
    controls = TimeControls(cfg.t_end, cfg.cfl_factor, cfg.snapshot_times)

    outcome = RunOutcome(cfg, dt=cfl_time_step(cfg.cfl_factor, mesh.dx, c_sup(prob.ec)))
    start = time.perf_counter()
    try:
        res = march(f, st0, controls, c_sup(prob.ec), energy=discrete_energy)
    except BlowUpError as err:
        outcome.wall_time = time.perf_counter() - start
        outcome.blowup_time = err.t
        if err.trace is not None:
            outcome.trace = err.trace
        return outcome
    outcome.wall_time = time.perf_counter() - start
    outcome.state, outcome.trace, outcome.snapshots = res.state, res.trace, res.snapshots
    outcome.dt, outcome.steps = res.dt, res.steps
    if prob.exact is not None:
        outcome.error_l2 = l2_error_psi(res.state, prob.exact, cfg.t_end)
    return outcome


def _fmt(v):
    return repr(float(v))


def _snapshot_name(k):
    return f"snapshot_{k:04d}.csv"


def write_snapshot(path, st):
    """CSV ``x,psi,a,b`` with one row per GLL node in ascending x."""
    x = st.mesh.nodes(st.basis).ravel()
    cols = [st.data[2].ravel(), st.data[0].ravel(), st.data[1].ravel()]
    order = np.argsort(x, kind="stable")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "psi", "a", "b"])
        for i in order:
            w.writerow([_fmt(x[i])] + [_fmt(col[i]) for col in cols])


def write_energy(path, trace):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "E"])
        for t, e in zip(trace.times, trace.energies):
            w.writerow([_fmt(t), _fmt(e)])


def write_outputs(outcome, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for k, (_, st) in enumerate(outcome.snapshots):
        write_snapshot(out / _snapshot_name(k), st)
    write_energy(out / "energy.csv", outcome.trace)
    with open(out / "manifest.json", "w") as fh:
        json.dump(outcome.manifest(), fh, indent=2)
        fh.write("\n")


def run(cfg):
    """Simulate and write files; returns the exit code."""
    try:
        outcome = simulate(cfg)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    cfg = outcome.config
    try:
        write_outputs(outcome, cfg.output or ".")
    except OSError as err:
        print(f"error: cannot write output: {err}", file=sys.stderr)
        return EXIT_ERROR
    if not outcome.ok:
        print(f"error: solution blew up at t={outcome.blowup_time!r}", file=sys.stderr)
        return EXIT_BLOWUP
    return EXIT_OK


def _convergence_point(cfg):
    outcome = simulate(cfg)
    if not outcome.ok:
        raise BlowUpError(outcome.blowup_time)
    return outcome.error_l2


def convergence_table(template, i_values, jobs=1):
    """Rows ``(i, N, error, rate)`` for the manufactured problem with N = 20 * 2**i.

    ``rate`` is None for the first row.
    """
    i_values = list(i_values)
    if not i_values:
        raise ValueError("i_range must be nonempty")
    cfgs = [replace(template, problem="manufactured", N=20 * 2 ** i) for i in i_values]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            errors = list(pool.map(_convergence_point, cfgs))
    else:
        errors = [_convergence_point(c) for c in cfgs]
    rates = [None] + (convergence_rates(errors) if len(errors) > 1 else [])
    return [(i, c.N, e, r) for i, c, e, r in zip(i_values, cfgs, errors, rates)]


def write_convergence(fh, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["i", "N", "error", "rate"])
    for i, N, e, r in rows:
        w.writerow([i, N, _fmt(e), "" if r is None else _fmt(r)])


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for blow-up
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _float_list(text):
    return [float(s) for s in text.replace(",", " ").split()]


def _add_common(sp):
    sp.add_argument("scheme", nargs="?", help="shorthand such as vw3d (formulation, order, c/d)")
    sp.add_argument("--formulation", choices=[f.value for f in Formulation])
    sp.add_argument("--mode", choices=[m.value for m in Mode])
    sp.add_argument("--p", type=int)
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--beta", type=float, default=1.5)
    sp.add_argument("--t-end", type=float)
    sp.add_argument("--shock-C", type=float, default=0.1)
    sp.add_argument("--shock-theta", type=float, default=1.0)
    sp.add_argument("--cfl", type=float, default=0.1, help="CFL factor in dt = cfl * dx / sup c")


def build_parser():
    parser = _Parser(prog="vwdg", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("run", help="single simulation")
    _add_common(sp)
    sp.add_argument("--problem", choices=PROBLEM_NAMES, default="gaussian")
    sp.add_argument("--N", type=int)
    sp.add_argument("--snapshot-times", type=_float_list,
                    help="comma or space separated times; default is t_end only")
    sp.add_argument("--output", default=".", help="output directory")

    sp = sub.add_parser("convergence", help="manufactured-solution convergence table")
    _add_common(sp)
    sp.add_argument("--i-min", type=int, default=4)
    sp.add_argument("--i-max", type=int, default=8)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--output", help="CSV file; stdout when omitted")
    return parser


def _config_from_args(args):
    form, p, mode = "vw", 3, "conservative"
    if args.scheme is not None:
        form, p, mode = parse_scheme(args.scheme)
        for flag, given, implied in (("formulation", args.formulation, form.value),
                                     ("mode", args.mode, mode.value), ("p", args.p, p)):
            if given is not None and given != implied:
                raise ValueError(f"--{flag} {given} contradicts scheme {args.scheme}")
    form = args.formulation or form
    mode = args.mode or mode
    p = p if args.p is None else args.p
    kw = dict(formulation=form, mode=mode, p=p, alpha=args.alpha, beta=args.beta,
              t_end=args.t_end, shock_C=args.shock_C, shock_theta=args.shock_theta,
              cfl_factor=args.cfl)
    if args.command == "run":
        kw.update(problem=args.problem, N=args.N, snapshot_times=args.snapshot_times,
                  output=args.output)
    else:
        kw.update(problem="manufactured", t_end=1.0 if args.t_end is None else args.t_end)
    return RunConfig(**kw)


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        cfg = _config_from_args(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR

    if args.command == "run":
        return run(cfg)

    try:
        cfg.resolved()
        if args.i_min > args.i_max:
            raise ValueError("i_range must be nonempty")
        rows = convergence_table(cfg, range(args.i_min, args.i_max + 1), jobs=args.jobs)
    except BlowUpError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BLOWUP
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    try:
        if args.output:
            with open(args.output, "w", newline="") as fh:
                write_convergence(fh, rows)
        else:
            write_convergence(sys.stdout, rows)
    except OSError as err:
        print(f"error: cannot write output: {err}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
