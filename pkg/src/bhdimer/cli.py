"""Command-line front end: deterministic CSV for the scan-heavy workflows.

Subcommands: predict, spectrum, dynamics, scan, oddeven. Output is CSV with
'#'-prefixed metadata lines recording the resolved configuration, then a
header row; floats are printed with 12 significant digits so identical flags
give byte-identical files. Exit codes: 0 success, 2 invalid arguments,
3 convergence failure.
"""

import argparse
import dataclasses
import os
import sys

import numpy as np

from . import dynamics, effective, floquet, model
from .model import ModelParams
from .numerics import ConvergenceError


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".12g")
    return str(x)


def _write_csv(path, meta, header, rows):
    lines = [f"# {k} = {_fmt(v)}" for k, v in sorted(meta.items())]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _add_common(p, grid=False):
    p.add_argument("--n", type=int, required=True, help="particle number N")
    p.add_argument("--v", type=float, default=1.0, help="hopping amplitude (default 1)")
    p.add_argument("--g0", type=float, default=0.0, help="static interaction strength")
    p.add_argument("--omega", type=float, required=True, help="drive frequency")
    p.add_argument("--output", "-o", default="-", help="output CSV path ('-' = stdout)")
    if grid:
        p.add_argument("--grid-min", type=float, required=True, help="first g1/omega value")
        p.add_argument("--grid-max", type=float, required=True, help="last g1/omega value")
        p.add_argument("--grid-steps", type=int, required=True, help="number of grid points")
        p.add_argument("--threads", type=int, default=None,
                       help="max parallel grid workers (default: machine cpu count)")
    else:
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--g1", type=float, help="drive amplitude g1")
        grp.add_argument("--g1-over-omega", type=float, help="drive amplitude as g1/omega")


def _params_from(args):
    g1 = args.g1 if args.g1 is not None else args.g1_over_omega * args.omega
    return ModelParams(n=args.n, v=args.v, g0=args.g0, g1=g1, omega=args.omega)


def _grid_from(args):
    if args.grid_steps < 1:
        raise ValueError("--grid-steps must be >= 1")
    if args.grid_steps == 1:
        return np.array([args.grid_min])
    return np.linspace(args.grid_min, args.grid_max, args.grid_steps)


def _meta_from(args, extra=None):
    skip = {"func", "output"}
    meta = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    if extra:
        meta.update(extra)
    return meta


def _threads(args):
    t = getattr(args, "threads", None)
    if t is None:
        t = os.cpu_count() or 1
    if t < 1:
        raise ValueError("--threads must be >= 1")
    return t


def cmd_predict(args):
    preds = effective.predict_cdt_points(args.n, args.max_root, v=args.v, omega=args.omega)
    rows = [
        (p.i, p.root_index, p.g1_over_omega, p.expected_pairs, p.validity_ratio)
        for p in preds
    ]
    _write_csv(
        args.output,
        _meta_from(args),
        ["i", "root_index", "g1_over_omega", "expected_pairs", "validity_ratio"],
        rows,
    )
    return 0


def cmd_spectrum(args):
    template = ModelParams(n=args.n, v=args.v, g0=args.g0, g1=0.0, omega=args.omega)
    grid = _grid_from(args)
    spectra = floquet.scan_spectrum(template, grid, tol=args.tol, workers=_threads(args))
    bands = floquet.connect_bands(spectra)
    rows = []
    for p, spec in enumerate(spectra):
        for s in range(spec.quasienergies.size):
            rows.append((grid[p], int(bands[p, s]), spec.quasienergies[s], int(spec.parities[s])))
    _write_csv(
        args.output,
        _meta_from(args),
        ["g1_over_omega", "band_index", "quasienergy", "parity"],
        rows,
    )
    return 0


def cmd_dynamics(args):
    params = _params_from(args)
    used_r = params.g1 / params.omega
    if args.refine_degeneracy is not None:
        lo, hi = args.refine_degeneracy
        points = floquet.find_degeneracies(params, (lo, hi))
        if not points:
            raise ConvergenceError(
                f"no opposite-parity degeneracy found in bracket [{lo:g}, {hi:g}]"
            )
        used_r = min(points, key=lambda p: abs(p.g1_over_omega - used_r)).g1_over_omega
        params = dataclasses.replace(params, g1=used_r * params.omega)
    sample_dt = args.sample_dt if args.sample_dt is not None else params.period / 8.0
    meta = _meta_from(args, {"g1_over_omega_used": used_r, "sample_dt_used": sample_dt})
    meta.pop("refine_degeneracy", None)
    if args.t_max < sample_dt:
        rows = [(0.0, 1.0)]
    else:
        psi0 = dynamics.initial_state_all_left(model.make_basis(params.n))
        traj = dynamics.evolve(psi0, params, args.t_max, sample_dt=sample_dt, qe_tol=args.tol)
        rows = list(zip(traj.times, traj.s_values))
    _write_csv(args.output, meta, ["t", "S"], rows)
    return 0


def cmd_scan(args):
    template = ModelParams(n=args.n, v=args.v, g0=args.g0, g1=0.0, omega=args.omega)
    grid = _grid_from(args)
    result = dynamics.scan_imbalance(
        template,
        grid,
        t_total=args.t_total,
        g0_over_omega=args.g0_over_omega,
        qe_tol=args.tol,
        workers=_threads(args),
    )
    rows = list(zip(result.grid, result.s_avg))
    _write_csv(args.output, _meta_from(args), ["g1_over_omega", "s_avg"], rows)
    return 0


def cmd_oddeven(args):
    template = ModelParams(n=args.n_base, v=args.v, g0=args.g0, g1=0.0, omega=args.omega)
    rows = []
    for delta in args.delta:
        rep = dynamics.odd_even_experiment(
            args.n_base, delta, template, t_total=args.t_total, qe_tol=args.tol
        )
        rows.append((rep.delta, rep.g1_over_omega, rep.s_avg, rep.s_min))
    _write_csv(
        args.output,
        _meta_from(args),
        ["delta", "g1_over_omega_used", "s_avg", "s_min"],
        rows,
    )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bhdimer",
        description="Floquet analysis of the interaction-modulated two-mode Bose-Hubbard dimer",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("predict", help="CDT drive ratios from the Bessel zero condition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-root", type=int, required=True, help="largest J0 root index")
    p.add_argument("--v", type=float, default=1.0)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("spectrum", help="quasienergy bands over a g1/omega grid")
    _add_common(p, grid=True)
    p.add_argument("--tol", type=float, default=1e-6, help="quasienergy convergence tolerance")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("dynamics", help="imbalance S(t) from the all-left state")
    _add_common(p)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--sample-dt", type=float, default=None, help="sample spacing (default T/8)")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument(
        "--refine-degeneracy",
        nargs=2,
        type=float,
        metavar=("LO", "HI"),
        default=None,
        help="replace g1/omega by the refined degeneracy found in this bracket",
    )
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("scan", help="long-time average <<S>> over a g1/omega grid")
    _add_common(p, grid=True)
    p.add_argument("--t-total", type=float, default=20000.0)
    p.add_argument("--g0-over-omega", type=float, default=None,
                   help="override g0 as g0/omega (self-trapping study)")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oddeven", help="odd/even particle-number localization check")
    p.add_argument("--n-base", type=int, required=True)
    p.add_argument("--delta", type=int, nargs="+", choices=(1, 2), default=[1, 2])
    p.add_argument("--v", type=float, default=1.0)
    p.add_argument("--g0", type=float, default=0.0)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--t-total", type=float, default=20000.0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_oddeven)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
