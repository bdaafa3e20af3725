# coding=utf-8
"""``thinfilm`` command-line tool.

Every subcommand writes into its own output directory (``-o``) and finishes by writing a
``manifest.json`` with the configuration echo, the exit status and the sha256 digest of every
emitted file. Exit status: 0 success, 1 configuration or argument error, 2 positivity
violation, 3 unrecoverable step.
"""
from __future__ import annotations

import argparse
import logging
import sys
import warnings

import numpy as np
import pandas as pd

from thinfilm import __version__
from thinfilm.cli.io import OutputDirectory, RunManifest
from thinfilm.core.base import FilmState, build_grid, validate_params
from thinfilm.core.config import dump_config, load_config
from thinfilm.diagnostics.base import diagnose_trajectory
from thinfilm.reconstruct.base import fsi_family, reconstruct_snapshot, snapshot_report
from thinfilm.residual.base import DEFAULT_EPS, eps_sweep_slopes, limit_residual
from thinfilm.residual.testfunctions import BUNDLED_TEST_PAIRS, get_test_pair
from thinfilm.scaling.base import groups_table, dimensionless_numbers, load_physical_params, \
    solver_config
from thinfilm.solver.base import dispersion_rate
from thinfilm.solver.estimator import load_trajectory, run
from thinfilm.solver.mms import DEFAULT_H, DEFAULT_H0, DEFAULT_PHI, DEFAULT_W, \
    spatial_convergence, temporal_convergence
from thinfilm.utils.errors import PositivityViolation, ThinFilmError, UnrecoverableStep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_POSITIVITY = 2
EXIT_UNRECOVERABLE = 3


def exit_status(exc):
    if isinstance(exc, PositivityViolation):
        return EXIT_POSITIVITY
    if isinstance(exc, UnrecoverableStep):
        return EXIT_UNRECOVERABLE
    return EXIT_CONFIG


def float_list(text):
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated numbers, got {!r}".format(text))


def int_list(text):
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got {!r}".format(text))


def mode_range(text):
    """``'1..4'`` or ``'1,2,5'``."""
    try:
        if ".." in text:
            first, last = text.split("..")
            modes = list(range(int(first), int(last) + 1))
        else:
            modes = int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a mode range like 1..4, got {!r}".format(text))
    if not modes or min(modes) < 1:
        raise argparse.ArgumentTypeError("modes must be positive integers")
    return modes


def _source(path, verbose=False):
    """Stored levels ``(t, h, w)`` and configuration from a trajectory file or a config to run."""
    if path.endswith(".npz"):
        t, h, w, config = load_trajectory(path)
        if config is None:
            raise ThinFilmError("{}: trajectory file carries no configuration".format(path))
        return (t, h, w), config
    config = load_config(path)
    trajectory = run(config, verbose=verbose)
    return (trajectory.times, trajectory.heights, trajectory.rates), config


def _write_trajectory(out, trajectory):
    grid = trajectory.grid
    pressures = trajectory.pressures()
    for i, state in enumerate(trajectory.snapshots):
        out.csv("snapshots/snapshot_{:05d}.csv".format(i),
                pd.DataFrame({"x": grid.nodes, "h": state.h, "p": pressures[i]}))
    out.csv("series.csv", trajectory.series_frame())
    out.csv("balance.csv", trajectory.balance_frame())
    out.trajectory("trajectory.npz", trajectory)


def simulate(args, out, manifest):
    config = load_config(args.config)
    manifest.config = config.to_dict()
    out.text("config.ini", dump_config(config))
    status = EXIT_OK
    try:
        trajectory = run(config, verbose=args.verbose > 0)
    except (PositivityViolation, UnrecoverableStep) as exc:
        status = exit_status(exc)
        manifest.last_good_time = exc.last_good_time
        manifest.extra["error"] = str(exc)
        trajectory = getattr(exc, "trajectory", None)
        logger.error("%s", exc)
    if trajectory is not None:
        _write_trajectory(out, trajectory)
        manifest.extra["solver"] = {key: value for key, value in trajectory.estimator_params.items()
                                    if key != "params"}
        manifest.extra["snapshots"] = len(trajectory.snapshots)
        if status == EXIT_OK:
            manifest.last_good_time = trajectory.last_good_time
    return status


def sweep_eps(args, out, manifest):
    levels, config = _source(args.source, verbose=args.verbose > 0)
    manifest.config = config.to_dict()
    pairs = [get_test_pair(name) for name in args.pairs] if args.pairs else list(BUNDLED_TEST_PAIRS)
    table = eps_sweep_slopes(levels, config.params, eps_list=args.eps, test_pairs=pairs,
                             n_jobs=args.n_jobs, check_resolution=not args.no_resolution_check)
    for pair in pairs:
        out.csv("sweep_{}.csv".format(pair.name),
                table[table["pair"] == pair.name].drop(columns="pair").reset_index(drop=True))
    rows = [dict(pair=pair.name, **limit_residual(levels, pair, config.params)) for pair in pairs]
    out.csv("limit_residual.csv", pd.DataFrame(rows, columns=["pair", "pressure", "reynolds"]))
    manifest.extra["eps"] = list(args.eps)
    manifest.extra["test_pairs"] = {pair.name: pair.version for pair in pairs}
    return EXIT_OK


def reconstruct(args, out, manifest):
    (t, h, w), config = _source(args.source, verbose=args.verbose > 0)
    manifest.config = config.to_dict()
    params = config.params
    grid = build_grid(h.shape[1])
    indices = range(len(t)) if args.snapshots is None else args.snapshots
    reports = []
    for i in indices:
        if not 0 <= i < len(t):
            raise ValueError("snapshot index {} out of range 0..{}".format(i, len(t) - 1))
        state = FilmState(t[i], h[i], grid, w[i])
        fields = reconstruct_snapshot(state, params)
        out.csv("v1/v1_{:05d}.csv".format(i), fields.v1.to_frame())
        for eps in args.eps or ():
            approx = fsi_family(state.h, fields.p.values, fields.v1, eps, w=state.w)
            tag = "eps_{:.6g}".format(eps)
            out.csv("{}/eta_{:05d}.csv".format(tag, i),
                    pd.DataFrame({"x": grid.nodes, "eta": approx.eta, "p": approx.p_eps,
                                  "eta_rate": approx.eta_rate}))
            out.csv("{}/v1_{:05d}.csv".format(tag, i), approx.v1_eps.to_frame())
        reports.append(snapshot_report(state, params))
    out.csv("depth_average.csv", pd.DataFrame(reports))
    manifest.extra["eps"] = list(args.eps or [])
    return EXIT_OK


def diagnose(args, out, manifest):
    (t, h, w), config = _source(args.source, verbose=args.verbose > 0)
    manifest.config = config.to_dict()
    out.csv("diagnostics.csv", diagnose_trajectory(t, h, w, config.params))
    return EXIT_OK


def _params_from_args(args):
    return validate_params(beta=args.beta, delta=args.delta, r=args.r)


def dispersion(args, out, manifest):
    params = _params_from_args(args)
    manifest.config = params.to_dict()
    modes = np.array(args.modes)
    k = 2.0 * np.pi * modes
    out.csv("dispersion.csv", pd.DataFrame({"m": modes, "k": k,
                                            "sigma": dispersion_rate(k, args.hbar, params)}))
    manifest.extra["hbar"] = args.hbar
    return EXIT_OK


def _random_profiles(seed):
    """Smooth positive height and rate profiles with random Fourier coefficients."""
    rng = np.random.default_rng(seed)
    a = rng.uniform(-0.15, 0.15, size=4)
    b = rng.uniform(-1.0, 1.0, size=4)
    h = "1 + {:.6f}*sin(2*pi*x) + {:.6f}*cos(2*pi*x) + {:.6f}*sin(4*pi*x) + {:.6f}*cos(6*pi*x)"
    w = "{:.6f}*sin(2*pi*x) + {:.6f}*cos(4*pi*x) + {:.6f}*sin(6*pi*x) + {:.6f}*cos(8*pi*x)"
    return h.format(*a), w.format(*b)


def mms(args, out, manifest):
    params = _params_from_args(args)
    manifest.config = params.to_dict()
    h_expr, w_expr = DEFAULT_H, DEFAULT_W
    if args.random_fields:
        h_expr, w_expr = _random_profiles(args.seed)
    manifest.extra["fields"] = {"h": h_expr, "w": w_expr, "phi": DEFAULT_PHI}
    out.csv("mms_space.csv", spatial_convergence(params, ns=args.ns, h_expr=h_expr,
                                                 phi_expr=DEFAULT_PHI, w_expr=w_expr))
    if not args.skip_time:
        out.csv("mms_time.csv", temporal_convergence(params, scheme=args.scheme, dts=args.dts,
                                                     t_end=args.t_end, n=args.n,
                                                     h0_expr=DEFAULT_H0))
    return EXIT_OK


def nondimensionalize(args, out, manifest):
    device = load_physical_params(args.physical)
    manifest.config = {"physical": device.to_units("SI")}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        numbers = dimensionless_numbers(device)
        table = groups_table(device)
    for warning in caught:
        logger.warning("%s", warning.message)
    manifest.extra["warnings"] = [str(warning.message) for warning in caught]
    out.csv("groups.csv", table)
    out.text("solver.ini", solver_config(numbers, n=args.n, t_end=args.t_end, h0=args.h0,
                                         f1=args.f1))
    return EXIT_OK


COMMANDS = {"simulate": simulate,
            "sweep-eps": sweep_eps,
            "reconstruct": reconstruct,
            "diagnose": diagnose,
            "dispersion": dispersion,
            "mms": mms,
            "nondimensionalize": nondimensionalize}


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors with the configuration-error exit status."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, "{}: error: {}\n".format(self.prog, message))


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", required=True, help="output directory")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized test fields (recorded in the manifest)")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--quiet", action="store_true")

    parser = ArgumentParser(prog="thinfilm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("simulate", parents=[common], help="run the solver on a config")
    p.add_argument("config")

    p = commands.add_parser("sweep-eps", parents=[common],
                            help="weak-form term slopes over a sweep of eps")
    p.add_argument("source", help="trajectory .npz written by simulate, or a config to run")
    p.add_argument("--eps", type=float_list, default=list(DEFAULT_EPS))
    p.add_argument("--pairs", type=lambda text: [s.strip() for s in text.split(",") if s.strip()])
    p.add_argument("--n-jobs", type=int, default=None)
    p.add_argument("--no-resolution-check", action="store_true")

    p = commands.add_parser("reconstruct", parents=[common],
                            help="limit velocity and approximate solutions of stored levels")
    p.add_argument("source")
    p.add_argument("--snapshots", type=int_list)
    p.add_argument("--eps", type=float_list)

    p = commands.add_parser("diagnose", parents=[common],
                            help="recompute functionals and balance residuals")
    p.add_argument("source")

    for name, help_text in (("dispersion", "linear decay rates of Fourier modes"),
                            ("mms", "manufactured-solution convergence studies")):
        p = commands.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--beta", type=float, default=12.0)
        p.add_argument("--delta", type=float, default=0.0)
        p.add_argument("--r", type=float, default=1.0)
    commands.choices["dispersion"].add_argument("--hbar", type=float, default=1.0)
    commands.choices["dispersion"].add_argument("--modes", type=mode_range, default=[1, 2, 3, 4])
    p = commands.choices["mms"]
    p.add_argument("--ns", type=int_list, default=[16, 24, 32, 48, 64])
    p.add_argument("--scheme", default="BDF2", choices=["BE", "BDF2"])
    p.add_argument("--dts", type=float_list, default=[2e-6, 1e-6, 5e-7, 2.5e-7])
    p.add_argument("--t-end", type=float, default=1e-4)
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--random-fields", action="store_true",
                   help="draw the manufactured fields from --seed")
    p.add_argument("--skip-time", action="store_true")

    p = commands.add_parser("nondimensionalize", parents=[common],
                            help="dimensionless groups and a solver config from device parameters")
    p.add_argument("physical")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--t-end", type=float, default=1e-4)
    p.add_argument("--h0", default="1 + 0.1*sin(2*pi*x)")
    p.add_argument("--f1", default="0")
    return parser


def _configure_logging(args):
    if args.quiet:
        level = logging.ERROR
    elif args.verbose > 1:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    out = OutputDirectory(args.output)
    manifest = RunManifest(command=args.command, argv=argv, version=__version__, seed=args.seed)
    try:
        status = COMMANDS[args.command](args, out, manifest)
    except (ThinFilmError, ValueError, OSError) as exc:
        status = exit_status(exc)
        manifest.last_good_time = getattr(exc, "last_good_time", None)
        manifest.extra["error"] = str(exc)
        sys.stderr.write("thinfilm {}: error: {}\n".format(args.command, exc))
    manifest.exit_status = status
    out.write_manifest(manifest)
    return status


if __name__ == "__main__":
    sys.exit(main())
