"""Experiment command line: run a catalog problem, persist the convergence
report as JSON, the residual history as CSV, and optional solution
snapshots as CSV.

Exit codes: 0 converged, 2 usage error, 3 not converged within maxit,
4 inadmissible state encountered, 5 divergence.
"""

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import problems
from .acoustics import AcousticsStep
from .blockprec import PrecConfig, char_outer_iteration
from .grid import SpaceTimeGrid
from .nonlinear import (NonlinearConfig, nonlinear_solve,
                        replicated_initial_guess)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3
EXIT_INADMISSIBLE = 4
EXIT_DIVERGED = 5

VAR_NAMES = {
    "acoustics": ("p", "u"),
    "swe": ("h", "hu"),
    "euler": ("rho", "mom", "E"),
}

PREC_SHAPES = {"jacobi": "diagonal", "gs": "triangular"}


def _fmt(x):
    # full round-trip decimal so reruns and downstream tools are exact
    return format(float(x), ".17g")


def read_config_file(path):
    """Flat key=value configuration; keys match the CLI flag names."""
    values = {}
    for ln, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(f"{path}:{ln}: expected key=value")
        key, val = line.split("=", 1)
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def apply_config_file(ctx, params):
    """Fill parameters that were not given on the command line from the
    config file, keeping CLI flags authoritative."""
    cfg_path = params.pop("config", None)
    if not cfg_path:
        return params
    file_vals = read_config_file(cfg_path)
    for key, val in file_vals.items():
        if key not in params:
            raise click.UsageError(f"unknown config key {key!r}")
        src = ctx.get_parameter_source(key)
        if src is not None and src.name == "COMMANDLINE":
            continue
        params[key] = val
    return params


def parse_snapshots(text):
    if not text:
        return []
    try:
        return [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise click.UsageError(f"bad snapshot list {text!r}")


def write_residuals(path, history):
    with open(path, "w") as f:
        f.write("iteration,relative_residual\n")
        for k, r in enumerate(history):
            f.write(f"{k},{_fmt(r)}\n")


def write_snapshot(path, x, t, names, values):
    with open(path, "w") as f:
        f.write("x,t," + ",".join(names) + "\n")
        for i in range(x.shape[0]):
            row = [_fmt(x[i]), _fmt(t)] + [_fmt(values[v, i])
                                           for v in range(len(names))]
            f.write(",".join(row) + "\n")


def write_outputs(out_dir, kind, config, grid, report, q, snapshots):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = VAR_NAMES[kind]
    snap_files = []
    times = grid.times()
    for t_req in snapshots:
        n = int(np.argmin(np.abs(times - t_req)))
        fname = f"snapshot_{_fmt(times[n])}.csv"
        write_snapshot(out / fname, grid.cell_centers(), times[n], names, q[n])
        snap_files.append(fname)
    write_residuals(out / "residuals.csv", report.residual_history)
    doc = {
        "kind": kind,
        "config": config,
        "grid": {"n_x": grid.n_x, "n_t": grid.n_t, "dt": grid.dt,
                 "h": grid.h, "x_lo": grid.x_lo, "x_hi": grid.x_hi,
                 "bc": grid.bc},
        "converged": report.converged,
        "iterations": report.iterations,
        "residual_history": report.residual_history,
        "inner_iteration_counts": report.inner_iteration_counts,
        "failure": report.failure,
        "wall_time": report.wall_time,
        "snapshots": snap_files,
    }
    with open(out / "report.json", "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def exit_code(report):
    if report.converged:
        return EXIT_OK
    if report.failure == "diverged":
        return EXIT_DIVERGED
    if report.failure:
        return EXIT_INADMISSIBLE
    return EXIT_NOT_CONVERGED


def solver_options(fn):
    opts = [
        click.option("--config", type=click.Path(exists=True),
                     help="key=value file supplying defaults for any flag"),
        click.option("--nx", type=int, default=256, show_default=True),
        click.option("--nt", type=int, default=None,
                     help="override the time-point count"),
        click.option("--cfl", type=float, default=None,
                     help="override the catalog CFL constant"),
        click.option("--m", type=int, default=8, show_default=True,
                     help="CF-splitting coarsening factor"),
        click.option("--prec", type=click.Choice(sorted(PREC_SHAPES)),
                     default="jacobi", show_default=True),
        click.option("--blocks", type=click.Choice(["true", "approx"]),
                     default="true", show_default=True),
        click.option("--inner", type=click.Choice(["exact", "mgrit"]),
                     default="exact", show_default=True),
        click.option("--vcycles", type=int, default=1, show_default=True),
        click.option("--maxit", type=int, default=None),
        click.option("--tol", type=float, default=1e-10, show_default=True),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--out", type=click.Path(), default="out",
                     show_default=True),
        click.option("--snapshot", type=str, default="",
                     help="comma-separated times to dump as CSV"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """All-at-once space-time solvers for 1D hyperbolic systems."""


@main.command()
@solver_options
@click.option("--material", type=int, default=1, show_default=True,
              help="catalog medium 1-5")
@click.pass_context
def acoustics(ctx, **params):
    """Solve the acoustics benchmark with the characteristic block
    preconditioned iteration."""
    params = apply_config_file(ctx, params)
    nx = int(params["nx"])
    material_id = int(params["material"])
    if material_id not in (1, 2, 3, 4, 5):
        raise click.UsageError(f"material must be 1-5, got {material_id}")
    cfl = problems.ACOUSTICS_CFL if params["cfl"] is None \
        else float(params["cfl"])
    nt = None if params["nt"] is None else int(params["nt"])
    seed = int(params["seed"])
    grid, material, q0 = problems.acoustics_problem(
        material_id, nx, cfl=cfl, n_t=nt, seed=seed)
    system = AcousticsStep(grid, material)
    b = np.zeros((grid.n_t, 2, grid.n_x))
    b[0] = q0
    # random initial space-time iterate, reproducible through the seed
    rng = np.random.default_rng(seed)
    q_init = rng.standard_normal(b.shape)
    q_init[0] = q0
    cfg = PrecConfig(shape=PREC_SHAPES[params["prec"]],
                     blocks=params["blocks"], inner=params["inner"],
                     vcycles=int(params["vcycles"]), m=int(params["m"]))
    maxit = 60 if params["maxit"] is None else int(params["maxit"])
    q, report = char_outer_iteration(system, b, q0=q_init, cfg=cfg,
                                     maxit=maxit, tol=float(params["tol"]))
    config = {k: v for k, v in params.items()}
    config.update(material=material_id, cfl=cfl, maxit=maxit)
    write_outputs(params["out"], "acoustics", config, grid, report, q,
                  parse_snapshots(params["snapshot"]))
    sys.exit(exit_code(report))


def _run_nonlinear(ctx, kind, params):
    params = apply_config_file(ctx, params)
    name = params["problem"]
    try:
        prob = problems.CATALOG[name]
    except KeyError:
        raise click.UsageError(f"unknown problem {name!r}")
    if prob.model_kind != kind:
        raise click.UsageError(f"problem {name!r} belongs to {prob.model_kind}")
    nx = int(params["nx"])
    eps = None if params["eps"] is None else float(params["eps"])
    cfl = None if params["cfl"] is None else float(params["cfl"])
    nt = None if params["nt"] is None else int(params["nt"])
    model, grid, q0 = problems.nonlinear_problem(name, nx, eps=eps, cfl=cfl,
                                                 n_t=nt)
    prec = PrecConfig(shape=PREC_SHAPES[params["prec"]],
                      blocks=params["blocks"], inner=params["inner"],
                      vcycles=int(params["vcycles"]), m=int(params["m"]))
    maxit = 15 if params["maxit"] is None else int(params["maxit"])
    cfg = NonlinearConfig(maxit=maxit, tol=float(params["tol"]),
                          inner_it=int(params["inner_it"]),
                          linear_mode=params["linear"], prec=prec,
                          m=int(params["m"]))
    q_init = replicated_initial_guess(q0, grid.n_t)
    q, report = nonlinear_solve(model, grid, q_init, cfg)
    config = {k: v for k, v in params.items()}
    config.update(problem=name, eps=prob.default_eps if eps is None else eps,
                  cfl=prob.cfl if cfl is None else cfl, maxit=maxit)
    write_outputs(params["out"], kind, config, grid, report, q,
                  parse_snapshots(params["snapshot"]))
    sys.exit(exit_code(report))


def nonlinear_options(fn):
    opts = [
        click.option("--problem", type=str, required=True,
                     help="catalog problem id"),
        click.option("--eps", type=float, default=None,
                     help="perturbation amplitude (catalog default if unset)"),
        click.option("--linear", type=click.Choice(["exact", "prec"]),
                     default="exact", show_default=True,
                     help="linearized solve: time-stepping or block prec"),
        click.option("--inner-it", type=int, default=1, show_default=True),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@main.command()
@solver_options
@nonlinear_options
@click.pass_context
def swe(ctx, **params):
    """Solve a shallow-water benchmark with the nonlinear residual
    correction scheme."""
    _run_nonlinear(ctx, "swe", params)


@main.command()
@solver_options
@nonlinear_options
@click.pass_context
def euler(ctx, **params):
    """Solve an Euler-equations benchmark with the nonlinear residual
    correction scheme."""
    _run_nonlinear(ctx, "euler", params)


if __name__ == "__main__":
    main()
