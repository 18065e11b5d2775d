"""Command-line front end.

Subcommands cover each computation of the library: ``divergence``,
``arc``, ``metric``, ``model``, ``solve``, ``geodesic``, ``kms`` and
the ``verify`` runner that executes the whole check registry.  Matrix
inputs come from JSON files (see :mod:`modman.io_json`); commands that
work on random instances accept ``--dim``/``--seed`` instead of file
arguments.  Reports go to stdout or ``--out`` as JSON (default) or CSV.

Exit codes: 0 on success and on an all-pass verify, 1 when any verify
check fails, 2 on input or numeric errors.  MODMAN_THREADS caps the
parallelism of verify trials; output is byte-identical for identical
configuration and seed either way.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .arcs import exponential_arc
from .divergence import araki_divergence, araki_dual_form, umegaki_divergence
from .errors import InputError, ModmanError
from .io_json import density_from_json, load_json, matrix_from_json, model_from_json
from .km_metric import metric_context
from .matfun import matrix_power_complex
from .sampling import random_density, random_hermitian
from .standard_form import build_standard_form
from .submanifold import m_geodesic
from .verify import DEFAULT_TRIALS, check_names, run_verify

_DIM_RANGE = (2, 64)


def _check_dim(dim: int) -> int:
    if not _DIM_RANGE[0] <= dim <= _DIM_RANGE[1]:
        raise InputError(f"--dim must lie in [{_DIM_RANGE[0]}, {_DIM_RANGE[1]}]")
    return dim


def _rng(args) -> np.random.Generator:
    return np.random.default_rng(args.seed)


def _load_density(args, attr: str, rng_holder: dict):
    """Density from a file argument, or a seeded random one under --dim."""
    path = getattr(args, attr, None)
    if path is not None:
        return density_from_json(load_json(path))
    if args.dim is None:
        raise InputError(f"provide --{attr.replace('_', '-')} FILE or --dim N")
    rng = rng_holder.setdefault("rng", _rng(args))
    return random_density(_check_dim(args.dim), rng)


def _load_hermitian(args, attr: str, rng_holder: dict, dim: int):
    path = getattr(args, attr, None)
    if path is not None:
        return matrix_from_json(load_json(path))
    if args.dim is None:
        raise InputError(f"provide --{attr.replace('_', '-')} FILE or --dim N")
    rng = rng_holder.setdefault("rng", _rng(args))
    return random_hermitian(dim, rng)


def _vector(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",") if v.strip() != ""])
    except ValueError as exc:
        raise InputError(f"expected a comma-separated vector, got {text!r}") from exc


# -- report writing -----------------------------------------------------------


def _csv_lines(report: dict) -> list:
    if report["command"] == "verify":
        lines = ["name,anchor,trials,max_residual,tolerance,pass"]
        for c in report["checks"]:
            lines.append(f"{c['name']},{c['anchor']},{c['trials']},"
                         f"{c['max_residual']!r},{c['tolerance']!r},{c['pass']}")
        return lines
    if "rows" in report:
        lines = ["t,quantity,value"]
        for row in report["rows"]:
            t = row["t"]
            for key in sorted(row):
                if key == "t":
                    continue
                lines.append(f"{t!r},{key},{row[key]!r}")
        return lines
    lines = ["quantity,value"]
    for key in sorted(report):
        if key in ("command", "config"):
            continue
        value = report[key]
        if isinstance(value, (list, dict)):
            value = json.dumps(value, sort_keys=True)
            lines.append(f'{key},"{value}"')
        else:
            lines.append(f"{key},{value!r}")
    return lines


def write_report(report: dict, out=None, fmt: str = "json") -> None:
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = "\n".join(_csv_lines(report)) + "\n"
    else:
        raise InputError(f"unknown format {fmt!r}")
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- subcommand implementations ----------------------------------------------


def _cmd_divergence(args) -> dict:
    holder = {}
    sigma = _load_density(args, "sigma", holder)
    tau = _load_density(args, "tau", holder)
    values = {
        "araki": araki_divergence(sigma, tau),
        "umegaki": umegaki_divergence(sigma, tau),
        "dual": araki_dual_form(sigma, tau),
    }
    spread = max(abs(a - b) for a in values.values() for b in values.values())
    return {"command": "divergence", **values, "max_disagreement": spread}


def _cmd_arc(args) -> dict:
    holder = {}
    rho = _load_density(args, "rho", holder)
    h = _load_hermitian(args, "generator", holder, rho.dim)
    arc = exponential_arc(rho, h)
    rows = []
    for t in np.linspace(args.t0, args.t1, args.steps):
        t = float(t)
        rows.append({
            "t": t,
            "log_partition": arc.log_partition(t),
            "potential": arc.potential(t),
            "energy": arc.energy(t),
        })
    return {"command": "arc", "rows": rows}


def _cmd_metric(args) -> dict:
    holder = {}
    rho = _load_density(args, "rho", holder)
    h = _load_hermitian(args, "h", holder, rho.dim)
    k = _load_hermitian(args, "k", holder, rho.dim)
    ctx = metric_context(rho)
    hc = h - rho.expect(h) * np.eye(rho.dim)
    kc = k - rho.expect(k) * np.eye(rho.dim)
    nodes, weights = np.polynomial.legendre.leggauss(64)
    quad = 0.0
    for node, weight in zip(0.5 * (nodes + 1), 0.5 * weights):
        quad += weight * np.trace(matrix_power_complex(rho, node) @ hc
                                  @ matrix_power_complex(rho, 1 - node) @ kc).real
    return {
        "command": "metric",
        "kubo_mori": ctx.km_inner(h, k),
        "quadrature": float(quad),
        "eguchi_fd": ctx.eguchi_fd_inner(h, k, step=args.step),
        "step": args.step,
    }


def _cmd_model(args) -> dict:
    model = model_from_json(load_json(args.model), orthonormalize=args.orthonormalize)
    theta = _vector(args.theta)
    return {
        "command": "model",
        "theta": theta.tolist(),
        "eta": model.dual_coords(theta).tolist(),
        "potential": model.potential(theta),
        "log_partition": model.log_partition(theta),
        "metric": model.metric_at(theta).tolist(),
    }


def _cmd_solve(args) -> dict:
    model = model_from_json(load_json(args.model), orthonormalize=args.orthonormalize)
    eta = _vector(args.eta)
    theta = model.solve_theta(eta)
    residual = float(np.abs(model.dual_coords(theta) - eta).max())
    return {
        "command": "solve",
        "eta": eta.tolist(),
        "theta": theta.tolist(),
        "residual": residual,
    }


def _cmd_geodesic(args) -> dict:
    rows = []
    ts = [float(t) for t in np.linspace(0.0, 1.0, args.steps)]
    if args.kind == "e":
        if args.model is None or args.theta_a is None or args.theta_b is None:
            raise InputError("e-geodesics need --model, --theta-a and --theta-b")
        model = model_from_json(load_json(args.model))
        ta, tb = _vector(args.theta_a), _vector(args.theta_b)
        start, end = model.state_at(ta), model.state_at(tb)
        points = [model.e_geodesic(ta, tb, t) for t in ts]
    else:
        holder = {}
        start = _load_density(args, "sigma_a", holder)
        end = _load_density(args, "sigma_b", holder)
        points = [m_geodesic(start, end, t) for t in ts]
    for t, point in zip(ts, points):
        rows.append({
            "t": t,
            "divergence_from_start": umegaki_divergence(point, start),
            "divergence_to_end": umegaki_divergence(point, end),
        })
    return {"command": "geodesic", "kind": args.kind, "rows": rows}


def _cmd_kms(args) -> dict:
    holder = {}
    rho = _load_density(args, "rho", holder)
    x = _load_hermitian(args, "x", holder, rho.dim)
    y = _load_hermitian(args, "y", holder, rho.dim)
    g = build_standard_form(rho)
    return {"command": "kms", "t": args.t, "residual": g.kms_residual(x, y, args.t)}


def _parse_tols(pairs) -> dict:
    overrides = {}
    for item in pairs or []:
        if "=" in item:
            name, _, value = item.partition("=")
            if name not in check_names() and name != "*":
                raise InputError(f"unknown check name in --tol: {name!r}")
        else:
            name, value = "*", item
        try:
            tol = float(value)
        except ValueError as exc:
            raise InputError(f"bad tolerance value {value!r}") from exc
        if tol <= 0:
            raise InputError("tolerances must be positive")
        overrides[name] = tol
    return overrides


def _cmd_verify(args) -> dict:
    dim = None if args.dim is None else _check_dim(args.dim)
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    return run_verify(dim=dim, seed=args.seed, trials=args.trials,
                      tol_overrides=_parse_tols(args.tol), threads=args.threads)


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modman",
        description="Modular-operator toolkit for quantum statistical manifolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the report to this path instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for random instances (nonnegative)")
        p.add_argument("--dim", type=int, default=None,
                       help="dimension for random instances (2..64)")

    p = sub.add_parser("divergence", help="relative entropy of two states, three ways")
    common(p)
    p.add_argument("--sigma", help="JSON file with the first density matrix")
    p.add_argument("--tau", help="JSON file with the second density matrix")
    p.set_defaults(fn=_cmd_divergence)

    p = sub.add_parser("arc", help="sample an exponential arc and its potentials")
    common(p)
    p.add_argument("--rho", help="JSON file with the base density matrix")
    p.add_argument("--generator", help="JSON file with the Hermitian generator")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=11)
    p.set_defaults(fn=_cmd_arc)

    p = sub.add_parser("metric", help="Kubo-Mori product of two directions, three ways")
    common(p)
    p.add_argument("--rho", help="JSON file with the base density matrix")
    p.add_argument("--h", help="JSON file with the first direction")
    p.add_argument("--k", help="JSON file with the second direction")
    p.add_argument("--step", type=float, default=1e-3,
                   help="finite-difference step for the divergence route")
    p.set_defaults(fn=_cmd_metric)

    p = sub.add_parser("model", help="evaluate a parametric family at given coordinates")
    common(p)
    p.add_argument("--model", required=True, help="JSON file with rho and generators")
    p.add_argument("--theta", required=True, help="comma-separated natural coordinates")
    p.add_argument("--orthonormalize", action="store_true")
    p.set_defaults(fn=_cmd_model)

    p = sub.add_parser("solve", help="invert expectation coordinates by Newton iteration")
    common(p)
    p.add_argument("--model", required=True, help="JSON file with rho and generators")
    p.add_argument("--eta", required=True, help="comma-separated expectation coordinates")
    p.add_argument("--orthonormalize", action="store_true")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("geodesic", help="sample a geodesic of either affine structure")
    common(p)
    p.add_argument("--kind", choices=("e", "m"), default="e")
    p.add_argument("--model", help="JSON model file (e-geodesics)")
    p.add_argument("--theta-a", dest="theta_a", help="start coordinates (e-geodesics)")
    p.add_argument("--theta-b", dest="theta_b", help="end coordinates (e-geodesics)")
    p.add_argument("--sigma-a", dest="sigma_a", help="start state file (m-geodesics)")
    p.add_argument("--sigma-b", dest="sigma_b", help="end state file (m-geodesics)")
    p.add_argument("--steps", type=int, default=11)
    p.set_defaults(fn=_cmd_geodesic)

    p = sub.add_parser("kms", help="equilibrium boundary-condition residual")
    common(p)
    p.add_argument("--rho", help="JSON file with the density matrix")
    p.add_argument("--x", help="JSON file with the first observable")
    p.add_argument("--y", help="JSON file with the second observable")
    p.add_argument("--t", type=float, default=0.0)
    p.set_defaults(fn=_cmd_kms)

    p = sub.add_parser("verify", help="run the full identity-check registry")
    common(p)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--tol", action="append", metavar="[NAME=]VALUE",
                   help="override a check tolerance (repeatable); bare VALUE "
                        "applies to every check")
    p.add_argument("--threads", type=int, default=None,
                   help="trial parallelism (default: MODMAN_THREADS or 1)")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None and args.seed < 0:
        parser.error("--seed must be nonnegative")
    try:
        report = args.fn(args)
        write_report(report, out=args.out, fmt=args.format)
    except ModmanError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if report.get("command") == "verify" and not report["all_pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
