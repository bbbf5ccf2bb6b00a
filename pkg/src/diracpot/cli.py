"""Command-line interface.

Every command writes one table, either as CSV (a units comment, a header,
then rows) or as JSON ``{request, results, solver_metadata, warnings}``.
Floats are written in shortest round-trip form so that repeated runs give
byte-identical files. The output file is written atomically, so a failing
run leaves nothing behind.

Exit codes: 0 success, 2 invalid input, 3 no bound levels, 4 oracle failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__, eckart, hulthen
from .errors import DiracPotError, NoBoundLevels
from .grids import parse_grid
from .model import Branch, ProblemParams, derive, mapped_levels
from .oracle import OracleConfig, dirac_spectrum_shooting, secular_roots
from .reduction import Orbital, PROFILES

EXIT_OK, EXIT_INVALID, EXIT_NO_LEVELS, EXIT_ORACLE = 0, 2, 3, 4
_EXIT_BY_CATEGORY = {
    "InvalidParams": EXIT_INVALID,
    "NoBoundLevels": EXIT_NO_LEVELS,
    "OracleFailure": EXIT_ORACLE,
    "ParameterDegeneracy": EXIT_ORACLE,
}
UNITS_LINE = "# units: hbar=c=1"

_SOLVERS = {
    "hulthen": (hulthen.hulthen_spectrum, hulthen.raw_levels, hulthen.hulthen_pair),
    "eckart": (eckart.eckart_spectrum, eckart.raw_levels, eckart.eckart_pair),
}


def _float_list(text):
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values or any(not math.isfinite(v) or v <= 0 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive numbers, got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracpot",
        description="Dirac bound states for Hulthen and Eckart vector potentials.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("potential", choices=sorted(PROFILES))
    common.add_argument("--mass", type=float, default=1.0)
    common.add_argument("--lambda", dest="lam", type=float, required=True)
    common.add_argument("--v0", type=float, required=True)
    common.add_argument("--kappa", type=int, required=True)
    common.add_argument("--branch", choices=["pos", "neg"], default="pos")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", default=None, help="output path (default: standard output)")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("spectrum", parents=[common], help="closed-form levels")
    p.add_argument("--all", action="store_true", help="include non-physical formula values")

    p = sub.add_parser("wavefunction", parents=[common], help="normalized spinor of one level")
    p.add_argument("--level", type=int, default=0, help="spinor index")
    p.add_argument("--grid", default=None, help="rmin:rmax:npts (default 0.01/lambda:30/lambda:301)")

    p = sub.add_parser("oracle", parents=[common], help="numerical spectrum")
    p.add_argument("--oracle", choices=["fd", "shoot-exact", "shoot-approx"], default="fd")
    p.add_argument("--grid", default=None, help="rmin:rmax:npts for the solver grid")
    p.add_argument("--tol", type=float, default=1e-12)

    p = sub.add_parser("compare", parents=[common], help="closed form against both orbital terms")
    p.add_argument("--sweep-lambda", type=_float_list, default=None,
                   help="comma-separated lambda values; mu = v0/lambda is held fixed")
    p.add_argument("--oracle", choices=["fd", "shoot-approx"], default="shoot-approx",
                   help="solver for the approximate-orbital column")
    p.add_argument("--tol", type=float, default=1e-12)

    p = sub.add_parser("limit", parents=[common], help="nonrelativistic and Coulomb limits")
    p.add_argument("--sweep-lambda", type=_float_list, default=None,
                   help="lambda values for the Coulomb-limit table (default 0.1,0.01,0.001)")
    return parser


def _params(args) -> ProblemParams:
    return ProblemParams(args.mass, args.lam, args.v0, args.kappa)


def _warnings(params: ProblemParams, branch: Branch) -> list[str]:
    out = []
    d = derive(params)
    if d.boundary:
        out.append("|mu| = |kappa|: C = 0 and the rotation is degenerate")
    if params.kappa > 0:
        out.append("kappa > 0: the formula value eps_0 = mC carries no spinor")
    if branch is Branch.POSITIVE and params.v0 > 0:
        out.append("v0 > 0 is repulsive for positive energies; bound states are in the negative branch")
    return out


def _config(args) -> OracleConfig:
    kwargs = {"eps_tol": args.tol}
    if getattr(args, "grid", None):
        r = parse_grid(args.grid)
        kwargs.update(r_min=float(r[0]), r_max=float(r[-1]), num_points=int(r.size))
    return OracleConfig(**kwargs)


def _spectrum(args, params, branch):
    spectrum, raw, _ = _SOLVERS[args.potential]
    if args.all:
        levels = raw(params if branch is Branch.POSITIVE else params.mapped())
        if branch is Branch.NEGATIVE:
            levels = mapped_levels(levels, branch)
    else:
        levels = spectrum(params, branch)
    if not args.all and not levels:
        raise NoBoundLevels(f"no physical {branch.value} levels for {params.as_dict()}")
    columns = ["n", "spinor_index", "epsilon", "alpha_n"]
    if args.potential == "eckart":
        columns.append("beta_n")
    columns.append("bound_check")
    if args.all:
        columns.append("physical")
    rows = [{c: lv.as_dict()[c] for c in columns} for lv in levels]
    return columns, rows, {}


def _wavefunction(args, params, branch):
    spectrum, _, pair = _SOLVERS[args.potential]
    level = next((lv for lv in spectrum(params, branch) if lv.spinor_index == args.level), None)
    if level is None:
        raise NoBoundLevels(f"no {branch.value} level with spinor index {args.level}")
    grid = parse_grid(args.grid) if args.grid else np.linspace(0.01 / params.lam, 30.0 / params.lam, 301)
    sample = pair(params, level, grid)
    columns = ["r", "phi_plus", "phi_minus", "psi_plus", "psi_minus"]
    rows = [dict(zip(columns, map(float, row))) for row in sample.rows()]
    meta = {"epsilon": sample.epsilon, "spinor_index": level.spinor_index, "n": level.n,
            "norm_constant": sample.norm_constant}
    return columns, rows, meta


def _fd_levels(potential, params, branch, config):
    target = params if branch is Branch.POSITIVE else params.mapped()
    d = derive(target)
    roots = secular_roots(PROFILES[potential](target, Orbital.APPROX), target, d, config)
    sign = 1.0 if branch is Branch.POSITIVE else -1.0
    return [{"spinor_index": r.k - 1, "epsilon": sign * r.epsilon, "coarse": sign * r.coarse,
             "fine": sign * r.fine, "refinement_change": r.refinement_change} for r in roots]


def _shoot_levels(potential, params, branch, config, orbital):
    levels = dirac_spectrum_shooting(PROFILES[potential](params, orbital), params, config, branch)
    levels = sorted(levels, key=lambda lv: abs(lv.epsilon))
    return [{"spinor_index": i, "epsilon": lv.epsilon, "nodes": lv.nodes, "upper_nodes": lv.upper_nodes}
            for i, lv in enumerate(levels)]


def _oracle(args, params, branch):
    config = _config(args)
    if args.oracle == "fd":
        rows = _fd_levels(args.potential, params, branch, config)
        columns = ["spinor_index", "epsilon", "coarse", "fine", "refinement_change"]
    else:
        orbital = Orbital.EXACT if args.oracle == "shoot-exact" else Orbital.APPROX
        rows = _shoot_levels(args.potential, params, branch, config, orbital)
        columns = ["spinor_index", "epsilon", "nodes", "upper_nodes"]
    if not rows:
        raise NoBoundLevels(f"the {args.oracle} oracle found no {branch.value} levels")
    return columns, rows, {"oracle": args.oracle, "config": config.as_dict()}


def _compare(args, params, branch):
    config = _config(args)
    spectrum = _SOLVERS[args.potential][0]
    mu = params.mu
    rows = []
    for lam in args.sweep_lambda or [params.lam]:
        p = ProblemParams(params.mass, lam, mu * lam, params.kappa)
        analytic = spectrum(p, branch)
        if args.oracle == "fd":
            approx = _fd_levels(args.potential, p, branch, config)
        else:
            approx = _shoot_levels(args.potential, p, branch, config, Orbital.APPROX)
        exact = _shoot_levels(args.potential, p, branch, config, Orbital.EXACT)
        for lv in analytic:
            s = lv.spinor_index
            a = approx[s]["epsilon"] if s < len(approx) else None
            e = exact[s]["epsilon"] if s < len(exact) else None
            rows.append({
                "lambda": lam, "spinor_index": s, "analytic": lv.epsilon,
                "approx_oracle": a, "exact_oracle": e,
                "abs_dev_approx": None if a is None else abs(a - lv.epsilon),
                "rel_dev_approx": None if a is None else abs(a - lv.epsilon) / abs(lv.epsilon),
                "abs_dev_exact": None if e is None else abs(e - lv.epsilon),
                "rel_dev_exact": None if e is None else abs(e - lv.epsilon) / abs(lv.epsilon),
            })
    if not rows:
        raise NoBoundLevels("no closed-form levels anywhere in the sweep")
    columns = ["lambda", "spinor_index", "analytic", "approx_oracle", "exact_oracle",
               "abs_dev_approx", "rel_dev_approx", "abs_dev_exact", "rel_dev_exact"]
    return columns, rows, {"mu": mu, "approx_oracle": args.oracle, "exact_oracle": "shoot-exact",
                           "config": config.as_dict()}


def coulomb_energy(mass: float, mu: float, kappa: int, n: int) -> float:
    g = math.sqrt(kappa * kappa - mu * mu)
    return mass / math.sqrt(1.0 + (mu / (n + g)) ** 2)


def ell_for(kappa: int) -> int:
    return kappa if kappa > 0 else -kappa - 1


def _limit(args, params, branch):
    spectrum, nonrel = (
        (hulthen.hulthen_spectrum, hulthen.hulthen_nonrel) if args.potential == "hulthen"
        else (eckart.eckart_spectrum, eckart.eckart_nonrel)
    )
    sign = 1.0 if branch is Branch.POSITIVE else -1.0
    mu, ell = params.mu, ell_for(params.kappa)
    rows = []
    for lv in spectrum(params, branch):
        value = sign * lv.epsilon - params.mass
        ref = nonrel(sign * params.v0, params.lam, lv.spinor_index, ell)
        rows.append({"table": "nonrel", "lambda": params.lam, "spinor_index": lv.spinor_index,
                     "ell": ell, "value": value, "reference": ref,
                     "abs_dev": abs(value - ref), "ratio": None})
    previous = {}
    for lam in args.sweep_lambda or [0.1, 0.01, 0.001]:
        p = ProblemParams(params.mass, lam, mu * lam, params.kappa)
        target = p if branch is Branch.POSITIVE else p.mapped()
        for lv in spectrum(p, branch):
            s = lv.spinor_index
            ref = sign * coulomb_energy(p.mass, target.mu, target.kappa, s)
            dev = abs(lv.epsilon - ref)
            ratio = previous[s] / dev if s in previous and dev > 0 else None
            previous[s] = dev
            rows.append({"table": "coulomb", "lambda": lam, "spinor_index": s, "ell": ell,
                         "value": lv.epsilon, "reference": ref, "abs_dev": dev, "ratio": ratio})
    columns = ["table", "lambda", "spinor_index", "ell", "value", "reference", "abs_dev", "ratio"]
    return columns, rows, {"mu": mu}


_COMMANDS = {
    "spectrum": _spectrum,
    "wavefunction": _wavefunction,
    "oracle": _oracle,
    "compare": _compare,
    "limit": _limit,
}


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def render(fmt, request, columns, rows, meta, warnings) -> str:
    if fmt == "json":
        doc = {"request": request, "results": [{c: row.get(c) for c in columns} for row in rows],
               "solver_metadata": meta, "warnings": warnings}
        return json.dumps(_json_value(doc), indent=2) + "\n"
    lines = [UNITS_LINE] + [f"# warning: {w}" for w in warnings]
    lines.append(",".join(columns))
    lines.extend(",".join(_cell(row.get(c)) for c in columns) for row in rows)
    return "\n".join(lines) + "\n"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".diracpot-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _request(args, params, branch) -> dict:
    skip = {"potential", "command", "mass", "lam", "v0", "kappa", "branch", "format", "out"}
    options = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return {"command": args.command, "potential": args.potential, "params": params.as_dict(),
            "branch": branch.value, "options": options}


def run(args) -> str:
    """Execute a parsed request and return the rendered document."""
    params = _params(args)
    branch = Branch.parse(args.branch)
    columns, rows, meta = _COMMANDS[args.command](args, params, branch)
    return render(args.format, _request(args, params, branch), columns, rows, meta,
                  _warnings(params, branch))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = run(args)
        if args.out:
            _write_atomic(args.out, text)
        else:
            sys.stdout.write(text)
    except (DiracPotError, ValueError) as exc:
        category = getattr(exc, "category", "InvalidParams")
        print(json.dumps({"error": category, "message": str(exc)}), file=sys.stderr)
        return _EXIT_BY_CATEGORY.get(category, EXIT_INVALID)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
