"""Command-line front end: ``solve``, ``sweep``, ``dynamics``, ``simulate``, ``bargain``.

Exit codes: 0 success, 2 invalid parameters or configuration,
3 no equilibrium, 4 I/O error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import math
import sys
import warnings

from . import __version__
from .bargaining import bargaining_thresholds, solve_bargaining_equilibrium
from .config import SWEEP_VARS, ConfigError, RunConfig, parse_config
from .core import CaseLabel, NoEquilibriumError, ParameterWarning, ValidationError, case_of, fundamental_price
from .dynamics import real_balance_map, simulate_path
from .simulation import PROTOCOLS, run_simulation
from .steady_state import mu_bar_closed_form, mu_bar_root, psi_of_mu, solve_steady_state, POLICY_TOL

EXIT_OK, EXIT_INVALID, EXIT_NO_EQUILIBRIUM, EXIT_IO = 0, 2, 3, 4
SWEEP_HEADER = ["var", "psi_star", "premium", "z_star", "welfare_surplus", "in_range"]


def fmt(x) -> str:
    """Shortest decimal text that round-trips to the same double."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x) if math.isfinite(x) else ("nan" if math.isnan(x) else ("inf" if x > 0 else "-inf"))
    return str(x)


def _header_lines(cfg: RunConfig, command: str, extra: str = ""):
    lines = [f"# monetary_dfm {__version__} {command}", f"# params: {cfg.echo()}"]
    if extra:
        lines.append(f"# {extra}")
    return lines


@contextlib.contextmanager
def _sink(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _write_csv(fh, header_lines, columns, rows):
    for line in header_lines:
        fh.write(line + "\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def _print_table(pairs, out):
    width = max(len(k) for k, _ in pairs)
    for key, value in pairs:
        out.write(f"{key:<{width}} = {fmt(value)}\n")


def cmd_solve(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    p = cfg.params
    ss = solve_steady_state(p)
    pairs = [("case", str(ss.case)), ("fundamental", fundamental_price(p))]
    pairs += [("premium" if k == "liquidity_premium" else k, v)
              for k, v in ss.as_dict().items() if k not in ("case", "mu_bar")]
    if ss.case is not CaseLabel.NO_TRADE:
        pairs += [("mu_min", p.beta - 1.0), ("mu_bar", ss.mu_bar), ("mu_bar_root", mu_bar_root(p))]
    for note in ss.notes:
        pairs.append(("note", note))
    _print_table(pairs, out)
    if cfg.get("csv"):
        row = [(k, v) for k, v in pairs if k != "note"]
        with _sink(cfg.get("csv")) as fh:
            _write_csv(fh, _header_lines(cfg, "solve"), [k for k, _ in row], [[v for _, v in row]])
    return EXIT_OK


def sweep_rows(cfg: RunConfig):
    """Evaluate the steady state on the configured grid, in grid order."""
    var = cfg.options["var"]
    attr = "lam" if var == "lambda" else var
    rows = []
    for value in cfg.grid:
        value = float(value)
        try:
            p = cfg.params.replace(**{attr: value})
        except ValidationError:
            rows.append([value, math.nan, math.nan, math.nan, math.nan, False])
            continue
        fund = fundamental_price(p)
        psi = psi_of_mu(p)
        case = case_of(p)
        if case is CaseLabel.NO_TRADE:
            rows.append([value, psi, psi - fund, 0.0, 0.0, False])
            continue
        in_range = p.mu <= mu_bar_closed_form(p) + POLICY_TOL
        surplus = 0.5 * p.lam * p.A * (p.y_H - p.y_L) if in_range else 0.0
        rows.append([value, psi, psi - fund, (psi + p.y_L) * p.A, surplus, in_range])
    return rows


def cmd_sweep(cfg: RunConfig, out=None) -> int:
    if "var" not in cfg.options:
        raise ConfigError("sweep needs var, from, to and points")
    rows = sweep_rows(cfg)
    o = cfg.options
    extra = f"sweep: var={o['var']} from={o['from']!r} to={o['to']!r} points={o['points']}"
    with _sink(cfg.get("output")) if out is None else contextlib.nullcontext(out) as fh:
        _write_csv(fh, _header_lines(cfg, "sweep", extra), SWEEP_HEADER, rows)
    return EXIT_OK


def cmd_dynamics(cfg: RunConfig, out=None, err=None) -> int:
    err = err or sys.stderr
    p = cfg.params
    if case_of(p) is CaseLabel.NO_TRADE:
        raise NoEquilibriumError("no DFM trade: real balances are not pinned down by the recurrence")
    lmap = real_balance_map(p)
    z0 = cfg.get("z0", lmap.fixed_point)
    path = simulate_path(z0, cfg.get("T", 250), lmap, p, threshold=cfg.get("threshold", 1e6))
    extra = f"dynamics: z0={z0!r} z_star={path.z_star!r} slope={lmap.slope!r} intercept={lmap.intercept!r}"
    with _sink(cfg.get("output")) if out is None else contextlib.nullcontext(out) as fh:
        _write_csv(fh, _header_lines(cfg, "dynamics", extra), ["t", "z", "psi"],
                   ([int(t), float(z), float(psi)] for t, z, psi in zip(path.t, path.z, path.psi)))
    if path.stationary:
        err.write("stationary: z0 is the fixed point\n")
    elif path.diverged_at is not None:
        err.write(f"diverged at t={path.diverged_at}\n")
    else:
        err.write("no divergence within the horizon\n")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    protocol = cfg.get("protocol", "price_taking")
    if protocol not in PROTOCOLS:
        raise ConfigError(f"protocol must be one of {', '.join(PROTOCOLS)}")
    stats = run_simulation(cfg.params, cfg.get("N", 10000), cfg.get("T", 200), cfg.get("seed", 0),
                           protocol, record=bool(cfg.get("per_period")))
    _print_table(list(stats.summary().items()), out)
    if cfg.get("per_period"):
        stats.write_per_period(cfg.get("per_period"))
    return EXIT_OK


def cmd_bargain(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    p = cfg.params
    eq = solve_bargaining_equilibrium(p)
    pairs = [("bargaining.psi_star", eq.psi_star),
             ("bargaining.good_returns", eq.good_returns),
             ("bargaining.mu_bar_b", eq.mu_bar_b),
             ("bargaining.monetary", eq.monetary),
             ("bargaining.z_star", eq.z_star),
             ("bargaining.s_star", eq.s_star)]
    if eq.transfers is not None:
        th = bargaining_thresholds(eq.s_star, eq.psi_star, eq.z_star / p.M, p)
        pairs += [("bargaining.d_m", eq.transfers.d_m), ("bargaining.d_s", eq.transfers.d_s),
                  ("bargaining.binding", ",".join(sorted(str(b) for b in eq.transfers.binding))),
                  ("bargaining.m_l", th.m_l), ("bargaining.m_h", th.m_h)]
    lhs, rhs = eq.incompatibility
    pairs += [("bargaining.incompatibility_lhs", lhs), ("bargaining.incompatibility_rhs", rhs)]
    try:
        ss = solve_steady_state(p)
        pairs += [("price_taking.psi_star", ss.psi_star), ("price_taking.mu_bar", ss.mu_bar),
                  ("price_taking.premium", ss.liquidity_premium)]
    except NoEquilibriumError as exc:
        pairs += [("price_taking.psi_star", None), ("price_taking.note", str(exc))]
    pairs.append(("fundamental", fundamental_price(p)))
    for note in eq.notes:
        pairs.append(("note", note))
    _print_table(pairs, out)
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "sweep": cmd_sweep, "dynamics": cmd_dynamics,
            "simulate": cmd_simulate, "bargain": cmd_bargain}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value parameter file (default: $MONETARY_DFM_CONFIG)")
    for name in ("beta", "R", "y_L", "y_H", "lambda", "theta", "mu", "A", "M"):
        common.add_argument(f"--{name}", dest=name, type=float)
    common.add_argument("-o", "--output", help="output path (default: stdout)")

    parser = argparse.ArgumentParser(prog="monetary-dfm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common], help="steady state under price taking")
    solve.add_argument("--csv", help="also write a single-row CSV here")

    sweep = sub.add_parser("sweep", parents=[common], help="steady state over a parameter grid")
    sweep.add_argument("--var", choices=SWEEP_VARS)
    sweep.add_argument("--from", dest="from", type=float)
    sweep.add_argument("--to", type=float)
    sweep.add_argument("--points", type=int)

    dyn = sub.add_parser("dynamics", parents=[common], help="real-balance path from z0")
    dyn.add_argument("--z0", type=float)
    dyn.add_argument("--T", type=int)
    dyn.add_argument("--threshold", type=float, help="divergence factor (default 1e6)")

    sim = sub.add_parser("simulate", parents=[common], help="agent-level Monte-Carlo")
    sim.add_argument("--N", type=int)
    sim.add_argument("--T", type=int)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--protocol", choices=PROTOCOLS)
    sim.add_argument("--per-period", dest="per_period", help="write per-period CSV here")

    sub.add_parser("bargain", parents=[common], help="price taking vs Nash bargaining")
    return parser


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    path = args.pop("config")
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ParameterWarning)
            cfg = parse_config(path, args)
        for w in caught:
            sys.stderr.write(f"warning: {w.message}\n")
        return COMMANDS[command](cfg)
    except (ValidationError, ConfigError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except NoEquilibriumError as exc:
        sys.stderr.write(f"no equilibrium: {exc}\n")
        return EXIT_NO_EQUILIBRIUM
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
