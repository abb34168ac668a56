"""Command-line front end: swap scenarios, threshold searches, superadditivity table, repeater scan."""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import nonclassicality as nc
from .qstate import StateError
from .states import noisy_ghz, rho_lambda, werner
from .swap import chain_swap, star_swap

CRITERIA = ("chsh", "mk-xy", "tensor2", "functional", "ppt", "eof")
TWO_QUBIT = {"chsh", "ppt", "eof"}


class UsageError(ValueError):
    pass


@dataclass
class ScanResult:
    scenario: str
    grid: list[float]
    points: list[dict] = field(default_factory=list)
    thresholds: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise UsageError("scan grid must be strictly increasing")

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "grid": list(self.grid),
            "points": self.points,
            "thresholds": self.thresholds,
        }


# --------------------------------------------------------------------------- #
# scenarios                                                                   #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Scenario:
    topology: str
    n: int
    m: int = 2
    a: float | None = None

    def __post_init__(self):
        if self.topology not in ("chain", "star"):
            raise UsageError(f"unknown topology {self.topology!r}")
        if self.n < 1:
            raise UsageError("--n must be positive")
        if self.topology == "star" and self.n < 2:
            raise UsageError("star swapping needs --n >= 2")
        if self.m < 2:
            raise UsageError("--m must be at least 2")
        if self.topology == "chain" and self.m != 2:
            raise UsageError("chain swapping uses two-qubit parents (--m 2)")
        if self.a is not None and self.m != 2:
            raise UsageError("the rho_lambda family is a two-qubit state (--m 2)")

    @property
    def parameter(self) -> str:
        return "lambda" if self.a is not None else "p"

    def describe(self) -> str:
        family = f"rho_lambda(a={self.a!r})" if self.a is not None else ("werner" if self.m == 2 else f"noisy_ghz(M={self.m})")
        return f"{self.topology} N={self.n} parents={family}"

    def parent(self, x: float):
        if self.a is not None:
            return rho_lambda(self.a, x)
        return werner(x) if self.m == 2 else noisy_ghz(self.m, x)

    def state(self, x: float):
        parents = [self.parent(x)] * self.n
        if self.n == 1:
            return parents[0]
        if self.topology == "chain":
            return chain_swap(parents)
        return star_swap(parents)


def evaluate(state, criterion: str) -> nc.CriterionReport:
    n = state.n_qubits
    if criterion in TWO_QUBIT and n != 2:
        raise UsageError(f"criterion {criterion!r} needs a two-qubit state, this one has {n} qubits")
    if criterion == "chsh":
        return nc.CriterionReport("chsh", nc.horodecki_chsh_max(state), 2.0)
    if criterion == "mk-xy":
        return nc.CriterionReport("mk-xy", nc.mk_max_xy(state), 1.0)
    if criterion == "tensor2":
        if n != 3:
            raise UsageError("criterion 'tensor2' needs a three-qubit state")
        return nc.CriterionReport("tensor2", nc.two_setting_tensor_max(state), 1.0)
    if criterion == "functional":
        if n < 2:
            raise UsageError("criterion 'functional' needs at least two qubits")
        return nc.functional_violation(n, min(nc.ghz_visibility(state), 1.0))
    if criterion == "ppt":
        pt_min = float(np.linalg.eigvalsh(nc.partial_transpose(state)).min())
        return nc.CriterionReport("ppt", -pt_min, -nc.PPT_TOL)
    if criterion == "eof":
        return nc.CriterionReport("eof", nc.eof(state), 0.0)
    raise UsageError(f"unknown criterion {criterion!r}; choose from {', '.join(CRITERIA)}")


def default_criteria(n_qubits: int) -> list[str]:
    if n_qubits == 2:
        return ["chsh", "mk-xy", "ppt", "eof"]
    if n_qubits == 3:
        return ["mk-xy", "tensor2", "functional"]
    return ["mk-xy", "functional"]


# --------------------------------------------------------------------------- #
# commands                                                                    #
# --------------------------------------------------------------------------- #


def cmd_swap(scenario: Scenario, x: float, criteria: Sequence[str] | None = None) -> dict:
    state = scenario.state(x)
    criteria = list(criteria) if criteria else default_criteria(state.n_qubits)
    return {
        "scenario": scenario.describe(),
        scenario.parameter: x,
        "n_qubits": state.n_qubits,
        "ghz_visibility": nc.ghz_visibility(state),
        "reports": [evaluate(state, c).to_dict() for c in criteria],
    }


def cmd_threshold(
    scenario: Scenario,
    criteria: Sequence[str],
    bracket: tuple[float, float] = (0.0, 1.0),
    grid: Sequence[float] | None = None,
) -> ScanResult:
    grid = list(grid) if grid is not None else list(np.linspace(bracket[0], bracket[1], 11))
    result = ScanResult(scenario.describe(), [float(g) for g in grid])
    for x in result.grid:
        state = scenario.state(x)
        result.points.append({scenario.parameter: x, "reports": [evaluate(state, c).to_dict() for c in criteria]})
    for c in criteria:
        result.thresholds[c] = nc.critical_visibility(lambda x: evaluate(scenario.state(x), c).violated, bracket)
    return result


def cmd_superadditivity(n_values: Sequence[int], verify: bool = False) -> list[dict]:
    """Functional vs MK critical visibilities of star-swapped Werner pairs, per N."""
    werner_limit = 1 / math.sqrt(2)
    rows = []
    for n in n_values:
        row = {
            "N": n,
            "V_f": nc.functional_threshold(n),
            "V_mk": nc.mk_star_threshold(n, 2),
        }
        row["below_werner"] = row["V_f"] < werner_limit
        if verify:
            scen = Scenario("star", n)
            row["V_f_bisected"] = nc.critical_visibility(lambda x: evaluate(scen.state(x), "functional").violated)
        rows.append(row)
    return rows


def cmd_repeater_scan(a_grid: Sequence[float], lambda_grid: Sequence[float]) -> ScanResult:
    """EoF of ``rho_lambda`` before and after one Bell swap (``B1`` outcome) on an (a, lambda) grid."""
    result = ScanResult("repeater rho_lambda chain N=2", [float(x) for x in lambda_grid])
    for a in a_grid:
        for lam in lambda_grid:
            parent = rho_lambda(a, lam)
            e_in = nc.eof(parent)
            e_out = nc.eof(chain_swap([parent, parent]))
            result.points.append(
                {"a": float(a), "lambda": float(lam), "eof_in": e_in, "eof_out": e_out, "gain": e_out > e_in + 1e-12}
            )
    return result


# --------------------------------------------------------------------------- #
# argument parsing and output                                                 #
# --------------------------------------------------------------------------- #


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"could not parse {text!r} as comma-separated numbers") from exc
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} comma-separated values, got {text!r}")
    return vals


def parse_grid(text: str) -> list[float]:
    """``lo,hi,steps`` (inclusive linspace) or a single value."""
    vals = _floats(text)
    if len(vals) == 1:
        return vals
    if len(vals) != 3 or vals[2] < 2 or vals[2] != int(vals[2]) or not vals[0] < vals[1]:
        raise UsageError(f"grid must be 'lo,hi,steps' with lo < hi and steps >= 2, got {text!r}")
    return [float(x) for x in np.linspace(vals[0], vals[1], int(vals[2]))]


def parse_criteria(text: str | None) -> list[str] | None:
    if text is None:
        return None
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in CRITERIA]
    if bad or not names:
        raise UsageError(f"unknown criteria {bad}; choose from {', '.join(CRITERIA)}")
    return names


def _sig6(x) -> str:
    return f"{x:.6g}" if isinstance(x, float) else str(x)


def write_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
        return
    if not rows:
        return
    if fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
        return
    cols = list(rows[0])
    cells = [[_sig6(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out.write("  ".join(c.rjust(w) for c, w in zip(cols, widths)) + "\n")
    for row in cells:
        out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swapnet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_args(p):
        p.add_argument("--topology", choices=("chain", "star"), default="chain")
        p.add_argument("--n", type=int, default=2, help="number of parent states")
        p.add_argument("--m", type=int, default=2, help="qubits per parent state")
        p.add_argument("--a", type=float, help="use rho_lambda parents with this amplitude")
        p.add_argument("--criteria", help=f"comma list from: {', '.join(CRITERIA)}")

    p = sub.add_parser("swap", help="evaluate criteria on one swapped state")
    scenario_args(p)
    p.add_argument("--p", "--visibility", dest="p", type=float, help="parent visibility")
    p.add_argument("--lambda", dest="lam", type=float, help="rho_lambda weight (with --a)")
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("threshold", help="bisect the critical visibility of each criterion")
    scenario_args(p)
    p.add_argument("--bracket", default="0,1", help="lo,hi")
    p.add_argument("--grid", help="lo,hi,steps for per-point reports (default: 11 points over the bracket)")
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("superadditivity", help="functional vs MK critical visibilities per N")
    p.add_argument("--range", dest="n_range", default="2,12", help="lo,hi (inclusive)")
    p.add_argument("--verify", action="store_true", help="also bisect the functional threshold on the swapped state")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    p = sub.add_parser("repeater-scan", help="EoF before/after swapping rho_lambda pairs")
    p.add_argument("--a", default="0.01,0.99,50", help="value or lo,hi,steps")
    p.add_argument("--lambda", dest="lam", default="0.51,0.99,50", help="value or lo,hi,steps")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "swap":
            scen = Scenario(args.topology, args.n, args.m, args.a)
            x = args.lam if args.a is not None else args.p
            if x is None:
                raise UsageError("--lambda is required with --a" if args.a is not None else "--p is required")
            json.dump(cmd_swap(scen, x, parse_criteria(args.criteria)), out, indent=2)
            out.write("\n")
        elif args.command == "threshold":
            scen = Scenario(args.topology, args.n, args.m, args.a)
            bracket = tuple(_floats(args.bracket, 2))
            criteria = parse_criteria(args.criteria) or default_criteria(scen.state(bracket[1]).n_qubits)
            grid = parse_grid(args.grid) if args.grid else None
            json.dump(cmd_threshold(scen, criteria, bracket, grid).to_dict(), out, indent=2)
            out.write("\n")
        elif args.command == "superadditivity":
            lo, hi = (int(v) for v in _floats(args.n_range, 2))
            if not 1 <= lo <= hi:
                raise UsageError("--range must be lo,hi with 1 <= lo <= hi")
            write_rows(cmd_superadditivity(range(lo, hi + 1), args.verify), args.format, out)
        elif args.command == "repeater-scan":
            res = cmd_repeater_scan(parse_grid(args.a), parse_grid(args.lam))
            if args.format == "json":
                json.dump(res.to_dict(), out, indent=2)
                out.write("\n")
            else:
                write_rows(res.points, "csv", out)
    except nc.BracketError as exc:
        print(f"swapnet: bracket error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, StateError, ValueError) as exc:
        print(f"swapnet: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
