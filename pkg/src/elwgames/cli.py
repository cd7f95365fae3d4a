"""Command-line interface: ``elwgames <command> [options]``.

Exit status: 0 on success, 2 for unreadable or invalid input, 3 when a
numerical search fails, 4 when a precondition is violated.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import serialization as ser
from .catalog import catalog
from .entanglement import DEFAULT_TOL, analyze, analyze_w
from .equivalence import compare_gates
from .exceptions import (
    InvalidInputError,
    PreconditionError,
    SearchFailureError,
    UnsupportedError,
)
from .game import counterstrategy, play, pure_nash_probe
from .gates import GateParams, SymmetricUnitary
from .phases import residuals
from .solver import solve_numeric_detailed

EXIT_PARSE, EXIT_SEARCH, EXIT_PRECONDITION = 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _tolerance(text: str) -> float:
    v = float(text)
    if not (0 < v <= 1e-2):
        raise argparse.ArgumentTypeError("tolerance must lie in (0, 1e-2]")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", help="input JSON file (default: stdin where needed)")
    common.add_argument("-o", "--output", help="output file (default: stdout)")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--tol", type=_tolerance, default=DEFAULT_TOL)
    common.add_argument("--format", choices=("json", "csv"),
                        help="output format (default: csv for entropy-sweep, else json)")
    common.add_argument("--pi-units", action="store_true",
                        help="read angles as multiples of pi")

    p = _Parser(prog="elwgames", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("verify", parents=[common], help="entanglement report for a gate")

    s = sub.add_parser("solve", parents=[common], help="numerically solve the phase equations")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--restarts", type=int, default=32)

    s = sub.add_parser("catalog", parents=[common], help="closed-form solution families")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("entropy-sweep", parents=[common], help="grid sweep of one or two angles")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--param", required=True, help="lambdaK or muKL, e.g. lambda1, mu12")
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--steps", type=int, required=True, help="number of grid points")
    s.add_argument("--param2")
    s.add_argument("--from2", dest="start2", type=float)
    s.add_argument("--to2", dest="stop2", type=float)
    s.add_argument("--steps2", type=int)

    sub.add_parser("play", parents=[common], help="outcome of a strategy profile")

    s = sub.add_parser("counter", parents=[common], help="counterstrategy to a move")
    s.add_argument("--restarts", type=int, default=32)

    s = sub.add_parser("nash-probe", parents=[common], help="unilateral deviation search")
    s.add_argument("--restarts", type=int, default=32)

    sub.add_parser("equivalence", parents=[common], help="compare two gates as games")
    return p


def _read_json(args):
    try:
        if args.input:
            with open(args.input) as fh:
                return json.load(fh)
        return json.load(sys.stdin)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read input: {exc}") from None


def _field(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise InvalidInputError(f"input is missing field {key!r}")
    return doc[key]


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_text(args, report_dict: dict) -> str:
    if args.format == "csv":
        return ser.rows_to_csv(list(report_dict), [list(report_dict.values())])
    return ser.dumps(report_dict)


def _param_index(n: int, name: str) -> int:
    """Position of a named angle in :meth:`GateParams.to_vector` order."""
    m = re.fullmatch(r"lambda(\d+)", name)
    if m:
        k = int(m.group(1))
        if 1 <= k <= n - 1:
            return k - 1
    m = re.fullmatch(r"mu(\d+)[_,](\d+)", name) or (
        re.fullmatch(r"mu(\d)(\d)", name) if n <= 10 else None
    )
    if m:
        k, l = sorted((int(m.group(1)), int(m.group(2))))
        if 1 <= k < l <= n - 1:
            iu = list(zip(*np.triu_indices(n - 1, k=1)))
            return n - 1 + iu.index((k - 1, l - 1))
    raise InvalidInputError(f"unknown parameter {name!r} for n={n}")


def _cmd_verify(args):
    gate = ser.gate_from_dict(_read_json(args), args.pi_units)
    rep = analyze_w(gate, args.tol) if isinstance(gate, SymmetricUnitary) else analyze(gate, args.tol)
    return _report_text(args, rep.to_dict())


def _cmd_solve(args):
    sols = solve_numeric_detailed(args.n, args.seed, args.restarts)
    records = []
    for s in sols:
        rep = analyze(s.params, args.tol)
        records.append({
            "origin": "numeric",
            "restart": s.restart,
            "objective": s.objective,
            "max_residual": residuals(s.params).max_residual,
            "entropy": rep.entropy,
            "gate": ser.gate_params_to_dict(s.params),
        })
    if args.format == "csv":
        names = [f"x{j + 1}" for j in range(len(sols[0].params.to_vector()))] if sols else []
        rows = [list(s.params.to_vector()) + [r["max_residual"], r["entropy"]]
                for s, r in zip(sols, records)]
        return ser.rows_to_csv(names + ["max_residual", "entropy"], rows)
    return ser.dumps(records)


def _cmd_catalog(args):
    fams = catalog(args.n)
    out = []
    for fam in fams:
        d = fam.describe()
        d["representative"] = ser.gate_params_to_dict(next(fam.grid(n_free=1))[1])
        out.append(d)
    if args.n == 4:
        groups = {}
        for d in out:
            groups.setdefault(d["group"], []).append(d)
        out = [{"family": g, "subfamilies": v} for g, v in sorted(groups.items())]
    return ser.dumps({"n": args.n, "families": out})


def _cmd_sweep(args):
    scale = np.pi if args.pi_units else 1.0
    base = (ser.gate_params_from_dict(_read_json(args), args.pi_units).to_vector()
            if args.input else GateParams.zeros(args.n).to_vector())
    if base.size != args.n * (args.n - 1) // 2:
        raise InvalidInputError("base gate does not match --n")
    if args.steps < 1:
        raise InvalidInputError("--steps must be >= 1")
    axes = [(args.param, np.linspace(args.start * scale, args.stop * scale, args.steps))]
    if args.param2:
        if None in (args.start2, args.stop2, args.steps2):
            raise InvalidInputError("--param2 needs --from2, --to2 and --steps2")
        axes.append((args.param2, np.linspace(args.start2 * scale, args.stop2 * scale, args.steps2)))
    idx = [_param_index(args.n, name) for name, _ in axes]
    rows = []
    for combo in np.array(np.meshgrid(*[v for _, v in axes], indexing="ij")).reshape(len(axes), -1).T:
        x = base.copy()
        x[idx] = combo
        p = GateParams.from_vector(args.n, x)
        rep = analyze(p, args.tol)
        rows.append(list(combo) + [residuals(p).max_residual, rep.entropy])
    header = [name for name, _ in axes] + ["max_residual", "entropy"]
    if args.format == "json":
        return ser.dumps([dict(zip(header, r)) for r in rows])
    return ser.rows_to_csv(header, rows)


def _game_and_strategies(args, *keys):
    doc = _read_json(args)
    spec = ser.game_from_dict(_field(doc, "game"), args.pi_units)
    return doc, spec, [ser.strategy_from_dict(_field(doc, k)) for k in keys]


def _cmd_play(args):
    _, spec, (ua, ub) = _game_and_strategies(args, "ua", "ub")
    out = play(spec, ua, ub)
    if args.format == "csv":
        return ser.outcome_to_csv(spec, out)
    return ser.dumps(out.to_dict())


def _cmd_counter(args):
    doc, spec, (ua,) = _game_and_strategies(args, "ua")
    target = tuple(int(v) for v in _field(doc, "target"))
    if len(target) != 2:
        raise InvalidInputError("target must be a pair [sigma_a, sigma_b]")
    ub = counterstrategy(spec, ua, target, seed=args.seed, restarts=args.restarts)
    prob = float(play(spec, ua, ub).probabilities[target[0] - 1, target[1] - 1])
    return _report_text(args, {"ub": ser.strategy_to_dict(ub), "target": list(target),
                               "probability": prob}) if args.format == "json" else \
        ser.rows_to_csv(["target_a", "target_b", "probability"] +
                        [f"c{j + 1}" for j in range(ub.coords.size)],
                        [[*target, prob, *ub.coords]])


def _cmd_nash(args):
    _, spec, (ua, ub) = _game_and_strategies(args, "ua", "ub")
    rep = pure_nash_probe(spec, (ua, ub), seed=args.seed, restarts=args.restarts)
    d = rep.to_dict()
    if args.format == "csv":
        keys = ["payoff_a", "payoff_b", "delta_a", "delta_b", "is_equilibrium"]
        return ser.rows_to_csv(keys, [[d[k] for k in keys]])
    return ser.dumps(d)


def _cmd_equivalence(args):
    doc = _read_json(args)
    g1 = ser.gate_from_dict(_field(doc, "gate_a"), args.pi_units)
    g2 = ser.gate_from_dict(_field(doc, "gate_b"), args.pi_units)
    return _report_text(args, compare_gates(g1, g2, seed=args.seed, tol=args.tol).to_dict())


_COMMANDS = {
    "verify": _cmd_verify,
    "solve": _cmd_solve,
    "catalog": _cmd_catalog,
    "entropy-sweep": _cmd_sweep,
    "play": _cmd_play,
    "counter": _cmd_counter,
    "nash-probe": _cmd_nash,
    "equivalence": _cmd_equivalence,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "entropy-sweep" else "json"
    try:
        _emit(args, _COMMANDS[args.command](args))
    except SearchFailureError as exc:
        print(f"elwgames: search failed: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except (PreconditionError, UnsupportedError) as exc:
        print(f"elwgames: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InvalidInputError, KeyError, TypeError, ValueError) as exc:
        print(f"elwgames: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
