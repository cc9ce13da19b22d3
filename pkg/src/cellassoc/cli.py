"""Command-line front end.

Exit codes: 0 success, 1 runtime error, 2 usage error, 3 oracle guard
refusal, 4 numeric/combinatorial disagreement.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .closed_form import fmt, formula
from .model import NetworkConfig
from .numeric import DEFAULT_TOL, cross_validate
from .oracle import MODES, OracleGuard, oracle_eta
from .report import Witness, rows_to_csv, scheme_witness, sweep_row
from .schemes import SchemeConstructionError, build_scheme, evaluate_scheme
from .search import GuardError

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_GUARD, EXIT_VERIFY = 0, 1, 2, 3, 4
AGREEMENT_THRESHOLD = 0.99
SESSIONS = {"down": ("downlink",), "up": ("uplink",), "joint": ("downlink", "uplink")}


class UsageError(Exception):
    pass


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def parse_range(text: str) -> list[int]:
    """``"4..8"``, ``"4-8"``, ``"4:8"`` (inclusive), ``"1,3,5"`` or a single integer."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        m = re.fullmatch(r"(\d+)\s*(?:\.\.|-|:)\s*(\d+)", part)
        if m:
            lo, hi = int(m[1]), int(m[2])
            out.extend(range(lo, hi + 1))
        elif part.isdigit():
            out.append(int(part))
        else:
            raise UsageError(f"bad range {text!r}")
    if not out or min(out) < 1:
        raise UsageError(f"range {text!r} must be non-empty and positive")
    return sorted(set(out))


def parse_modes(text: str) -> list[str]:
    modes = list(MODES) if text == "all" else [m.strip() for m in text.split(",")]
    bad = [m for m in modes if m not in MODES]
    if bad or not modes:
        raise UsageError(f"unknown mode(s) {bad}")
    return sorted(set(modes))


def read_config_file(path: str) -> dict:
    """Flat ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise UsageError(f"{path}:{n}: expected key=value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text)


def _cfg(args) -> NetworkConfig:
    return NetworkConfig(args.K, args.L, args.Nc)


def _guard(args) -> OracleGuard:
    return OracleGuard(max_nodes=getattr(args, "max_nodes", None))


# -- commands ---------------------------------------------------------------

def cmd_scheme(args) -> int:
    cfg = _cfg(args)
    out = build_scheme(cfg, args.mode)
    if args.format == "csv":
        if args.witness:
            raise UsageError("--witness needs --format json")
        _emit(rows_to_csv([sweep_row(cfg, args.mode)]), args.out)
        return EXIT_OK
    ev = evaluate_scheme(out)
    record = {
        "config": {"K": cfg.K, "L": cfg.L, "Nc": cfg.Nc},
        "mode": args.mode,
        "construction": out.construction,
        "eta": fmt(ev.eta),
        "pudof": fmt(ev.pudof),
        "formula_pudof": fmt(formula(args.mode, cfg.L, cfg.Nc)),
        "decode_depth": ev.decode_depth,
    }
    if args.witness:
        record["witness"] = scheme_witness(out).to_dict()
    _emit(json.dumps(record) + "\n", args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    res = oracle_eta(_cfg(args), args.mode, _guard(args))
    _emit(json.dumps(Witness.of(res).to_dict()) + "\n", args.out)
    print(f"nodes explored: {res.nodes_explored}, {res.elapsed * 1000:.1f} ms", file=sys.stderr)
    return EXIT_OK


_SWEEP_DEFAULTS = {"mode": "all", "oracle": "false", "seed": "0", "out": None, "format": "csv", "max_nodes": None}


def _sweep_spec(args) -> dict:
    spec = dict(_SWEEP_DEFAULTS)
    if args.config:
        spec.update(read_config_file(args.config))
    for key in ("K", "L", "Nc", "mode", "oracle", "seed", "out", "format", "max_nodes"):
        v = getattr(args, key)
        if v is not None:
            spec[key] = v
    missing = [k for k in ("K", "L", "Nc") if k not in spec]
    if missing:
        raise UsageError(f"sweep needs {', '.join(missing)} (flag or config file)")
    oracle = str(spec["oracle"]).lower()
    if oracle not in ("true", "false", "on", "off", "1", "0", "yes", "no"):
        raise UsageError(f"oracle must be on/off, got {spec['oracle']!r}")
    if spec["format"] not in ("csv", "json"):
        raise UsageError(f"unknown format {spec['format']!r}")
    return {
        "K": parse_range(spec["K"]),
        "L": parse_range(spec["L"]),
        "Nc": parse_range(spec["Nc"]),
        "modes": parse_modes(spec["mode"]),
        "oracle": oracle in ("true", "on", "1", "yes"),
        "seed": int(spec["seed"]),
        "out": spec["out"],
        "format": spec["format"],
        "max_nodes": int(spec["max_nodes"]) if spec["max_nodes"] is not None else None,
    }


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    guard = OracleGuard(max_nodes=spec["max_nodes"])
    notices: list[str] = []
    rows = [
        sweep_row(NetworkConfig(K, L, Nc), mode, spec["oracle"], guard, notices)
        for mode in spec["modes"] for L in spec["L"] for Nc in spec["Nc"] for K in spec["K"]
    ]
    for note in notices:
        print(f"notice: {note}", file=sys.stderr)
    if spec["format"] == "json":
        from .report import sort_key
        text = json.dumps(sorted(rows, key=sort_key), indent=1) + "\n"
    else:
        text = rows_to_csv(rows)
    _emit(text, spec["out"])
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _cfg(args)
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    worst = 1.0
    for session in SESSIONS[args.mode]:
        s = cross_validate(cfg, session, args.trials, args.seed, args.tol)
        worst = min(worst, s.fraction)
        print(
            f"{session}: agreement {s.fraction:.2f} ({s.agreed}/{s.trials}), "
            f"measure-zero redraws {s.redraws}, unresolved {s.unresolved}"
        )
        for t, v in s.disagreements[:5]:
            print(
                f"  trial {t}: numeric={'feasible' if v.numeric_feasible else 'infeasible'} "
                f"combinatorial={'feasible' if v.combinatorial_feasible else 'infeasible'} {v.detail}"
            )
    print(f"agreement {worst:.2f}")
    return EXIT_OK if worst >= AGREEMENT_THRESHOLD else EXIT_VERIFY


# -- parser -----------------------------------------------------------------

def _network_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--K", type=positive_int, required=True, help="number of BS-MT pairs")
    p.add_argument("--L", type=positive_int, required=True, help="connectivity")
    p.add_argument("--Nc", type=positive_int, required=True, help="association budget")
    p.add_argument("--mode", choices=MODES, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cellassoc", description="Cell-association DoF schemes, oracle and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scheme", help="evaluate the constructive scheme")
    _network_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out")
    p.add_argument("--witness", action="store_true", help="include associations and plans")
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("oracle", help="exhaustive optimum with witness")
    _network_flags(p)
    p.add_argument("--max-nodes", type=positive_int, dest="max_nodes")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="CSV over a parameter grid")
    p.add_argument("--config", help="file of key=value lines; flags override it")
    p.add_argument("--K", help="e.g. 4..8 or 4,6,8")
    p.add_argument("--L")
    p.add_argument("--Nc")
    p.add_argument("--mode", help="comma list of down,up,joint or 'all'")
    p.add_argument("--oracle", action="store_const", const="on")
    p.add_argument("--no-oracle", action="store_const", const="off", dest="oracle")
    p.add_argument("--seed")
    p.add_argument("--max-nodes", dest="max_nodes")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="numeric cross-check of the feasibility rules")
    _network_flags(p)
    p.add_argument("--trials", type=positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (SchemeConstructionError, OSError, RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
