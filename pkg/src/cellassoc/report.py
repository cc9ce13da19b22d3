"""Witness JSON and sweep CSV serialization."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .closed_form import fmt, formula, parse_rational
from .model import CellAssociation, NetworkConfig
from .oracle import DEFAULT_GUARD, OracleGuard, oracle_eta
from .schemes import build_scheme, evaluate_scheme
from .search import GuardError
from .zf import DownlinkPlan, UplinkPlan

SWEEP_HEADER = (
    "mode", "K", "L", "Nc", "scheme_eta_dl", "scheme_eta_ul", "scheme_pudof",
    "formula_pudof", "oracle_eta", "gap", "decode_depth", "elapsed_ms",
)


@dataclass(frozen=True)
class Witness:
    cfg: NetworkConfig
    mode: str
    assoc: CellAssociation
    downlink: Optional[DownlinkPlan]
    uplink: Optional[UplinkPlan]
    eta: Fraction
    pudof: Fraction

    @classmethod
    def of(cls, holder) -> "Witness":
        """From anything carrying cfg/mode/assoc/downlink/uplink/eta (oracle results, scheme outputs)."""
        eta = Fraction(holder.eta)
        return cls(holder.cfg, holder.mode, holder.assoc, holder.downlink, holder.uplink, eta, eta / holder.cfg.K)

    def to_dict(self) -> dict:
        dl = ul = None
        if self.downlink is not None:
            dl = {
                "active": list(self.downlink.active),
                "transmit_sets": {str(m): sorted(self.downlink.transmit_sets[m]) for m in self.downlink.active},
            }
        if self.uplink is not None:
            ul = {"pairs": [list(p) for p in self.uplink.pairs], "order": list(self.uplink.order)}
        return {
            "config": {"K": self.cfg.K, "L": self.cfg.L, "Nc": self.cfg.Nc},
            "mode": self.mode,
            "associations": self.assoc.as_lists(),
            "downlink": dl,
            "uplink": ul,
            "eta": fmt(self.eta),
            "pudof": fmt(self.pudof),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Witness":
        c = d["config"]
        cfg = NetworkConfig(int(c["K"]), int(c["L"]), int(c["Nc"]))
        dl = ul = None
        if d.get("downlink") is not None:
            sets = {int(m): frozenset(t) for m, t in d["downlink"]["transmit_sets"].items()}
            dl = DownlinkPlan(tuple(d["downlink"]["active"]), sets)
        if d.get("uplink") is not None:
            ul = UplinkPlan(tuple(tuple(p) for p in d["uplink"]["pairs"]), tuple(d["uplink"]["order"]))
        return cls(
            cfg, d["mode"], CellAssociation.from_lists(d["associations"]), dl, ul,
            parse_rational(d["eta"]), parse_rational(d["pudof"]),
        )


@dataclass(frozen=True)
class _SchemeHolder:
    cfg: NetworkConfig
    mode: str
    assoc: CellAssociation
    downlink: Optional[DownlinkPlan]
    uplink: Optional[UplinkPlan]
    eta: Union[int, Fraction]


def scheme_witness(out) -> Witness:
    ev = evaluate_scheme(out)
    return Witness.of(_SchemeHolder(out.cfg, out.mode, out.assoc, out.downlink, out.uplink, ev.eta))


def _cell(x) -> str:
    return "" if x is None else str(x)


def sweep_row(
    cfg: NetworkConfig, mode: str, oracle: bool = False, guard: OracleGuard = DEFAULT_GUARD, notices=None
) -> dict:
    """One CSV record; oracle cells stay empty when the config is outside the guard."""
    t0 = time.perf_counter()
    ev = evaluate_scheme(build_scheme(cfg, mode))
    row = {
        "mode": mode, "K": cfg.K, "L": cfg.L, "Nc": cfg.Nc,
        "scheme_eta_dl": ev.downlink.eta if ev.downlink else None,
        "scheme_eta_ul": ev.uplink.eta if ev.uplink else None,
        "scheme_pudof": fmt(ev.pudof),
        "formula_pudof": fmt(formula(mode, cfg.L, cfg.Nc)),
        "oracle_eta": None, "gap": None,
        "decode_depth": ev.decode_depth,
    }
    if oracle:
        try:
            res = oracle_eta(cfg, mode, guard)
        except GuardError as exc:
            if notices is not None:
                notices.append(f"oracle skipped for mode={mode} K={cfg.K} L={cfg.L} Nc={cfg.Nc}: {exc}")
        else:
            row["oracle_eta"] = fmt(res.eta)
            row["gap"] = fmt(Fraction(res.eta) - Fraction(ev.eta))
    row["elapsed_ms"] = f"{(time.perf_counter() - t0) * 1000:.3f}"
    return row


def sort_key(row: dict):
    return (row["mode"], row["L"], row["Nc"], row["K"])


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for row in sorted(rows, key=sort_key):
        w.writerow([_cell(row[k]) for k in SWEEP_HEADER])
    return buf.getvalue()
