"""Exhaustive optimum eta(K, L, Nc) over associations and zero-forcing plans.

Rather than enumerating associations directly, the search enumerates plans
and charges each user only the associations its plan forces:

* uplink: a decoded MT must reach every decoding BS that hears it, so
  C_m = (decoding BSs) & mt_neighbors(m);
* downlink: C_m = T_m.

Any association supporting a plan contains these minimal sets, so the
optimum is unchanged. Downlink transmit sets are drawn from a helper window
around each user unless ``wide_helpers`` is set.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Optional, Union

from .closed_form import formula
from .model import CellAssociation, NetworkConfig, mt_neighbors, validate_association
from .schemes import build_scheme, evaluate_scheme
from .search import (
    GuardError,
    NodeCounter,
    _minimal_uplink_assoc,
    canonical_subsets,
    downlink_search,
    uplink_search,
)
from .zf import DownlinkPlan, UplinkPlan, check_downlink, check_uplink, find_uplink_order

MODES = ("down", "up", "joint")


@dataclass(frozen=True)
class OracleGuard:
    max_K: int = 10
    max_L: int = 3
    max_Nc: int = 3
    max_nodes: Optional[int] = None
    wide_helpers: bool = False


DEFAULT_GUARD = OracleGuard()


@dataclass(frozen=True)
class OracleResult:
    cfg: NetworkConfig
    mode: str
    eta: Union[int, Fraction]
    assoc: CellAssociation
    downlink: Optional[DownlinkPlan]
    uplink: Optional[UplinkPlan]
    nodes_explored: int
    elapsed: float

    @property
    def pudof(self) -> Fraction:
        return Fraction(self.eta) / self.cfg.K


def locality_reach(L: int, Nc: int) -> int:
    """How far left of its user any scheme association reaches."""
    return max(2 * L + 2, Nc + L - 1)


def helper_window(cfg: NetworkConfig, m: int, wide: bool = False) -> range:
    if wide:
        return range(1, cfg.K + 1)
    return range(max(1, m - locality_reach(cfg.L, cfg.Nc)), min(cfg.K, m + cfg.Nc) + 1)


def estimate_nodes(cfg: NetworkConfig, mode: str, wide: bool = False) -> int:
    """Crude size of the unpruned search space, for refusal messages."""
    width = cfg.K if wide else min(cfg.K, locality_reach(cfg.L, cfg.Nc) + cfg.Nc + 1)
    subsets = sum(comb(width, r) for r in range(1, cfg.Nc + 1))
    down = 2 ** cfg.K * subsets
    up = (min(cfg.L, cfg.Nc) + 2) ** cfg.K
    return {"down": down, "up": up, "joint": down * up}[mode]


def _guard(cfg: NetworkConfig, mode: str, guard: OracleGuard) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if cfg.K > guard.max_K or cfg.L > guard.max_L or cfg.Nc > guard.max_Nc:
        est = estimate_nodes(cfg, mode, guard.wide_helpers)
        raise GuardError(
            f"(K={cfg.K}, L={cfg.L}, Nc={cfg.Nc}) outside oracle guard "
            f"(K<={guard.max_K}, L<={guard.max_L}, Nc<={guard.max_Nc}); ~{est} nodes",
            est,
        )


def _dl_candidates(cfg, guard, assigned=None):
    out = {}
    for m in cfg.users:
        cands = canonical_subsets(helper_window(cfg, m, guard.wide_helpers), cfg.Nc)
        if assigned is not None:
            cands = [T for T in cands if len(T | assigned[m]) <= cfg.Nc]
        out[m] = cands
    return out


def _downlink_optimum(cfg, guard, counter):
    return downlink_search(cfg, _dl_candidates(cfg, guard), floor=-1, counter=counter)


def _uplink_optimum(cfg, counter):
    decs = {m: sorted(mt_neighbors(m, cfg)) for m in cfg.users}
    return uplink_search(cfg, decs, lambda m, S: len(S) <= cfg.Nc, floor=-1, counter=counter)


def _joint_optimum(cfg, guard, counter):
    dl_bound, _ = _downlink_optimum(cfg, guard, counter)
    decs = {m: sorted(mt_neighbors(m, cfg)) for m in cfg.users}
    plans: dict[tuple, DownlinkPlan] = {}
    cache: dict[tuple, object] = {}

    def leaf(pairs, floor):
        U = _minimal_uplink_assoc(cfg, pairs)
        if find_uplink_order(cfg, U, pairs) is None:
            return None
        need = floor - len(pairs)
        key = (U.key(), need)
        if key not in cache:
            cache[key] = downlink_search(cfg, _dl_candidates(cfg, guard, U), floor=need, counter=counter)
        found = cache[key]
        if found is None:
            return None
        plans[tuple(pairs)] = found[1]
        return len(pairs) + found[0]

    total, pairs = uplink_search(
        cfg, decs, lambda m, S: len(S) <= cfg.Nc, floor=-1, counter=counter,
        leaf=leaf, leaf_bonus=dl_bound,
    )
    return total, pairs, plans[tuple(pairs)]


def oracle_eta(cfg: NetworkConfig, mode: str, guard: OracleGuard = DEFAULT_GUARD) -> OracleResult:
    """Certified optimum for one session (``down``/``up``) or the shared-association average (``joint``)."""
    _guard(cfg, mode, guard)
    counter = NodeCounter(guard.max_nodes)
    t0 = time.perf_counter()
    down = up = None
    if mode == "down":
        eta, down = _downlink_optimum(cfg, guard, counter)
    elif mode == "up":
        eta, pairs = _uplink_optimum(cfg, counter)
    else:
        total, pairs, down = _joint_optimum(cfg, guard, counter)
        eta = Fraction(total, 2)
    sets = [set() for _ in cfg.users]
    if mode in ("up", "joint"):
        U = _minimal_uplink_assoc(cfg, pairs)
        up = UplinkPlan(tuple(pairs), find_uplink_order(cfg, U, pairs))
        for i in cfg.users:
            sets[i - 1] |= U[i]
    if down is not None:
        for m, T in down.transmit_sets.items():
            sets[m - 1] |= T
    assoc = CellAssociation.from_lists(sets)
    result = OracleResult(cfg, mode, eta, assoc, down, up, counter.count, time.perf_counter() - t0)
    _reverify(result)
    return result


def _reverify(result: OracleResult) -> None:
    cfg = result.cfg
    if validate_association(result.assoc, cfg):
        raise AssertionError("oracle witness breaks the association budget")
    dl = check_downlink(cfg, result.assoc, result.downlink).eta if result.downlink else 0
    ul = check_uplink(cfg, result.assoc, result.uplink).eta if result.uplink else 0
    got = {"down": dl, "up": ul, "joint": Fraction(dl + ul, 2)}[result.mode]
    if got != result.eta:
        raise AssertionError(f"oracle witness evaluates to {got}, reported {result.eta}")


# -- witness audits ---------------------------------------------------------

class RuleViolation(NamedTuple):
    rule: str
    detail: str


def uplink_lemma_violations(cfg: NetworkConfig, plan: UplinkPlan) -> list[RuleViolation]:
    """Pairwise exclusivity, decoder ordering and the window budget, checked on a plan."""
    out = []
    pairs = plan.pairs
    for a, (m1, b1) in enumerate(pairs):
        for m2, b2 in pairs[a + 1:]:
            if m1 - cfg.L <= b2 <= m1 and m2 - cfg.L <= b1 <= m2:
                out.append(RuleViolation("pair exclusivity", f"pairs ({m1},{b1}) and ({m2},{b2}) hear each other"))
            if (m1 - m2) * (b1 - b2) <= 0:
                out.append(RuleViolation("decoder order", f"pairs ({m1},{b1}) and ({m2},{b2}) cross"))
    for a in range(1, cfg.K + 1):
        window = range(a, a + cfg.L + 1)
        inside = [(m, b) for m, b in pairs if m in window and b in window]
        if len(inside) > cfg.Nc:
            out.append(RuleViolation("window budget", f"window [{a},{a + cfg.L}] holds {len(inside)} > Nc pairs {inside}"))
    return out


def verify_witness_lemmas(result: OracleResult) -> Optional[RuleViolation]:
    if result.uplink is None:
        raise ValueError("result carries no uplink plan")
    found = uplink_lemma_violations(result.cfg, result.uplink)
    return found[0] if found else None


@dataclass(frozen=True)
class GapReport:
    scheme_eta: Union[int, Fraction]
    oracle_eta: Union[int, Fraction]
    formula_eta: Fraction
    gap: Union[int, Fraction]


def scheme_gap_report(cfg: NetworkConfig, mode: str, guard: OracleGuard = DEFAULT_GUARD) -> GapReport:
    res = oracle_eta(cfg, mode, guard)
    scheme = evaluate_scheme(build_scheme(cfg, mode)).eta
    return GapReport(scheme, res.eta, formula(mode, cfg.L, cfg.Nc) * cfg.K, res.eta - scheme)
