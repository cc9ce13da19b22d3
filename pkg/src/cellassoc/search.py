"""Exact plan search: depth-first branch and bound over users 1..K.

Both engines visit users in increasing index and try "serve this user"
before "skip it", so the first optimum reached is the lexicographically
smallest witness (active users first; then smaller transmit sets / decoders).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Optional, Sequence

from .model import CellAssociation, NetworkConfig, StructureError, coverage, mt_neighbors, validate_association
from .zf import DownlinkPlan, Evaluation, UplinkPlan, check_downlink, check_uplink, find_uplink_order, nulling_feasible

DEFAULT_PLAN_CAP = 12


class GuardError(RuntimeError):
    """Search refused or aborted because the instance is too large."""

    def __init__(self, message: str, estimate: Optional[int] = None):
        super().__init__(message)
        self.estimate = estimate


class NodeCounter:
    def __init__(self, limit: Optional[int] = None):
        self.count = 0
        self.limit = limit

    def tick(self) -> None:
        self.count += 1
        if self.limit is not None and self.count > self.limit:
            raise GuardError(f"search exceeded the node budget of {self.limit}", self.count)


def canonical_subsets(pool, max_size: int) -> list[frozenset]:
    """Nonempty subsets of ``pool`` up to ``max_size``, smallest first then lexicographic."""
    pool = sorted(pool)
    return [frozenset(c) for r in range(1, max_size + 1) for c in combinations(pool, r)]


# -- downlink ---------------------------------------------------------------

class _TransmitOption:
    __slots__ = ("T", "target", "reach", "rows")

    def __init__(self, cfg: NetworkConfig, m: int, T: frozenset):
        self.T = T
        self.target = T & mt_neighbors(m, cfg)
        reach = coverage(T, cfg) - {m}
        self.reach = sum(1 << o for o in reach)
        self.rows = {o: T & mt_neighbors(o, cfg) for o in reach}

    def works(self, active: int) -> bool:
        hit = active & self.reach
        rows = [r for o, r in self.rows.items() if hit >> o & 1]
        return nulling_feasible(self.target, rows)


def downlink_search(
    cfg: NetworkConfig,
    candidates: Mapping[int, Sequence[frozenset]],
    floor: int = 0,
    counter: Optional[NodeCounter] = None,
) -> Optional[tuple[int, DownlinkPlan]]:
    """Largest active set (> ``floor``) such that every active MT has a working transmit set.

    ``candidates[m]`` lists the transmit sets allowed for m in preference
    order. Returns ``None`` when nothing beats ``floor``.
    """
    K = cfg.K
    counter = counter or NodeCounter()
    options = {
        m: [_TransmitOption(cfg, m, T) for T in candidates.get(m, ()) if T & mt_neighbors(m, cfg)]
        for m in cfg.users
    }
    due: dict[int, list[int]] = {m: [] for m in cfg.users}
    relevant = {}
    for m, opts in options.items():
        if not opts:
            continue
        reach = 0
        for o in opts:
            reach |= o.reach
        relevant[m] = reach
        due[min(K, max(m, reach.bit_length() - 1))].append(m)
    memo: dict[tuple[int, int], Optional[frozenset]] = {}

    def pick(m: int, active: int) -> Optional[frozenset]:
        key = (m, active & relevant[m])
        if key not in memo:
            memo[key] = next((o.T for o in options[m] if o.works(active)), None)
        return memo[key]

    best = [floor, None]

    def dfs(m: int, active: int, count: int) -> None:
        counter.tick()
        if count + (K - m + 1) <= best[0]:
            return
        if m > K:
            best[0], best[1] = count, active
            return
        choices = ((active | 1 << m, count + 1), (active, count)) if options[m] else ((active, count),)
        for nxt, c in choices:
            if all(pick(u, nxt) is not None for u in due[m] if nxt >> u & 1):
                dfs(m + 1, nxt, c)

    dfs(1, 0, 0)
    if best[1] is None:
        return None
    active = best[1]
    served = [m for m in cfg.users if active >> m & 1]
    return best[0], DownlinkPlan(tuple(served), {m: pick(m, active) for m in served})


# -- uplink -----------------------------------------------------------------

def uplink_search(
    cfg: NetworkConfig,
    decoders: Mapping[int, Sequence[int]],
    allowed: Callable[[int, frozenset], bool],
    floor: int = 0,
    counter: Optional[NodeCounter] = None,
    leaf: Optional[Callable[[list[tuple[int, int]], int], Optional[int]]] = None,
    leaf_bonus: int = 0,
) -> Optional[tuple[int, list[tuple[int, int]]]]:
    """Largest set of decoding pairs (> ``floor``) with an admissible decode order.

    ``decoders[m]`` are the BSs allowed to decode W_m. ``allowed(m, S)``
    says whether user m may end up associated with the decoder set S it
    hears. Pairs are kept order-consistent (a later user never uses an
    earlier decoder), mutual interference between two pairs is rejected at
    once, and no window of L+1 indices may hold more than Nc pairs.

    ``leaf(pairs, floor)`` may replace the plain count at complete
    assignments; it returns a score or ``None`` to reject the leaf, and
    ``leaf_bonus`` bounds how far the score can exceed the pair count.
    """
    K, L, Nc = cfg.K, cfg.L, cfg.Nc
    counter = counter or NodeCounter()
    pairs: list[tuple[int, int]] = []
    heard: dict[int, set] = {}
    best: list = [floor, None]

    def score(count: int) -> Optional[int]:
        if leaf is not None:
            return leaf(pairs, best[0])
        order = find_uplink_order(cfg, _minimal_uplink_assoc(cfg, pairs), pairs)
        return count if order is not None else None

    def fits(m: int, d: int) -> bool:
        mine = {dd for _, dd in pairs if dd >= m - L} | {d}
        if not allowed(m, frozenset(mine)):
            return False
        for mm, dd in pairs:
            if d >= mm - L and d <= mm:
                if not allowed(mm, frozenset(heard[mm] | {d})):
                    return False
                if dd >= m - L:
                    return False  # each decoder hears the other's word
        for a in range(max(1, m - L), d + 1):
            inside = sum(1 for mm, dd in pairs if dd >= a and mm <= a + L) + 1
            if inside > Nc:
                return False
        return True

    def dfs(m: int, last_d: int) -> None:
        counter.tick()
        count = len(pairs)
        if count + min(K - m + 1, K - last_d) + leaf_bonus <= best[0]:
            return
        if m > K:
            s = score(count)
            if s is not None and s > best[0]:
                best[0], best[1] = s, list(pairs)
            return
        for d in sorted(decoders.get(m, ())):
            if d <= last_d or not fits(m, d):
                continue
            touched = [mm for mm, _ in pairs if mm - L <= d <= mm]
            for mm in touched:
                heard[mm].add(d)
            heard[m] = {dd for _, dd in pairs if dd >= m - L} | {d}
            pairs.append((m, d))
            dfs(m + 1, d)
            pairs.pop()
            del heard[m]
            for mm in touched:
                heard[mm].discard(d)
        dfs(m + 1, last_d)

    dfs(1, 0)
    if best[1] is None:
        return None
    return best[0], best[1]


def _minimal_uplink_assoc(cfg: NetworkConfig, pairs: Sequence[tuple[int, int]]) -> CellAssociation:
    """Each decoded MT joins every decoding BS that hears it; others stay empty."""
    D = {d for _, d in pairs}
    decoded = {m for m, _ in pairs}
    return CellAssociation(tuple(
        (D & mt_neighbors(i, cfg)) if i in decoded else frozenset() for i in cfg.users
    ))


# -- fixed association ------------------------------------------------------

@dataclass(frozen=True)
class SessionBest:
    evaluation: Evaluation
    plan: object


@dataclass(frozen=True)
class BestPlans:
    mode: str
    K: int
    downlink: Optional[SessionBest] = None
    uplink: Optional[SessionBest] = None

    @property
    def eta(self):
        if self.mode == "down":
            return self.downlink.evaluation.eta
        if self.mode == "up":
            return self.uplink.evaluation.eta
        return Fraction(self.downlink.evaluation.eta + self.uplink.evaluation.eta, 2)

    @property
    def pudof(self) -> Fraction:
        return Fraction(self.eta) / self.K


def best_downlink(cfg: NetworkConfig, assoc: CellAssociation, counter: Optional[NodeCounter] = None) -> SessionBest:
    cands = {m: canonical_subsets(assoc[m], len(assoc[m])) for m in cfg.users}
    found = downlink_search(cfg, cands, floor=-1, counter=counter)
    plan = found[1]
    return SessionBest(check_downlink(cfg, assoc, plan), plan)


def best_uplink(cfg: NetworkConfig, assoc: CellAssociation, counter: Optional[NodeCounter] = None) -> SessionBest:
    decs = {m: sorted(assoc[m] & mt_neighbors(m, cfg)) for m in cfg.users}

    def leaf(pairs, _floor):
        return len(pairs) if find_uplink_order(cfg, assoc, pairs) is not None else None

    found = uplink_search(cfg, decs, lambda m, S: S <= assoc[m], floor=-1, counter=counter, leaf=leaf)
    pairs = found[1]
    plan = UplinkPlan(tuple(pairs), find_uplink_order(cfg, assoc, pairs))
    return SessionBest(check_uplink(cfg, assoc, plan), plan)


def best_plans(cfg: NetworkConfig, assoc: CellAssociation, mode: str, cap: int = DEFAULT_PLAN_CAP) -> BestPlans:
    """Best zero-forcing plans for a fixed association.

    ``joint`` optimizes the two sessions independently over the shared
    association and reports the average.
    """
    if cfg.K > cap:
        raise GuardError(f"K={cfg.K} exceeds the exact-search cap {cap}; evaluate a scheme instead")
    if validate_association(assoc, cfg):
        raise StructureError("association violates the budget or index range")
    if mode not in ("down", "up", "joint"):
        raise ValueError(f"unknown mode {mode!r}")
    down = best_downlink(cfg, assoc) if mode in ("down", "joint") else None
    up = best_uplink(cfg, assoc) if mode in ("up", "joint") else None
    return BestPlans(mode, cfg.K, down, up)
