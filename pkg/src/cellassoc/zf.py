"""Zero-forcing feasibility checks and DoF accounting for fixed plans.

Downlink: each active MT m receives W_m from a transmit set T_m within C_m.
A beamformer over T_m must vanish at every other active MT the set reaches
while still reaching m. With generic channel coefficients this holds iff
adding m's row to the nulling rows raises the generic rank of the channel
submatrix, which for independent entries equals its maximum bipartite
matching (term rank).

Uplink: a decoding pair (m, d) means BS d decodes W_m after subtracting every
other decoded word it hears; each such word must be decoded earlier and
forwarded to d, i.e. d must belong to its association.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Mapping, Optional, Sequence

from .model import (
    CellAssociation,
    NetworkConfig,
    StructureError,
    bs_neighbors,
    coverage,
    mt_neighbors,
    ordered,
)


@dataclass(frozen=True)
class DownlinkPlan:
    active: tuple[int, ...]
    transmit_sets: Mapping[int, frozenset]

    def __post_init__(self):
        active = ordered(self.active)
        if len(active) != len(self.active):
            raise StructureError("duplicate active MT")
        sets = {int(m): frozenset(t) for m, t in self.transmit_sets.items()}
        if set(sets) != set(active):
            raise StructureError("transmit_sets keys must equal the active MTs")
        object.__setattr__(self, "active", active)
        object.__setattr__(self, "transmit_sets", sets)

    @classmethod
    def empty(cls) -> "DownlinkPlan":
        return cls((), {})

    def restricted(self, keep: Iterable[int]) -> "DownlinkPlan":
        keep = set(keep)
        return DownlinkPlan(
            tuple(m for m in self.active if m in keep),
            {m: t for m, t in self.transmit_sets.items() if m in keep},
        )


@dataclass(frozen=True)
class UplinkPlan:
    pairs: tuple[tuple[int, int], ...]
    order: tuple[int, ...]

    def __post_init__(self):
        pairs = tuple(sorted((int(m), int(d)) for m, d in self.pairs))
        users = [m for m, _ in pairs]
        if len(set(users)) != len(users):
            raise StructureError("a user appears in more than one decoding pair")
        decoders = [d for _, d in pairs]
        if len(set(decoders)) != len(decoders):
            raise StructureError("decoding BSs must be pairwise distinct")
        order = tuple(int(m) for m in self.order)
        if sorted(order) != users:
            raise StructureError("order must list every decoded user exactly once")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "order", order)

    @classmethod
    def empty(cls) -> "UplinkPlan":
        return cls((), ())

    @property
    def decoder(self) -> dict[int, int]:
        return dict(self.pairs)

    def prefix(self, n: int) -> "UplinkPlan":
        keep = set(self.order[:n])
        return UplinkPlan(tuple(p for p in self.pairs if p[0] in keep), self.order[:n])


@dataclass(frozen=True)
class Evaluation:
    per_user_dof: tuple[int, ...]
    eta: int
    pudof: Fraction
    decode_depth: Optional[int] = None

    @classmethod
    def from_active(cls, K: int, active: Iterable[int], decode_depth: Optional[int] = None) -> "Evaluation":
        on = set(active)
        dof = tuple(1 if i in on else 0 for i in range(1, K + 1))
        return cls(dof, sum(dof), Fraction(sum(dof), K), decode_depth)


@dataclass(frozen=True)
class Infeasibility:
    session: str
    user: int
    reason: str
    count: int = 0
    capacity: int = 0
    blocker: Optional[tuple[int, int]] = None

    def __str__(self):
        s = f"{self.session}: W_{self.user} infeasible ({self.reason})"
        if self.reason == "nulling":
            s += f": {self.count} nulling constraints, {self.capacity} dimensions"
        if self.blocker is not None:
            s += f", blocked by pair {self.blocker}"
        return s


class InfeasiblePlanError(Exception):
    def __init__(self, report: Infeasibility):
        super().__init__(str(report))
        self.report = report


# -- downlink ---------------------------------------------------------------

def _matching_size(rows: Sequence[frozenset]) -> int:
    match: dict[int, int] = {}

    def augment(r: int, seen: set) -> bool:
        for c in rows[r]:
            if c in seen:
                continue
            seen.add(c)
            if c not in match or augment(match[c], seen):
                match[c] = r
                return True
        return False

    return sum(augment(r, set()) for r in range(len(rows)))


def nulling_feasible(target: frozenset, others: Sequence[frozenset]) -> bool:
    """Whether a generic vector can null every ``others`` row yet not ``target``.

    Rows are given by their supports (columns with a nonzero coefficient).
    """
    if not target:
        return False
    others = [o for o in others if o]
    return _matching_size(others + [target]) > _matching_size(others)


def transmit_violation(cfg: NetworkConfig, m: int, T: frozenset, active: Iterable[int]) -> Optional[Infeasibility]:
    """Why transmitting W_m from ``T`` fails against the active set, or ``None``."""
    if not T & mt_neighbors(m, cfg):
        return Infeasibility("downlink", m, "coverage", capacity=len(T) - 1)
    reach = coverage(T, cfg)
    others = [o for o in active if o != m and o in reach]
    target = T & mt_neighbors(m, cfg)
    rows = [T & mt_neighbors(o, cfg) for o in others]
    if nulling_feasible(target, rows):
        return None
    return Infeasibility("downlink", m, "nulling", count=len(others), capacity=len(T) - 1)


def downlink_violation(cfg: NetworkConfig, assoc: CellAssociation, plan: DownlinkPlan) -> Optional[Infeasibility]:
    for m in plan.active:
        T = plan.transmit_sets[m]
        if not T <= assoc[m]:
            return Infeasibility("downlink", m, "association")
        v = transmit_violation(cfg, m, T, plan.active)
        if v is not None:
            return v
    return None


def check_downlink(cfg: NetworkConfig, assoc: CellAssociation, plan: DownlinkPlan) -> Evaluation:
    """Evaluate a downlink plan; raises :class:`InfeasiblePlanError` on the first failing message."""
    v = downlink_violation(cfg, assoc, plan)
    if v is not None:
        raise InfeasiblePlanError(v)
    return Evaluation.from_active(cfg.K, plan.active)


# -- uplink -----------------------------------------------------------------

def uplink_dependencies(cfg: NetworkConfig, pairs: Iterable[tuple[int, int]]) -> dict[int, list[int]]:
    """For each decoded m, the decoded users whose words BS d_m hears (besides m)."""
    decoder = dict(pairs)
    return {
        m: [o for o in sorted(bs_neighbors(d, cfg)) if o != m and o in decoder]
        for m, d in sorted(decoder.items())
    }


def _association_violation(cfg, assoc, pairs, deps) -> Optional[Infeasibility]:
    decoder = dict(pairs)
    for m, d in sorted(decoder.items()):
        if d not in mt_neighbors(m, cfg):
            return Infeasibility("uplink", m, "connectivity", blocker=(m, d))
        if d not in assoc[m]:
            return Infeasibility("uplink", m, "association", blocker=(m, d))
    for m, d in sorted(decoder.items()):
        for o in deps[m]:
            if d not in assoc[o]:
                return Infeasibility("uplink", m, "association", blocker=(o, decoder[o]))
    return None


def uplink_violation(cfg: NetworkConfig, assoc: CellAssociation, plan: UplinkPlan) -> Optional[Infeasibility]:
    decoder = plan.decoder
    position = {m: k for k, m in enumerate(plan.order)}
    for m in plan.order:
        d = decoder[m]
        if d not in mt_neighbors(m, cfg):
            return Infeasibility("uplink", m, "connectivity", blocker=(m, d))
        if d not in assoc[m]:
            return Infeasibility("uplink", m, "association", blocker=(m, d))
        for o in sorted(bs_neighbors(d, cfg)):
            if o == m or o not in decoder:
                continue
            if position[o] > position[m]:
                return Infeasibility("uplink", m, "ordering", blocker=(o, decoder[o]))
            if d not in assoc[o]:
                return Infeasibility("uplink", m, "association", blocker=(o, decoder[o]))
    return None


def decode_depth(cfg: NetworkConfig, plan: UplinkPlan) -> int:
    """Longest chain (in users) of the decoding dependency relation."""
    deps = uplink_dependencies(cfg, plan.pairs)
    depth: dict[int, int] = {}

    def visit(m: int, stack: frozenset) -> int:
        if m in depth:
            return depth[m]
        if m in stack:
            raise ValueError("cyclic decoding dependencies")
        depth[m] = 1 + max((visit(o, stack | {m}) for o in deps[m]), default=0)
        return depth[m]

    return max((visit(m, frozenset()) for m in deps), default=0)


def check_uplink(cfg: NetworkConfig, assoc: CellAssociation, plan: UplinkPlan) -> Evaluation:
    """Evaluate an uplink plan in its stated order.

    The active MTs are exactly the decoded ones. Raises
    :class:`InfeasiblePlanError` naming the blocking pair.
    """
    v = uplink_violation(cfg, assoc, plan)
    if v is not None:
        raise InfeasiblePlanError(v)
    return Evaluation.from_active(cfg.K, plan.decoder, decode_depth(cfg, plan))


def find_uplink_order(
    cfg: NetworkConfig, assoc: CellAssociation, pairs: Iterable[tuple[int, int]]
) -> Optional[tuple[int, ...]]:
    """A decode order accepted by :func:`check_uplink`, or ``None``.

    ``None`` covers both cyclic dependencies and missing associations (no
    order can repair the latter). Among ready users the highest index goes
    first.
    """
    pairs = sorted(pairs)
    deps = uplink_dependencies(cfg, pairs)
    if _association_violation(cfg, assoc, pairs, deps) is not None:
        return None
    ts = TopologicalSorter()
    for m, before in deps.items():
        ts.add(m, *before)
    try:
        ts.prepare()
    except CycleError:
        return None
    ready: list[int] = []
    order = []
    while ts.is_active():
        for m in ts.get_ready():
            heapq.heappush(ready, -m)
        m = -heapq.heappop(ready)
        order.append(m)
        ts.done(m)
    return tuple(order)
