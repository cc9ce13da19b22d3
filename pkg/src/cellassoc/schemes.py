"""Constructive cell-association schemes for downlink, uplink and joint sessions.

Every builder returns associations together with explicit session plans and
re-verifies them with the zero-forcing checkers before handing them out.
Blocks whose construction would run past user K are truncated: users beyond K
are dropped and helper BSs outside ``[1, K]`` are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .closed_form import gamma_d, pudof_downlink_zf, pudof_joint_zf_inner, uplink_regime
from .model import CellAssociation, NetworkConfig, mt_neighbors, validate_association
from .zf import DownlinkPlan, Evaluation, InfeasiblePlanError, UplinkPlan, check_downlink, check_uplink


class SchemeConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class JointSchemeParams:
    epsilon: int
    delta: int
    chi: int
    Delta: int

    @classmethod
    def for_config(cls, L: int, Nc: int) -> "JointSchemeParams":
        eps = (L + 1) // 2
        delta = (L + 1) % 2
        return cls(eps, delta, 2 * eps, eps + delta + Nc - (L + 1))


@dataclass(frozen=True)
class SchemeOutput:
    cfg: NetworkConfig
    mode: str
    construction: str
    assoc: CellAssociation
    downlink: Optional[DownlinkPlan]
    uplink: Optional[UplinkPlan]
    block_width: int
    claimed: Fraction


@dataclass(frozen=True)
class SchemeEvaluation:
    mode: str
    K: int
    downlink: Optional[Evaluation]
    uplink: Optional[Evaluation]

    @property
    def eta(self):
        if self.mode == "down":
            return self.downlink.eta
        if self.mode == "up":
            return self.uplink.eta
        return Fraction(self.downlink.eta + self.uplink.eta, 2)

    @property
    def pudof(self) -> Fraction:
        return Fraction(self.eta) / self.K

    @property
    def decode_depth(self) -> Optional[int]:
        return self.uplink.decode_depth if self.uplink is not None else None


def evaluate_scheme(out: SchemeOutput) -> SchemeEvaluation:
    cfg = out.cfg
    down = check_downlink(cfg, out.assoc, out.downlink) if out.downlink is not None else None
    up = check_uplink(cfg, out.assoc, out.uplink) if out.uplink is not None else None
    return SchemeEvaluation(out.mode, cfg.K, down, up)


def _finish(out: SchemeOutput) -> SchemeOutput:
    bad = validate_association(out.assoc, out.cfg)
    if bad:
        v = bad[0]
        raise SchemeConstructionError(f"{out.construction}: user {v.user} needs {v.size} > Nc={out.cfg.Nc} associations")
    try:
        evaluate_scheme(out)
    except InfeasiblePlanError as exc:
        raise SchemeConstructionError(f"{out.construction}: {exc}") from exc
    return out


def _clip(bss, K: int) -> frozenset:
    return frozenset(j for j in bss if 1 <= j <= K)


def _assoc(K: int, sets: dict[int, frozenset]) -> CellAssociation:
    return CellAssociation(tuple(sets.get(i, frozenset()) for i in range(1, K + 1)))


# -- downlink ---------------------------------------------------------------

def _two_miso_transmit_sets(K: int, L: int, n: int) -> dict[int, frozenset]:
    """Transmit sets of the two-broadcast-channel blocks of width 2n+L."""
    width = 2 * n + L
    T = {}
    for s in range(1, K + 1, width):
        for m in range(s, s + n):
            if m <= K:
                T[m] = _clip(range(m, s + n), K)
        for m in range(s + n + L, s + width):
            if m <= K:
                T[m] = frozenset(range(s + n, m - L + 1))
    return T


def build_downlink_scheme(cfg: NetworkConfig) -> SchemeOutput:
    T = _two_miso_transmit_sets(cfg.K, cfg.L, cfg.Nc)
    return _finish(SchemeOutput(
        cfg, "down", "two-miso",
        _assoc(cfg.K, T),
        DownlinkPlan(tuple(T), T),
        None,
        2 * cfg.Nc + cfg.L,
        pudof_downlink_zf(cfg.L, cfg.Nc),
    ))


# -- uplink -----------------------------------------------------------------

def _full_uplink(cfg: NetworkConfig) -> tuple[dict[int, frozenset], UplinkPlan]:
    sets = {i: mt_neighbors(i, cfg) for i in cfg.users}
    plan = UplinkPlan(tuple((i, i) for i in cfg.users), tuple(range(cfg.K, 0, -1)))
    return sets, plan


def _block_uplink(cfg: NetworkConfig) -> tuple[dict[int, frozenset], UplinkPlan]:
    """Blocks of L+2: the last Nc words decode locally, one more at the block's first BS."""
    K, L, Nc = cfg.K, cfg.L, cfg.Nc
    width = L + 2
    low = L + 2 - Nc  # decoded at the block's first BS
    top = range(L + 3 - Nc, L + 3)  # decoded at their own BS
    sets, pairs, order = {}, [], []
    starts = list(range(1, K + 1, width))
    for s in reversed(starts):
        g = lambda x: s + x - 1  # noqa: E731
        prev = lambda x: s - width + x - 1  # noqa: E731
        block_order = []
        for i in reversed(top):
            if g(i) > K:
                continue
            c = set(range(g(L + 3 - Nc), g(i) + 1))
            if i <= L + 1:
                c.add(g(1))
                c.update(prev(x) for x in range(i + 2, L + 3))
            sets[g(i)] = _clip(c, K)
            pairs.append((g(i), g(i)))
            block_order.append(g(i))
        if g(low) <= K:
            c = {g(1)} | {prev(x) for x in range(L + 4 - Nc, L + 3)}
            sets[g(low)] = _clip(c, K)
            pairs.append((g(low), g(1)))
            block_order.append(g(low))
        order.extend(block_order)
    return sets, UplinkPlan(tuple(pairs), tuple(order))


def _split_uplink(cfg: NetworkConfig, full_groups: bool = False) -> tuple[dict[int, frozenset], UplinkPlan]:
    """Blocks of 2Nc+L: the first Nc MTs decode at BSs 1..Nc, the last Nc at BSs Nc+1..2Nc.

    With ``full_groups`` every MT of a group joins all BSs of its group,
    which is what the joint scheme needs for its downlink.
    """
    K, L, n = cfg.K, cfg.L, cfg.Nc
    width = 2 * n + L
    sets, pairs, order = {}, [], []
    for s in range(1, K + 1, width):
        a_users = [m for m in range(s, s + n) if m <= K]
        b_users = [m for m in range(s + n + L, s + width) if m <= K]
        for m in a_users:
            sets[m] = _clip(range(s, s + n), K) if full_groups else frozenset(range(s, m + 1))
            pairs.append((m, m))
        for m in b_users:
            sets[m] = frozenset(range(s + n, s + 2 * n)) if full_groups else frozenset(range(m - L, s + 2 * n))
            pairs.append((m, m - L))
        order.extend(reversed(a_users))
        order.extend(b_users)
    return sets, UplinkPlan(tuple(pairs), tuple(order))


def _uplink_output(cfg: NetworkConfig, construction: str) -> SchemeOutput:
    L, Nc = cfg.L, cfg.Nc
    if construction == "full":
        sets, plan = _full_uplink(cfg)
        width, claimed = 1, Fraction(1)
    elif construction == "block":
        sets, plan = _block_uplink(cfg)
        width, claimed = L + 2, Fraction(Nc + 1, L + 2)
    else:
        sets, plan = _split_uplink(cfg)
        width, claimed = 2 * Nc + L, Fraction(2 * Nc, 2 * Nc + L)
    return _finish(SchemeOutput(cfg, "up", construction, _assoc(cfg.K, sets), None, plan, width, claimed))


def build_uplink_scheme(cfg: NetworkConfig) -> SchemeOutput:
    regime = uplink_regime(cfg.L, cfg.Nc)
    if regime != "gap":
        return _uplink_output(cfg, regime)
    candidates = [_uplink_output(cfg, c) for c in ("block", "split")]
    return max(candidates, key=lambda o: (evaluate_scheme(o).eta, o.claimed, o.construction == "split"))


# -- joint ------------------------------------------------------------------

def _joint_small_budget(cfg: NetworkConfig) -> SchemeOutput:
    sets, up = _split_uplink(cfg, full_groups=True)
    down = DownlinkPlan(tuple(sets), sets)
    return _finish(SchemeOutput(
        cfg, "joint", "two-miso-split", _assoc(cfg.K, sets), down, up,
        2 * cfg.Nc + cfg.L, pudof_joint_zf_inner(cfg.L, cfg.Nc),
    ))


def _single_miso_transmit_sets(cfg: NetworkConfig) -> dict[int, frozenset]:
    """Blocks of Nc: first epsilon MTs and last epsilon BSs silent, one broadcast channel in between."""
    K, Nc = cfg.K, cfg.Nc
    p = JointSchemeParams.for_config(cfg.L, Nc)
    T = {}
    for s in range(1, K + 1, Nc):
        bss = _clip(range(s, s + p.Delta), K)
        for m in range(s + p.epsilon, s + Nc):
            if m <= K:
                T[m] = bss
    return T


def _joint_full_uplink(cfg: NetworkConfig) -> SchemeOutput:
    L, Nc = cfg.L, cfg.Nc
    sets, up = _full_uplink(cfg)
    if Nc < 2 * L:
        T = _single_miso_transmit_sets(cfg)
        width, construction = Nc, "full-uplink+single-miso"
    else:
        T = _two_miso_transmit_sets(cfg.K, L, Nc - L)
        width, construction = 2 * (Nc - L) + L, "full-uplink+two-miso"
    for m, t in T.items():
        sets[m] = sets[m] | t
    down = DownlinkPlan(tuple(T), T)
    claimed = (1 + gamma_d(L, Nc)) / 2
    return _finish(SchemeOutput(cfg, "joint", construction, _assoc(cfg.K, sets), down, up, width, claimed))


def build_joint_scheme(cfg: NetworkConfig) -> SchemeOutput:
    if cfg.Nc <= cfg.L:
        return _joint_small_budget(cfg)
    return _joint_full_uplink(cfg)


BUILDERS = {"down": build_downlink_scheme, "up": build_uplink_scheme, "joint": build_joint_scheme}


def build_scheme(cfg: NetworkConfig, mode: str) -> SchemeOutput:
    if mode not in BUILDERS:
        raise ValueError(f"unknown mode {mode!r}")
    return BUILDERS[mode](cfg)
