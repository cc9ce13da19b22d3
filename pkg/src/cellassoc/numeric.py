"""Linear-algebra cross-check of the combinatorial zero-forcing verdicts.

Channels are real with i.i.d. standard-normal nonzeros on the locally
connected support, drawn from ``numpy.random.default_rng(seed)``. Downlink
plans are realized with explicit null-space beamformers; uplink plans are
simulated symbol by symbol with successive cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import zf
from .model import CellAssociation, NetworkConfig, mt_neighbors
from .oracle import helper_window
from .schemes import build_downlink_scheme, build_uplink_scheme
from .zf import DownlinkPlan, UplinkPlan, find_uplink_order

DEFAULT_TOL = 1e-8
SIGNAL_FLOOR = 1e-6
SINGULAR_FLOOR = 1e-12
SYMBOLS = 16


@dataclass(frozen=True)
class ChannelRealization:
    entries: np.ndarray
    seed: int

    def h(self, i: int, j: int) -> float:
        """Coefficient between MT ``i`` and BS ``j`` (1-based)."""
        return float(self.entries[i - 1, j - 1])

    def scaled(self, c: float) -> "ChannelRealization":
        return ChannelRealization(self.entries * c, self.seed)


def support_mask(cfg: NetworkConfig) -> np.ndarray:
    i = np.arange(1, cfg.K + 1)[:, None]
    j = np.arange(1, cfg.K + 1)[None, :]
    return (j <= i) & (i <= j + cfg.L)


def realize_channel(cfg: NetworkConfig, seed: int) -> ChannelRealization:
    rng = np.random.default_rng(seed)
    draw = rng.standard_normal((cfg.K, cfg.K))
    return ChannelRealization(np.where(support_mask(cfg), draw, 0.0), seed)


@dataclass(frozen=True)
class NumericVerdict:
    session: str
    numeric_feasible: bool
    combinatorial_feasible: bool
    singular: bool = False
    detail: str = ""

    @property
    def agree(self) -> bool:
        return self.numeric_feasible == self.combinatorial_feasible


def _null_space(A: np.ndarray) -> tuple[np.ndarray, bool]:
    """Orthonormal null-space basis and whether the rank decision was borderline."""
    n = A.shape[1]
    if A.shape[0] == 0 or not A.any():
        return np.eye(n), False
    _, s, vt = np.linalg.svd(A, full_matrices=True)
    rel = s / s[0]
    rank = int(np.sum(rel > 1e-9))
    borderline = bool(np.any((rel > 1e-13) & (rel < 1e-7)))
    return vt[rank:].T, borderline


def beamformer_response(
    H: ChannelRealization, m: int, T, others
) -> tuple[float, float, bool]:
    """Zero-forcing W_m from ``T`` against ``others``.

    Returns the relative response at MT m, the relative leakage into
    ``others`` and whether a rank decision was borderline.
    """
    G = H.entries
    cols = [j - 1 for j in sorted(T)]
    A = G[np.ix_([o - 1 for o in others], cols)]
    h = G[m - 1, cols]
    if not np.linalg.norm(h):
        return 0.0, 0.0, False
    N, borderline = _null_space(A)
    p = N.T @ h
    response = float(np.linalg.norm(p) / np.linalg.norm(h))
    leak = 0.0
    v = N @ p
    if A.any() and np.linalg.norm(v):
        leak = float(np.linalg.norm(A @ v) / (np.linalg.norm(A) * np.linalg.norm(v)))
    return response, leak, borderline


def verify_downlink_numeric(
    cfg: NetworkConfig, H: ChannelRealization, assoc: CellAssociation, plan: DownlinkPlan, tol: float = DEFAULT_TOL
) -> NumericVerdict:
    """Build a zero-forcing beamformer per active message and compare with :func:`zf.check_downlink`."""
    combinatorial = zf.downlink_violation(cfg, assoc, plan) is None
    feasible, singular, detail = True, False, ""
    for m in plan.active:
        T = plan.transmit_sets[m]
        if not T <= assoc[m]:
            feasible, detail = False, f"W_{m}: transmit set outside association"
            break
        others = [o for o in plan.active if o != m]
        response, leak, borderline = beamformer_response(H, m, T, others)
        singular |= borderline or SINGULAR_FLOOR < response < SIGNAL_FLOOR
        if response < SIGNAL_FLOOR:
            feasible, detail = False, f"W_{m}: desired response {response:.2e} after nulling"
            break
        if leak > tol:
            feasible, detail = False, f"W_{m}: residual interference {leak:.2e}"
            break
    return NumericVerdict("downlink", feasible, combinatorial, singular, detail)


def verify_uplink_numeric(
    cfg: NetworkConfig,
    H: ChannelRealization,
    assoc: CellAssociation,
    plan: UplinkPlan,
    tol: float = DEFAULT_TOL,
    symbol_seed: Optional[int] = None,
) -> NumericVerdict:
    """Simulate successive decoding with forwarded words and compare with :func:`zf.check_uplink`."""
    combinatorial = zf.uplink_violation(cfg, assoc, plan) is None
    rng = np.random.default_rng(H.seed if symbol_seed is None else symbol_seed)
    X = rng.standard_normal((cfg.K, SYMBOLS))
    G = H.entries
    decoder = plan.decoder
    active = sorted(decoder)
    feasible, singular, detail = True, False, ""
    known: list[int] = []
    for m in plan.order:
        d = decoder[m]
        if d not in assoc[m]:
            feasible, detail = False, f"W_{m}: BS {d} not associated"
            break
        received = sum((G[o - 1, d - 1] * X[o - 1] for o in active), np.zeros(SYMBOLS))
        known_part = sum(
            (G[o - 1, d - 1] * X[o - 1] for o in known if d in assoc[o]), np.zeros(SYMBOLS)
        )
        r = received - known_part
        scale = sum(abs(G[o - 1, d - 1]) * np.linalg.norm(X[o - 1]) for o in active) or 1.0
        x = X[m - 1]
        c = (r @ x) / (x @ x)
        err = np.linalg.norm(r - c * x) / scale
        signal = abs(c) * np.linalg.norm(x) / scale
        singular |= tol < err < SIGNAL_FLOOR or SINGULAR_FLOOR < signal < SIGNAL_FLOOR
        if err > tol:
            feasible, detail = False, f"W_{m}: residual interference {err:.2e} at BS {d}"
            break
        if signal < SIGNAL_FLOOR:
            feasible, detail = False, f"W_{m}: no signal at BS {d}"
            break
        known.append(m)
    return NumericVerdict("uplink", feasible, combinatorial, singular, detail)


# -- Monte-Carlo agreement --------------------------------------------------

def _random_assoc(cfg: NetworkConfig, rng: np.random.Generator) -> CellAssociation:
    sets = []
    for i in cfg.users:
        pool = list(helper_window(cfg, i))
        size = int(rng.integers(0, min(cfg.Nc, len(pool)) + 1))
        sets.append(frozenset(int(j) for j in rng.choice(pool, size=size, replace=False)))
    return CellAssociation(tuple(sets))


def random_downlink_case(cfg: NetworkConfig, rng: np.random.Generator) -> tuple[CellAssociation, DownlinkPlan]:
    """A scheme plan, or a random association with a random plan on it."""
    if rng.random() < 0.5:
        out = build_downlink_scheme(cfg)
        if rng.random() < 0.5:
            return out.assoc, out.downlink
        assoc = out.assoc
    else:
        assoc = _random_assoc(cfg, rng)
    sets = {}
    for m in cfg.users:
        pool = sorted(assoc[m])
        if pool and rng.random() < 0.6:
            size = int(rng.integers(1, len(pool) + 1))
            sets[m] = frozenset(int(j) for j in rng.choice(pool, size=size, replace=False))
    return assoc, DownlinkPlan(tuple(sets), sets)


def random_uplink_case(cfg: NetworkConfig, rng: np.random.Generator) -> tuple[CellAssociation, UplinkPlan]:
    if rng.random() < 0.5:
        out = build_uplink_scheme(cfg)
        if rng.random() < 0.5:
            return out.assoc, out.uplink
        assoc = out.assoc
    else:
        assoc = _random_assoc(cfg, rng)
    pairs, used = [], set()
    for m in cfg.users:
        pool = sorted(assoc[m] & mt_neighbors(m, cfg)) if rng.random() < 0.8 else sorted(assoc[m])
        if pool and rng.random() < 0.6:
            d = int(rng.choice(pool))
            if d not in used:
                used.add(d)
                pairs.append((m, d))
    order = find_uplink_order(cfg, assoc, pairs)
    if order is None or rng.random() < 0.3:
        order = tuple(int(m) for m in rng.permutation([m for m, _ in pairs]))
    return assoc, UplinkPlan(tuple(pairs), order)


@dataclass
class AgreementSummary:
    session: str
    trials: int = 0
    agreed: int = 0
    redraws: int = 0
    unresolved: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.agreed / self.trials if self.trials else 1.0


def cross_validate(
    cfg: NetworkConfig, session: str, trials: int, seed: int, tol: float = DEFAULT_TOL, max_redraws: int = 20
) -> AgreementSummary:
    """Compare numeric and combinatorial verdicts on ``trials`` random plans.

    A trial whose numeric test lands in the singular band is re-drawn with a
    fresh channel seed; it only counts once resolved or after ``max_redraws``.
    """
    if session not in ("downlink", "uplink"):
        raise ValueError(session)
    summary = AgreementSummary(session)
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        if session == "downlink":
            assoc, plan = random_downlink_case(cfg, rng)
        else:
            assoc, plan = random_uplink_case(cfg, rng)
        for attempt in range(max_redraws + 1):
            H = realize_channel(cfg, int(rng.integers(2**63)))
            if session == "downlink":
                verdict = verify_downlink_numeric(cfg, H, assoc, plan, tol)
            else:
                verdict = verify_uplink_numeric(cfg, H, assoc, plan, tol)
            if not verdict.singular:
                break
            summary.redraws += 1
        else:
            summary.unresolved += 1
        summary.trials += 1
        if verdict.agree:
            summary.agreed += 1
        else:
            summary.disagreements.append((t, verdict))
    return summary
