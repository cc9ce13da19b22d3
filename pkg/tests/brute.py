"""Slow reference enumerations, independent of the branch-and-bound engines.

Plans are enumerated outright and judged only by the zf primitives
(`transmit_violation`, `uplink_violation`); associations are enumerated as
raw subsets of [1, K].
"""

from itertools import combinations, permutations, product

from cellassoc.model import CellAssociation, mt_neighbors
from cellassoc.zf import UplinkPlan, transmit_violation, uplink_violation


def subsets(pool, max_size):
    pool = sorted(pool)
    return [frozenset(c) for r in range(0, max_size + 1) for c in combinations(pool, r)]


def best_downlink(cfg, assoc):
    users = list(cfg.users)
    for r in range(len(users), -1, -1):
        for active in combinations(users, r):
            if all(
                any(transmit_violation(cfg, m, T, active) is None for T in subsets(assoc[m], len(assoc[m])) if T)
                for m in active
            ):
                return r
    return 0


def uplink_plan_ok(cfg, assoc, pairs):
    users = [m for m, _ in pairs]
    return any(
        uplink_violation(cfg, assoc, UplinkPlan(tuple(pairs), order)) is None
        for order in permutations(users)
    )


def best_uplink(cfg, assoc):
    best = 0
    options = [[None] + sorted(assoc[m] & mt_neighbors(m, cfg)) for m in cfg.users]
    for choice in product(*options):
        pairs = [(m, d) for m, d in zip(cfg.users, choice) if d is not None]
        ds = [d for _, d in pairs]
        if len(pairs) <= best or len(set(ds)) != len(ds):
            continue
        if uplink_plan_ok(cfg, assoc, pairs):
            best = len(pairs)
    return best


def all_associations(cfg):
    per_user = subsets(range(1, cfg.K + 1), cfg.Nc)
    for sets in product(per_user, repeat=cfg.K):
        yield CellAssociation(sets)


def brute_oracle(cfg):
    """(best downlink, best uplink, best joint sum) over every association."""
    down = up = joint = 0
    for assoc in all_associations(cfg):
        d, u = best_downlink(cfg, assoc), best_uplink(cfg, assoc)
        down, up, joint = max(down, d), max(up, u), max(joint, d + u)
    return down, up, joint


def minimal_plan_uplink(cfg):
    """Best uplink over every decoder assignment, charging only forced associations."""
    from cellassoc.model import bs_neighbors
    from cellassoc.zf import find_uplink_order

    best = 0
    options = [[None] + sorted(mt_neighbors(m, cfg)) for m in cfg.users]
    for choice in product(*options):
        pairs = [(m, d) for m, d in zip(cfg.users, choice) if d is not None]
        ds = [d for _, d in pairs]
        if len(pairs) <= best or len(set(ds)) != len(ds):
            continue
        sets = [set() for _ in cfg.users]
        for m, d in pairs:
            for o in bs_neighbors(d, cfg):
                if o == m or o in dict(pairs):
                    sets[o - 1].add(d)
        if any(len(s) > cfg.Nc for s in sets):
            continue
        if find_uplink_order(cfg, CellAssociation.from_lists(sets), pairs) is not None:
            best = len(pairs)
    return best


def minimal_plan_downlink(cfg):
    """Best downlink with C_m = T_m and T_m any subset of [1, K] within budget."""
    pool = [T for T in subsets(range(1, cfg.K + 1), cfg.Nc) if T]
    users = list(cfg.users)
    for r in range(len(users), -1, -1):
        for active in combinations(users, r):
            if all(any(transmit_violation(cfg, m, T, active) is None for T in pool) for m in active):
                return r
    return 0


def _forced_uplink_sets(cfg, pairs):
    from cellassoc.model import bs_neighbors

    decoder = dict(pairs)
    sets = [set() for _ in cfg.users]
    for m, d in pairs:
        for o in bs_neighbors(d, cfg):
            if o == m or o in decoder:
                sets[o - 1].add(d)
    return sets


def minimal_plan_joint_sum(cfg):
    """Best eta_DL + eta_UL over uplink decoder assignments and downlink plans sharing the budget."""
    from cellassoc.zf import find_uplink_order

    pool = [T for T in subsets(range(1, cfg.K + 1), cfg.Nc) if T]
    users = list(cfg.users)
    best = 0
    options = [[None] + sorted(mt_neighbors(m, cfg)) for m in cfg.users]
    for choice in product(*options):
        pairs = [(m, d) for m, d in zip(cfg.users, choice) if d is not None]
        ds = [d for _, d in pairs]
        if len(set(ds)) != len(ds) or len(pairs) + cfg.K <= best:
            continue
        U = _forced_uplink_sets(cfg, pairs)
        if any(len(s) > cfg.Nc for s in U):
            continue
        if find_uplink_order(cfg, CellAssociation.from_lists(U), pairs) is None:
            continue
        for r in range(len(users), -1, -1):
            if len(pairs) + r <= best:
                break
            if any(
                all(any(len(T | U[m - 1]) <= cfg.Nc and transmit_violation(cfg, m, T, active) is None for T in pool)
                    for m in active)
                for active in combinations(users, r)
            ):
                best = len(pairs) + r
                break
    return best
