"""Oracle uplink increments per block of L+2 users, and how many budget windows the witnesses fill.

In the block regime the increment eta(K + L + 2) - eta(K) should settle at
Nc + 1. Tight windows are only observed, never asserted.
"""

from cellassoc.closed_form import uplink_regime
from cellassoc.model import NetworkConfig
from cellassoc.oracle import oracle_eta

MAX_K = 10


def tight_windows(cfg, plan):
    n = 0
    for a in range(1, cfg.K + 1):
        window = range(a, a + cfg.L + 1)
        if sum(m in window and b in window for m, b in plan.pairs) == cfg.Nc:
            n += 1
    return n


def main():
    for L in (1, 2, 3):
        for Nc in range(1, 4):
            regime = uplink_regime(L, Nc)
            results = [oracle_eta(NetworkConfig(K, L, Nc), "up") for K in range(1, MAX_K + 1)]
            etas = [r.eta for r in results]
            step = L + 2
            incs = [etas[K + step - 1] - etas[K - 1] for K in range(1, MAX_K - step + 1)]
            tight = [tight_windows(r.cfg, r.uplink) for r in results]
            print(f"L={L} Nc={Nc} [{regime}] eta={etas}")
            note = f" (block value {Nc + 1})" if regime == "block" else ""
            print(f"    increments over {step} users: {incs}{note}")
            print(f"    tight windows per witness: {tight}")


if __name__ == "__main__":
    main()
