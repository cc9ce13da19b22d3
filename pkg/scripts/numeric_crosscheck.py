"""Monte-Carlo agreement between the numeric and combinatorial feasibility verdicts over a grid."""

import argparse

from cellassoc.model import NetworkConfig
from cellassoc.numeric import cross_validate

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-K", type=int, default=8)
    args = ap.parse_args()
    worst = 1.0
    for L in (1, 2, 3):
        for Nc in (1, 2, 3):
            for K in range(1, args.max_K + 1):
                cfg = NetworkConfig(K, L, Nc)
                for session in ("downlink", "uplink"):
                    s = cross_validate(cfg, session, args.trials, args.seed)
                    worst = min(worst, s.fraction)
                    if s.disagreements or s.redraws:
                        print(f"K={K} L={L} Nc={Nc} {session}: {s.fraction:.3f}, redraws {s.redraws}")
    print(f"worst agreement {worst:.3f}")
