"""Ring-model bridge and socle-reduction checks at larger sample sizes.

    python scripts/bridge_and_reduction.py --samples 1000000
"""

import argparse
import time

from pbeauville.beauville import socle_reduction_sampled
from pbeauville.forge import check_ring_bridge, construct_pquotient
from pbeauville.group import ConcreteGroup


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--pair-pairs", type=int, default=10**4)
    args = ap.parse_args()
    for p, m in [(5, 5), (5, 6), (3, 6), (7, 5)]:
        t0 = time.perf_counter()
        r = check_ring_bridge(p, m, samples=args.samples)
        print(f"bridge p={p} m={m}: {r.checked} products, {r.mismatches} mismatches, "
              f"injective={r.injective} ({time.perf_counter() - t0:.1f}s)")
    for p, m in [(5, 4), (5, 5)]:
        G = ConcreteGroup(construct_pquotient((p, m)))
        t0 = time.perf_counter()
        r = socle_reduction_sampled(G, samples=args.pair_pairs, seed=1)
        print(f"socle reduction pquotient({p},{m}): {r.pair_pairs} pair-pairs, "
              f"{r.mismatches} mismatches ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
