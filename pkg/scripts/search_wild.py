"""Look for wild Beauville groups of maximal class among search emissions.

For each emission the classifier verdict is compared with the oracle, and
wild verdicts are printed with their failing lift.

    python scripts/search_wild.py --p 5 --n 7 --target mu=2 --limit 5
"""

import argparse
import time

from pbeauville.beauville import SOCLE_CAP, classify_fast, oracle_with_type
from pbeauville.forge.search import MetabelianSearchSpec, SearchStats, metabelian_search
from pbeauville.group import ConcreteGroup
from pbeauville.pc import format_presentation


def fmt(G, S):
    return " ".join(str(G.vector(x)) for x in S)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--target", default="mu=2")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-children", type=int, default=25)
    ap.add_argument("--limit", type=int, default=5)
    args = ap.parse_args()

    spec = MetabelianSearchSpec(args.p, args.n, seed=args.seed, max_children=args.max_children,
                                max_emissions=args.limit, target=args.target)
    stats = SearchStats()
    found = 0
    for k, em in enumerate(metabelian_search(spec, stats)):
        G = ConcreteGroup(em.presentation)
        fast = classify_fast(G).decision
        t0 = time.perf_counter()
        rep = oracle_with_type(G) if G.order <= SOCLE_CAP else None
        orc = rep.decision if rep else "-"
        dt = time.perf_counter() - t0
        print(f"[{k}] mu={em.mu} exponent={em.exponent} classifier={fast} oracle={orc} ({dt:.1f}s)")
        if orc == "beauville-wild":
            found += 1
            print(format_presentation(em.presentation), end="")
            print(f"    failing lift S1: {fmt(G, rep.lift_witness.S1)}")
            print(f"    failing lift S2: {fmt(G, rep.lift_witness.S2)}")
    print(f"{found} wild groups; search stats {stats}")


if __name__ == "__main__":
    main()
