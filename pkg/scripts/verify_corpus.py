"""Run the cross-validation harness over the default corpus, without files.

Prints one line per group and a summary; exits nonzero on any failure.

    python scripts/verify_corpus.py [--oracle-cap 78125]
"""

import argparse
import collections
import sys
import time

from pbeauville.corpus import default_corpus
from pbeauville.group import ConcreteGroup
from pbeauville.harness import verify_group


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--oracle-cap", type=int, default=5**7)
    args = ap.parse_args()
    t0 = time.perf_counter()
    tally = collections.Counter()
    failed = 0
    for e in default_corpus():
        G = ConcreteGroup(e.presentation)
        row = verify_group(e.name, e.group_id, G, oracle_cap=args.oracle_cap)
        orc = row.oracle["decision"] if row.oracle else "-"
        fast = row.fast["decision"] if row.fast else "-"
        tally[row.agreement] += 1
        failed += not row.ok
        flag = "FAIL " + "; ".join(row.failures) if row.failures else row.agreement
        print(f"{e.name:32s} {orc:16s} {fast:16s} {row.seconds:6.1f}s  {flag}")
    print(dict(tally), f"failures: {failed}", f"{time.perf_counter() - t0:.0f}s total")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
