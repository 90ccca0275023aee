"""Write the default corpus (presentations plus manifest.json) to a directory.

    python scripts/build_corpus.py corpus/
"""

import argparse
import time

from pbeauville.corpus import default_corpus, write_corpus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir")
    args = ap.parse_args()
    t0 = time.perf_counter()
    entries = default_corpus()
    path = write_corpus(entries, args.outdir)
    print(f"{len(entries)} presentations, manifest {path}, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
