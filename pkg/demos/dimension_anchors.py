"""Two large exact dimension computations, with optional cache reuse.

T(4,7) colored (3,1,1,...) and T(13,14) colored (1,...) are the largest
single values exercised routinely; each takes seconds to a couple of
minutes depending on the machine.  Pass --cache PATH to persist the memo
table; a second run then answers from the cache almost instantly.
"""

import argparse
import os
import time

from tlh.recursion import CacheError, MemoTable, load_table, save_table
from tlh.torus import TorusInput, total_dimension

ANCHORS = ((4, 7, 3), (13, 14, 1))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cache", metavar="PATH", help="memo table file")
    parser.add_argument(
        "--small", action="store_true", help="replace the anchors with small inputs"
    )
    args = parser.parse_args()

    memo = MemoTable()
    if args.cache and os.path.exists(args.cache):
        try:
            memo = load_table(args.cache)
            print(f"loaded {memo.stats()['entries']} cached states")
        except CacheError as exc:
            print(f"ignoring cache: {exc}")

    anchors = ((2, 3, 2), (3, 4, 1)) if args.small else ANCHORS
    for m, n, k in anchors:
        t0 = time.time()
        dim = total_dimension(TorusInput(m, n, k), memo)
        print(f"dim T({m},{n}) color {k} = {dim:,} ({time.time() - t0:.1f}s)")

    if args.cache:
        save_table(memo, args.cache)
        print(f"saved {memo.stats()['entries']} states to {args.cache}")


if __name__ == "__main__":
    main()
