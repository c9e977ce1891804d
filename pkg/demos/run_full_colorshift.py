"""Full-range color-shift verification, one color at a time.

Covers T(2,2) for k <= 100, T(2,4) and T(2,6) for k <= 90, T(3,3) for
k <= 90, and T(2,2n) for n <= 15 with k <= 20.  High colors produce large
intermediate numerators, so each color gets a fresh memo table; sharing
one table across a whole sweep holds every intermediate value live and
exhausts memory long before the ranges are done.

Expect roughly twenty minutes of CPU for the whole run.  Progress prints
per family; pass --desk for the small gate variant used in the tests.
"""

import argparse
import sys
import time

from tlh.conjectures import closed_form_t2even, closed_form_t33
from tlh.recursion import MemoTable
from tlh.torus import TorusInput, reduced_poincare


def sweep(label, instances):
    """instances: iterable of (params, torus input, closed form)."""
    t0 = time.time()
    count = 0
    for params, t, want in instances:
        got = reduced_poincare(t, MemoTable()).value
        if not got.equal_up_to_monomial(want):
            print(f"{label}: FAIL at {params}")
            return False
        count += 1
    print(f"{label}: {count} colors ok ({time.time() - t0:.1f}s)", flush=True)
    return True


def family_t2even(n, kmax):
    for k in range(1, kmax + 1):
        yield {"n": n, "k": k}, TorusInput(2, 2 * n, k), closed_form_t2even(n, k)


def family_t33(kmax):
    for k in range(1, kmax + 1):
        yield {"k": k}, TorusInput(3, 3, k), closed_form_t33(k)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--desk",
        action="store_true",
        help="small gate only: T(2,2n) for n <= 8, k <= 20, and T(3,3) for k <= 20",
    )
    args = parser.parse_args()

    t0 = time.time()
    if args.desk:
        jobs = [(f"T(2,{2*n}) k<=20", family_t2even(n, 20)) for n in range(1, 9)]
        jobs.append(("T(3,3) k<=20", family_t33(20)))
    else:
        jobs = [
            ("T(2,2) k<=100", family_t2even(1, 100)),
            ("T(2,4) k<=90", family_t2even(2, 90)),
            ("T(2,6) k<=90", family_t2even(3, 90)),
            ("T(3,3) k<=90", family_t33(90)),
        ]
        jobs.extend(
            (f"T(2,{2*n}) k<=20", family_t2even(n, 20)) for n in range(4, 16)
        )
    ok = all(sweep(label, instances) for label, instances in jobs)
    print(f"total: {time.time() - t0:.1f}s, {'all ok' if ok else 'FAILURES'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
