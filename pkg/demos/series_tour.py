"""A short tour of the series the package computes.

Walks through the trefoil, the Hopf link, and small colored variants,
printing reduced series, the unknot factor pairing, the Q = 1 collapse,
and total dimensions where they are finite.
"""

from tlh.recursion import MemoTable
from tlh.torus import (
    TorusInput,
    reduced_poincare,
    reduced_q1,
    total_dimension,
    unreduced_poincare,
)


def show(label, text):
    print(f"{label:<34} {text}")


def main():
    memo = MemoTable()

    print("-- knots ------------------------------------------------")
    for m, n, k in ((2, 3, 1), (2, 3, 2), (2, 5, 1), (3, 4, 1)):
        t = TorusInput(m, n, k)
        ps = reduced_poincare(t, memo)
        show(f"reduced T({m},{n}) color {k}:", ps.normalized())
        show("  at Q=1:", reduced_q1(t).monomial_normalize())
        show("  total dimension:", total_dimension(t, memo))

    print()
    print("-- links ------------------------------------------------")
    for m, n, k in ((2, 2, 1), (2, 2, 2), (2, 4, 1), (3, 3, 1)):
        t = TorusInput(m, n, k)
        ps = reduced_poincare(t, memo)
        show(f"reduced T({m},{n}) color {k}:", ps.normalized())

    print()
    print("-- unreduced = reduced * unknot factor -------------------")
    ps, factor = unreduced_poincare(TorusInput(2, 3, 2), memo)
    show("reduced T(2,3) color 2:", ps.normalized())
    show("unknot factor (k=2):", factor)
    print()
    print(f"memo table: {memo.stats()}")


if __name__ == "__main__":
    main()
