"""Recover color-shift exponent laws from engine samples alone.

Computes reduced series of a link family at consecutive colors, clears
denominators, and fits one affine law slope*k + intercept per numerator
term.  A fitted model is then used to predict a color that was never
sampled, and the prediction is compared against a fresh engine run.
"""

from tlh.conjectures import _cleared_numerator, detect_affine_exponents
from tlh.recursion import MemoTable
from tlh.torus import TorusInput, reduced_poincare

FAMILIES = (
    ("T(2,2)", 2, 2, range(1, 6), 8),
    ("T(2,4)", 2, 4, range(1, 6), 7),
    ("T(3,3)", 3, 3, range(1, 5), 6),
)


def main():
    memo = MemoTable()
    for label, m, n, ks, held_out in FAMILIES:
        d = TorusInput(m, n, 1).d
        samples = [
            (k, reduced_poincare(TorusInput(m, n, k), memo).value) for k in ks
        ]
        model = detect_affine_exponents(samples, d)
        if model is None:
            print(f"{label}: no affine law fits the samples")
            continue
        print(f"{label} from colors {list(ks)}, denominator (1-Q)^{model.den_q}:")
        for line in model.describe():
            print(f"  {line}")
        fresh = reduced_poincare(TorusInput(m, n, held_out), memo).value
        hit = model.predict(held_out) == _cleared_numerator(fresh, d)
        print(f"  held-out k={held_out}: {'predicted exactly' if hit else 'MISMATCH'}")
        print()


if __name__ == "__main__":
    main()
