"""Machine checks for the growth and color-shift behavior of the series.

Each checker compares engine output against an independent closed form or
a structural claim, instance by instance, and returns a CheckReport whose
failing instances carry the nonzero difference as a witness.  Exponent
detection fits per-term affine laws e(k) = slope*k + intercept to a run of
consecutive colors and validates the fit on every remaining sample.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .recursion import MemoTable
from .ring import A, LaurentPoly, ONE, Q, T, StructuredRational
from .torus import TorusInput, UnsupportedInput, reduced_poincare, reduced_q1


class InsufficientSamples(ValueError):
    """Exponent detection needs at least three consecutive colors."""


@dataclass(frozen=True)
class CheckInstance:
    params: dict
    passed: bool
    witness: StructuredRational | None

    def to_json_dict(self) -> dict:
        return {
            **self.params,
            "pass": self.passed,
            "witness": self.witness.to_json_dict() if self.witness else None,
        }


@dataclass
class CheckReport:
    claim: str
    param_range: dict
    results: list[CheckInstance] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckInstance]:
        return [r for r in self.results if not r.passed]

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "range": self.param_range,
            "pass": self.all_passed,
            "results": [r.to_json_dict() for r in self.results],
        }


def _poly_instance(params: dict, lhs: LaurentPoly, rhs: LaurentPoly) -> CheckInstance:
    ln = lhs.monomial_normalize() if lhs else lhs
    rn = rhs.monomial_normalize() if rhs else rhs
    if ln == rn:
        return CheckInstance(params, True, None)
    diff = StructuredRational(ln - rn, 0, 0)
    return CheckInstance(params, False, diff)


def _sr_instance(
    params: dict, lhs: StructuredRational, rhs: StructuredRational
) -> CheckInstance:
    if lhs.equal_up_to_monomial(rhs):
        return CheckInstance(params, True, None)
    witness = lhs.normalized() - rhs.normalized() if lhs and rhs else lhs - rhs
    return CheckInstance(params, False, witness)


def _sweep(fn, kmax: int, workers: int) -> list:
    """fn(k) for k = 1..kmax, in color order, optionally on a thread pool.

    Workers share memo tables; entries are pure values, so concurrent
    recomputation is wasted work at worst.  Output order is fixed by k,
    so the worker count never changes the result.
    """
    if workers <= 1:
        return [fn(k) for k in range(1, kmax + 1)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(1, kmax + 1)))


def growth_check(m: int, n: int, kmax: int, memo=None, workers: int = 1) -> CheckReport:
    """For a knot, the series at Q = 1 in color k is the color-1 value
    to the k-th power.  Checked for k = 1..kmax."""
    if math.gcd(m, n) != 1:
        raise UnsupportedInput("growth check needs gcd(m, n) = 1")
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    report = CheckReport(
        claim=f"reduced series of T({m},{n}) at Q=1 is the k-th power of color 1",
        param_range={"m": m, "n": n, "kmax": kmax},
    )
    q1_memo: dict = {}
    base = reduced_q1(TorusInput(m, n, 1), q1_memo)

    def one(k: int) -> CheckInstance:
        lhs = reduced_q1(TorusInput(m, n, k), q1_memo)
        return _poly_instance({"k": k}, lhs, base**k)

    report.results.extend(_sweep(one, kmax, workers))
    return report


# ----------------------------------------------------------------------
# closed forms for specific families, up to an overall monomial


def closed_form_t2odd(n: int, k: int) -> LaurentPoly:
    """T(2, 2n+1) at Q = 1: (T^n + (1+A) * sum_{j<n} T^j)^k."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    inner = LaurentPoly.monomial(1, 0, 0, n)
    for j in range(n):
        inner = inner + (ONE + A).shifted(et=j)
    return inner**k


def closed_form_t2even(n: int, k: int) -> StructuredRational:
    """T(2, 2n) colored (k, 1): a single geometric family over (1-Q)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    total = (ONE - T).shifted(eq=n * k)
    for j in range(1, n):
        total = total + (A + T).shifted(eq=j * k, et=n - j - 1) * (ONE - T)
    total = total + (A + T).shifted(et=n - 1)
    return StructuredRational(total, 1, 0)


def closed_form_t33(k: int) -> StructuredRational:
    """T(3, 3) colored (k, 1, 1) over (1-Q)^2."""
    if k < 1:
        raise ValueError("need k >= 1")
    one_minus_t = ONE - T
    num = (
        (Q * one_minus_t**2).shifted(eq=2 * k)
        + (Q * (T + A) * one_minus_t**2 + (A + T) * (ONE - T**2)).shifted(eq=k)
        + Q * T * (A + T) * one_minus_t
        + (A + T**2) * (A + T)
    )
    return StructuredRational(num, 2, 0)


_FAMILIES = ("t2even", "t33")


def colorshift_check(
    family: str,
    n: int | None,
    kmax: int,
    memo: MemoTable | None = None,
    workers: int = 1,
) -> CheckReport:
    """Engine output against the family closed form for k = 1..kmax."""
    if family not in _FAMILIES:
        raise UnsupportedInput(f"unknown family {family!r}; pick from {_FAMILIES}")
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    if family == "t2even":
        if n is None or n < 1:
            raise UnsupportedInput("t2even needs the torus parameter n >= 1")
        claim = f"reduced series of T(2,{2*n}) colored (k,1) matches its closed form"
        rng = {"n": n, "kmax": kmax}
    else:
        if n is not None:
            raise UnsupportedInput("t33 takes no torus parameter")
        claim = "reduced series of T(3,3) colored (k,1,1) matches its closed form"
        rng = {"kmax": kmax}
    if memo is None:
        memo = MemoTable()
    report = CheckReport(claim=claim, param_range=rng)

    def one(k: int) -> CheckInstance:
        if family == "t2even":
            t = TorusInput(2, 2 * n, k)
            want = closed_form_t2even(n, k)
        else:
            t = TorusInput(3, 3, k)
            want = closed_form_t33(k)
        got = reduced_poincare(t, memo).value
        return _sr_instance({"k": k}, got, want)

    report.results.extend(_sweep(one, kmax, workers))
    return report


# ----------------------------------------------------------------------
# affine exponent detection


@dataclass(frozen=True)
class AffineTerm:
    """One numerator term A^ea T^et with Q-exponent slope*k + intercept."""

    coeff: int
    ea: int
    et: int
    slope: int
    intercept: int


@dataclass(frozen=True)
class AffineExponentModel:
    terms: tuple[AffineTerm, ...]
    den_q: int
    den_t: int

    def predict(self, k: int) -> LaurentPoly:
        """The modeled numerator at color k, monomial-normalized."""
        total = LaurentPoly.zero()
        for t in self.terms:
            total = total + LaurentPoly.monomial(
                t.coeff, t.ea, t.slope * k + t.intercept, t.et
            )
        return total.monomial_normalize()

    def describe(self) -> list[str]:
        out = []
        for t in sorted(self.terms, key=lambda x: (x.et, x.ea, x.slope, x.intercept)):
            out.append(
                f"{t.coeff} * A^{t.ea} T^{t.et} Q^({t.slope}k{t.intercept:+d})"
            )
        return out


def _cleared_numerator(value: StructuredRational, d: int) -> LaurentPoly:
    if value.qpow > max(d - 1, 0):
        raise ValueError("sample has a deeper Q pole than the family allows")
    num = value.num
    if value.qpow < d - 1:
        num = num * (ONE - Q) ** (d - 1 - value.qpow)
    return num.monomial_normalize()


def _bucketize(num: LaurentPoly) -> dict[tuple[int, int, int], list[int]]:
    buckets: dict[tuple[int, int, int], list[int]] = {}
    for (ea, eq, et), c in num.sorted_terms():
        buckets.setdefault((ea, et, c), []).append(eq)
    for qs in buckets.values():
        qs.sort()
    return buckets


def detect_affine_exponents(
    samples: list[tuple[int, StructuredRational]], d: int
) -> AffineExponentModel | None:
    """Fit per-term affine Q-exponent laws across consecutive colors.

    Samples are (k, reduced value) pairs for consecutive k, at least
    three of them.  The fit uses the two largest colors, where distinct
    exponent families no longer collide, and is verified against every
    other sample; any mismatch returns None.
    """
    if len(samples) < 3:
        raise InsufficientSamples("need at least three samples")
    samples = sorted(samples, key=lambda s: s[0])
    ks = [k for k, _ in samples]
    if any(b - a != 1 for a, b in zip(ks, ks[1:])):
        raise InsufficientSamples("colors must be consecutive")
    cleared = [(k, _cleared_numerator(val, d)) for k, val in samples]
    (k1, n1), (k2, n2) = cleared[-2], cleared[-1]
    b1, b2 = _bucketize(n1), _bucketize(n2)
    if set(b1) != set(b2):
        return None
    terms: list[AffineTerm] = []
    for key in b1:
        qs1, qs2 = b1[key], b2[key]
        if len(qs1) != len(qs2):
            return None
        ea, et, c = key
        for e1, e2 in zip(qs1, qs2):
            slope = e2 - e1
            terms.append(AffineTerm(c, ea, et, slope, e1 - slope * k1))
    model = AffineExponentModel(tuple(terms), den_q=max(d - 1, 0), den_t=0)
    for k, num in cleared:
        if model.predict(k) != num:
            return None
    return model
