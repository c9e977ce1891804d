"""Torus link inputs and the user-facing series built on the recursion.

A positive torus link T(m, n) with d = gcd(m, n) components carries the
color k on one component and 1 on the rest.  The reduced series is the
state value at a pair of standard strings, times (1-T)^d, divided by a
color correction with numerator prod_{i=1}^{k} (1 + A*Q^(1-i)) and
denominator (1-Q)^k.  All series here are canonical up to an overall
monomial, which callers strip with .normalized() when comparing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .recursion import MemoTable, RecState, evaluate, evaluate_q1
from .ring import (
    A,
    InexactDivision,
    LaurentPoly,
    ONE,
    StructuredRational,
)
from .perm import identity


class InfiniteDimension(ValueError):
    """Total dimension requested for a link with several components."""


class UnsupportedInput(ValueError):
    """The operation is only defined on a smaller input class."""


@dataclass(frozen=True)
class TorusInput:
    m: int
    n: int
    k: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("torus parameters must be positive")
        if self.k < 1:
            raise ValueError("the distinguished color must be at least 1")

    @property
    def d(self) -> int:
        return math.gcd(self.m, self.n)

    def is_knot(self) -> bool:
        return self.d == 1


@dataclass(frozen=True)
class PoincareSeries:
    value: StructuredRational
    source: TorusInput
    reduced: bool

    def normalized(self) -> StructuredRational:
        return self.value.normalized()


@dataclass(frozen=True)
class UnknotFactor:
    """The unreduced-over-reduced ratio for a k-colored unknot, unexpanded."""

    k: int
    num: LaurentPoly
    den: LaurentPoly

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def to_json_dict(self) -> dict:
        return {"num": self.num.to_json_terms(), "den": self.den.to_json_terms()}


def shuffle_strings(t: TorusInput) -> tuple[str, str]:
    """The standard input strings: k ones, then the balancing zeros."""
    d = t.d
    v = "1" * t.k + "0" * ((t.m // d) * (d - 1) + t.k * (t.m // d - 1))
    w = "1" * t.k + "0" * ((t.n // d) * (d - 1) + t.k * (t.n // d - 1))
    return v, w


def _color_factor(i: int) -> LaurentPoly:
    # 1 + A*Q^(1-i)
    return ONE + LaurentPoly.monomial(1, 1, 1 - i, 0)


def color_correction(k: int) -> StructuredRational:
    """prod_{i=1}^{k} (1 + A*Q^(1-i)) over (1-Q)^k."""
    if k < 0:
        raise ValueError("color must be nonnegative")
    num = ONE
    for i in range(1, k + 1):
        num = num * _color_factor(i)
    return StructuredRational(num, k, 0)


def _divide_color_numerator(num: LaurentPoly, t: TorusInput) -> LaurentPoly:
    for i in range(1, t.k + 1):
        try:
            num = num.exact_div(_color_factor(i))
        except InexactDivision as exc:
            raise InexactDivision(
                f"color correction does not divide the series for "
                f"T({t.m},{t.n}) with k={t.k} at factor i={i}; "
                f"this indicates a rule convention bug"
            ) from exc
    return num


def reduced_poincare(t: TorusInput, memo: MemoTable | None = None) -> PoincareSeries:
    """Reduced series of T(m, n) colored (k, 1, ..., 1), up to a monomial."""
    v, w = shuffle_strings(t)
    raw = evaluate(RecState(identity(t.k), v, w), memo)
    lifted = raw.times_one_minus_t_pow(t.d).times_one_minus_q_pow(t.k)
    num = _divide_color_numerator(lifted.num, t)
    # dividing the numerator by (1-Q)-free factors keeps it cancelled
    value = StructuredRational._make(num, lifted.qpow, lifted.tpow)
    return PoincareSeries(value, t, True)


def unknot_factor(k: int) -> UnknotFactor:
    """prod_{i=1}^{k} (1 + A*Q^(1-i)) / (1 - Q^i), kept unexpanded."""
    if k < 0:
        raise ValueError("color must be nonnegative")
    num = ONE
    den = ONE
    for i in range(1, k + 1):
        num = num * _color_factor(i)
        den = den * (ONE - LaurentPoly.monomial(1, 0, i, 0))
    return UnknotFactor(k, num, den)


def unreduced_poincare(
    t: TorusInput, memo: MemoTable | None = None
) -> tuple[PoincareSeries, UnknotFactor]:
    """Reduced series together with the unknot factor, left unmultiplied.

    The factor's denominator prod (1 - Q^i) leaves the structured
    denominator class, so the product is returned as a pair.
    """
    ps = reduced_poincare(t, memo)
    return PoincareSeries(ps.value, t, False), unknot_factor(t.k)


def reduced_q1(t: TorusInput, memo: dict | None = None) -> LaurentPoly:
    """The reduced series at Q = 1, defined for knots only."""
    if not t.is_knot():
        raise UnsupportedInput(
            f"T({t.m},{t.n}) is a link; its series has a pole at Q = 1"
        )
    v, w = shuffle_strings(t)
    poly = evaluate_q1(v, w, memo)
    for _ in range(t.k):
        poly = poly.exact_div(ONE + A)
    return poly


def total_dimension(t: TorusInput, memo: MemoTable | None = None) -> int:
    """Total dimension: the reduced series at A = Q = T = 1."""
    if not t.is_knot():
        raise InfiniteDimension(f"T({t.m},{t.n}) is infinite-dimensional (link)")
    value = reduced_poincare(t, memo).value
    poly = value.as_poly()
    dim = poly.eval_at(1, 1, 1)
    assert dim.denominator == 1
    return int(dim)
