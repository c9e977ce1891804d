"""Exact sparse Laurent polynomial and structured rational arithmetic.

Everything downstream works in three variables A, Q, T with arbitrary
precision integer coefficients.  Denominators that occur are always powers
of (1 - Q) and (1 - T), so rational values are stored as a Laurent
numerator plus the two denominator exponents, kept fully cancelled.  Two
values agree as rational functions iff the stored triples are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator


class ZeroPolynomial(ArithmeticError):
    """An operation that needs a nonzero polynomial got the zero one."""


class InexactDivision(ArithmeticError):
    """A polynomial quotient left a remainder."""


# Exponent triples (eA, eQ, eT) are packed into one int so term dictionaries
# hash and combine quickly: key = (eA*B + eQ)*B + eT.  Packing is linear, so
# adding keys multiplies the underlying monomials.  Components must stay
# below B/2 in absolute value; B = 2^24 leaves huge headroom over the
# exponents that actually occur.
_B = 1 << 24
_H = _B >> 1
_LIMIT = _H - 1

_TSTEP = 1
_QSTEP = _B
_ASTEP = _B * _B


def _pack(ea: int, eq: int, et: int) -> int:
    return ea * _ASTEP + eq * _QSTEP + et


def _unpack(key: int) -> tuple[int, int, int]:
    rest, et = divmod(key + _H, _B)
    et -= _H
    ea, eq = divmod(rest + _H, _B)
    eq -= _H
    return ea, eq, et


class LaurentPoly:
    """Sparse Laurent polynomial in A, Q, T over the integers.

    Instances are treated as immutable; all operations return new
    polynomials.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[tuple[int, int, int], int] | None = None):
        packed: dict[int, int] = {}
        if terms:
            for (ea, eq, et), c in terms.items():
                if c:
                    key = _pack(ea, eq, et)
                    c0 = packed.get(key, 0) + c
                    if c0:
                        packed[key] = c0
                    elif key in packed:
                        del packed[key]
        self._terms = packed

    @classmethod
    def _raw(cls, packed: dict[int, int]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._terms = packed
        return p

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def monomial(cls, coeff: int, ea: int = 0, eq: int = 0, et: int = 0) -> "LaurentPoly":
        if not coeff:
            return cls._raw({})
        if max(abs(ea), abs(eq), abs(et)) > _LIMIT:
            raise OverflowError("exponent out of packed range")
        return cls._raw({_pack(ea, eq, et): coeff})

    # ------------------------------------------------------------------
    # inspection

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def terms(self) -> Iterator[tuple[tuple[int, int, int], int]]:
        for key, c in self._terms.items():
            yield _unpack(key), c

    def sorted_terms(self) -> list[tuple[tuple[int, int, int], int]]:
        """Terms in the canonical order: ascending (eT, eA, eQ)."""
        decorated = [((et, ea, eq), c) for (ea, eq, et), c in self.terms()]
        decorated.sort()
        return [((ea, eq, et), c) for (et, ea, eq), c in decorated]

    def coeff(self, ea: int, eq: int, et: int) -> int:
        return self._terms.get(_pack(ea, eq, et), 0)

    def min_exponents(self) -> tuple[int, int, int]:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no exponent range")
        eas, eqs, ets = zip(*(e for e, _ in self.terms()))
        return min(eas), min(eqs), min(ets)

    # ------------------------------------------------------------------
    # arithmetic

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    __hash__ = None  # mutable dict inside; never used as a key

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        big, small = self._terms, other._terms
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for key, c in small.items():
            c0 = out.get(key, 0) + c
            if c0:
                out[key] = c0
            elif key in out:
                del out[key]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self.__add__(-other if isinstance(other, LaurentPoly) else -LaurentPoly.monomial(other))

    def __rsub__(self, other: int) -> "LaurentPoly":
        return LaurentPoly.monomial(other).__sub__(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) == 1:
            ((k, c),) = a.items()
            return other._shift_key(k, c)
        if len(b) == 1:
            ((k, c),) = b.items()
            return self._shift_key(k, c)
        out: dict[int, int] = {}
        get = out.get
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                c0 = get(k)
                if c0 is None:
                    out[k] = c1 * c2
                else:
                    c0 += c1 * c2
                    if c0:
                        out[k] = c0
                    else:
                        del out[k]
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def scaled(self, c: int) -> "LaurentPoly":
        if not c:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({k: c * v for k, v in self._terms.items()})

    def _shift_key(self, key: int, coeff: int) -> "LaurentPoly":
        if not coeff:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({k + key: coeff * c for k, c in self._terms.items()})

    def shifted(self, ea: int = 0, eq: int = 0, et: int = 0) -> "LaurentPoly":
        """Multiply by the monomial A^ea Q^eq T^et."""
        return self._shift_key(_pack(ea, eq, et), 1)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            # only monomials with unit coefficient are invertible
            if len(self._terms) != 1:
                raise ValueError("negative power of a non-monomial")
            ((key, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative power needs a unit coefficient")
            return LaurentPoly._raw({key * n: c ** (n % 2)})
        result = LaurentPoly.monomial(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # ------------------------------------------------------------------
    # division

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / divisor; raises InexactDivision otherwise."""
        if not isinstance(divisor, LaurentPoly):
            raise TypeError("divisor must be a LaurentPoly")
        if not divisor._terms:
            raise ZeroPolynomial("division by the zero polynomial")
        if not self._terms:
            return LaurentPoly._raw({})
        if len(divisor._terms) == 1:
            ((key, c),) = divisor._terms.items()
            out = {}
            for k, v in self._terms.items():
                q, r = divmod(v, c)
                if r:
                    raise InexactDivision("coefficient not divisible")
                out[k - key] = q
            return LaurentPoly._raw(out)
        if len(divisor._terms) == 2:
            return self._div_binomial(divisor)
        return self._div_general(divisor)

    def _div_binomial(self, divisor: "LaurentPoly") -> "LaurentPoly":
        # divisor = c1*M1 + c2*M2; divide off M1, then run the linear
        # recurrence r_j = (p_j - c2*r_{j-1}) / c1 along the M2/M1 direction
        (k1, c1), (k2, c2) = divisor._terms.items()
        step = k2 - k1
        da, dq, dt = _unpack(step)
        if da:
            comp, dcomp = 0, da
        elif dq:
            comp, dcomp = 1, dq
        else:
            comp, dcomp = 2, dt
        fibers: dict[int, dict[int, int]] = {}
        for key, c in self._terms.items():
            j = _unpack(key)[comp] // dcomp
            fibers.setdefault(key - j * step, {})[j] = c
        out: dict[int, int] = {}
        for base, fiber in fibers.items():
            jmin = min(fiber)
            jmax = max(fiber)
            prev = 0
            for j in range(jmin, jmax):
                r, rem = divmod(fiber.get(j, 0) - c2 * prev, c1)
                if rem:
                    raise InexactDivision("remainder in binomial division")
                if r:
                    out[base + j * step - k1] = r
                prev = r
            if c2 * prev != fiber.get(jmax, 0):
                raise InexactDivision("remainder in binomial division")
        return LaurentPoly._raw(out)

    def _div_general(self, divisor: "LaurentPoly") -> "LaurentPoly":
        # long division by leading term under lex order on (eT, eA, eQ),
        # after shifting both operands to nonnegative exponents
        def order_key(key: int):
            ea, eq, et = _unpack(key)
            return (et, ea, eq)

        dmin = divisor.min_exponents()
        dshift = _pack(*dmin)
        smin = self.min_exponents()
        sshift = _pack(*smin)
        rem = dict(self._shift_key(-sshift, 1)._terms)
        div = divisor._shift_key(-dshift, 1)._terms
        dlead = max(div, key=order_key)
        dla, dlq, dlt = _unpack(dlead)
        dc = div[dlead]
        quot: dict[int, int] = {}
        while rem:
            rlead = max(rem, key=order_key)
            ra, rq, rt = _unpack(rlead)
            if ra < dla or rq < dlq or rt < dlt:
                raise InexactDivision("leading term not divisible")
            q, r = divmod(rem[rlead], dc)
            if r:
                raise InexactDivision("leading coefficient not divisible")
            mkey = rlead - dlead
            quot[mkey] = q
            for k, c in div.items():
                kk = k + mkey
                c0 = rem.get(kk, 0) - q * c
                if c0:
                    rem[kk] = c0
                elif kk in rem:
                    del rem[kk]
        return LaurentPoly._raw(quot)._shift_key(sshift - dshift, 1)

    def _div_one_minus(self, step: int, comp: int):
        """Exact quotient by (1 - X) where X has packed key `step`.

        Returns None when not divisible.  Per fiber the quotient is the
        prefix sum of the dividend, exact iff the fiber sums to zero.
        """
        fibers: dict[int, list[tuple[int, int]]] = {}
        for key, c in self._terms.items():
            j = _unpack(key)[comp]
            fibers.setdefault(key - j * step, []).append((j, c))
        for entries in fibers.values():
            if sum(c for _, c in entries):
                return None
        out: dict[int, int] = {}
        for base, entries in fibers.items():
            entries.sort()
            acc = 0
            for idx in range(len(entries) - 1):
                j, c = entries[idx]
                acc += c
                if acc:
                    stop = entries[idx + 1][0]
                    for jj in range(j, stop):
                        out[base + jj * step] = acc
        return LaurentPoly._raw(out)

    def divided_by_one_minus_q(self):
        """Quotient by (1 - Q), or None when inexact."""
        return self._div_one_minus(_QSTEP, 1)

    def divided_by_one_minus_t(self):
        """Quotient by (1 - T), or None when inexact."""
        return self._div_one_minus(_TSTEP, 2)

    # ------------------------------------------------------------------
    # evaluation and substitution

    def eval_at(self, a, q, t) -> Fraction:
        """Exact value at a rational point.

        A zero coordinate is only legal when no exponent of that variable
        is negative; violations raise ZeroDivisionError.
        """
        a = Fraction(a)
        q = Fraction(q)
        t = Fraction(t)
        total = Fraction(0)
        for (ea, eq, et), c in self.terms():
            total += c * a**ea * q**eq * t**et
        return total

    def subs_q1(self) -> "LaurentPoly":
        """Collapse Q to 1, merging terms."""
        out: dict[int, int] = {}
        for key, c in self._terms.items():
            eq = _unpack(key)[1]
            k = key - eq * _QSTEP
            c0 = out.get(k, 0) + c
            if c0:
                out[k] = c0
            elif k in out:
                del out[k]
        return LaurentPoly._raw(out)

    def monomial_normalize(self) -> "LaurentPoly":
        """Divide by the minimal monomial so all exponents start at zero."""
        if not self._terms:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        return self._shift_key(-_pack(*self.min_exponents()), 1)

    # ------------------------------------------------------------------
    # serialization

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for (ea, eq, et), c in self.sorted_terms():
            factors = []
            for sym, e in (("A", ea), ("Q", eq), ("T", et)):
                if e == 1:
                    factors.append(sym)
                elif e:
                    factors.append(f"{sym}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json_terms(self) -> list[dict]:
        return [
            {"a": ea, "q": eq, "t": et, "c": str(c)}
            for (ea, eq, et), c in self.sorted_terms()
        ]

    @classmethod
    def from_json_terms(cls, items: Iterable[dict]) -> "LaurentPoly":
        out: dict[int, int] = {}
        for item in items:
            c = int(item["c"])
            if c:
                out[_pack(int(item["a"]), int(item["q"]), int(item["t"]))] = c
        return cls._raw(out)


ONE = LaurentPoly.monomial(1)
A = LaurentPoly.monomial(1, ea=1)
Q = LaurentPoly.monomial(1, eq=1)
T = LaurentPoly.monomial(1, et=1)

_ONE_MINUS_Q = ONE - Q
_ONE_MINUS_T = ONE - T
_POW_CACHE: dict[tuple[int, int], LaurentPoly] = {}


def _denom_power(which: int, n: int) -> LaurentPoly:
    # which: 0 for (1-Q), 1 for (1-T)
    try:
        return _POW_CACHE[(which, n)]
    except KeyError:
        base = _ONE_MINUS_Q if which == 0 else _ONE_MINUS_T
        p = _POW_CACHE[(which, n)] = base**n
        return p


class StructuredRational:
    """A Laurent numerator over (1-Q)^qpow (1-T)^tpow, fully cancelled.

    The constructor cancels every exact (1-Q) and (1-T) factor out of the
    numerator, so equal rational functions always compare equal.
    """

    __slots__ = ("num", "qpow", "tpow")

    def __init__(self, num: LaurentPoly, qpow: int = 0, tpow: int = 0):
        if qpow < 0 or tpow < 0:
            raise ValueError("denominator exponents must be nonnegative")
        while qpow:
            reduced = num.divided_by_one_minus_q()
            if reduced is None:
                break
            num = reduced
            qpow -= 1
        while tpow:
            reduced = num.divided_by_one_minus_t()
            if reduced is None:
                break
            num = reduced
            tpow -= 1
        if not num:
            qpow = tpow = 0
        self.num = num
        self.qpow = qpow
        self.tpow = tpow

    @classmethod
    def _make(cls, num: LaurentPoly, qpow: int, tpow: int) -> "StructuredRational":
        """Wrap already-cancelled parts without re-running the reduction."""
        sr = cls.__new__(cls)
        sr.num = num
        sr.qpow = qpow
        sr.tpow = tpow
        return sr

    @classmethod
    def from_int(cls, n: int) -> "StructuredRational":
        return cls._make(LaurentPoly.monomial(n), 0, 0)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructuredRational):
            return NotImplemented
        return (
            self.qpow == other.qpow
            and self.tpow == other.tpow
            and self.num == other.num
        )

    __hash__ = None

    def __add__(self, other: "StructuredRational") -> "StructuredRational":
        if not isinstance(other, StructuredRational):
            return NotImplemented
        qp = max(self.qpow, other.qpow)
        tp = max(self.tpow, other.tpow)
        n1 = self._lifted_num(qp, tp)
        n2 = other._lifted_num(qp, tp)
        return StructuredRational(n1 + n2, qp, tp)

    def __sub__(self, other: "StructuredRational") -> "StructuredRational":
        return self.__add__(other.scaled(-1))

    def _lifted_num(self, qp: int, tp: int) -> LaurentPoly:
        n = self.num
        if qp > self.qpow:
            n = n * _denom_power(0, qp - self.qpow)
        if tp > self.tpow:
            n = n * _denom_power(1, tp - self.tpow)
        return n

    def __mul__(self, other):
        if isinstance(other, StructuredRational):
            # (1-Q) and (1-T) are prime, so a product of cancelled
            # numerators is again cancelled
            if not self.num or not other.num:
                return StructuredRational._make(LaurentPoly.zero(), 0, 0)
            return StructuredRational._make(
                self.num * other.num,
                self.qpow + other.qpow,
                self.tpow + other.tpow,
            )
        if isinstance(other, LaurentPoly):
            return StructuredRational(self.num * other, self.qpow, self.tpow)
        if isinstance(other, int):
            return self.scaled(other)
        return NotImplemented

    __rmul__ = __mul__

    def scaled(self, c: int) -> "StructuredRational":
        if not c:
            return StructuredRational._make(LaurentPoly.zero(), 0, 0)
        return StructuredRational._make(self.num.scaled(c), self.qpow, self.tpow)

    def shifted(self, ea: int = 0, eq: int = 0, et: int = 0) -> "StructuredRational":
        """Multiply by a monomial; cancellation state is unaffected."""
        return StructuredRational._make(self.num.shifted(ea, eq, et), self.qpow, self.tpow)

    def times_one_minus_q_pow(self, n: int) -> "StructuredRational":
        """Multiply by (1-Q)^n, absorbing into the denominator first."""
        if n < 0:
            raise ValueError("power must be nonnegative")
        drop = min(n, self.qpow)
        num = self.num
        if n > drop:
            num = num * _denom_power(0, n - drop)
        return StructuredRational._make(num, self.qpow - drop, self.tpow)

    def times_one_minus_t_pow(self, n: int) -> "StructuredRational":
        if n < 0:
            raise ValueError("power must be nonnegative")
        drop = min(n, self.tpow)
        num = self.num
        if n > drop:
            num = num * _denom_power(1, n - drop)
        return StructuredRational._make(num, self.qpow, self.tpow - drop)

    def as_poly(self) -> LaurentPoly:
        if self.qpow or self.tpow:
            raise ValueError("value has a nontrivial denominator")
        return self.num

    def normalized(self) -> "StructuredRational":
        """Scale by a monomial so numerator exponents all start at zero."""
        return StructuredRational._make(
            self.num.monomial_normalize(), self.qpow, self.tpow
        )

    def equal_up_to_monomial(self, other: "StructuredRational") -> bool:
        if self.qpow != other.qpow or self.tpow != other.tpow:
            return False
        if not self.num or not other.num:
            return self.num == other.num
        return self.num.monomial_normalize() == other.num.monomial_normalize()

    def __str__(self) -> str:
        if not self.qpow and not self.tpow:
            return str(self.num)
        dens = []
        if self.qpow:
            dens.append(f"(1-Q)^{self.qpow}")
        if self.tpow:
            dens.append(f"(1-T)^{self.tpow}")
        return f"({self.num}) / " + " ".join(dens)

    def __repr__(self) -> str:
        return f"StructuredRational({self})"

    def to_json_dict(self) -> dict:
        return {
            "terms": self.num.to_json_terms(),
            "den_q": self.qpow,
            "den_t": self.tpow,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "StructuredRational":
        return cls._make(
            LaurentPoly.from_json_terms(data["terms"]),
            int(data["den_q"]),
            int(data["den_t"]),
        )


def poly_equal_up_to_monomial(p: LaurentPoly, q: LaurentPoly) -> bool:
    if not p or not q:
        return p == q
    return p.monomial_normalize() == q.monomial_normalize()
