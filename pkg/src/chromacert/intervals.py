"""Dyadic interval arithmetic with directed (outward) rounding.

Endpoints are dyadic rationals stored as ``(m, e)`` pairs meaning
``m * 2**e``.  Every operation rounds the lower endpoint down and the upper
endpoint up to a fixed mantissa width, so an interval always encloses the
exact real value it tracks.  The only transcendental constant needed by the
package is e, bracketed by partial sums of its series with an explicit tail
bound; rational powers are evaluated algebraically (integer q-th roots via
``gmpy2.iroot`` plus binary exponentiation), never through exp/log.

Comparisons are one-sided: ``surely_le``/``surely_ge`` return True only when
the whole interval is on the claimed side of the threshold, so a verdict can
never be an artifact of rounding.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import gmpy2


class PrecisionExhausted(Exception):
    """An adaptive comparison remained undecided at the precision cap."""


def _shrink_floor(m: int, e: int, prec: int) -> tuple[int, int]:
    extra = abs(m).bit_length() - prec
    if extra > 0:
        m >>= extra  # arithmetic shift floors for either sign
        e += extra
    return m, e


def _shrink_ceil(m: int, e: int, prec: int) -> tuple[int, int]:
    extra = abs(m).bit_length() - prec
    if extra > 0:
        m = -((-m) >> extra)
        e += extra
    return m, e


def _frac_floor(x: Fraction, prec: int) -> tuple[int, int]:
    """Largest dyadic with a prec-bit mantissa that is <= x."""
    p, q = x.numerator, x.denominator
    if p == 0:
        return 0, 0
    # scale so the quotient carries prec+2 significant bits
    shift = prec + 2 - (abs(p).bit_length() - q.bit_length())
    if shift < 0:
        shift = 0
    m = (p << shift) // q
    return _shrink_floor(m, -shift, prec)


def _frac_ceil(x: Fraction, prec: int) -> tuple[int, int]:
    m, e = _frac_floor(-x, prec)
    return -m, e


def _dy_to_frac(m: int, e: int) -> Fraction:
    if e >= 0:
        return Fraction(m << e)
    return Fraction(m, 1 << -e)


def _dy_cmp_frac(m: int, e: int, x: Fraction) -> int:
    """Sign of m*2**e - x, computed exactly."""
    p, q = x.numerator, x.denominator
    if e >= 0:
        lhs, rhs = (m << e) * q, p
    else:
        lhs, rhs = m * q, p << -e
    return (lhs > rhs) - (lhs < rhs)


def _dy_pow_floor(m: int, e: int, n: int, prec: int) -> tuple[int, int]:
    """Lower bound of (m*2**e)**n for m >= 0, rounded down each step."""
    rm, re = 1, 0
    bm, be = m, e
    k = n
    while k:
        if k & 1:
            rm, re = _shrink_floor(rm * bm, re + be, prec)
        k >>= 1
        if k:
            bm, be = _shrink_floor(bm * bm, be + be, prec)
    return rm, re


def _dy_pow_ceil(m: int, e: int, n: int, prec: int) -> tuple[int, int]:
    rm, re = 1, 0
    bm, be = m, e
    k = n
    while k:
        if k & 1:
            rm, re = _shrink_ceil(rm * bm, re + be, prec)
        k >>= 1
        if k:
            bm, be = _shrink_ceil(bm * bm, be + be, prec)
    return rm, re


def _dy_root_floor(m: int, e: int, q: int, prec: int) -> tuple[int, int]:
    """Largest dyadic r with a ~prec-bit mantissa such that r**q <= m*2**e."""
    if m == 0:
        return 0, 0
    if q == 1:
        return _shrink_floor(m, e, prec)
    f = (m.bit_length() + e) // q - prec - 2
    s = e - q * f
    if s < 0:
        f = f + (s // q)  # move f down so the shift is non-negative
        s = e - q * f
    root, _exact = gmpy2.iroot(gmpy2.mpz(m) << s, q)
    return _shrink_floor(int(root), f, prec)


def _dy_root_ceil(m: int, e: int, q: int, prec: int) -> tuple[int, int]:
    if m == 0:
        return 0, 0
    if q == 1:
        return _shrink_ceil(m, e, prec)
    f = (m.bit_length() + e) // q - prec - 2
    s = e - q * f
    if s < 0:
        f = f + (s // q)
        s = e - q * f
    root, exact = gmpy2.iroot(gmpy2.mpz(m) << s, q)
    r = int(root) if exact else int(root) + 1
    return _shrink_ceil(r, f, prec)


def _dy_inv_floor(m: int, e: int, prec: int) -> tuple[int, int]:
    """Lower bound of 1/(m*2**e) for m > 0."""
    k = prec + m.bit_length() + 2
    return _shrink_floor((1 << k) // m, -k - e, prec)


def _dy_inv_ceil(m: int, e: int, prec: int) -> tuple[int, int]:
    k = prec + m.bit_length() + 2
    return _shrink_ceil(-((-(1 << k)) // m), -k - e, prec)


class CertifiedInterval:
    """Interval [lower, upper] with dyadic endpoints enclosing a real value."""

    __slots__ = ("lo_m", "lo_e", "hi_m", "hi_e", "prec")

    def __init__(self, lo_m: int, lo_e: int, hi_m: int, hi_e: int, prec: int):
        self.lo_m = lo_m
        self.lo_e = lo_e
        self.hi_m = hi_m
        self.hi_e = hi_e
        self.prec = prec

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, k: int, prec: int) -> "CertifiedInterval":
        return cls(k, 0, k, 0, prec)

    @classmethod
    def from_fraction(cls, x, prec: int) -> "CertifiedInterval":
        x = Fraction(x)
        lm, le = _frac_floor(x, prec)
        hm, he = _frac_ceil(x, prec)
        return cls(lm, le, hm, he, prec)

    # -- views -------------------------------------------------------------

    @property
    def lower(self) -> Fraction:
        return _dy_to_frac(self.lo_m, self.lo_e)

    @property
    def upper(self) -> Fraction:
        return _dy_to_frac(self.hi_m, self.hi_e)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __repr__(self) -> str:
        return f"CertifiedInterval({float(self.lower)!r}, {float(self.upper)!r}, prec={self.prec})"

    def is_positive(self) -> bool:
        return self.lo_m > 0

    def is_nonnegative(self) -> bool:
        return self.lo_m >= 0

    # -- arithmetic --------------------------------------------------------

    def add(self, other: "CertifiedInterval") -> "CertifiedInterval":
        p = self.prec
        e = min(self.lo_e, other.lo_e)
        lm = (self.lo_m << (self.lo_e - e)) + (other.lo_m << (other.lo_e - e))
        lm, le = _shrink_floor(lm, e, p)
        e = min(self.hi_e, other.hi_e)
        hm = (self.hi_m << (self.hi_e - e)) + (other.hi_m << (other.hi_e - e))
        hm, he = _shrink_ceil(hm, e, p)
        return CertifiedInterval(lm, le, hm, he, p)

    def neg(self) -> "CertifiedInterval":
        return CertifiedInterval(-self.hi_m, self.hi_e, -self.lo_m, self.lo_e, self.prec)

    def sub(self, other: "CertifiedInterval") -> "CertifiedInterval":
        return self.add(other.neg())

    def one_minus(self) -> "CertifiedInterval":
        return CertifiedInterval.from_int(1, self.prec).sub(self)

    def mul(self, other: "CertifiedInterval") -> "CertifiedInterval":
        # general sign handling: try all endpoint products
        p = self.prec
        cands = [
            (self.lo_m * other.lo_m, self.lo_e + other.lo_e),
            (self.lo_m * other.hi_m, self.lo_e + other.hi_e),
            (self.hi_m * other.lo_m, self.hi_e + other.lo_e),
            (self.hi_m * other.hi_m, self.hi_e + other.hi_e),
        ]
        e = min(c[1] for c in cands)
        vals = [m << (ee - e) for m, ee in cands]
        lm, le = _shrink_floor(min(vals), e, p)
        hm, he = _shrink_ceil(max(vals), e, p)
        return CertifiedInterval(lm, le, hm, he, p)

    def mul_int(self, k: int) -> "CertifiedInterval":
        return self.mul(CertifiedInterval.from_int(k, self.prec))

    def inv(self) -> "CertifiedInterval":
        if self.lo_m <= 0:
            raise ZeroDivisionError("interval not strictly positive")
        p = self.prec
        lm, le = _dy_inv_floor(self.hi_m, self.hi_e, p)
        hm, he = _dy_inv_ceil(self.lo_m, self.lo_e, p)
        return CertifiedInterval(lm, le, hm, he, p)

    def pow_int(self, n: int) -> "CertifiedInterval":
        """x**n for a non-negative interval and n >= 0."""
        if n < 0:
            return self.pow_int(-n).inv()
        if n == 0:
            return CertifiedInterval.from_int(1, self.prec)
        if self.lo_m < 0:
            raise ValueError("pow_int requires a non-negative interval")
        p = self.prec
        lm, le = _dy_pow_floor(self.lo_m, self.lo_e, n, p)
        hm, he = _dy_pow_ceil(self.hi_m, self.hi_e, n, p)
        return CertifiedInterval(lm, le, hm, he, p)

    def root(self, q: int) -> "CertifiedInterval":
        """x**(1/q) for a non-negative interval and q >= 1."""
        if self.lo_m < 0:
            raise ValueError("root requires a non-negative interval")
        p = self.prec
        lm, le = _dy_root_floor(self.lo_m, self.lo_e, q, p)
        hm, he = _dy_root_ceil(self.hi_m, self.hi_e, q, p)
        return CertifiedInterval(lm, le, hm, he, p)

    def pow_fraction(self, exponent) -> "CertifiedInterval":
        """x**exponent for a non-negative interval and rational exponent."""
        exponent = Fraction(exponent)
        if exponent < 0:
            return self.inv().pow_fraction(-exponent)
        if exponent == 0:
            return CertifiedInterval.from_int(1, self.prec)
        if self.lo_m == 0 and self.hi_m == 0:
            return CertifiedInterval.from_int(0, self.prec)
        p, q = exponent.numerator, exponent.denominator
        return self.root(q).pow_int(p)

    # -- certified comparisons ---------------------------------------------

    def surely_le(self, x) -> bool:
        return _dy_cmp_frac(self.hi_m, self.hi_e, Fraction(x)) <= 0

    def surely_lt(self, x) -> bool:
        return _dy_cmp_frac(self.hi_m, self.hi_e, Fraction(x)) < 0

    def surely_ge(self, x) -> bool:
        return _dy_cmp_frac(self.lo_m, self.lo_e, Fraction(x)) >= 0

    def surely_gt(self, x) -> bool:
        return _dy_cmp_frac(self.lo_m, self.lo_e, Fraction(x)) > 0

    def contains(self, x) -> bool:
        x = Fraction(x)
        return _dy_cmp_frac(self.lo_m, self.lo_e, x) <= 0 <= _dy_cmp_frac(self.hi_m, self.hi_e, x)

    def to_json_dict(self) -> dict:
        lo, hi = self.lower, self.upper
        return {
            "lower": f"{lo.numerator}/{lo.denominator}",
            "upper": f"{hi.numerator}/{hi.denominator}",
            "precision_bits": self.prec,
        }


@lru_cache(maxsize=None)
def _euler_fraction(prec: int) -> tuple[Fraction, Fraction]:
    """Rational bracket of e: partial sum s_n plus the tail bound 2/(n+1)!."""
    target = Fraction(1, 1 << (prec + 4))
    s = Fraction(2)
    term = Fraction(1)
    n = 1
    while True:
        n += 1
        term /= n
        s += term
        tail = Fraction(2) * term / (n + 1)
        if tail <= target:
            return s, s + tail


def euler_interval(prec: int) -> CertifiedInterval:
    """Certified enclosure of e at the requested precision."""
    lo, hi = _euler_fraction(prec)
    lm, le = _frac_floor(lo, prec)
    hm, he = _frac_ceil(hi, prec)
    return CertifiedInterval(lm, le, hm, he, prec)


def certified_ceiling(make: "callable", precisions=(64, 128, 256, 512)) -> int:
    """Ceiling of a real value given a builder prec -> CertifiedInterval.

    Escalates precision until a single integer ceiling is determined; raises
    PrecisionExhausted if the enclosure still straddles an integer at the cap.
    """
    for prec in precisions:
        iv = make(prec)
        lo_c = -((-iv.lower.numerator) // iv.lower.denominator)
        hi_c = -((-iv.upper.numerator) // iv.upper.denominator)
        if lo_c == hi_c:
            return lo_c
    raise PrecisionExhausted(
        f"ceiling undetermined at {precisions[-1]} bits: [{float(iv.lower)}, {float(iv.upper)}]"
    )
