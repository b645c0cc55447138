"""Exact scalars over Q and the arithmetic constants built from them.

``fractions.Fraction`` is the rational type throughout the package; it is
always reduced with a positive denominator, so equality is structural.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

RationalLike = Union[int, Fraction, str]


class PoleError(ZeroDivisionError):
    """A Pochhammer factor or shifted reciprocal hit zero."""


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"``, ``"-2"``, ``"1e17"``.

    The ``1eK`` form means the exact integer 10**K (no float is involved).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        sign = 1
        body = s
        if body.startswith(("+", "-")):
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        if "e" in body.lower() and "/" not in body:
            mant, _, expo = body.lower().partition("e")
            if not expo.lstrip("+-").isdigit():
                raise ValueError(f"cannot parse rational {x!r}")
            k = int(expo)
            value = Fraction(mant or "1") * (Fraction(10) ** k)
            return sign * value
        return sign * Fraction(body)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rational_str(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def den(values: Iterable[RationalLike]) -> int:
    """Least n >= 1 with n*s integral for every s in ``values``."""
    vals = [as_rational(v) for v in values]
    if not vals:
        raise ValueError("den() of an empty set")
    return reduce(math.lcm, (v.denominator for v in vals), 1)


def pochhammer(omega: RationalLike, k: int) -> Fraction:
    """Rising factorial omega (omega+1) ... (omega+k-1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    w = as_rational(omega)
    out = Fraction(1)
    for t in range(k):
        out *= w + t
    return out


def lcm_upto(n: int) -> int:
    """lcm(1, ..., n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return reduce(math.lcm, range(1, n + 1), 1)


def factorial_pochhammer_den(omega: RationalLike, n: int) -> int:
    """den{ k!/(omega)_k : 0 <= k <= n }."""
    w = as_rational(omega)
    if n < 1:
        raise ValueError("n must be >= 1")
    if w.denominator == 1 and w <= 0 and -w < n:
        raise PoleError(f"(omega)_k vanishes for omega={w}")
    vals = []
    poch = Fraction(1)
    fact = 1
    for k in range(n + 1):
        if k:
            poch *= w + k - 1
            fact *= k
        vals.append(fact / poch)
    return den(vals)


def reciprocal_shift_den(omega: RationalLike, n: int) -> int:
    """den{ 1/(omega+k) : 0 <= k <= n-1 }; equals lcm(1..n) at omega = 1."""
    w = as_rational(omega)
    if n < 1:
        raise ValueError("n must be >= 1")
    shifts = [w + k for k in range(n)]
    if any(s == 0 for s in shifts):
        raise PoleError(f"omega + k vanishes for omega={w}")
    return den(1 / s for s in shifts)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def padic_valuation(x: RationalLike, p: int) -> int | None:
    """v_p(x); ``None`` stands for +infinity at x = 0."""
    q = as_rational(x)
    if q == 0:
        return None
    v = 0
    num, dnm = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while dnm % p == 0:
        dnm //= p
        v -= 1
    return v


@dataclass(frozen=True)
class Place:
    """A place of Q: ``prime=None`` is the archimedean one.

    ``local_degree_ratio`` is [K_v : Q_v]/[K : Q]; it is 1 over Q and kept only
    so that formulas carry the factor explicitly.
    """

    prime: int | None = None
    local_degree_ratio: Fraction = Fraction(1)

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @classmethod
    def infinite(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Place":
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo", "archimedean"):
            return cls.infinite()
        return cls.finite(int(t))

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None

    @property
    def epsilon(self) -> int:
        return 1 if self.prime is None else 0

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)


def abs_at(x: RationalLike, place: Place) -> Fraction:
    """|x|_v as an exact rational (|p|_p = 1/p)."""
    q = as_rational(x)
    if place.is_archimedean:
        return abs(q)
    v = padic_valuation(q, place.prime)
    if v is None:
        return Fraction(0)
    return Fraction(place.prime) ** (-v)


@dataclass(frozen=True)
class HeightProfile:
    """Heights of a nonzero rational, stored as exact log-arguments.

    ``h_at`` maps each place with nonzero height to the integer-ratio
    max(1, |alpha|_v); only the archimedean place and primes dividing the
    denominator can appear. ``total_arg`` is max(|num|, den), whose log is
    the absolute height.
    """

    alpha: Fraction
    total_arg: int
    h_at_arg: dict = field(default_factory=dict)

    def arg_at(self, place: Place) -> Fraction:
        return self.h_at_arg.get(place, Fraction(1))

    def h_at(self, place: Place, ctx=None):
        import mpmath

        ctx = ctx or mpmath.mp
        a = self.arg_at(place)
        return ctx.log(ctx.mpf(a.numerator)) - ctx.log(ctx.mpf(a.denominator))

    def h_total(self, ctx=None):
        import mpmath

        ctx = ctx or mpmath.mp
        return ctx.log(ctx.mpf(self.total_arg))

    def product_formula_holds(self) -> bool:
        prod = Fraction(1)
        for a in self.h_at_arg.values():
            prod *= a
        return prod == self.total_arg


def heights(alpha: RationalLike) -> HeightProfile:
    a = as_rational(alpha)
    if a == 0:
        raise ValueError("heights of 0 are undefined")
    args: dict = {}
    inf_arg = max(Fraction(1), abs(a))
    if inf_arg != 1:
        args[Place.infinite()] = inf_arg
    for p in prime_factors(a.denominator):
        args[Place.finite(p)] = abs_at(a, Place.finite(p))
    return HeightProfile(a, max(abs(a.numerator), a.denominator), args)
