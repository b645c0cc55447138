"""Truncated formal power series over Q.

A :class:`TruncSeries` knows coefficients 0..trunc_order exactly; anything
above is unknown, not zero. Every operation returns a result truncated at the
smallest order its inputs justify.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import RationalLike, as_rational, rational_str


@dataclass(frozen=True)
class AtLeast:
    """Order lower bound reported when every stored coefficient vanishes."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


class TruncSeries:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[RationalLike], trunc_order: int | None = None):
        c = [as_rational(x) for x in coeffs]
        if trunc_order is None:
            trunc_order = len(c) - 1
        if trunc_order < 0:
            raise ValueError("trunc_order must be >= 0")
        if len(c) <= trunc_order:
            c.extend([Fraction(0)] * (trunc_order + 1 - len(c)))
        self._c = tuple(c[: trunc_order + 1])

    # -- construction helpers
    @classmethod
    def monomial(cls, k: int, N: int, coeff: RationalLike = 1) -> "TruncSeries":
        c = [Fraction(0)] * (N + 1)
        if k <= N:
            c[k] = as_rational(coeff)
        return cls(c, N)

    @classmethod
    def constant(cls, value: RationalLike, N: int) -> "TruncSeries":
        return cls.monomial(0, N, value)

    @classmethod
    def from_polynomial(cls, coeffs: Sequence[RationalLike], N: int) -> "TruncSeries":
        """A polynomial is known to every order; keep it up to ``N``."""
        c = [as_rational(x) for x in coeffs[: N + 1]]
        return cls(c, N)

    # -- accessors
    @property
    def trunc_order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k > self.trunc_order:
            raise IndexError(f"coefficient {k} beyond truncation {self.trunc_order}")
        return self._c[k]

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        body = ", ".join(rational_str(x) for x in self._c)
        return f"TruncSeries([{body}], trunc_order={self.trunc_order})"

    def truncate(self, N: int) -> "TruncSeries":
        if N > self.trunc_order:
            raise ValueError(f"cannot extend truncation {self.trunc_order} to {N}")
        return TruncSeries(self._c[: N + 1], N)

    def agrees_with(self, other: "TruncSeries") -> bool:
        """Coefficientwise equality up to the common truncation."""
        N = min(self.trunc_order, other.trunc_order)
        return self._c[: N + 1] == other._c[: N + 1]

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(other, self.trunc_order)
        N = min(self.trunc_order, other.trunc_order)
        return TruncSeries([self._c[k] + other._c[k] for k in range(N + 1)], N)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-x for x in self._c], self.trunc_order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncSeries) else -as_rational(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: RationalLike) -> "TruncSeries":
        s = as_rational(s)
        return TruncSeries([s * x for x in self._c], self.trunc_order)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, j: int):
        return pow_(self, j)

    def to_json(self) -> dict:
        return {"coeffs": [rational_str(x) for x in self._c], "trunc_order": self.trunc_order}

    @classmethod
    def from_json(cls, payload: dict) -> "TruncSeries":
        return cls(payload["coeffs"], payload["trunc_order"])


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product, truncated at min of the operand truncations."""
    N = min(a.trunc_order, b.trunc_order)
    ac, bc = a.coeffs, b.coeffs
    # skip leading zeros; binlog bases start at order j
    a0 = next((i for i, x in enumerate(ac[: N + 1]) if x), N + 1)
    b0 = next((i for i, x in enumerate(bc[: N + 1]) if x), N + 1)
    out = [Fraction(0)] * (N + 1)
    for i in range(a0, N + 1):
        ai = ac[i]
        if not ai:
            continue
        for j in range(b0, N + 1 - i):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return TruncSeries(out, N)


def pow_(a: TruncSeries, j: int) -> TruncSeries:
    if j < 0:
        raise ValueError("only nonnegative powers")
    out = TruncSeries.constant(1, a.trunc_order)
    for _ in range(j):
        out = mul(out, a)
    return out


def ord_(f: TruncSeries) -> int | AtLeast:
    """Least index with a nonzero coefficient, or ``AtLeast(N+1)``."""
    for k, x in enumerate(f.coeffs):
        if x != 0:
            return k
    return AtLeast(f.trunc_order + 1)


# -- generators
def gen_exp(omega: RationalLike, N: int) -> TruncSeries:
    """e^{omega z}: coefficients omega^k / k!."""
    w = as_rational(omega)
    c = [Fraction(1)]
    for k in range(1, N + 1):
        c.append(c[-1] * w / k)
    return TruncSeries(c, N)


def gen_log1p(N: int) -> TruncSeries:
    """log(1+z) = z - z^2/2 + z^3/3 - ..."""
    c = [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, N + 1)]
    return TruncSeries(c, N)


def gen_binom(omega: RationalLike, N: int) -> TruncSeries:
    """(1+z)^omega: generalized binomial coefficients C(omega, k)."""
    w = as_rational(omega)
    c = [Fraction(1)]
    for k in range(N):
        c.append(c[-1] * (w - k) / (k + 1))
    return TruncSeries(c, N)


def gen_expm1(N: int) -> TruncSeries:
    c = [Fraction(0)]
    f = Fraction(1)
    for k in range(1, N + 1):
        f /= k
        c.append(f)
    return TruncSeries(c, N)


def binlog_basis(omega: RationalLike, j: int, N: int) -> TruncSeries:
    """(1+z)^omega * log(1+z)^j to order N."""
    return mul(gen_binom(omega, N), pow_(gen_log1p(N), j))


def compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """f(g(z)) for g(0) = 0, by Horner evaluation in the series ring."""
    if g.coeffs[0] != 0:
        raise ValueError("inner series must vanish at 0")
    N = min(f.trunc_order, g.trunc_order)
    acc = TruncSeries.constant(f.coeffs[N], N)
    gN = g.truncate(N)
    for k in range(N - 1, -1, -1):
        acc = mul(acc, gN) + f.coeffs[k]
    return acc


def subst_T(f: TruncSeries) -> TruncSeries:
    """f(z) -> f(log(1+z))."""
    return compose(f, gen_log1p(f.trunc_order))


def subst_T_inv(g: TruncSeries) -> TruncSeries:
    """g(z) -> g(e^z - 1)."""
    return compose(g, gen_expm1(g.trunc_order))


def evaluate(f: TruncSeries, x: RationalLike, upto: int | None = None) -> Fraction:
    """Exact partial sum sum_{k <= upto} f_k x^k."""
    xv = as_rational(x)
    top = f.trunc_order if upto is None else upto
    acc = Fraction(0)
    for k in range(top, -1, -1):
        acc = acc * xv + f.coeffs[k]
    return acc
