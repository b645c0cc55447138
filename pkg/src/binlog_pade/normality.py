"""Normality certificates.

Three independent views of the same property:

* the generalized Hankel matrix H_{r,n}(f), whose kernel at r = N-2
  parametrizes Padé approximants and whose invertibility at r = N-1 is
  normality;
* the determinant Delta(z) of the approximant polynomials of the rows
  k = 1..sum(r_i), which must be a nonzero multiple of z^{(n+1) sum r_i};
* Hankel determinants of Laurent series f = sum f_k z^{-k-1}, in particular
  the polylogarithms Li_r(1/z).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg, poly
from .exact import RationalLike, as_rational, rational_str
from .pade_binlog import PadeSystem
from .series import AtLeast, TruncSeries, ord_


class InsufficientTruncation(ValueError):
    pass


class MonomialViolation(ArithmeticError):
    pass


def hankel_build(series: Sequence[TruncSeries], weights: Sequence[int], r: int) -> list[list[Fraction]]:
    """(r+1) x N block matrix; block j holds columns c = 0..n_j with entry f_{j,row-c}."""
    if len(series) != len(weights):
        raise ValueError("one weight per series")
    for f in series:
        if f.trunc_order < r:
            raise InsufficientTruncation(f"need coefficients up to {r}, have {f.trunc_order}")
    rows = []
    for row in range(r + 1):
        line = []
        for f, nj in zip(series, weights):
            for c in range(nj + 1):
                line.append(f[row - c] if row >= c else Fraction(0))
        rows.append(line)
    return rows


def index_size(weights: Sequence[int]) -> int:
    return sum(n + 1 for n in weights)


def normality_test(series: Sequence[TruncSeries], weights: Sequence[int]) -> bool:
    """True iff H_{N-1,n}(f) is invertible."""
    N = index_size(weights)
    H = hankel_build(series, weights, N - 1)
    return linalg.det(H) != 0


def split_vector(v: Sequence[Fraction], weights: Sequence[int]) -> list[list[Fraction]]:
    out, pos = [], 0
    for nj in weights:
        out.append(list(v[pos : pos + nj + 1]))
        pos += nj + 1
    return out


def remainder_of(series: Sequence[TruncSeries], polys: Sequence[Sequence[Fraction]]) -> TruncSeries:
    N = min(f.trunc_order for f in series)
    acc = TruncSeries.constant(0, N)
    for f, p in zip(series, polys):
        acc = acc + TruncSeries.from_polynomial(list(p), N) * f.truncate(N)
    return acc


@dataclass(frozen=True)
class DirectNormality:
    normal: bool
    kernel_dim: int
    approximants: tuple  # tuples of polynomial coefficient lists
    orders: tuple


def direct_normality(series: Sequence[TruncSeries], weights: Sequence[int]) -> DirectNormality:
    """Decide normality from remainders computed by series arithmetic.

    Kernel vectors of H_{N-2,n} are the approximants; with two independent
    ones a combination gains an extra order, so normality needs a
    one-dimensional kernel whose remainder has order exactly N-1.
    """
    N = index_size(weights)
    if min(f.trunc_order for f in series) < N - 1:
        raise InsufficientTruncation(f"need coefficients up to {N - 1}")
    if N >= 2:
        basis = linalg.kernel(hankel_build(series, weights, N - 2))
    else:
        basis = [[Fraction(1)]]
    approximants, orders = [], []
    for v in basis:
        polys = split_vector(v, weights)
        rem = remainder_of(series, polys)
        o = ord_(rem)
        if isinstance(o, int) and o < N - 1:
            raise ArithmeticError("kernel vector is not an approximant")
        approximants.append(tuple(tuple(p) for p in polys))
        orders.append(o)
    normal = len(basis) == 1 and orders[0] == N - 1
    return DirectNormality(normal, len(basis), tuple(approximants), tuple(orders))


def approximant_to_vector(polys: Sequence[Sequence[Fraction]], weights: Sequence[int]) -> list[Fraction]:
    """Inverse of the kernel-to-approximant map; pads each polynomial to n_j + 1."""
    v = []
    for p, nj in zip(polys, weights):
        p = list(p)
        if poly.degree(p) > nj:
            raise ValueError("polynomial exceeds its weight")
        v.extend(p + [Fraction(0)] * (nj + 1 - len(p)))
    return v


# -- determinant certificate


@dataclass(frozen=True)
class DeterminantCertificate:
    gamma: Fraction
    exponent: int
    monomial_ok: bool
    coefficients: tuple  # Delta(z) in the monomial basis

    def to_json(self) -> dict:
        return {
            "gamma": rational_str(self.gamma),
            "exponent": self.exponent,
            "monomial_ok": self.monomial_ok,
        }


def polynomial_det(matrix: Sequence[Sequence[Sequence[Fraction]]], degree_bound: int) -> list[Fraction]:
    """det of a polynomial matrix via exact evaluation at degree_bound+1 points."""
    xs = [Fraction(x) for x in range(degree_bound + 1)]
    ys = []
    for x in xs:
        ys.append(linalg.det([[poly.evaluate(p, x) for p in row] for row in matrix]))
    return poly.interpolate(xs, ys)


def delta_certificate(system: PadeSystem, strict: bool = True) -> DeterminantCertificate:
    cfg = system.config
    expo = (cfg.n + 1) * cfg.total_r
    coeffs = polynomial_det(system.poly_matrix(), expo)
    coeffs = coeffs + [Fraction(0)] * (expo + 1 - len(coeffs))
    gamma = coeffs[expo]
    ok = gamma != 0 and not any(coeffs[:expo])
    if strict and not ok:
        raise MonomialViolation(f"Delta(z) is not a nonzero multiple of z^{expo}")
    return DeterminantCertificate(gamma, expo, ok, tuple(coeffs))


# -- Laurent series at infinity


def laurent_hankel(f: Sequence[RationalLike], m: int, n: int) -> list[list[Fraction]]:
    """m x (n+1) matrix with entries f_{i+j}."""
    fs = [as_rational(x) for x in f]
    if m and len(fs) < m + n:
        raise InsufficientTruncation(f"need {m + n} Laurent coefficients, have {len(fs)}")
    return [[fs[i + j] for j in range(n + 1)] for i in range(m)]


def polylog_laurent_coeffs(r: int, count: int) -> list[Fraction]:
    """Li_r(1/z) = sum_k z^{-k-1}/(k+1)^r."""
    return [Fraction(1, (k + 1) ** r) for k in range(count)]


def polylog_hankel_det(r: int, n: int) -> Fraction:
    """det [1/(i+j-1)^r]_{1<=i,j<=n}."""
    if r < 1 or n < 1:
        raise ValueError("r and n must be positive")
    return linalg.det([[Fraction(1, (i + j - 1) ** r) for j in range(1, n + 1)] for i in range(1, n + 1)])


@dataclass(frozen=True)
class LaurentPade:
    P: tuple  # coefficients, degree <= n
    Q: tuple
    order: int | AtLeast  # ord at infinity of P f - Q
    normal: bool
    kernel_dim: int
    hankel_det: Fraction  # det H_{n+1,n}(f)


def laurent_pade(f: Sequence[RationalLike], n: int) -> LaurentPade:
    """A weight-n Padé approximant (P, Q) of f at infinity.

    Convention: P = sum p_l z^l lies in the kernel of the n x (n+1) matrix
    H_{n,n}(f) (rows s = 0..n-1), which is exactly the vanishing of the
    z^{-1}, ..., z^{-n} coefficients of P f. Normality means the z^{-n-1}
    coefficient is nonzero for every such P.
    """
    fs = [as_rational(x) for x in f]
    if len(fs) < 2 * n + 1:
        raise InsufficientTruncation(f"need {2 * n + 1} Laurent coefficients")
    if n == 0:
        basis = [[Fraction(1)]]
    else:
        basis = linalg.kernel(laurent_hankel(fs, n, n))
    if not basis:
        raise ArithmeticError("empty kernel; impossible for an n x (n+1) system")
    p = basis[0]
    # Q = phi_f((P(z) - P(t))/(z - t)): coefficient of z^a is sum_{l>a} p_l f_{l-1-a}
    Q = [sum((p[l] * fs[l - 1 - a] for l in range(a + 1, n + 1)), Fraction(0)) for a in range(n)]
    # negative part of P f: coefficient of z^{-s-1} is sum_l p_l f_{l+s}
    order: int | AtLeast = AtLeast(len(fs) - n + 1)
    for s in range(len(fs) - n):
        c = sum((p[l] * fs[l + s] for l in range(n + 1)), Fraction(0))
        if c != 0:
            order = s + 1
            break
    if isinstance(order, int) and order < n + 1:
        raise ArithmeticError("kernel vector fails the order condition")
    hdet = linalg.det(laurent_hankel(fs, n + 1, n))
    normal = len(basis) == 1 and order == n + 1
    return LaurentPade(tuple(poly.trim(p)), tuple(poly.trim(Q)), order, normal, len(basis), hdet)
