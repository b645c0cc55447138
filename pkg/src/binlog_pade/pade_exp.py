"""Mahler's explicit Padé approximants for exponential systems.

The coefficients come from the partial fraction decomposition of
1/prod (x - w_h)^{m_h}; each pole is handled by a local Laurent expansion of
the remaining factors, and the result is checked by recombination.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import poly
from .exact import RationalLike, as_rational, rational_str
from .series import TruncSeries, gen_exp, ord_


class DuplicatePoleError(ValueError):
    pass


class InconclusiveError(RuntimeError):
    """Truncation window too small to decide an order claim."""


@dataclass(frozen=True)
class PoleConfig:
    poles: tuple[Fraction, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.poles) != len(self.multiplicities):
            raise ValueError("poles and multiplicities differ in length")
        if len(set(self.poles)) != len(self.poles):
            raise DuplicatePoleError(f"repeated pole in {[rational_str(p) for p in self.poles]}")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    @classmethod
    def of(cls, poles: Sequence[RationalLike], mults: Sequence[int]) -> "PoleConfig":
        return cls(tuple(as_rational(p) for p in poles), tuple(int(m) for m in mults))

    @property
    def total_degree(self) -> int:
        return sum(self.multiplicities)

    def denominator_poly(self) -> list[Fraction]:
        out = [Fraction(1)]
        for a, m in zip(self.poles, self.multiplicities):
            out = poly.mul(out, poly.linear_power(a, m))
        return out


@dataclass(frozen=True)
class PartialFractionTable:
    """``coeff[h][j-1]`` multiplies 1/(x - poles[h])^j."""

    config: PoleConfig
    coeff: tuple[tuple[Fraction, ...], ...]

    def get(self, h: int, j: int) -> Fraction:
        if 1 <= j <= self.config.multiplicities[h]:
            return self.coeff[h][j - 1]
        return Fraction(0)

    def recombination_residual(self) -> list[Fraction]:
        """sum_h sum_j c_{h,j} (x-w_h)^{m_h-j} prod_{h'!=h} (x-w_h')^{m_h'} - 1."""
        cfg = self.config
        full = cfg.denominator_poly()
        total: list[Fraction] = [Fraction(-1)]
        for h, (a, m) in enumerate(zip(cfg.poles, cfg.multiplicities)):
            others = full
            for _ in range(m):
                others = poly.divide_linear(others, a)
            local: list[Fraction] = []
            for j in range(1, m + 1):
                c = self.coeff[h][j - 1]
                if c:
                    local = poly.add(local, poly.scale(poly.linear_power(a, m - j), c))
            total = poly.add(total, poly.mul(local, others))
        return poly.trim(total)

    def to_json(self) -> dict:
        return {
            rational_str(p): [[j + 1, rational_str(c)] for j, c in enumerate(row)]
            for p, row in zip(self.config.poles, self.coeff)
        }


def _local_expansion(cfg: PoleConfig, h: int) -> list[Fraction]:
    """Taylor coefficients in t of prod_{h'!=h} (a - b + t)^{-m_b} up to t^{m_h - 1}."""
    a = cfg.poles[h]
    L = cfg.multiplicities[h]
    acc = [Fraction(1)] + [Fraction(0)] * (L - 1)
    for h2, (b, mb) in enumerate(zip(cfg.poles, cfg.multiplicities)):
        if h2 == h:
            continue
        d = a - b
        # (d + t)^{-mb} = d^{-mb} sum_l C(-mb, l) (t/d)^l
        fac = [Fraction(math.comb(mb + l - 1, l) * (-1) ** l) / d ** (mb + l) for l in range(L)]
        new = [Fraction(0)] * L
        for i, x in enumerate(acc):
            if x:
                for l in range(L - i):
                    new[i + l] += x * fac[l]
        acc = new
    return acc


def partial_fractions(cfg: PoleConfig, verify: bool = True) -> PartialFractionTable:
    rows = []
    for h, m in enumerate(cfg.multiplicities):
        loc = _local_expansion(cfg, h)
        # coefficient of (x-a)^{-j} is the t^{m-j} Taylor coefficient
        rows.append(tuple(loc[m - j] for j in range(1, m + 1)))
    table = PartialFractionTable(cfg, tuple(rows))
    if verify and table.recombination_residual():
        raise ArithmeticError("partial fraction recombination failed")
    return table


@dataclass(frozen=True)
class ExpApproximant:
    """Polynomials ``polys[h]`` (monomial basis) multiplying e^{omegas[h] z}."""

    omegas: tuple[Fraction, ...]
    weights: tuple[int, ...]
    polys: tuple[tuple[Fraction, ...], ...]
    remainder: TruncSeries

    @property
    def expected_order(self) -> int:
        return sum(r + 1 for r in self.weights) - 1


def exp_remainder(omegas: Sequence[Fraction], polys: Sequence[Sequence[Fraction]], N: int) -> TruncSeries:
    """sum_h polys[h](z) e^{omegas[h] z} truncated at N."""
    acc = TruncSeries.constant(0, N)
    for w, p in zip(omegas, polys):
        if any(p):
            acc = acc + TruncSeries.from_polynomial(p, N) * gen_exp(w, N)
    return acc


def mahler_approximants(
    omegas: Sequence[RationalLike], weights: Sequence[int], N: int | None = None, margin: int = 3
) -> ExpApproximant:
    """Weight-``weights`` Padé approximant of (e^{w_0 z}, ..., e^{w_n z}).

    ``N`` is the remainder truncation order; by default the window holds the
    expected order plus ``margin`` coefficients.
    """
    ws = tuple(as_rational(w) for w in omegas)
    rs = tuple(int(r) for r in weights)
    if any(r < 0 for r in rs):
        raise ValueError("weights must be nonnegative")
    cfg = PoleConfig(ws, tuple(r + 1 for r in rs))
    table = partial_fractions(cfg)
    polys = []
    for h, r in enumerate(rs):
        polys.append(tuple(table.get(h, j + 1) / math.factorial(j) for j in range(r + 1)))
    expected = sum(r + 1 for r in rs) - 1
    if N is None:
        N = expected + margin - 1
    rem = exp_remainder(ws, polys, N)
    return ExpApproximant(ws, rs, tuple(polys), rem)


def check_perfectness(omegas: Sequence[RationalLike], weights: Sequence[int], N: int | None = None) -> bool:
    """True iff the Mahler remainder has order exactly sum(r_h + 1) - 1."""
    approx = mahler_approximants(omegas, weights, N)
    expected = approx.expected_order
    if approx.remainder.trunc_order < expected:
        raise InconclusiveError(
            f"window {approx.remainder.trunc_order} cannot certify order {expected}"
        )
    return ord_(approx.remainder) == expected
