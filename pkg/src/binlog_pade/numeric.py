"""Certified evaluation of linear forms and remainders.

Archimedean values are exact rational partial sums plus rational tail
bounds (balls with exact center and radius), so every comparison made here is
exact; mpmath is used only to report logs. p-adic values are partial sums with
a valuation floor for the tail given by the strong triangle inequality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from . import poly
from .exact import Place, RationalLike, as_rational, heights, padic_valuation, rational_str
from .pade_binlog import (
    SystemConfig,
    binlog_remainder,
    build_row,
    build_system,
    denominator_block,
    scaling_Dn,
)
from .series import TruncSeries, binlog_basis, evaluate


class ConvergenceError(ValueError):
    """The point lies outside the region where the series converge."""


class DivergenceError(ConvergenceError):
    pass


class PrecisionError(RuntimeError):
    """The available terms cannot certify the requested precision."""


@dataclass(frozen=True)
class Ball:
    """The real interval [center - radius, center + radius], both exact."""

    center: Fraction
    radius: Fraction

    def contains(self, x: Fraction) -> bool:
        return abs(x - self.center) <= self.radius

    def overlaps(self, other: "Ball") -> bool:
        return abs(self.center - other.center) <= self.radius + other.radius

    def as_mpf(self, bits: int = 128):
        """(center, radius) as mpf; the radius absorbs the rounding of the center."""
        with mpmath.mp.workprec(bits):
            c = mpmath.mpf(self.center.numerator) / self.center.denominator
            rad = mpmath.mpf(self.radius.numerator) / self.radius.denominator
            rad += abs(c) * mpmath.mpf(2) ** (1 - bits)
        return c, rad

    def log_abs(self, bits: int = 128):
        """log|x| for the center; requires the ball to exclude 0."""
        if abs(self.center) <= self.radius:
            raise PrecisionError("ball contains zero")
        with mpmath.mp.workprec(bits):
            return mpmath.log(abs(mpmath.mpf(self.center.numerator))) - mpmath.log(self.center.denominator)


# -- majorants for (1+z)^w log^j(1+z)


def _majorant_tail(omega: Fraction, j: int, t: Fraction, L: int) -> Fraction | None:
    """Upper bound on sum_{l > L} |b_{j,l}(w)| t^l, or None if the ratio test fails.

    Coefficientwise (1+z)^w << (1-z)^{-c}, c = ceil|w|, and log(1+z) << z/(1-z),
    so |b_{j,l}| <= C(l+c-1, c+j-1) for l >= j; consecutive ratios of the
    majorant decrease in l, which gives a geometric tail.
    """
    c = math.ceil(abs(omega))
    a = c + j
    if a == 0:
        return Fraction(0)
    start = max(L + 1, j)
    first = math.comb(start + c - 1, a - 1) * t**start
    rho = t * Fraction(start + c, start - j + 1)
    if rho >= 1:
        return None
    return first / (1 - rho)


def basis_ball(omega: RationalLike, j: int, x: RationalLike, L: int) -> Ball | None:
    w, xv = as_rational(omega), as_rational(x)
    tail = _majorant_tail(w, j, abs(xv), L)
    if tail is None:
        return None
    return Ball(evaluate(binlog_basis(w, j, L), xv), tail)


@dataclass(frozen=True)
class LinearForm:
    """sum_{i,j} beta[(i, j)] (1+x)^{w_i} log^j(1+x), x = 1/alpha."""

    omegas: tuple
    rs: tuple
    beta: dict  # (i, j) -> Fraction, 0-based i, 0 <= j < rs[i]

    def __post_init__(self):
        if len(self.omegas) != len(self.rs):
            raise ValueError("omegas and rs differ in length")
        for (i, j) in self.beta:
            if not (0 <= i < len(self.rs) and 0 <= j < self.rs[i]):
                raise ValueError(f"coefficient index {(i, j)} outside the configuration")
        if not any(self.beta.values()):
            raise ValueError("beta must not vanish identically")

    @classmethod
    def of(cls, omegas, rs, beta: dict) -> "LinearForm":
        return cls(
            tuple(as_rational(w) for w in omegas),
            tuple(int(r) for r in rs),
            {k: as_rational(v) for k, v in beta.items()},
        )


def form_ball(form: LinearForm, x: Fraction, L: int) -> Ball | None:
    center, radius = Fraction(0), Fraction(0)
    for (i, j), b in sorted(form.beta.items()):
        if not b:
            continue
        ball = basis_ball(form.omegas[i], j, x, L)
        if ball is None:
            return None
        center += b * ball.center
        radius += abs(b) * ball.radius
    return Ball(center, radius)


def _check_alpha(alpha: RationalLike) -> Fraction:
    a = as_rational(alpha)
    if abs(a) <= 1:
        raise ConvergenceError(f"|alpha| = {rational_str(abs(a))} must exceed 1")
    return a


def eval_form_real(
    form: LinearForm,
    alpha: RationalLike,
    bits: int = 128,
    relative: bool = False,
    max_terms: int = 1 << 14,
) -> Ball:
    """Enclose the form at x = 1/alpha with radius <= 2^-bits (times |value| if relative).

    The truncation length doubles until the target radius is met.
    """
    x = 1 / _check_alpha(alpha)
    L = max(8, math.ceil(bits / max(math.log2(abs(1 / x)), 1e-9)) + 8)
    goal = Fraction(1, 2**bits)
    while L <= max_terms:
        ball = form_ball(form, x, L)
        if ball is not None:
            target = goal * abs(ball.center) if relative else goal
            if ball.radius <= target and (not relative or ball.center != 0):
                return ball
        L *= 2
    raise PrecisionError(f"target radius not met with {max_terms} terms")


def series_ball(
    omegas: Sequence[Fraction], polys: dict, series: TruncSeries, x: Fraction
) -> Ball | None:
    """Enclose a remainder from its truncated series; the tail comes from
    the l1 norms of the polynomial coefficients times the basis majorants."""
    t = abs(x)
    N = series.trunc_order
    radius = Fraction(0)
    for (i, j), p in sorted(polys.items()):
        for l, c in enumerate(p):
            if c:
                tail = _majorant_tail(omegas[i], j, t, N - l)
                if tail is None:
                    return None
                radius += abs(c) * t**l * tail
    return Ball(evaluate(series, x), radius)


def remainder_form(config: SystemConfig, alpha: RationalLike) -> LinearForm:
    """The linear form whose value is R_k(1/alpha): beta = P_{k,i,j}(1/alpha)."""
    x = 1 / _check_alpha(alpha)
    row = build_row(config)
    beta = {c: poly.evaluate(p, x) for c, p in row.polys.items()}
    return LinearForm(config.omegas, config.rs, beta)


def two_path_remainder(config: SystemConfig, alpha: RationalLike, bits: int = 64) -> tuple[Ball, Ball]:
    """R_k(1/alpha) enclosed twice: as a linear form, and from the remainder series."""
    a = _check_alpha(alpha)
    x = 1 / a
    row = build_row(config)
    beta = {c: poly.evaluate(p, x) for c, p in row.polys.items()}
    form = LinearForm(config.omegas, config.rs, beta)
    via_form = eval_form_real(form, a, bits, relative=True)
    N = row.remainder.trunc_order
    while True:
        series = binlog_remainder(config.omegas, row.polys, N)
        ball = series_ball(config.omegas, row.polys, series, x)
        if ball is not None and ball.center and ball.radius <= abs(ball.center) / 2**bits:
            return via_form, ball
        N *= 2


# -- p-adic evaluation


@dataclass(frozen=True)
class TailFloor:
    """v_p(c_l) >= -slope*l - log_mult*log_p(l) - offset for every l beyond the truncation.

    ``exact`` marks a polynomial: there is no tail at all.
    """

    slope: Fraction = Fraction(0)
    log_mult: int = 0
    offset: int = 0
    exact: bool = False

    @classmethod
    def polynomial(cls) -> "TailFloor":
        return cls(exact=True)

    @classmethod
    def log_power(cls, j: int) -> "TailFloor":
        # |a_{j,l}|_p <= l^j
        return cls(Fraction(0), j)

    @classmethod
    def binlog(cls, omega: RationalLike, j: int, p: int) -> "TailFloor":
        # mu_l(w) C(w, l) is integral, and v_p(mu_l) <= l p/(p-1) when p | den(w)
        w = as_rational(omega)
        slope = Fraction(p, p - 1) if w.denominator % p == 0 else Fraction(0)
        return cls(slope, j)

    def term_floor(self, l: int, vx: int, p: int) -> int:
        """An integer lower bound for v_p(c_l x^l)."""
        f = l * (vx - self.slope) - self.offset
        if self.log_mult:
            f -= self.log_mult * math.log(l, p) + 1e-9
        return math.ceil(f - 1e-12)


@dataclass(frozen=True)
class PadicValue:
    """p^valuation * unit with unit known modulo p^precision."""

    prime: int
    valuation: int
    unit: int  # residue mod p^precision, coprime to p
    precision: int

    def to_json(self) -> dict:
        return {"prime": self.prime, "valuation": self.valuation, "unit": self.unit, "precision": self.precision}


def _tail_floor_min(tail: TailFloor, start: int, vx: int, p: int) -> int:
    """min_{l >= start} of the term floors; the floor increases past a known point."""
    gap = vx - tail.slope
    turn = start
    if tail.log_mult:
        turn = max(start, math.ceil(tail.log_mult / (float(gap) * math.log(p))) + 1)
    return min(tail.term_floor(l, vx, p) for l in range(start, turn + 1))


def eval_series_padic(
    series: TruncSeries, x: RationalLike, p: int, M: int, tail: TailFloor | None = None
) -> PadicValue:
    """Value of sum_l c_l x^l in Q_p with M certified unit digits."""
    xv = as_rational(x)
    tail = tail or TailFloor.polynomial()
    if not tail.exact:
        if xv == 0:
            vx = None
        else:
            vx = padic_valuation(xv, p)
        if vx is not None and vx <= tail.slope:
            raise DivergenceError(f"v_{p}(x) = {vx} does not exceed the growth slope {tail.slope}")
    S = evaluate(series, xv)
    if tail.exact or xv == 0:
        floor = None
    else:
        floor = _tail_floor_min(tail, series.trunc_order + 1, vx, p)
    if S == 0:
        raise PrecisionError("partial sum vanishes; valuation not certified")
    v = padic_valuation(S, p)
    if floor is not None and floor - v < M:
        raise PrecisionError(f"tail floor {floor} leaves {floor - v} < {M} certified digits")
    unit_q = S / Fraction(p) ** v
    mod = p**M
    unit = unit_q.numerator * pow(unit_q.denominator, -1, mod) % mod
    return PadicValue(p, v, unit, M)


def padic_binlog(omega: RationalLike, j: int, x: RationalLike, p: int, M: int, max_terms: int = 4096) -> PadicValue:
    """(1+x)^w log^j(1+x) in Q_p, growing the truncation until M digits are certified."""
    tail = TailFloor.binlog(omega, j, p)
    N = 8
    while N <= max_terms:
        try:
            return eval_series_padic(binlog_basis(omega, j, N), x, p, M, tail)
        except PrecisionError:
            N *= 2
    raise PrecisionError(f"no certificate within {max_terms} terms")


def padic_log1p(x: RationalLike, p: int, M: int) -> PadicValue:
    return padic_binlog(0, 1, x, p, M)


# -- finite-n diagnostics


def coeff_growth_diag(
    omegas: Sequence[RationalLike], rs: Sequence[int], ns: Sequence[int], small: float = 0.1
) -> dict:
    """g(n) = log max|p_{k,h,i,j}| - (sum r) log(2^n/(n+1)!) over all rows k.

    The trend check passes when g(n)/n is non-increasing or stays below
    ``small`` in absolute value; one sample point makes no trend claim.
    """
    rows = []
    for n in ns:
        cfg = SystemConfig.of(omegas, rs, n)
        system = build_system(cfg)
        big = max(abs(c) for row in system.rows for c in row.pf_coeffs.values())
        with mpmath.mp.workprec(128):
            g = (
                mpmath.log(big.numerator)
                - mpmath.log(big.denominator)
                - cfg.total_r * (n * mpmath.log(2) - mpmath.log(mpmath.factorial(n + 1)))
            )
            rows.append({"n": n, "g": g, "g_over_n": g / n if n else None})
    ratios = [r["g_over_n"] for r in rows if r["g_over_n"] is not None]
    decreasing = all(b <= a for a, b in zip(ratios, ratios[1:])) if len(ratios) >= 2 else None
    bounded = all(abs(q) <= small for q in ratios) if len(ratios) >= 2 else None
    trend_ok = None if decreasing is None else bool(decreasing or bounded)
    return {
        "rows": [
            {
                "n": r["n"],
                "g": mpmath.nstr(r["g"], 12),
                "g_over_n": None if r["g_over_n"] is None else mpmath.nstr(r["g_over_n"], 12),
            }
            for r in rows
        ],
        "raw": rows,
        "decreasing": decreasing,
        "small": bounded,
        "trend_ok": trend_ok,
    }


def remainder_log(config: SystemConfig, alpha: RationalLike, bits: int = 32):
    """log|D_{n+1} alpha^{n+1} R_k(1/alpha)| at the archimedean place."""
    a = _check_alpha(alpha)
    _, ball = two_path_remainder(config, a, bits)
    factor = scaling_Dn(config) * abs(a) ** (config.n + 1)
    return Ball(ball.center * factor, ball.radius * factor).log_abs()


def remainder_bound(config: SystemConfig, alpha: RationalLike):
    """Explicit part of the remainder estimate at the archimedean place."""
    a = _check_alpha(alpha)
    n, R = config.n, config.total_r
    with mpmath.mp.workprec(128):
        h = heights(a).h_at(Place.infinite())
        return (
            -(n + 1) * (R - 1) * h
            + (R + 1) * n * mpmath.log(2)
            + config.r_max * mpmath.log(denominator_block(config))
        )


def remainder_decay_diag(
    omegas: Sequence[RationalLike],
    rs: Sequence[int],
    alpha: RationalLike,
    ns: Sequence[int],
    k: int | None = 1,
    slack_factor: Fraction = Fraction(1, 10),
) -> list[dict]:
    """Rows {n, measured, bound, slack, pass}; k=None takes the max over all rows k."""
    a = _check_alpha(alpha)
    out = []
    for n in ns:
        base = SystemConfig.of(omegas, rs, n)
        ks = range(1, base.total_r + 1) if k is None else [k]
        measured = max(remainder_log(base.with_k(kk), a) for kk in ks)
        bound = remainder_bound(base, a)
        with mpmath.mp.workprec(128):
            h = heights(a).h_at(Place.infinite())
            slack = mpmath.mpf(slack_factor.numerator) / slack_factor.denominator * n * h
            out.append(
                {
                    "n": n,
                    "measured": measured,
                    "bound": bound,
                    "slack": slack,
                    "pass": bool(measured <= bound + slack),
                }
            )
    return out


def decay_rows_json(rows: list[dict], digits: int = 12) -> list[dict]:
    return [
        {k: (mpmath.nstr(v, digits) if isinstance(v, mpmath.mpf) else v) for k, v in r.items()} for r in rows
    ]
