"""Explicit Padé approximants of ((1+z)^{w_i} log^j (1+z)).

For a system (omegas, rs, n) and row index k, the polynomials P_{k,i,j} are
read off the partial fractions of a rational function F_k whose poles are
the shifted points w_i + h. They are the image, under the substitution
z -> log(1+z), of a Mahler approximant of the exponentials e^{(w_i+h) z}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import poly
from .exact import (
    RationalLike,
    as_rational,
    factorial_pochhammer_den,
    lcm_upto,
    rational_str,
    reciprocal_shift_den,
)
from .pade_exp import ExpApproximant, InconclusiveError, PoleConfig, exp_remainder, partial_fractions
from .series import TruncSeries, binlog_basis, ord_, subst_T


class ConfigError(ValueError):
    """An invalid system configuration; the message names the constraint."""


class NormalityViolation(ArithmeticError):
    pass


class DegreeViolation(ArithmeticError):
    pass


@dataclass(frozen=True)
class SystemConfig:
    omegas: tuple[Fraction, ...]
    rs: tuple[int, ...]
    n: int
    k: int = 1

    def __post_init__(self):
        if not self.omegas:
            raise ConfigError("at least one omega is required (m >= 1)")
        if len(self.omegas) != len(self.rs):
            raise ConfigError("omegas and rs must have the same length")
        if any(r < 1 for r in self.rs):
            raise ConfigError("every r_i must be a positive integer")
        if any(not (0 <= w < 1) for w in self.omegas):
            raise ConfigError("omegas must lie in [0, 1)")
        if any(a >= b for a, b in zip(self.omegas, self.omegas[1:])):
            raise ConfigError("omegas must be strictly increasing")
        if self.n < 0:
            raise ConfigError("n must be nonnegative")
        if not (1 <= self.k <= self.total_r):
            raise ConfigError(f"k must satisfy 1 <= k <= sum(rs) = {self.total_r}")

    @classmethod
    def of(cls, omegas: Sequence[RationalLike], rs: Sequence[int], n: int, k: int = 1) -> "SystemConfig":
        return cls(tuple(as_rational(w) for w in omegas), tuple(int(r) for r in rs), int(n), int(k))

    @property
    def m(self) -> int:
        return len(self.omegas)

    @property
    def total_r(self) -> int:
        return sum(self.rs)

    @property
    def r_max(self) -> int:
        return max(self.rs)

    def with_k(self, k: int) -> "SystemConfig":
        return SystemConfig(self.omegas, self.rs, self.n, k)

    def split_k(self) -> tuple[int, int]:
        """(u, s) with k = r_1 + ... + r_u + s and 1 <= s <= r_{u+1}."""
        rest = self.k
        for u, r in enumerate(self.rs):
            if rest <= r:
                return u, rest
            rest -= r
        raise AssertionError("unreachable: k validated in __post_init__")

    @property
    def columns(self) -> list[tuple[int, int]]:
        """Column labels (i, j), 0-based i, in the fixed lexicographic order."""
        return [(i, j) for i, r in enumerate(self.rs) for j in range(r)]

    @property
    def expected_order(self) -> int:
        return (self.n + 1) * self.total_r + self.k - 1

    def weight_vector(self) -> list[int]:
        """The index n_k: the first k columns get n+1, the rest n."""
        return [self.n + 1 if c < self.k else self.n for c in range(self.total_r)]

    def to_json(self) -> dict:
        return {
            "omegas": [rational_str(w) for w in self.omegas],
            "rs": list(self.rs),
            "n": self.n,
            "k": self.k,
        }


def build_Fk(config: SystemConfig) -> PoleConfig:
    """Pole set of F_k: w_i + h with the multiplicities of the k-th row."""
    u, s = config.split_k()
    n = config.n
    poles, mults = [], []
    for i, (w, r) in enumerate(zip(config.omegas, config.rs)):
        for h in range(n + 2):
            if i < u:
                mult = r
            elif i == u:
                mult = r if h <= n else s
            else:
                mult = r if h <= n else 0
            if mult:
                poles.append(w + h)
                mults.append(mult)
    return PoleConfig(tuple(poles), tuple(mults))


@dataclass(frozen=True)
class PadeRow:
    """One row k: polys[(i, j)] in the monomial basis and the exact remainder."""

    config: SystemConfig
    pf_coeffs: dict  # (h, i, j) -> Fraction, j >= 1
    polys: dict  # (i, j) -> tuple[Fraction, ...]
    remainder: TruncSeries
    exp_approximant: ExpApproximant
    certified_order: int


@dataclass(frozen=True)
class PadeSystem:
    config: SystemConfig  # k of config is ignored; rows hold k = 1..sum(rs)
    rows: tuple[PadeRow, ...]
    scaling: int

    def P(self, k: int, i: int, j: int) -> tuple[Fraction, ...]:
        return self.rows[k - 1].polys[(i, j)]

    def poly_matrix(self) -> list[list[tuple[Fraction, ...]]]:
        return [[row.polys[c] for c in self.config.columns] for row in self.rows]

    def to_json(self) -> dict:
        cfg = self.config
        return {
            "config": {k: v for k, v in cfg.to_json().items() if k != "k"},
            "scaling": str(self.scaling),
            "rows": [row_to_json(row) for row in self.rows],
        }


def row_to_json(row: PadeRow) -> dict:
    return {
        "k": row.config.k,
        "weight": row.config.weight_vector(),
        "polynomials": [
            {"i": i + 1, "j": j, "coeffs": [rational_str(c) for c in row.polys[(i, j)]]}
            for (i, j) in row.config.columns
        ],
        "certified_order": row.certified_order,
        "remainder": row.remainder.to_json(),
    }


@lru_cache(maxsize=256)
def _basis(omega: Fraction, j: int, N: int) -> TruncSeries:
    return binlog_basis(omega, j, N)


def binlog_remainder(omegas: Sequence[Fraction], polys: dict, N: int) -> TruncSeries:
    """sum_{i,j} polys[(i,j)](z) (1+z)^{w_i} log^j(1+z), truncated at N."""
    acc = TruncSeries.constant(0, N)
    for (i, j), p in sorted(polys.items()):
        if any(p):
            acc = acc + TruncSeries.from_polynomial(list(p), N) * _basis(omegas[i], j, N)
    return acc


def certify_order(rem: TruncSeries, expected: int) -> int:
    if rem.trunc_order < expected:
        raise InconclusiveError(f"window {rem.trunc_order} cannot certify order {expected}")
    got = ord_(rem)
    if got != expected:
        raise NormalityViolation(f"remainder order {got}, expected {expected}")
    return expected


def build_row(config: SystemConfig, margin: int = 3) -> PadeRow:
    cfg_poles = build_Fk(config)
    table = partial_fractions(cfg_poles)
    index = {}
    for idx, pole in enumerate(cfg_poles.poles):
        for i, w in enumerate(config.omegas):
            h = pole - w
            if h.denominator == 1 and 0 <= h <= config.n + 1:
                index[idx] = (i, int(h))
    pf: dict = {}
    for idx, (i, h) in index.items():
        for j in range(1, cfg_poles.multiplicities[idx] + 1):
            pf[(h, i, j)] = table.get(idx, j)

    polys: dict = {}
    for i, j in config.columns:
        in_1pz = [pf.get((h, i, j + 1), Fraction(0)) / math.factorial(j) for h in range(config.n + 2)]
        polys[(i, j)] = tuple(poly.shifted_basis_to_monomial(in_1pz))

    # exponential side, same coefficients: frak P_{i,h}(z) = sum_j p_{h,i,j+1} z^j / j!
    exp_omegas, exp_weights, exp_polys = [], [], []
    for idx, (i, h) in index.items():
        mult = cfg_poles.multiplicities[idx]
        exp_omegas.append(config.omegas[i] + h)
        exp_weights.append(mult - 1)
        exp_polys.append(tuple(pf[(h, i, j + 1)] / math.factorial(j) for j in range(mult)))

    expected = config.expected_order
    N = expected + margin - 1
    rem = binlog_remainder(config.omegas, polys, N)
    exp_rem = exp_remainder(exp_omegas, exp_polys, N)
    exp_approx = ExpApproximant(tuple(exp_omegas), tuple(exp_weights), tuple(exp_polys), exp_rem)
    certified = certify_order(rem, expected)
    for (i, j), p in polys.items():
        if poly.degree(p) > config.weight_vector()[config.columns.index((i, j))]:
            raise DegreeViolation(f"deg P_{{{config.k},{i + 1},{j}}} exceeds its weight")
    return PadeRow(config, pf, polys, rem, exp_approx, certified)


def denominator_block(config: SystemConfig) -> int:
    """[prod_{i1<i2} D_{n+2}(w_i2-w_i1)^2 d_{n+2}(w_i2-w_i1)] * lcm(1..n+1)."""
    n = config.n
    block = lcm_upto(n + 1)
    ws = config.omegas
    for a in range(len(ws)):
        for b in range(a + 1, len(ws)):
            diff = ws[b] - ws[a]
            block *= factorial_pochhammer_den(diff, n + 2) ** 2 * reciprocal_shift_den(diff, n + 2)
    return block


def scaling_Dn(config: SystemConfig) -> int:
    """The integer D_{n+1} clearing all denominators of the P_{k,i,j}."""
    return (
        math.factorial(config.r_max - 1)
        * math.factorial(config.n + 2) ** config.total_r
        * denominator_block(config) ** config.r_max
    )


def symmetric_denominator_block(config: SystemConfig) -> int:
    """Like :func:`denominator_block` but over ordered pairs i != i'.

    The negative differences w_i - w_i' (i < i') contribute primes that the
    one-sided product misses, e.g. 5 and 11 for w = (0, 1/3).
    """
    n = config.n
    block = lcm_upto(n + 1)
    for a in config.omegas:
        for b in config.omegas:
            if a != b:
                diff = a - b
                block *= factorial_pochhammer_den(diff, n + 2) ** 2 * reciprocal_shift_den(diff, n + 2)
    return block


def scaling_Dn_symmetric(config: SystemConfig) -> int:
    """D_{n+1} with the two-sided denominator block; always clears the P_{k,i,j}."""
    return (
        math.factorial(config.r_max - 1)
        * math.factorial(config.n + 2) ** config.total_r
        * symmetric_denominator_block(config) ** config.r_max
    )


def build_system(config: SystemConfig, margin: int = 3) -> PadeSystem:
    rows = tuple(build_row(config.with_k(k), margin) for k in range(1, config.total_r + 1))
    return PadeSystem(config, rows, scaling_Dn(config))


def coefficient_denominator(system: PadeSystem) -> int:
    """lcm of all coefficient denominators of the P_{k,i,j}: the least valid scaling."""
    out = 1
    for row in system.rows:
        for p in row.polys.values():
            for c in p:
                out = math.lcm(out, c.denominator)
    return out


def check_integrality(system: PadeSystem, scaling: int | None = None) -> bool:
    D = system.scaling if scaling is None else scaling
    for row in system.rows:
        for p in row.polys.values():
            if any((D * c).denominator != 1 for c in p):
                return False
    return True


# -- general staircase indices


@dataclass(frozen=True)
class StaircaseIndex:
    """Per function family i: block sizes s_{i,v} and degrees n_{i,v}.

    Block v of family i covers log powers s_{i,1}+...+s_{i,v-1} through
    s_{i,1}+...+s_{i,v} - 1, each with degree bound n_{i,v}.
    """

    omegas: tuple[Fraction, ...]
    parts: tuple[tuple[int, ...], ...]
    degrees: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not (len(self.omegas) == len(self.parts) == len(self.degrees)):
            raise ConfigError("one partition and one degree list per omega")
        for s, d in zip(self.parts, self.degrees):
            if len(s) != len(d) or not s:
                raise ConfigError("partition and degree lists must match and be nonempty")
            if any(x < 1 for x in s):
                raise ConfigError("block sizes must be positive")
            if any(x < 0 for x in d) or any(a <= b for a, b in zip(d, d[1:])):
                raise ConfigError("degrees must be nonnegative and strictly decreasing")
        if any(not (0 <= w < 1) for w in self.omegas) or any(
            a >= b for a, b in zip(self.omegas, self.omegas[1:])
        ):
            raise ConfigError("omegas must be strictly increasing in [0, 1)")

    @classmethod
    def of(cls, omegas, parts, degrees) -> "StaircaseIndex":
        return cls(
            tuple(as_rational(w) for w in omegas),
            tuple(tuple(int(x) for x in s) for s in parts),
            tuple(tuple(int(x) for x in d) for d in degrees),
        )

    @property
    def rs(self) -> tuple[int, ...]:
        return tuple(sum(s) for s in self.parts)

    def column_degrees(self) -> dict:
        """(i, j) -> degree bound, the n vector."""
        out = {}
        for i, (s, d) in enumerate(zip(self.parts, self.degrees)):
            j = 0
            for size, deg in zip(s, d):
                for _ in range(size):
                    out[(i, j)] = deg
                    j += 1
        return out

    def exp_weights(self) -> list[tuple[int, int, int]]:
        """(i, shift k, weight) for the exponential system e^{(w_i + k) z}.

        The weight at shift k is (number of log powers whose degree bound is
        >= k) - 1, which is the r vector of the staircase.
        """
        out = []
        for i, (s, d) in enumerate(zip(self.parts, self.degrees)):
            for k in range(d[0] + 1):
                out.append((i, k, sum(sz for sz, dg in zip(s, d) if dg >= k) - 1))
        return out

    @property
    def expected_order(self) -> int:
        return sum((dg + 1) * sz for s, d in zip(self.parts, self.degrees) for sz, dg in zip(s, d)) - 1


@dataclass(frozen=True)
class StaircaseApproximant:
    index: StaircaseIndex
    polys: dict  # (i, j) -> tuple[Fraction, ...]
    remainder: TruncSeries


def staircase_exp_approximant(index: StaircaseIndex, margin: int = 3) -> ExpApproximant:
    """Mahler approximant of (e^{(w_i+k)z}) at the staircase's r vector."""
    from .pade_exp import mahler_approximants

    triples = index.exp_weights()
    omegas = [index.omegas[i] + k for i, k, _ in triples]
    weights = [w for _, _, w in triples]
    return mahler_approximants(omegas, weights, N=index.expected_order + margin - 1)


def staircase_transform(index: StaircaseIndex, exp_approx: ExpApproximant) -> StaircaseApproximant:
    """Regroup an exponential approximant into the binlog approximant of weight n.

    Writing frak P_{i,k}(z) = sum_j p_{j,k} z^j, the image under z -> log(1+z)
    has P_{i,j}(z) = sum_k p_{j,k} (1+z)^k.
    """
    lookup = {}
    for w, p in zip(exp_approx.omegas, exp_approx.polys):
        matched = False
        for i, base in enumerate(index.omegas):
            k = w - base
            if k.denominator == 1 and k >= 0:
                lookup[(i, int(k))] = p
                matched = True
                break
        if not matched:
            raise ConfigError(f"exponent {rational_str(w)} matches no omega_i + k")
    bounds = index.column_degrees()
    polys = {}
    for (i, j), bound in bounds.items():
        top = index.degrees[i][0]
        in_1pz = []
        for k in range(top + 1):
            p = lookup.get((i, k), ())
            in_1pz.append(p[j] if j < len(p) else Fraction(0))
        mono = tuple(poly.shifted_basis_to_monomial(in_1pz))
        if poly.degree(mono) > bound:
            raise DegreeViolation(f"column ({i + 1},{j}) has degree {poly.degree(mono)} > {bound}")
        polys[(i, j)] = mono
    return StaircaseApproximant(index, polys, subst_T(exp_approx.remainder))


def staircase_for_row(config: SystemConfig) -> StaircaseIndex:
    """The staircase whose weight vector is n_k."""
    u, s = config.split_k()
    n = config.n
    parts, degrees = [], []
    for i, r in enumerate(config.rs):
        if i < u:
            parts.append((r,))
            degrees.append((n + 1,))
        elif i == u:
            if s == r:
                parts.append((r,))
                degrees.append((n + 1,))
            else:
                parts.append((s, r - s))
                degrees.append((n + 1, n))
        else:
            parts.append((r,))
            degrees.append((n,))
    return StaircaseIndex(config.omegas, tuple(parts), tuple(degrees))
