"""Parameter grids and the per-point checks run over them."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import normality
from .exact import as_rational, rational_str
from .pade_binlog import (
    SystemConfig,
    build_system,
    check_integrality,
    coefficient_denominator,
    scaling_Dn,
    scaling_Dn_symmetric,
)
from .pade_exp import check_perfectness
from .series import TruncSeries, subst_T_inv

DEFAULT_OMEGAS = ("0", "1/3", "1/2")


@dataclass(frozen=True)
class GridSpec:
    omega_set: tuple = DEFAULT_OMEGAS
    max_m: int = 2
    max_sum_r: int = 4
    max_n: int = 5

    def configs(self) -> Iterator[SystemConfig]:
        ws = sorted({as_rational(w) for w in self.omega_set})
        for m in range(1, self.max_m + 1):
            for omegas in itertools.combinations(ws, m):
                for rs in _compositions_upto(m, self.max_sum_r):
                    for n in range(self.max_n + 1):
                        yield SystemConfig(tuple(omegas), rs, n)


def _compositions_upto(m: int, total: int) -> Iterator[tuple[int, ...]]:
    for rs in itertools.product(range(1, total + 1), repeat=m):
        if sum(rs) <= total:
            yield rs


def config_key(cfg: SystemConfig) -> str:
    return f"omegas={','.join(rational_str(w) for w in cfg.omegas)};rs={','.join(map(str, cfg.rs))};n={cfg.n}"


# -- per-point checks; each returns a JSON-ready record with a "pass" flag


def check_order(cfg: SystemConfig, margin: int = 3) -> dict:
    """Exact remainder orders for every k, plus the T-bijection with the exponential side."""
    system = build_system(cfg, margin)
    orders, bijection = [], True
    for row in system.rows:
        orders.append(row.certified_order)
        back = subst_T_inv(row.remainder)
        if not back.agrees_with(row.exp_approximant.remainder):
            bijection = False
    expected = [(cfg.n + 1) * cfg.total_r + k - 1 for k in range(1, cfg.total_r + 1)]
    return {
        "key": config_key(cfg),
        "orders": orders,
        "expected": expected,
        "bijection": bijection,
        "pass": orders == expected and bijection,
    }


def check_integrality_point(cfg: SystemConfig, scaling: str = "one-sided", margin: int = 3) -> dict:
    system = build_system(cfg, margin)
    D = scaling_Dn(cfg) if scaling == "one-sided" else scaling_Dn_symmetric(cfg)
    least = coefficient_denominator(system)
    ok = check_integrality(system, D)
    rec = {"key": config_key(cfg), "scaling": str(D), "least_denominator": str(least), "pass": ok}
    if not ok:
        rec["missing_factor"] = str(least // math.gcd(least, D))
    return rec


def check_determinant_point(cfg: SystemConfig, margin: int = 3) -> dict:
    system = build_system(cfg, margin)
    cert = normality.delta_certificate(system, strict=False)
    return {"key": config_key(cfg), **cert.to_json(), "pass": cert.monomial_ok}


def perfectness_grid(max_omega: int = 3, max_weight_sum: int = 8) -> Iterator[tuple[tuple, tuple]]:
    """Distinct integer omegas in [0, max_omega] with sum(r_h + 1) <= max_weight_sum."""
    pool = range(max_omega + 1)
    for size in range(1, max_omega + 2):
        for omegas in itertools.combinations(pool, size):
            for rs in itertools.product(range(max_weight_sum), repeat=size):
                if sum(r + 1 for r in rs) <= max_weight_sum:
                    yield omegas, rs


def check_perfectness_point(omegas: Sequence[int], rs: Sequence[int]) -> dict:
    ok = check_perfectness(omegas, rs)
    return {"key": f"omegas={','.join(map(str, omegas))};weights={','.join(map(str, rs))}", "pass": ok}


def check_polylog_point(r: int, n: int) -> dict:
    d = normality.polylog_hankel_det(r, n)
    return {"key": f"r={r};n={n}", "det": rational_str(d), "pass": d > 0}


# -- randomized normality instances


def random_series_family(rng: random.Random, max_m: int = 3, max_weight: int = 2, span: int = 2):
    """Small integer series with small weights; degenerate cases occur on purpose."""
    m = rng.randint(1, max_m)
    weights = [rng.randint(0, max_weight) for _ in range(m)]
    N = sum(w + 1 for w in weights) + 1
    series = [TruncSeries([rng.randint(-span, span) for _ in range(N + 1)], N) for _ in range(m)]
    return series, weights


def check_random_normality(seed: int) -> dict:
    rng = random.Random(seed)
    series, weights = random_series_family(rng)
    hankel = normality.normality_test(series, weights)
    direct = normality.direct_normality(series, weights).normal
    n = rng.randint(0, 3)
    f = [Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(2 * n + 2)]
    lp = normality.laurent_pade(f, n)
    return {
        "key": f"seed={seed}",
        "hankel_normal": hankel,
        "direct_normal": direct,
        "laurent_normal": lp.normal,
        "laurent_det_nonzero": lp.hankel_det != 0,
        "pass": hankel == direct and lp.normal == (lp.hankel_det != 0),
    }


def parse_rational_list(text: str) -> list[Fraction]:
    return [as_rational(t) for t in text.split(",") if t.strip()]


def parse_int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def parse_range(text: str) -> list[int]:
    """"3..10" (inclusive), "3,5,7" or "4"."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return parse_int_list(text)


def parse_alpha_range(text: str) -> list[int]:
    """"1e16..1e22" or "1e16,1e17" as a list of base-ten exponents."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(_exp10(lo), _exp10(hi) + 1))
    return [_exp10(s) for s in text.split(",") if s.strip()]


def _exp10(token: str) -> int:
    s = token.strip().lower()
    if not s.startswith("1e") or not s[2:].isdigit():
        raise ValueError(f"expected a power of ten like 1e17, got {token!r}")
    return int(s[2:])
