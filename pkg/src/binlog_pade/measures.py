"""Linear independence measures for (1+1/alpha)^{w_i} log^j (1+1/alpha).

Every constant is evaluated in mpmath at ``prec`` bits (>= 128). Reports keep
each addend under a label naming the formula line it came from, so a table
diff can be traced back term by term.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .exact import (
    Place,
    RationalLike,
    abs_at,
    as_rational,
    den,
    euler_phi,
    factorial_pochhammer_den,
    heights,
    padic_valuation,
    rational_str,
    reciprocal_shift_den,
)

DEFAULT_PREC = 192


class HypothesisViolation(ValueError):
    """alpha is too small at the chosen place (or is 0 or -1)."""


class EpsilonRangeError(ValueError):
    pass


# Values printed in the source tables, kept only to diff against.
PUBLISHED_THRESHOLDS = {
    3: ("abs", 103278),
    4: ("exp", "22.3973"),
    5: ("exp", "27.2248"),
    6: ("exp", "40.5361"),
    7: ("exp", "56.4495"),
    8: ("exp", "74.9649"),
    9: ("exp", "96.0824"),
    10: ("exp", "119.8020"),
}
PUBLISHED_MU_R5 = {
    16: "1740.6055",
    17: "81.2650",
    18: "43.9892",
    19: "31.1889",
    20: "24.7161",
    21: "20.8088",
    22: "18.1940",
}
# log(2 C) for r = 5, eps = 0.1
PUBLISHED_LOG2C_R5 = {
    16: "-1368.98",
    17: "-245.38",
    18: "-229.14",
    19: "-229.62",
    20: "-234.41",
    21: "-240.95",
    22: "-248.38",
}


def _ctx(prec: int):
    if prec < 128:
        raise ValueError("working precision must be at least 128 bits")
    return mpmath.mp.workprec(prec)


def totient_harmonic(d: int):
    """d/phi(d) * sum_{1<=j<=d, gcd(j,d)=1} 1/j, exactly as a Fraction."""
    s = sum((Fraction(1, j) for j in range(1, d + 1) if math.gcd(j, d) == 1), Fraction(0))
    return Fraction(d, euler_phi(d)) * s


@dataclass
class COmega:
    value: mpmath.mpf
    terms: dict


def c_omega(omegas: Sequence[RationalLike], rs: Sequence[int], prec: int = DEFAULT_PREC) -> COmega:
    ws = [as_rational(w) for w in omegas]
    rs = [int(r) for r in rs]
    R = sum(rs)
    rmax = max(rs)
    with _ctx(prec):
        log2 = mpmath.log(2)
        pair = Fraction(0)
        for a in range(len(ws)):
            for b in range(a + 1, len(ws)):
                pair += totient_harmonic(den([ws[b] - ws[a]]))
        terms = {
            "C_omega.log2": (R + 1) * log2,
            "C_omega.pairs": 3 * rmax * mpmath.mpf(pair.numerator) / pair.denominator,
            "C_omega.r": mpmath.mpf(rmax),
        }
        value = terms["C_omega.log2"] + terms["C_omega.pairs"] + terms["C_omega.r"]
    return COmega(value, terms)


def check_hypothesis(omegas: Sequence[Fraction], alpha: Fraction, place: Place) -> str:
    """Return a description of the bound satisfied, or raise HypothesisViolation."""
    if alpha == 0 or alpha == -1:
        raise HypothesisViolation("alpha must differ from 0 and -1")
    a_abs = abs_at(alpha, place)
    if place.is_archimedean or place.prime not in _primes_of(den(omegas)):
        if a_abs > 1:
            return f"|alpha|_{place} > 1"
        raise HypothesisViolation(f"|alpha|_{place} = {rational_str(a_abs)} is not > 1")
    p = place.prime
    v = padic_valuation(alpha, p)
    # |alpha|_p > |p|_p^{-p/(p-1)}  <=>  -v (p-1) > p
    if -v * (p - 1) > p:
        return f"|alpha|_{p} > {p}^({p}/{p - 1})"
    raise HypothesisViolation(
        f"{p} divides den(omega); need |alpha|_{p} > {p}^({p}/{p - 1}), have {rational_str(a_abs)}"
    )


def _primes_of(n: int) -> set:
    from .exact import prime_factors

    return set(prime_factors(n))


@dataclass
class MeasureReport:
    omegas: tuple
    rs: tuple
    alpha: Fraction
    place: Place
    epsilon: mpmath.mpf
    C_omega: mpmath.mpf
    A: mpmath.mpf
    B: mpmath.mpf
    U: mpmath.mpf
    V: mpmath.mpf
    mu: mpmath.mpf | None
    C_eps: mpmath.mpf | None
    log_C_eps: mpmath.mpf | None
    valid: bool
    reason: str
    hypothesis: str
    terms: dict = field(default_factory=dict)
    H0: str = (
        "not computed: effective but no closed form; requires n* with |o(n)| <= eps n/4, "
        "[K:Q] log(m!) <= eps n/4, n(V-eps) > log 2, and the B, U limsups within eps n/4"
    )

    def to_json(self, digits: int = 30) -> dict:
        def s(x):
            return None if x is None else mpmath.nstr(x, digits)

        return {
            "omegas": [rational_str(w) for w in self.omegas],
            "rs": list(self.rs),
            "alpha": rational_str(self.alpha),
            "place": str(self.place),
            "epsilon": s(self.epsilon),
            "hypothesis": self.hypothesis,
            "C_omega": s(self.C_omega),
            "A": s(self.A),
            "B": s(self.B),
            "U": s(self.U),
            "V": s(self.V),
            "mu": s(self.mu),
            "C_eps": s(self.C_eps),
            "log_C_eps": s(self.log_C_eps),
            "valid": self.valid,
            "reason": self.reason,
            "H0": self.H0,
            "terms": {k: s(v) for k, v in self.terms.items()},
        }


def criterion_eval(A, B, U, eps, prec: int = DEFAULT_PREC):
    """(mu, log C) from the criterion: mu = (A+U)/(V-eps),
    C = 1/2 exp[-(V-eps+log 2)(B+U+eps)/(V-eps)], V = A - B."""
    with _ctx(prec):
        A, B, U, eps = (mpmath.mpf(x) for x in (A, B, U, eps))
        V = A - B
        if not (eps > 0 and V > eps):
            raise EpsilonRangeError(f"need V > eps > 0, have V={mpmath.nstr(V, 10)}, eps={mpmath.nstr(eps, 10)}")
        gap = V - eps
        mu = (A + U) / gap
        log_c = -mpmath.log(2) - (gap + mpmath.log(2)) * (B + U + eps) / gap
    return mu, log_c


def measure(
    omegas: Sequence[RationalLike],
    rs: Sequence[int],
    alpha: RationalLike,
    place: Place,
    epsilon,
    prec: int = DEFAULT_PREC,
) -> MeasureReport:
    ws = tuple(as_rational(w) for w in omegas)
    rs = tuple(int(r) for r in rs)
    a = as_rational(alpha)
    hyp = check_hypothesis(list(ws), a, place)
    R = sum(rs)
    with _ctx(prec):
        eps = mpmath.mpf(epsilon)
        if eps <= 0:
            raise EpsilonRangeError("epsilon must be positive")
        hp = heights(a)
        h_v0 = hp.h_at(place)
        h = hp.h_total()
        co = c_omega(ws, rs, prec)
        C = co.value
        ev = place.epsilon
        ldr = mpmath.mpf(place.local_degree_ratio.numerator) / place.local_degree_ratio.denominator
        terms = dict(co.terms)
        terms["A.height"] = (R - 1) * h_v0
        terms["A.C_omega"] = -ev * ldr * C
        if place.is_archimedean or place.prime not in _primes_of(den(ws)):
            terms["A.padic"] = mpmath.mpf(0)
        else:
            p = place.prime
            log_abs_p = -ldr * mpmath.log(p)
            terms["A.padic"] = -(ev - 1) * (mpmath.mpf(R * p) / (p - 1)) * log_abs_p
        A = terms["A.height"] + terms["A.C_omega"] + terms["A.padic"]
        terms["B.height"] = (R - 1) * (h + C)
        terms["B.h_v0"] = -h_v0
        terms["B.C_omega"] = -ev * ldr * C
        B = terms["B.height"] + terms["B.h_v0"] + terms["B.C_omega"]
        terms["U.h_v0"] = h_v0
        terms["U.C_omega"] = ev * ldr * C
        U = terms["U.h_v0"] + terms["U.C_omega"]
        V = A - B
        mu = c_eps = log_c = None
        valid, reason = True, "ok"
        if R < 2:
            valid, reason = False, "sum(rs) = 1: a single-term form carries no independence statement"
        elif V <= 0:
            valid, reason = False, "V <= 0"
        elif eps >= V:
            valid, reason = False, "epsilon >= V"
        else:
            mu, log_c = criterion_eval(A, B, U, eps, prec)
            c_eps = mpmath.exp(log_c)
    return MeasureReport(ws, rs, a, place, eps, C, A, B, U, V, mu, c_eps, log_c, valid, reason, hyp, terms)


# -- the special case K = Q, m = 1, omega = 0, v0 = infinity


def log_only_V(r: int, alpha: RationalLike, prec: int = DEFAULT_PREC):
    """r h_inf(alpha) - (r-1)(h(alpha) + (r+1) log 2 + r)."""
    if r < 2:
        raise ValueError("r must be >= 2")
    hp = heights(as_rational(alpha))
    with _ctx(prec):
        return r * hp.h_at(Place.infinite()) - (r - 1) * (hp.h_total() + (r + 1) * mpmath.log(2) + r)


def log_only_threshold_exponent(r: int, prec: int = DEFAULT_PREC):
    """log of the least |alpha| (alpha an integer) with V(alpha) > 0."""
    if r < 2:
        raise ValueError("r must be >= 2")
    with _ctx(prec):
        return (r - 1) * ((r + 1) * mpmath.log(2) + r)


def log_only_threshold(r: int, prec: int = DEFAULT_PREC):
    with _ctx(prec):
        return mpmath.exp(log_only_threshold_exponent(r, prec))


def log_only_mu_logc(r: int, alpha: RationalLike, eps, prec: int = DEFAULT_PREC):
    """(mu, log C) from the closed forms for a single logarithm power at omega = 0."""
    hp = heights(as_rational(alpha))
    with _ctx(prec):
        eps = mpmath.mpf(eps)
        V = log_only_V(r, alpha, prec)
        if not (0 < eps < V):
            raise EpsilonRangeError("need 0 < eps < V(alpha)")
        hinf = hp.h_at(Place.infinite())
        gap = V - eps
        mu = r * hinf / gap
        BU = (r - 1) * (hp.h_total() + (r + 1) * mpmath.log(2) + r)
        log_c = -mpmath.log(2) - (gap + mpmath.log(2)) * (BU + eps) / gap
    return mu, log_c


# -- tables


def threshold_table(rs: Sequence[int] = range(3, 11), prec: int = DEFAULT_PREC) -> list[dict]:
    rows = []
    for r in rs:
        with _ctx(prec):
            T = log_only_threshold_exponent(r, prec)
            row = {"r": r, "exponent": mpmath.nstr(T, 12)}
            if r == 3 or T < 40:
                row["abs_alpha_min"] = str(int(mpmath.ceil(mpmath.exp(T))))
            published = PUBLISHED_THRESHOLDS.get(r)
            note = None
            if published is not None:
                kind, val = published
                if kind == "abs":
                    row["published"] = str(val)
                    diff = int(mpmath.ceil(mpmath.exp(T))) - val
                    row["diff"] = str(diff)
                    if diff != 0:
                        note = "published entry differs from the formula value"
                else:
                    row["published"] = f"e^{val}"
                    diff = T - mpmath.mpf(val)
                    row["diff"] = mpmath.nstr(diff, 6)
                    if abs(diff) > mpmath.mpf("0.0005"):
                        note = (
                            f"published exponent {val} is inconsistent with V(alpha) = log|alpha| - "
                            f"(r-1)((r+1) log 2 + r), which vanishes at exponent {mpmath.nstr(T, 8)}"
                        )
            row["paper_discrepancy"] = note
        rows.append(row)
    return rows


def mu_table(
    r: int = 5,
    eps="0.1",
    exponents: Sequence[int] = range(16, 23),
    signs: Sequence[int] = (1, -1),
    prec: int = DEFAULT_PREC,
) -> list[dict]:
    rows = []
    for e in exponents:
        for sgn in signs:
            alpha = sgn * Fraction(10) ** e
            row: dict = {"alpha": f"{'-' if sgn < 0 else ''}1e{e}"}
            try:
                rep = measure([0], [r], alpha, Place.infinite(), eps, prec)
            except (HypothesisViolation, EpsilonRangeError) as exc:
                row.update({"error": str(exc)})
                rows.append(row)
                continue
            with _ctx(prec):
                row["V"] = mpmath.nstr(rep.V, 12)
                row["valid"] = rep.valid
                if rep.valid:
                    row["mu"] = mpmath.nstr(rep.mu, 10)
                    row["log_2C"] = mpmath.nstr(rep.log_C_eps + mpmath.log(2), 10)
                    if r == 5 and mpmath.mpf(eps) == mpmath.mpf("0.1") and e in PUBLISHED_MU_R5:
                        pm = mpmath.mpf(PUBLISHED_MU_R5[e])
                        row["published_mu"] = PUBLISHED_MU_R5[e]
                        row["mu_diff"] = mpmath.nstr(rep.mu - pm, 4)
                        pc = mpmath.mpf(PUBLISHED_LOG2C_R5[e])
                        row["published_log_2C"] = PUBLISHED_LOG2C_R5[e]
                        row["log_2C_diff"] = mpmath.nstr(rep.log_C_eps + mpmath.log(2) - pc, 6)
                        notes = []
                        if abs(rep.mu - pm) > mpmath.mpf("0.01"):
                            notes.append("mu differs from the published entry")
                        if abs(rep.log_C_eps + mpmath.log(2) - pc) > mpmath.mpf("0.01"):
                            notes.append(
                                "published C entry does not match direct evaluation of "
                                "C = 1/2 exp[-(V-eps+log 2)(B+U+eps)/(V-eps)]"
                            )
                        row["paper_discrepancy"] = "; ".join(notes) or None
                else:
                    row["reason"] = rep.reason
            rows.append(row)
    return rows


# -- diagnostics


def denominator_growth(omega: RationalLike, ns: Sequence[int], prec: int = DEFAULT_PREC) -> list[dict]:
    """Finite-n values of log max(D_n(w), d_n(w))/n against the limsup bound."""
    w = as_rational(omega)
    bound_q = totient_harmonic(w.denominator)
    rows = []
    with _ctx(prec):
        bound = mpmath.mpf(bound_q.numerator) / bound_q.denominator
        for n in ns:
            big = max(factorial_pochhammer_den(w, n), reciprocal_shift_den(w, n))
            val = mpmath.log(big) / n
            rows.append({"n": n, "measured": mpmath.nstr(val, 10), "bound": mpmath.nstr(bound, 10)})
    return rows
