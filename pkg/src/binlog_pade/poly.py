"""Dense univariate polynomials over Q as coefficient lists, lowest degree first."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Poly = list  # list[Fraction]


def trim(p: Sequence[Fraction]) -> Poly:
    out = list(p)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence[Fraction]) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(trim(p)) - 1


def add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, x in enumerate(p):
        out[i] += x
    for i, x in enumerate(q):
        out[i] += x
    return trim(out)


def scale(p: Sequence[Fraction], s) -> Poly:
    return trim([s * x for x in p])


def mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def linear_power(a: Fraction, e: int) -> Poly:
    """(x - a)^e expanded."""
    return [Fraction(math.comb(e, k)) * (-a) ** (e - k) for k in range(e + 1)]


def shifted_basis_to_monomial(coeffs_in_1pz: Sequence[Fraction]) -> Poly:
    """sum_h c_h (1+z)^h rewritten as sum_l a_l z^l."""
    H = len(coeffs_in_1pz)
    out = [Fraction(0)] * H
    for h, c in enumerate(coeffs_in_1pz):
        if c:
            for l in range(h + 1):
                out[l] += c * math.comb(h, l)
    return trim(out)


def evaluate(p: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Newton divided differences; exact over Q."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: Poly = [coef[-1]] if n else []
    for i in range(n - 2, -1, -1):
        # out = out * (x - xs[i]) + coef[i]
        out = add(mul(out, [-xs[i], Fraction(1)]), [coef[i]])
    return trim(out)


def divide_linear(p: Sequence[Fraction], a: Fraction) -> Poly:
    """Quotient of p by (x - a); raises if the division is not exact."""
    p = trim(p)
    if not p:
        return []
    n = len(p) - 1
    q = [Fraction(0)] * n
    carry = Fraction(0)
    for k in range(n, 0, -1):
        carry = p[k] + carry * a if k < n else p[k]
        q[k - 1] = carry
    if p[0] + carry * a != 0:
        raise ArithmeticError("x - a does not divide p")
    return trim(q)
