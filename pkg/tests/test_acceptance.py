"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run directly with `python3 tests/test_acceptance.py` for the summary alone.
"""
from fractions import Fraction

import mpmath
import pytest

from binlog_pade import grid, measures
from binlog_pade.exact import Place
from binlog_pade.numeric import remainder_decay_diag
from binlog_pade.pade_binlog import build_system, check_integrality, scaling_Dn
from binlog_pade.pade_exp import check_perfectness

MU_EXPECTED = {16: 1740.6055, 17: 81.2650, 18: 43.9892, 19: 31.1889, 20: 24.7161, 21: 20.8088, 22: 18.1940}


@pytest.fixture
def emit(capsys):
    def _emit(name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name} {detail}".rstrip())
        assert ok, detail

    return _emit


def test_01_order_exactness(emit, order_grid):
    bad = []
    for system in order_grid:
        cfg = system.config
        got = [row.certified_order for row in system.rows]
        if got != [(cfg.n + 1) * cfg.total_r + k - 1 for k in range(1, cfg.total_r + 1)]:
            bad.append(grid.config_key(cfg))
    emit("criterion 1 order exactness", not bad and len(order_grid) == 180, f"{len(order_grid) - len(bad)}/{len(order_grid)} systems")


def test_02_integrality(emit, order_grid):
    bad = [grid.config_key(s.config) for s in order_grid if not check_integrality(s, scaling_Dn(s.config))]
    emit("criterion 2 integrality of D_{n+1} P", not bad, f"{len(order_grid) - len(bad)}/{len(order_grid)} systems; failing e.g. {bad[:3]}")


def test_03_determinant(emit, determinant_grid):
    bad = [grid.config_key(s.config) for s in determinant_grid if not grid.normality.delta_certificate(s, strict=False).monomial_ok]
    emit("criterion 3 determinant monomial", not bad, f"{len(determinant_grid) - len(bad)}/{len(determinant_grid)} systems")


def test_04_perfectness(emit):
    points = list(grid.perfectness_grid(3, 8))
    bad = [p for p in points if not check_perfectness(*p)]
    emit("criterion 4 exponential perfectness", not bad, f"{len(points) - len(bad)}/{len(points)} indices")


def test_05_bijection(emit, order_grid):
    from binlog_pade.series import subst_T_inv

    bad = []
    for system in order_grid:
        for row in system.rows:
            if not subst_T_inv(row.remainder).agrees_with(row.exp_approximant.remainder):
                bad.append(grid.config_key(system.config))
                break
    emit("criterion 5 T-bijection", not bad, f"{len(order_grid) - len(bad)}/{len(order_grid)} systems")


def test_06_polylog_hankel(emit):
    from binlog_pade.normality import polylog_hankel_det

    dets = {(r, n): polylog_hankel_det(r, n) for r in range(1, 5) for n in range(1, 9)}
    ok = all(d > 0 for d in dets.values()) and dets[1, 2] == Fraction(1, 12) and dets[2, 2] == Fraction(7, 144)
    emit("criterion 6 polylog Hankel positivity", ok, f"{sum(d > 0 for d in dets.values())}/32 positive")


def test_07_mu_table(emit):
    rows = measures.mu_table(5, "0.1", range(16, 23), (1, -1))
    worst = 0.0
    for row in rows:
        worst = max(worst, abs(float(row["mu"]) - MU_EXPECTED[int(row["alpha"].split("e")[1])]))
    emit("criterion 7 mu table", len(rows) == 14 and worst <= 0.01, f"max |diff| = {worst:.2e}")


def test_08_threshold_table(emit):
    rows = {row["r"]: row for row in measures.threshold_table(range(3, 11))}
    ok = rows[3]["abs_alpha_min"] == "103278"
    ok &= abs(float(rows[4]["exponent"]) - 22.3973) <= 0.0005
    ok &= all(rows[r]["paper_discrepancy"] for r in range(5, 11))
    ok &= abs(float(rows[5]["exponent"]) - 36.6355) <= 0.0005
    with mpmath.mp.workprec(measures.DEFAULT_PREC):
        # the threshold is where the mu-table's V vanishes
        for r in range(5, 11):
            T = measures.log_only_threshold_exponent(r)
            ok &= abs(measures.log_only_V(r, 1) + T) < mpmath.mpf(10) ** -40
        mu_row = measures.mu_table(5, "0.1", [16], (1,))[0]
        v_direct = measures.measure([0], [5], 10**16, Place.infinite(), mpmath.mpf(1) / 10).V
        ok &= abs(mpmath.mpf(mu_row["V"]) - v_direct) < mpmath.mpf(10) ** -9
        ok &= abs(measures.log_only_V(5, 10**16) - v_direct) < mpmath.mpf(10) ** -40
    emit("criterion 8 threshold table", bool(ok), f"r=3 {rows[3]['abs_alpha_min']}, r=4 e^{rows[4]['exponent']}, r=5 e^{rows[5]['exponent']} (annotated)")


def test_09_c_table(emit):
    worst = mpmath.mpf(0)
    with mpmath.mp.workprec(measures.DEFAULT_PREC):
        eps = mpmath.mpf(1) / 10
        for e in range(16, 23):
            for s in (1, -1):
                rep = measures.measure([0], [5], s * 10**e, Place.infinite(), eps)
                again = -mpmath.log(2) - (rep.V - eps + mpmath.log(2)) * (rep.B + rep.U + eps) / (rep.V - eps)
                worst = max(worst, abs(again - rep.log_C_eps))
    notes = [row["paper_discrepancy"] for row in measures.mu_table(5, "0.1")]
    emit("criterion 9 C table consistency", worst <= 1e-6 and all(notes), f"max |log C diff| = {mpmath.nstr(worst, 3)}")


def test_10_remainder_decay(emit):
    rows = [r for a in (100, 10**6) for r in remainder_decay_diag([0], [2], a, [10, 20, 30])]
    emit("criterion 10 remainder decay", all(r["pass"] for r in rows), f"{sum(r['pass'] for r in rows)}/{len(rows)} rows")


def test_11_normality_equivalence(emit):
    recs = [grid.check_random_normality(seed) for seed in range(10)]
    emit("criterion 11 normality/Hankel equivalence", all(r["pass"] for r in recs), f"{sum(r['pass'] for r in recs)}/10 instances")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
