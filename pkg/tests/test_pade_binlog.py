import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from binlog_pade.pade_binlog import (
    ConfigError,
    DegreeViolation,
    StaircaseIndex,
    SystemConfig,
    build_Fk,
    build_row,
    build_system,
    check_integrality,
    coefficient_denominator,
    scaling_Dn,
    scaling_Dn_symmetric,
    staircase_exp_approximant,
    staircase_for_row,
    staircase_transform,
)
from binlog_pade.series import ord_, subst_T_inv

z = sp.symbols("z")


def poles_of(cfg):
    pc = build_Fk(cfg)
    return dict(zip(pc.poles, pc.multiplicities))


def test_Fk_poles():
    assert poles_of(SystemConfig.of([0], [1], 0, 1)) == {0: 1, 1: 1}
    assert poles_of(SystemConfig.of([0], [2], 0, 2)) == {0: 2, 1: 2}
    assert poles_of(SystemConfig.of([0, "1/2"], [1, 1], 0, 2)) == {
        0: 1,
        1: 1,
        Fraction(1, 2): 1,
        Fraction(3, 2): 1,
    }


def test_Fk_partial_row():
    # k = 2 with r = (3): the last pole carries s = 2 while the others carry 3
    assert poles_of(SystemConfig.of([0], [3], 1, 2)) == {0: 3, 1: 3, 2: 2}


@pytest.mark.parametrize(
    "kwargs,fragment",
    [
        (dict(omegas=[0], rs=[1], n=0, k=2), "k must satisfy"),
        (dict(omegas=["1/2", 0], rs=[1, 1], n=0), "strictly increasing"),
        (dict(omegas=[1], rs=[1], n=0), "[0, 1)"),
        (dict(omegas=[0], rs=[0], n=0), "positive integer"),
        (dict(omegas=[0], rs=[1], n=-1), "nonnegative"),
    ],
)
def test_config_errors_name_the_constraint(kwargs, fragment):
    with pytest.raises(ConfigError, match=fragment.replace("[", r"\[").replace(")", r"\)")):
        SystemConfig.of(**kwargs)


def test_split_k():
    cfg = SystemConfig.of([0, "1/3"], [2, 3], 0, 4)
    assert cfg.split_k() == (1, 2)
    assert cfg.weight_vector() == [1, 1, 1, 1, 0]


def test_smallest_system():
    row = build_row(SystemConfig.of([0], [1], 0, 1))
    assert row.polys[(0, 0)] == (0, 1)
    assert list(row.remainder)[:2] == [0, 1]
    assert row.certified_order == 1


def test_small_orders():
    assert build_row(SystemConfig.of([0], [2], 0, 1)).certified_order == 2
    assert build_row(SystemConfig.of([0], [2], 0, 2)).certified_order == 3


@pytest.mark.parametrize("cfg", [SystemConfig.of([0, "1/2"], [1, 2], 1, 2), SystemConfig.of(["1/3"], [3], 2, 3)])
def test_remainder_against_sympy(cfg):
    """Independent oracle: expand sum P (1+z)^w log^j(1+z) with sympy."""
    row = build_row(cfg)
    expr = 0
    for (i, j), p in row.polys.items():
        w = cfg.omegas[i]
        P = sum(sp.Rational(c.numerator, c.denominator) * z**l for l, c in enumerate(p))
        expr += P * (1 + z) ** sp.Rational(w.numerator, w.denominator) * sp.log(1 + z) ** j
    N = row.remainder.trunc_order
    ser = sp.series(expr, z, 0, N + 1).removeO()
    got = [Fraction(str(sp.Rational(ser.coeff(z, l)))) for l in range(N + 1)]
    assert got == list(row.remainder)
    assert ord_(row.remainder) == cfg.expected_order


def test_scaling_examples():
    assert scaling_Dn(SystemConfig.of([0], [2], 0)) == 4
    assert scaling_Dn(SystemConfig.of([0], [1], 1)) == 12
    # D_2(1/2)^2 d_2(1/2) = 27 times 0! 2!^2
    assert scaling_Dn(SystemConfig.of([0, "1/2"], [1, 1], 0)) == 27 * 4


def test_integrality_examples():
    assert check_integrality(build_system(SystemConfig.of([0], [2], 1)))
    assert check_integrality(build_system(SystemConfig.of([0, "1/2"], [1, 1], 1)))
    assert check_integrality(build_system(SystemConfig.of([0], [1], 0)), scaling=1)


def test_one_sided_scaling_misses_negative_differences():
    system = build_system(SystemConfig.of([0, "1/3"], [1, 1], 1))
    assert not check_integrality(system)
    assert check_integrality(system, scaling_Dn_symmetric(system.config))
    least = coefficient_denominator(system)
    missing = least // math.gcd(least, system.scaling)
    assert missing == 5


def test_deterministic_rebuild():
    cfg = SystemConfig.of([0], [3], 2)
    a, b = build_system(cfg), build_system(cfg)
    assert a.to_json() == b.to_json()


def test_system_json_shape():
    js = build_system(SystemConfig.of([0, "1/2"], [1, 1], 0)).to_json()
    assert js["config"] == {"omegas": ["0", "1/2"], "rs": [1, 1], "n": 0}
    assert [r["k"] for r in js["rows"]] == [1, 2]
    assert js["rows"][1]["certified_order"] == 3
    assert js["rows"][0]["polynomials"][0]["i"] == 1


configs = st.builds(
    lambda ws, r1, r2, n, two: (ws[:2] if two else ws[:1], (r1, r2) if two else (r1,), n),
    st.lists(st.sampled_from([Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]), min_size=2, max_size=2, unique=True).map(sorted),
    st.integers(1, 2),
    st.integers(1, 2),
    st.integers(0, 3),
    st.booleans(),
)


@given(configs)
def test_random_system_invariants(c):
    omegas, rs, n = c
    system = build_system(SystemConfig.of(omegas, rs, n))
    for row in system.rows:
        assert row.certified_order == row.config.expected_order
        assert all(len(p) <= n + 2 for p in row.polys.values())
        assert subst_T_inv(row.remainder).agrees_with(row.exp_approximant.remainder)
    assert check_integrality(system, scaling_Dn_symmetric(system.config))


@pytest.mark.parametrize("cfg", [SystemConfig.of([0, "1/2"], [2, 1], 1, k) for k in (1, 2, 3)])
def test_trivial_staircase_reproduces_rows(cfg):
    index = staircase_for_row(cfg)
    approx = staircase_transform(index, staircase_exp_approximant(index))
    row = build_row(cfg)
    assert approx.polys == row.polys
    assert index.expected_order == cfg.expected_order
    assert ord_(approx.remainder) == cfg.expected_order


def test_staircase_degrees():
    index = StaircaseIndex.of([0], [(1, 1)], [(2, 1)])
    approx = staircase_transform(index, staircase_exp_approximant(index))
    assert len(approx.polys[(0, 0)]) <= 3 and len(approx.polys[(0, 1)]) <= 2
    assert index.column_degrees() == {(0, 0): 2, (0, 1): 1}
    # sum over blocks of (n_v + 1) s_v, less one: 3 + 2 - 1
    assert ord_(approx.remainder) == 4


def test_staircase_multi_family_order():
    index = StaircaseIndex.of([0, "1/2"], [(2, 1), (1,)], [(3, 1), (2,)])
    approx = staircase_transform(index, staircase_exp_approximant(index))
    assert ord_(approx.remainder) == index.expected_order == 4 * 2 + 2 * 1 + 3 * 1 - 1


def test_staircase_degree_violation():
    index = StaircaseIndex.of([0], [(1, 1)], [(2, 1)])
    wrong = StaircaseIndex.of([0], [(1, 1)], [(2, 0)])
    # the degree-(2,1) approximant regrouped against tighter bounds must fail
    with pytest.raises(DegreeViolation):
        staircase_transform(wrong, staircase_exp_approximant(index))


def test_staircase_validation():
    with pytest.raises(ConfigError):
        StaircaseIndex.of([0], [(1, 1)], [(1, 1)])
