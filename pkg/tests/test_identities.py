import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfc import (
    DiamondParams,
    DomainMismatch,
    GammaMismatch,
    GridFunction,
    IndexOutOfRange,
    Theorem,
    constant_sum_closed_form,
    delta_fractional_sum,
    diamond_fractional_sum,
    leibniz_rhs,
    multiply,
    verify_coincidence,
    verify_composition,
    verify_constant,
    verify_leibniz,
    verify_linearity,
    verify_reduction,
)
from dfc.identities import (
    DEFAULT_FLOAT_RTOL,
    SuiteConfig,
    delta_sum_by_definition,
    random_rational_grid,
    run_suite,
)
from dfc.numeric import Mode

from conftest import brute_sum, half_weight

ORDERS = [F(1, 3), F(2, 5), F(1, 2), F(3, 4), F(5, 4)]
orders = st.sampled_from(ORDERS)
gammas = st.sampled_from([F(0), F(1, 4), F(1, 2), F(3, 4), F(1)])
rationals = st.fractions(min_value=-9, max_value=9, max_denominator=3)

ONES3 = GridFunction.constant(1, 3)
HALF = DiamondParams(F(1, 2), F(1, 2), F(1, 2))


def rand_grid(seed, n):
    return random_rational_grid(random.Random(seed), n)


def assert_exact_pass(report):
    assert report.passed, report.to_dict()
    assert report.max_abs_error == 0 and report.tolerance == 0


# --- linearity ---------------------------------------------------------------


def test_linearity_constants():
    r = verify_linearity(GridFunction.constant(1, 6), GridFunction.constant(2, 6), HALF)
    assert_exact_pass(r)
    assert r.witness is None and r.theorem is Theorem.LINEARITY


def test_linearity_doubling():
    f = rand_grid(1, 9)
    assert_exact_pass(verify_linearity(f, f, DiamondParams(F(3, 4), F(1, 3), F(1, 4))))


def test_linearity_random_n16():
    f, g = rand_grid(11, 16), rand_grid(12, 16)
    assert_exact_pass(verify_linearity(f, g, DiamondParams(F(1, 3), F(2, 5), F(1, 2))))


def test_linearity_domain_mismatch():
    with pytest.raises(DomainMismatch):
        verify_linearity(ONES3, GridFunction.constant(1, 3, base=1), HALF)


# --- constant ----------------------------------------------------------------


def test_constant_half():
    r = verify_constant(1, DiamondParams(F(1, 2), F(1, 2), F(1, 5)), 3)
    assert_exact_pass(r)
    rhs = [constant_sum_closed_form(F(1, 2), m, 1) for m in range(3)]
    assert rhs == brute_sum([1, 1, 1], half_weight) == [1, F(3, 2), F(15, 8)]


def test_constant_zero_and_integer_order():
    assert_exact_pass(verify_constant(0, DiamondParams(F(1, 3), F(5, 4), F(1, 2)), 7))
    r = verify_constant(1, DiamondParams(1, 1, F(1, 2)), 4)
    assert_exact_pass(r)
    assert diamond_fractional_sum(GridFunction.constant(1, 4), DiamondParams(1, 1, F(1, 2))).samples == (1, 2, 3, 4)


# --- coincidence -------------------------------------------------------------


def test_definitional_delta_matches_hand_values():
    out = delta_sum_by_definition(ONES3, F(1, 2))
    assert out.base == F(1, 2) and out.samples == (1, F(3, 2), F(15, 8))
    assert delta_sum_by_definition(ONES3, 1).samples == (1, 2, 3)


def test_definitional_delta_float_uses_gamma():
    out = delta_sum_by_definition(GridFunction.constant(1.0, 3), 0.5)
    assert out.samples == pytest.approx([1.0, 1.5, 1.875], rel=1e-14)


def test_coincidence_examples():
    assert_exact_pass(verify_coincidence(ONES3, F(1, 2)))
    assert_exact_pass(verify_coincidence(rand_grid(5, 8), 1))
    assert_exact_pass(verify_coincidence(rand_grid(6, 16), F(3, 4)))


def test_coincidence_with_shifted_base():
    f = random_rational_grid(random.Random(3), 10, base=F(-7, 3))
    assert_exact_pass(verify_coincidence(f, F(2, 5)))


# --- composition -------------------------------------------------------------


def test_composition_examples():
    p = DiamondParams(F(2, 3), F(1, 2), 0)
    r = verify_composition(ONES3, p, p)
    assert_exact_pass(r)
    p1, p2 = DiamondParams(2, F(1, 3), 1), DiamondParams(3, F(1, 2), 1)
    assert_exact_pass(verify_composition(rand_grid(2, 10), p1, p2))
    p1 = DiamondParams(F(1, 3), F(2, 5), F(1, 2))
    p2 = DiamondParams(F(3, 7), F(1, 6), F(1, 2))
    assert_exact_pass(verify_composition(rand_grid(3, 16), p1, p2))


def test_composition_gamma_mismatch():
    with pytest.raises(GammaMismatch):
        verify_composition(ONES3, DiamondParams(1, 1, F(1, 2)), DiamondParams(1, 1, F(1, 3)))


# --- Leibniz -----------------------------------------------------------------


def test_leibniz_ramp_hand_computation():
    p = DiamondParams(1, 1, 1)
    f = GridFunction.constant(1, 3)
    g = GridFunction.of([0, 1, 2])
    lhs = diamond_fractional_sum(multiply(f, g), p)[2]
    assert lhs == 0 + 1 + 2 == 3
    # k=0: 1 * 2 * 3, k=1: -1 * 1 * 3, k=2: 1 * 0 * 1
    assert leibniz_rhs(f, g, p, 2) == 2 * 3 - 1 * 3 + 0 == 3
    assert_exact_pass(verify_leibniz(f, g, p))


def test_leibniz_constants_reduce_to_closed_form():
    p = DiamondParams(F(1, 3), F(3, 4), F(1, 4))
    one = GridFunction.constant(1, 6)
    for m in range(6):
        expected = F(1, 4) * constant_sum_closed_form(F(1, 3), m, 1) + F(3, 4) * constant_sum_closed_form(
            F(3, 4), m, 1
        )
        assert leibniz_rhs(one, one, p, m) == expected
    assert_exact_pass(verify_leibniz(one, one, p))


def test_leibniz_nabla_constant_g():
    f = rand_grid(8, 7)
    c = F(-5, 3)
    g = GridFunction.constant(c, 7)
    p = DiamondParams(F(1, 2), F(2, 5), 0)
    nabla = diamond_fractional_sum(f, p)
    assert [leibniz_rhs(f, g, p, m) for m in range(7)] == [c * v for v in nabla.samples]


def test_leibniz_random_n12():
    f, g = rand_grid(21, 12), rand_grid(22, 12)
    assert_exact_pass(verify_leibniz(f, g, DiamondParams(F(1, 3), F(2, 5), F(1, 2))))


def test_leibniz_index_checks():
    with pytest.raises(IndexOutOfRange):
        leibniz_rhs(ONES3, ONES3, HALF, 3)
    with pytest.raises(ValueError):
        leibniz_rhs(ONES3, ONES3, HALF, 2, cap=1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 10), orders, orders, gammas, st.integers(1, 8))
def test_leibniz_tail_terms_vanish(seed, n, a, b, gamma, extra):
    f, g = rand_grid(seed, n), rand_grid(seed + 1, n)
    p = DiamondParams(a, b, gamma)
    for m in range(n):
        assert leibniz_rhs(f, g, p, m) == leibniz_rhs(f, g, p, m, cap=m + extra)


def test_leibniz_values_above_one_still_hold():
    # the identity is algebraic in the order, so orders >= 1 pass too
    f, g = rand_grid(31, 9), rand_grid(32, 9)
    assert_exact_pass(verify_leibniz(f, g, DiamondParams(F(5, 4), F(7, 3), F(3, 4))))


# --- reduction ---------------------------------------------------------------


def test_reductions():
    f = rand_grid(41, 11)
    p = DiamondParams(F(2, 5), F(3, 4), F(1, 2))
    r1 = verify_reduction(f, p, 1)
    r0 = verify_reduction(f, p, 0)
    assert_exact_pass(r1)
    assert_exact_pass(r0)
    assert r1.theorem is Theorem.REDUCTION_GAMMA1 and r0.theorem is Theorem.REDUCTION_GAMMA0
    assert diamond_fractional_sum(f, DiamondParams(p.alpha, p.beta, 1)).samples == delta_fractional_sum(f, p.alpha).samples


# --- exact-mode theorem property ----------------------------------------------


@settings(max_examples=30, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=8), st.lists(rationals, min_size=8, max_size=8),
       orders, orders, orders, orders, gammas)
def test_all_checks_exact(fv, gv, a1, b1, a2, b2, gamma):
    f = GridFunction.of(fv)
    g = GridFunction.of(gv[: len(fv)])
    p1, p2 = DiamondParams(a1, b1, gamma), DiamondParams(a2, b2, gamma)
    for report in (
        verify_linearity(f, g, p1),
        verify_constant(gv[0], p1, len(fv)),
        verify_coincidence(f, a2),
        verify_composition(f, p1, p2),
        verify_leibniz(f, g, p1),
    ):
        assert_exact_pass(report)


# --- float mode ----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 5, 12])
def test_float_suite_small_grids(n):
    for seed in range(5):
        reports = run_suite(SuiteConfig(F(1, 3), F(5, 4), F(1, 4), n, seed=seed, mode=Mode.FLOAT))
        for r in reports:
            assert r.passed, r.to_dict()
            assert r.params["mode"] == "float"


def test_float_tolerance_is_relative():
    f = GridFunction.of([1e6, -3e6, 2e6, 5.0])
    r = verify_coincidence(f, 0.4)
    lhs = delta_sum_by_definition(f, 0.4).samples
    assert r.tolerance == pytest.approx(DEFAULT_FLOAT_RTOL * (1 + max(abs(x) for x in lhs)))
    assert r.passed == (r.max_abs_error <= r.tolerance)


def test_float_failure_carries_witness():
    r = verify_coincidence(GridFunction.of([1.0, 2.0, 3.0]), 0.5, rtol=0.0)
    assert not r.passed
    assert r.witness is not None
    assert abs(r.witness.lhs - r.witness.rhs) == r.max_abs_error


# --- serialization ---------------------------------------------------------------


def test_report_json_schema_exact():
    r = run_suite(SuiteConfig(F(1, 3), F(2, 5), F(1, 2), 6, seed=9, theorems=(Theorem.COMPOSITION,)))[0]
    doc = json.loads(json.dumps(r.to_dict()))
    assert set(doc) == {"theorem", "params", "max_abs_error", "tolerance", "passed", "witness"}
    assert set(doc["params"]) == {"alpha", "beta", "gamma", "n", "mode", "seed"}
    assert doc["theorem"] == "composition"
    assert doc["params"]["alpha"] == ["1/3", "2/5"] and doc["params"]["beta"] == ["2/5", "1/3"]
    assert doc["params"]["gamma"] == "1/2" and doc["params"]["seed"] == 9
    assert doc["max_abs_error"] == "0" and doc["witness"] is None


def test_report_json_float_roundtrip():
    r = verify_coincidence(GridFunction.of([0.1, 0.2, 0.7]), 1 / 3, rtol=0.0)
    doc = json.loads(json.dumps(r.to_dict()))
    assert doc["max_abs_error"] == r.max_abs_error
    assert doc["witness"]["lhs"] == r.witness.lhs
    assert doc["params"]["alpha"] == 1 / 3


def test_exact_witness_serialized_as_rationals():
    from dfc import inject_weight_fault

    with inject_weight_fault(1, delta=F(1, 10**6)):
        r = verify_constant(1, DiamondParams(F(1, 2), F(1, 2), 1), 3)
    doc = r.to_dict()
    assert not r.passed
    assert doc["max_abs_error"] == "1/1000000"
    assert doc["witness"] == {"index": 1, "lhs": "1500001/1000000", "rhs": "3/2"}
