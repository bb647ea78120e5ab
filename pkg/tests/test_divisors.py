"""Divisors, membership, section spaces, and the V-filtration orders."""

import random
from fractions import Fraction as Fr

import pytest

from wittlab.errors import ChartMismatch, ExponentOutOfChart
from wittlab.rings import GF, function_field_ring
from wittlab import divisors as dv
from wittlab import witt as W


def test_membership_examples():
    F = GF(2)
    K = function_field_ring(F, 1)
    D = dv.divisor(Fr(1, 2), 0)
    # constant is always a section for effective D
    assert dv.membership(K.monomial((0, 0)), D, 2, 0, {1})
    # x0^-1 x1 needs floor(p^m / 2) >= 1, so level 1 but not level 0
    phi = K.monomial((-1, 1))
    assert not dv.membership(phi, D, 2, 0, {1})
    assert dv.membership(phi, D, 2, 1, {1})
    # zero divisor: membership = regular on the chart
    Z = dv.divisor(0, 0)
    assert dv.membership(K.monomial((1, -1)), Z, 2, 5, {1})
    assert not dv.membership(K.monomial((-1, 1)), Z, 2, 5, {1})


def test_perturbation_invariance_examples():
    assert dv.perturbation_invariance(dv.divisor(Fr(1, 2), 0),
                                      dv.divisor(Fr(51, 100), 0), 2, 2)
    D = dv.divisor(Fr(1, 3), Fr(-2, 3))
    assert dv.perturbation_invariance(D, D, 3, 4)
    assert not dv.perturbation_invariance(dv.divisor(0, 0),
                                          dv.divisor(1, 0), 2, 1)
    with pytest.raises(ValueError):
        dv.perturbation_invariance(dv.divisor(1, 0), dv.divisor(0, 0), 2, 1)


def test_divisor_literals_round_trip():
    for text in ("3/2*H0 - 1/3*H1", "-2*H0", "0", "1*H0 + 5*H2"):
        D = dv.parse_divisor(text, N=2)
        again = dv.parse_divisor(dv.format_divisor(D), N=2)
        assert D == again


def test_section_constructor_validates_membership():
    F = GF(2)
    K = function_field_ring(F, 1)
    D = dv.divisor(Fr(1, 2), 0)
    # x0^-1 x1 is not a level-0 section
    with pytest.raises(dv.MembershipViolation):
        dv.witt_section(F, {1}, D, [K.monomial((-1, 1)), K.zero])
    # but is fine in the level-1 slot
    s = dv.witt_section(F, {1}, D, [K.zero, K.monomial((-1, 1))])
    assert s.level == 2


def test_section_add_and_scale_closure():
    F = GF(4)
    rng = random.Random(20)
    for N in (1, 2):
        coeffs = [Fr(rng.randint(-2, 2), rng.choice((1, 2, 3)))
                  for _ in range(N + 1)]
        D = dv.RDivisor(tuple(coeffs))
        charts = [frozenset({i}) for i in range(N + 1)]
        for _ in range(120):
            chart = charts[rng.randrange(len(charts))]
            s = dv.random_section(F, chart, D, 2, rng, window=2)
            t = dv.random_section(F, chart, D, 2, rng, window=2)
            dv.witt_section_add(s, t)  # MembershipViolation = failure
            sc = dv.random_chart_scalar(F, chart, N, 2, rng)
            dv.witt_section_scale(sc, s)


def test_scale_by_verschiebung_shifts_components():
    """V^m(underline b) scaling: leading zeros then twisted powers."""
    F = GF(4)
    K = function_field_ring(F, 1)
    rng = random.Random(21)
    D = dv.divisor(Fr(1, 2), Fr(1, 3))
    for _ in range(50):
        s = dv.random_section(F, frozenset({0}), D, 3, rng, window=2)
        b = K.monomial((-1, 1), F.random_element(rng))
        m = rng.randint(1, 2)
        scalar = W.verschiebung(W.teichmuller(K, b, 3 - m), m)
        out = dv.witt_section_scale(scalar, s)
        comps = out.components()
        assert all(c == K.zero for c in comps[:m])
        for i in range(m, 3):
            expect = K.mul(K.pow(b, 2 ** (i - m)),
                           K.pow(s.components()[i - m], 2 ** m))
            assert comps[i] == expect


def test_scale_rejects_non_chart_scalar():
    F = GF(2)
    K = function_field_ring(F, 1)
    D = dv.divisor(0, 0)
    s = dv.witt_section(F, {0}, D, [K.one, K.zero])
    bad = W.WittVector(K, (K.monomial((1, -1)), K.zero))  # pole off chart
    with pytest.raises(ChartMismatch):
        dv.witt_section_scale(bad, s)


def test_admissible_slots_are_upper_sets():
    rng = random.Random(22)
    for _ in range(300):
        D = dv.RDivisor((Fr(rng.randint(-4, 4), rng.choice((1, 2, 3))),
                         Fr(rng.randint(-4, 4), rng.choice((1, 2, 3)))))
        x = Fr(rng.randint(-12, 12), rng.choice((1, 2, 4)))
        e = (x, -x)
        p = rng.choice((2, 3))
        slots = dv.admissible_slots(e, 4, D, p, frozenset({0}))
        assert slots == tuple(range(4 - len(slots), 4))


def test_exact_sequence_orders_zero_divisor():
    # D = 0, full chart: constants at every level, orders q^m * q^n
    F = GF(4)
    D = dv.divisor(0, 0)
    ok, recs = dv.exact_sequence_orders(F, D, 2, 1, {0, 1}, window=1)
    assert ok
    at_zero = [r for r in recs if r["e"] == (Fr(0), Fr(0))][0]
    assert at_zero["log_q_total"] == 3
    assert at_zero["log_q_sub"] == 1
    assert at_zero["log_q_quot"] == 2


def test_exact_sequence_orders_half_integral_example():
    F = GF(4)
    D = dv.divisor(Fr(1, 2), 0)
    ok, recs = dv.exact_sequence_orders(F, D, 1, 1, {0, 1}, window=2)
    assert ok
    r = [x for x in recs if x["e"] == (Fr(1, 2), Fr(-1, 2))][0]
    # level-0 slot empty (e not integral): sub q, total q, quotient 1
    assert (r["log_q_total"], r["log_q_sub"], r["log_q_quot"]) == (1, 1, 0)
    assert r["V_injective"] and r["image_is_truncation_kernel"]


def test_exact_sequence_orders_random_divisors():
    F = GF(2)
    rng = random.Random(23)
    for _ in range(10):
        N = rng.choice((1, 2))
        D = dv.RDivisor(tuple(Fr(rng.randint(-3, 3), rng.choice((2, 3)))
                              for _ in range(N + 1)))
        chart = frozenset({rng.randrange(N + 1)})
        n, m = rng.choice(((1, 1), (1, 2), (2, 1)))
        ok, recs = dv.exact_sequence_orders(F, D, n, m, chart,
                                            window=2 if N == 2 else 4)
        assert ok, (D, chart, n, m)


def test_linear_equivalence_bijection():
    """x^u * : W_n O(D) -> W_n O(D - div(x^u)), membership both ways."""
    F = GF(4)
    K = function_field_ring(F, 1)
    rng = random.Random(24)
    D = dv.divisor(2, -1)
    u = (1, -1)
    unit = dv.linear_equivalence_unit(F, 1, u)
    D2 = dv.linear_shift_divisor(D, u)
    lift = W.teichmuller(K, unit, 2)
    lift_inv = W.teichmuller(K, K.monomial((-1, 1)), 2)
    for chart in (frozenset({0}), frozenset({1})):
        for _ in range(60):
            s = dv.random_section(F, chart, D, 2, rng)
            moved = W.witt_mul(lift, s.vector)
            # must land exactly in the shifted space
            t = dv.WittSection(F, chart, D2, moved)
            back = W.witt_mul(lift_inv, t.vector)
            assert back == s.vector


def test_multidegree_window_shape():
    window = dv.multidegree_window(1, 2, 2, 1)
    assert (Fr(1, 2), Fr(-1, 2)) in window
    assert all(sum(e) == 0 for e in window)
    assert len({e for e in window}) == len(window)
