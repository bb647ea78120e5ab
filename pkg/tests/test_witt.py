"""Witt vector arithmetic and the standard operator identities."""

import random

import pytest

from wittlab.errors import LengthMismatch, RingMismatch
from wittlab.rings import GF, function_field_ring
from wittlab import witt as W


def rand_vec(F, n, rng):
    return W.WittVector(F, tuple(F.random_element(rng) for _ in range(n)))


def test_w2_f2_one_plus_one():
    F = GF(2)
    one = W.WittVector(F, (1, 0))
    assert (one + one).components == (0, 1)


def test_additive_identity_100_samples():
    F = GF(4)
    rng = random.Random(0)
    zero = W.witt_zero(F, 3)
    for _ in range(100):
        a = rand_vec(F, 3, rng)
        assert a + zero == a


def test_module_action_pattern():
    F = GF(4)
    rng = random.Random(1)
    for _ in range(100):
        b = F.random_element(rng)
        c = rand_vec(F, 3, rng)
        lhs = W.teichmuller(F, b, 3) * c
        rhs = W.WittVector(F, tuple(
            F.mul(F.pow(b, 2 ** i), c.components[i]) for i in range(3)))
        assert lhs == rhs


def test_fv_vf_equals_p():
    F = GF(4)
    rng = random.Random(2)
    for _ in range(100):
        a = rand_vec(F, 3, rng)
        pa = W.witt_scalar_int(2, a)
        assert W.frobenius_witt(W.verschiebung_trunc(a)) == pa
        assert W.verschiebung_trunc(W.frobenius_witt(a)) == pa


def test_teichmuller_one_is_unit():
    F = GF(9)
    one = W.witt_one(F, 4)
    rng = random.Random(3)
    for _ in range(50):
        a = rand_vec(F, 4, rng)
        assert a * one == a


def test_verschiebung_twist_identity():
    """V^m(underline b) * phi = V^m(underline b * F^m phi)."""
    F = GF(4)
    rng = random.Random(4)
    n = 3
    for _ in range(100):
        b = F.random_element(rng)
        phi = rand_vec(F, n, rng)
        m = rng.randint(0, n - 1)
        vb = W.verschiebung(W.teichmuller(F, b, n - m), m)
        lhs = vb * phi
        inner = W.teichmuller(F, b, n - m) * \
            W.frobenius_witt(W.restrict(phi, n - m), m)
        assert lhs == W.verschiebung(inner, m)


def test_frobenius_is_ring_hom_and_teich_compatible():
    F = GF(4)
    rng = random.Random(5)
    for _ in range(100):
        a, b = rand_vec(F, 3, rng), rand_vec(F, 3, rng)
        assert W.frobenius_witt(a + b) == \
            W.frobenius_witt(a) + W.frobenius_witt(b)
        assert W.frobenius_witt(a * b) == \
            W.frobenius_witt(a) * W.frobenius_witt(b)
        x = F.random_element(rng)
        assert W.frobenius_witt(W.teichmuller(F, x, 3)) == \
            W.teichmuller(F, F.pow(x, 2), 3)


def test_restriction_is_transition_map():
    F = GF(4)
    rng = random.Random(6)
    for _ in range(50):
        a, b = rand_vec(F, 4, rng), rand_vec(F, 4, rng)
        assert W.restrict(a + b, 2) == W.restrict(a, 2) + W.restrict(b, 2)
        assert W.restrict(a * b, 2) == W.restrict(a, 2) * W.restrict(b, 2)


def test_neg_is_additive_inverse_over_extension_of_f4():
    F = GF(4)
    rng = random.Random(7)
    zero = W.witt_zero(F, 3)
    for _ in range(100):
        a = rand_vec(F, 3, rng)
        assert a + W.witt_neg(a) == zero


def test_mismatch_errors():
    F, G_ = GF(4), GF(2)
    a = W.WittVector(F, (1, 0))
    b = W.WittVector(G_, (1, 0))
    with pytest.raises(RingMismatch):
        W.witt_add(a, b)
    c = W.WittVector(F, (1, 0, 0))
    with pytest.raises(LengthMismatch):
        W.witt_add(a, c)


def test_witt_inverse_in_w3():
    F = GF(4)
    for k in (1, 3, 5, 7):
        a = W.witt_int(F, 3, k)
        inv = W.witt_inverse(a)
        assert a * inv == W.witt_one(F, 3)


def test_witt_calc_matches_vector_path():
    F = GF(9)
    calc = W.witt_calc(F, 2)
    rng = random.Random(8)
    for _ in range(150):
        a = tuple(F.random_element(rng) for _ in range(2))
        b = tuple(F.random_element(rng) for _ in range(2))
        va, vb = W.WittVector(F, a), W.WittVector(F, b)
        assert calc.add(a, b) == (va + vb).components
        assert calc.neg(a) == W.witt_neg(va).components
        assert calc.p_mult(a) == W.witt_scalar_int(3, va).components


def test_laurent_coefficients_work_too():
    F = GF(4)
    K = function_field_ring(F, 1)
    rng = random.Random(9)
    zero = W.witt_zero(K, 2)
    for _ in range(50):
        a = W.WittVector(K, tuple(K.random_element(rng) for _ in range(2)))
        b = W.WittVector(K, tuple(K.random_element(rng) for _ in range(2)))
        assert a + b == b + a
        assert a + W.witt_neg(a) == zero
        assert a * (b + b) == a * b + a * b
