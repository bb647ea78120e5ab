"""Base rings: finite fields, quotient rings, Laurent chart rings."""

import random

import pytest

from wittlab.errors import ExponentOutOfChart
from wittlab.rings import (GF, LaurentRing, chart_ring, cyclotomic_quotient,
                           function_field_ring)
from wittlab import witt as W


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9, 25])
def test_field_axioms_sampled(q):
    F = GF(q)
    rng = random.Random(q)
    for _ in range(300):
        a, b, c = (F.random_element(rng) for _ in range(3))
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == F.zero
        assert F.mul(a, F.one) == a
    # p * 1 = 0
    total = F.zero
    for _ in range(F.characteristic):
        total = F.add(total, F.one)
    assert total == F.zero


def test_f4_modulus_is_fixed():
    assert GF(4).modulus == (1, 1, 1)  # t^2 + t + 1


@pytest.mark.parametrize("q,d", [(4, 2), (9, 2), (25, 2), (8, 3)])
def test_frobenius_order_and_fixed_field(q, d):
    F = GF(q)
    assert F.d == d
    for a in F.elements():
        x = a
        for _ in range(d):
            x = F.frobenius(x)
        assert x == a  # Frobenius has order dividing d
    # exactly F_p is fixed by one application
    fixed = [a for a in F.elements() if F.frobenius(a) == a]
    assert sorted(fixed) == list(range(F.characteristic))
    # and some element moves at every proper divisor of d, so order is d
    for e in range(1, d):
        moved = any(_frob_pow(F, a, e) != a for a in F.elements())
        assert moved


def _frob_pow(F, a, e):
    for _ in range(e):
        a = F.frobenius(a)
    return a


@pytest.mark.parametrize("q,ell,has", [(4, 3, True), (4, 2, False),
                                       (3, 2, True), (9, 4, True),
                                       (5, 3, False), (25, 3, True)])
def test_roots_of_unity(q, ell, has):
    F = GF(q)
    assert F.has_root_of_unity(ell) is has
    if has:
        z = F.root_of_unity(ell)
        assert F.multiplicative_order(z) == ell


def test_frobenius_is_ring_endomorphism():
    F = GF(9)
    rng = random.Random(0)
    for _ in range(200):
        a, b = F.random_element(rng), F.random_element(rng)
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a),
                                                 F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a),
                                                 F.frobenius(b))


def test_cyclotomic_quotient_basics():
    C = cyclotomic_quotient(GF(3), 5)
    assert C.rank == 4
    assert C.is_separable_modulus()
    z = C.generator()
    assert C.pow(z, 5) == C.one
    assert C.pow(z, 1) != C.one
    # ring axioms sampled
    rng = random.Random(1)
    for _ in range(100):
        a, b, c = (C.random_element(rng) for _ in range(3))
        assert C.mul(a, C.add(b, c)) == C.add(C.mul(a, b), C.mul(a, c))
        assert C.mul(C.mul(a, b), c) == C.mul(a, C.mul(b, c))


def test_laurent_make_and_chart_errors():
    F = GF(4)
    ring = LaurentRing(F, ("u", "v"), (0, None), None)
    assert ring.laurent_make([(F.one, (0, 0))]) == ring.one
    elt = ring.laurent_make([(F.one, (2, -1))])
    assert ring.multidegree(elt) == (2, -1)
    with pytest.raises(ExponentOutOfChart):
        ring.laurent_make([(F.one, (-1, 0))])


def test_multidegree_conventions():
    F = GF(2)
    K = function_field_ring(F, 1)
    mono = K.monomial((2, -2))
    assert K.multidegree(mono) == (2, -2)
    mixed = K.add(K.monomial((1, -1)), K.monomial((0, 0)))
    assert K.multidegree(mixed) is None
    assert K.multidegree(K.zero) is None


def test_chart_ring_predicates():
    F = GF(2)
    U0 = chart_ring(F, 2, {0})
    assert U0.exponent_allowed((-3, 2, 1))
    assert not U0.exponent_allowed((1, -1, 0))
    assert not U0.exponent_allowed((1, 1, 0))  # degree sum must be 0


def test_graded_witt_components_stay_graded():
    """Homogeneous components of weight p^i e stay that way under + and *."""
    F = GF(4)
    K = function_field_ring(F, 1)
    rng = random.Random(9)
    p = 2
    for _ in range(150):
        e = (rng.randint(-2, 2),)
        e = e + (-e[0],)
        ep = (rng.randint(-2, 2),)
        ep = ep + (-ep[0],)
        n = 3

        def sample(degree):
            comps = []
            for i in range(n):
                exps = tuple(p ** i * x for x in degree)
                comps.append(K.monomial(exps, F.random_element(rng)))
            return W.WittVector(K, tuple(comps))

        a, b = sample(e), sample(e)
        total = W.witt_add(a, b)
        for i, comp in enumerate(total.components):
            deg = K.multidegree(comp)
            assert deg is None or deg == tuple(p ** i * x for x in e)
        c = sample(ep)
        prod = W.witt_mul(a, c)
        target = tuple(x + y for x, y in zip(e, ep))
        for i, comp in enumerate(prod.components):
            deg = K.multidegree(comp)
            assert deg is None or deg == tuple(p ** i * x for x in target)
