"""Kummer covers: Galois action, trace splitting, etale base change."""

import random
from fractions import Fraction as Fr

import pytest

from wittlab.errors import (DivisorNotCompatible, OrderDivisibleByP,
                            WittlabError)
from wittlab.rings import GF, LaurentRing
from wittlab import kummer as km
from wittlab import witt as W


def affine_line(field):
    return LaurentRing(field, ("x",), (0,), None)


def test_cover_construction_guards():
    with pytest.raises(OrderDivisibleByP):
        km.KummerCover(affine_line(GF(2)), 0, 2)
    with pytest.raises(WittlabError):
        km.KummerCover(affine_line(GF(2)), 0, 3)  # F_2 lacks cube roots
    cov = km.KummerCover(affine_line(GF(4)), 0, 3)
    assert GF(4).multiplicative_order(cov.zeta) == 3


def test_galois_action_basics():
    F = GF(4)
    cov = km.KummerCover(affine_line(F), 0, 3)
    B = cov.cover
    y = B.monomial((1,))
    assert cov.galois_on_witt(W.teichmuller(B, y, 3)) == \
        W.teichmuller(B, B.scalar_mul(cov.zeta, y), 3)
    rng = random.Random(40)
    for _ in range(100):
        w = W.WittVector(B, tuple(B.random_element(rng) for _ in range(3)))
        assert cov.galois_on_witt(w, 3) == w
        assert cov.galois_on_witt(cov.galois_on_witt(w, 1), 2) == w


def test_invariants_descend_to_base():
    F = GF(4)
    cov = km.KummerCover(affine_line(F), 0, 3)
    B = cov.cover
    rng = random.Random(41)
    for _ in range(200):
        w = W.WittVector(B, tuple(B.random_element(rng) for _ in range(2)))
        if cov.is_invariant(w):
            assert all(cov.is_base_elt(c) for c in w.components)
    # pullbacks are always invariant
    A = cov.base
    for _ in range(50):
        a = W.WittVector(A, tuple(A.random_element(rng) for _ in range(3)))
        assert cov.is_invariant(cov.pullback_section(a))


def test_pullback_divisor_examples():
    F = GF(4)
    cov = km.KummerCover(affine_line(F), 0, 3)
    assert cov.pullback_divisor((Fr(1, 3),)) == (Fr(1),)
    assert cov.pullback_divisor((Fr(2, 3),)) == (Fr(2),)
    assert cov.pullback_divisor((Fr(0),)) == (Fr(0),)
    with pytest.raises(DivisorNotCompatible):
        cov.pullback_divisor((Fr(1, 2),))


def test_pullback_preserves_membership():
    F = GF(4)
    cov = km.KummerCover(affine_line(F), 0, 3)
    rng = random.Random(42)
    D = (Fr(2, 3),)
    for _ in range(100):
        phi = km.random_affine_member(cov.base, D, 2, rng)
        cov.pullback_section(phi, D)  # MembershipViolation = failure


@pytest.mark.parametrize("p,ell,q", [(2, 3, 4), (3, 2, 3)])
def test_trace_splits_pullback(p, ell, q):
    F = GF(q, p=p)
    cov = km.KummerCover(affine_line(F), 0, ell)
    rng = random.Random(43)
    D = (Fr(1, ell),)
    for n in (1, 2, 3):
        for _ in range(60):
            phi = km.random_affine_member(cov.base, D, n, rng)
            assert cov.trace(cov.pullback_section(phi, D), D) == phi


def test_trace_special_values():
    F = GF(4)
    cov = km.KummerCover(affine_line(F), 0, 3)
    B = cov.cover
    y = B.monomial((1,))
    # character sum: T(underline y) = 0
    assert cov.trace(W.teichmuller(B, y, 3)).is_zero()
    # fixed vector: T(1) = 1
    assert cov.trace(W.witt_one(B, 3)) == W.witt_one(cov.base, 3)


def test_trace_projection_is_idempotent_with_invariant_image():
    F = GF(3)
    cov = km.KummerCover(affine_line(F), 0, 2)
    B = cov.cover
    rng = random.Random(44)
    for _ in range(100):
        w = W.WittVector(B, tuple(B.random_element(rng) for _ in range(2)))
        tw = cov.pullback_section(cov.trace(w))
        assert cov.pullback_section(cov.trace(tw)) == tw
        assert cov.is_invariant(tw)
        if cov.is_invariant(w):
            assert tw == w


def test_trace_lands_in_section_space():
    F = GF(4)
    cov = km.KummerCover(affine_line(F), 0, 3)
    rng = random.Random(45)
    D = (Fr(1, 3),)
    fD = cov.pullback_divisor(D)
    for _ in range(100):
        beta = km.random_affine_member(cov.cover, fD, 2, rng)
        cov.trace(beta, D)  # MembershipViolation = failure


def test_etale_extension_checks():
    # ranks and separability across several (p, l)
    for q, ell in [(2, 3), (2, 5), (3, 2), (3, 5), (5, 3)]:
        ext = km.EtaleExtension(affine_line(GF(q)), ell)
        assert ext.rank == ell - 1
        assert ext.coeff_ring.is_separable_modulus()
    with pytest.raises(WittlabError):
        km.EtaleExtension(affine_line(GF(3)), 3)  # l = p is not etale


def test_etale_pullback_iso_small():
    ext = km.EtaleExtension(affine_line(GF(3)), 2)  # rank 1: C = A
    ok, recs = km.etale_pullback_iso_check(ext, (Fr(1, 2),), 2, window=1)
    assert ok and recs
    ext = km.EtaleExtension(affine_line(GF(2)), 3)
    ok, recs = km.etale_pullback_iso_check(ext, (Fr(1, 3),), 2, window=1)
    assert ok and recs
    for r in recs:
        assert r["lattice_match"] and r["surjective"]
