"""Frobenius, Verschiebung and restriction acting on cohomology.

Injectivity experiments on the top cohomology of negative twists on
P^N, at the classical level and at finite Witt level:

* level 1: H^N(P^N, O(-s)) has the monomial basis {x^w : w_j <= -1,
  sum w = -s}; the Frobenius sends x^w to x^(p w), which visibly maps
  basis to basis injectively;
* finite Witt level: injectivity of F (componentwise p-th power) and
  V (slot shift) on H^N of the graded complexes, decided by brute force
  because the groups are extensions rather than vector spaces, with the
  sufficient vanishing condition h^(N-1) reported alongside.

All induced maps are checked to commute with the Čech differentials
before anything is asserted about cohomology.
"""

from __future__ import annotations

from fractions import Fraction

from .cech import (GradedCechComplex, DEFAULT_BOUND, classical_h,
                   hN_support_degrees, les_order_prediction,
                   witt_cech_H_total)
from .divisors import RDivisor


def _neg_twist(N, s):
    return RDivisor((Fraction(-s),) + (Fraction(0),) * N)


def top_h_basis(N, s):
    """Monomial basis {w : w_j <= -1, sum w = -s} of H^N(P^N, O(-s))."""
    out = []

    def rec(prefix, remaining, left):
        if left == 1:
            if remaining <= -1:
                out.append(prefix + (remaining,))
            return
        # the other left-1 entries sum to at most -(left-1)
        w = -1
        while remaining - w <= -(left - 1):
            rec(prefix + (w,), remaining - w, left - 1)
            w -= 1

    rec((), -s, N + 1)
    return out


def frobenius_on_top_H(N, s, p):
    """The Frobenius H^N(O(-s)) -> H^N(O(-ps)) on the monomial basis.

    Returns the basis, the image assignment w -> p*w, and the verdict:
    injective iff the images are distinct members of the target basis
    (vacuously true when the domain vanishes).
    """
    basis = top_h_basis(N, s)
    target = set(top_h_basis(N, p * s))
    assignment = [(w, tuple(p * x for x in w)) for w in basis]
    images = [img for _, img in assignment]
    injective = (len(set(images)) == len(images)
                 and all(img in target for img in images))
    return {
        "N": N, "s": s, "p": p,
        "dim_domain": len(basis),
        "dim_target": len(target),
        "matrix_support": assignment,
        "injective": injective,
        "vacuous": not basis,
    }


# ---------------------------------------------------------------------------
# Cochain-level maps between graded complexes
# ---------------------------------------------------------------------------


def _map_cochain(comp_map, cochain):
    return tuple(comp_map(t) for t in cochain)


def _commutes_with_d(src, dst, comp_map, j):
    """Does the map commute with d^j on all generators of C^j?"""
    for g in src.generators(j):
        lhs = _map_cochain(comp_map, src.differential(j, g))
        rhs = dst.differential(j, _map_cochain(comp_map, g))
        if lhs != rhs:
            return False
    return True


def _injective_on_top_H(src, dst, comp_map):
    """Brute-force injectivity of the induced map H^N(src) -> H^N(dst)."""
    N = src.N
    if not _commutes_with_d(src, dst, comp_map, N - 1):
        raise AssertionError("map does not commute with differentials")
    cocycles = src.enumerate_cochains(N)  # d^N = 0
    im_src = src.image_subgroup(N - 1)
    im_dst = dst.image_subgroup(N - 1)
    for a in cocycles:
        if a in im_src:
            continue
        if _map_cochain(comp_map, a) in im_dst:
            return False
    return True


def _frobenius_comp(field):
    p = field.characteristic
    return lambda t: tuple(field.pow(c, p) for c in t)


def _verschiebung_comp(t):
    return (0,) + t


def frobenius_injective_on_witt_top_H(field, N, s, n, bound=DEFAULT_BOUND):
    """Injectivity of F: H^N(W_n O(-sH)) -> H^N(W_n O(-psH)), per degree.

    Returns (all_injective, per-degree records).  Degrees run over the
    certified H^N support of the source.
    """
    p = field.characteristic
    D = _neg_twist(N, s)
    comp_map = _frobenius_comp(field)
    records = []
    all_inj = True
    for e in sorted(hN_support_degrees(D, p, n)):
        src = GradedCechComplex(field, D, n, e, bound)
        dst = GradedCechComplex(field, D.scaled(p), n,
                                tuple(p * x for x in e), bound)
        inj = _injective_on_top_H(src, dst, comp_map)
        all_inj = all_inj and inj
        records.append({"e": e, "injective": inj})
    return all_inj, records


def verschiebung_on_H(field, N, s, n, bound=DEFAULT_BOUND):
    """Injectivity of V: H^N(F_* W_n O(-psH)) -> H^N(W_{n+1} O(-sH)).

    Brute force on graded pieces, together with the sufficient condition
    from the level filtration: h^(N-1)(O(-s)) = 0 forces injectivity.
    """
    p = field.characteristic
    D = _neg_twist(N, s)
    Dp = D.scaled(p)
    h_flank = classical_h(N, -s)[N - 1] if N >= 1 else 0
    degrees = set(hN_support_degrees(D, p, n + 1))
    degrees.update(tuple(Fraction(x, p) for x in f)
                   for f in hN_support_degrees(Dp, p, n))
    records = []
    all_inj = True
    for e in sorted(degrees):
        src = GradedCechComplex(field, Dp, n, tuple(p * x for x in e), bound)
        dst = GradedCechComplex(field, D, n + 1, e, bound)
        inj = _injective_on_top_H(src, dst, _verschiebung_comp)
        all_inj = all_inj and inj
        records.append({"e": e, "injective": inj})
    return {
        "N": N, "s": s, "n": n,
        "injective": all_inj,
        "flank_vanishes": h_flank == 0,
        "h_Nm1_of_minus_s": h_flank,
        "per_degree": records,
    }


def finite_level_torsion_probe(field, N, s, n, bound=DEFAULT_BOUND):
    """Torsion-freeness shadow of H^N(W_n O(-sH)) at a finite level.

    Reports the brute-force order against the filtration count
    d * sum_m h^N(O(-p^m s)), injectivity of F and of V into level n,
    the identity F(V_trunc(x)) = p x on all enumerated top cochains, and
    the p-power torsion profile log_p |H[p^k]|.
    """
    p = field.characteristic
    D = _neg_twist(N, s)
    expected = les_order_prediction(field, D, n, N)
    total = witt_cech_H_total(field, D, n, N, bound=bound)
    f_inj, f_records = frobenius_injective_on_witt_top_H(field, N, s, n,
                                                         bound)
    v_report = verschiebung_on_H(field, N, s, n - 1) if n >= 2 else None

    fv_identity = True
    profile = [0] * n
    for e in sorted(hN_support_degrees(D, p, n)):
        cx = GradedCechComplex(field, D, n, e, bound)
        calc = cx.calc
        comp_f = _frobenius_comp(field)
        cocycles = cx.enumerate_cochains(N)
        im = cx.image_subgroup(N - 1)
        for a in cocycles:
            shifted = tuple((0,) + t[:n - 1] for t in a)
            if _map_cochain(comp_f, shifted) != \
                    tuple(calc.p_mult(t) for t in a):
                fv_identity = False
        for k in range(1, n + 1):
            killed = sum(1 for a in cocycles
                         if tuple(calc.scalar(p ** k, t) for t in a) in im)
            profile[k - 1] += _exact_log_p(killed // len(im), p)

    return {
        "N": N, "s": s, "n": n, "q": field.q,
        "expected_log_order": None if expected is None else expected[0],
        "brute_log_order": total.log_p_order,
        "order_matches": (expected is not None
                          and expected[0] == total.log_p_order),
        "frobenius_injective": f_inj,
        "frobenius_per_degree": f_records,
        "verschiebung": v_report,
        "fv_equals_p": fv_identity,
        "torsion_profile_log_p": profile,
    }


def _exact_log_p(order, p):
    k = 0
    while order % p == 0:
        order //= p
        k += 1
    if order != 1:
        raise AssertionError(f"order not a power of {p}")
    return k
