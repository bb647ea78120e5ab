"""Teichmüller lifts of invertible-sheaf cocycles on P^N.

An invertible sheaf given by transition units f_ij on chart overlaps
lifts to a Witt-level cocycle by applying the multiplicative section
f -> (f, 0, ..., 0) to each transition.  Multiplicativity of the lift
makes the cocycle condition survive; this module verifies it by actual
Witt multiplication rather than assuming it.

For an integral divisor D the identification with the Witt divisorial
sheaf is concrete on every chart U_i: with f_i the local equation of D
there, a Witt vector phi is a section of W_n O(D) exactly when
underline(f_i) * phi has all components regular on U_i.
"""

from __future__ import annotations

import itertools

from . import divisors as dv
from . import witt
from .errors import NotACocycle, WittlabError
from .rings import function_field_ring


def standard_transitions(field, N, d):
    """Transition units (x_j/x_i)^d of O(d) on the standard cover."""
    ring = function_field_ring(field, N)
    out = {}
    for i in range(N + 1):
        for j in range(N + 1):
            if i == j:
                continue
            exps = [0] * (N + 1)
            exps[j] = d
            exps[i] = -d
            out[(i, j)] = ring.monomial(tuple(exps))
    return out


def _check_units(ring, transitions):
    for (i, j), f in transitions.items():
        if not ring.is_unit_monomial(f):
            raise WittlabError(f"transition ({i},{j}) is not a unit monomial")
        if (j, i) in transitions:
            prod = ring.mul(f, transitions[(j, i)])
            if prod != ring.one:
                raise NotACocycle(f"f_{i}{j} * f_{j}{i} != 1")


def cocycle_condition_holds(ring, transitions):
    """f_ij f_jk f_ki = 1 on every triple overlap, exactly."""
    indices = sorted({i for (i, _) in transitions} |
                     {j for (_, j) in transitions})
    for i, j, k in itertools.permutations(indices, 3):
        if (i, j) in transitions and (j, k) in transitions \
                and (k, i) in transitions:
            prod = ring.mul(ring.mul(transitions[(i, j)],
                                     transitions[(j, k)]),
                            transitions[(k, i)])
            if prod != ring.one:
                return False
    return True


def teichmuller_cocycle(field, N, transitions, n):
    """Lift a 1-cocycle of units to Witt level n and re-verify it there.

    Raises NotACocycle if the input (or, impossibly, the lift) fails the
    cocycle condition.
    """
    ring = function_field_ring(field, N)
    _check_units(ring, transitions)
    if not cocycle_condition_holds(ring, transitions):
        raise NotACocycle("input transitions violate the cocycle condition")
    lifted = {key: witt.teichmuller(ring, f, n)
              for key, f in transitions.items()}
    one = witt.witt_one(ring, n)
    indices = sorted({i for (i, _) in transitions} |
                     {j for (_, j) in transitions})
    for i, j, k in itertools.permutations(indices, 3):
        if (i, j) in lifted and (j, k) in lifted and (k, i) in lifted:
            prod = witt.witt_mul(witt.witt_mul(lifted[(i, j)],
                                               lifted[(j, k)]),
                                 lifted[(k, i)])
            if prod != one:
                raise NotACocycle(
                    f"Teichmüller lift fails on triple ({i},{j},{k})")
    return lifted


def local_equation(field, D, i):
    """f_i with div(f_i) = D on the chart U_i (D integral)."""
    if not D.is_integral():
        raise WittlabError("local equations need an integral divisor")
    ring = function_field_ring(field, D.N)
    exps = [int(c) for c in D.coeffs]
    exps[i] -= sum(exps)
    return ring.monomial(tuple(exps))


def div_vs_teichmuller(field, D, n, samples=200, rng=None, window=3):
    """Chartwise equality of W_n O(D) with underline(f_i^-1) W_n O_{U_i}.

    Samples both ways on every chart: members of the divisorial side
    must become regular after multiplication by underline(f_i), and
    regular vectors must become members after underline(f_i^-1).
    Returns True iff all samples agree.
    """
    if not D.is_integral():
        return False
    ring = function_field_ring(field, D.N)
    p = field.characteristic
    zero_D = dv.RDivisor((0,) * (D.N + 1))
    for i in range(D.N + 1):
        chart = frozenset({i})
        f_i = local_equation(field, D, i)
        f_i_inv = ring.monomial(tuple(-e for e in f_i[0][0]))
        lift = witt.teichmuller(ring, f_i, n)
        lift_inv = witt.teichmuller(ring, f_i_inv, n)
        for _ in range(samples):
            s = dv.random_section(field, chart, D, n, rng, window=window)
            regular = witt.witt_mul(lift, s.vector)
            for m, comp in enumerate(regular.components):
                if not dv.membership(comp, zero_D, p, 0, chart):
                    return False
            v = dv.random_chart_scalar(field, chart, D.N, n, rng,
                                       window=window)
            member = witt.witt_mul(lift_inv, v)
            for m, comp in enumerate(member.components):
                if not dv.membership(comp, D, p, m, chart):
                    return False
    return True
