"""Cyclic Kummer covers, the Galois trace on Witt vectors, and etale
base change of Witt divisorial section spaces.

A degree-l cover adjoins an l-th root y of one chart coordinate (or
unit) x, with l prime to p and a primitive l-th root of unity zeta in
the coefficient field.  The cover ring is again a Laurent ring: the
ramified variable is renamed y and the embedding of the base sends
x to y^l, i.e. multiplies its exponent by l.  The generator sigma of
the Galois group acts by y -> zeta*y, hence on a monomial by the
character zeta^(y-exponent); on Witt vectors it acts componentwise.

The trace

    T(beta) = (1/|G|) * sum_{sigma in G} W(sigma)(beta)

splits the pullback of level-n section spaces.  1/|G| is the honest
multiplicative inverse of l*1 in W_n(F_q), produced by Newton lifting,
not a Teichmüller guess.

Divisors here are affine: one exact rational coefficient per variable
of the chart ring, supported on coordinate variables only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

from . import witt
from .errors import (ChartMismatch, DivisorNotCompatible, MembershipViolation,
                     OrderDivisibleByP, WittlabError)
from .rings import LaurentRing, cyclotomic_quotient


# ---------------------------------------------------------------------------
# Affine membership (chart-local divisor bookkeeping)
# ---------------------------------------------------------------------------


def affine_floors(D, p, m):
    return tuple(floor(p ** m * Fraction(c)) for c in D)


def affine_membership(ring, elt, D, p, m):
    """Level-m membership over an affine chart ring.

    Only coordinate variables (min exponent 0) carry divisor data; the
    divisor must vanish on unit variables.
    """
    fl = affine_floors(D, p, m)
    for exps, _ in elt:
        for j, lo in enumerate(ring.min_exps):
            if lo is None:
                continue
            if exps[j] + fl[j] < 0:
                return False
    return True


def witt_affine_member(ring, vector, D):
    p = ring.characteristic
    return all(affine_membership(ring, comp, D, p, m)
               for m, comp in enumerate(vector.components))


def random_affine_member(ring, D, n, rng, window=3, max_terms=2):
    """A random member of the level-n section space over the chart."""
    p = ring.characteristic
    comps = []
    for m in range(n):
        fl = affine_floors(D, p, m)
        pairs = []
        for _ in range(rng.randint(0, max_terms)):
            exps = []
            for j, lo in enumerate(ring.min_exps):
                low = -window if lo is None else max(lo, -fl[j])
                exps.append(rng.randint(low, window))
            pairs.append((ring.coeff.random_element(rng), tuple(exps)))
        comps.append(ring.laurent_make(pairs))
    vec = witt.WittVector(ring, tuple(comps))
    if not witt_affine_member(ring, vec, D):
        raise MembershipViolation("sampled vector fails membership")
    return vec


# ---------------------------------------------------------------------------
# Kummer covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KummerCover:
    """y^l = x over a Laurent chart ring, with mu_l Galois action."""

    base: LaurentRing
    var: int
    ell: int

    def __post_init__(self):
        p = self.base.characteristic
        if self.ell < 2:
            raise ValueError("cover degree must be at least 2")
        if gcd(self.ell, p) != 1:
            raise OrderDivisibleByP(
                f"cover degree {self.ell} is divisible by p={p}")
        if not self.base.coeff.has_root_of_unity(self.ell):
            raise WittlabError(
                f"{self.base.coeff} lacks a primitive {self.ell}-th root of "
                "unity; pick q with ell | q-1")

    @property
    def zeta(self):
        return self.base.coeff.root_of_unity(self.ell)

    @property
    def cover(self):
        names = list(self.base.names)
        names[self.var] = "y"
        return LaurentRing(self.base.coeff, tuple(names),
                           self.base.min_exps, self.base.degree_sum)

    # -- elements -----------------------------------------------------

    def pullback_elt(self, a):
        """The embedding A -> B, x -> y^l."""
        out = []
        for exps, c in a:
            new = list(exps)
            new[self.var] *= self.ell
            out.append((tuple(new), c))
        out.sort(key=lambda t: t[0])
        return tuple(out)

    def galois_elt(self, b, power=1):
        """sigma^power on a cover element: y -> zeta^power y."""
        F = self.base.coeff
        zeta = self.zeta
        out = []
        for exps, c in b:
            character = F.pow(zeta, (exps[self.var] * power) % self.ell)
            out.append((exps, F.mul(character, c)))
        return self.cover._canonical(dict(out))

    def is_base_elt(self, b):
        return all(exps[self.var] % self.ell == 0 for exps, _ in b)

    def to_base_elt(self, b):
        if not self.is_base_elt(b):
            raise ChartMismatch("element does not descend to the base ring")
        out = []
        for exps, c in b:
            new = list(exps)
            new[self.var] //= self.ell
            out.append((tuple(new), c))
        out.sort(key=lambda t: t[0])
        return tuple(out)

    # -- divisors -----------------------------------------------------

    def pullback_divisor(self, D):
        """f*D: the ramified coefficient is multiplied by l.

        Requires l*D integral along the ramified coordinate, which makes
        the pullback Cartier there.
        """
        coeffs = [Fraction(c) for c in D]
        scaled = coeffs[self.var] * self.ell
        if scaled.denominator != 1:
            raise DivisorNotCompatible(
                f"l*D not integral along the ramified coordinate: {scaled}")
        coeffs[self.var] = scaled
        return tuple(coeffs)

    # -- Witt level ----------------------------------------------------

    def pullback_section(self, vector, D=None):
        """W_n O(D) over the base into W_n O(f*D) over the cover.

        Membership is asserted on both sides when a divisor is given.
        """
        if D is not None and not witt_affine_member(self.base, vector, D):
            raise MembershipViolation("input is not a section of W_n O(D)")
        out = witt.WittVector(self.cover,
                              tuple(self.pullback_elt(c)
                                    for c in vector.components))
        if D is not None:
            fD = self.pullback_divisor(D)
            if not witt_affine_member(self.cover, out, fD):
                raise MembershipViolation("pullback left the section space")
        return out

    def galois_on_witt(self, vector, power=1):
        """W(sigma^power): componentwise, a ring automorphism of W_n(B)."""
        return witt.WittVector(vector.ring,
                               tuple(self.galois_elt(c, power)
                                     for c in vector.components))

    def inverse_group_order(self, n):
        """(l * 1)^-1 in W_n(F_q), Newton-lifted, embedded as constants."""
        F = self.base.coeff
        ell_w = witt.witt_int(F, n, self.ell)
        inv = witt.witt_inverse(ell_w)
        ring = self.cover
        return witt.WittVector(ring, tuple(ring.const(c)
                                           for c in inv.components))

    def trace(self, vector, D=None):
        """T = (1/|G|) sum_sigma W(sigma): the splitting of the pullback.

        Returns a Witt vector over the base ring; membership in W_n O(D)
        is asserted when a divisor is given.
        """
        n = vector.length
        acc = witt.witt_zero(vector.ring, n)
        for k in range(self.ell):
            acc = witt.witt_add(acc, self.galois_on_witt(vector, k))
        averaged = witt.witt_mul(self.inverse_group_order(n), acc)
        down = witt.WittVector(self.base,
                               tuple(self.to_base_elt(c)
                                     for c in averaged.components))
        if D is not None and not witt_affine_member(self.base, down, D):
            raise MembershipViolation("trace left the section space")
        return down

    def is_invariant(self, vector):
        return self.galois_on_witt(vector) == vector


# ---------------------------------------------------------------------------
# Finite etale extensions A -> A[z]/(z^(l-1) + ... + 1)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EtaleExtension:
    """Base change along A -> C = A[z]/(z^(l-1)+...+1), l prime to p."""

    base: LaurentRing
    ell: int

    def __post_init__(self):
        p = self.base.characteristic
        if gcd(self.ell, p) != 1:
            raise WittlabError("l must be prime to p for an etale extension")
        if not self.coeff_ring.is_separable_modulus():
            raise WittlabError("modulus is not separable; extension not "
                               "etale")  # pragma: no cover

    @property
    def coeff_ring(self):
        return cyclotomic_quotient(self.base.coeff, self.ell)

    @property
    def ring(self):
        return LaurentRing(self.coeff_ring, self.base.names,
                           self.base.min_exps, self.base.degree_sum)

    @property
    def rank(self):
        return self.ell - 1

    def pullback_elt(self, a):
        R = self.coeff_ring
        C = self.ring
        return C._canonical({exps: R.element([c] + [self.base.coeff.zero]
                                             * (self.rank - 1))
                             for exps, c in a})

    def pullback_witt(self, vector):
        return witt.WittVector(self.ring,
                               tuple(self.pullback_elt(c)
                                     for c in vector.components))


def _affine_slot_admissible(ring, e, m, D, p):
    scaled = [Fraction(x) * p ** m for x in e]
    if any(x.denominator != 1 for x in scaled):
        return False
    u = tuple(int(x) for x in scaled)
    fl = affine_floors(D, p, m)
    return all(u[j] + fl[j] >= 0
               for j, lo in enumerate(ring.min_exps) if lo is not None)


def _affine_admissible_slots(ring, e, n, D, p):
    return tuple(m for m in range(n)
                 if _affine_slot_admissible(ring, e, m, D, p))


def etale_pullback_iso_check(ext, D, n, window=1, closure_bound=2 ** 16):
    """Does W_n(C) tensor W_n O_A(D) hit all of W_n O_C(D), degree by degree?

    For each multidegree in the window the two sides are compared by
    order (the lattice of admissible slots is the same on both sides
    because an etale pullback leaves divisor coefficients unchanged) and
    the natural map is shown surjective by closing the set
    {scalar * pullback(generator)} under Witt addition in the
    coefficient picture.  Orders equal + surjective = bijective.

    Returns (ok, records); on failure the offending degree is recorded.
    """
    A = ext.base
    R = ext.coeff_ring
    p = A.characteristic
    q = A.coeff.q
    calc = witt.witt_calc(R, n)
    denom = p ** (n - 1)
    span = window * denom
    records = []
    ok = True
    base_consts = list(A.coeff.elements())
    scalar_gens = [r for r in R.elements() if r != R.zero]
    for head in itertools.product(range(-span, span + 1),
                                  repeat=A.nvars):
        e = tuple(Fraction(x, denom) for x in head)
        slots = _affine_admissible_slots(A, e, n, D, p)
        if not slots:
            continue
        slots_c = _affine_admissible_slots(ext.ring, e, n, D, p)
        lattice_match = slots == slots_c
        log_q_base = len(slots)
        target_order = (q ** ext.rank) ** len(slots)
        if target_order > closure_bound:
            continue
        # image generators: V^k(teich(r)) * embedded base-slot generators
        gens = []
        for m in slots:
            for c in base_consts:
                if c == A.coeff.zero:
                    continue
                base_gen = tuple(R.element([c] + [A.coeff.zero]
                                           * (ext.rank - 1))
                                 if t == m else R.zero for t in range(n))
                for k in range(n - m):
                    for r in scalar_gens:
                        scalar = tuple(r if t == k else R.zero
                                       for t in range(n))
                        prod = _witt_tuple_mul(R, p, n, scalar, base_gen)
                        gens.append(prod)
        subgroup = {calc.zero}
        for g in gens:
            if g in subgroup:
                continue
            current = g
            addends = list(subgroup)
            while current not in subgroup:
                for s in addends:
                    subgroup.add(calc.add(s, current))
                current = calc.add(current, g)
        surjective = len(subgroup) == target_order
        supported = all(all(t[m] == R.zero for m in range(n)
                            if m not in slots) for t in subgroup)
        good = lattice_match and surjective and supported
        ok = ok and good
        records.append({"e": e, "slots": slots, "log_q_base": log_q_base,
                        "target_order": target_order,
                        "surjective": surjective,
                        "lattice_match": lattice_match,
                        "image_in_space": supported})
    return ok, records


def _witt_tuple_mul(ring, p, n, a, b):
    from . import universal
    polys = universal.prod_polys(p, n - 1)
    values = []
    out = []
    for m in range(n):
        values.append(a[m])
        values.append(b[m])
        out.append(witt.eval_poly(polys[m], ring, values))
    return tuple(out)
