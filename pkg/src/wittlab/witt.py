"""Truncated Witt vectors over pluggable characteristic-p base rings.

A length-n Witt vector is a tuple (a_0, ..., a_{n-1}) of base-ring
elements; addition and multiplication evaluate the cached universal
polynomials with coefficients reduced mod p in the base ring.  The
standard operators are provided:

* ``teichmuller(ring, a, n)`` -- the multiplicative lift (a, 0, ..., 0);
* ``verschiebung`` -- the additive shift, in both a length-increasing
  form W_n -> W_{n+m} and a fixed-length form with top truncation;
* ``frobenius_witt`` -- componentwise p-th power (the Frobenius on W_n
  of a characteristic-p ring);
* ``restrict`` -- truncation W_n -> W_m, the transition map of the
  inverse system.

All values are immutable and operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import universal
from .errors import LengthMismatch, RingMismatch, WittlabError


@dataclass(frozen=True)
class WittVector:
    ring: object
    components: tuple

    @property
    def length(self):
        return len(self.components)

    @property
    def p(self):
        return self.ring.characteristic

    def __add__(self, other):
        return witt_add(self, other)

    def __sub__(self, other):
        return witt_add(self, witt_neg(other))

    def __neg__(self):
        return witt_neg(self)

    def __mul__(self, other):
        return witt_mul(self, other)

    def is_zero(self):
        zero = self.ring.zero
        return all(c == zero for c in self.components)

    def __repr__(self):
        return f"W({', '.join(repr(c) for c in self.components)})"


def eval_poly(poly, ring, values):
    """Evaluate a universal polynomial in `ring`, coefficients mod p.

    `values` must be aligned with poly.names.  Terms touching a zero
    component are skipped without computing powers.
    """
    zero = ring.zero
    acc = zero
    for c, factors in poly.decoded_mod(ring.characteristic):
        term = ring.from_int(c)
        for idx, e in factors:
            v = values[idx]
            if v == zero:
                term = None
                break
            term = ring.mul(term, ring.pow(v, e))
        if term is not None:
            acc = ring.add(acc, term)
    return acc


def _check_pair(a, b):
    if not a.ring.compatible(b.ring):
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if a.length != b.length:
        raise LengthMismatch(f"lengths {a.length} != {b.length}")


def witt_zero(ring, n):
    return WittVector(ring, (ring.zero,) * n)


def witt_one(ring, n):
    return teichmuller(ring, ring.one, n)


def teichmuller(ring, a, n):
    """The multiplicative section a -> (a, 0, ..., 0)."""
    return WittVector(ring, (a,) + (ring.zero,) * (n - 1))


def witt_add(a, b):
    _check_pair(a, b)
    n = a.length
    ring = a.ring
    polys = universal.sum_polys(ring.characteristic, n - 1)
    values = []
    out = []
    for m in range(n):
        values.append(a.components[m])
        values.append(b.components[m])
        out.append(eval_poly(polys[m], ring, values))
    return WittVector(ring, tuple(out))


def witt_neg(a):
    ring = a.ring
    n = a.length
    polys = universal.neg_polys(ring.characteristic, n - 1)
    values = []
    out = []
    for m in range(n):
        values.append(a.components[m])
        out.append(eval_poly(polys[m], ring, values))
    return WittVector(ring, tuple(out))


def witt_sub(a, b):
    return witt_add(a, witt_neg(b))


def witt_mul(a, b):
    _check_pair(a, b)
    n = a.length
    ring = a.ring
    polys = universal.prod_polys(ring.characteristic, n - 1)
    values = []
    out = []
    for m in range(n):
        values.append(a.components[m])
        values.append(b.components[m])
        out.append(eval_poly(polys[m], ring, values))
    return WittVector(ring, tuple(out))


def verschiebung(a, m=1):
    """Length-increasing shift W_n -> W_{n+m}."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return WittVector(a.ring, (a.ring.zero,) * m + a.components)


def verschiebung_trunc(a, m=1):
    """Fixed-length shift: push components up m slots, drop overflow."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    n = a.length
    return WittVector(a.ring,
                      (a.ring.zero,) * min(m, n) + a.components[:n - m])


def frobenius_witt(a, times=1):
    """Componentwise p^times-th power (Frobenius at finite level)."""
    ring = a.ring
    p = ring.characteristic
    return WittVector(ring, tuple(ring.pow(c, p ** times)
                                  for c in a.components))


def restrict(a, m):
    """Truncation W_n -> W_m (the inverse-system map), m <= n."""
    if m > a.length:
        raise LengthMismatch(f"cannot restrict length {a.length} to {m}")
    return WittVector(a.ring, a.components[:m])


def witt_scalar_int(k, a):
    """k * a computed honestly by double-and-add in the additive group."""
    if k < 0:
        return witt_scalar_int(-k, witt_neg(a))
    acc = witt_zero(a.ring, a.length)
    addend = a
    while k:
        if k & 1:
            acc = witt_add(acc, addend)
        k >>= 1
        if k:
            addend = witt_add(addend, addend)
    return acc


def witt_int(ring, n, k):
    """The image of the integer k in W_n(ring)."""
    return witt_scalar_int(k, witt_one(ring, n))


def witt_inverse(a):
    """Multiplicative inverse by Newton lifting through the V-filtration.

    Needs a_0 invertible in the base ring.  Each iteration w <- w(2 - aw)
    doubles the depth to which a*w agrees with 1.
    """
    ring = a.ring
    n = a.length
    if a.components[0] == ring.zero:
        raise WittlabError("leading component is zero; not invertible")
    w = teichmuller(ring, ring.inverse(a.components[0]), n)
    two = witt_int(ring, n, 2)
    one = witt_one(ring, n)
    for _ in range(max(1, n.bit_length() + 1)):
        err = witt_sub(two, witt_mul(a, w))
        w = witt_mul(w, err)
        if witt_mul(a, w) == one:
            return w
    raise WittlabError("Newton lifting failed to converge")  # pragma: no cover


class WittCalc:
    """Memoized Witt arithmetic on raw component tuples over F_q.

    Čech enumeration adds the same small set of tuples over and over;
    caching pair sums makes the brute-force passes cheap.  Tuples are
    full length n with entries in [0, q).
    """

    def __init__(self, field, n):
        self.field = field
        self.n = n
        self.p = field.characteristic
        self.sum_polys = universal.sum_polys(self.p, n - 1)
        self.neg_polys = universal.neg_polys(self.p, n - 1)
        self.zero = (field.zero,) * n
        self._add_memo = {}
        self._neg_memo = {}

    def add(self, a, b):
        key = (a, b) if a <= b else (b, a)
        out = self._add_memo.get(key)
        if out is None:
            F = self.field
            values = []
            comps = []
            for m in range(self.n):
                values.append(key[0][m])
                values.append(key[1][m])
                comps.append(eval_poly(self.sum_polys[m], F, values))
            out = tuple(comps)
            self._add_memo[key] = out
        return out

    def neg(self, a):
        out = self._neg_memo.get(a)
        if out is None:
            F = self.field
            values = []
            comps = []
            for m in range(self.n):
                values.append(a[m])
                comps.append(eval_poly(self.neg_polys[m], F, values))
            out = tuple(comps)
            self._neg_memo[a] = out
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scalar(self, k, a):
        if k < 0:
            return self.scalar(-k, self.neg(a))
        acc = self.zero
        addend = a
        while k:
            if k & 1:
                acc = self.add(acc, addend)
            k >>= 1
            if k:
                addend = self.add(addend, addend)
        return acc

    def p_mult(self, a):
        return self.scalar(self.p, a)


_calc_cache = {}


def witt_calc(field, n):
    key = (field, n)
    calc = _calc_cache.get(key)
    if calc is None:
        calc = WittCalc(field, n)
        _calc_cache[key] = calc
    return calc
