"""R-divisors on P^N and Witt divisorial section spaces on chart covers.

Divisors are exact rational combinations of the N+1 coordinate
hyperplanes H_j = {x_j = 0}; their fractional parts are automatically
simple normal crossing.  A Witt section of level n over the chart U_I
is a vector (phi_0, ..., phi_{n-1}) of degree-0 Laurent elements where
every monomial x^u of phi_m satisfies

    u_j + floor(p^m * a_j) >= 0   for all j not in I.

That is the level-m membership test; the product decomposition of the
section space into the classical twists floor(p^m D) underlies all the
order bookkeeping here.

Only exact rationals appear: any real coefficient is equivalent to a
nearby rational at a fixed finite level, since only finitely many
floors matter (see ``perturbation_invariance``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from . import witt
from .errors import ChartMismatch, MembershipViolation
from .rings import function_field_ring


@lru_cache(maxsize=None)
def _floors(coeffs, p, m):
    return tuple(floor(p ** m * c) for c in coeffs)


@dataclass(frozen=True)
class RDivisor:
    """sum_j a_j * H_j on P^N with exact rational coefficients."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           tuple(Fraction(c) for c in self.coeffs))

    @property
    def N(self):
        return len(self.coeffs) - 1

    def scaled(self, k):
        return RDivisor(tuple(Fraction(k) * c for c in self.coeffs))

    def plus(self, other):
        return RDivisor(tuple(a + b for a, b in zip(self.coeffs,
                                                    other.coeffs)))

    def floors(self, p, m):
        """Coefficientwise floor of p^m * D, as integers."""
        return _floors(self.coeffs, p, m)

    def floor_degree(self, p, m):
        """Degree of the invertible sheaf attached to floor(p^m D)."""
        return sum(self.floors(p, m))

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def leq(self, other):
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def __str__(self):
        return format_divisor(self)


def divisor(*coeffs):
    return RDivisor(tuple(coeffs))


def format_divisor(D):
    parts = []
    for j, c in enumerate(D.coeffs):
        if c == 0:
            continue
        parts.append(f"{c}*H{j}")
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return out


def parse_divisor(text, N=None):
    """Parse literals like ``3/2*H0 - 1/3*H1`` or ``-2*H0``, or ``0``."""
    text = text.replace(" ", "")
    if text in ("0", ""):
        if N is None:
            raise ValueError("need N to parse the zero divisor")
        return RDivisor((Fraction(0),) * (N + 1))
    coeffs = {}
    body = text.replace("-", "+-")
    for chunk in body.split("+"):
        if not chunk:
            continue
        if "*H" in chunk:
            c_s, h_s = chunk.split("*H")
        elif chunk.startswith("-H"):
            c_s, h_s = "-1", chunk[2:]
        elif chunk.startswith("H"):
            c_s, h_s = "1", chunk[1:]
        else:
            raise ValueError(f"bad divisor term {chunk!r}")
        j = int(h_s)
        coeffs[j] = coeffs.get(j, Fraction(0)) + Fraction(c_s)
    top = max(coeffs) if N is None else N
    return RDivisor(tuple(coeffs.get(j, Fraction(0)) for j in range(top + 1)))


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------


def monomial_in_twist(u, D, p, m, chart):
    """Does x^u lie in Gamma(U_I, O(floor(p^m D)))?"""
    fl = D.floors(p, m)
    return all(u[j] + fl[j] >= 0 for j in range(len(u)) if j not in chart)


def membership(phi, D, p, m, chart):
    """Level-m membership of a Laurent element on the chart U_I.

    True iff every monomial of phi passes ``monomial_in_twist``; the
    zero element belongs to every twist.
    """
    fl = D.floors(p, m)
    off_chart = [j for j in range(len(fl)) if j not in chart]
    for exps, _ in phi:
        for j in off_chart:
            if exps[j] + fl[j] < 0:
                return False
    return True


@dataclass(frozen=True)
class ChartSectionSpace:
    """Monomial lattice of Gamma(U_I, O(floor(p^m D))) at a fixed level."""

    N: int
    chart: frozenset
    D: RDivisor
    p: int
    m: int

    def contains(self, u):
        if len(u) != self.N + 1 or sum(u) != 0:
            return False
        return monomial_in_twist(u, self.D, self.p, self.m, self.chart)

    def contains_element(self, phi):
        return membership(phi, self.D, self.p, self.m, self.chart)

    def monomials(self, window):
        """All lattice points u with |u_j| <= window."""
        out = []
        span = range(-window, window + 1)
        for head in itertools.product(span, repeat=self.N):
            u = head + (-sum(head),)
            if abs(u[-1]) <= window and self.contains(u):
                out.append(u)
        return out

    def random_monomial(self, rng, window=3):
        """A random lattice point; a chart variable absorbs the balance."""
        fl = self.D.floors(self.p, self.m)
        chart = sorted(self.chart)
        free = chart[rng.randrange(len(chart))]
        u = [0] * (self.N + 1)
        for j in range(self.N + 1):
            if j == free:
                continue
            if j in self.chart:
                u[j] = rng.randint(-window, window)
            else:
                u[j] = -fl[j] + rng.randint(0, 2 * window)
        u[free] = -sum(u)
        return tuple(u)


def chart_section_space(N, chart, D, p, m):
    return ChartSectionSpace(N, frozenset(chart), D, p, m)


# ---------------------------------------------------------------------------
# Witt sections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WittSection:
    """A section of the level-n Witt divisorial sheaf over a chart."""

    field: object
    chart: frozenset
    D: RDivisor
    vector: witt.WittVector  # components in the function-field ring

    def __post_init__(self):
        ring = function_field_ring(self.field, self.D.N)
        if not ring.compatible(self.vector.ring):
            raise ChartMismatch("component ring does not match P^N setup")
        p = self.field.characteristic
        for m, comp in enumerate(self.vector.components):
            if not membership(comp, self.D, p, m, self.chart):
                raise MembershipViolation(
                    f"component {m} fails the level-{m} membership test")

    @property
    def level(self):
        return self.vector.length

    def components(self):
        return self.vector.components


def witt_section(field, chart, D, components):
    ring = function_field_ring(field, D.N)
    return WittSection(field, frozenset(chart), D,
                       witt.WittVector(ring, tuple(components)))


def witt_section_add(s, t):
    """Witt sum of two sections; closure is asserted, not assumed."""
    if (s.chart, s.D) != (t.chart, t.D) or s.level != t.level:
        raise ChartMismatch("sections live on different data")
    return WittSection(s.field, s.chart, s.D, witt.witt_add(s.vector,
                                                            t.vector))


def witt_section_neg(s):
    return WittSection(s.field, s.chart, s.D, witt.witt_neg(s.vector))


def witt_section_scale(scalar, s):
    """Module action of W_n(O(U_I)) on level-n sections.

    The scalar's components must be regular on the chart (exponents
    >= 0 off the chart); the product's membership is asserted afterwards,
    which is exactly the submodule-closure law being exercised.
    """
    if scalar.length != s.level:
        raise ChartMismatch("scalar level differs from section level")
    zero_D = RDivisor((Fraction(0),) * (s.D.N + 1))
    p = s.field.characteristic
    for m, comp in enumerate(scalar.components):
        if not membership(comp, zero_D, p, 0, s.chart):
            raise ChartMismatch(
                f"scalar component {m} is not regular on the chart")
    return WittSection(s.field, s.chart, s.D, witt.witt_mul(scalar,
                                                            s.vector))


def random_section(field, chart, D, n, rng, window=3, max_terms=2):
    """A random member of Gamma(U_I, W_n O(D))."""
    ring = function_field_ring(field, D.N)
    p = field.characteristic
    comps = []
    for m in range(n):
        space = chart_section_space(D.N, chart, D, p, m)
        pairs = []
        for _ in range(rng.randint(0, max_terms)):
            u = space.random_monomial(rng, window)
            pairs.append((field.random_element(rng), u))
        comps.append(ring.laurent_make(pairs))
    return witt_section(field, chart, D, comps)


def random_chart_scalar(field, chart, N, n, rng, window=2, max_terms=2):
    """A random element of W_n(O(U_I)) inside the function-field ring."""
    ring = function_field_ring(field, N)
    zero_D = RDivisor((Fraction(0),) * (N + 1))
    space = chart_section_space(N, chart, zero_D, field.characteristic, 0)
    comps = []
    for _ in range(n):
        pairs = []
        for _ in range(rng.randint(0, max_terms)):
            u = space.random_monomial(rng, window)
            pairs.append((field.random_element(rng), u))
        comps.append(ring.laurent_make(pairs))
    return witt.WittVector(ring, tuple(comps))


# ---------------------------------------------------------------------------
# Perturbation invariance and graded slot profiles
# ---------------------------------------------------------------------------


def perturbation_invariance(D, D_big, p, n):
    """True iff D and D_big define the same level-n section spaces.

    Requires D <= D_big coefficientwise; the spaces agree iff all the
    floors floor(p^m D) with m < n agree.
    """
    if not D.leq(D_big):
        raise ValueError("need D <= D_big coefficientwise")
    return all(D.floors(p, m) == D_big.floors(p, m) for m in range(n))


def slot_admissible(e, m, D, p, chart):
    """Is the level-m slot of multidegree e occupied on chart U_I?

    Needs p^m e integral (a Laurent monomial exists in that degree) and
    the membership inequalities off the chart.
    """
    scaled = [Fraction(x) * p ** m for x in e]
    if any(x.denominator != 1 for x in scaled):
        return False
    u = tuple(int(x) for x in scaled)
    return monomial_in_twist(u, D, p, m, chart)


def admissible_slots(e, n, D, p, chart):
    """Occupied levels of the multidegree-e piece of Gamma(U_I, W_n O(D)).

    Always an upper set {m_0, ..., n-1}: integrality and membership are
    both preserved when m grows.
    """
    return tuple(m for m in range(n) if slot_admissible(e, m, D, p, chart))


def multidegree_window(N, p, n, window):
    """All e in (1/p^(n-1)) Z^(N+1) with sum 0 and |e_j| <= window."""
    denom = p ** (n - 1)
    span = window * denom
    out = []
    for head in itertools.product(range(-span, span + 1), repeat=N):
        tail = -sum(head)
        if abs(tail) > span:
            continue
        out.append(tuple(Fraction(x, denom) for x in head + (tail,)))
    return out


# ---------------------------------------------------------------------------
# Exact sequence of the V-filtration: graded order bookkeeping
# ---------------------------------------------------------------------------


def _piece_elements(field, slots, total):
    """All coefficient tuples of a graded piece with the given slots."""
    pools = [field.elements() if m in slots else (0,) for m in range(total)]
    return [tuple(t) for t in itertools.product(*pools)]


def exact_sequence_orders(field, D, n, m, chart, window=2,
                          element_check_bound=4096):
    """Verify the graded order identity of the V^n exact sequence.

    For every multidegree e in the window, checks

        |W_{n+m} O(D)_e| = |W_m O(p^n D)_{p^n e}| * |W_n O(D)_e|

    and, when the pieces are small enough, verifies on actual elements
    that V^n is injective with image exactly the kernel of truncation.

    Returns (all_ok, records).
    """
    p = field.characteristic
    chart = frozenset(chart)
    q = field.q
    Dpn = D.scaled(p ** n)
    records = []
    all_ok = True
    for e in multidegree_window(D.N, p, n + m, window):
        total_slots = admissible_slots(e, n + m, D, p, chart)
        quot_slots = admissible_slots(e, n, D, p, chart)
        pe = tuple(x * p ** n for x in e)
        sub_slots = admissible_slots(pe, m, Dpn, p, chart)
        ok = len(total_slots) == len(sub_slots) + len(quot_slots)
        injective = None
        image_is_kernel = None
        if ok and q ** len(sub_slots) <= element_check_bound \
                and q ** len(total_slots) <= element_check_bound:
            sub_elements = _piece_elements(field, sub_slots, m)
            images = [(0,) * n + t for t in sub_elements]
            injective = len(set(images)) == len(images)
            kernel = [t for t in
                      _piece_elements(field, total_slots, n + m)
                      if all(c == 0 for c in t[:n])]
            image_is_kernel = set(images) == set(kernel)
            ok = ok and injective and image_is_kernel
        all_ok = all_ok and ok
        records.append({
            "e": e,
            "log_q_total": len(total_slots),
            "log_q_sub": len(sub_slots),
            "log_q_quot": len(quot_slots),
            "order_identity": ok,
            "V_injective": injective,
            "image_is_truncation_kernel": image_is_kernel,
        })
    return all_ok, records


def linear_equivalence_unit(field, N, u):
    """underline(x^u) for a degree-0 exponent vector u.

    Multiplication by it maps sections of W_n O(D) bijectively onto
    sections of W_n O(D - div(x^u)), where div(x^u) = sum u_j H_j; the
    inverse is multiplication by underline(x^-u).
    """
    if sum(u) != 0:
        raise ValueError("u must have degree zero")
    ring = function_field_ring(field, N)
    return ring.monomial(u)


def linear_shift_divisor(D, u):
    """D - div(x^u): the linearly equivalent divisor hit by ``x^u *``."""
    return D.plus(RDivisor(tuple(-Fraction(x) for x in u)))
