"""Characteristic-p base rings pluggable into the Witt arithmetic core.

Three concrete rings:

* ``FiniteField`` -- F_q with q = p^d, elements encoded as integers in
  [0, q) whose base-p digits are the coefficients over F_p.  Addition and
  multiplication tables are built eagerly (q is small here), which keeps
  the inner loops of Witt evaluation and group enumeration cheap.
* ``PolyQuotientRing`` -- F_q[z]/(f) for a monic f, not necessarily
  irreducible.  Used for the finite etale extensions obtained by
  adjoining roots of z^(l-1) + ... + 1.
* ``LaurentRing`` -- multivariate Laurent polynomials over either of the
  above, with a per-variable allowed-exponent predicate encoding chart
  coordinate rings, and an optional fixed total degree (0 for function
  fields of projective space).  Multigrading is by exponent vector.

Rings act as calculators: elements are plain hashable data (ints,
tuples) and all operations go through the ring object.  Floating point
never appears; equality of elements is exact.
"""

from __future__ import annotations

import itertools

from .errors import ExponentOutOfChart, WittlabError


class BaseRing:
    """Contract shared by all base rings.

    Required attributes: ``characteristic`` (the prime p), ``zero``,
    ``one``.  Required methods: ``add``, ``neg``, ``mul``, ``from_int``;
    the rest have generic implementations.  ``frobenius`` must be the
    p-th power map, which is a ring endomorphism in characteristic p.
    """

    characteristic: int
    zero = None
    one = None

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def from_int(self, k):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, k):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def frobenius(self, a):
        return self.pow(a, self.characteristic)

    def inverse(self, a):
        raise NotImplementedError

    def random_element(self, rng):
        raise NotImplementedError

    def multidegree(self, a):
        """Common multidegree of a homogeneous element, else None."""
        return None

    def compatible(self, other):
        return self == other


# ---------------------------------------------------------------------------
# Dense polynomial helpers over a coefficient calculator (used internally)
# ---------------------------------------------------------------------------


def _trim(coeffs, zero):
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return coeffs


def _poly_mul(ring, a, b):
    if not a or not b:
        return []
    out = [ring.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == ring.zero:
            continue
        for j, cb in enumerate(b):
            out[i + j] = ring.add(out[i + j], ring.mul(ca, cb))
    return _trim(out, ring.zero)


def _poly_divmod(ring, a, b):
    """Divide by b (leading coefficient must be invertible)."""
    a = _trim(list(a), ring.zero)
    b = _trim(list(b), ring.zero)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ring.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = ring.inverse(b[-1])
    while len(a) >= len(b):
        shift = len(a) - len(b)
        factor = ring.mul(a[-1], inv_lead)
        q[shift] = factor
        for i, cb in enumerate(b):
            a[shift + i] = ring.sub(a[shift + i], ring.mul(factor, cb))
        a = _trim(a, ring.zero)
    return _trim(q, ring.zero), a


def _poly_gcd(ring, a, b):
    a = _trim(list(a), ring.zero)
    b = _trim(list(b), ring.zero)
    while b:
        _, r = _poly_divmod(ring, a, b)
        a, b = b, r
    return a


# ---------------------------------------------------------------------------
# Finite fields
# ---------------------------------------------------------------------------


class _IntModP(BaseRing):
    """Minimal Z/p calculator used to bootstrap modulus searches."""

    def __init__(self, p):
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.characteristic

    def neg(self, a):
        return (-a) % self.characteristic

    def mul(self, a, b):
        return (a * b) % self.characteristic

    def from_int(self, k):
        return k % self.characteristic

    def inverse(self, a):
        return pow(a, self.characteristic - 2, self.characteristic)

    def __eq__(self, other):
        return (isinstance(other, _IntModP)
                and other.characteristic == self.characteristic)

    def __hash__(self):
        return hash(("Z/p", self.characteristic))


def is_prime(n):
    if n < 2:
        return False
    for q in range(2, int(n ** 0.5) + 1):
        if n % q == 0:
            return False
    return True


def _is_irreducible(p, coeffs):
    """Brute-force irreducibility over F_p (degrees here are tiny)."""
    ring = _IntModP(p)
    d = len(coeffs) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for body in itertools.product(range(p), repeat=k):
            divisor = list(body) + [1]
            _, r = _poly_divmod(ring, list(coeffs), divisor)
            if not r:
                return False
    return True


def _default_modulus(p, d):
    """First irreducible monic polynomial of degree d in lex order.

    For F_4 this is t^2 + t + 1, the modulus fixed for reproducibility
    of serialized output.
    """
    for body in itertools.product(range(p), repeat=d):
        coeffs = list(reversed(body)) + [1]
        if _is_irreducible(p, tuple(coeffs)):
            return tuple(coeffs)
    raise WittlabError(f"no irreducible polynomial found for p={p}, d={d}")


class FiniteField(BaseRing):
    """F_q, q = p^d, with elements encoded as integers in [0, q).

    The base-p digits of an element are its coefficients with respect to
    the power basis 1, t, ..., t^(d-1), where t is a root of the modulus.
    """

    def __init__(self, p, d=1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if d < 1:
            raise ValueError("extension degree must be positive")
        if modulus is None:
            modulus = ((0, 1) if d == 1 else _default_modulus(p, d))
        modulus = tuple(m % p for m in modulus[:-1]) + (1,)
        if len(modulus) != d + 1:
            raise ValueError("modulus degree does not match d")
        if d > 1 and not _is_irreducible(p, modulus):
            raise ValueError("modulus is reducible")
        self.characteristic = p
        self.p = p
        self.d = d
        self.q = p ** d
        self.modulus = modulus
        self.zero = 0
        self.one = 1
        self._build_tables()

    def _build_tables(self):
        p, d, q = self.p, self.d, self.q
        digits = [self._digits(a) for a in range(q)]
        self._add = [[self._undigits([(x + y) % p for x, y in zip(da, db)])
                      for db in digits] for da in digits]
        self._neg = [self._undigits([(-x) % p for x in da]) for da in digits]
        ring = _IntModP(p)
        self._mul = []
        for a in range(q):
            row = []
            for b in range(q):
                prod = _poly_mul(ring, digits[a], digits[b])
                _, r = _poly_divmod(ring, prod, list(self.modulus))
                r = r + [0] * (d - len(r))
                row.append(self._undigits(r))
            self._mul.append(row)

    def _digits(self, a):
        out = []
        for _ in range(self.d):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _undigits(self, digits):
        out = 0
        for c in reversed(digits):
            out = out * self.p + c
        return out

    # -- ring operations ----------------------------------------------

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def pow(self, a, k):
        if k < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 1 if k == 0 else 0
        k %= self.q - 1  # multiplicative group has order q - 1
        result = 1
        base = a
        while k:
            if k & 1:
                result = self._mul[result][base]
            k >>= 1
            if k:
                base = self._mul[base][base]
        return result

    def from_int(self, k):
        return k % self.p

    def inverse(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.q - 2)

    def random_element(self, rng):
        return rng.randrange(self.q)

    def random_unit(self, rng):
        return rng.randrange(1, self.q)

    def elements(self):
        return range(self.q)

    def coefficients(self, a):
        """Coefficient vector of a over F_p (little-endian power basis)."""
        return tuple(self._digits(a))

    def fp_basis(self):
        """The power basis 1, t, ..., t^(d-1) as field elements."""
        return tuple(self.p ** i for i in range(self.d))

    def multiplicative_order(self, a):
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def has_root_of_unity(self, ell):
        return (self.q - 1) % ell == 0

    def root_of_unity(self, ell):
        """A primitive ell-th root of unity; exists iff ell | q - 1."""
        if not self.has_root_of_unity(ell):
            raise WittlabError(f"F_{self.q} has no primitive {ell}-th root "
                               f"of unity (need {ell} | q-1)")
        for g in range(1, self.q):
            if self.multiplicative_order(g) == self.q - 1:
                return self.pow(g, (self.q - 1) // ell)
        raise WittlabError("no generator found")  # pragma: no cover

    def __repr__(self):
        return f"GF({self.q})" if self.d > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and (self.p, self.d, self.modulus)
                == (other.p, other.d, other.modulus))

    def __hash__(self):
        return hash(("GF", self.p, self.d, self.modulus))


_field_cache = {}


def GF(q, p=None, modulus=None):
    """Interned finite field of order q (q a prime power).

    ``GF(4)`` is F_4 with the fixed modulus t^2 + t + 1.
    """
    if p is None:
        for cand in range(2, q + 1):
            if is_prime(cand) and q % cand == 0:
                p = cand
                break
        else:
            raise ValueError(f"{q} is not a prime power")
    d = 0
    m = q
    while m > 1:
        if m % p:
            raise ValueError(f"{q} is not a power of {p}")
        m //= p
        d += 1
    key = (p, d, modulus)
    field = _field_cache.get(key)
    if field is None:
        field = FiniteField(p, d, modulus)
        _field_cache[key] = field
    return field


# ---------------------------------------------------------------------------
# Quotient rings F_q[z]/(f)
# ---------------------------------------------------------------------------


class PolyQuotientRing(BaseRing):
    """F_q[z]/(f) for monic f; elements are coefficient tuples over F_q.

    f need not be irreducible, so this is a ring, not necessarily a
    field.  Inverses are only provided where they exist is not needed;
    Witt arithmetic uses ring operations only.
    """

    def __init__(self, field, modulus, name="z"):
        if modulus[-1] != field.one:
            raise ValueError("modulus must be monic")
        self.field = field
        self.characteristic = field.characteristic
        self.modulus = tuple(modulus)
        self.rank = len(modulus) - 1
        self.name = name
        self.zero = (field.zero,) * self.rank
        self.one = tuple([field.one] + [field.zero] * (self.rank - 1))

    def element(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != self.rank:
            raise ValueError("wrong coefficient vector length")
        return coeffs

    def generator(self):
        """The class of z."""
        if self.rank == 1:
            # z is congruent to -constant term of the modulus
            return (self.field.neg(self.modulus[0]),)
        coeffs = [self.field.zero] * self.rank
        coeffs[1] = self.field.one
        return tuple(coeffs)

    def add(self, a, b):
        f = self.field
        return tuple(f.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        f = self.field
        return tuple(f.neg(x) for x in a)

    def mul(self, a, b):
        f = self.field
        prod = _poly_mul(f, list(a), list(b))
        _, r = _poly_divmod(f, prod, list(self.modulus))
        r = list(r) + [f.zero] * (self.rank - len(r))
        return tuple(r)

    def from_int(self, k):
        return tuple([self.field.from_int(k)]
                     + [self.field.zero] * (self.rank - 1))

    def random_element(self, rng):
        return tuple(self.field.random_element(rng) for _ in range(self.rank))

    def elements(self):
        return itertools.product(self.field.elements(), repeat=self.rank)

    def size(self):
        return self.field.q ** self.rank

    def is_separable_modulus(self):
        """True iff gcd(f, f') = 1, i.e. F_q -> this ring is etale."""
        f = self.field
        deriv = []
        for i in range(1, len(self.modulus)):
            c = self.modulus[i]
            scaled = f.zero
            for _ in range(i % self.characteristic):
                scaled = f.add(scaled, c)
            deriv.append(scaled)
        g = _poly_gcd(f, list(self.modulus), deriv)
        return len(g) == 1

    def __repr__(self):
        return f"{self.field}[{self.name}]/(deg {self.rank})"

    def __eq__(self, other):
        return (isinstance(other, PolyQuotientRing)
                and (self.field, self.modulus) == (other.field, other.modulus))

    def __hash__(self):
        return hash(("quot", self.field, self.modulus))


def cyclotomic_quotient(field, ell, name="z"):
    """F_q[z]/(z^(l-1) + z^(l-2) + ... + 1)."""
    modulus = (field.one,) * ell
    return PolyQuotientRing(field, modulus, name=name)


# ---------------------------------------------------------------------------
# Laurent polynomial chart rings
# ---------------------------------------------------------------------------


class LaurentRing(BaseRing):
    """Multivariate (Laurent) polynomials with chart exponent constraints.

    ``min_exps[j]`` is 0 for a coordinate variable (exponent >= 0) and
    None for a unit variable (exponent unrestricted).  ``degree_sum``
    fixes the total degree of every monomial (0 for the degree-zero part
    of a homogeneous localization); None means unconstrained.

    Elements are canonical sorted tuples of (exponent tuple, coefficient)
    pairs with no zero coefficients, so they are hashable and equality is
    literal.
    """

    def __init__(self, coeff, names, min_exps=None, degree_sum=None):
        self.coeff = coeff
        self.characteristic = coeff.characteristic
        self.names = tuple(names)
        self.nvars = len(self.names)
        if min_exps is None:
            min_exps = (None,) * self.nvars
        self.min_exps = tuple(min_exps)
        self.degree_sum = degree_sum
        if degree_sum not in (None, 0):
            raise ValueError("only degree_sum in {None, 0} is supported")
        self.zero = ()
        self.one = (((0,) * self.nvars, coeff.one),)

    # -- chart predicate ------------------------------------------------

    def exponent_allowed(self, exps):
        if len(exps) != self.nvars:
            return False
        for e, lo in zip(exps, self.min_exps):
            if lo is not None and e < lo:
                return False
        if self.degree_sum is not None and sum(exps) != self.degree_sum:
            return False
        return True

    def in_chart(self, elt):
        return all(self.exponent_allowed(exps) for exps, _ in elt)

    # -- construction ----------------------------------------------------

    def laurent_make(self, pairs):
        """Canonicalized element from (coefficient, exponent-vector) pairs."""
        acc = {}
        for coeff, exps in pairs:
            exps = tuple(exps)
            if not self.exponent_allowed(exps):
                raise ExponentOutOfChart(
                    f"exponent {exps} outside chart {self.min_exps} "
                    f"(degree_sum={self.degree_sum})")
            if exps in acc:
                acc[exps] = self.coeff.add(acc[exps], coeff)
            else:
                acc[exps] = coeff
        return self._canonical(acc)

    def monomial(self, exps, coeff=None):
        if coeff is None:
            coeff = self.coeff.one
        return self.laurent_make([(coeff, exps)])

    def _canonical(self, acc):
        items = [(e, c) for e, c in acc.items() if c != self.coeff.zero]
        items.sort(key=lambda t: t[0])
        return tuple(items)

    # -- ring operations ---------------------------------------------------

    def add(self, a, b):
        acc = dict(a)
        cadd = self.coeff.add
        for exps, c in b:
            if exps in acc:
                acc[exps] = cadd(acc[exps], c)
            else:
                acc[exps] = c
        return self._canonical(acc)

    def neg(self, a):
        cneg = self.coeff.neg
        return tuple((exps, cneg(c)) for exps, c in a)

    def mul(self, a, b):
        acc = {}
        cadd, cmul = self.coeff.add, self.coeff.mul
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                c = cmul(c1, c2)
                if e in acc:
                    acc[e] = cadd(acc[e], c)
                else:
                    acc[e] = c
        return self._canonical(acc)

    def from_int(self, k):
        return self.const(self.coeff.from_int(k))

    def const(self, c):
        """Embed a coefficient-ring element as a constant."""
        if c == self.coeff.zero:
            return ()
        return (((0,) * self.nvars, c),)

    def scalar_mul(self, c, a):
        cmul = self.coeff.mul
        acc = {exps: cmul(c, v) for exps, v in a}
        return self._canonical(acc)

    # -- grading -----------------------------------------------------------

    def multidegree(self, a):
        """The common exponent vector if a is homogeneous, else None.

        Zero has undefined multidegree (None); graded containers treat
        it as belonging to every degree.
        """
        if not a:
            return None
        degrees = {exps for exps, _ in a}
        if len(degrees) == 1:
            return next(iter(degrees))
        return None

    def is_unit_monomial(self, a):
        return len(a) == 1 and a[0][1] != self.coeff.zero

    # -- sampling ----------------------------------------------------------

    def random_element(self, rng, window=2, max_terms=3):
        nterms = rng.randint(0, max_terms)
        acc = {}
        for _ in range(nterms):
            exps = self._random_exps(rng, window)
            c = self.coeff.random_element(rng)
            if exps in acc:
                acc[exps] = self.coeff.add(acc[exps], c)
            else:
                acc[exps] = c
        return self._canonical(acc)

    def _random_exps(self, rng, window):
        while True:
            exps = []
            for lo in self.min_exps:
                lo = -window if lo is None else lo
                exps.append(rng.randint(lo, window))
            if self.degree_sum is None:
                return tuple(exps)
            # fix the last unconstrained-enough slot to hit the degree sum
            total = sum(exps[:-1])
            last = self.degree_sum - total
            lo = self.min_exps[-1]
            if lo is None or last >= lo:
                return tuple(exps[:-1] + [last])

    def __repr__(self):
        return (f"Laurent({self.coeff}, vars={','.join(self.names)}, "
                f"mins={self.min_exps}, deg={self.degree_sum})")

    def __eq__(self, other):
        return (isinstance(other, LaurentRing)
                and (self.coeff, self.names, self.min_exps, self.degree_sum)
                == (other.coeff, other.names, other.min_exps,
                    other.degree_sum))

    def __hash__(self):
        return hash(("laurent", self.coeff, self.names, self.min_exps,
                     self.degree_sum))

    def compatible(self, other):
        """Same ambient signature; chart constraints may differ."""
        return (isinstance(other, LaurentRing)
                and (self.coeff, self.names, self.degree_sum)
                == (other.coeff, other.names, other.degree_sum))


def function_field_ring(field, N):
    """Degree-0 Laurent monomial span: the function field of P^N."""
    return LaurentRing(field, tuple(f"x{j}" for j in range(N + 1)),
                       min_exps=(None,) * (N + 1), degree_sum=0)


def chart_ring(field, N, chart):
    """Coordinate ring of the chart where x_i != 0 exactly for i in chart."""
    chart = frozenset(chart)
    mins = tuple(None if j in chart else 0 for j in range(N + 1))
    return LaurentRing(field, tuple(f"x{j}" for j in range(N + 1)),
                       min_exps=mins, degree_sum=0)


def format_element(ring, elt):
    """Human-readable form of a Laurent element."""
    if not elt:
        return "0"
    parts = []
    for exps, c in elt:
        factors = [f"{n}^{e}" for n, e in zip(ring.names, exps) if e]
        body = "*".join(factors) if factors else "1"
        parts.append(f"({c})*{body}")
    return " + ".join(parts)
