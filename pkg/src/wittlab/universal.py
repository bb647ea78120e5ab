"""Universal integer polynomials for truncated Witt-vector arithmetic.

Everything here happens over the exact integers.  The ghost components

    w_n(x_0, ..., x_n) = sum_{i=0}^{n} p^i * x_i^(p^(n-i))

linearize Witt arithmetic over torsion-free rings, and the addition,
negation and product companion families are pinned down by solving the
ghost identities

    w_n(S_0, ..., S_n) = w_n(x) + w_n(y)
    w_n(I_0, ..., I_n) = -w_n(x)
    w_n(P_0, ..., P_n) = w_n(x) * w_n(y)

by the recursion  S_n = (rhs_n - sum_{i<n} p^i S_i^(p^(n-i))) / p^n,
where every division must be exact.  A remainder raises InexactDivision
and means the implementation is broken, not the input.

Monomials are stored with all exponents packed into a single integer
(fixed bit width per variable), so a monomial product is one integer
addition.  That keeps the p = 5 recursions at the ten-thousand-term
scale fast enough for interactive use.

Serialization uses a fixed graded-lexicographic order (total degree
first, then the exponent tuple), so cache files are deterministic and
diffable.
"""

from __future__ import annotations

from .errors import InexactDivision

_SUPPORTED_FAMILIES = ("S", "I", "P")


def xy_names(k):
    """Interleaved variable names (x0, y0, x1, y1, ...) for k levels."""
    names = []
    for i in range(k):
        names.append(f"x{i}")
        names.append(f"y{i}")
    return tuple(names)


def x_names(k):
    return tuple(f"x{i}" for i in range(k))


def _level_of(name):
    return int(name[1:])


class UniversalPoly:
    """Exact multivariate integer polynomial with packed exponent keys."""

    __slots__ = ("names", "width", "terms", "_decoded")

    def __init__(self, names, width, terms):
        self.names = tuple(names)
        self.width = width
        self.terms = terms  # dict: packed exponent key -> nonzero int
        self._decoded = {}

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, names, width):
        return cls(names, width, {})

    @classmethod
    def monomial(cls, names, width, exps, coeff=1):
        if len(exps) != len(names):
            raise ValueError("exponent vector has wrong arity")
        if coeff == 0:
            return cls.zero(names, width)
        return cls(names, width, {cls._pack(exps, width): coeff})

    @staticmethod
    def _pack(exps, width):
        key = 0
        for e in reversed(exps):
            key = (key << width) | e
        return key

    def _unpack(self, key):
        mask = (1 << self.width) - 1
        exps = []
        for _ in self.names:
            exps.append(key & mask)
            key >>= self.width
        return tuple(exps)

    # -- basic queries ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, UniversalPoly):
            return NotImplemented
        return self.names == other.names and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash((self.names, tuple(sorted(self.as_dict().items()))))

    def as_dict(self):
        """Terms as {exponent tuple: coefficient}."""
        return {self._unpack(k): c for k, c in self.terms.items()}

    def sorted_terms(self):
        """Terms in the canonical graded-lexicographic order."""
        items = [(self._unpack(k), c) for k, c in self.terms.items()]
        items.sort(key=lambda t: (sum(t[0]), t[0]))
        return items

    def weighted_degrees(self, weights):
        """Set of weighted degrees of the monomials (weights per variable)."""
        degrees = set()
        for exps, _ in ((self._unpack(k), c) for k, c in self.terms.items()):
            degrees.add(sum(w * e for w, e in zip(weights, exps)))
        return degrees

    def max_exponent(self):
        best = 0
        for k in self.terms:
            for e in self._unpack(k):
                if e > best:
                    best = e
        return best

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other):
        if self.names != other.names or self.width != other.width:
            raise ValueError("polynomials from different variable contexts")

    def add(self, other):
        self._check_compatible(other)
        out = dict(self.terms)
        get = out.get
        for k, c in other.terms.items():
            v = get(k, 0) + c
            if v:
                out[k] = v
            elif k in out:
                del out[k]
        return UniversalPoly(self.names, self.width, out)

    def neg(self):
        return UniversalPoly(self.names, self.width,
                             {k: -c for k, c in self.terms.items()})

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        if c == 0:
            return UniversalPoly.zero(self.names, self.width)
        return UniversalPoly(self.names, self.width,
                             {k: c * v for k, v in self.terms.items()})

    def mul(self, other):
        self._check_compatible(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        get = out.get
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                v = get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
        return UniversalPoly(self.names, self.width, out)

    def square(self):
        items = list(self.terms.items())
        out = {}
        get = out.get
        for i, (k1, c1) in enumerate(items):
            kk = k1 + k1
            v = get(kk, 0) + c1 * c1
            if v:
                out[kk] = v
            elif kk in out:
                del out[kk]
            for j in range(i + 1, len(items)):
                k2, c2 = items[j]
                k = k1 + k2
                v = get(k, 0) + 2 * c1 * c2
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
        return UniversalPoly(self.names, self.width, out)

    def pow(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = UniversalPoly.monomial(self.names, self.width,
                                        (0,) * len(self.names), 1)
        base = self
        while e:
            if e & 1:
                result = result.mul(base)
            e >>= 1
            if e:
                base = base.square()
        return result

    def exact_div(self, divisor):
        """Divide every coefficient by `divisor`; exactness is mandatory."""
        out = {}
        for k, c in self.terms.items():
            q, r = divmod(c, divisor)
            if r:
                raise InexactDivision(
                    f"coefficient {c} not divisible by {divisor}")
            out[k] = q
        return UniversalPoly(self.names, self.width, out)

    def repack(self, names, width):
        """Embed into a (possibly larger) variable context, matching by name."""
        if names == self.names and width == self.width:
            return self
        pos = {n: i for i, n in enumerate(names)}
        out = {}
        for k, c in self.terms.items():
            exps = self._unpack(k)
            new = [0] * len(names)
            for n, e in zip(self.names, exps):
                new[pos[n]] = e
            out[self._pack(new, width)] = c
        return UniversalPoly(names, width, out)

    def rename(self, names):
        """Relabel variables positionally (same arity, same packing)."""
        if len(names) != len(self.names):
            raise ValueError("rename must preserve arity")
        return UniversalPoly(tuple(names), self.width, dict(self.terms))

    # -- evaluation support ---------------------------------------------

    def decoded_mod(self, p):
        """Terms reduced mod p as [(coeff, ((var index, exponent), ...)), ...].

        Zero-mod-p terms are dropped; the result is cached per p.
        """
        cached = self._decoded.get(p)
        if cached is None:
            cached = []
            for k, c in self.terms.items():
                cm = c % p
                if cm == 0:
                    continue
                factors = tuple((i, e) for i, e in enumerate(self._unpack(k))
                                if e)
                cached.append((cm, factors))
            self._decoded[p] = cached
        return cached

    def eval_int(self, values):
        """Exact integer evaluation at an integer point."""
        total = 0
        for k, c in self.terms.items():
            term = c
            for i, e in enumerate(self._unpack(k)):
                if e:
                    term *= values[i] ** e
            total += term
        return total

    # -- display ---------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = [f"{n}^{e}" if e > 1 else n
                       for n, e in zip(self.names, exps) if e]
            body = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                parts.append(body)
            elif c == -1 and factors:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}" if factors else str(c))
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out


# ---------------------------------------------------------------------------
# Ghost components and the companion families
# ---------------------------------------------------------------------------


def _width_for(p, n):
    # Exponents never exceed 2*p^n (product companions are homogeneous of
    # weighted degree 2p^n); one spare bit keeps packed sums carry-free.
    return (4 * p ** n).bit_length() + 1


def ghost(p, n, components=None):
    """The ghost polynomial w_n, optionally evaluated at given polynomials.

    With no components, returns w_n = sum p^i x_i^(p^(n-i)) in x_0..x_n.
    With components [c_0..c_n] (UniversalPoly over a common context),
    returns sum p^i c_i^(p^(n-i)) in that context.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if components is None:
        names = x_names(n + 1)
        width = _width_for(p, n)
        out = UniversalPoly.zero(names, width)
        for i in range(n + 1):
            exps = [0] * (n + 1)
            exps[i] = p ** (n - i)
            out = out.add(UniversalPoly.monomial(names, width, exps, p ** i))
        return out
    if len(components) != n + 1:
        raise ValueError("need n+1 component polynomials")
    out = None
    for i, comp in enumerate(components):
        term = comp.pow(p ** (n - i)).scale(p ** i)
        out = term if out is None else out.add(term)
    return out


_family_cache = {}


def _companions(family, p, n):
    """Grow and return the cached list [F_0, ..., F_n] for a family.

    family "S": ghost target w_n(x) + w_n(y), variables x and y.
    family "I": ghost target -w_n(x), variables x only.
    family "P": ghost target w_n(x) * w_n(y), variables x and y.
    """
    if family not in _SUPPORTED_FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    polys = _family_cache.setdefault((family, p), [])
    while len(polys) <= n:
        m = len(polys)
        names = x_names(m + 1) if family == "I" else xy_names(m + 1)
        width = _width_for(p, m)
        wx = ghost(p, m).repack(names, width)
        if family == "I":
            target = wx.neg()
        else:
            wy = ghost(p, m).rename(
                tuple(f"y{i}" for i in range(m + 1))).repack(names, width)
            target = wx.add(wy) if family == "S" else wx.mul(wy)
        acc = target
        for i in range(m):
            prev = polys[i].repack(names, width)
            acc = acc.sub(prev.pow(p ** (m - i)).scale(p ** i))
        polys.append(acc.exact_div(p ** m))
    return [polys[i] for i in range(n + 1)]


def sum_polys(p, n):
    """Witt addition polynomials S_0..S_n (variables x0,y0,...,xn,yn)."""
    return _companions("S", p, n)


def neg_polys(p, n):
    """Witt negation polynomials I_0..I_n (variables x0..xn)."""
    return _companions("I", p, n)


def prod_polys(p, n):
    """Witt product companions P_0..P_n (variables x0,y0,...,xn,yn)."""
    return _companions("P", p, n)


def homogeneity_check(poly, p, n):
    """True iff every monomial has weighted degree exactly p^n.

    The weights are deg x_i = deg y_i = p^i; this is the grading under
    which the whole addition/negation tower is homogeneous.
    """
    if poly.is_zero():
        return True
    weights = tuple(p ** _level_of(name) for name in poly.names)
    return poly.weighted_degrees(weights) == {p ** n}


def ghost_identity_holds(p, n, family="S"):
    """Recompute the ghost identity of a companion family symbolically.

    Verifies w_m(F_0..F_m) == target_m exactly, as integer polynomials,
    for every m <= n.  This recomputes all powers from the published
    polynomials rather than reusing recursion internals.
    """
    polys = _companions(family, p, n)
    for m in range(n + 1):
        names = x_names(m + 1) if family == "I" else xy_names(m + 1)
        width = _width_for(p, m)
        comps = [polys[i].repack(names, width) for i in range(m + 1)]
        lhs = ghost(p, m, comps)
        wx = ghost(p, m).repack(names, width)
        if family == "I":
            rhs = wx.neg()
        else:
            wy = ghost(p, m).rename(
                tuple(f"y{i}" for i in range(m + 1))).repack(names, width)
            rhs = wx.add(wy) if family == "S" else wx.mul(wy)
        if lhs.sub(rhs).terms:
            return False
    return True


def ghost_identity_spot_check(p, n, family, rng, trials=20, span=5):
    """Numeric ghost-identity check at random integer points.

    Independent of the symbolic path: evaluates the companions and the
    ghost target as exact integers.
    """
    polys = _companions(family, p, n)
    nvars = (n + 1) if family == "I" else 2 * (n + 1)
    for _ in range(trials):
        point = [rng.randint(-span, span) for _ in range(nvars)]
        xs = point[::2] if family != "I" else point
        ys = point[1::2]
        vals = [poly.eval_int(point[:(2 * (i + 1) if family != "I"
                                      else i + 1)])
                for i, poly in enumerate(polys)]
        lhs = sum(p ** i * vals[i] ** (p ** (n - i)) for i in range(n + 1))
        wx = sum(p ** i * xs[i] ** (p ** (n - i)) for i in range(n + 1))
        if family == "I":
            rhs = -wx
        else:
            wy = sum(p ** i * ys[i] ** (p ** (n - i)) for i in range(n + 1))
            rhs = wx + wy if family == "S" else wx * wy
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Canonical text format (one polynomial per line, graded-lex term order)
# ---------------------------------------------------------------------------


def poly_to_line(family, p, m, poly):
    chunks = []
    for exps, c in poly.sorted_terms():
        chunks.append(f"{c} {','.join(str(e) for e in exps)}")
    return f"{family} {p} {m} : " + " ; ".join(chunks)


def poly_from_line(line):
    """Parse a cache line; returns (family, p, m, UniversalPoly)."""
    head, _, body = line.partition(":")
    family, p_s, m_s = head.split()
    p, m = int(p_s), int(m_s)
    names = x_names(m + 1) if family == "I" else xy_names(m + 1)
    width = _width_for(p, m)
    terms = {}
    body = body.strip()
    if body:
        for chunk in body.split(";"):
            coeff_s, exps_s = chunk.split()
            exps = tuple(int(e) for e in exps_s.split(","))
            terms[UniversalPoly._pack(exps, width)] = int(coeff_s)
    return family, p, m, UniversalPoly(names, width, terms)


def cache_lines(p, n, families=_SUPPORTED_FAMILIES):
    """All companion polynomials for prime p up to index n, as cache lines."""
    lines = []
    for family in families:
        polys = _companions(family, p, n)
        for m, poly in enumerate(polys):
            lines.append(poly_to_line(family, p, m, poly))
    return lines


def write_cache(path, p, n, families=_SUPPORTED_FAMILIES):
    with open(path, "w") as fh:
        for line in cache_lines(p, n, families):
            fh.write(line + "\n")


def read_cache(path):
    """Load a cache file into {(family, p, m): UniversalPoly}."""
    table = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            family, p, m, poly = poly_from_line(line)
            table[(family, p, m)] = poly
    return table
