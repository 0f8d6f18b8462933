"""Weighted bivariate polynomials in (z4, z6) and fractions over localizers.

WPoly is a sparse polynomial with z4, z6 of weighted degrees 4 and 6.
LocFrac is a WPoly numerator over a monomial product of named localizer
polynomials (z4, z6, delta, H, Psi); this is the controlled-denominator
fraction ring all symbolic eigenvalue work happens in.
"""

from .errors import DenominatorNotLocalizer, ModulusMismatch, NotAUnit, SingularPair
from .residue import inv_mod


class WPoly:
    """Sparse dict (e4, e6) -> int coefficient; pm=None means exact integers."""

    __slots__ = ("terms", "pm")

    def __init__(self, terms, pm=None):
        q = pm.q if pm is not None else None
        out = {}
        for key, c in terms.items():
            if q is not None:
                c = c % q
            if c:
                out[key] = c
        self.terms = out
        self.pm = pm

    @classmethod
    def zero(cls, pm=None):
        return cls({}, pm)

    @classmethod
    def const(cls, c, pm=None):
        return cls({(0, 0): c}, pm)

    @classmethod
    def monomial(cls, c, e4, e6, pm=None):
        return cls({(e4, e6): c}, pm)

    @classmethod
    def z4(cls, pm=None):
        return cls({(1, 0): 1}, pm)

    @classmethod
    def z6(cls, pm=None):
        return cls({(0, 1): 1}, pm)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.pm != other.pm:
            raise ModulusMismatch("mixed moduli %r / %r" % (self.pm, other.pm))

    def __eq__(self, other):
        return (isinstance(other, WPoly) and self.pm == other.pm
                and self.terms == other.terms)

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.pm))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return WPoly(out, self.pm)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) - c
        return WPoly(out, self.pm)

    def __neg__(self):
        return WPoly({k: -c for k, c in self.terms.items()}, self.pm)

    def scale(self, c):
        return WPoly({k: c * v for k, v in self.terms.items()}, self.pm)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + c * d
        return WPoly(out, self.pm)

    def __pow__(self, n):
        result = WPoly.const(1, self.pm)
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose_powers(self, k):
        """Substitute z4 -> z4^k, z6 -> z6^k."""
        return WPoly({(i * k, j * k): c for (i, j), c in self.terms.items()}, self.pm)

    def specialize(self, a, b):
        """Value at (z4, z6) = (a, b); exact integer when pm is None."""
        q = self.pm.q if self.pm is not None else None
        acc = 0
        for (i, j), c in self.terms.items():
            if q is not None:
                acc = (acc + c * pow(a, i, q) * pow(b, j, q)) % q
            else:
                acc += c * a ** i * b ** j
        return acc

    def restrict_z4_zero(self):
        """Image mod z4: keep only the pure-z6 terms."""
        return WPoly({k: c for k, c in self.terms.items() if k[0] == 0}, self.pm)

    def weighted_degree(self):
        """Weighted degree when homogeneous, else None; zero poly gives None."""
        degs = {4 * i + 6 * j for (i, j) in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, d):
        return all(4 * i + 6 * j == d for (i, j) in self.terms)

    def reduce(self, pm):
        return WPoly(self.terms, pm)

    def divide_exact(self, g):
        """Quotient self/g when the division is exact, else None.

        Single-divisor multivariate division with lex order on (e4, e6);
        requires the leading coefficient of g to be a unit (pm with m=1, or
        exact integers with a +/-1 leading coefficient handled via exactness).
        """
        self._check(g)
        if g.is_zero():
            return None
        q = self.pm.q if self.pm is not None else None
        glead = max(g.terms)
        gc = g.terms[glead]
        if q is not None:
            gc_inv = inv_mod(gc, q)
        rem = dict(self.terms)
        quo = {}
        while rem:
            lead = max(rem)
            c = rem[lead]
            i, j = lead[0] - glead[0], lead[1] - glead[1]
            if i < 0 or j < 0:
                return None
            if q is not None:
                d = c * gc_inv % q
            else:
                if c % gc != 0:
                    return None
                d = c // gc
            quo[(i, j)] = d
            for (k, l), gcoef in g.terms.items():
                key = (i + k, j + l)
                v = rem.get(key, 0) - d * gcoef
                if q is not None:
                    v %= q
                if v:
                    rem[key] = v
                elif key in rem:
                    del rem[key]
        return WPoly(quo, self.pm)

    def to_json(self):
        return [[e4, e6, str(c)] for (e4, e6), c in sorted(self.terms.items())]

    def __repr__(self):
        return "WPoly(%r)" % (self.terms,)


def discriminant(pm=None):
    """4 z4^3 + 27 z6^2."""
    return WPoly({(3, 0): 4, (0, 2): 27}, pm)


class LocalizerSet:
    """The named denominators available to LocFrac, with a power cache.

    Order matters for reciprocal recognition: composite localizers first,
    so greedy division does not strip a plain variable that happens to
    divide Psi or H before those get their chance.
    """

    NAMES = ("Psi", "H", "delta", "z6", "z4")

    def __init__(self, pm, hasse, psi=None):
        self.pm = pm
        self.polys = {
            "z4": WPoly.z4(pm),
            "z6": WPoly.z6(pm),
            "delta": discriminant(pm),
            "H": hasse,
        }
        if psi is not None:
            self.polys["Psi"] = psi
        self._cache = {}

    def power(self, name, k):
        if k == 0:
            return WPoly.const(1, self.pm)
        key = (name, k)
        if key not in self._cache:
            self._cache[key] = self.polys[name] ** k
        return self._cache[key]

    def den_poly(self, den):
        out = WPoly.const(1, self.pm)
        for name, k in den.items():
            out = out * self.power(name, k)
        return out


class LocFrac:
    """num / prod(localizer^e); den is a dict name -> positive exponent."""

    __slots__ = ("num", "den", "locs")

    def __init__(self, num, den, locs):
        self.num = num
        self.den = {k: v for k, v in den.items() if v} if not num.is_zero() else {}
        self.locs = locs

    @classmethod
    def from_wpoly(cls, num, locs):
        return cls(num, {}, locs)

    @classmethod
    def from_int(cls, c, locs):
        return cls(WPoly.const(c, locs.pm), {}, locs)

    @classmethod
    def zero(cls, locs):
        return cls(WPoly.zero(locs.pm), {}, locs)

    def is_zero(self):
        return self.num.is_zero()

    def _common(self, other):
        if self.locs is not other.locs:
            raise ValueError("fractions over different localizer sets")
        names = set(self.den) | set(other.den)
        den = {n: max(self.den.get(n, 0), other.den.get(n, 0)) for n in names}
        a = self.num
        b = other.num
        for n in names:
            da = den[n] - self.den.get(n, 0)
            db = den[n] - other.den.get(n, 0)
            if da:
                a = a * self.locs.power(n, da)
            if db:
                b = b * self.locs.power(n, db)
        return a, b, den

    def __add__(self, other):
        a, b, den = self._common(other)
        return LocFrac(a + b, den, self.locs)

    def __sub__(self, other):
        a, b, den = self._common(other)
        return LocFrac(a - b, den, self.locs)

    def __neg__(self):
        return LocFrac(-self.num, self.den, self.locs)

    def __mul__(self, other):
        if isinstance(other, WPoly):
            return LocFrac(self.num * other, self.den, self.locs)
        if self.locs is not other.locs:
            raise ValueError("fractions over different localizer sets")
        den = dict(self.den)
        for n, k in other.den.items():
            den[n] = den.get(n, 0) + k
        return LocFrac(self.num * other.num, den, self.locs)

    def scale(self, c):
        return LocFrac(self.num.scale(c), self.den, self.locs)

    def __eq__(self, other):
        a, b, _ = self._common(other)
        return a == b

    def __hash__(self):
        raise TypeError("LocFrac is unhashable")

    def weighted_degree(self):
        d = self.num.weighted_degree()
        if d is None:
            return None
        for n, k in self.den.items():
            d -= k * self.locs.polys[n].weighted_degree()
        return d

    def evaluate(self, a, b):
        """Value at a sigma-non-singular pair; raises when a denominator
        localizer fails to be a unit there."""
        pm = self.locs.pm
        q = pm.q
        acc = self.num.specialize(a, b)
        for n, k in self.den.items():
            v = self.locs.polys[n].specialize(a, b)
            if v % pm.p == 0:
                if n in ("delta", "H"):
                    raise SingularPair("%s(%d, %d) is not a unit" % (n, a, b))
                raise NotAUnit("%s(%d, %d) is not a unit" % (n, a, b))
            acc = acc * pow(inv_mod(v, q), k, q) % q
        return acc

    def reciprocal(self):
        """Inverse, for numerators that factor as unit * localizer monomial.

        Greedy exact division by each localizer in order; whatever is left
        must be a unit constant. Raises DenominatorNotLocalizer otherwise.
        """
        pm = self.locs.pm
        if self.num.is_zero():
            raise DenominatorNotLocalizer("zero has no reciprocal")
        r = self.num
        exps = {}
        for name in self.locs.NAMES:
            if name not in self.locs.polys:
                continue
            poly = self.locs.polys[name]
            while True:
                q2 = r.divide_exact(poly)
                if q2 is None:
                    break
                r = q2
                exps[name] = exps.get(name, 0) + 1
        if list(r.terms) != [(0, 0)]:
            raise DenominatorNotLocalizer(
                "numerator is not a unit times a localizer monomial")
        c = r.terms[(0, 0)]
        if c % pm.p == 0:
            raise DenominatorNotLocalizer("leftover constant is not a unit")
        num = self.locs.den_poly(self.den).scale(inv_mod(c, pm.q))
        return LocFrac(num, exps, self.locs)

    def restrict_z4_zero(self):
        """The pair (num mod z4, den polys mod z4) is formed by the caller;
        here we just restrict the numerator and keep the denominator names."""
        return LocFrac(self.num.restrict_z4_zero(), self.den, self.locs)

    def __repr__(self):
        return "LocFrac(%r / %r)" % (self.num, self.den)
