"""Dense univariate polynomials over Z/p^m, and fractions with f-power denominators.

Coefficients are stored as raw ints in [0, p^m), index = degree. Degrees reach
a few times p^2 in the mod-p^2 pipeline, so multiplication goes through numpy
int64 convolution whenever the products cannot overflow.
"""

import numpy as np

from .errors import ModulusMismatch, NotIntegrable
from .residue import inv_mod


def _trim(coeffs):
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


class UPoly:
    __slots__ = ("coeffs", "pm")

    def __init__(self, coeffs, pm):
        q = pm.q
        self.coeffs = _trim([c % q for c in coeffs])
        self.pm = pm

    @classmethod
    def zero(cls, pm):
        return cls([], pm)

    @classmethod
    def const(cls, c, pm):
        return cls([c], pm)

    @classmethod
    def monomial(cls, c, d, pm):
        return cls([0] * d + [c], pm)

    @classmethod
    def x_cubic(cls, a, b, pm):
        """f(x) = x^3 + a x + b."""
        return cls([b, a, 0, 1], pm)

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, d):
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def _check(self, other):
        if self.pm != other.pm:
            raise ModulusMismatch("mixed moduli %r / %r" % (self.pm, other.pm))

    def __eq__(self, other):
        return (isinstance(other, UPoly) and self.pm == other.pm
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((tuple(self.coeffs), self.pm))

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.pm)

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly([self.coeff(i) - other.coeff(i) for i in range(n)], self.pm)

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.pm)

    def scale(self, c):
        return UPoly([c * ci for ci in self.coeffs], self.pm)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UPoly.zero(self.pm)
        q = self.pm.q
        n = min(len(self.coeffs), len(other.coeffs))
        # int64 convolution is safe iff sum of n products of values < q fits
        if (q - 1) ** 2 * n < 2 ** 62:
            out = np.convolve(np.array(self.coeffs, dtype=np.int64),
                              np.array(other.coeffs, dtype=np.int64))
            return UPoly([int(c) for c in out % q], self.pm)
        la, lb = self.coeffs, other.coeffs
        out = [0] * (len(la) + len(lb) - 1)
        for i, ci in enumerate(la):
            if ci:
                for j, cj in enumerate(lb):
                    out[i + j] += ci * cj
        return UPoly(out, self.pm)

    def __pow__(self, n):
        result = UPoly.const(1, self.pm)
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self):
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.pm)

    def compose_xp(self):
        """Substitute x -> x^p."""
        p = self.pm.p
        out = [0] * (p * self.degree() + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[p * i] = c
        return UPoly(out, self.pm)

    def antiderivative(self):
        """The W with dW/dx = self and W(0) = 0.

        A monomial c*x^(sp-1) needs p | c; the p cancels against the p in
        sp = p*s and the result coefficient is (c/p) * s^{-1} * x^{sp}.
        Everything else divides by degree+1, a unit.
        """
        p, q = self.pm.p, self.pm.q
        out = [0] * (len(self.coeffs) + 1)
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if (d + 1) % p == 0:
                s = (d + 1) // p
                if c % p != 0:
                    raise NotIntegrable(s)
                out[d + 1] = (c // p) * inv_mod(s, q) % q
            else:
                out[d + 1] = c * inv_mod(d + 1, q) % q
        return UPoly(out, self.pm)

    def evaluate(self, x0):
        q = self.pm.q
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x0 + c) % q
        return acc

    def reduce_to(self, m):
        """Drop precision to p^m."""
        return UPoly(self.coeffs, self.pm.drop(m))

    def lift_to(self, pm):
        """Reinterpret representatives at higher precision (caller guarantees
        any ambiguity mod p^m is harmless, e.g. behind an explicit p factor)."""
        return UPoly(self.coeffs, pm)

    def divexact_p(self):
        """Exact division by p, dropping one digit of precision."""
        p = self.pm.p
        for c in self.coeffs:
            if c % p != 0:
                raise ArithmeticError("coefficient %d not divisible by %d" % (c, p))
        return UPoly([c // p for c in self.coeffs], self.pm.drop(self.pm.m - 1))

    def divmod_monic(self, g):
        """divmod by a monic polynomial."""
        self._check(g)
        q = self.pm.q
        assert g.coeffs and g.coeffs[-1] == 1
        rem = list(self.coeffs)
        dg = g.degree()
        quo = [0] * max(len(rem) - dg, 0)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i] % q
            if c:
                quo[i - dg] = c
                for j, gj in enumerate(g.coeffs):
                    rem[i - dg + j] = (rem[i - dg + j] - c * gj) % q
        return UPoly(quo, self.pm), UPoly(rem[:dg], self.pm)

    def to_json(self):
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return "UPoly(%r mod %d^%d)" % (self.coeffs, self.pm.p, self.pm.m)


class FracPoly:
    """N(x) / f(x)^e over Z/p^m; the curve-side localization S[x]_f.

    f is monic, hence a nonzerodivisor, so equality after clearing a common
    f-power is honest equality in the localization.
    """

    __slots__ = ("num", "fexp", "f")

    def __init__(self, num, fexp, f):
        self.num = num
        self.fexp = fexp
        self.f = f

    @classmethod
    def from_poly(cls, num, f):
        return cls(num, 0, f)

    @property
    def pm(self):
        return self.num.pm

    def _align(self, other):
        if self.f != other.f:
            raise ValueError("fractions over different f")
        e = max(self.fexp, other.fexp)
        a = self.num * self.f ** (e - self.fexp)
        b = other.num * other.f ** (e - other.fexp)
        return a, b, e

    def __add__(self, other):
        a, b, e = self._align(other)
        return FracPoly(a + b, e, self.f)

    def __sub__(self, other):
        a, b, e = self._align(other)
        return FracPoly(a - b, e, self.f)

    def __mul__(self, other):
        if isinstance(other, UPoly):
            return FracPoly(self.num * other, self.fexp, self.f)
        if self.f != other.f:
            raise ValueError("fractions over different f")
        return FracPoly(self.num * other.num, self.fexp + other.fexp, self.f)

    def scale(self, c):
        return FracPoly(self.num.scale(c), self.fexp, self.f)

    def derivative(self):
        """d/dx of N/f^e = (N' f - e N f') / f^(e+1)."""
        if self.fexp == 0:
            return FracPoly(self.num.derivative(), 0, self.f)
        n = self.num.derivative() * self.f - (self.num * self.f.derivative()).scale(self.fexp)
        return FracPoly(n, self.fexp + 1, self.f)

    def __eq__(self, other):
        a, b, _ = self._align(other)
        return a == b

    def is_zero(self):
        return self.num.is_zero()

    def reduce_to(self, m):
        return FracPoly(self.num.reduce_to(m), self.fexp, self.f.reduce_to(m))

    def __repr__(self):
        return "FracPoly(%r / f^%d)" % (self.num, self.fexp)
