"""Hasse polynomial, discriminant, j-invariant, and the quasi-linear form
calculus with its mod-p / mod-p^2 weight criteria.

A quasi-linear form of weak weight k is Gamma_k + Gamma_{k-4p} z4' +
Gamma_{k-6p} z6'. Tangential means the derivative coefficients carry a
factor p; the starred coefficients are those divided by p.
"""

import math

from .errors import NotTangential, SingularPair
from .residue import PrimePower, ResidueInt, delta_scalar, inv_mod
from .wpoly import LocFrac, LocalizerSet, WPoly, discriminant


def hasse_poly(p, pm=None):
    """Coefficient of x^(p-1) in (x^3 + z4 x + z6)^((p-1)/2).

    Multinomial expansion: the x^(3i+j) z4^j z6^k term with i+j+k = (p-1)/2
    contributes when 3i+j = p-1. pm=None gives the exact integer polynomial.
    """
    n = (p - 1) // 2
    terms = {}
    for i in range(n + 1):
        j = p - 1 - 3 * i
        k = n - i - j
        if j < 0 or k < 0:
            continue
        terms[(j, k)] = math.comb(n, i) * math.comb(n - i, j)
    return WPoly(terms, pm)


def j_invariant(a, b, pm):
    """1728 * 4 z4^3 / Delta at (a, b)."""
    q = pm.q
    d = discriminant(pm).specialize(a, b)
    if d % pm.p == 0:
        raise SingularPair("Delta(%d, %d) is not a unit" % (a, b))
    return ResidueInt(1728 * 4 * pow(a, 3, q) * inv_mod(d, q), pm)


def classify_pair(a, b, p, sigmas=()):
    """Unit-ness of Delta, H and extra sigma factors at (a, b) mod p.

    sigmas is a sequence of (name, WPoly mod p) pairs.
    """
    pm = PrimePower(p, 1)
    delta_unit = discriminant(pm).specialize(a, b) % p != 0
    h_unit = hasse_poly(p, pm).specialize(a, b) % p != 0
    sigma_units = {name: poly.specialize(a, b) % p != 0 for name, poly in sigmas}
    if not delta_unit:
        label = "singular"
    elif not h_unit:
        label = "non-singular"
    elif sigma_units and not all(sigma_units.values()):
        label = "ordinary"
    elif sigma_units:
        label = "sigma-non-singular"
    else:
        label = "ordinary"
    return {"label": label, "delta_unit": delta_unit, "H_unit": h_unit,
            "sigma_units": sigma_units}


class FormRing:
    """Localized fraction rings at working precision m and at precision 1."""

    def __init__(self, p, m=2):
        self.p = p
        self.pm = PrimePower(p, m)
        self.pm1 = PrimePower(p, 1)
        self.locs = LocalizerSet(self.pm, hasse_poly(p, self.pm))
        self.locs1 = LocalizerSet(self.pm1, hasse_poly(p, self.pm1))

    def frac(self, terms, den=None):
        return LocFrac(WPoly(terms, self.pm), den or {}, self.locs)

    def const(self, c):
        return LocFrac.from_int(c, self.locs)

    def zero(self):
        return LocFrac.zero(self.locs)

    def mod_p(self, frac):
        return LocFrac(frac.num.reduce(self.pm1), frac.den, self.locs1)

    def inv2(self):
        return inv_mod(2, self.pm.q)


class QuasiLinearForm:
    """Gamma_k + Gamma_4 z4' + Gamma_6 z6' of weak weight k.

    For tangential forms Gamma_4 = p * star_4 and Gamma_6 = p * star_6 with
    the starred parts stored explicitly (they are what the mod-p^2 criterion
    sees; the p factor is not recoverable from a mod-p^m residue).
    """

    def __init__(self, ring, k, gamma_k, gamma_4=None, gamma_6=None,
                 star_4=None, star_6=None):
        self.ring = ring
        self.k = k
        self.gamma_k = gamma_k
        self.tangential = star_4 is not None or star_6 is not None
        if self.tangential:
            star_4 = star_4 if star_4 is not None else ring.zero()
            star_6 = star_6 if star_6 is not None else ring.zero()
            assert gamma_4 is None and gamma_6 is None
            gamma_4 = star_4.scale(ring.p)
            gamma_6 = star_6.scale(ring.p)
        self.gamma_4 = gamma_4 if gamma_4 is not None else ring.zero()
        self.gamma_6 = gamma_6 if gamma_6 is not None else ring.zero()
        self.star_4 = star_4
        self.star_6 = star_6
        for frac, d in ((self.gamma_k, k), (self.gamma_4, k - 4 * ring.p),
                        (self.gamma_6, k - 6 * ring.p)):
            wd = frac.weighted_degree()
            assert wd is None or wd == d, "coefficient degree %r != %r" % (wd, d)


def weight_check_mod_p(form):
    """4 z4^p Gamma_{k-4p} + 6 z6^p Gamma_{k-6p} = 0 mod p."""
    ring = form.ring
    p = ring.p
    t = (ring.mod_p(form.gamma_4) * WPoly.monomial(4, p, 0, ring.pm1)
         + ring.mod_p(form.gamma_6) * WPoly.monomial(6, 0, p, ring.pm1))
    return t.is_zero()


def weight_check_mod_p2(form):
    """Gamma_k + 4 z4^p star_4 + 6 z6^p star_6 = 0 mod p."""
    ring = form.ring
    if not form.tangential:
        raise NotTangential("mod-p^2 criterion needs a tangential form")
    p = ring.p
    t = (ring.mod_p(form.gamma_k)
         + ring.mod_p(form.star_4) * WPoly.monomial(4, p, 0, ring.pm1)
         + ring.mod_p(form.star_6) * WPoly.monomial(6, 0, p, ring.pm1))
    return t.is_zero()


def form_evaluate(form, a, b):
    """F(a, b) := Gamma_k(a,b) + Gamma_4(a,b) delta(a) + Gamma_6(a,b) delta(b).

    a, b are exact integer representatives (the p-derivation needs the value
    mod p^(m+1), so the canonical lift convention is: the integer itself).
    """
    pm = form.ring.pm
    q = pm.q
    da = int(delta_scalar(a, pm))
    db = int(delta_scalar(b, pm))
    v = (form.gamma_k.evaluate(a % q, b % q)
         + form.gamma_4.evaluate(a % q, b % q) * da
         + form.gamma_6.evaluate(a % q, b % q) * db)
    return ResidueInt(v, pm)


def c_power_w(c, w, pm):
    """c^w for w = a0 + a1*phi; phi(c) = c^p + p*delta(c)."""
    a0, a1 = w
    q = pm.q
    phi_c = (pow(c, pm.p, q) + pm.p * int(delta_scalar(c, pm))) % q
    v = pow(c, a0, q) if a0 >= 0 else pow(inv_mod(c, q), -a0, q)
    v = v * (pow(phi_c, a1, q) if a1 >= 0 else pow(inv_mod(phi_c, q), -a1, q))
    return v % q


def weight_definition_probe(form, a, b, c, w, precision=None):
    """Does F(c^4 a, c^6 b) = c^w F(a, b) hold mod p^precision at this
    sample? precision defaults to the ring's working precision."""
    ring = form.ring
    pm = ring.pm
    q = pm.q
    lhs = int(form_evaluate(form, c ** 4 * a, c ** 6 * b))
    rhs = c_power_w(c, w, pm) * int(form_evaluate(form, a, b)) % q
    if precision is None:
        precision = pm.m
    return (lhs - rhs) % ring.p ** precision == 0


def lambda_1(ring):
    """(1/H)(1 - p (2 z4^(2p) z4' + 9 z6^p z6') / (2 Delta^p)).

    Weak weight 1-p; reduces to 1/H mod p.
    """
    p = ring.p
    inv2 = ring.inv2()
    den = {"H": 1, "delta": p}
    s4 = LocFrac(WPoly.monomial(-1, 2 * p, 0, ring.pm), den, ring.locs)
    s6 = LocFrac(WPoly.monomial(-9 * inv2, 0, p, ring.pm), den, ring.locs)
    gk = LocFrac(WPoly.const(1, ring.pm), {"H": 1}, ring.locs)
    return QuasiLinearForm(ring, 1 - p, gk, star_4=s4, star_6=s6)


def unit_form_z4(ring):
    """1 - p z4' / (4 z4^p)."""
    p = ring.p
    s4 = LocFrac(WPoly.const(-inv_mod(4, ring.pm.q), ring.pm), {"z4": p}, ring.locs)
    return QuasiLinearForm(ring, 0, ring.const(1), star_4=s4)


def unit_form_z6(ring):
    """1 - p z6' / (6 z6^p)."""
    p = ring.p
    s6 = LocFrac(WPoly.const(-inv_mod(6, ring.pm.q), ring.pm), {"z6": p}, ring.locs)
    return QuasiLinearForm(ring, 0, ring.const(1), star_6=s6)


def unit_form_delta(ring):
    """1 - p (2 z4^(2p) z4' + 9 z6^p z6') / (2 Delta^p)."""
    p = ring.p
    inv2 = ring.inv2()
    den = {"delta": p}
    s4 = LocFrac(WPoly.monomial(-1, 2 * p, 0, ring.pm), den, ring.locs)
    s6 = LocFrac(WPoly.monomial(-9 * inv2, 0, p, ring.pm), den, ring.locs)
    return QuasiLinearForm(ring, 0, ring.const(1), star_4=s4, star_6=s6)


def slope_form_printed(ring):
    """(2 z4^p z6' - 3 z6^p z6') / Delta^p, as printed in the source it was
    taken from; both derivative slots land on z6'."""
    p = ring.p
    g6 = LocFrac(WPoly({(p, 0): 2, (0, p): -3}, ring.pm), {"delta": p}, ring.locs)
    return QuasiLinearForm(ring, -2 * p, ring.zero(), gamma_6=g6)


def slope_form_variant(ring):
    """(2 z4^p z6' - 3 z6^p z4') / Delta^p, the balanced variant."""
    p = ring.p
    den = {"delta": p}
    g4 = LocFrac(WPoly.monomial(-3, 0, p, ring.pm), den, ring.locs)
    g6 = LocFrac(WPoly.monomial(2, p, 0, ring.pm), den, ring.locs)
    return QuasiLinearForm(ring, -2 * p, ring.zero(), gamma_4=g4, gamma_6=g6)
