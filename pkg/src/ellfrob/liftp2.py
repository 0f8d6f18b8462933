"""Mod-p^2 Lie invariant lifts: the linear system in the V-coefficients,
its truncation and stabilization, the 2x2 eigenvalue solve (numeric and
symbolic), and the two special residue-class branches a = 0 and b = 0.

The lift is assembled as Z = W + V(x^p) + p U(x)/f(x)^p with eigenvalue
lambda = lambda0 (1 + p theta). The v_j and U only matter mod p: they enter
the verified congruences either multiplied by p or through d/dx, which
turns x^(jp) terms into p-multiples.
"""

import math

from .errors import (BNotUnit, InternalMismatch, NotOrdinary, NotStabilized,
                     PropertyViolation, SigmaSingular, TOutOfRange,
                     WrongResidueClass)
from .forms import hasse_poly
from .liftp import CurveContext, FrobLift, k0_poly
from .residue import PrimePower, inv_mod
from .upoly import FracPoly, UPoly
from .wpoly import LocFrac, LocalizerSet, WPoly


# ---------------------------------------------------------------- numeric lane

def d_values(ctx):
    """The x^(sp-1) coefficients d_1..d_4 of
    D = (lambda0/2) f^((p-1)/2) (K0 + (3x^(2p)+a^p) W0), all mod p,
    together with W0. deg D <= 5p-2 forces d_s = 0 for s >= 5."""
    p = ctx.p
    pm1 = PrimePower(p, 1)
    if not ctx.ordinary:
        raise NotOrdinary("H(%d, %d) = 0 mod %d" % (ctx.a, ctx.b, p))
    lam0 = ctx.lambda0 % p
    f1 = ctx.f_at(1)
    fh = f1 ** ((p - 1) // 2)
    integrand = fh.scale(lam0) - UPoly.monomial(1, p - 1, pm1)
    w0 = integrand.antiderivative()
    k0 = k0_poly(ctx, 1)
    quad = UPoly.monomial(3, 2 * p, pm1) + UPoly.const(pow(ctx.a, p, p), pm1)
    dpoly = (fh * (k0 + quad * w0)).scale(lam0 * inv_mod(2, p))
    assert dpoly.degree() <= 5 * p - 2
    return [0] + [dpoly.coeff(s * p - 1) for s in range(1, 5)], w0


def _source(s, p, u, theta, da, db, d):
    inv2 = inv_mod(2, p)
    src = d[s] if s < len(d) else 0
    if s == 1:
        src += db * inv2
    elif s == 2:
        src += (u * theta + da) * inv2
    elif s == 4:
        src += 3 * theta * inv2
    return src % p


def _row_rhs(s, p, u, theta, da, db, d, vs):
    """(3/2-s) a^p v_(s-1) + (9/2-s) v_(s-3) + sources, with v beyond the
    list taken to be 0."""
    inv2 = inv_mod(2, p)

    def v(i):
        return vs[i] if 0 <= i < len(vs) else 0

    t = (3 - 2 * s) * inv2 * u * v(s - 1) + (9 - 2 * s) * inv2 * v(s - 3)
    return (t + _source(s, p, u, theta, da, db, d)) % p


def solve_truncated(p, u, v_unit, theta, da, db, d, v0, t_max):
    """The unique mod-p solution v_0..v_T of the first T rows
    s b^p v_s = (3/2-s) a^p v_(s-1) + (9/2-s) v_(s-3) + c_s+d_s+e_s+f_s,
    for b a unit and 1 <= T <= p-1."""
    if v_unit % p == 0:
        raise BNotUnit("b = 0 mod %d: rows cannot be solved for v_s" % p)
    if not 1 <= t_max <= p - 1:
        raise TOutOfRange("truncation %d outside [1, %d]" % (t_max, p - 1))
    inv_v = inv_mod(v_unit, p)
    vs = [v0 % p]
    for s in range(1, t_max + 1):
        rhs = _row_rhs(s, p, u, theta, da, db, d, vs)
        vs.append(rhs * inv_mod(s, p) * inv_v % p)
    return vs


def stabilization_check(p, u, v_unit, theta, da, db, d, vs):
    """Require the two pivots v_((p+5)/2), v_((p+7)/2) to vanish, truncate
    at (p+3)/2, and re-verify every row up to s = (p+13)/2 against the
    truncated solution (rows beyond that have all terms identically 0)."""
    piv = (p + 5) // 2
    if vs[piv] % p or vs[piv + 1] % p:
        raise NotStabilized("pivots v_%d, v_%d = %d, %d mod %d"
                            % (piv, piv + 1, vs[piv], vs[piv + 1], p))
    truncated = vs[:(p + 3) // 2 + 1]
    for s in range(1, (p + 13) // 2 + 1):
        lhs = s * v_unit * (truncated[s] if s < len(truncated) else 0) % p
        if lhs != _row_rhs(s, p, u, theta, da, db, d, truncated):
            raise NotStabilized("row %d fails after truncation" % s)
    return truncated


def solve_eigen_numeric(ctx):
    """theta and v_0 forcing the two pivot coefficients to vanish.

    v_n is affine in (v_0, theta): run the indicator streams alpha (v_0=1),
    beta (theta=1) and the inhomogeneous stream, then solve the 2x2 system
    at rows (p+5)/2, (p+7)/2. A vanishing determinant means the pair is
    sigma-singular for this construction.
    """
    p = ctx.p
    u, v_unit = pow(ctx.a, p, p), pow(ctx.b, p, p)
    d, _ = d_values(ctx)
    da, db = ctx.delta_a() % p, ctx.delta_b() % p
    m_piv = (p + 5) // 2
    t_max = m_piv + 1
    alpha = solve_truncated(p, u, v_unit, 0, 0, 0, [0], 1, t_max)
    beta = solve_truncated(p, u, v_unit, 1, 0, 0, [0], 0, t_max)
    rho = solve_truncated(p, u, v_unit, 0, da, db, d, 0, t_max)
    det = (alpha[m_piv] * beta[m_piv + 1] - alpha[m_piv + 1] * beta[m_piv]) % p
    if det == 0:
        raise SigmaSingular("pivot determinant vanishes at (%d, %d) mod %d"
                            % (ctx.a, ctx.b, p))
    det_inv = inv_mod(det, p)
    v0 = (rho[m_piv + 1] * beta[m_piv] - rho[m_piv] * beta[m_piv + 1]) * det_inv % p
    theta = (rho[m_piv] * alpha[m_piv + 1] - rho[m_piv + 1] * alpha[m_piv]) * det_inv % p
    return v0, theta, det


def _solve_a0(ctx):
    """a = 0 mod p (so p = 1 mod 3 for an ordinary pair): v_0 = 0 and
    theta = -delta(b)/(6 b^p) - beta with beta = (1/3) beta_1 + (2/3) beta_4,
    where d_1 = beta_1 b^p and d_4 = beta_4."""
    p = ctx.p
    if ctx.a % p != 0:
        raise WrongResidueClass("a = %d is a unit mod %d" % (ctx.a, p))
    if p % 3 != 1:
        raise WrongResidueClass("p = %d is not 1 mod 3" % p)
    d, _ = d_values(ctx)
    v_unit = pow(ctx.b, p, p)
    beta1 = d[1] * inv_mod(v_unit, p) % p
    beta4 = d[4] % p
    beta = (beta1 + 2 * beta4) * inv_mod(3, p) % p
    db = ctx.delta_b() % p
    theta = (-db * inv_mod(6 * v_unit, p) - beta) % p
    return 0, theta, d


def _solve_b0(ctx):
    """b = 0 mod p (so p = 1 mod 4 for an ordinary pair): rows become
    (s - 3/2) a^p v_(s-1) = (9/2-s) v_(s-3) + sources and are solved forward
    for v_(s-1); theta = -delta(a)/(4 a^p) - (alpha_2 + alpha_4)/2 where
    d_2 = alpha_2 a^p and d_4 = alpha_4. The single row s = (p+3)/2 with
    vanishing leading coefficient takes v_((p+1)/2) = 0 and must hold on
    its own."""
    p = ctx.p
    if ctx.b % p != 0:
        raise WrongResidueClass("b = %d is a unit mod %d" % (ctx.b, p))
    if p % 4 != 1:
        raise WrongResidueClass("p = %d is not 1 mod 4" % p)
    d, _ = d_values(ctx)
    u = pow(ctx.a, p, p)
    alpha2 = d[2] * inv_mod(u, p) % p
    alpha4 = d[4] % p
    alpha = (alpha2 + alpha4) * inv_mod(2, p) % p
    da, db = ctx.delta_a() % p, ctx.delta_b() % p
    theta = (-da * inv_mod(4 * u, p) - alpha) % p

    inv2 = inv_mod(2, p)
    s_special = (p + 3) // 2
    vs = []
    for s in range(1, (p + 9) // 2 + 1):
        rhs = _source(s, p, u, theta, da, db, d)
        rhs = (rhs + (9 - 2 * s) * inv2
               * (vs[s - 3] if 0 <= s - 3 < len(vs) else 0)) % p
        lead = (2 * s - 3) * inv2 * u % p
        if s == s_special:
            if rhs:
                raise InternalMismatch("degenerate row %d fails" % s)
            vs.append(0)
        else:
            vs.append(rhs * inv_mod(lead, p) % p)
    return vs[0], theta, d, vs


def assemble_lift(ctx, v0, theta, vs):
    """Build Z = W + V(x^p) + p U/f^p and lambda = lambda0 (1 + p theta)
    mod p^2 from a stabilized solution. Integrability of dU/dx is exactly
    the row system, so the antiderivative call doubles as a check."""
    p = ctx.p
    pm1, pm2 = PrimePower(p, 1), PrimePower(p, 2)
    q2 = pm2.q
    lam = ctx.lambda0 * (1 + p * theta) % q2
    f2 = ctx.f_at(2)
    fh2 = f2 ** ((p - 1) // 2)
    w = (fh2.scale(lam) - UPoly.monomial(1, p - 1, pm2)).antiderivative()

    f1 = ctx.f_at(1)
    fh1 = f1 ** ((p - 1) // 2)
    lam0 = ctx.lambda0 % p
    half = lam0 * inv_mod(2, p) % p
    quad = UPoly.monomial(3, 2 * p, pm1) + UPoly.const(pow(ctx.a, p, p), pm1)
    v_poly = UPoly(vs, pm1)
    vxp = v_poly.compose_xp()
    d, w0 = d_values(ctx)
    k0 = k0_poly(ctx, 1)
    du = (-(UPoly.monomial(1, p - 1, pm1) * (f1 ** p) * v_poly.derivative().compose_xp())
          + (fh1 * quad * (vxp + w0)).scale(half)
          + (fh1 * quad * UPoly.monomial(theta, p, pm1)).scale(half)
          + (fh1 * k0).scale(half)
          + fh1.scale(half * ctx.delta_b())
          + (fh1 * UPoly.monomial(ctx.delta_a(), p, pm1)).scale(half))
    u_poly = du.antiderivative()

    num = (w + vxp.lift_to(pm2)) * (f2 ** p) + u_poly.lift_to(pm2).scale(p)
    return FrobLift(ctx, FracPoly(num, p, f2), lam)


def build_lift_mod_p2(ctx, branch="auto"):
    """End-to-end mod-p^2 construction for an ordinary pair over Z/p^2.

    branch: "auto" picks a0 / b0 / general by the residues of a and b;
    forcing a special branch on the wrong class raises WrongResidueClass.
    Returns (lift, info) with info holding theta, v0 and the v-vector.
    """
    p = ctx.p
    if ctx.pm.m < 2:
        raise ValueError("mod-p^2 construction needs a precision-2 context")
    if not ctx.ordinary:
        raise NotOrdinary("H(%d, %d) = 0 mod %d" % (ctx.a, ctx.b, p))
    if branch == "auto":
        if ctx.a % p == 0:
            branch = "a0"
        elif ctx.b % p == 0:
            branch = "b0"
        else:
            branch = "general"

    u, v_unit = pow(ctx.a, p, p), pow(ctx.b, p, p)
    da, db = ctx.delta_a() % p, ctx.delta_b() % p
    if branch == "general":
        if v_unit == 0:
            raise BNotUnit("b = 0 mod %d: use the b0 branch" % p)
        v0, theta, det = solve_eigen_numeric(ctx)
        d, _ = d_values(ctx)
        vs = solve_truncated(p, u, v_unit, theta, da, db, d, v0, (p + 7) // 2)
        vs = stabilization_check(p, u, v_unit, theta, da, db, d, vs)
    elif branch == "a0":
        v0, theta, d = _solve_a0(ctx)
        vs = solve_truncated(p, 0, v_unit, theta, da, db, d, v0, (p + 7) // 2)
        vs = stabilization_check(p, 0, v_unit, theta, da, db, d, vs)
    elif branch == "b0":
        v0, theta, d, vs = _solve_b0(ctx)
        vs = stabilization_check(p, u, 0, theta, da, db, d, vs)
    else:
        raise ValueError("unknown branch %r" % branch)
    lift = assemble_lift(ctx, v0, theta, vs)
    info = {"branch": branch, "theta": theta, "v0": v0, "vs": vs}
    return lift, info


# --------------------------------------------------------------- symbolic lane

def _sym_f_pow(n, locs):
    """Coefficient list of (x^3 + z4 x + z6)^n via the multinomial theorem."""
    out = [WPoly.zero(locs.pm) for _ in range(3 * n + 1)]
    for i in range(n + 1):
        for j in range(n - i + 1):
            k = n - i - j
            c = math.comb(n, i) * math.comb(n - i, j)
            out[3 * i + j] += WPoly.monomial(c, j, k, locs.pm)
    return out


def _sym_k0(p, locs):
    """K0 mod p as a coefficient list: the three corner terms of f^p cancel
    against x^(3p) + z4^p x^p + z6^p, and every other multinomial carries p."""
    out = [WPoly.zero(locs.pm) for _ in range(3 * p + 1)]
    for i in range(p + 1):
        for j in range(p - i + 1):
            k = p - i - j
            if (i, j, k) in ((p, 0, 0), (0, p, 0), (0, 0, p)):
                continue
            c = math.comb(p, i) * math.comb(p - i, j)
            assert c % p == 0
            out[3 * i + j] += WPoly.monomial(-(c // p), j, k, locs.pm)
    return out


def _sym_w0(p, locs, fh):
    """W0 coefficients as localized fractions with denominator H; the
    x^(p-1) coefficient of the integrand is lambda0 H - 1 = 0."""
    lam0 = LocFrac(WPoly.const(1, locs.pm), {"H": 1}, locs)
    n = len(fh)
    w0 = [LocFrac.zero(locs) for _ in range(n + 1)]
    for dg in range(n):
        c = lam0 * fh[dg]
        if dg == p - 1:
            c = c - LocFrac.from_int(1, locs)
            if not c.is_zero():
                raise InternalMismatch("x^(p-1) integrand coefficient nonzero")
            continue
        w0[dg + 1] = c.scale(inv_mod(dg + 1, p))
    return w0


def sym_d_values(p, locs):
    """Symbolic d_1..d_4 as localized fractions in (z4, z6); weighted
    homogeneous of degree (8-2s)p, with d_5 checked to vanish."""
    fh = _sym_f_pow((p - 1) // 2, locs)
    k0 = _sym_k0(p, locs)
    w0 = _sym_w0(p, locs, fh)
    z4p = WPoly.monomial(1, p, 0, locs.pm)
    half_lam0 = LocFrac(WPoly.const(inv_mod(2, p), locs.pm), {"H": 1}, locs)

    def inner(dg):
        t = LocFrac.zero(locs)
        if 0 <= dg < len(k0):
            t = t + LocFrac(k0[dg], {}, locs)
        if 0 <= dg - 2 * p < len(w0):
            t = t + w0[dg - 2 * p].scale(3)
        if 0 <= dg < len(w0):
            t = t + w0[dg] * z4p
        return t

    ds = [None]
    for s in range(1, 6):
        acc = LocFrac.zero(locs)
        for i, fc in enumerate(fh):
            if fc.is_zero():
                continue
            acc = acc + inner(s * p - 1 - i) * fc
        ds.append(acc * half_lam0)
    if not ds[5].is_zero():
        raise InternalMismatch("d_5 does not vanish symbolically")
    for s in range(1, 5):
        wd = ds[s].weighted_degree()
        if wd is not None and wd != (8 - 2 * s) * p:
            raise PropertyViolation("d_%d has weighted degree %r, want %d"
                                    % (s, wd, (8 - 2 * s) * p))
    return ds[1:5]


def _laurent_to_locfrac(lau, p, locs):
    """Laurent dict in (U, V) = (z4^p, z6^p) to a localized fraction."""
    if not lau:
        return LocFrac.zero(locs)
    shift = max(0, max(-j for (_, j) in lau))
    num = WPoly({(i * p, (j + shift) * p): c for (i, j), c in lau.items()},
                locs.pm)
    den = {"z6": shift * p} if shift else {}
    return LocFrac(num, den, locs)


class SymbolicEigen:
    """Theta = t_const + t_da z4' + t_db z6' and the matching v_0 slots,
    as localized fractions mod p, together with the pivot determinant."""

    def __init__(self, p, locs, theta_slots, v0_slots, det):
        self.p = p
        self.locs = locs
        self.theta_const, self.theta_da, self.theta_db = theta_slots
        self.v0_const, self.v0_da, self.v0_db = v0_slots
        self.det = det


def solve_eigen_symbolic(p):
    """Cramer solve of the pivot system over the fraction ring localized at
    z4, z6, Delta, H and the pivot polynomial Psi."""
    from .psi import alpha_beta_table, laurent_stream, psi_mod_p

    pm1 = PrimePower(p, 1)
    locs = LocalizerSet(pm1, hasse_poly(p, pm1), WPoly(psi_mod_p(p), pm1))
    m_piv = (p + 5) // 2
    inv2 = inv_mod(2, p)
    alphas, betas = alpha_beta_table(p, m_piv + 1, lane=p)
    mus = laurent_stream(m_piv + 1, {}, {2: {(0, 0): inv2}}, lane=p)
    nus = laurent_stream(m_piv + 1, {}, {1: {(0, 0): inv2}}, lane=p)

    ds = sym_d_values(p, locs)
    z4p = LocFrac(WPoly.monomial(1, p, 0, pm1), {}, locs)
    etas = [LocFrac.zero(locs)]
    for n in range(1, m_piv + 2):
        t = (etas[n - 1] * z4p).scale((3 - 2 * n) * inv2)
        if n >= 3:
            t = t + etas[n - 3].scale((9 - 2 * n) * inv2)
        if 1 <= n <= 4:
            t = t + ds[n - 1]
        inv_nv = LocFrac(WPoly.const(inv_mod(n, p), pm1), {"z6": p}, locs)
        etas.append(t * inv_nv)

    a_m = _laurent_to_locfrac(alphas[m_piv], p, locs)
    a_m1 = _laurent_to_locfrac(alphas[m_piv + 1], p, locs)
    b_m = _laurent_to_locfrac(betas[m_piv], p, locs)
    b_m1 = _laurent_to_locfrac(betas[m_piv + 1], p, locs)
    det = a_m * b_m1 - a_m1 * b_m
    det_inv = det.reciprocal()

    theta_slots = []
    v0_slots = []
    for r_m, r_m1 in (
            (-etas[m_piv], -etas[m_piv + 1]),
            (-_laurent_to_locfrac(mus[m_piv], p, locs),
             -_laurent_to_locfrac(mus[m_piv + 1], p, locs)),
            (-_laurent_to_locfrac(nus[m_piv], p, locs),
             -_laurent_to_locfrac(nus[m_piv + 1], p, locs))):
        theta_slots.append(det_inv * (a_m * r_m1 - a_m1 * r_m))
        v0_slots.append(det_inv * (r_m * b_m1 - r_m1 * b_m))
    return SymbolicEigen(p, locs, theta_slots, v0_slots, det)


def _eq_at_z4_zero(x, y):
    """Equality of two localized fractions after setting z4 = 0; valid when
    every denominator localizer stays nonzero there."""
    a, b, den = x._common(y)
    for name in den:
        if x.locs.polys[name].restrict_z4_zero().is_zero():
            raise PropertyViolation("localizer %s vanishes at z4 = 0" % name)
    return a.restrict_z4_zero() == b.restrict_z4_zero()


def lambda_properties(sym):
    """Checks on Theta from the symbolic solve: quasi-linearity is built in,
    so verify the slot degrees (0, -4p, -6p) and, for p = 1 mod 3, the a -> 0
    specialization Theta = -z6'/(6 z6^p) - beta."""
    p = sym.p
    locs = sym.locs
    for name, frac, want in (("const", sym.theta_const, 0),
                             ("z4'", sym.theta_da, -4 * p),
                             ("z6'", sym.theta_db, -6 * p)):
        wd = frac.weighted_degree()
        if wd is not None and wd != want:
            raise PropertyViolation("Theta %s slot has degree %r, want %d"
                                    % (name, wd, want))
    result = {"degrees_ok": True, "a0_checked": False}
    if p % 3 == 1:
        ctx = CurveContext(0, 1, PrimePower(p, 1))
        d, _ = d_values(ctx)
        beta = (d[1] + 2 * d[4]) * inv_mod(3, p) % p
        tgt_db = LocFrac(WPoly.const(-inv_mod(6, p), locs.pm), {"z6": p}, locs)
        tgt_const = LocFrac(WPoly.const(-beta, locs.pm), {}, locs)
        if not sym.theta_da.num.restrict_z4_zero().is_zero():
            raise PropertyViolation("Theta z4' slot nonzero at z4 = 0")
        if not _eq_at_z4_zero(sym.theta_db, tgt_db):
            raise PropertyViolation("Theta z6' slot wrong at z4 = 0")
        if not _eq_at_z4_zero(sym.theta_const, tgt_const):
            raise PropertyViolation("Theta constant slot wrong at z4 = 0")
        result["a0_checked"] = True
        result["beta"] = beta
    return result


def theta_evaluate(sym, a, b):
    """Value of Theta at an eligible pair (a, b are exact integers)."""
    from .residue import delta_scalar
    pm2 = PrimePower(sym.p, 2)
    da = int(delta_scalar(a, pm2)) % sym.p
    db = int(delta_scalar(b, pm2)) % sym.p
    return (sym.theta_const.evaluate(a, b)
            + sym.theta_da.evaluate(a, b) * da
            + sym.theta_db.evaluate(a, b) * db) % sym.p
