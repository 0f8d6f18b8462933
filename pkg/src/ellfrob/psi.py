"""The alpha/beta/psi recurrence tower, the cleared Psi polynomials, the
nonvanishing checks at (0,1) and (1,0), and the prime scanner for the
Psi = c * Delta * H congruence.

Everything here lives in Laurent polynomials in U = a^p, V = b^p (weights 4
and 6), stored as dicts (i, j) -> coefficient with j allowed negative.
Two coefficient lanes share the code: exact Fractions (lane p=None) and
integers mod p. The denominators 2n, 2n+2 appearing up to n = (p+7)/2 are
coprime to p (2n <= p+7 < 2p and 2n+2 = p+9 is even), so the per-prime lane
is always well defined in the range we use.
"""

from fractions import Fraction

from .errors import DegreeMismatch, InternalMismatch, TheoremViolation
from .forms import hasse_poly
from .residue import PrimePower, inv_mod
from .wpoly import discriminant


def _fr(num, den, p):
    if p is None:
        return Fraction(num, den)
    return num * inv_mod(den, p) % p


def _norm(d, p):
    if p is None:
        return {k: c for k, c in d.items() if c != 0}
    return {k: c % p for k, c in d.items() if c % p != 0}


def _add(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return out


def _scale_shift(a, c, di, dj):
    """c * U^di * V^dj * a."""
    return {(i + di, j + dj): c * v for (i, j), v in a.items()}


def _mul(a, b):
    out = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + c * d
    return out


def laurent_stream(nmax, v0, sources, lane=None):
    """One affine stream of the row recursion
        n V v_n = (3/2 - n) U v_{n-1} + (9/2 - n) v_{n-3} + source_n,
    started at the Laurent dict v0, with sources a dict n -> Laurent dict."""
    q = lane  # None for the exact lane, else the prime
    seq = [_norm(dict(v0), q)]
    for n in range(1, nmax + 1):
        t = _scale_shift(seq[n - 1], _fr(3 - 2 * n, 2, q), 1, 0)
        if n >= 3:
            t = _add(t, _scale_shift(seq[n - 3], _fr(9 - 2 * n, 2, q), 0, 0))
        if n in sources:
            t = _add(t, sources[n])
        seq.append(_norm(_scale_shift(t, _fr(1, n, q), 0, -1), q))
    return seq


def alpha_beta_table(p, nmax, lane=None):
    """Sequences alpha_n, beta_n for 0 <= n <= nmax: alpha with v_0 = 1 and
    no sources, beta with v_0 = 0 and the theta sources U/2 at n = 2 and
    3/2 at n = 4."""
    q = lane
    alphas = laurent_stream(nmax, {(0, 0): _fr(1, 1, q)}, {}, lane)
    betas = laurent_stream(
        nmax, {},
        {2: {(1, 0): _fr(1, 2, q)}, 4: {(0, 0): _fr(3, 2, q)}}, lane)
    return alphas, betas


def psi_determinants(alphas, betas, nmax, lane=None):
    """psi_n = alpha_n beta_{n+1} - alpha_{n+1} beta_n for 1 <= n <= nmax."""
    psis = [None]
    for n in range(1, nmax + 1):
        d = _add(_mul(alphas[n], betas[n + 1]),
                 _scale_shift(_mul(alphas[n + 1], betas[n]), -1, 0, 0))
        psis.append(_norm(d, lane))
    return psis


def psi_recurrence_check(psis, nmax, lane=None):
    """Re-derive psi_n for 5 <= n <= nmax from the three-term recurrence and
    compare with the determinant values; a mismatch is a hard failure."""
    q = lane
    for n in range(5, nmax + 1):
        c2 = _fr(-(2 * n - 7) * (2 * n - 3), (2 * n + 2) * 2 * n, q)
        c3 = _fr((2 * n - 7) * (2 * n - 9), (2 * n + 2) * 2 * n, q)
        t = _add(_scale_shift(psis[n - 2], c2, 1, -2),
                 _scale_shift(psis[n - 3], c3, 0, -2))
        if _norm(t, q) != psis[n]:
            raise InternalMismatch(
                "psi_%d: determinant and recurrence disagree" % n)
    return True


def clear_psi(psi_n, n, lane=None):
    """Psi_n = psi_n * V^(2*ceil(n/2)); must come out polynomial and
    weighted homogeneous of degree 4*ceil(n/2) (+4 more when n is odd)."""
    shift = n if n % 2 == 0 else n + 1
    cleared = _norm(_scale_shift(psi_n, 1 if lane is None else 1, 0, shift), lane)
    expected = 2 * n if n % 2 == 0 else 2 * n + 6
    for (i, j) in cleared:
        if j < 0:
            raise DegreeMismatch("Psi_%d has a leftover V denominator" % n)
        if 4 * i + 6 * j != expected:
            raise DegreeMismatch(
                "Psi_%d term U^%d V^%d off homogeneous degree %d" % (n, i, j, expected))
    return cleared


class PsiTable:
    def __init__(self, p, alphas, betas, psis, psi_big, degree):
        self.p = p
        self.alphas = alphas
        self.betas = betas
        self.psis = psis
        self.psi_big = psi_big  # the cleared Psi_{(p+5)/2}, dict (e4,e6)->int
        self.degree = degree


def psi_table(p):
    """Mod-p table up to the pivot index M = (p+5)/2, with the determinant
    vs recurrence cross-check and the cleared pivot polynomial."""
    m_piv = (p + 5) // 2
    alphas, betas = alpha_beta_table(p, m_piv + 1, lane=p)
    psis = psi_determinants(alphas, betas, m_piv, lane=p)
    psi_recurrence_check(psis, m_piv, lane=p)
    psi_big = clear_psi(psis[m_piv], m_piv, lane=p)
    degree = 2 * m_piv if m_piv % 2 == 0 else 2 * m_piv + 6
    return PsiTable(p, alphas, betas, psis, psi_big, degree)


def exact_psi_table(nmax=9):
    """Exact-rational lane: the universal psi_1..psi_nmax (p plays no role
    in the coefficients)."""
    alphas, betas = alpha_beta_table(None, nmax + 1, lane=None)
    psis = psi_determinants(alphas, betas, nmax, lane=None)
    psi_recurrence_check(psis, nmax, lane=None)
    return alphas, betas, psis


def psi_mod_p(p):
    """The pivot polynomial Psi_{(p+5)/2} in the (z4, z6) slots, mod p."""
    return psi_table(p).psi_big


def degree_audit(p, table=None):
    """Weighted degree of the pivot Psi: p+5 when (p+5)/2 is even
    (p = 7, 11 mod 12), p+11 when odd (p = 1, 5 mod 12)."""
    table = table or psi_table(p)
    m_piv = (p + 5) // 2
    expected = p + 5 if m_piv % 2 == 0 else p + 11
    if table.degree != expected:
        raise DegreeMismatch("Psi degree %d, expected %d at p=%d"
                             % (table.degree, expected, p))
    degs = {4 * i + 6 * j for (i, j) in table.psi_big}
    if degs and degs != {expected}:
        raise DegreeMismatch("inhomogeneous Psi at p=%d" % p)
    return True


def golem_check(p, table=None):
    """Values of the pivot Psi at (0,1) and (1,0) mod p; the residue classes
    p = 1 mod 3 / p = 1 mod 4 guarantee nonvanishing."""
    table = table or psi_table(p)
    at01 = sum(c for (i, j), c in table.psi_big.items() if i == 0) % p
    at10 = sum(c for (i, j), c in table.psi_big.items() if j == 0) % p
    if p % 3 == 1 and at01 == 0:
        raise TheoremViolation("Psi(0,1) = 0 mod %d despite p = 1 mod 3" % p)
    if p % 4 == 1 and at10 == 0:
        raise TheoremViolation("Psi(1,0) = 0 mod %d despite p = 1 mod 4" % p)
    return {"at_01": at01, "at_10": at10}


def _proportional(lhs, rhs, p):
    """Is lhs = c * rhs mod p for a constant c? Returns (bool, c, witness)."""
    if set(lhs) != set(rhs):
        k = sorted(set(lhs) ^ set(rhs))[0]
        return False, None, k
    if not rhs:
        return True, 0, None
    k0 = sorted(rhs)[0]
    c = lhs[k0] * inv_mod(rhs[k0], p) % p
    for k in sorted(rhs):
        if lhs[k] != c * rhs[k] % p:
            return False, None, k
    return True, c, None


def scan_prime(p):
    """One scanner row: degree audit, the (0,1)/(1,0) values, and the
    proportionality test of Psi (or z6*Psi for even pivot index) vs Delta*H."""
    table = psi_table(p)
    m_piv = (p + 5) // 2
    degree_ok = True
    try:
        degree_audit(p, table)
    except DegreeMismatch:
        degree_ok = False
    gol = golem_check(p, table)
    pm1 = PrimePower(p, 1)
    target = _norm((discriminant(pm1) * hasse_poly(p, pm1)).terms, p)
    if m_piv % 2 == 0:
        lhs = {(i, j + 1): c for (i, j), c in table.psi_big.items()}
    else:
        lhs = dict(table.psi_big)
    prop, c, witness = _proportional(lhs, target, p)
    return {
        "p": p,
        "class_mod_12": p % 12,
        "psi_degree": table.degree,
        "degree_ok": degree_ok,
        "golem_01": gol["at_01"],
        "golem_10": gol["at_10"],
        "proportional": prop,
        "constant_c": c,
        "counterexample": witness,
    }


def conjecture_scan(pmin, pmax, workers=None):
    """Rows for all primes in [pmin, pmax], in prime order."""
    from .residue import is_prime
    primes = [p for p in range(max(pmin, 5), pmax + 1) if is_prime(p)]
    if workers is not None and workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(scan_prime, primes))
    else:
        rows = [scan_prime(p) for p in primes]
    rows.sort(key=lambda r: r["p"])
    return rows
