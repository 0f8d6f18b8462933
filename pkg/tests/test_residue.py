import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellfrob.errors import ModulusMismatch, NotAUnit, NotCongruentOne
from ellfrob.residue import (PrimePower, ResidueInt, delta_scalar, inv_mod,
                             inverse, is_prime, sqrt_unit)


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert not is_prime(561)  # Carmichael
    assert is_prime(2 ** 61 - 1)


def test_prime_power_rejects_bad_p():
    for p in (2, 3, 4, 6, 9, 15):
        with pytest.raises(ValueError):
            PrimePower(p)
    with pytest.raises(ValueError):
        PrimePower(5, 0)


def test_prime_power_q_lift_drop():
    pm = PrimePower(13, 2)
    assert pm.q == 169
    assert pm.lift().q == 13 ** 3
    assert pm.drop(1).q == 13


def test_residue_arithmetic():
    pm = PrimePower(7, 2)
    a = ResidueInt(50, pm)
    b = ResidueInt(3, pm)
    assert int(a + b) == 53 % 49
    assert int(a - b) == 47 % 49
    assert int(a * b) == 150 % 49
    assert int(-b) == 46
    assert int(b ** 3) == 27
    assert a.is_unit()
    assert not ResidueInt(7, pm).is_unit()


def test_mixed_moduli_refused():
    a = ResidueInt(1, PrimePower(7, 2))
    b = ResidueInt(1, PrimePower(7, 1))
    with pytest.raises(ModulusMismatch):
        a + b


def test_inverse_7_mod_169():
    pm = PrimePower(13, 2)
    v = inverse(ResidueInt(7, pm))
    assert (7 * int(v)) % 169 == 1


def test_inverse_non_unit():
    pm = PrimePower(13, 2)
    with pytest.raises(NotAUnit):
        inverse(ResidueInt(13, pm))


def test_inv_mod():
    assert inv_mod(7, 169) * 7 % 169 == 1


def test_sqrt_unit_one_plus_2p():
    for p in (5, 13, 17):
        pm = PrimePower(p, 2)
        r = sqrt_unit(ResidueInt(1 + 2 * p, pm))
        assert int(r) == 1 + p


def test_sqrt_unit_one_plus_kp():
    p = 11
    pm = PrimePower(p, 2)
    inv2 = inv_mod(2, p ** 2)
    for k in range(p):
        r = sqrt_unit(ResidueInt(1 + k * p, pm))
        assert int(r) == (1 + k * inv2 * p) % p ** 2


def test_sqrt_unit_requires_one_mod_p():
    pm = PrimePower(7, 2)
    with pytest.raises(NotCongruentOne):
        sqrt_unit(ResidueInt(2, pm))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7, 13]), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_sqrt_unit_squares_back(p, m, t):
    pm = PrimePower(p, m)
    u = ResidueInt(1 + p * t, pm)
    r = sqrt_unit(u)
    assert int(r * r) == int(u)
    assert int(r) % p == 1


def test_delta_scalar_value():
    # (2 - 2^5)/5 = -6 = 19 mod 25
    assert int(delta_scalar(2, PrimePower(5, 2))) == 19


def test_delta_scalar_fermat_zero_mod_p():
    pm = PrimePower(13, 1)
    for a in range(13):
        # delta(a) = (a - a^p)/p is a well defined residue for every int
        delta_scalar(a, pm)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 11, 13]), st.integers(1, 3),
       st.integers(0, 10 ** 9), st.integers(0, 10 ** 9))
def test_delta_scalar_leibniz(p, m, a, b):
    pm = PrimePower(p, m)
    q = pm.q
    da = int(delta_scalar(a, pm))
    db = int(delta_scalar(b, pm))
    lhs = int(delta_scalar(a * b, pm))
    rhs = (pow(a, p, q) * db + pow(b, p, q) * da + p * da * db) % q
    assert lhs == rhs
