import itertools

import pytest

from modinvar.gfq import (FieldMismatchError, build_field, enumerate_field,
                          frobenius, is_prime, _poly_is_irreducible)

SMALL_QS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3)]


def test_build_field_basic():
    assert build_field(2, 1).q == 2
    assert build_field(3, 1).q == 3
    F4 = build_field(2, 2)
    assert F4.q == 4
    # t^2 + t + 1, coefficients low-degree first
    assert F4.modulus == (1, 1, 1)


def test_gf4_modulus_is_unique_irreducible_quadratic():
    # exhaustive oracle: t^2+t+1 is the only monic irreducible quadratic
    irreducible = [m for m in itertools.product(range(2), repeat=2)
                   if _poly_is_irreducible([m[0], m[1], 1], 2)]
    assert irreducible == [(1, 1)]


def test_build_field_errors():
    with pytest.raises(ValueError):
        build_field(4, 1)
    with pytest.raises(ValueError):
        build_field(6, 2)
    with pytest.raises(ValueError):
        build_field(3, 0)


def test_explicit_modulus_override():
    F9 = build_field(3, 2, modulus=(2, 2, 1))
    a = F9.scalar([0, 1])
    assert (a * a).coeffs == tuple(F9._digits(F9.parse_scalar("1+t")))
    with pytest.raises(ValueError):
        build_field(2, 2, modulus=(0, 0, 1))  # t^2 is reducible


def test_prime_field_arithmetic():
    F3 = build_field(3)
    two = F3.scalar(2)
    assert two.inverse() == two  # 2*2 = 4 = 1
    assert (two + two) == F3.scalar(1)
    assert (-two) == F3.scalar(1)


def test_gf4_multiplication():
    F4 = build_field(2, 2)
    t = F4.scalar([0, 1])
    assert (t * t) == F4.scalar([1, 1])  # t^2 = t + 1 mod t^2+t+1


def test_inversion_of_zero():
    F3 = build_field(3)
    with pytest.raises(ZeroDivisionError):
        F3.zero().inverse()


def test_mixed_fields_error():
    a = build_field(2).one()
    b = build_field(3).one()
    with pytest.raises(FieldMismatchError):
        _ = a + b


@pytest.mark.parametrize("p,r", SMALL_QS)
def test_enumerate_field(p, r):
    F = build_field(p, r)
    elems = enumerate_field(F)
    assert len(elems) == F.q
    assert len(set(elems)) == F.q
    assert elems[0] == F.zero()
    assert elems[1] == F.one()


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)])
def test_field_axioms_exhaustive(p, r):
    """Associativity, distributivity and inverses for every q <= 9 triple."""
    F = build_field(p, r)
    if F.q > 9:
        pytest.skip("exhaustive triple check limited to q <= 9")
    elems = enumerate_field(F)
    for a, b, c in itertools.product(elems, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in elems:
        assert a + (-a) == F.zero()
        if not a.is_zero():
            assert a * a.inverse() == F.one()


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)])
def test_fermat_property(p, r):
    F = build_field(p, r)
    for a in enumerate_field(F):
        assert a ** F.q == a


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)])
def test_frobenius_additive(p, r):
    F = build_field(p, r)
    for a, b in itertools.product(enumerate_field(F), repeat=2):
        assert frobenius(a + b) == frobenius(a) + frobenius(b)


def test_frobenius_fixed_on_prime_field():
    F5 = build_field(5)
    for a in enumerate_field(F5):
        assert frobenius(a) == a
    assert frobenius(build_field(2, 2).zero()).is_zero()


def test_frobenius_gf4():
    F4 = build_field(2, 2)
    t = F4.scalar([0, 1])
    assert frobenius(t) == t * t == F4.scalar([1, 1])


def test_large_exponents_no_overflow():
    F3 = build_field(3)
    a = F3.scalar(2)
    q = 3
    assert a ** (q ** 8) == a  # q-power towers act as Frobenius iterates
    assert a ** (q ** 16 - 1) == F3.one()


def test_scalar_text_roundtrip():
    F9 = build_field(3, 2)
    for a in enumerate_field(F9):
        assert F9.scalar(F9.format_scalar(a.index)) == a
    F7 = build_field(7)
    assert F7.format_scalar(5) == "5"
    assert F7.parse_scalar("-2") == 5


def test_primitive_element():
    for p, r in [(2, 2), (3, 1), (5, 1), (3, 2)]:
        F = build_field(p, r)
        g = F.primitive_element()
        seen = set()
        a = F.one()
        for _ in range(F.q - 1):
            a = a * g
            seen.add(a)
        assert len(seen) == F.q - 1


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
