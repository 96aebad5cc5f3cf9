import random
from fractions import Fraction

import pytest

from quivermoduli import GF, ExtensionField, PrimeField, NotInvertibleError
from quivermoduli.ffields import default_modulus, is_irreducible
from quivermoduli.rings import QQ, QuadraticField, gaussian_rationals


def check_field_axioms(field, elems):
    for a in elems:
        assert field.add(a, field.zero) == a
        assert field.mul(a, field.one) == a
        assert field.add(a, field.neg(a)) == field.zero
        if a != field.zero:
            assert field.mul(a, field.inv(a)) == field.one
    for a in elems:
        for b in elems:
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
            for c in elems:
                assert field.mul(a, field.add(b, c)) == field.add(
                    field.mul(a, b), field.mul(a, c)
                )


def test_prime_field_axioms():
    for p in (2, 3, 5):
        check_field_axioms(PrimeField(p), list(range(p)))


def test_extension_field_axioms_f4_f9():
    for q in (4, 9):
        f = GF(q)
        check_field_axioms(f, list(f.elements()))


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(6)


def test_default_moduli():
    assert default_modulus(2, 2) == [1, 1, 1]  # x^2 + x + 1
    assert default_modulus(3, 2) == [1, 0, 1]  # x^2 + 1
    assert is_irreducible(default_modulus(2, 3), 2)
    assert is_irreducible(default_modulus(5, 2), 5)


def test_modulus_validation():
    with pytest.raises(ValueError):
        ExtensionField(2, 2, [0, 0, 1])  # x^2 is reducible
    with pytest.raises(ValueError):
        ExtensionField(2, 2, [1, 1])  # wrong degree


def test_frobenius_f4():
    f4 = GF(4)
    w = 2  # class of x
    assert f4.mul(w, w) == 3  # w^2 = w + 1
    assert f4.frobenius(w) == 3
    assert f4.frobenius(f4.frobenius(w)) == w
    for x in f4.elements():
        assert f4.frobenius(x) == f4.mul(x, x)


def test_extension_field_without_tables():
    # big enough to skip table construction; ops fall back to polynomials
    f = ExtensionField(5, 5)  # 3125 elements
    assert f._tables is None
    x = f.gen
    y = f.add(x, f.one)
    assert f.mul(y, f.inv(y)) == f.one
    assert f.frobenius(f.frobenius(x, 2), 3) == x  # sigma^5 = id


def test_multiplicative_generator():
    for q in (3, 4, 5, 9):
        f = GF(q)
        g = f.multiplicative_generator()
        seen = set()
        x = f.one
        for _ in range(q - 1):
            seen.add(x)
            x = f.mul(x, g)
        assert len(seen) == q - 1


def test_rational_field():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(-2, 7)) == Fraction(-7, 2)
    with pytest.raises(NotInvertibleError):
        QQ.inv(Fraction(0))
    assert QQ.from_json("3/4") == Fraction(3, 4)
    assert QQ.to_json(Fraction(-5)) == "-5"


def test_quadratic_field_arithmetic():
    Qi = gaussian_rationals()
    i = Qi.sqrt_gen
    assert Qi.mul(i, i) == Qi.from_int(-1)
    x = (Fraction(2), Fraction(3))
    assert Qi.conj(x) == (Fraction(2), Fraction(-3))
    assert Qi.field_norm(x) == 13
    assert Qi.mul(x, Qi.inv(x)) == Qi.one
    q5 = QuadraticField(5)
    s = q5.sqrt_gen
    assert q5.mul(s, s) == q5.from_int(5)


def test_quadratic_field_rejects_bad_m():
    for m in (0, 1, 4, 12):
        with pytest.raises(ValueError):
            QuadraticField(m)


def test_element_serialization_round_trips():
    rng = random.Random(3)
    for ring in (QQ, gaussian_rationals(), GF(4), GF(5), QuadraticField(3)):
        for _ in range(20):
            x = ring.random(rng)
            assert ring.from_json(ring.to_json(x)) == x
