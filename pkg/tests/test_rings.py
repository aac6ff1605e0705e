import random
from fractions import Fraction

import pytest

import oracles as O
from commcert.errors import RingMismatch, SpecFormatError
from commcert.rings import (
    GF,
    INTEGERS,
    QUATERNIONS,
    RATIONALS,
    Scalar,
    Zmod,
    polynomials_over,
)

ALL_RINGS = [
    INTEGERS,
    RATIONALS,
    Zmod(6),
    Zmod(4),
    GF(5),
    GF(2),
    polynomials_over(RATIONALS),
    polynomials_over(Zmod(6), "t"),
    QUATERNIONS,
]


@pytest.mark.parametrize("ring", ALL_RINGS, ids=lambda r: r.label())
def test_ring_axioms_random(ring):
    rng = random.Random(f"axioms:{ring.label()}")
    for _ in range(60):
        a = ring.random(rng, 50)
        b = ring.random(rng, 50)
        c = ring.random(rng, 50)
        assert ring.add(a, b) == ring.add(b, a)
        assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
        assert ring.add(a, ring.zero) == a
        assert ring.add(a, ring.neg(a)) == ring.zero
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.mul(a, ring.one) == a
        assert ring.mul(ring.one, a) == a
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.mul(ring.add(b, c), a) == ring.add(ring.mul(b, a), ring.mul(c, a))
        assert ring.sub(a, b) == ring.add(a, ring.neg(b))
        if not ring.noncommutative:
            assert ring.mul(a, b) == ring.mul(b, a)


@pytest.mark.parametrize("ring", ALL_RINGS, ids=lambda r: r.label())
def test_format_parse_round_trip(ring):
    rng = random.Random(f"fmt:{ring.label()}")
    for _ in range(80):
        a = ring.random(rng, 99)
        assert ring.parse(ring.format(a)) == a


def test_specific_literals():
    assert RATIONALS.parse("-1/2") == Fraction(-1, 2)
    assert QUATERNIONS.parse("1+2i-j+0k") == (1, 2, -1, 0)
    assert QUATERNIONS.format((Fraction(1), Fraction(2), Fraction(-1), Fraction(0))) == "1+2i-j+0k"
    P = polynomials_over(RATIONALS)
    assert P.parse("3*x^2-1") == (Fraction(-1), Fraction(0), Fraction(3))
    assert P.format((Fraction(-1), Fraction(0), Fraction(3))) == "3*x^2-1"
    assert P.parse("x") == (0, 1)
    assert P.parse("0") == ()
    assert Zmod(6).parse("11") == 5
    with pytest.raises(SpecFormatError):
        RATIONALS.parse("nope")
    with pytest.raises(SpecFormatError):
        QUATERNIONS.parse("2q")
    with pytest.raises(SpecFormatError):
        P.parse("x**2")


def test_quaternion_multiplication_matches_table_oracle():
    rng = random.Random("quat")
    for _ in range(200):
        a = QUATERNIONS.random(rng, 30)
        b = QUATERNIONS.random(rng, 30)
        assert QUATERNIONS.mul(a, b) == O.quat_mul(a, b)
        # norm is multiplicative, so nonzero quaternions are invertible
        assert O.quat_norm(QUATERNIONS.mul(a, b)) == O.quat_norm(a) * O.quat_norm(b)
        if not QUATERNIONS.is_zero(a):
            inv = QUATERNIONS.try_invert(a)
            assert QUATERNIONS.mul(a, inv) == QUATERNIONS.one
            assert QUATERNIONS.mul(inv, a) == QUATERNIONS.one


def test_polynomial_multiplication_matches_convolution():
    P = polynomials_over(Zmod(6), "t")
    rng = random.Random("poly")
    base = Zmod(6)
    for _ in range(100):
        a = P.random(rng, degree=5)
        b = P.random(rng, degree=5)
        if not a or not b:
            assert P.mul(a, b) == ()
            continue
        conv = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                conv[i + j] = base.add(conv[i + j], base.mul(ca, cb))
        while conv and conv[-1] == 0:
            conv.pop()
        assert P.mul(a, b) == tuple(conv)


def test_modular_inverses():
    R6 = Zmod(6)
    assert R6.try_invert(5) == 5
    assert R6.try_invert(2) is None
    assert R6.try_invert(3) is None
    F5 = GF(5)
    for a in range(1, 5):
        assert F5.mul(a, F5.try_invert(a)) == 1
    assert F5.try_invert(0) is None
    # over Z only the sign units invert
    assert INTEGERS.try_invert(1) == 1
    assert INTEGERS.try_invert(-1) == -1
    assert INTEGERS.try_invert(2) is None


def test_polynomial_units_over_nonreduced_modulus():
    P = polynomials_over(Zmod(4))
    one_plus_2x = P.parse("1+2*x")
    inv = P.try_invert(one_plus_2x)
    assert inv is not None
    assert P.mul(one_plus_2x, inv) == P.one
    assert P.try_invert(P.parse("x")) is None
    Pq = polynomials_over(RATIONALS)
    assert Pq.try_invert(Pq.parse("x+1")) is None
    assert Pq.try_invert(Pq.parse("2")) == (Fraction(1, 2),)


def test_ring_constructor_guards():
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        Zmod(1)
    with pytest.raises(ValueError):
        polynomials_over(QUATERNIONS)


def test_ring_identity_and_caching():
    assert Zmod(6) is Zmod(6)
    assert GF(5) is GF(5)
    assert Zmod(5) is not GF(5)
    assert Zmod(5) != GF(5)  # different kinds, deliberately distinct
    assert polynomials_over(RATIONALS) == polynomials_over(RATIONALS)


def test_scalar_wrapper():
    s = Scalar(INTEGERS, 3)
    t = Scalar(INTEGERS, 4)
    assert (s + t).value == 7
    assert (s * t).value == 12
    assert (-s).value == -3
    assert (s - t).value == -1
    assert s != t and s == Scalar(INTEGERS, 3) and s == 3
    assert bool(s) and not bool(s.zero_like())
    assert s.one_like().value == 1
    assert str(Scalar(QUATERNIONS, (Fraction(1), Fraction(2), Fraction(-1), Fraction(0)))) == "1+2i-j+0k"
    with pytest.raises(RingMismatch):
        s + Scalar(RATIONALS, Fraction(1))
    assert Scalar(INTEGERS, 2).invert() is None
    assert Scalar(RATIONALS, Fraction(2)).invert() == Scalar(RATIONALS, Fraction(1, 2))


def test_divexact():
    assert INTEGERS.divexact(12, 4) == 3
    with pytest.raises(ArithmeticError):
        INTEGERS.divexact(7, 2)
    P = polynomials_over(RATIONALS)
    q = P.divexact(P.parse("x^2-1"), P.parse("x-1"))
    assert q == P.parse("x+1")
    with pytest.raises(ArithmeticError):
        P.divexact(P.parse("x^2+1"), P.parse("x-1"))
