import random
from fractions import Fraction

import pytest

import oracles as O
from commcert.errors import EmptySum, RingMismatch, ShapeMismatch
from commcert.matrices import (
    DirectSum,
    DirectSumSpace,
    Matrix,
    MatrixSpace,
    block_diagonal,
    direct_sum,
)
from commcert.rings import GF, INTEGERS, QUATERNIONS, RATIONALS, Zmod, polynomials_over

RINGS = [INTEGERS, RATIONALS, Zmod(6), GF(5), polynomials_over(RATIONALS), QUATERNIONS]


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.label())
def test_product_matches_triple_loop_oracle(ring):
    rng = random.Random(f"mul:{ring.label()}")
    for n in (2, 3, 4):
        for _ in range(15):
            a = Matrix.random(ring, n, rng, 30)
            b = Matrix.random(ring, n, rng, 30)
            assert (a * b).rows == tuple(
                tuple(r) for r in O.mat_mul(ring, a.rows, b.rows)
            )
            assert (a + b).rows == tuple(
                tuple(r) for r in O.mat_add(ring, a.rows, b.rows)
            )
            assert (a - b).rows == tuple(
                tuple(r) for r in O.mat_sub(ring, a.rows, b.rows)
            )


@pytest.mark.parametrize(
    "ring", [INTEGERS, RATIONALS, Zmod(6), GF(5), polynomials_over(RATIONALS)],
    ids=lambda r: r.label(),
)
def test_determinant_matches_permutation_expansion(ring):
    rng = random.Random(f"det:{ring.label()}")
    for n in (1, 2, 3, 4):
        for _ in range(10):
            a = Matrix.random(ring, n, rng, 9)
            assert a.det().value == O.leibniz_det(ring, a.rows)
    for n in (2, 3, 4, 5):
        a = Matrix.random(ring, n, rng, 9)
        b = Matrix.random(ring, n, rng, 9)
        assert (a * b).det() == a.det() * b.det()
        assert Matrix.identity(ring, n).det().value == ring.one
        assert Matrix.zeros(ring, n).det().value == ring.zero


def test_adjugate_inverse_exact():
    rng = random.Random("inv")
    for n in (2, 3, 4, 5):
        # unimodular over Z: unitriangular upper times unitriangular lower
        up = [[INTEGERS.one if i == j else (rng.randint(-4, 4) if j > i else 0) for j in range(n)] for i in range(n)]
        lo = [[INTEGERS.one if i == j else (rng.randint(-4, 4) if j < i else 0) for j in range(n)] for i in range(n)]
        a = Matrix(INTEGERS, up) * Matrix(INTEGERS, lo)
        inv = a.adjugate_inverse()
        assert inv is not None
        ident = Matrix.identity(INTEGERS, n)
        assert a * inv == ident and inv * a == ident
    # no inverse over Z when the determinant is not a unit
    assert Matrix(INTEGERS, [[2, 0], [0, 1]]).adjugate_inverse() is None
    # over Q any nonzero determinant inverts
    for _ in range(10):
        a = Matrix.random(RATIONALS, 3, rng, 9)
        inv = a.adjugate_inverse()
        if a.det().value == 0:
            assert inv is None
        else:
            assert a * inv == Matrix.identity(RATIONALS, 3)


def test_reversal_conjugation_is_ring_automorphism():
    rng = random.Random("rev")
    for n in (2, 3, 4):
        a = Matrix.random(INTEGERS, n, rng, 30)
        b = Matrix.random(INTEGERS, n, rng, 30)
        ra = a.reversal_conjugate()
        # entrywise: mirrored through the antidiagonal center
        for i in range(n):
            for j in range(n):
                assert ra.rows[i][j] == a.rows[n - 1 - i][n - 1 - j]
        assert ra.reversal_conjugate() == a
        assert (a * b).reversal_conjugate() == ra * b.reversal_conjugate()
        assert (a + b).reversal_conjugate() == ra + b.reversal_conjugate()


def test_constructors_and_accessors():
    e = Matrix.unit(INTEGERS, 3, 0, 2)
    assert e.rows == ((0, 0, 1), (0, 0, 0), (0, 0, 0))
    d = Matrix.diagonal(INTEGERS, [1, 2, 3])
    assert d.trace().value == 6
    assert d.entry(1, 1).value == 2
    assert d.transpose() == d
    m = Matrix(INTEGERS, [[1, 2], [3, 4]])
    assert m.transpose().rows == ((1, 3), (2, 4))
    assert m.scale(2).rows == ((2, 4), (6, 8))
    assert (-m).rows == ((-1, -2), (-3, -4))
    assert m.zero_like().is_zero()
    assert m.one_like() == Matrix.identity(INTEGERS, 2)
    with pytest.raises(ShapeMismatch):
        Matrix(INTEGERS, [[1, 2], [3]])
    with pytest.raises(ShapeMismatch):
        m + Matrix.identity(INTEGERS, 3)
    with pytest.raises(RingMismatch):
        m + Matrix.identity(RATIONALS, 2)


def test_cast_is_exact():
    m = Matrix(INTEGERS, [[1, -7], [0, 4]])
    q = m.cast(RATIONALS)
    assert q.ring is RATIONALS
    assert q.rows == ((Fraction(1), Fraction(-7)), (Fraction(0), Fraction(4)))
    assert q.cast(RATIONALS) is q
    z6 = m.cast(Zmod(6))
    assert z6.rows == ((1, 5), (0, 4))


def test_direct_sum_operations():
    rng = random.Random("ds")
    a = DirectSum([Matrix.random(INTEGERS, 2, rng, 9), Matrix.random(INTEGERS, 3, rng, 9)])
    b = DirectSum([Matrix.random(INTEGERS, 2, rng, 9), Matrix.random(INTEGERS, 3, rng, 9)])
    assert (a + b).parts == (a.parts[0] + b.parts[0], a.parts[1] + b.parts[1])
    assert (a * b).parts == (a.parts[0] * b.parts[0], a.parts[1] * b.parts[1])
    assert (a - b).parts == (a.parts[0] - b.parts[0], a.parts[1] - b.parts[1])
    assert (-a).parts == (-a.parts[0], -a.parts[1])
    assert a.zero_like().is_zero()
    one = a.one_like()
    assert a * one == a and one * a == a
    assert direct_sum(a.parts) == a
    with pytest.raises(EmptySum):
        DirectSum([])
    with pytest.raises(ShapeMismatch):
        a + DirectSum([Matrix.identity(INTEGERS, 2)])


def test_block_diagonal():
    m = block_diagonal(INTEGERS, [Matrix(INTEGERS, [[1, 2], [3, 4]]), Matrix(INTEGERS, [[5]])])
    assert m.rows == ((1, 2, 0), (3, 4, 0), (0, 0, 5))


def test_spaces():
    sp = MatrixSpace(INTEGERS, 3)
    assert sp.zero().is_zero() and sp.one() == Matrix.identity(INTEGERS, 3)
    assert sp.label() == "M3(Z)"
    rng = random.Random(1)
    assert sp.random(rng).n == 3
    ds = DirectSumSpace((MatrixSpace(INTEGERS, 2), MatrixSpace(RATIONALS, 3)))
    assert ds.label() == "M2(Z)+M3(Q)"
    el = ds.random(rng)
    assert [p.n for p in el.parts] == [2, 3]
    assert ds.one().parts[1].ring is RATIONALS


def test_zero_skipping_product_is_still_exact():
    # highly sparse operands exercise the skip path
    rng = random.Random("sparse")
    for _ in range(20):
        a = Matrix.unit(INTEGERS, 4, rng.randrange(4), rng.randrange(4))
        b = Matrix.unit(INTEGERS, 4, rng.randrange(4), rng.randrange(4))
        assert (a * b).rows == tuple(tuple(r) for r in O.mat_mul(INTEGERS, a.rows, b.rows))
