"""Constructive decomposition of square matrices into at most two products
of pairs of commutators, over any unital coefficient ring.

Size 2 uses a closed form.  Size n >= 3 clears the trailing columns with a
shift-frame construction: with the down-shift x, the up-shift y and
c = a + x a y + ... + x^(n-1) a y^(n-1), the bracket [c y, x] equals
a - c e_nn exactly, and multiplying by the alternating diagonal d (whose
last entries vanish) turns that into a * d.  The leftover columns are
handled by conjugating the same construction with the order-reversal
permutation.  Quaternions get their own two-term scalar construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cert import (
    Certificate,
    PairProduct,
    Witness,
    make_certificate,
)
from .errors import SizeTooSmall
from .matrices import Matrix
from .rings import QUATERNIONS, Ring, Scalar


@dataclass(frozen=True)
class ShiftFrame:
    """Structural matrices shared by every size-n decomposition."""

    n: int
    down: Matrix        # sub-diagonal shift: (down * a) moves rows down
    up: Matrix          # super-diagonal shift: (a * up) moves columns right
    diag: Matrix        # diag(1, -1, ..., 1, -1, 0[, 0])
    diag_witness: Witness
    tail: int           # number of trailing zero diagonal entries (1 or 2)


@lru_cache(maxsize=None)
def shift_frame(ring: Ring, n: int) -> ShiftFrame:
    if n < 3:
        raise SizeTooSmall("the shift frame needs size at least 3")
    z, o = ring.zero, ring.one
    down = Matrix._raw(
        ring, n, tuple(tuple(o if i == j + 1 else z for j in range(n)) for i in range(n))
    )
    up = Matrix._raw(
        ring, n, tuple(tuple(o if j == i + 1 else z for j in range(n)) for i in range(n))
    )
    tail = 1 if n % 2 else 2
    pairs = (n - tail) // 2
    entries = [0] * n
    p_rows = [[z] * n for _ in range(n)]
    q_rows = [[z] * n for _ in range(n)]
    for b in range(pairs):
        entries[2 * b] = 1
        entries[2 * b + 1] = -1
        p_rows[2 * b][2 * b + 1] = o
        q_rows[2 * b + 1][2 * b] = o
    diag = Matrix.diagonal(ring, entries)
    witness = Witness(
        Matrix._raw(ring, n, tuple(tuple(r) for r in p_rows)),
        Matrix._raw(ring, n, tuple(tuple(r) for r in q_rows)),
    )
    assert witness.value == diag
    return ShiftFrame(n, down, up, diag, witness, tail)


def _shift_down(m: Matrix) -> Matrix:
    zrow = (m.ring.zero,) * m.n
    return Matrix._raw(m.ring, m.n, (zrow,) + m.rows[:-1])


def _shift_right(m: Matrix) -> Matrix:
    z = m.ring.zero
    return Matrix._raw(m.ring, m.n, tuple((z,) + row[:-1] for row in m.rows))


def _column_scaled(m: Matrix, entries) -> Matrix:
    """Multiply column j by the integer 0, 1 or -1 in entries[j]."""
    ring = m.ring
    z = ring.zero
    neg = ring.neg
    out = []
    for row in m.rows:
        out.append(
            tuple(
                a if e == 1 else (z if e == 0 else neg(a))
                for a, e in zip(row, entries)
            )
        )
    return Matrix._raw(ring, m.n, tuple(out))


def zero_tail_product(a: Matrix, frame: ShiftFrame) -> PairProduct:
    """A pair product whose value is a * diag, built from an arbitrary a.

    The left factor is the bracket [c*up, down] (equal to a - c e_nn), the
    right factor is the alternating diagonal with its generating pair.
    """
    if a.n != frame.n:
        raise SizeTooSmall(f"matrix size {a.n} does not match frame size {frame.n}")
    c = a
    t = a
    for _ in range(a.n - 1):
        t = _shift_down(_shift_right(t))
        c = c + t
    left = Witness(_shift_right(c), frame.down)
    return PairProduct(left, frame.diag_witness)


def _sign_pattern(n: int, tail: int) -> list:
    pat = [0] * n
    for b in range((n - tail) // 2):
        pat[2 * b] = 1
        pat[2 * b + 1] = -1
    return pat


def decompose_2x2(a: Matrix) -> Certificate:
    """Closed-form certificate with at most two pair products for n = 2."""
    if a.n != 2:
        raise SizeTooSmall("this construction is specific to size 2")
    ring = a.ring
    (p, q), (r, s) = a.rows
    z = ring.zero
    e11 = Matrix.unit(ring, 2, 0, 0)
    e12 = Matrix.unit(ring, 2, 0, 1)
    e21 = Matrix.unit(ring, 2, 1, 0)
    one = ring.one
    # diag(1,-1) * antidiag(q, -r) contributes the off-diagonal part
    term1 = PairProduct(
        Witness(e12, e21),
        Witness(e11, Matrix._raw(ring, 2, ((z, q), (r, z)))),
    )
    # antidiag(1,1) * antidiag(s, p) contributes the diagonal part
    term2 = PairProduct(
        Witness(e11, Matrix._raw(ring, 2, ((z, one), (ring.neg(one), z)))),
        Witness(e11, Matrix._raw(ring, 2, ((z, s), (ring.neg(p), z)))),
    )
    return make_certificate(a, (term1, term2), "split-2x2")


def decompose(a: Matrix) -> Certificate:
    """Certificate with at most two pair products for any n >= 2."""
    if a.n < 2:
        raise SizeTooSmall("decomposition needs size at least 2")
    if a.n == 2:
        return decompose_2x2(a)
    ring = a.ring
    n = a.n
    frame = shift_frame(ring, n)
    pat = _sign_pattern(n, frame.tail)
    keep = n - frame.tail
    z = ring.zero

    head = Matrix._raw(
        ring, n, tuple(row[:keep] + (z,) * frame.tail for row in a.rows)
    )
    tail_part = Matrix._raw(
        ring, n, tuple((z,) * keep + row[keep:] for row in a.rows)
    )

    terms = []
    if head:
        # choose b with b * diag = head: flip the sign of the negative columns
        b = _column_scaled(head, pat)
        terms.append(zero_tail_product(b, frame))
    if tail_part:
        # mirror: reverse rows and columns, clear the (now leading) block,
        # then conjugate every witness element back
        mirrored = tail_part.reversal_conjugate()
        b = _column_scaled(mirrored, pat)
        inner = zero_tail_product(b, frame)
        terms.append(
            PairProduct(
                Witness(
                    inner.left.p.reversal_conjugate(),
                    inner.left.q.reversal_conjugate(),
                ),
                Witness(
                    inner.right.p.reversal_conjugate(),
                    inner.right.q.reversal_conjugate(),
                ),
            )
        )
    return make_certificate(a, tuple(terms), "column-split")


def decompose_direct_sum(a) -> Certificate:
    """Coordinatewise certificate over a direct sum of matrix rings.

    Terms are aligned across coordinates by padding with zero witnesses, so
    the result still has at most two pair products.
    """
    from .matrices import DirectSum

    certs = [decompose(part) for part in a.parts]
    width = max((len(c.terms) for c in certs), default=0)
    terms = []
    for i in range(width):
        lp, lq, rp, rq = [], [], [], []
        for part, c in zip(a.parts, certs):
            if i < len(c.terms):
                t = c.terms[i]
                lp.append(t.left.p)
                lq.append(t.left.q)
                rp.append(t.right.p)
                rq.append(t.right.q)
            else:
                zero = part.zero_like()
                lp.append(zero)
                lq.append(zero)
                rp.append(zero)
                rq.append(zero)
        terms.append(
            PairProduct(
                Witness(DirectSum(lp), DirectSum(lq)),
                Witness(DirectSum(rp), DirectSum(rq)),
            )
        )
    return make_certificate(a, tuple(terms), "column-split-per-summand")


_QW = None


def _quaternion_frame():
    """Fixed commutators v = [i, j] = 2k and w = [j, k] = 2i, with
    a = [v, w]^(-1); these drive the scalar construction."""
    global _QW
    if _QW is None:
        H = QUATERNIONS
        qi = Scalar(H, H.coerce("i"))
        qj = Scalar(H, H.coerce("j"))
        qk = Scalar(H, H.coerce("k"))
        v = Witness(qi, qj)     # 2k
        w = Witness(qj, qk)     # 2i
        bracket = v.value * w.value - w.value * v.value
        a = bracket.invert()
        winv = w.value.invert()
        _QW = (v, w, a, winv)
    return _QW


def quaternion_decompose(d: Scalar, keep_zero_terms: bool = False) -> Certificate:
    """Certificate with at most two pair products for a rational quaternion.

    Uses d = [d*a*v, w] + [w, d*a]*v with a = [v, w]^(-1); the first bracket
    is rewritten as a pair product by peeling one factor of w off inside.
    """
    if d.ring != QUATERNIONS:
        raise SizeTooSmall("this construction is specific to rational quaternions")
    v, w, a, winv = _quaternion_frame()
    da = d * a
    term1 = PairProduct(Witness(da * v.value * winv, w.value), w)
    term2 = PairProduct(Witness(w.value, da), v)
    terms = (term1, term2)
    if keep_zero_terms:
        return Certificate(d, terms, "quaternion-pair")
    return make_certificate(d, terms, "quaternion-pair")
