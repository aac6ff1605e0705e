"""Square matrices over the exact coefficient rings, plus direct sums.

Matrices are immutable (tuple-of-tuples of canonical payloads), so equality
is plain tuple comparison and instances can be shared freely across threads.
Multiplication skips zero entries, which matters because the certificate
constructions multiply dense matrices by very sparse 0/1 frames.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EmptySum,
    NoncommutativeCoefficients,
    RingMismatch,
    ShapeMismatch,
)
from .rings import Ring, Scalar


class Matrix:
    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: Ring, rows):
        n = len(rows)
        coerce = ring.coerce
        made = []
        for row in rows:
            if len(row) != n:
                raise ShapeMismatch("matrix must be square")
            made.append(tuple(coerce(v) for v in row))
        if n < 1:
            raise ShapeMismatch("matrix must have size at least 1")
        self.ring = ring
        self.n = n
        self.rows = tuple(made)

    @classmethod
    def _raw(cls, ring: Ring, n: int, rows: tuple) -> "Matrix":
        m = object.__new__(cls)
        m.ring = ring
        m.n = n
        m.rows = rows
        return m

    @classmethod
    def zeros(cls, ring: Ring, n: int) -> "Matrix":
        z = ring.zero
        return cls._raw(ring, n, tuple((z,) * n for _ in range(n)))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls._raw(
            ring, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        )

    @classmethod
    def unit(cls, ring: Ring, n: int, i: int, j: int) -> "Matrix":
        """Matrix unit with a single 1 at 0-based position (i, j)."""
        z, o = ring.zero, ring.one
        return cls._raw(
            ring,
            n,
            tuple(
                tuple(o if (r, c) == (i, j) else z for c in range(n)) for r in range(n)
            ),
        )

    @classmethod
    def diagonal(cls, ring: Ring, entries) -> "Matrix":
        vals = [ring.coerce(v) for v in entries]
        n = len(vals)
        z = ring.zero
        return cls._raw(
            ring,
            n,
            tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)),
        )

    @classmethod
    def random(cls, ring: Ring, n: int, rng, bound=10**6) -> "Matrix":
        rand = ring.random
        return cls._raw(
            ring, n, tuple(tuple(rand(rng, bound) for _ in range(n)) for _ in range(n))
        )

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected a matrix, got {type(other).__name__}")
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.n != other.n:
            raise ShapeMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        return Matrix._raw(
            self.ring,
            self.n,
            tuple(
                tuple(map(add, ra, rb)) for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __sub__(self, other):
        self._check(other)
        sub = self.ring.sub
        return Matrix._raw(
            self.ring,
            self.n,
            tuple(
                tuple(map(sub, ra, rb)) for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __neg__(self):
        neg = self.ring.neg
        return Matrix._raw(
            self.ring, self.n, tuple(tuple(map(neg, r)) for r in self.rows)
        )

    def __mul__(self, other):
        self._check(other)
        ring = self.ring
        add, mul, iszero, zero = ring.add, ring.mul, ring.is_zero, ring.zero
        n = self.n
        nz = [
            [(k, b) for k, b in enumerate(row) if not iszero(b)] for row in other.rows
        ]
        out = []
        for arow in self.rows:
            acc = [zero] * n
            for l, a in enumerate(arow):
                if iszero(a):
                    continue
                for k, b in nz[l]:
                    acc[k] = add(acc[k], mul(a, b))
            out.append(tuple(acc))
        return Matrix._raw(ring, n, tuple(out))

    def scale(self, c) -> "Matrix":
        """Left multiplication by a scalar of the coefficient ring."""
        v = self.ring.coerce(c)
        mul = self.ring.mul
        return Matrix._raw(
            self.ring, self.n, tuple(tuple(mul(v, a) for a in row) for row in self.rows)
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring, self.rows))

    def is_zero(self) -> bool:
        iszero = self.ring.is_zero
        return all(iszero(a) for row in self.rows for a in row)

    def __bool__(self):
        return not self.is_zero()

    def zero_like(self) -> "Matrix":
        return Matrix.zeros(self.ring, self.n)

    def one_like(self) -> "Matrix":
        return Matrix.identity(self.ring, self.n)

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.ring, self.rows[i][j])

    def trace(self) -> Scalar:
        acc = self.ring.zero
        for i in range(self.n):
            acc = self.ring.add(acc, self.rows[i][i])
        return Scalar(self.ring, acc)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.ring, self.n, tuple(zip(*self.rows)))

    def reversal_conjugate(self) -> "Matrix":
        """Conjugation by the anti-diagonal permutation: reverse rows and columns.

        An involutive ring automorphism, so it maps commutators to commutators.
        """
        return Matrix._raw(
            self.ring, self.n, tuple(row[::-1] for row in self.rows[::-1])
        )

    def cast(self, ring: Ring) -> "Matrix":
        """Re-coerce entries into another ring (payloads via format/parse for
        plain integer payloads, the common case for structural matrices)."""
        if ring == self.ring:
            return self
        return Matrix(ring, [[_cast_payload(self.ring, ring, a) for a in row] for row in self.rows])

    def det(self) -> Scalar:
        if self.ring.noncommutative:
            raise NoncommutativeCoefficients("determinant needs commutative entries")
        if self.ring.is_domain:
            return Scalar(self.ring, _det_bareiss(self.ring, self.rows, self.n))
        return Scalar(self.ring, _det_laplace(self.ring, self.rows, self.n))

    def adjugate_inverse(self):
        """Exact inverse via the adjugate, or None when det is not a unit."""
        d = self.det().value
        inv = self.ring.try_invert(d)
        if inv is None:
            return None
        ring, n = self.ring, self.n
        mul, neg = ring.mul, ring.neg
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                minor_rows = tuple(
                    tuple(r[c] for c in range(n) if c != i)
                    for k, r in enumerate(self.rows)
                    if k != j
                )
                cof = (
                    _det_bareiss(ring, minor_rows, n - 1)
                    if ring.is_domain
                    else _det_laplace(ring, minor_rows, n - 1)
                ) if n > 1 else ring.one
                if (i + j) % 2:
                    cof = neg(cof)
                row.append(mul(inv, cof))
            out.append(tuple(row))
        return Matrix._raw(ring, n, tuple(out))

    def format_rows(self) -> list:
        fmt = self.ring.format
        return [[fmt(a) for a in row] for row in self.rows]

    def __repr__(self):
        body = "; ".join(",".join(r) for r in self.format_rows())
        return f"Matrix({self.ring!r}, {self.n}, [{body}])"


def _cast_payload(src: Ring, dst: Ring, payload):
    if src == dst:
        return payload
    if isinstance(payload, int):
        return dst.from_int(payload)
    return dst.parse(src.format(payload))


def _det_bareiss(ring: Ring, rows: tuple, n: int):
    """Fraction-free elimination; every division is exact in the domain."""
    if n == 0:
        return ring.one
    m = [list(r) for r in rows]
    sub, mul, div, iszero = ring.sub, ring.mul, ring.divexact, ring.is_zero
    sign = False
    prev = ring.one
    for k in range(n - 1):
        if iszero(m[k][k]):
            for r in range(k + 1, n):
                if not iszero(m[r][k]):
                    m[k], m[r] = m[r], m[k]
                    sign = not sign
                    break
            else:
                return ring.zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = div(sub(mul(pivot, m[i][j]), mul(m[i][k], m[k][j])), prev)
            m[i][k] = ring.zero
        prev = pivot
    d = m[n - 1][n - 1]
    return ring.neg(d) if sign else d


def _det_laplace(ring: Ring, rows: tuple, n: int):
    """Column-mask Laplace expansion with memoisation; works over any
    commutative ring, used where elimination is unavailable."""
    if n == 0:
        return ring.one
    add, sub, mul, iszero = ring.add, ring.sub, ring.mul, ring.is_zero
    memo: dict = {}

    def go(row: int, mask: int):
        if row == n:
            return ring.one
        key = mask
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = ring.zero
        sign = True
        for j in range(n):
            bit = 1 << j
            if not mask & bit:
                continue
            a = rows[row][j]
            if not iszero(a):
                term = mul(a, go(row + 1, mask & ~bit))
                acc = add(acc, term) if sign else sub(acc, term)
            sign = not sign  # alternates over available columns only
        memo[key] = acc
        return acc

    return go(0, (1 << n) - 1)


def block_diagonal(ring: Ring, blocks) -> Matrix:
    sizes = [b.n for b in blocks]
    for b in blocks:
        if b.ring != ring:
            raise RingMismatch("blocks must share the coefficient ring")
    n = sum(sizes)
    z = ring.zero
    grid = [[z] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            grid[off + i][off : off + b.n] = row
        off += b.n
    return Matrix._raw(ring, n, tuple(tuple(r) for r in grid))


class DirectSum:
    """An element of a direct sum of matrix rings; operations are coordinatewise."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise EmptySum("direct sum needs at least one summand")
        for p in parts:
            if not isinstance(p, Matrix):
                raise TypeError("direct sum parts must be matrices")
        self.parts = parts

    def _check(self, other: "DirectSum"):
        if not isinstance(other, DirectSum):
            raise TypeError(f"expected a direct sum element, got {type(other).__name__}")
        if len(self.parts) != len(other.parts):
            raise ShapeMismatch("different number of summands")

    def __add__(self, other):
        self._check(other)
        return DirectSum(a + b for a, b in zip(self.parts, other.parts))

    def __sub__(self, other):
        self._check(other)
        return DirectSum(a - b for a, b in zip(self.parts, other.parts))

    def __mul__(self, other):
        self._check(other)
        return DirectSum(a * b for a, b in zip(self.parts, other.parts))

    def __neg__(self):
        return DirectSum(-a for a in self.parts)

    def __eq__(self, other):
        if not isinstance(other, DirectSum):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def __bool__(self):
        return not self.is_zero()

    def zero_like(self) -> "DirectSum":
        return DirectSum(p.zero_like() for p in self.parts)

    def one_like(self) -> "DirectSum":
        return DirectSum(p.one_like() for p in self.parts)

    def __repr__(self):
        return "DirectSum(" + ", ".join(repr(p) for p in self.parts) + ")"


def direct_sum(parts) -> DirectSum:
    """Embed a list of matrices as one element of the product ring."""
    return DirectSum(parts)


@dataclass(frozen=True)
class MatrixSpace:
    """Working ring of n x n matrices over a coefficient ring."""

    ring: Ring
    n: int

    def zero(self) -> Matrix:
        return Matrix.zeros(self.ring, self.n)

    def one(self) -> Matrix:
        return Matrix.identity(self.ring, self.n)

    def random(self, rng, bound=10**6) -> Matrix:
        return Matrix.random(self.ring, self.n, rng, bound)

    def label(self) -> str:
        return f"M{self.n}({self.ring.label()})"


@dataclass(frozen=True)
class DirectSumSpace:
    """Working ring: a finite direct sum of matrix spaces."""

    parts: tuple

    def zero(self) -> DirectSum:
        return DirectSum(p.zero() for p in self.parts)

    def one(self) -> DirectSum:
        return DirectSum(p.one() for p in self.parts)

    def random(self, rng, bound=10**6) -> DirectSum:
        return DirectSum(p.random(rng, bound) for p in self.parts)

    def label(self) -> str:
        return "+".join(p.label() for p in self.parts)


@dataclass(frozen=True)
class ScalarSpace:
    """A coefficient ring viewed as a working ring (used for quaternions)."""

    ring: Ring

    def zero(self) -> Scalar:
        return Scalar(self.ring, self.ring.zero)

    def one(self) -> Scalar:
        return Scalar(self.ring, self.ring.one)

    def random(self, rng, bound=10**6) -> Scalar:
        return Scalar(self.ring, self.ring.random(rng, bound))

    def label(self) -> str:
        return self.ring.label()
