"""Witness triples (u, v, w) of commutators in integer matrix rings.

A triple consists of three commutators u, v, w in M_n(Z) such that the
bracket [u, v] is invertible over the integers (determinant +-1) and
v * w = v.  Consequently s = [u, v]^(-1) satisfies 1 = s * [u, v * w],
the identity every unit-witness construction rests on.  Sizes 2 and 3 are
explicit; larger sizes are block-diagonal combinations (n = 2k + 3l).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cert import Witness, commutator
from .errors import InvalidWitness, SizeTooSmall
from .matrices import DirectSum, Matrix, block_diagonal
from .rings import INTEGERS as Z


@dataclass(frozen=True)
class WitnessTriple:
    n: int
    u: Witness
    v: Witness
    w: Witness
    bracket_uv: Matrix
    s: Matrix  # exact inverse of bracket_uv

    def validate(self):
        """Re-derive every stored fact by direct computation."""
        for name, wit in (("u", self.u), ("v", self.v), ("w", self.w)):
            if wit.recompute() != wit.value:
                raise InvalidWitness(f"{name} is not the bracket of its pair")
        if commutator(self.u.value, self.v.value) != self.bracket_uv:
            raise InvalidWitness("stored bracket of u and v is wrong")
        d = self.bracket_uv.det().value
        if d not in (1, -1):
            raise InvalidWitness(f"bracket of u and v has determinant {d}")
        ident = Matrix.identity(Z, self.n)
        if self.s * self.bracket_uv != ident or self.bracket_uv * self.s != ident:
            raise InvalidWitness("s is not the inverse of the bracket")
        if self.v.value * self.w.value != self.v.value:
            raise InvalidWitness("v * w differs from v")


def _mat(rows) -> Matrix:
    return Matrix(Z, rows)


def _triple_2() -> WitnessTriple:
    e12 = Matrix.unit(Z, 2, 0, 1)
    e21 = Matrix.unit(Z, 2, 1, 0)
    e11 = Matrix.unit(Z, 2, 0, 0)
    e22 = Matrix.unit(Z, 2, 1, 1)
    u = Witness(e12, e22)                       # [e12, e22] = e12
    v = Witness(e21, e11)                       # [e21, e11] = e21
    w = Witness(e12, e21)                       # [e12, e21] = diag(1, -1)
    bracket = commutator(u.value, v.value)      # diag(1, -1)
    s = bracket                                 # own inverse
    return WitnessTriple(2, u, v, w, bracket, s)


def _triple_3() -> WitnessTriple:
    u_val = _mat([[0, 0, 1], [1, 0, 0], [0, 0, 0]])
    v_val = _mat([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    u = Witness(Matrix.diagonal(Z, [1, 2, 0]), u_val)
    v = Witness(v_val, Matrix.diagonal(Z, [2, 1, 0]))
    w = Witness(_mat([[0, 1, 0], [0, 0, 2], [0, 0, 0]]), v_val)  # diag(1, 1, -2)
    bracket = commutator(u_val, v_val)
    s = bracket * bracket                       # bracket has order 3
    return WitnessTriple(3, u, v, w, bracket, s)


def _combine(parts: list) -> WitnessTriple:
    n = sum(t.n for t in parts)

    def blocks(pick):
        return block_diagonal(Z, [pick(t) for t in parts])

    u = Witness(blocks(lambda t: t.u.p), blocks(lambda t: t.u.q))
    v = Witness(blocks(lambda t: t.v.p), blocks(lambda t: t.v.q))
    w = Witness(blocks(lambda t: t.w.p), blocks(lambda t: t.w.q))
    bracket = blocks(lambda t: t.bracket_uv)
    s = blocks(lambda t: t.s)
    return WitnessTriple(n, u, v, w, bracket, s)


@lru_cache(maxsize=None)
def witness_triple(n: int) -> WitnessTriple:
    """The witness triple in M_n(Z); every invariant is re-verified here."""
    if n < 2:
        raise SizeTooSmall("witness triples need size at least 2")
    if n == 2:
        t = _triple_2()
    elif n == 3:
        t = _triple_3()
    else:
        # n = 2k + 3l with l = 0 for even n and l = 1 for odd n
        l = n % 2
        k = (n - 3 * l) // 2
        t = _combine([_triple_2()] * k + [_triple_3()] * l)
    t.validate()
    return t


@dataclass(frozen=True)
class ProductWitness:
    """Coordinatewise witness data over a direct sum of integer matrix rings:
    u, v, w are commutators in the product and 1 = s * [u, v * w]."""

    sizes: tuple
    u: Witness
    v: Witness
    w: Witness
    s: DirectSum

    def validate(self):
        for name, wit in (("u", self.u), ("v", self.v), ("w", self.w)):
            if wit.recompute() != wit.value:
                raise InvalidWitness(f"{name} is not the bracket of its pair")
        one = self.s.one_like()
        if self.s * commutator(self.u.value, self.v.value * self.w.value) != one:
            raise InvalidWitness("s * [u, v*w] is not the unit")


def subring_witness(sizes) -> ProductWitness:
    """Witness data for a direct sum of matrix rings given the block sizes."""
    sizes = tuple(sizes)
    triples = [witness_triple(n) for n in sizes]

    def gather(pick):
        return DirectSum(pick(t) for t in triples)

    u = Witness(gather(lambda t: t.u.p), gather(lambda t: t.u.q))
    v = Witness(gather(lambda t: t.v.p), gather(lambda t: t.v.q))
    w = Witness(gather(lambda t: t.w.p), gather(lambda t: t.w.q))
    s = gather(lambda t: t.s)
    pw = ProductWitness(sizes, u, v, w, s)
    pw.validate()
    return pw
