"""Exact model of the dimension-drop algebra whose fibers interpolate
between 2x2 and 3x3 matrices.

Elements are polynomials in two formal generators T and S with 6x6
rational matrix coefficients, reduced by the single relation
S^8 = 1 - T^8 (so canonical forms keep the S-exponent below 8).
Semantically T = t^(1/8) and S = (1-t)^(1/8) on t in [0,1]; an element
is admissible when its value at t=0 has the (2x2 block) @ identity
pattern and its value at t=1 has the identity @ (3x3 block) pattern.

The module carries two bundles of distinguished elements:

* ``witness_elements``: the unit identity 1 = a[q, rs] + b[x, yz] at the
  natural eighth-root exponents; q and x store generating pairs inside
  the algebra.  The odd-exponent entries r, s, y, z provably admit no
  in-model generating pair (a leading-order partial-trace obstruction),
  so their ``pair`` slot is None.
* ``unit_expansion``: the same identity shifted to all-even exponents,
  where every bracket entry splits in half; this backs the six-term
  certificates produced by ``decompose``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .cert import Certificate, Witness, make_certificate
from .errors import InadmissibleInput, OutOfDomain
from .matrices import Matrix
from .rewrite import UnitExpansion, expand_product_bracket
from .rings import RATIONALS
from .witness import witness_triple


def tensor(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product of a 2x2 and a 3x3 block into a 6x6 rational
    matrix, laid out as (a @ b)[3i+k][3j+l] = a[i][j] * b[k][l]."""
    if a.n != 2 or b.n != 3:
        raise OutOfDomain("tensor expects a 2x2 first factor and 3x3 second factor")
    rows = []
    for i in range(2):
        for k in range(3):
            row = []
            for j in range(2):
                for l in range(3):
                    row.append(
                        Fraction(_as_fraction(a.rows[i][j]))
                        * Fraction(_as_fraction(b.rows[k][l]))
                    )
            rows.append(tuple(row))
    return Matrix._raw(RATIONALS, 6, tuple(rows))


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(v)


_I2 = Matrix.identity(RATIONALS, 2)
_I3 = Matrix.identity(RATIONALS, 3)


def embed_left(m: Matrix) -> Matrix:
    """2x2 block m into the 6x6 pattern m @ identity."""
    return tensor(m.cast(RATIONALS), _I3)


def embed_right(m: Matrix) -> Matrix:
    """3x3 block m into the 6x6 pattern identity @ m."""
    return tensor(_I2, m.cast(RATIONALS))


_ZERO6 = Matrix.zeros(RATIONALS, 6)
_ONE6 = Matrix.identity(RATIONALS, 6)


class Z23Element:
    """Canonical polynomial sum of monomials T^a S^b * (6x6 rationals)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        canon: dict = {}
        pending = list(coeffs.items() if isinstance(coeffs, dict) else coeffs)
        while pending:
            (t8, s8), m = pending.pop()
            if t8 < 0 or s8 < 0:
                raise OutOfDomain("exponents must be nonnegative")
            if m.is_zero():
                continue
            if s8 >= 8:
                # S^8 = 1 - T^8
                pending.append(((t8, s8 - 8), m))
                pending.append(((t8 + 8, s8 - 8), -m))
                continue
            key = (t8, s8)
            if key in canon:
                tot = canon[key] + m
                if tot.is_zero():
                    del canon[key]
                else:
                    canon[key] = tot
            else:
                canon[key] = m
        object.__setattr__(self, "coeffs", canon)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Z23Element") -> "Z23Element":
        if not isinstance(other, Z23Element):
            return NotImplemented
        items = list(self.coeffs.items()) + list(other.coeffs.items())
        return Z23Element(items)

    def __neg__(self) -> "Z23Element":
        return Z23Element([(k, -m) for k, m in self.coeffs.items()])

    def __sub__(self, other: "Z23Element") -> "Z23Element":
        if not isinstance(other, Z23Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "Z23Element") -> "Z23Element":
        if not isinstance(other, Z23Element):
            return NotImplemented
        items = []
        for (a1, b1), m1 in self.coeffs.items():
            for (a2, b2), m2 in other.coeffs.items():
                items.append(((a1 + a2, b1 + b2), m1 * m2))
        return Z23Element(items)

    def scale(self, c) -> "Z23Element":
        c = Fraction(c)
        return Z23Element([(k, m.scale(RATIONALS.coerce(c))) for k, m in self.coeffs.items()])

    def __eq__(self, other) -> bool:
        return isinstance(other, Z23Element) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset((k, m.rows) for k, m in self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def zero_like(self) -> "Z23Element":
        return zero()

    def one_like(self) -> "Z23Element":
        return one()

    # -- evaluation ---------------------------------------------------------

    def value_at_zero(self) -> Matrix:
        """Exact value at t = 0 (T = 0, S = 1)."""
        total = _ZERO6
        for (t8, _s8), m in self.coeffs.items():
            if t8 == 0:
                total = total + m
        return total

    def value_at_one(self) -> Matrix:
        """Exact value at t = 1 (T = 1, S = 0)."""
        total = _ZERO6
        for (_t8, s8), m in self.coeffs.items():
            if s8 == 0:
                total = total + m
        return total

    def eval_at(self, t):
        """Numeric 6x6 value at t in [0,1] (exact at the endpoints)."""
        import numpy as np

        tf = float(t)
        if tf < 0.0 or tf > 1.0:
            raise OutOfDomain(f"parameter {t!r} is outside [0, 1]")
        if tf == 0.0 or tf == 1.0:
            exact = self.value_at_zero() if tf == 0.0 else self.value_at_one()
            return np.array([[float(v) for v in row] for row in exact.rows])
        T = tf ** 0.125
        S = (1.0 - tf) ** 0.125
        out = np.zeros((6, 6))
        for (t8, s8), m in self.coeffs.items():
            w = (T ** t8) * (S ** s8)
            out += w * np.array([[float(v) for v in row] for row in m.rows])
        return out

    def monomials(self):
        """Sorted (t_exponent, s_exponent, matrix) triples."""
        return [(k[0], k[1], m) for k, m in sorted(self.coeffs.items())]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Z23Element(0)"
        parts = [f"T^{a}S^{b}*[...]" for a, b, _ in self.monomials()]
        return "Z23Element(" + " + ".join(parts) + ")"


def monomial(t8: int, s8: int, matrix: Matrix) -> Z23Element:
    return Z23Element([((t8, s8), matrix.cast(RATIONALS))])


def zero() -> Z23Element:
    return Z23Element([])


def one() -> Z23Element:
    return Z23Element([((0, 0), _ONE6)])


# -- boundary admissibility --------------------------------------------------


@dataclass(frozen=True)
class BoundaryReport:
    admissible: bool
    end: Optional[str] = None       # "t=0" or "t=1" for the first violation
    value: Optional[Matrix] = None  # the offending endpoint value

    def __bool__(self) -> bool:
        return self.admissible


def _is_left_pattern(m: Matrix) -> bool:
    """m = (2x2 block) @ identity: each 3x3 block is a scalar multiple
    of the identity."""
    for i in range(2):
        for j in range(2):
            scalar = m.rows[3 * i][3 * j]
            for k in range(3):
                for l in range(3):
                    want = scalar if k == l else 0
                    if m.rows[3 * i + k][3 * j + l] != want:
                        return False
    return True


def _is_right_pattern(m: Matrix) -> bool:
    """m = identity @ (3x3 block): diagonal 3x3 blocks all equal, the
    off-diagonal blocks zero."""
    for k in range(3):
        for l in range(3):
            ref = m.rows[k][l]
            if m.rows[3 + k][3 + l] != ref:
                return False
            if m.rows[k][3 + l] != 0 or m.rows[3 + k][l] != 0:
                return False
    return True


def boundary_check(el: Z23Element) -> BoundaryReport:
    at0 = el.value_at_zero()
    if not _is_left_pattern(at0):
        return BoundaryReport(False, "t=0", at0)
    at1 = el.value_at_one()
    if not _is_right_pattern(at1):
        return BoundaryReport(False, "t=1", at1)
    return BoundaryReport(True)


# -- distinguished elements ---------------------------------------------------


@dataclass(frozen=True)
class MarkedElement:
    """An element together with a generating pair inside the algebra,
    when one exists (None records a proved obstruction, not an omission)."""

    element: Z23Element
    pair: Optional[Witness] = None


@dataclass(frozen=True)
class WitnessFamily:
    a: MarkedElement
    q: MarkedElement
    r: MarkedElement
    s: MarkedElement
    b: MarkedElement
    x: MarkedElement
    y: MarkedElement
    z: MarkedElement

    def named(self) -> dict:
        return {
            "a": self.a, "q": self.q, "r": self.r, "s": self.s,
            "b": self.b, "x": self.x, "y": self.y, "z": self.z,
        }


@lru_cache(maxsize=1)
def witness_elements() -> WitnessFamily:
    """The unit-identity elements at their natural eighth-root exponents.

    1 = a[q, rs] + b[x, yz] holds exactly.  q = [T p1, T p2] and
    x = [S p1', S p2'] store generating pairs; r, s (bare T) and y, z
    (bare S) cannot be commutators of admissible elements — the
    order-one coefficient of any such commutator has vanishing partial
    trace, while theirs does not — so their pair slot is None.
    """
    t3 = witness_triple(3)
    t2 = witness_triple(2)

    def tmono(k: int, m: Matrix) -> Z23Element:
        return monomial(k, 0, embed_right(m))

    def smono(k: int, m: Matrix) -> Z23Element:
        return monomial(0, k, embed_left(m))

    a = MarkedElement(tmono(4, t3.s))
    q = MarkedElement(
        tmono(2, t3.u.value),
        Witness(tmono(1, t3.u.p), tmono(1, t3.u.q)),
    )
    r = MarkedElement(tmono(1, t3.v.value))
    s = MarkedElement(tmono(1, t3.w.value))
    b = MarkedElement(smono(4, t2.s))
    x = MarkedElement(
        smono(2, t2.u.value),
        Witness(smono(1, t2.u.p), smono(1, t2.u.q)),
    )
    y = MarkedElement(smono(1, t2.v.value))
    z = MarkedElement(smono(1, t2.w.value))
    return WitnessFamily(a, q, r, s, b, x, y, z)


@lru_cache(maxsize=1)
def unit_expansion() -> UnitExpansion:
    """The all-even-exponent unit expansion 1 = a*[q*, r*s*] + b*[x*, y*z*].

    Every bracket entry here is T or S times an embedded block, so each
    of q*, r*, s*, x*, y*, z* carries a generating pair inside the
    algebra; this is the form the certificate pipeline consumes.
    """
    t3 = witness_triple(3)
    t2 = witness_triple(2)

    def tpair(w) -> Witness:
        return Witness(
            monomial(1, 0, embed_right(w.p)), monomial(1, 0, embed_right(w.q))
        )

    def spair(w) -> Witness:
        return Witness(
            monomial(0, 1, embed_left(w.p)), monomial(0, 1, embed_left(w.q))
        )

    rows = (
        (monomial(2, 0, embed_right(t3.s)), tpair(t3.u), tpair(t3.v), tpair(t3.w), one()),
        (monomial(0, 2, embed_left(t2.s)), spair(t2.u), spair(t2.v), spair(t2.w), one()),
    )
    expansion = UnitExpansion(rows)
    expansion.validate()
    return expansion


# -- certificates --------------------------------------------------------------


def decompose(g: Z23Element) -> Certificate:
    """Certificate with at most six pair products for an admissible element.

    Splits g = g*a*[q*, r*s*] + g*b*[x*, y*z*] along the unit expansion and
    rewrites each half into three pair products.
    """
    report = boundary_check(g)
    if not report:
        raise InadmissibleInput(
            f"input violates the boundary pattern at {report.end}"
        )
    terms = []
    # rows carry unit right factors, so each half is plain c[x, yz]
    for aj, x, y, z, _bj in unit_expansion().rows:
        terms += expand_product_bracket(g * aj, x, y, z)
    return make_certificate(g, tuple(terms), "dimension-drop-6")


def random_admissible(rng, bound: int = 9) -> Z23Element:
    """Random boundary-admissible element with small rational entries."""

    def rnd_matrix(n: int) -> Matrix:
        return Matrix.random(RATIONALS, n, rng, bound)

    el = monomial(0, rng.randrange(1, 4), embed_left(rnd_matrix(2)))
    el = el + monomial(rng.randrange(1, 4), 0, embed_right(rnd_matrix(3)))
    c = Fraction(rng.randrange(-bound, bound + 1), rng.randrange(1, bound + 1))
    el = el + one().scale(c)
    for _ in range(rng.randrange(1, 4)):
        el = el + monomial(
            rng.randrange(1, 5), rng.randrange(1, 5), rnd_matrix(6)
        )
    return el


# -- identity verification ------------------------------------------------------


def h_element() -> Z23Element:
    """The scalar function t * identity, i.e. T^8 * 1."""
    return monomial(8, 0, _ONE6)


def unit_identity_parts() -> tuple:
    """(a[q,rs], b[x,yz]) computed exactly from the witness elements."""
    fam = witness_elements()
    rs = fam.r.element * fam.s.element
    qrs = fam.q.element * rs - rs * fam.q.element
    left = fam.a.element * qrs
    yz = fam.y.element * fam.z.element
    xyz = fam.x.element * yz - yz * fam.x.element
    right = fam.b.element * xyz
    return left, right


def unit_identity_report() -> dict:
    """Exact and numeric verification of 1 = a[q,rs] + b[x,yz]."""
    left, right = unit_identity_parts()
    h = h_element()
    exact = {
        "left_half_is_h": left == h,
        "right_half_is_one_minus_h": right == one() - h,
        "sum_is_one": (left + right) == one(),
    }
    fam = witness_elements()
    pair_checks = {}
    for name, marked in fam.named().items():
        if marked.pair is not None:
            pair_checks[name] = marked.pair.value == marked.element
    residual = max_grid_residual()
    return {
        "exact": exact,
        "pairs": pair_checks,
        "max_grid_residual": residual,
        "grid_points": 101,
    }


def grid_residuals(points: int = 101) -> list:
    """Numeric residual of the unit identity at each grid point."""
    import numpy as np

    fam = witness_elements()
    els = {k: v.element for k, v in fam.named().items()}
    out = []
    for idx in range(points):
        t = idx / (points - 1)
        vals = {k: el.eval_at(t) for k, el in els.items()}
        rs = vals["r"] @ vals["s"]
        qrs = vals["q"] @ rs - rs @ vals["q"]
        yz = vals["y"] @ vals["z"]
        xyz = vals["x"] @ yz - yz @ vals["x"]
        total = vals["a"] @ qrs + vals["b"] @ xyz
        out.append(float(np.max(np.abs(total - np.eye(6)))))
    return out


def max_grid_residual(points: int = 101) -> float:
    return max(grid_residuals(points))
