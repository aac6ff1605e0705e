"""Certificate-producing rewriting of multiplied commutators.

Three elementary expansions drive everything here:

* ``expand_sandwich``:        a[x,y]b   = a[[b,y],x] + a[[x,b],y] + ab[x,y]
* ``split_left_multiplier``:  a[x,y]    = [ax,y] + [y,a]x
* ``expand_product_bracket``: c[p,q1q2] = [cp,q1]q2 + q1[cp,q2] + [q1q2,c]p

The third one turns a multiplied bracket into exactly three products of
pairs of commutators whenever p, q1, q2 themselves carry generating pairs.
Feeding it a unit identity 1 = s[u, vw] (from a witness triple) decomposes
an arbitrary element into at most 3 pair products; feeding it the rows of
a d-row unit expansion 1 = sum_j a_j [x_j, y_j z_j] b_j yields at most 12d.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cert import (
    Certificate,
    PairProduct,
    SingleCommutator,
    Witness,
    make_certificate,
)
from .errors import (
    InvalidWitness,
    NotACommutator,
    RingMismatch,
    UnknownStructure,
)


def _require_witness(obj, slot: str) -> Witness:
    if not isinstance(obj, Witness):
        raise NotACommutator(
            f"the {slot} factor must carry a commutator pair (got {type(obj).__name__})"
        )
    return obj


@dataclass(frozen=True)
class ScaledBracket:
    """A term of shape  multiplier * [p, q]  with the pair recorded."""

    multiplier: object
    bracket: Witness

    def value(self):
        return self.multiplier * self.bracket.value


@dataclass(frozen=True)
class BracketTimes:
    """A term of shape  [p, q] * right  with the pair recorded."""

    bracket: Witness
    right: object

    def value(self):
        return self.bracket.value * self.right


def expand_sandwich(a, x, y, b) -> list:
    """Rewrite a[x,y]b as three left-multiplied brackets.

    Returns [a*[[b,y],x], a*[[x,b],y], (a*b)*[x,y]] as ScaledBracket terms;
    their values sum exactly to a[x,y]b.
    """
    by = b * y - y * b
    xb = x * b - b * x
    return [
        ScaledBracket(a, Witness(by, x)),
        ScaledBracket(a, Witness(xb, y)),
        ScaledBracket(a * b, Witness(x, y)),
    ]


def split_left_multiplier(a, x, y) -> tuple:
    """Rewrite a[x,y] as [ax, y] + [y, a]x.

    Returns (Witness for the bracket [ax,y], BracketTimes for [y,a]*x).
    """
    return (Witness(a * x, y), BracketTimes(Witness(y, a), x))


def expand_product_bracket(c, p, q1, q2) -> list:
    """Rewrite c[p, q1*q2] as exactly three pair products.

    p, q1, q2 must be commutators given with their generating pairs;
    c is arbitrary.  The three terms are [cp, q1]*q2, q1*[cp, q2] and
    [q1q2, c]*p, each a product of two commutators.
    """
    p = _require_witness(p, "p")
    q1 = _require_witness(q1, "q1")
    q2 = _require_witness(q2, "q2")
    cp = c * p.value
    return [
        PairProduct(Witness(cp, q1.value), q2),
        PairProduct(q1, Witness(cp, q2.value)),
        PairProduct(Witness(q1.value * q2.value, c), p),
    ]


@dataclass(frozen=True)
class UnitWitness:
    """Data certifying 1 = s * [u.value, v.value * w.value]."""

    s: object
    u: Witness
    v: Witness
    w: Witness

    def validate(self) -> None:
        for slot, obj in (("u", self.u), ("v", self.v), ("w", self.w)):
            _require_witness(obj, slot)
            if obj.value != obj.recompute():
                raise InvalidWitness(f"stored {slot} value does not match its pair")
        vw = self.v.value * self.w.value
        bracket = self.u.value * vw - vw * self.u.value
        got = self.s * bracket
        one = _one_like(got)
        if got != one:
            raise InvalidWitness("s * [u, vw] is not the unit")

    @staticmethod
    def from_triple(triple) -> "UnitWitness":
        """Build from any object exposing u, v, w witnesses and s."""
        return UnitWitness(triple.s, triple.u, triple.v, triple.w)


@dataclass(frozen=True)
class UnitExpansion:
    """Rows (a_j, x_j, y_j, z_j, b_j) with 1 = sum_j a_j [x_j, y_j z_j] b_j."""

    rows: tuple

    def __init__(self, rows: Sequence):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))

    def validate(self) -> None:
        if not self.rows:
            raise InvalidWitness("a unit expansion needs at least one row")
        total = None
        for a, x, y, z, b in self.rows:
            for slot, obj in (("x", x), ("y", y), ("z", z)):
                _require_witness(obj, slot)
                if obj.value != obj.recompute():
                    raise InvalidWitness(f"stored {slot} value does not match its pair")
            yz = y.value * z.value
            bracket = x.value * yz - yz * x.value
            term = a * bracket * b
            total = term if total is None else total + term
        if total != _one_like(total):
            raise InvalidWitness("rows do not sum to the unit")


def _one_like(element):
    one = getattr(element, "one_like", None)
    if one is not None:
        return one()
    raise RingMismatch("cannot determine the unit of this element type")


def xi3_decompose(a, witness: UnitWitness) -> Certificate:
    """Certificate with at most 3 pair products for a, from 1 = s[u, vw].

    The closed form is a = [(as)u, v]w + v[(as)u, w] + [vw, as]u.
    """
    witness.validate()
    terms = expand_product_bracket(a * witness.s, witness.u, witness.v, witness.w)
    return make_certificate(a, tuple(terms), "unit-bracket-3")


def mixed_decompose(a, witness: UnitWitness) -> Certificate:
    """Certificate with one plain commutator plus one pair product.

    Uses v*w = v, so 1 = s[u, v] and a = [(as)u, v] + [v, as]u.
    """
    witness.validate()
    if witness.v.value * witness.w.value != witness.v.value:
        raise InvalidWitness("the mixed split needs v*w = v")
    c = a * witness.s
    single = SingleCommutator(Witness(c * witness.u.value, witness.v.value))
    pair = PairProduct(Witness(witness.v.value, c), witness.u)
    return make_certificate(a, (single, pair), "unit-bracket-mixed")


def unit_expansion_decompose(a, expansion: UnitExpansion) -> Certificate:
    """Certificate with at most 12 pair products per expansion row.

    Each row contributes (a*a_j)[x, yz]b_j, rewritten through the sandwich
    identity; the [b,yz] slot splits by the product rule into two brackets,
    leaving four multiplied brackets of shape c[p, q1q2], and each of those
    expands into three pair products.
    """
    expansion.validate()
    terms = []
    for aj, x, y, z, bj in expansion.rows:
        c = a * aj
        b = bj
        neg_c = -c
        # c[[b,yz],x] = -c[x,[b,y]z] - c[x,y[b,z]]
        terms += expand_product_bracket(neg_c, x, Witness(b, y.value), z)
        terms += expand_product_bracket(neg_c, x, y, Witness(b, z.value))
        # c[[x,b],yz]
        terms += expand_product_bracket(c, Witness(x.value, b), y, z)
        # cb[x,yz]
        terms += expand_product_bracket(c * b, x, y, z)
    return make_certificate(a, tuple(terms), "unit-expansion-12d")


def _cast_witness(w: Witness, ring) -> Witness:
    return Witness(w.p.cast(ring), w.q.cast(ring))


def unit_witness_for(space) -> UnitWitness:
    """Ready-made unit witness for a matrix space or a direct sum of them.

    The integer witness data is cast into each coordinate's coefficient
    ring, so the returned witness lives in the same space as the elements
    it will decompose.
    """
    from .matrices import DirectSum, DirectSumSpace, MatrixSpace
    from .witness import witness_triple

    if isinstance(space, MatrixSpace):
        t = witness_triple(space.n)
        if space.ring == t.s.ring:
            return UnitWitness.from_triple(t)
        return UnitWitness(
            t.s.cast(space.ring),
            _cast_witness(t.u, space.ring),
            _cast_witness(t.v, space.ring),
            _cast_witness(t.w, space.ring),
        )
    if isinstance(space, DirectSumSpace):
        triples = [witness_triple(p.n) for p in space.parts]
        casts = [
            (
                t.s.cast(p.ring),
                _cast_witness(t.u, p.ring),
                _cast_witness(t.v, p.ring),
                _cast_witness(t.w, p.ring),
            )
            for t, p in zip(triples, space.parts)
        ]
        return UnitWitness(
            DirectSum([c[0] for c in casts]),
            Witness(DirectSum([c[1].p for c in casts]), DirectSum([c[1].q for c in casts])),
            Witness(DirectSum([c[2].p for c in casts]), DirectSum([c[2].q for c in casts])),
            Witness(DirectSum([c[3].p for c in casts]), DirectSum([c[3].q for c in casts])),
        )
    raise UnknownStructure(f"no unit witness construction for {type(space).__name__}")


# --------------------------------------------------------------------------
# Structural upper bounds


@dataclass(frozen=True)
class BoundRule:
    bound: int
    constructive: bool
    rule: str
    detail: str


def xi_upper_bounds(structure: str) -> list:
    """All applicable upper bounds for a structurally described ring.

    Accepted descriptions: matrix rings ``M<n>(<coeff>)``, direct sums
    joined with ``+``, ``Quat``, ``Z23``, and ``subring-xi:<k>`` for a
    unital ring containing a unital subring with known invariant k.
    """
    text = structure.strip()
    rules: list = []
    if text.startswith("subring-xi:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError as exc:
            raise UnknownStructure(f"bad subring invariant in {structure!r}") from exc
        if k < 1:
            raise UnknownStructure("the subring invariant must be at least 1")
        rules.append(
            BoundRule(
                15 * k**3,
                False,
                "unital-subring-cubed",
                f"a unital subring with invariant {k} gives the cubic bound 15*{k}^3",
            )
        )
        return rules
    if text == "Quat":
        rules.append(
            BoundRule(2, True, "quaternion-pair", "rational quaternions split in two pair products")
        )
        return rules
    if text == "Z23" or text == "Z2,3":
        rules.append(
            BoundRule(6, True, "dimension-drop", "the dimension-drop algebra splits in six pair products")
        )
        return rules

    parts = [p.strip() for p in text.split("+")]
    sizes = []
    for part in parts:
        parsed = _parse_matrix_part(part)
        if parsed is None:
            raise UnknownStructure(f"unrecognized ring structure {structure!r}")
        sizes.append(parsed)
    if not sizes:
        raise UnknownStructure("empty structure description")
    if all(n >= 2 for n, _ in sizes):
        if len(sizes) == 1:
            rules.append(
                BoundRule(2, True, "matrix-ring", "square matrices of size >= 2 split in two pair products")
            )
            if sizes[0][1] in ("Q", "GF"):
                rules.append(
                    BoundRule(
                        1,
                        False,
                        "matrix-ring-over-field",
                        "over a field a single pair product suffices (bound only)",
                    )
                )
        else:
            rules.append(
                BoundRule(
                    2,
                    True,
                    "matrix-ring-sum",
                    "coordinatewise splitting keeps two pair products",
                )
            )
        # every coordinate of size >= 2 admits a witness triple, so a unit
        # bracket witness exists coordinatewise
        rules.append(
            BoundRule(
                3,
                True,
                "unit-bracket-3",
                "a unit bracket witness gives three pair products",
            )
        )
    if not rules:
        raise UnknownStructure(f"no bound rule applies to {structure!r}")
    rules.sort(key=lambda r: (r.bound, not r.constructive))
    return rules


def _parse_matrix_part(part: str) -> Optional[tuple]:
    import re

    m = re.fullmatch(r"M(\d+)\(([^)]+)\)", part)
    if not m:
        return None
    n = int(m.group(1))
    coeff = m.group(2).strip()
    if coeff == "Q":
        kind = "Q"
    elif coeff.startswith("F"):
        kind = "GF"
    elif coeff == "Z" or coeff.startswith("Z"):
        kind = "Z"
    else:
        kind = "other"
    return (n, kind)


