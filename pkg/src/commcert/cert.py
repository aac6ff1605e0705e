"""Certificates: sums of products of pairs of commutators, with verification.

A certificate states that `target` equals the sum of its term values, where
every bracket factor carries the pair of elements generating it.  The
verifier recomputes every bracket from its pair; cached values are checked,
never trusted.  Elements are anything with ring-element behaviour:
matrices, direct sums, scalars, or dimension-drop elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CommCertError, RingMismatch, ShapeMismatch


def commutator(p, q):
    """The additive commutator p*q - q*p."""
    return p * q - q * p


class Witness:
    """A commutator together with the pair that generates it.

    The cached value is always re-derivable as [p, q]; the constructor
    computes it, and `verify` recomputes it independently.
    """

    __slots__ = ("p", "q", "value")

    def __init__(self, p, q, value=None):
        self.p = p
        self.q = q
        self.value = commutator(p, q) if value is None else value

    def recompute(self):
        return commutator(self.p, self.q)

    def __eq__(self, other):
        if not isinstance(other, Witness):
            return NotImplemented
        return self.p == other.p and self.q == other.q and self.value == other.value

    def __repr__(self):
        return f"Witness({self.p!r}, {self.q!r})"


@dataclass(frozen=True)
class PairProduct:
    """One summand of the form [p1, q1] * [p2, q2]."""

    left: Witness
    right: Witness

    def value(self):
        return self.left.value * self.right.value


@dataclass(frozen=True)
class SingleCommutator:
    """One summand that is a single bracket [p, q]."""

    witness: Witness

    def value(self):
        return self.witness.value


@dataclass(frozen=True)
class Certificate:
    target: object
    terms: tuple
    provenance: str = ""

    def pair_count(self) -> int:
        return sum(1 for t in self.terms if isinstance(t, PairProduct))

    def single_count(self) -> int:
        return sum(1 for t in self.terms if isinstance(t, SingleCommutator))


@dataclass(frozen=True)
class VerificationResult:
    valid: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.valid


VALID = VerificationResult(True)


def _invalid(reason: str) -> VerificationResult:
    return VerificationResult(False, reason)


def verify(cert: Certificate) -> VerificationResult:
    """Recompute every witness and check the exact sum against the target.

    Deterministic and order-independent; ring or shape mismatches anywhere
    in the certificate yield an invalid result rather than an exception.
    """
    try:
        total = cert.target.zero_like()
        for idx, term in enumerate(cert.terms):
            if isinstance(term, PairProduct):
                witnesses = (term.left, term.right)
            elif isinstance(term, SingleCommutator):
                witnesses = (term.witness,)
            else:
                return _invalid(f"term {idx}: unknown term kind {type(term).__name__}")
            values = []
            for w in witnesses:
                fresh = w.recompute()
                if fresh != w.value:
                    return _invalid(f"term {idx}: witness mismatch")
                values.append(fresh)
            contribution = values[0] * values[1] if len(values) == 2 else values[0]
            total = total + contribution
        if total != cert.target:
            return _invalid("sum mismatch")
        return VALID
    except (RingMismatch, ShapeMismatch, TypeError, CommCertError) as e:
        return _invalid(f"malformed certificate: {e}")


def pair_count(cert: Certificate) -> int:
    return cert.pair_count()


def single_count(cert: Certificate) -> int:
    return cert.single_count()


def make_certificate(target, terms, provenance: str = "") -> Certificate:
    """Assemble a certificate, dropping terms whose value is zero."""
    kept = tuple(t for t in terms if not t.value().is_zero())
    return Certificate(target, kept, provenance)


def conjugated_term(term, conj):
    """Apply a ring homomorphism `conj` to every element of a term."""
    if isinstance(term, PairProduct):
        return PairProduct(
            Witness(conj(term.left.p), conj(term.left.q)),
            Witness(conj(term.right.p), conj(term.right.q)),
        )
    return SingleCommutator(Witness(conj(term.witness.p), conj(term.witness.q)))
