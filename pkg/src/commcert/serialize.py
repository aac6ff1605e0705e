"""Bit-exact JSON formats for rings, elements and certificates.

All numeric payloads travel as decimal strings (``"3"``, ``"-1/2"``,
``"1+2i-j+0k"``, ``"3*x^2-1"``) so nothing is rounded; structural fields
(matrix sizes, exponents) are plain JSON integers.  Output is rendered
with sorted keys so identical values serialize byte-identically.
"""

from __future__ import annotations

import json
import re
from typing import Union

from .cert import Certificate, PairProduct, SingleCommutator, Witness
from .errors import SpecFormatError, UnknownStructure
from .matrices import (
    DirectSum,
    DirectSumSpace,
    Matrix,
    MatrixSpace,
    ScalarSpace,
)
from .rings import (
    INTEGERS,
    QUATERNIONS,
    RATIONALS,
    GF,
    Ring,
    Scalar,
    Zmod,
    polynomials_over,
)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def pretty(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# -- ring codecs -----------------------------------------------------------------


def ring_to_json(ring: Ring) -> dict:
    kind = ring.kind
    if kind == "Z" or kind == "Q" or kind == "Quat":
        return {"kind": kind}
    if kind == "GF":
        return {"kind": "GF", "p": str(ring.m)}
    if kind == "Zmod":
        return {"kind": "Zmod", "m": str(ring.m)}
    if kind == "Poly":
        return {"kind": "Poly", "base": ring_to_json(ring.base), "var": ring.var}
    raise UnknownStructure(f"no JSON form for ring kind {kind!r}")


def ring_from_json(obj) -> Ring:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpecFormatError("a ring object needs a kind field")
    kind = obj["kind"]
    if kind == "Z":
        return INTEGERS
    if kind == "Q":
        return RATIONALS
    if kind == "Quat":
        return QUATERNIONS
    try:
        if kind == "Zmod":
            return Zmod(_int_field(obj, "m"))
        if kind == "GF":
            return GF(_int_field(obj, "p"))
        if kind == "Poly":
            base = ring_from_json(obj.get("base", {"kind": "Q"}))
            return polynomials_over(base, str(obj.get("var", "x")))
    except SpecFormatError:
        raise
    except ValueError as exc:
        raise SpecFormatError(f"bad ring parameters: {exc}") from exc
    raise SpecFormatError(f"unknown ring kind {kind!r}")


def _int_field(obj: dict, key: str) -> int:
    try:
        return int(obj[key])
    except (KeyError, ValueError, TypeError) as exc:
        raise SpecFormatError(f"ring object needs an integer field {key!r}") from exc


# -- ring spec strings -------------------------------------------------------------

_MATRIX_SPEC = re.compile(r"([MU])(\d+)\((.+)\)$")


def parse_scalar_ring(text: str) -> Ring:
    t = text.strip()
    if t == "Z":
        return INTEGERS
    if t == "Q":
        return RATIONALS
    if t == "Quat":
        return QUATERNIONS
    try:
        m = re.fullmatch(r"Z(\d+)", t)
        if m:
            return Zmod(int(m.group(1)))
        m = re.fullmatch(r"F(\d+)", t)
        if m:
            return GF(int(m.group(1)))
        m = re.fullmatch(r"([A-Za-z]\w*)\[(\w+)\]", t)
        if m:
            return polynomials_over(parse_scalar_ring(m.group(1)), m.group(2))
    except UnknownStructure:
        raise
    except ValueError as exc:
        raise UnknownStructure(f"bad coefficient ring {text!r}: {exc}") from exc
    raise UnknownStructure(f"unrecognized coefficient ring {text!r}")


def parse_space(text: str) -> Union[MatrixSpace, DirectSumSpace, ScalarSpace]:
    """Ring specs: M<n>(<coeff>), sums of those joined by +, Quat, or a
    bare coefficient ring; coeff in {Z, Q, Z<m>, F<p>, <ring>[x]}."""
    parts = [p.strip() for p in text.strip().split("+")]
    if not parts or not parts[0]:
        raise UnknownStructure("empty ring spec")
    spaces = []
    for part in parts:
        m = _MATRIX_SPEC.fullmatch(part)
        if m:
            if m.group(1) == "U":
                raise UnknownStructure(
                    "triangular specs are only for the finite-ring explorer"
                )
            n = int(m.group(2))
            if n < 1:
                raise UnknownStructure(f"matrix size must be positive in {part!r}")
            spaces.append(MatrixSpace(parse_scalar_ring(m.group(3)), n))
        else:
            spaces.append(ScalarSpace(parse_scalar_ring(part)))
    if len(spaces) == 1:
        return spaces[0]
    if any(isinstance(s, ScalarSpace) for s in spaces):
        raise UnknownStructure("direct sums are supported between matrix rings only")
    return DirectSumSpace(tuple(spaces))


def space_to_json(space) -> dict:
    if isinstance(space, MatrixSpace):
        return {"kind": "Matrix", "n": space.n, "ring": ring_to_json(space.ring)}
    if isinstance(space, ScalarSpace):
        return ring_to_json(space.ring)
    if isinstance(space, DirectSumSpace):
        return {"kind": "Sum", "parts": [space_to_json(p) for p in space.parts]}
    raise UnknownStructure(f"no JSON form for {type(space).__name__}")


# -- element codecs -----------------------------------------------------------------


def matrix_to_json(m: Matrix) -> dict:
    return {
        "ring": ring_to_json(m.ring),
        "n": m.n,
        "entries": [[m.ring.format(v) for v in row] for row in m.rows],
    }


def matrix_from_json(obj) -> Matrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise SpecFormatError("a matrix object needs entries")
    ring = ring_from_json(obj.get("ring", {"kind": "Z"}))
    entries = obj["entries"]
    n = int(obj.get("n", len(entries)))
    if len(entries) != n or any(len(row) != n for row in entries):
        raise SpecFormatError("matrix entries must form an n-by-n grid")
    try:
        rows = [[ring.parse(str(v)) for v in row] for row in entries]
    except (ValueError, SpecFormatError) as exc:
        raise SpecFormatError(f"bad matrix entry: {exc}") from exc
    return Matrix(ring, rows)


def element_to_json(x) -> dict:
    if isinstance(x, Matrix):
        return matrix_to_json(x)
    if isinstance(x, DirectSum):
        return {"parts": [matrix_to_json(p) for p in x.parts]}
    if isinstance(x, Scalar):
        return {"ring": ring_to_json(x.ring), "value": x.ring.format(x.value)}
    raise UnknownStructure(f"no JSON form for element type {type(x).__name__}")


def element_from_json(obj):
    if not isinstance(obj, dict):
        raise SpecFormatError("an element must be a JSON object")
    if "parts" in obj:
        return DirectSum([matrix_from_json(p) for p in obj["parts"]])
    if "entries" in obj:
        return matrix_from_json(obj)
    if "value" in obj:
        ring = ring_from_json(obj.get("ring", {"kind": "Quat"}))
        try:
            return Scalar(ring, ring.parse(str(obj["value"])))
        except ValueError as exc:
            raise SpecFormatError(f"bad scalar value: {exc}") from exc
    raise SpecFormatError("an element needs entries, parts, or value")


# -- certificate codecs ----------------------------------------------------------------


def _witness_to_json(w: Witness) -> dict:
    return {"p": element_to_json(w.p), "q": element_to_json(w.q)}


def _witness_from_json(obj) -> Witness:
    if not isinstance(obj, dict) or "p" not in obj or "q" not in obj:
        raise SpecFormatError("a commutator needs p and q")
    return Witness(element_from_json(obj["p"]), element_from_json(obj["q"]))


def term_to_json(term) -> dict:
    if isinstance(term, PairProduct):
        return {
            "kind": "pair",
            "l": _witness_to_json(term.left),
            "r": _witness_to_json(term.right),
        }
    if isinstance(term, SingleCommutator):
        return {"kind": "single", "w": _witness_to_json(term.witness)}
    raise UnknownStructure(f"no JSON form for term type {type(term).__name__}")


def term_from_json(obj):
    if not isinstance(obj, dict):
        raise SpecFormatError("a term must be a JSON object")
    kind = obj.get("kind")
    if kind == "pair":
        return PairProduct(_witness_from_json(obj["l"]), _witness_from_json(obj["r"]))
    if kind == "single":
        return SingleCommutator(_witness_from_json(obj["w"]))
    raise SpecFormatError(f"unknown term kind {kind!r}")


def _target_ring_json(target) -> dict:
    if isinstance(target, Matrix):
        return {"kind": "Matrix", "n": target.n, "ring": ring_to_json(target.ring)}
    if isinstance(target, DirectSum):
        return {
            "kind": "Sum",
            "parts": [
                {"kind": "Matrix", "n": p.n, "ring": ring_to_json(p.ring)}
                for p in target.parts
            ],
        }
    if isinstance(target, Scalar):
        return ring_to_json(target.ring)
    raise UnknownStructure(f"no ring description for {type(target).__name__}")


def cert_to_json(cert: Certificate) -> dict:
    return {
        "ring": _target_ring_json(cert.target),
        "target": element_to_json(cert.target),
        "terms": [term_to_json(t) for t in cert.terms],
        "provenance": cert.provenance,
    }


def cert_from_json(obj) -> Certificate:
    if not isinstance(obj, dict) or "target" not in obj or "terms" not in obj:
        raise SpecFormatError("a certificate needs target and terms")
    target = element_from_json(obj["target"])
    terms = tuple(term_from_json(t) for t in obj["terms"])
    return Certificate(target, terms, str(obj.get("provenance", "")))


# -- dimension-drop elements --------------------------------------------------------------


def z23_to_json(el) -> dict:
    return {
        "monomials": [
            {
                "tExp8": t8,
                "sExp8": s8,
                "matrix": [[RATIONALS.format(v) for v in row] for row in m.rows],
            }
            for t8, s8, m in el.monomials()
        ]
    }


def z23_from_json(obj):
    from .z23 import Z23Element

    if not isinstance(obj, dict) or "monomials" not in obj:
        raise SpecFormatError("a dimension-drop element needs a monomials list")
    items = []
    for mono in obj["monomials"]:
        try:
            t8 = int(mono["tExp8"])
            s8 = int(mono["sExp8"])
            grid = mono["matrix"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecFormatError("each monomial needs tExp8, sExp8, matrix") from exc
        if len(grid) != 6 or any(len(row) != 6 for row in grid):
            raise SpecFormatError("monomial matrices must be 6x6")
        rows = [[RATIONALS.parse(str(v)) for v in row] for row in grid]
        items.append(((t8, s8), Matrix(RATIONALS, rows)))
    return Z23Element(items)


def z23_witness_to_json(w: Witness) -> dict:
    return {"p": z23_to_json(w.p), "q": z23_to_json(w.q)}


def z23_term_to_json(term) -> dict:
    if isinstance(term, PairProduct):
        return {
            "kind": "pair",
            "l": z23_witness_to_json(term.left),
            "r": z23_witness_to_json(term.right),
        }
    if isinstance(term, SingleCommutator):
        return {"kind": "single", "w": z23_witness_to_json(term.witness)}
    raise UnknownStructure(f"no JSON form for term type {type(term).__name__}")


def z23_cert_to_json(cert: Certificate) -> dict:
    return {
        "ring": {"kind": "Z23"},
        "target": z23_to_json(cert.target),
        "terms": [z23_term_to_json(t) for t in cert.terms],
        "provenance": cert.provenance,
    }


def z23_term_from_json(obj):
    if not isinstance(obj, dict):
        raise SpecFormatError("a term must be a JSON object")

    def wit(o):
        return Witness(z23_from_json(o["p"]), z23_from_json(o["q"]))

    kind = obj.get("kind")
    if kind == "pair":
        return PairProduct(wit(obj["l"]), wit(obj["r"]))
    if kind == "single":
        return SingleCommutator(wit(obj["w"]))
    raise SpecFormatError(f"unknown term kind {kind!r}")


def z23_cert_from_json(obj) -> Certificate:
    if not isinstance(obj, dict) or "target" not in obj or "terms" not in obj:
        raise SpecFormatError("a certificate needs target and terms")
    target = z23_from_json(obj["target"])
    terms = tuple(z23_term_from_json(t) for t in obj["terms"])
    return Certificate(target, terms, str(obj.get("provenance", "")))
