"""Exhaustive finite-ring laboratory.

Rings are presented as index tables: ``add`` and ``mul`` are size x size
arrays over element indices.  Everything downstream — commutator sets,
sumset saturation for the exact pair-product invariant, ideal closures,
nil checks, commutativity reports — is bit-set/table arithmetic on those
indices, so even the 256-element matrix rings stay in milliseconds.

Axiom validation is exhaustive while size^3 stays below ~2*10^7 (which
covers everything the CLI grammar can build at desk scale) and falls back
to a million sampled triples beyond that.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import CounterexampleFound, SpecFormatError, UnknownStructure

_EXHAUSTIVE_LIMIT = 2 * 10**7
_SAMPLE_TRIPLES = 10**6


class FiniteRing:
    """A finite ring given by total add/mul tables over element indices."""

    __slots__ = ("size", "add", "mul", "zero", "one", "neg", "label", "names")

    def __init__(self, add, mul, label: str = "", names: Optional[list] = None,
                 validate: bool = True):
        try:
            add = np.asarray(add, dtype=np.int32)
            mul = np.asarray(mul, dtype=np.int32)
        except (TypeError, ValueError) as exc:
            raise SpecFormatError("add and mul must be rectangular integer tables") from exc
        if add.ndim != 2 or mul.ndim != 2:
            raise SpecFormatError("add and mul must be square tables of equal size")
        n = add.shape[0]
        if add.shape != (n, n) or mul.shape != (n, n):
            raise SpecFormatError("add and mul must be square tables of equal size")
        if n == 0:
            raise SpecFormatError("a ring needs at least the zero element")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise SpecFormatError("table entries must be element indices")
        self.size = n
        self.add = add
        self.mul = mul
        self.label = label
        self.names = names

        zero = self._find_zero()
        if zero is None:
            raise SpecFormatError("no additive identity in the add table")
        self.zero = zero
        self.neg = self._find_negatives()
        self.one = self._find_one()
        if validate:
            self._validate()

    # -- structure discovery --------------------------------------------------

    def _find_zero(self) -> Optional[int]:
        idx = np.arange(self.size)
        for z in range(self.size):
            if np.array_equal(self.add[z], idx):
                return z
        return None

    def _find_negatives(self) -> np.ndarray:
        rows, cols = np.nonzero(self.add == self.zero)
        neg = np.full(self.size, -1, dtype=np.int32)
        neg[rows] = cols
        if (neg < 0).any():
            raise SpecFormatError("some element has no additive inverse")
        return neg

    def _find_one(self) -> Optional[int]:
        idx = np.arange(self.size)
        for e in range(self.size):
            if np.array_equal(self.mul[e], idx) and np.array_equal(self.mul[:, e], idx):
                return int(e)
        return None

    # -- axiom validation -------------------------------------------------------

    def _validate(self) -> None:
        n = self.size
        if not np.array_equal(self.add, self.add.T):
            raise SpecFormatError("addition is not commutative")
        if n**3 <= _EXHAUSTIVE_LIMIT:
            self._validate_exhaustive()
        else:
            self._validate_sampled()

    def _validate_exhaustive(self) -> None:
        A, M = self.add, self.mul
        n = self.size
        chunk = max(1, min(n, 2 * 10**6 // max(1, n * n)))
        for lo in range(0, n, chunk):
            hi = min(n, lo + chunk)
            blockA = A[lo:hi]
            blockM = M[lo:hi]
            # (i+j)+k == i+(j+k)
            if not np.array_equal(A[blockA, :], blockA[:, A]):
                raise SpecFormatError("addition is not associative")
            # (i*j)*k == i*(j*k)
            if not np.array_equal(M[blockM, :], blockM[:, M]):
                raise SpecFormatError("multiplication is not associative")
            # i*(j+k) == i*j + i*k
            if not np.array_equal(blockM[:, A], A[blockM[:, :, None], blockM[:, None, :]]):
                raise SpecFormatError("left distributivity fails")
            # (j+k)*i == j*i + k*i   (checked as (i+j)*k == i*k + j*k)
            if not np.array_equal(M[A[lo:hi], :], A[blockM[:, None, :], M[None, :, :]]):
                raise SpecFormatError("right distributivity fails")

    def _validate_sampled(self) -> None:
        rng = np.random.default_rng(0)
        n = self.size
        i, j, k = (rng.integers(0, n, _SAMPLE_TRIPLES) for _ in range(3))
        A, M = self.add, self.mul
        if not np.array_equal(A[A[i, j], k], A[i, A[j, k]]):
            raise SpecFormatError("addition is not associative (sampled)")
        if not np.array_equal(M[M[i, j], k], M[i, M[j, k]]):
            raise SpecFormatError("multiplication is not associative (sampled)")
        if not np.array_equal(M[i, A[j, k]], A[M[i, j], M[i, k]]):
            raise SpecFormatError("left distributivity fails (sampled)")
        if not np.array_equal(M[A[i, j], k], A[M[i, k], M[j, k]]):
            raise SpecFormatError("right distributivity fails (sampled)")

    # -- helpers ------------------------------------------------------------------

    def sub(self, i, j):
        return self.add[i, self.neg[j]]

    def commutator(self, i, j):
        return self.sub(self.mul[i, j], self.mul[j, i])

    def name_of(self, i: int) -> str:
        if self.names is not None:
            return self.names[i]
        return str(i)

    def is_commutative(self) -> bool:
        return np.array_equal(self.mul, self.mul.T)

    def is_semiprime(self) -> bool:
        """No nonzero a with a*R*a = {0}."""
        for a in range(self.size):
            if a == self.zero:
                continue
            if (self.mul[self.mul[a, :], a] == self.zero).all():
                return False
        return True


@dataclass(frozen=True)
class Subset:
    """A subset of a finite ring as a boolean membership mask."""

    ring: FiniteRing
    mask: np.ndarray

    def indices(self) -> np.ndarray:
        return np.nonzero(self.mask)[0]

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, i: int) -> bool:
        return bool(self.mask[i])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subset)
            and self.ring is other.ring
            and np.array_equal(self.mask, other.mask)
        )

    def is_full(self) -> bool:
        return bool(self.mask.all())

    def is_zero_only(self) -> bool:
        return len(self) == 1 and self.ring.zero in self


def _mask(ring: FiniteRing, indices) -> Subset:
    m = np.zeros(ring.size, dtype=bool)
    m[np.asarray(list(indices), dtype=np.int64)] = True
    return Subset(ring, m)


def commutator_set(ring: FiniteRing) -> Subset:
    """The exact set {xy - yx} over all pairs."""
    table = ring.sub(ring.mul, ring.mul.T)
    m = np.zeros(ring.size, dtype=bool)
    m[np.unique(table)] = True
    return Subset(ring, m)


def product_set(a: Subset, b: Subset) -> Subset:
    """The exact set of pairwise products {x*y : x in a, y in b}."""
    ring = a.ring
    ai, bi = a.indices(), b.indices()
    if len(ai) == 0 or len(bi) == 0:
        return Subset(ring, np.zeros(ring.size, dtype=bool))
    prods = ring.mul[np.ix_(ai, bi)]
    m = np.zeros(ring.size, dtype=bool)
    m[np.unique(prods)] = True
    return Subset(ring, m)


def sumset(a: Subset, b: Subset) -> Subset:
    ring = a.ring
    ai, bi = a.indices(), b.indices()
    if len(ai) == 0:
        return b
    if len(bi) == 0:
        return a
    sums = ring.add[np.ix_(ai, bi)]
    m = np.zeros(ring.size, dtype=bool)
    m[np.unique(sums)] = True
    return Subset(ring, m)


def additive_closure(seed: Subset) -> Subset:
    """Smallest additive subgroup containing the seed."""
    ring = seed.ring
    m = seed.mask.copy()
    m[ring.zero] = True
    current = Subset(ring, m)
    while True:
        grown = sumset(current, current)
        merged = Subset(ring, current.mask | grown.mask)
        if merged == current:
            return current
        current = merged


def pair_product_set(ring: FiniteRing) -> Subset:
    """The set of products of two commutators."""
    c = commutator_set(ring)
    return product_set(c, c)


@dataclass(frozen=True)
class SaturationReport:
    xi: Optional[int]            # least N with the N-fold sumset full, or None
    steps: tuple                 # cumulative sumset sizes, one per N
    stabilized_at: int           # N where growth stopped (or cap)
    cap: int


def xi_exact(ring: FiniteRing, cap: int = 16) -> SaturationReport:
    """Least N with every element a sum of N pair products, by saturation.

    Pair products include 0, so the N-fold sumsets grow monotonically;
    saturation below the full ring means no N works (None).
    """
    if ring.one is None:
        raise UnknownStructure("the exact invariant needs a unital ring")
    p = pair_product_set(ring)
    current = p
    sizes = [len(current)]
    n = 1
    while n <= cap:
        if current.is_full():
            return SaturationReport(n, tuple(sizes), n, cap)
        grown = sumset(current, p)
        if grown == current:
            return SaturationReport(None, tuple(sizes), n, cap)
        current = grown
        sizes.append(len(current))
        n += 1
    return SaturationReport(None, tuple(sizes), cap, cap)


def ideal_closure(ring: FiniteRing, seed: Subset, unital_hull: bool = True) -> Subset:
    """Smallest two-sided ideal containing the seed.

    The generated ideal always contains the seed itself (the formal-unit
    products), so the flag only documents intent; both settings agree on
    the closure computed here.
    """
    _ = unital_hull
    full = Subset(ring, np.ones(ring.size, dtype=bool))
    current = additive_closure(seed)
    while True:
        left = product_set(full, current)
        right = product_set(current, full)
        m = current.mask | left.mask | right.mask
        grown = additive_closure(Subset(ring, m))
        if grown == current:
            return current
        current = grown


def is_nil(ring: FiniteRing, subset: Subset) -> bool:
    """True iff every member has a vanishing power (exponent <= size)."""
    return all(nil_index(ring, int(a)) is not None for a in subset.indices())


def nil_index(ring: FiniteRing, a: int) -> Optional[int]:
    """Least k with a^k = 0, or None (powers cycle within size steps)."""
    x = int(a)
    for k in range(1, ring.size + 1):
        if x == ring.zero:
            return k
        x = int(ring.mul[x, a])
    return None


# -- structural reports ----------------------------------------------------------


@dataclass(frozen=True)
class CommutativityReport:
    label: str
    size: int
    semiprime: bool
    commutative: bool                  # (1)
    commutators_central: bool          # (2) [[R,R], R] = 0
    commutators_commute_with_pairs: bool  # (3) [[R,R], [R,R]^2] = 0
    commutators_commute: bool          # (4) [[R,R], [R,R]] = 0
    equivalence_holds: Optional[bool]  # the four agree (semiprime only)
    commutator_ideal_nil: Optional[bool]  # checked when (3) holds
    nil_implication_holds: bool        # (3) => commutator ideal nil


def commutativity_report(ring: FiniteRing) -> CommutativityReport:
    """Evaluate the four commutativity conditions and the nil implication.

    On a semiprime ring the four conditions must agree; a disagreement (or
    a failure of the nil implication anywhere) is raised as a
    counterexample, since it could only come from an implementation bug.
    """
    L = commutator_set(ring)
    Li = L.indices()
    bracket_table = ring.sub(ring.mul, ring.mul.T)

    cond1 = ring.is_commutative()
    cond2 = bool((bracket_table[np.ix_(Li, np.arange(ring.size))] == ring.zero).all())
    P = product_set(L, L)
    Pi = P.indices()
    cond3 = bool((bracket_table[np.ix_(Li, Pi)] == ring.zero).all())
    cond4 = bool((bracket_table[np.ix_(Li, Li)] == ring.zero).all())

    semiprime = ring.is_semiprime()
    equivalence: Optional[bool] = None
    if semiprime:
        equivalence = cond1 == cond2 == cond3 == cond4
        if not equivalence:
            raise CounterexampleFound(
                f"{ring.label or 'ring'}: the four commutativity conditions "
                "disagree on a semiprime ring"
            )

    ideal_is_nil: Optional[bool] = None
    nil_ok = True
    if cond3:
        ideal = ideal_closure(ring, L)
        ideal_is_nil = is_nil(ring, ideal)
        nil_ok = ideal_is_nil
        if not nil_ok:
            raise CounterexampleFound(
                f"{ring.label or 'ring'}: commutators commute with pair "
                "products but the commutator ideal is not nil"
            )
    return CommutativityReport(
        label=ring.label,
        size=ring.size,
        semiprime=semiprime,
        commutative=cond1,
        commutators_central=cond2,
        commutators_commute_with_pairs=cond3,
        commutators_commute=cond4,
        equivalence_holds=equivalence,
        commutator_ideal_nil=ideal_is_nil,
        nil_implication_holds=nil_ok,
    )


@dataclass(frozen=True)
class LieIdealReport:
    field_size: int
    lie_ideal: bool          # [L, R] stays inside L
    brackets_vanish: bool    # [L, L] = {0}
    not_central: bool        # [L, R] != {0}
    control_central: bool    # scalar control: [scalars, R] = {0}


def char2_lie_ideal_check(field_size: int) -> LieIdealReport:
    """Over a characteristic-2 field, the symmetric two-by-two family
    {{m, l}, {l, m}} is a noncentral Lie ideal with vanishing brackets."""
    if field_size not in (2, 4):
        raise UnknownStructure("the check runs over the fields of size 2 and 4")
    base = field_ring(field_size)
    ring = matrix_ring(2, base)
    enc = _matrix_encoder(2, base.size)

    members = []
    scalars = []
    for mu in range(base.size):
        for lam in range(base.size):
            members.append(enc([[mu, lam], [lam, mu]]))
        scalars.append(enc([[mu, 0], [0, mu]]))
    L = _mask(ring, members)
    S = _mask(ring, scalars)

    bracket_table = ring.sub(ring.mul, ring.mul.T)
    Li = L.indices()
    all_i = np.arange(ring.size)
    lie_ideal = bool(L.mask[bracket_table[np.ix_(Li, all_i)]].all())
    brackets_vanish = bool((bracket_table[np.ix_(Li, Li)] == ring.zero).all())
    not_central = bool((bracket_table[np.ix_(Li, all_i)] != ring.zero).any())
    Si = S.indices()
    control_central = bool((bracket_table[np.ix_(Si, all_i)] == ring.zero).all())
    return LieIdealReport(field_size, lie_ideal, brackets_vanish, not_central, control_central)


@dataclass(frozen=True)
class RadicalPowerReport:
    label: str
    ideal_size: int
    max_power: int           # largest minimal m over the ideal (0 if empty)
    powers: dict = field(repr=False, default_factory=dict)


def radical_power_check(ring: FiniteRing) -> RadicalPowerReport:
    """Every element of the commutator ideal has a power landing in the
    additive span of pair products; reports the minimal exponent per element."""
    L = commutator_set(ring)
    J = ideal_closure(ring, L)
    span = additive_closure(pair_product_set(ring))
    powers: dict = {}
    max_m = 0
    for a in J.indices():
        x = int(a)
        found = None
        for m in range(1, ring.size + 1):
            if m > 1:
                x = int(ring.mul[x, a])
            if span.mask[x]:
                found = m
                break
        if found is None:
            raise CounterexampleFound(
                f"{ring.label or 'ring'}: element {ring.name_of(int(a))} has no "
                "power inside the additive span of pair products"
            )
        powers[int(a)] = found
        max_m = max(max_m, found)
    return RadicalPowerReport(ring.label, len(J), max_m, powers)


# -- ring builders -----------------------------------------------------------------


@lru_cache(maxsize=None)
def zmod_ring(m: int) -> FiniteRing:
    if m < 1:
        raise SpecFormatError("the modulus must be at least 1")
    idx = np.arange(m)
    add = (idx[:, None] + idx[None, :]) % m
    mul = (idx[:, None] * idx[None, :]) % m
    return FiniteRing(add, mul, label=f"Z{m}", names=[str(i) for i in range(m)])


@lru_cache(maxsize=None)
def gf4_ring() -> FiniteRing:
    """The four-element field: bit pairs with xor addition and
    multiplication modulo w^2 + w + 1."""
    size = 4
    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)

    def gf_mul(a: int, b: int) -> int:
        # polynomial multiply over bits, reduce by w^2 = w + 1
        prod = 0
        for shift in range(2):
            if (b >> shift) & 1:
                prod ^= a << shift
        for bit in (3, 2):
            if (prod >> bit) & 1:
                prod ^= (0b11 << (bit - 2)) | (1 << bit)
        return prod & 0b11

    for a in range(size):
        for b in range(size):
            add[a, b] = a ^ b
            mul[a, b] = gf_mul(a, b)
    names = ["0", "1", "w", "w+1"]
    return FiniteRing(add, mul, label="F4", names=names)


def field_ring(q: int) -> FiniteRing:
    if q == 4:
        return gf4_ring()
    if _is_prime(q):
        ring = zmod_ring(q)
        return FiniteRing(ring.add, ring.mul, label=f"F{q}", names=ring.names,
                          validate=False)
    raise UnknownStructure(f"no field of size {q} available (primes and 4 only)")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _matrix_encoder(n: int, base_size: int):
    def enc(rows) -> int:
        code = 0
        weight = 1
        for i in range(n):
            for j in range(n):
                code += int(rows[i][j]) * weight
                weight *= base_size
        return code

    return enc


def matrix_ring(n: int, base: FiniteRing, upper_triangular: bool = False,
                validate: bool = True) -> FiniteRing:
    """All n x n matrices (optionally upper triangular) over a finite base."""
    if n < 1:
        raise SpecFormatError("matrix size must be at least 1")
    positions = [
        (i, j) for i in range(n) for j in range(n) if not upper_triangular or j >= i
    ]
    size = base.size ** len(positions)
    code_space = base.size ** (n * n)
    if size > 4096 or code_space > 5 * 10**7:
        raise UnknownStructure(
            f"a table of {size} matrices is too large to enumerate"
        )
    entries = []
    for combo in itertools.product(range(base.size), repeat=len(positions)):
        m = [[base.zero] * n for _ in range(n)]
        for (i, j), v in zip(positions, combo):
            m[i][j] = v
        entries.append(m)
    E = np.array(entries, dtype=np.int32)          # (size, n, n)

    weights = (base.size ** np.arange(n * n, dtype=np.int64)).reshape(n, n)
    codes = (E * weights).sum(axis=(1, 2))
    lookup = np.full(code_space, -1, dtype=np.int32)
    lookup[codes] = np.arange(size, dtype=np.int32)

    add_t = np.empty((size, size), dtype=np.int32)
    mul_t = np.empty((size, size), dtype=np.int32)
    chunk = max(1, 2 * 10**6 // max(1, size))
    for lo in range(0, size, chunk):
        hi = min(size, lo + chunk)
        blockE = E[lo:hi]
        addc = base.add[blockE[:, None, :, :], E[None, :, :, :]]  # (c, size, n, n)
        add_t[lo:hi] = lookup[(addc * weights).sum(axis=(2, 3))]
        mulc = np.empty((hi - lo, size, n, n), dtype=np.int32)
        for i in range(n):
            for j in range(n):
                acc = np.full((hi - lo, size), base.zero, dtype=np.int32)
                for k in range(n):
                    term = base.mul[blockE[:, None, i, k], E[None, :, k, j]]
                    acc = base.add[acc, term]
                mulc[:, :, i, j] = acc
        mul_t[lo:hi] = lookup[(mulc * weights).sum(axis=(2, 3))]
    if (add_t < 0).any() or (mul_t < 0).any():
        raise SpecFormatError("matrix construction left the element set")

    shape = "U" if upper_triangular else "M"
    label = f"{shape}{n}({base.label})"
    names = None
    if size <= 4096:
        names = [
            "[" + ";".join(",".join(base.name_of(v) for v in row) for row in m) + "]"
            for m in entries
        ]
    return FiniteRing(add_t, mul_t, label=label, names=names, validate=validate)


_SPEC_RE = re.compile(r"([MU])(\d+)\(([A-Za-z]\d+)\)$")


def parse_finite_ring(spec: str) -> FiniteRing:
    """Ring spec grammar: M<n>(Z<m>), U<n>(Z<m>), M<n>(F<q>), bare Z<m>/F<q>,
    or tables:<path> for a JSON file {"add": [[...]], "mul": [[...]]}."""
    text = spec.strip()
    if text.startswith("tables:"):
        import json

        path = text[len("tables:"):]
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        try:
            return FiniteRing(
                data["add"], data["mul"], label=data.get("label", "tables")
            )
        except KeyError as exc:
            raise SpecFormatError("table files need add and mul entries") from exc
    base_only = _parse_base(text)
    if base_only is not None:
        return base_only
    m = _SPEC_RE.fullmatch(text)
    if not m:
        raise UnknownStructure(f"unrecognized finite ring spec {spec!r}")
    shape, n, base_text = m.group(1), int(m.group(2)), m.group(3)
    base = _parse_base(base_text)
    if base is None:
        raise UnknownStructure(f"unrecognized coefficient spec {base_text!r}")
    return matrix_ring(n, base, upper_triangular=(shape == "U"))


def _parse_base(text: str) -> Optional[FiniteRing]:
    m = re.fullmatch(r"Z(\d+)", text)
    if m:
        return zmod_ring(int(m.group(1)))
    m = re.fullmatch(r"F(\d+)", text)
    if m:
        return field_ring(int(m.group(1)))
    return None


def brute_report(ring: FiniteRing, cap: int = 16) -> dict:
    """JSON-shaped summary used by the command-line front end."""
    L = commutator_set(ring)
    P = pair_product_set(ring)
    sat = xi_exact(ring, cap) if ring.one is not None else None
    report = {
        "ring": ring.label,
        "size": ring.size,
        "unital": ring.one is not None,
        "commutative": ring.is_commutative(),
        "semiprime": ring.is_semiprime(),
        "commutator_set_size": len(L),
        "pair_product_set_size": len(P),
    }
    if sat is not None:
        report["xi"] = sat.xi
        report["saturation_sizes"] = list(sat.steps)
        report["xi_cap"] = sat.cap
    else:
        report["xi"] = None
        report["note"] = "no unit; the invariant is undefined"
    return report
