"""Exact coefficient rings and scalars.

Each ring object bundles a descriptor (kind plus parameters) with exact
arithmetic on plain Python payloads:

    integers        -> int
    rationals       -> fractions.Fraction
    integers mod m  -> int in [0, m)
    prime field p   -> int in [0, p)
    polynomials     -> tuple of base payloads, low degree first, no trailing zeros
    quaternions     -> 4-tuple of Fractions (1, i, j, k components)

Payloads are kept canonical so `==` on payloads is semantic equality.  The
matrix layer fetches the arithmetic callables once per operation, which keeps
inner loops close to native speed for int and Fraction payloads.
"""

from __future__ import annotations

import operator
import re
from fractions import Fraction
from math import gcd

from .errors import RingMismatch, SpecFormatError

_F0 = Fraction(0)
_F1 = Fraction(1)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Ring:
    """Base class: descriptor identity plus payload arithmetic."""

    kind = "?"
    is_domain = True
    noncommutative = False

    def _key(self):
        return (self.kind,)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return self.label()

    def label(self) -> str:
        return self.kind

    # default derived ops; subclasses may override with faster versions
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def coerce(self, v):
        """Accept a payload, an int, a string, or a Scalar of this ring."""
        if isinstance(v, Scalar):
            if v.ring != self:
                raise RingMismatch(f"scalar of {v.ring} used in {self}")
            return v.value
        if isinstance(v, str):
            return self.parse(v)
        if isinstance(v, int):
            return self.from_int(v)
        return self._accept(v)

    def _accept(self, v):
        raise SpecFormatError(f"cannot interpret {v!r} as an element of {self}")

    def scalar(self, v) -> "Scalar":
        return Scalar(self, self.coerce(v))

    def divexact(self, a, b):
        raise NotImplementedError(f"exact division undefined for {self}")


class IntegerRing(Ring):
    kind = "Z"
    zero = 0
    one = 1
    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)
    is_zero = staticmethod(operator.not_)

    def from_int(self, k):
        return k

    def _accept(self, v):
        if isinstance(v, int):
            return v
        raise SpecFormatError(f"not an integer: {v!r}")

    def try_invert(self, a):
        return a if a in (1, -1) else None

    def divexact(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} not divisible by {b}")
        return q

    def parse(self, s: str):
        try:
            return int(s)
        except ValueError as e:
            raise SpecFormatError(f"bad integer literal {s!r}") from e

    def format(self, a) -> str:
        return str(a)

    def random(self, rng, bound=10**6):
        return rng.randint(-bound, bound)


def _q_make(num: int, den: int) -> Fraction:
    """Fraction from an already-reduced numerator/denominator pair."""
    f = Fraction.__new__(Fraction)
    f._numerator = num
    f._denominator = den
    return f


class RationalRing(Ring):
    kind = "Q"
    zero = _F0
    one = _F1
    is_zero = staticmethod(operator.not_)

    # Plain Fraction arithmetic re-reduces every result with one gcd of
    # full-size products; splitting into the small cross-gcds first (Knuth
    # 4.5.1) yields canonical results with far cheaper gcd calls, which
    # dominates dense exact linear algebra on big random entries.

    @staticmethod
    def add(a, b):
        na, da = a._numerator, a._denominator
        nb, db = b._numerator, b._denominator
        g = gcd(da, db)
        if g == 1:
            return _q_make(na * db + da * nb, da * db)
        s = da // g
        t = na * (db // g) + nb * s
        g2 = gcd(t, g)
        if g2 == 1:
            return _q_make(t, s * db)
        return _q_make(t // g2, s * (db // g2))

    @staticmethod
    def sub(a, b):
        na, da = a._numerator, a._denominator
        nb, db = b._numerator, b._denominator
        g = gcd(da, db)
        if g == 1:
            return _q_make(na * db - da * nb, da * db)
        s = da // g
        t = na * (db // g) - nb * s
        g2 = gcd(t, g)
        if g2 == 1:
            return _q_make(t, s * db)
        return _q_make(t // g2, s * (db // g2))

    @staticmethod
    def mul(a, b):
        na, da = a._numerator, a._denominator
        nb, db = b._numerator, b._denominator
        g1 = gcd(na, db)
        if g1 > 1:
            na //= g1
            db //= g1
        g2 = gcd(nb, da)
        if g2 > 1:
            nb //= g2
            da //= g2
        return _q_make(na * nb, db * da)

    @staticmethod
    def neg(a):
        return _q_make(-a._numerator, a._denominator)

    def from_int(self, k):
        return Fraction(k)

    def _accept(self, v):
        if isinstance(v, Fraction):
            return v
        raise SpecFormatError(f"not a rational: {v!r}")

    def try_invert(self, a):
        return 1 / a if a else None

    def divexact(self, a, b):
        return a / b

    def parse(self, s: str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as e:
            raise SpecFormatError(f"bad rational literal {s!r}") from e

    def format(self, a) -> str:
        return str(a)

    def random(self, rng, bound=10**6):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


class ModularRing(Ring):
    """Integers modulo m, m >= 2.  Not assumed to be a domain."""

    kind = "Zmod"
    is_domain = False

    __slots__ = ("m", "zero", "one", "add", "sub", "mul", "neg")

    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        self.m = m
        self.zero = 0
        self.one = 1 % m
        self.add = lambda a, b: (a + b) % m
        self.sub = lambda a, b: (a - b) % m
        self.mul = lambda a, b: (a * b) % m
        self.neg = lambda a: (-a) % m

    is_zero = staticmethod(operator.not_)

    def _key(self):
        return (self.kind, self.m)

    def label(self):
        return f"Z{self.m}"

    def from_int(self, k):
        return k % self.m

    def _accept(self, v):
        if isinstance(v, int):
            return v % self.m
        raise SpecFormatError(f"not a residue: {v!r}")

    def try_invert(self, a):
        a %= self.m
        g, x = _xgcd(a, self.m)
        return x % self.m if g == 1 else None

    def is_nilpotent(self, a) -> bool:
        a %= self.m
        for _ in range(self.m.bit_length()):
            if a == 0:
                return True
            a = (a * a) % self.m
        return a == 0

    def parse(self, s: str):
        try:
            return int(s) % self.m
        except ValueError as e:
            raise SpecFormatError(f"bad residue literal {s!r}") from e

    def format(self, a) -> str:
        return str(a % self.m)

    def random(self, rng, bound=None):
        return rng.randrange(self.m)


def _xgcd(a: int, b: int):
    x0, x1 = 1, 0
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
    return a, x0


class PrimeFieldRing(ModularRing):
    """Prime field, a domain; primality checked at construction."""

    kind = "GF"
    is_domain = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p)

    def label(self):
        return f"F{self.m}"

    def try_invert(self, a):
        a %= self.m
        return pow(a, self.m - 2, self.m) if a else None

    def divexact(self, a, b):
        inv = self.try_invert(b)
        if inv is None:
            raise ZeroDivisionError("division by zero in prime field")
        return (a * inv) % self.m


class PolynomialRing(Ring):
    """Univariate polynomials over a base ring; payload is a coefficient tuple."""

    __slots__ = ("base", "var", "zero", "one", "is_domain")

    kind = "Poly"
    is_zero = staticmethod(operator.not_)

    def __init__(self, base: Ring, var: str = "x"):
        if base.noncommutative:
            raise ValueError("polynomial coefficients must commute")
        if not var.isidentifier():
            raise ValueError(f"bad variable name {var!r}")
        self.base = base
        self.var = var
        self.zero = ()
        self.one = (base.one,)
        self.is_domain = base.is_domain

    def _key(self):
        return (self.kind, self.base._key(), self.var)

    def label(self):
        return f"{self.base.label()}[{self.var}]"

    def _strip(self, coeffs: list) -> tuple:
        bz = self.base.is_zero
        while coeffs and bz(coeffs[-1]):
            coeffs.pop()
        return tuple(coeffs)

    def add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        if len(a) < len(b):
            a, b = b, a
        badd = self.base.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = badd(out[i], c)
        if len(a) == len(b):
            return self._strip(out)
        return tuple(out)

    def neg(self, a):
        bneg = self.base.neg
        return tuple(bneg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        if len(a) == 1:
            c = a[0]
            if c == self.base.one:
                return b
            bmul = self.base.mul
            out = [bmul(c, x) for x in b]
            return self._strip(out) if not self.is_domain else tuple(out)
        if len(b) == 1:
            c = b[0]
            if c == self.base.one:
                return a
            bmul = self.base.mul
            out = [bmul(x, c) for x in a]
            return self._strip(out) if not self.is_domain else tuple(out)
        badd, bmul, bz = self.base.add, self.base.mul, self.base.zero
        out = [bz] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if self.base.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = badd(out[i + j], bmul(ca, cb))
        return self._strip(out)

    def from_int(self, k):
        c = self.base.from_int(k)
        return (c,) if not self.base.is_zero(c) else ()

    def _accept(self, v):
        if isinstance(v, (tuple, list)):
            return self._strip([self.base.coerce(c) for c in v])
        return super()._accept(v)

    def degree(self, a) -> int:
        return len(a) - 1 if a else -1

    def try_invert(self, a):
        if not a:
            return None
        if len(a) == 1:
            inv = self.base.try_invert(a[0])
            return (inv,) if inv is not None else None
        if self.is_domain:
            return None
        # over Z/m a polynomial is a unit iff its constant term is a unit and
        # the higher coefficients are nilpotent; build the inverse degree by degree
        if not isinstance(self.base, ModularRing):
            return None
        c0 = self.base.try_invert(a[0])
        if c0 is None or not all(self.base.is_nilpotent(c) for c in a[1:]):
            return None
        cap = len(a) * self.base.m.bit_length() + 1
        inv = [c0]
        for k in range(1, cap):
            acc = self.base.zero
            for i in range(1, min(k, len(a) - 1) + 1):
                acc = self.base.add(acc, self.base.mul(a[i], inv[k - i]))
            inv.append(self.base.mul(self.base.neg(c0), acc))
        out = self._strip(inv)
        return out if self.mul(a, out) == self.one else None

    def divexact(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(a)
        out = [self.base.zero] * max(len(a) - len(b) + 1, 0)
        bz = self.base.is_zero
        while len(rem) >= len(b):
            while rem and bz(rem[-1]):
                rem.pop()
            if len(rem) < len(b):
                break
            q = self.base.divexact(rem[-1], b[-1])
            shift = len(rem) - len(b)
            out[shift] = q
            for i, cb in enumerate(b):
                rem[shift + i] = self.base.sub(rem[shift + i], self.base.mul(q, cb))
        if self._strip(rem):
            raise ArithmeticError("inexact polynomial division")
        return self._strip(out)

    def parse(self, s: str):
        text = s.replace(" ", "")
        if not text:
            raise SpecFormatError("empty polynomial literal")
        terms = _split_signed_terms(text)
        var = self.var
        coeffs: dict[int, object] = {}
        term_re = re.compile(
            r"^([+-]?)(?:([0-9][0-9/]*)\*?)?(?:" + re.escape(var) + r"(?:\^([0-9]+))?)?$"
        )
        for t in terms:
            m = term_re.match(t)
            if not m or t in ("+", "-", ""):
                raise SpecFormatError(f"bad polynomial term {t!r} in {s!r}")
            sign, coef, exp = m.groups()
            has_var = var in t
            if coef is None and not has_var:
                raise SpecFormatError(f"bad polynomial term {t!r} in {s!r}")
            c = self.base.parse(coef) if coef is not None else self.base.one
            if sign == "-":
                c = self.base.neg(c)
            e = int(exp) if exp is not None else (1 if has_var else 0)
            coeffs[e] = self.base.add(coeffs.get(e, self.base.zero), c)
        if not coeffs:
            return ()
        out = [self.base.zero] * (max(coeffs) + 1)
        for e, c in coeffs.items():
            out[e] = c
        return self._strip(out)

    def format(self, a) -> str:
        if not a:
            return "0"
        parts = []
        for e in range(len(a) - 1, -1, -1):
            c = a[e]
            if self.base.is_zero(c):
                continue
            cs = self.base.format(c)
            neg = cs.startswith("-")
            body = cs[1:] if neg else cs
            if e == 0:
                term = body
            else:
                xs = self.var if e == 1 else f"{self.var}^{e}"
                term = xs if body == "1" else f"{body}*{xs}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("-" if neg else "+") + term)
        return "".join(parts)

    def random(self, rng, bound=10**6, degree=8):
        deg = rng.randint(0, degree)
        coeffs = [self.base.random(rng, bound) for _ in range(deg + 1)]
        return self._strip(coeffs)


def _split_signed_terms(text: str) -> list[str]:
    terms = []
    cur = ""
    for i, ch in enumerate(text):
        if ch in "+-" and i > 0:
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    return terms


class QuaternionAlgebra(Ring):
    """Rational quaternions: payload (w, x, y, z) with ij = k, jk = i, ki = j."""

    kind = "Quat"
    noncommutative = True
    zero = (_F0, _F0, _F0, _F0)
    one = (_F1, _F0, _F0, _F0)

    @staticmethod
    def is_zero(a):
        return not (a[0] or a[1] or a[2] or a[3])

    @staticmethod
    def add(a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    @staticmethod
    def sub(a, b):
        return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])

    @staticmethod
    def neg(a):
        return (-a[0], -a[1], -a[2], -a[3])

    @staticmethod
    def mul(a, b):
        w1, x1, y1, z1 = a
        w2, x2, y2, z2 = b
        return (
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def from_int(self, k):
        return (Fraction(k), _F0, _F0, _F0)

    def _accept(self, v):
        if isinstance(v, tuple) and len(v) == 4:
            return tuple(Fraction(c) for c in v)
        if isinstance(v, Fraction):
            return (v, _F0, _F0, _F0)
        raise SpecFormatError(f"not a quaternion: {v!r}")

    def conjugate(self, a):
        return (a[0], -a[1], -a[2], -a[3])

    def norm(self, a) -> Fraction:
        return a[0] ** 2 + a[1] ** 2 + a[2] ** 2 + a[3] ** 2

    def try_invert(self, a):
        n = self.norm(a)
        if not n:
            return None
        return (a[0] / n, -a[1] / n, -a[2] / n, -a[3] / n)

    _TERM = re.compile(r"^([+-]?)([0-9][0-9/]*)?([ijk])?$")

    def parse(self, s: str):
        text = s.replace(" ", "")
        if not text:
            raise SpecFormatError("empty quaternion literal")
        comps = {"": _F0, "i": _F0, "j": _F0, "k": _F0}
        for t in _split_signed_terms(text):
            m = self._TERM.match(t)
            if not m or (m.group(2) is None and m.group(3) is None):
                raise SpecFormatError(f"bad quaternion term {t!r} in {s!r}")
            sign, coef, unit = m.groups()
            c = Fraction(coef) if coef is not None else _F1
            if sign == "-":
                c = -c
            comps[unit or ""] += c
        return (comps[""], comps["i"], comps["j"], comps["k"])

    def format(self, a) -> str:
        parts = [str(a[0])]
        for c, unit in zip(a[1:], "ijk"):
            if c == 1:
                parts.append(f"+{unit}")
            elif c == -1:
                parts.append(f"-{unit}")
            elif c < 0:
                parts.append(f"-{-c}{unit}")
            else:
                parts.append(f"+{c}{unit}")
        return "".join(parts)

    def random(self, rng, bound=10**6):
        return tuple(
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(4)
        )


class Scalar:
    """A ring element carried with its ring, for the public API and the CLI."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        self.ring = ring
        self.value = value

    def _same(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = Scalar(self.ring, self.ring.coerce(other))
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        o = self._same(other)
        return Scalar(self.ring, self.ring.add(self.value, o.value))

    def __sub__(self, other):
        o = self._same(other)
        return Scalar(self.ring, self.ring.sub(self.value, o.value))

    def __mul__(self, other):
        o = self._same(other)
        return Scalar(self.ring, self.ring.mul(self.value, o.value))

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return not self.ring.is_zero(self.value)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def invert(self):
        """Two-sided inverse in the ring, or None when there is none."""
        inv = self.ring.try_invert(self.value)
        return Scalar(self.ring, inv) if inv is not None else None

    def zero_like(self) -> "Scalar":
        return Scalar(self.ring, self.ring.zero)

    def one_like(self) -> "Scalar":
        return Scalar(self.ring, self.ring.one)

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"Scalar({self.ring!r}, {self})"


INTEGERS = IntegerRing()
RATIONALS = RationalRing()
QUATERNIONS = QuaternionAlgebra()

_modular_cache: dict = {}


def Zmod(m: int) -> ModularRing:
    key = ("Zmod", m)
    if key not in _modular_cache:
        _modular_cache[key] = ModularRing(m)
    return _modular_cache[key]


def GF(p: int) -> PrimeFieldRing:
    key = ("GF", p)
    if key not in _modular_cache:
        _modular_cache[key] = PrimeFieldRing(p)
    return _modular_cache[key]


def polynomials_over(base: Ring, var: str = "x") -> PolynomialRing:
    return PolynomialRing(base, var)
