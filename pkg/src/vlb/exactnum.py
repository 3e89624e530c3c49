"""Exact arithmetic over sums of square roots of rationals.

A :class:`RadicalSum` is ``sum(q_m * sqrt(m))`` over distinct square-free
radicands ``m >= 1`` with rational coefficients ``q_m``.  The square roots of
distinct square-free integers are linearly independent over the rationals, so
a value is zero iff every stored coefficient is zero; the canonical term map
makes that test purely symbolic.  Signs of nonzero values are found by
evaluating rational enclosures of increasing precision until zero is
excluded.

:class:`Interval` is a closed interval with :class:`fractions.Fraction`
endpoints.  Arithmetic on it is exact, so the only place where outward
rounding matters is root extraction, which always rounds the lower end down
and the upper end up.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd, isqrt
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

__all__ = [
    "Interval",
    "RadicalSum",
    "canonicalize_root",
    "format_rational",
    "iroot",
    "parse_rational",
    "rad_add",
    "rad_mul",
    "rad_sign",
    "rad_to_interval",
    "to_fraction",
]

Number = Union[int, Fraction]

_SMALL_PRIMES_BOUND = 1000


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal literal such as ``"1e-30"``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


_SMALL_PRIMES = _primes_upto(_SMALL_PRIMES_BOUND)


@lru_cache(maxsize=65536)
def _square_free_split(n: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``n == s*s*m`` and ``m`` square-free."""
    if n < 1:
        raise ValueError("square-free split needs a positive integer")
    square, rest = 1, n
    for p in _SMALL_PRIMES:
        if p * p > rest:
            break
        pp = p * p
        while rest % pp == 0:
            rest //= pp
            square *= p
        if rest % p == 0:
            rest //= p
            # p now divides the square-free part exactly once
            return _combine(square, p, _square_free_split(rest))
    r = isqrt(rest)
    if r * r == rest:
        return square * r, 1
    if rest < _SMALL_PRIMES_BOUND**3:
        # no prime factor <= bound: rest is a prime or a product of two
        # distinct primes (equal primes were caught by the square test)
        return square, rest
    from sympy import factorint

    s, m = 1, 1
    for p, e in factorint(rest).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return square * s, m


def _combine(square: int, p: int, split: tuple[int, int]) -> tuple[int, int]:
    s, m = split
    if m % p == 0:
        return square * s * p, m // p
    return square * s, m * p


def canonicalize_root(s) -> tuple[Fraction, int]:
    """Write ``sqrt(s)`` as ``coefficient * sqrt(radicand)``.

    >>> canonicalize_root(8)
    (Fraction(2, 1), 2)
    >>> canonicalize_root(Fraction(63, 1024))
    (Fraction(3, 32), 7)
    """
    s = to_fraction(s)
    if s <= 0:
        raise ValueError(f"square root needs a positive rational, got {s}")
    # sqrt(a/b) = sqrt(a*b)/b
    sq, m = _square_free_split(s.numerator * s.denominator)
    return Fraction(sq, s.denominator), m


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


@dataclass(frozen=True)
class Interval:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        lo, hi = to_fraction(self.lower), to_fraction(self.upper)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def point(cls, q) -> "Interval":
        q = to_fraction(q)
        return cls(q, q)

    @classmethod
    def coerce(cls, value) -> "Interval":
        if isinstance(value, Interval):
            return value
        if isinstance(value, RadicalSum):
            return value.enclose(bits=128)
        return cls.point(value)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def is_point(self) -> bool:
        return self.lower == self.upper

    def contains(self, value) -> bool:
        if isinstance(value, Interval):
            return self.lower <= value.lower and value.upper <= self.upper
        if isinstance(value, RadicalSum):
            return (value - self.lower).sign() >= 0 and (self.upper - value).sign() >= 0
        q = to_fraction(value)
        return self.lower <= q <= self.upper

    def sign(self) -> int | None:
        """+1/-1 when the interval excludes zero, 0 for the point 0, else None."""
        if self.lower > 0:
            return 1
        if self.upper < 0:
            return -1
        if self.lower == self.upper == 0:
            return 0
        return None

    def __add__(self, other) -> "Interval":
        o = Interval.coerce(other)
        return Interval(self.lower + o.lower, self.upper + o.upper)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.upper, -self.lower)

    def __sub__(self, other) -> "Interval":
        return self + (-Interval.coerce(other))

    def __rsub__(self, other) -> "Interval":
        return Interval.coerce(other) - self

    def __mul__(self, other) -> "Interval":
        o = Interval.coerce(other)
        ps = (
            self.lower * o.lower,
            self.lower * o.upper,
            self.upper * o.lower,
            self.upper * o.upper,
        )
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __abs__(self) -> "Interval":
        if self.lower >= 0:
            return self
        if self.upper <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lower, self.upper))

    def __pow__(self, k: int) -> "Interval":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k % 2 == 1 or self.lower >= 0:
            return Interval(self.lower**k, self.upper**k)
        a = abs(self)
        return Interval(a.lower**k, a.upper**k)

    def pow_rational(self, p, bits: int = 128) -> "Interval":
        """Enclose ``x**p`` for rational ``p >= 0`` over a nonnegative interval.

        Integer exponents are exact; otherwise the denominator root is taken on a
        ``2**-bits`` grid with outward rounding.
        """
        p = to_fraction(p)
        if self.lower < 0:
            raise ValueError("fractional power of an interval reaching below 0")
        if p.denominator == 1:
            return self ** int(p)
        a, b = p.numerator, p.denominator
        return Interval(
            _root_floor(self.lower**a, b, bits), _root_ceil(self.upper**a, b, bits)
        )

    def __repr__(self) -> str:
        return f"Interval({float(self.lower)!r}, {float(self.upper)!r})"


def _root_floor(x: Fraction, k: int, bits: int) -> Fraction:
    # floor(x**(1/k) * 2**bits) / 2**bits
    scale = 1 << (bits * k)
    return Fraction(iroot(x.numerator * scale // x.denominator, k), 1 << bits)


def _root_ceil(x: Fraction, k: int, bits: int) -> Fraction:
    scale = 1 << (bits * k)
    num = x.numerator * scale
    r = iroot(-(-num // x.denominator), k)
    if Fraction(r, 1 << bits) ** k < x:
        r += 1
    return Fraction(r, 1 << bits)


class RadicalSum:
    """Immutable canonical sum of rational multiples of square roots."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | Iterable[tuple[Number, int]] | None = None):
        acc: dict[int, Fraction] = {}
        if terms is None:
            items: Iterable = ()
        elif isinstance(terms, Mapping):
            items = ((c, m) for m, c in terms.items())
        else:
            items = terms
        for coeff, radicand in items:
            coeff = to_fraction(coeff)
            if coeff == 0:
                continue
            radicand = int(radicand)
            if radicand < 1:
                raise ValueError(f"radicand must be positive, got {radicand}")
            s, m = _square_free_split(radicand)
            acc[m] = acc.get(m, Fraction(0)) + coeff * s
        self._terms = tuple(sorted((m, c) for m, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def _from_canonical(cls, terms: dict[int, Fraction]) -> "RadicalSum":
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((m, c) for m, c in terms.items() if c != 0))
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> "RadicalSum":
        q = to_fraction(q)
        return cls._from_canonical({1: q})

    @classmethod
    def sqrt(cls, s) -> "RadicalSum":
        """Exact ``sqrt(s)`` for a nonnegative rational ``s``."""
        s = to_fraction(s)
        if s == 0:
            return cls()
        coeff, m = canonicalize_root(s)
        return cls._from_canonical({m: coeff})

    @classmethod
    def coerce(cls, value) -> "RadicalSum":
        if isinstance(value, RadicalSum):
            return value
        return cls.rational(value)

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def pairs(self) -> list[tuple[Fraction, int]]:
        """``(coefficient, radicand)`` pairs in radicand order."""
        return [(c, m) for m, c in self._terms]

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(m == 1 for m, _ in self._terms)

    def rational_part(self) -> Fraction:
        for m, c in self._terms:
            if m == 1:
                return c
        return Fraction(0)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.rational_part()

    def __add__(self, other) -> "RadicalSum":
        if not isinstance(other, (RadicalSum, int, Fraction)):
            return NotImplemented
        o = RadicalSum.coerce(other)
        acc = dict(self._terms)
        for m, c in o._terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return RadicalSum._from_canonical(acc)

    __radd__ = __add__

    def __neg__(self) -> "RadicalSum":
        return RadicalSum._from_canonical({m: -c for m, c in self._terms})

    def __sub__(self, other) -> "RadicalSum":
        if not isinstance(other, (RadicalSum, int, Fraction)):
            return NotImplemented
        return self + (-RadicalSum.coerce(other))

    def __rsub__(self, other) -> "RadicalSum":
        return RadicalSum.coerce(other) - self

    def __mul__(self, other) -> "RadicalSum":
        if not isinstance(other, (RadicalSum, int, Fraction)):
            return NotImplemented
        if not isinstance(other, RadicalSum):
            return self.scale(other)
        if len(other._terms) == 1 and other._terms[0][0] == 1:
            return self.scale(other._terms[0][1])
        if len(self._terms) == 1 and self._terms[0][0] == 1:
            return other.scale(self._terms[0][1])
        o = other
        acc: dict[int, Fraction] = {}
        for m1, c1 in self._terms:
            for m2, c2 in o._terms:
                # sqrt(m1)*sqrt(m2) = g*sqrt((m1/g)*(m2/g)), g = gcd; stays square-free
                g = gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2 * g
        return RadicalSum._from_canonical(acc)

    __rmul__ = __mul__

    @classmethod
    def combine(cls, weighted: Iterable[tuple[Fraction, "RadicalSum"]], constant=0) -> "RadicalSum":
        """``constant + sum(q * x)`` built in one pass (rational weights ``q``)."""
        acc: dict[int, Fraction] = {1: to_fraction(constant)}
        get = acc.get
        for q, x in weighted:
            for m, c in x._terms:
                acc[m] = get(m, 0) + q * c
        return cls._from_canonical(acc)

    def scale(self, q) -> "RadicalSum":
        """Multiply by a rational."""
        q = to_fraction(q)
        if q == 0:
            return RadicalSum()
        return RadicalSum._from_canonical({m: c * q for m, c in self._terms})

    def __truediv__(self, other) -> "RadicalSum":
        # only division by rationals stays inside the representation
        if isinstance(other, RadicalSum):
            other = other.as_fraction()
        q = to_fraction(other)
        if q == 0:
            raise ZeroDivisionError("RadicalSum division by zero")
        return RadicalSum._from_canonical({m: c / q for m, c in self._terms})

    def __pow__(self, k: int) -> "RadicalSum":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = RadicalSum.rational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self) -> "RadicalSum":
        return -self if self.sign() < 0 else self

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RadicalSum.rational(other)
        if not isinstance(other, RadicalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms) if not self.is_rational() else hash(self.rational_part())
        return self._hash

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __float__(self) -> float:
        mid = self.enclose(bits=80).midpoint
        return float(mid)

    def enclose(self, bits: int) -> Interval:
        """Enclosure with each irrational root taken on a ``2**-bits`` grid."""
        rational = Fraction(0)
        lo = hi = Fraction(0)  # scaled by 2**bits
        for m, c in self._terms:
            if m == 1:
                rational = c
                continue
            r = isqrt(m << (2 * bits))
            if c > 0:
                lo += c * r
                hi += c * (r + 1)
            else:
                lo += c * (r + 1)
                hi += c * r
        den = 1 << bits
        return Interval(rational + lo / den, rational + hi / den)

    def to_interval(self, width_bound) -> Interval:
        width_bound = to_fraction(width_bound)
        if width_bound <= 0:
            raise ValueError("width bound must be positive")
        scale = sum((abs(c) for m, c in self._terms if m != 1), Fraction(0))
        if scale == 0:
            return Interval.point(self.rational_part())
        # smallest bits with scale / 2**bits <= width_bound / 2 (half kept in reserve)
        bits = max(1, (ceil(2 * scale / width_bound) - 1).bit_length())
        return self.enclose(bits)

    def sign(self) -> int:
        if not self._terms:
            return 0
        if self.is_rational():
            c = self.rational_part()
            return (c > 0) - (c < 0)
        bits = 32
        while True:
            s = self.enclose(bits).sign()
            if s is not None and s != 0:
                return s
            bits *= 2

    def __repr__(self) -> str:
        if not self._terms:
            return "RadicalSum(0)"
        return f"RadicalSum({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self._terms:
            parts.append(f"{c}" if m == 1 else f"{c}*sqrt({m})")
        return " + ".join(parts)


def rad_add(a, b) -> RadicalSum:
    return RadicalSum.coerce(a) + RadicalSum.coerce(b)


def rad_mul(a, b) -> RadicalSum:
    return RadicalSum.coerce(a) * RadicalSum.coerce(b)


def rad_sign(a) -> int:
    """Exact sign (-1, 0, +1) of a RadicalSum or rational."""
    return RadicalSum.coerce(a).sign()


def rad_to_interval(a, width_bound) -> Interval:
    return RadicalSum.coerce(a).to_interval(width_bound)
