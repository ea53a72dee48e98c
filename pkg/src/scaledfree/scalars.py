"""Exact scalars and norm values.

Scalars are Gaussian rationals ``re + im*i``.  Their moduli are square roots of
rationals, so norms live in the semiring of nonnegative sums
``r + c_1*sqrt(m_1) + ... + c_k*sqrt(m_k)`` with rational ``r, c_i`` and
squarefree integers ``m_i > 1``.  :class:`NormValue` stores that form exactly,
compares exactly and hands out rational enclosing intervals of any requested
width.  When every modulus involved is rational a :class:`NormValue` is just a
nonnegative :class:`~fractions.Fraction`.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

from .errors import InvalidNormError, IrrationalNormError

Rational = Union[int, Fraction]

DEFAULT_PRECISION = Fraction(1, 2**64)

# trial division bound for squarefree extraction; exact for radicands < 10**12
_TRIAL_BOUND = 10_000
# give up refining a sign after this many bits (only reachable for radicands
# whose square part escaped trial division)
_MAX_BITS = 4096


def as_fraction(value) -> Fraction:
    """Coerce an int or Fraction to Fraction; floats and bools are refused."""
    if isinstance(value, bool) or not isinstance(value, numbers.Rational):
        raise TypeError(f"expected an exact rational, got {value!r}")
    return Fraction(value)


def format_rational(q: Rational) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (_TRIAL_BOUND + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(_TRIAL_BOUND) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@lru_cache(maxsize=4096)
def _square_split(n: int) -> tuple[int, int]:
    """Return ``(a, m)`` with ``n == a*a*m`` and ``m`` squarefree (n < 10**12)."""
    if n == 0:
        return 0, 1
    a, m = 1, 1
    for p in _small_primes():
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        a *= p ** (e // 2)
        if e % 2:
            m *= p
    r = isqrt(n)
    if r * r == n:
        a *= r
    else:
        m *= n
    return a, m


def _surd_product(m: int, n: int) -> tuple[int, int]:
    # sqrt(m)*sqrt(n) for squarefree m, n
    g = gcd(m, n)
    return g, (m // g) * (n // g)


def _enclose(terms: dict[int, Fraction], bits: int) -> tuple[Fraction, Fraction]:
    lo = hi = Fraction(0)
    scale = 1 << bits
    for m, c in terms.items():
        if m == 1:
            lo += c
            hi += c
            continue
        root = isqrt(m << (2 * bits))
        s_lo = Fraction(root, scale)
        s_hi = s_lo if root * root == m << (2 * bits) else Fraction(root + 1, scale)
        if c > 0:
            lo += c * s_lo
            hi += c * s_hi
        else:
            lo += c * s_hi
            hi += c * s_lo
    return lo, hi


def _sign(terms: dict[int, Fraction]) -> int:
    terms = {m: c for m, c in terms.items() if c}
    if not terms:
        return 0
    if all(c > 0 for c in terms.values()):
        return 1
    if all(c < 0 for c in terms.values()):
        return -1
    bits = 32
    while bits <= _MAX_BITS:
        lo, hi = _enclose(terms, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    return 0


class Unbounded:
    """Marker for a bound constant that does not exist (larger than every value)."""

    _instance: Unbounded | None = None

    def __new__(cls) -> Unbounded:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNBOUNDED"

    def __str__(self) -> str:
        return "unbounded"

    def __reduce__(self):
        return (Unbounded, ())

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("scaledfree.UNBOUNDED")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True


UNBOUNDED = Unbounded()


class NormValue:
    """A nonnegative real number ``sum_m c_m * sqrt(m)`` with exact data.

    Rational values (the common case) have the single radicand ``1``.  Values
    compare exactly with each other, with ints and with Fractions.

    >>> NormValue(Fraction(3, 2)) + 1
    NormValue(5/2)
    >>> NormValue.sqrt(8) == 2 * NormValue.sqrt(2)
    True
    """

    __slots__ = ("_terms",)

    def __init__(self, value: Rational | NormValue = 0):
        if isinstance(value, NormValue):
            self._terms = value._terms
            return
        q = as_fraction(value)
        if q < 0:
            raise InvalidNormError(f"norm values are nonnegative, got {format_rational(q)}")
        self._terms = ((1, q),) if q else ()

    @classmethod
    def _from_terms(cls, terms: dict[int, Fraction]) -> NormValue:
        out = cls.__new__(cls)
        out._terms = tuple(sorted((m, c) for m, c in terms.items() if c))
        return out

    @classmethod
    def coerce(cls, value) -> NormValue:
        return value if isinstance(value, NormValue) else cls(value)

    @classmethod
    def sqrt(cls, q: Rational) -> NormValue:
        q = as_fraction(q)
        if q < 0:
            raise InvalidNormError("square root of a negative rational")
        p, d = q.numerator, q.denominator
        a, m = _square_split(p * d)
        return cls._from_terms({m: Fraction(a, d)})

    # -- inspection -------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        """True when the value is rational."""
        return all(m == 1 for m, _ in self._terms)

    @property
    def exact(self) -> Fraction:
        if not self.is_exact:
            raise IrrationalNormError(f"{self!r} is not rational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def bounds(self, width: Rational = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
        """Rational ``(lo, hi)`` with ``lo <= self <= hi`` and ``hi - lo <= width``."""
        width = as_fraction(width)
        if width <= 0:
            raise ValueError("interval width must be positive")
        if self.is_exact:
            return self.exact, self.exact
        total = sum(c for _, c in self._terms)
        bits = 1
        while Fraction(total, 1 << bits) > width:
            bits += 1
        return _enclose(dict(self._terms), bits)

    def to_text(self, precision: Rational = DEFAULT_PRECISION) -> str:
        if self.is_exact:
            return format_rational(self.exact)
        lo, hi = self.bounds(precision)
        return f"[{format_rational(lo)},{format_rational(hi)}]"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        if self.is_exact:
            return f"NormValue({format_rational(self.exact)})"
        parts = [
            format_rational(c) if m == 1 else f"{format_rational(c)}*sqrt({m})"
            for m, c in self._terms
        ]
        return f"NormValue({' + '.join(parts)})"

    def __float__(self) -> float:
        lo, hi = self.bounds(Fraction(1, 2**60))
        return float((lo + hi) / 2)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __hash__(self) -> int:
        return hash(self.exact) if self.is_exact else hash(self._terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> NormValue:
        try:
            other = NormValue.coerce(other)
        except (TypeError, InvalidNormError):
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms:
            terms[m] = terms.get(m, Fraction(0)) + c
        return NormValue._from_terms(terms)

    __radd__ = __add__

    def __mul__(self, other) -> NormValue:
        try:
            other = NormValue.coerce(other)
        except (TypeError, InvalidNormError):
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for m, c in self._terms:
            for n, d in other._terms:
                g, r = _surd_product(m, n)
                terms[r] = terms.get(r, Fraction(0)) + c * d * g
        return NormValue._from_terms(terms)

    __rmul__ = __mul__

    def __truediv__(self, other) -> NormValue:
        """Division by a positive rational (or a positive rational NormValue)."""
        if isinstance(other, NormValue):
            other = other.exact
        q = as_fraction(other)
        if q <= 0:
            raise ZeroDivisionError("norm values divide only by positive rationals")
        return NormValue._from_terms({m: c / q for m, c in self._terms})

    def __pow__(self, n: int) -> NormValue:
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = NormValue(1)
        for _ in range(n):
            out = out * self
        return out

    # -- comparison -------------------------------------------------------
    def _cmp(self, other) -> int:
        if isinstance(other, NormValue):
            terms = other._terms
        elif isinstance(other, numbers.Rational) and not isinstance(other, bool):
            terms = ((1, Fraction(other)),)
        else:
            raise TypeError
        diff = dict(self._terms)
        for m, c in terms:
            diff[m] = diff.get(m, Fraction(0)) - c
        return _sign(diff)

    def __eq__(self, other) -> bool:
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other) -> bool:
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other) -> bool:
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other) -> bool:
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other) -> bool:
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented


BoundValue = Union[NormValue, Unbounded]


def bound_text(value: BoundValue, precision: Rational = DEFAULT_PRECISION) -> str:
    return "unbounded" if value is UNBOUNDED else value.to_text(precision)


@dataclass(frozen=True)
class Scalar:
    """A Gaussian rational ``re + im*i``; real scalars have ``im == 0``."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def coerce(cls, value) -> Scalar:
        if isinstance(value, Scalar):
            return value
        return cls(as_fraction(value))

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def modulus_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def modulus(self) -> NormValue:
        if self.im == 0:
            return NormValue(abs(self.re))
        if self.re == 0:
            return NormValue(abs(self.im))
        return NormValue.sqrt(self.modulus_squared)

    def conjugate(self) -> Scalar:
        return Scalar(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> Scalar:
        return Scalar(-self.re, -self.im)

    def __add__(self, other) -> Scalar:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> Scalar:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> Scalar:
        return -self + other

    def __mul__(self, other) -> Scalar:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> Scalar:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = other.modulus_squared
        if d == 0:
            raise ZeroDivisionError("division by the zero scalar")
        num = self * other.conjugate()
        return Scalar(num.re / d, num.im / d)

    def __rtruediv__(self, other) -> Scalar:
        return Scalar.coerce(other) / self

    def __pow__(self, n: int) -> Scalar:
        if n < 0:
            return (Scalar(1) / self) ** (-n)
        out, base = Scalar(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, numbers.Rational) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        sign = "-" if self.im < 0 else "+"
        im = "" if abs(self.im) == 1 else format_rational(abs(self.im))
        if self.re == 0:
            return f"{'-' if self.im < 0 else ''}{im}i"
        return f"{format_rational(self.re)}{sign}{im}i"

    def __repr__(self) -> str:
        return f"Scalar({self})"


I = Scalar(0, 1)
ZERO = Scalar(0)
ONE = Scalar(1)
