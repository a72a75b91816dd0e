"""Exact vertex weights drawn from torsion-free commutative semigroups.

Three exact kinds are supported: plain integers (``Z``), integer vectors
(``ZV``) and vectors of Gaussian rationals (``QV``). Their canonical textual
encodings double as the polynomial variable keys ``x[<encoding>]``::

    Z:3
    ZV:1,0,2
    QV:1/2+0/1i,-3/1+1/4i

A fourth kind, ``NV`` (complex doubles), exists only for purely numeric
evaluation paths and has no canonical key.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

from .errors import InexactWeight, KindMismatch, ValidationError

__all__ = [
    "GaussianRational",
    "WeightKind",
    "SemigroupWeight",
    "add",
    "canonical_key",
    "parse_weight",
    "as_exact",
]


@dataclass(frozen=True)
class GaussianRational:
    """A complex number ``re + im*i`` with exact rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return GaussianRational(Fraction(value))
        raise InexactWeight(f"not an exact Gaussian rational: {value!r}")

    def __add__(self, other):
        o = _gr_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = _gr_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _gr_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _gr_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _gr_or_none(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den
        )

    def __rtruediv__(self, other):
        o = _gr_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = GaussianRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = _gr_or_none(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def encode(self) -> str:
        sign = "-" if self.im < 0 else "+"
        im = abs(self.im)
        return f"{self.re.numerator}/{self.re.denominator}{sign}{im.numerator}/{im.denominator}i"

    def __str__(self):
        return self.encode()


def _gr_or_none(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return GaussianRational(Fraction(value))
    return None


_GR_RE = re.compile(r"^\s*(-?\d+)/(\d+)\s*([+-])\s*(\d+)/(\d+)i\s*$")


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``a/b+c/di`` (the canonical entry encoding)."""
    m = _GR_RE.match(text)
    if not m:
        raise ValidationError(f"bad Gaussian rational encoding: {text!r}")
    re_num, re_den, sign, im_num, im_den = m.groups()
    im = Fraction(int(im_num), int(im_den))
    return GaussianRational(Fraction(int(re_num), int(re_den)), -im if sign == "-" else im)


ExactNumber = Union[int, Fraction, GaussianRational]


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction, GaussianRational)) and not isinstance(value, bool)


def as_exact(value) -> Fraction | GaussianRational:
    """Normalise an exact number: real values become ``Fraction``."""
    if isinstance(value, GaussianRational):
        return value.re if value.im == 0 else value
    if isinstance(value, Rational) and not isinstance(value, bool):
        return Fraction(value)
    raise InexactWeight(f"not an exact number: {value!r}")


class WeightKind(str, enum.Enum):
    INTEGER = "Z"
    INTEGER_VECTOR = "ZV"
    GAUSSIAN_VECTOR = "QV"
    NUMERIC_VECTOR = "NV"


@dataclass(frozen=True)
class SemigroupWeight:
    """An immutable vertex weight.

    ``entries`` is an ``int`` for :attr:`WeightKind.INTEGER` and a tuple for the
    vector kinds. Construct through the classmethods, which normalise entries.
    """

    kind: WeightKind
    entries: object

    @classmethod
    def integer(cls, value: int) -> "SemigroupWeight":
        if isinstance(value, bool) or not isinstance(value, int):
            raise InexactWeight(f"integer weight expected, got {value!r}")
        return cls(WeightKind.INTEGER, value)

    @classmethod
    def integer_vector(cls, values: Iterable[int]) -> "SemigroupWeight":
        values = tuple(values)
        if any(isinstance(v, bool) or not isinstance(v, int) for v in values):
            raise InexactWeight(f"integer vector expected, got {values!r}")
        return cls(WeightKind.INTEGER_VECTOR, values)

    @classmethod
    def gaussian_vector(cls, values: Iterable) -> "SemigroupWeight":
        return cls(WeightKind.GAUSSIAN_VECTOR, tuple(GaussianRational.coerce(v) for v in values))

    @classmethod
    def numeric_vector(cls, values: Iterable) -> "SemigroupWeight":
        return cls(WeightKind.NUMERIC_VECTOR, tuple(complex(v) for v in values))

    @classmethod
    def field_vector(cls, values: Iterable) -> "SemigroupWeight":
        """Exact ``QV`` if every entry is exact, else ``NV``."""
        values = tuple(values)
        if all(is_exact(v) for v in values):
            return cls.gaussian_vector(values)
        return cls.numeric_vector(values)

    @property
    def dimension(self) -> int | None:
        if self.kind is WeightKind.INTEGER:
            return None
        return len(self.entries)

    @property
    def is_exact(self) -> bool:
        return self.kind is not WeightKind.NUMERIC_VECTOR

    def same_kind(self, other: "SemigroupWeight") -> bool:
        return self.kind is other.kind and self.dimension == other.dimension

    def __add__(self, other):
        if not isinstance(other, SemigroupWeight):
            return NotImplemented
        return add(self, other)

    def scale(self, k: int) -> "SemigroupWeight":
        """``k``-fold sum of this weight (``k >= 1``)."""
        if self.kind is WeightKind.INTEGER:
            return SemigroupWeight(self.kind, self.entries * k)
        return SemigroupWeight(self.kind, tuple(v * k for v in self.entries))

    def components(self) -> tuple:
        """Entries as a tuple of numbers (an integer weight is a 1-tuple)."""
        if self.kind is WeightKind.INTEGER:
            return (self.entries,)
        return self.entries

    def encode(self) -> str:
        if self.kind is WeightKind.INTEGER:
            return f"Z:{self.entries}"
        if self.kind is WeightKind.INTEGER_VECTOR:
            return "ZV:" + ",".join(str(v) for v in self.entries)
        if self.kind is WeightKind.GAUSSIAN_VECTOR:
            return "QV:" + ",".join(v.encode() for v in self.entries)
        return "NV:" + ",".join(repr(v) for v in self.entries)

    def __str__(self):
        return self.encode()


def add(a: SemigroupWeight, b: SemigroupWeight) -> SemigroupWeight:
    """Exact componentwise sum; raises :class:`KindMismatch` across kinds."""
    if not a.same_kind(b):
        raise KindMismatch(f"cannot add {a.encode()} and {b.encode()}")
    if a.kind is WeightKind.INTEGER:
        return SemigroupWeight(a.kind, a.entries + b.entries)
    return SemigroupWeight(a.kind, tuple(x + y for x, y in zip(a.entries, b.entries)))


def total(weights: Iterable[SemigroupWeight]) -> SemigroupWeight:
    it = iter(weights)
    acc = next(it)
    for w in it:
        acc = add(acc, w)
    return acc


def canonical_key(w: SemigroupWeight) -> str:
    if not w.is_exact:
        raise InexactWeight(f"numeric weight {w.encode()} has no canonical key")
    return w.encode()


def parse_weight(text: str) -> SemigroupWeight:
    """Inverse of :meth:`SemigroupWeight.encode` for the exact kinds."""
    tag, sep, body = text.partition(":")
    if not sep:
        raise ValidationError(f"bad weight encoding: {text!r}")
    try:
        if tag == "Z":
            return SemigroupWeight.integer(int(body))
        if tag == "ZV":
            return SemigroupWeight.integer_vector(int(v) for v in body.split(",")) if body else \
                SemigroupWeight.integer_vector(())
        if tag == "QV":
            if not body:
                return SemigroupWeight.gaussian_vector(())
            return SemigroupWeight.gaussian_vector(parse_gaussian(v) for v in body.split(","))
    except ValueError as exc:
        raise ValidationError(f"bad weight encoding: {text!r}") from exc
    raise ValidationError(f"unknown weight kind in {text!r}")
