"""Exact arithmetic over Q and over quadratic extensions Q[sqrt(d)].

Rationals are plain :class:`fractions.Fraction` values (always in lowest
terms with a positive denominator).  Elements of Q[sqrt(d)] are
:class:`QElem` instances bound to a shared :class:`Field` descriptor.

>>> K = Field(-1)
>>> x = K(1, 1)
>>> x * x.conj()
QElem('2', d=-1)
>>> parse_entry("1/2-3*i", K)
QElem('1/2-3*i', d=-1)
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Rat = Fraction

__all__ = [
    "Rat",
    "Field",
    "QElem",
    "FieldMismatchError",
    "EntryParseError",
    "field",
    "parse_entry",
    "format_entry",
    "qadd",
    "qsub",
    "qmul",
    "qinv",
    "qconj",
    "qnorm",
    "is_rational_square",
    "rational_sqrt",
]


class FieldMismatchError(ValueError):
    """Raised when values from two different quadratic fields are combined."""


class EntryParseError(ValueError):
    """Raised when a string does not match the entry grammar."""


def _is_squarefree(d: int) -> bool:
    n = abs(d)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class Field:
    """Descriptor of the quadratic field Q[sqrt(d)].

    ``d`` must be a squarefree integer different from 0 and 1.  Instances are
    interned, so ``Field(-1) is Field(-1)``.
    """

    __slots__ = ("d", "_zero", "_one", "_root")

    _cache: dict[int, Field] = {}

    def __new__(cls, d: int) -> Field:
        if isinstance(d, Field):
            return d
        if not isinstance(d, int) or isinstance(d, bool):
            raise TypeError(f"field parameter must be an int, got {d!r}")
        cached = cls._cache.get(d)
        if cached is not None:
            return cached
        if d in (0, 1) or not _is_squarefree(d):
            raise ValueError(f"d={d} must be squarefree and not 0 or 1")
        obj = super().__new__(cls)
        obj.d = d
        obj._zero = QElem(Fraction(0), Fraction(0), obj)
        obj._one = QElem(Fraction(1), Fraction(0), obj)
        obj._root = QElem(Fraction(0), Fraction(1), obj)
        cls._cache[d] = obj
        return obj

    def __reduce__(self):
        return (Field, (self.d,))

    def __repr__(self) -> str:
        return f"Field({self.d})"

    def __str__(self) -> str:
        return "Q[i]" if self.d == -1 else f"Q[sqrt({self.d})]"

    @property
    def symbol(self) -> str:
        """Token used for sqrt(d) when printing entries."""
        return "i" if self.d == -1 else "s"

    @property
    def zero(self) -> QElem:
        return self._zero

    @property
    def one(self) -> QElem:
        return self._one

    @property
    def root(self) -> QElem:
        """The element sqrt(d)."""
        return self._root

    def __call__(self, a=0, b=0) -> QElem:
        """Build ``a + b*sqrt(d)``; strings are parsed with the entry grammar."""
        if isinstance(a, QElem):
            if a.field is not self:
                raise FieldMismatchError(f"{a.field!r} vs {self!r}")
            return a if b == 0 else a + self(0, b)
        if isinstance(a, str):
            return parse_entry(a, self) + self(0, b) if b else parse_entry(a, self)
        return QElem(_to_rat(a), _to_rat(b), self)


def field(d: int) -> Field:
    return Field(d)


def _to_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class QElem:
    """An element ``a + b*sqrt(d)`` with exact rational parts.

    Instances are immutable.  Arithmetic with ``int`` or ``Fraction`` operands
    promotes them into the same field; mixing two different fields raises
    :class:`FieldMismatchError`.
    """

    __slots__ = ("a", "b", "field")

    def __init__(self, a: Fraction, b: Fraction, field: Field) -> None:
        # treated as immutable; no method mutates these slots
        self.a = a
        self.b = b
        self.field = field

    def _coerce(self, other) -> QElem:
        if isinstance(other, QElem):
            if other.field is not self.field:
                raise FieldMismatchError(
                    f"cannot combine elements of {self.field} and {other.field}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QElem(Fraction(other), Fraction(0), self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QElem(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QElem(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self) -> QElem:
        return QElem(-self.a, -self.b, self.field)

    def __pos__(self) -> QElem:
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        if not b1 and not b2:
            return QElem(a1 * a2, b1, self.field)
        return QElem(
            a1 * a2 + self.field.d * b1 * b2, a1 * b2 + a2 * b1, self.field
        )

    __rmul__ = __mul__

    def inverse(self) -> QElem:
        n = self.norm()
        if n == 0:
            # a^2 - d b^2 vanishes only at zero because d is not a square
            assert not self.a and not self.b
            raise ZeroDivisionError("inverse of zero in " + str(self.field))
        return QElem(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> QElem:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> QElem:
        return QElem(self.a, -self.b, self.field)

    def norm(self) -> Fraction:
        return self.a * self.a - self.field.d * self.b * self.b

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, QElem):
            return (
                self.field is other.field and self.a == other.a and self.b == other.b
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field.d))

    def __repr__(self) -> str:
        return f"QElem({format_entry(self)!r}, d={self.field.d})"

    def __str__(self) -> str:
        return format_entry(self)


Number = Union[int, Fraction, QElem]


def qadd(x: QElem, y: QElem) -> QElem:
    return x + y


def qsub(x: QElem, y: QElem) -> QElem:
    return x - y


def qmul(x: QElem, y: QElem) -> QElem:
    return x * y


def qinv(x: QElem) -> QElem:
    """Multiplicative inverse, ``conj(x) / norm(x)``."""
    return x.inverse()


def qconj(x: QElem) -> QElem:
    return x.conj()


def qnorm(x: QElem) -> Fraction:
    """Field norm ``a^2 - d*b^2`` (equal to ``x * conj(x)``)."""
    return x.norm()


# ---------------------------------------------------------------------------
# rational square roots


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Return the non-negative rational square root of ``q`` or ``None``."""
    q = Fraction(q)
    num = _isqrt_exact(q.numerator)
    den = _isqrt_exact(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def is_rational_square(q: Fraction) -> bool:
    return rational_sqrt(q) is not None


# ---------------------------------------------------------------------------
# entry grammar

_RAT = r"\d+(?:/\d+)?"
_ENTRY_RE = re.compile(
    rf"""^\s*
    (?:
        (?P<a>[+-]?{_RAT})
        (?:\s*(?P<bsign>[+-])\s*(?P<bmag>{_RAT})?\s*\*?\s*(?P<sym1>[si]))?
      |
        (?P<psign>[+-])?\s*(?P<pmag>{_RAT})?\s*\*?\s*(?P<sym2>[si])
    )
    \s*$""",
    re.VERBOSE,
)


def _parse_rat(text: str) -> Fraction:
    return Fraction(text)


def parse_entry(text, K: Field) -> QElem:
    """Parse one entry of the textual grammar into an element of ``K``.

    Accepted forms: ``"3"``, ``"-1/2"``, ``"s"``, ``"-2*s"``, ``"1/2+3/4*s"``,
    ``"1-s"``.  When ``d == -1`` the token ``i`` may replace ``s``.  Plain
    integers (e.g. from JSON) are accepted as well.
    """
    if isinstance(text, bool):
        raise EntryParseError(f"invalid entry {text!r}")
    if isinstance(text, int):
        return QElem(Fraction(text), Fraction(0), K)
    if not isinstance(text, str):
        raise EntryParseError(f"entry must be a string or an integer, got {text!r}")
    m = _ENTRY_RE.match(text)
    if m is None:
        raise EntryParseError(f"invalid entry {text!r}")
    sym = m.group("sym1") or m.group("sym2")
    if sym == "i" and K.d != -1:
        raise EntryParseError(f"'i' is only valid when d = -1 (entry {text!r}, d = {K.d})")
    if m.group("a") is not None:
        a = _parse_rat(m.group("a"))
        if sym is None:
            return QElem(a, Fraction(0), K)
        b = _parse_rat(m.group("bmag")) if m.group("bmag") else Fraction(1)
        if m.group("bsign") == "-":
            b = -b
        return QElem(a, b, K)
    b = _parse_rat(m.group("pmag")) if m.group("pmag") else Fraction(1)
    if m.group("psign") == "-":
        b = -b
    return QElem(Fraction(0), b, K)


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_entry(x: QElem) -> str:
    """Canonical string form of ``x`` (inverse of :func:`parse_entry`)."""
    sym = x.field.symbol
    if x.b == 0:
        return _fmt_rat(x.a)
    mag = abs(x.b)
    coef = sym if mag == 1 else f"{_fmt_rat(mag)}*{sym}"
    if x.a == 0:
        return coef if x.b > 0 else "-" + coef
    sign = "+" if x.b > 0 else "-"
    return f"{_fmt_rat(x.a)}{sign}{coef}"
