"""Exact rational and quadratic-field arithmetic.

Rationals are plain :class:`fractions.Fraction` values (always reduced, with a
positive denominator).  :class:`QuadExt` represents ``a + b*sqrt(disc)`` in
``Q(sqrt(disc))`` for a fixed non-square rational ``disc``; the discriminant is
normalized to a squarefree integer at construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Fraction

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rat(num: int, den: int = 1) -> Fraction:
    """Build a canonical rational ``num/den``.

    Raises ``ZeroDivisionError`` when ``den`` is zero.
    """
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in rat({num}, {den})")
    return Fraction(num, den)


def parse_rat(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals and floats are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RAT_RE.match(text.strip()):
        raise ValueError(f"not a rational string: {text!r}")
    num, _, den = text.strip().partition("/")
    return rat(int(num), int(den) if den else 1)


def format_rat(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int_square_root(n: int) -> int | None:
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def is_rational_square(x: Fraction | int) -> tuple[bool, Fraction | None]:
    """Return ``(True, root)`` if ``x`` is the square of a rational, else ``(False, None)``.

    The root returned is the non-negative one.
    """
    x = Fraction(x)
    p = _int_square_root(x.numerator)
    q = _int_square_root(x.denominator)
    if p is None or q is None:
        return False, None
    return True, Fraction(p, q)


@dataclass(frozen=True)
class RationalSquare:
    """Marker returned by :func:`normalize_disc` when the input is a square."""

    root: Fraction


def _squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write ``n > 0`` as ``f**2 * d`` with ``d`` squarefree; return ``(d, f)``."""
    from sympy import factorint

    d, f = 1, 1
    for p, e in factorint(n).items():
        f *= p ** (e // 2)
        if e % 2:
            d *= p
    return d, f


def normalize_disc(delta: Fraction | int) -> tuple[int, Fraction] | RationalSquare:
    """Split ``delta`` as ``s**2 * d`` with ``d`` a squarefree integer.

    Returns ``(d, s)`` with ``s > 0``, or :class:`RationalSquare` when ``delta``
    is already a rational square (including zero).
    """
    delta = Fraction(delta)
    square, root = is_rational_square(delta)
    if square:
        return RationalSquare(root)
    p, q = delta.numerator, delta.denominator
    # p/q = p*q / q**2
    d, f = _squarefree_decomposition(abs(p * q))
    if p < 0:
        d = -d
    return d, Fraction(f, q)


Scalar = Union[Fraction, int]


class QuadExt:
    """An element ``a + b*sqrt(disc)`` of a quadratic field.

    ``disc`` is stored as a squarefree integer; passing e.g. ``disc=-20`` stores
    ``-5`` and doubles ``b``.  Rational-square discriminants are refused: use
    :func:`quad_sqrt` to get a value that degenerates to a ``Fraction``.
    """

    __slots__ = ("_disc", "_a", "_b")

    def __init__(self, disc: Scalar, a: Scalar = 0, b: Scalar = 0) -> None:
        norm = normalize_disc(disc)
        if isinstance(norm, RationalSquare):
            raise ValueError(f"discriminant {disc} is a rational square")
        d, s = norm
        self._disc = d
        self._a = Fraction(a)
        self._b = Fraction(b) * s

    @classmethod
    def _raw(cls, disc: int, a: Fraction, b: Fraction) -> QuadExt:
        obj = object.__new__(cls)
        obj._disc, obj._a, obj._b = disc, a, b
        return obj

    @property
    def disc(self) -> int:
        return self._disc

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    def is_rational(self) -> bool:
        return self._b == 0

    def __repr__(self) -> str:
        return f"QuadExt({self._disc}, {format_rat(self._a)}, {format_rat(self._b)})"

    def __str__(self) -> str:
        return f"{format_rat(self._a)} + ({format_rat(self._b)})*sqrt({self._disc})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadExt):
            if self._b == 0 and other._b == 0:
                return self._a == other._a
            return (self._disc, self._a, self._b) == (other._disc, other._a, other._b)
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._disc, self._a, self._b))

    def _coerce(self, other: object) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other._disc != self._disc:
                raise ValueError(
                    f"mixed discriminants {self._disc} and {other._disc}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadExt._raw(self._disc, Fraction(other), Fraction(0))
        return None

    def __add__(self, other: object) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt._raw(self._disc, self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt._raw(self._disc, -self._a, -self._b)

    def __sub__(self, other: object) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt._raw(self._disc, self._a - o._a, self._b - o._b)

    def __rsub__(self, other: object) -> QuadExt:
        return (-self) + other

    def __mul__(self, other: object) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        return QuadExt._raw(
            self._disc, a1 * a2 + self._disc * b1 * b2, a1 * b2 + a2 * b1
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> QuadExt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return (self * o.conj()).scale(1 / n)

    def scale(self, c: Scalar) -> QuadExt:
        c = Fraction(c)
        return QuadExt._raw(self._disc, self._a * c, self._b * c)

    def __pow__(self, k: int) -> QuadExt:
        return quad_pow(self, k)

    def conj(self) -> QuadExt:
        return QuadExt._raw(self._disc, self._a, -self._b)

    def norm(self) -> Fraction:
        return self._a * self._a - self._disc * self._b * self._b

    def to_json(self) -> dict[str, str]:
        return {"disc": str(self._disc), "a": format_rat(self._a), "b": format_rat(self._b)}

    @classmethod
    def from_json(cls, obj: dict) -> QuadExt:
        return cls(parse_rat(obj["disc"]), parse_rat(obj["a"]), parse_rat(obj["b"]))


def quad_sqrt(delta: Scalar) -> Fraction | QuadExt:
    """``sqrt(delta)`` as a ``QuadExt``, or as a ``Fraction`` if ``delta`` is a square."""
    norm = normalize_disc(delta)
    if isinstance(norm, RationalSquare):
        return norm.root
    d, s = norm
    return QuadExt._raw(d, Fraction(0), s)


def quad_mul(x: QuadExt, y: QuadExt) -> QuadExt:
    return x * y


def quad_pow(x: QuadExt, k: int) -> QuadExt:
    """``x**k`` for ``k >= 0`` by binary powering; ``x**0 == 1``."""
    if k < 0:
        raise ValueError("negative exponent")
    result = QuadExt._raw(x.disc, Fraction(1), Fraction(0))
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def quad_conj(x: QuadExt) -> QuadExt:
    return x.conj()


def quad_norm(x: QuadExt) -> Fraction:
    return x.norm()
