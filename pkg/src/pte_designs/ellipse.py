"""Norm-form conics ``C_D(r)``, their complex embedding, and design tests.

A finite multiset ``X`` on ``C_D(r)`` is an n-design exactly when the power
sums of its embedded points vanish for every degree ``1..n``; that is the only
criterion used here (no integration, no harmonic bases).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .arith import QuadExt, format_rat, parse_rat


def is_squarefree(n: int) -> bool:
    if n <= 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def check_D(D: int) -> int:
    if isinstance(D, bool) or not isinstance(D, int) or not is_squarefree(D):
        raise ValueError(f"D must be a positive squarefree integer, got {D!r}")
    return D


def is_three_mod_four(D: int) -> bool:
    return D % 4 == 3


def norm_form(D: int, x: Fraction | int, y: Fraction | int) -> Fraction:
    """Evaluate the norm form of the ring of integers of ``Q(sqrt(-D))``.

    ``x^2 + D y^2`` for ``D = 1, 2 (mod 4)`` and ``x^2 + xy + (1+D)/4 y^2`` for
    ``D = 3 (mod 4)``.
    """
    check_D(D)
    x, y = Fraction(x), Fraction(y)
    if is_three_mod_four(D):
        return x * x + x * y + Fraction(1 + D, 4) * y * y
    return x * x + D * y * y


def gram_matrix(D: int) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """The symmetric matrix ``Q`` with ``norm_form(D, v) = v^T Q v``."""
    check_D(D)
    if is_three_mod_four(D):
        half = Fraction(1, 2)
        return ((Fraction(1), half), (half, Fraction(1 + D, 4)))
    return ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(D)))


@dataclass(frozen=True)
class EllipsePoint:
    D: int
    x: Fraction
    y: Fraction
    r: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        object.__setattr__(self, "r", Fraction(self.r))
        if self.r <= 0:
            raise ValueError(f"norm must be positive, got {self.r}")
        value = norm_form(self.D, self.x, self.y)
        if value != self.r:
            raise ValueError(
                f"({self.x}, {self.y}) has norm {value} on D={self.D}, not {self.r}"
            )

    @property
    def coords(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)


class DesignSet:
    """A non-empty multiset of points on a single conic ``C_D(r)``.

    Point order is kept as given; equality compares sorted multisets.
    """

    def __init__(self, D: int, r: Fraction | int, points: Iterable[Sequence]) -> None:
        self.D = check_D(D)
        self.r = Fraction(r)
        pts = []
        for p in points:
            if isinstance(p, EllipsePoint):
                if (p.D, p.r) != (self.D, self.r):
                    raise ValueError("point does not lie on this conic")
                pts.append(p)
            else:
                x, y = p
                pts.append(EllipsePoint(self.D, Fraction(x), Fraction(y), self.r))
        if not pts:
            raise ValueError("a design set must be non-empty")
        self.points: tuple[EllipsePoint, ...] = tuple(pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def coords(self) -> list[tuple[Fraction, Fraction]]:
        return [p.coords for p in self.points]

    def sorted_coords(self) -> list[tuple[Fraction, Fraction]]:
        return sorted(self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DesignSet):
            return NotImplemented
        return (self.D, self.r, self.sorted_coords()) == (
            other.D,
            other.r,
            other.sorted_coords(),
        )

    def __hash__(self) -> int:
        return hash((self.D, self.r, tuple(self.sorted_coords())))

    def __repr__(self) -> str:
        pts = ", ".join(f"({format_rat(x)}, {format_rat(y)})" for x, y in self.coords)
        return f"DesignSet(D={self.D}, r={format_rat(self.r)}, [{pts}])"

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "r": format_rat(self.r),
            "points": [[format_rat(x), format_rat(y)] for x, y in self.coords],
        }

    @classmethod
    def from_json(cls, obj: dict) -> DesignSet:
        D = obj["D"]
        if isinstance(D, str):
            D = int(D)
        return cls(
            D,
            parse_rat(obj["r"]),
            [(parse_rat(x), parse_rat(y)) for x, y in obj["points"]],
        )


def embed(p: EllipsePoint) -> QuadExt:
    """Map ``(x, y)`` to ``x + y*sqrt(-D)`` or ``x + y*(1 + sqrt(-D))/2``.

    The second form is used for ``D = 3 (mod 4)``; the norm of the image is
    ``p.r`` in both cases.
    """
    if is_three_mod_four(p.D):
        half = p.y / 2
        return QuadExt(-p.D, p.x + half, half)
    return QuadExt(-p.D, p.x, p.y)


def power_sum(X: DesignSet, k: int) -> QuadExt:
    if k < 1:
        raise ValueError("degree must be positive")
    total = QuadExt(-X.D)
    for p in X:
        total = total + embed(p) ** k
    return total


def first_nonvanishing(X: DesignSet, n: int) -> int | None:
    """Smallest ``k <= n`` whose power sum is non-zero, or ``None``."""
    xis = [embed(p) for p in X]
    powers = list(xis)
    for k in range(1, n + 1):
        if k > 1:
            powers = [pw * xi for pw, xi in zip(powers, xis)]
        if sum(powers, QuadExt(-X.D)) != 0:
            return k
    return None


def is_design(X: DesignSet, n: int) -> bool:
    if n < 1:
        raise ValueError("degree must be positive")
    return first_nonvanishing(X, n) is None


def elementary_symmetric(values: Sequence, n: int, zero) -> list:
    """``[e_0, e_1, ..., e_n]`` of ``values`` via the product expansion."""
    e = [zero + 1] + [zero] * n
    for v in values:
        for k in range(n, 0, -1):
            e[k] = e[k] + e[k - 1] * v
    return e


def elementary_symmetric_check(X: DesignSet, n: int) -> bool:
    """True iff ``e_1, ..., e_n`` of the embedded points all vanish."""
    if n < 1:
        raise ValueError("degree must be positive")
    if n > len(X):
        raise ValueError(f"n={n} exceeds the number of points {len(X)}")
    e = elementary_symmetric([embed(p) for p in X], n, QuadExt(-X.D))
    return all(ek == 0 for ek in e[1:])


def shell_design_degrees(D: int) -> Callable[[int], bool]:
    """Degree predicate for which every non-empty shell of ``D`` is a design.

    ``D = 1``: degrees not divisible by 4; ``D = 3``: not divisible by 6;
    other class-number-one ``D``: odd degrees.
    """
    if D == 1:
        return lambda k: k % 4 != 0
    if D == 3:
        return lambda k: k % 6 != 0
    return lambda k: k % 2 == 1


def is_T_design(X: DesignSet, T: Callable[[int], bool], max_degree: int) -> bool:
    if max_degree < 1:
        raise ValueError("max_degree must be positive")
    xis = [embed(p) for p in X]
    powers = list(xis)
    for k in range(1, max_degree + 1):
        if k > 1:
            powers = [pw * xi for pw, xi in zip(powers, xis)]
        if T(k) and sum(powers, QuadExt(-X.D)) != 0:
            return False
    return True


def shell_points(D: int, r: Fraction | int) -> DesignSet | None:
    """All integer points on ``C_D(r)``, sorted; ``None`` when there are none.

    ``|y|`` is bounded using ``4r = (2x + y)^2 + D y^2`` (``D = 3 mod 4``) or
    ``r = x^2 + D y^2``; for each ``y`` the remaining square is tested with
    ``isqrt``.
    """
    check_D(D)
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    pts: list[tuple[int, int]] = []
    bound_num = math.floor(4 * r if is_three_mod_four(D) else r)
    ymax = math.isqrt(bound_num // D)
    for y in range(-ymax, ymax + 1):
        if is_three_mod_four(D):
            rest = 4 * r - D * y * y
            if rest < 0 or rest.denominator != 1:
                continue
            s = math.isqrt(int(rest))
            if s * s != rest:
                continue
            cands = {(s - y), (-s - y)}
            xs = [c // 2 for c in cands if c % 2 == 0]
        else:
            rest = r - D * y * y
            if rest < 0 or rest.denominator != 1:
                continue
            s = math.isqrt(int(rest))
            if s * s != rest:
                continue
            xs = list({s, -s})
        for x in xs:
            if norm_form(D, x, y) == r:
                pts.append((x, y))
    if not pts:
        return None
    return DesignSet(D, r, sorted(pts))
