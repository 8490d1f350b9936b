"""Parametric families of PTE solutions and rational ellipsoidal designs.

Every generator checks its own output (``verify_pte`` or ``is_design``) and
raises :class:`FamilyError` if the formula fails; degenerate parameter values
(sides that coincide) are returned as-is and show up as ``disjoint=False``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import quad_sqrt
from .ellipse import DesignSet, first_nonvanishing
from .pte import PteSolution, verify_pte


class FamilyError(RuntimeError):
    """A generated object failed its own verification."""


def _q(x) -> Fraction:
    return Fraction(x)


def _pm(values) -> list:
    out = []
    for v in values:
        out.append(v)
        out.append(-v if not isinstance(v, tuple) else tuple(-c for c in v))
    return out


def _checked(s: PteSolution) -> PteSolution:
    report = verify_pte(s)
    if not report.valid:
        raise FamilyError(
            f"generated solution fails at monomial {report.first_failure}: {s}"
        )
    return s


def borwein1d_triples(m, n) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    m, n = _q(m), _q(n)
    left = (2 * m + 2 * n, -n * m - n - m + 3, n * m - n - m - 3)
    right = (2 * n - 2 * m, n * m - n + m + 3, -n * m - n + m - 3)
    return left, right


def gen_borwein1d(m, n) -> PteSolution:
    """Borwein's symmetric degree-5 sextuple pair in one dimension."""
    left, right = borwein1d_triples(m, n)
    return _checked(PteSolution(1, 5, _pm(left), _pm(right)))


def _cyclic_pairs(t: tuple) -> list[tuple]:
    return [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]


def gen_borwein2d(m, n) -> PteSolution:
    """Two-dimensional Borwein solution: cyclic pairs of the 1D triples."""
    left, right = borwein1d_triples(m, n)
    return _checked(
        PteSolution(2, 5, _pm(_cyclic_pairs(left)), _pm(_cyclic_pairs(right)))
    )


def gen_alpers_tijdeman(a, b) -> PteSolution:
    a, b = _q(a), _q(b)
    left = [
        (0, 0),
        (2 * a + b, b),
        (3 * a + b, 3 * a + 3 * b),
        (2 * a, 6 * a + 4 * b),
        (-b, 6 * a + 3 * b),
        (-a - b, 3 * a + b),
    ]
    right = [
        (2 * a, 0),
        (3 * a + b, 3 * a + b),
        (2 * a + b, 6 * a + 3 * b),
        (0, 6 * a + 4 * b),
        (-a - b, 3 * a + 3 * b),
        (-b, b),
    ]
    return _checked(PteSolution(2, 5, left, right))


def at_symmetric_form(a, b) -> PteSolution:
    """Alpers-Tijdeman solution translated by ``(-a, -3a - 2b)``; symmetric."""
    a, b = _q(a), _q(b)
    left = [(a, 3 * a + 2 * b), (a + b, -3 * a - b), (-2 * a - b, -b)]
    right = [(a, -3 * a - 2 * b), (a + b, 3 * a + b), (-2 * a - b, b)]
    return _checked(PteSolution(2, 5, _pm(left), _pm(right)))


def hexagon_triple(t) -> tuple[Fraction, Fraction, Fraction]:
    """Zero-sum triple ``((2t+1), (t^2-1), -t(t+2)) / (t^2+t+1)``; a point pair of ``C_3(1)``."""
    t = _q(t)
    den = t * t + t + 1
    return ((2 * t + 1) / den, (t * t - 1) / den, -t * (t + 2) / den)


def gen_hexagon_design(t) -> DesignSet:
    """Rational tight 5-design on ``C_3(1)``: Eisenstein hexagon rotated by ``t``."""
    a = hexagon_triple(t)
    X = DesignSet(3, 1, _pm(_cyclic_pairs(a)))
    if first_nonvanishing(X, 5) is not None:
        raise FamilyError(f"hexagon design at t={t} is not a 5-design")
    return X


def gen_hexagon_pte(t1, t2) -> PteSolution:
    X, Y = gen_hexagon_design(t1), gen_hexagon_design(t2)
    return _checked(PteSolution(2, 5, X.coords, Y.coords))


def gen_hexagon_pte1d(t1, t2) -> PteSolution:
    """First-coordinate projection of :func:`gen_hexagon_pte`."""
    return _checked(PteSolution(1, 5, _pm(hexagon_triple(t1)), _pm(hexagon_triple(t2))))


def mlsu_triple(t) -> tuple[Fraction, Fraction, Fraction]:
    t = _q(t)
    den = 14 * (t * t + t + 1)
    return (
        (2 * t * t - 22 * t - 13) / den,
        (-13 * t * t - 4 * t + 11) / den,
        (11 * t * t + 26 * t + 2) / den,
    )


@dataclass(frozen=True)
class MlsuDesign:
    design: DesignSet
    triple: tuple[Fraction, Fraction, Fraction]


def gen_mlsu(t) -> MlsuDesign:
    """Six-point rational 5-design on ``C_3(3/4)`` and its zero-sum triple."""
    x = mlsu_triple(t)
    X = DesignSet(3, Fraction(3, 4), _pm(_cyclic_pairs(x)))
    if first_nonvanishing(X, 5) is not None:
        raise FamilyError(f"MLSU design at t={t} is not a 5-design")
    return MlsuDesign(X, x)


def gen_mlsu_pte(t1, t2, dimension: int = 1) -> PteSolution:
    """Degree-5 solution from two MLSU parameters, as 1D triples or 2D designs."""
    if dimension == 1:
        return _checked(PteSolution(1, 5, _pm(mlsu_triple(t1)), _pm(mlsu_triple(t2))))
    if dimension == 2:
        X, Y = gen_mlsu(t1).design, gen_mlsu(t2).design
        return _checked(PteSolution(2, 5, X.coords, Y.coords))
    raise ValueError("dimension must be 1 or 2")


def chernick_triples(m, n):
    m, n = _q(m), _q(n)
    left = (
        -5 * m * m + 4 * m * n - 3 * n * n,
        -3 * m * m + 6 * m * n + 5 * n * n,
        -m * m - 10 * m * n - n * n,
    )
    right = (
        -5 * m * m + 6 * m * n + 3 * n * n,
        -3 * m * m - 4 * m * n - 5 * n * n,
        -m * m + 10 * m * n - n * n,
    )
    return left, right


def gen_chernick(m, n) -> PteSolution:
    left, right = chernick_triples(m, n)
    return _checked(PteSolution(1, 5, _pm(left), _pm(right)))


def bessel_side(z) -> list:
    """``[z, (-z - 3 +- sqrt(-3z^2 - 6z - 5)) / 2]``.

    Entries are ``QuadExt`` over the side's own discriminant, or plain
    ``Fraction`` if the discriminant happens to be a rational square.
    """
    z = _q(z)
    root = quad_sqrt(-3 * z * z - 6 * z - 5)
    base = (-z - 3) / 2
    half_root = root / 2 if isinstance(root, Fraction) else root.scale(Fraction(1, 2))
    return [z, base + half_root, base - half_root]


def gen_bessel2(z1, z2) -> PteSolution:
    """Ideal degree-2 solution of size 3 with quadratic-irrational entries."""
    return _checked(PteSolution(1, 2, bessel_side(z1), bessel_side(z2)))


# name -> (callable, parameter names)
FAMILIES = {
    "borwein1d": (gen_borwein1d, ("m", "n")),
    "borwein2d": (gen_borwein2d, ("m", "n")),
    "alpers-tijdeman": (gen_alpers_tijdeman, ("a", "b")),
    "at-symmetric": (at_symmetric_form, ("a", "b")),
    "hexagon": (gen_hexagon_pte, ("t1", "t2")),
    "hexagon1d": (gen_hexagon_pte1d, ("t1", "t2")),
    "hexagon-design": (gen_hexagon_design, ("t",)),
    "mlsu": (gen_mlsu_pte, ("t1", "t2")),
    "mlsu-design": (lambda t: gen_mlsu(t).design, ("t",)),
    "chernick": (gen_chernick, ("m", "n")),
    "bessel2": (gen_bessel2, ("z1", "z2")),
}
