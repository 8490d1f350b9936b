"""Rational isometries of ``C_D(r)``, orbit designs, and PTE constructions.

Matrices act on column vectors: a point ``(x, y)`` maps to ``M @ (x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Sequence

from .arith import format_rat, parse_rat
from .ellipse import DesignSet, EllipsePoint, check_D, first_nonvanishing, gram_matrix, is_three_mod_four
from .pte import PteSolution, is_disjoint, verify_pte

Matrix = tuple[tuple[Fraction, ...], ...]

ORBIT_CAP = 64
DEFAULT_RETRY_PARAMS = (2, 3, 5, 7)


class TransformError(ValueError):
    pass


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0])))
        for i in range(len(A))
    )


def mat_vec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((M[i][k] * v[k] for k in range(len(v))), Fraction(0)) for i in range(len(M)))


def transpose(M: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*M))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class RationalRotation:
    """A rational 2x2 matrix preserving the norm form of ``D``: ``M^T Q M = Q``."""

    D: int
    M: Matrix

    def __post_init__(self) -> None:
        check_D(self.D)
        M = tuple(tuple(Fraction(c) for c in row) for row in self.M)
        object.__setattr__(self, "M", M)
        Q = gram_matrix(self.D)
        if mat_mul(mat_mul(transpose(M), Q), M) != Q:
            raise TransformError(f"matrix {M} does not preserve the norm form of D={self.D}")
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        if det not in (1, -1):
            raise TransformError(f"determinant {det} is not +-1")

    def __call__(self, v: Sequence) -> tuple[Fraction, Fraction]:
        return mat_vec(self.M, v)

    def compose(self, other: RationalRotation) -> RationalRotation:
        if other.D != self.D:
            raise TransformError("D mismatch")
        return RationalRotation(self.D, mat_mul(self.M, other.M))

    def to_json(self) -> dict:
        return {"D": self.D, "M": [[format_rat(c) for c in row] for row in self.M]}

    @classmethod
    def from_json(cls, obj: dict) -> RationalRotation:
        return cls(int(obj["D"]), tuple(tuple(parse_rat(c) for c in row) for row in obj["M"]))


def multiplication_matrix(D: int, p, q) -> Matrix:
    """Matrix of multiplication by the embedded image of ``(p, q)``.

    In integral-basis coordinates this is ``[[p, -D q], [q, p]]`` or, for
    ``D = 3 (mod 4)`` with ``w^2 = w - (1+D)/4``, ``[[p, -k q], [q, p + q]]``.
    """
    p, q = Fraction(p), Fraction(q)
    if is_three_mod_four(D):
        k = Fraction(1 + D, 4)
        return ((p, -k * q), (q, p + q))
    return ((p, -D * q), (q, p))


def rational_rotation(D: int, t) -> RationalRotation:
    """One-parameter family of rational rotations of ``C_D(r)``.

    ``D = 3`` uses the hexagon construction (first column
    ``((2t+1), (t^2-1)) / (t^2+t+1)``); other ``D = 3 (mod 4)`` use the unit
    point cut by the line through ``(1, 0)`` of slope ``t``; ``D = 1, 2 (mod 4)``
    use ``c = (1 - D t^2)/(1 + D t^2)``, ``u = 2t/(1 + D t^2)``.
    """
    check_D(D)
    t = Fraction(t)
    if D == 3:
        den = t * t + t + 1
        p, q = (2 * t + 1) / den, (t * t - 1) / den
    elif is_three_mod_four(D):
        k = Fraction(1 + D, 4)
        den = k * t * t + t + 1
        if den == 0:
            raise TransformError(f"parameter t={t} is singular for D={D}")
        p = (k * t * t - 1) / den
        q = t * (p - 1)
    else:
        den = 1 + D * t * t
        p, q = (1 - D * t * t) / den, 2 * t / den
    return RationalRotation(D, multiplication_matrix(D, p, q))


def apply(rot: RationalRotation, X: DesignSet) -> DesignSet:
    if rot.D != X.D:
        raise TransformError(f"rotation D={rot.D} does not match design D={X.D}")
    return DesignSet(X.D, X.r, [rot(p.coords) for p in X])


def tight_generator_matrix(D: int) -> RationalRotation:
    """Finite-order rational rotation generating tight designs.

    Only ``D = 1`` (order 4) and ``D = 3`` (order 6) admit rational tight
    designs; any other ``D`` raises.
    """
    if D == 1:
        return RationalRotation(1, ((0, -1), (1, 0)))
    if D == 3:
        return RationalRotation(3, ((0, -1), (1, 1)))
    raise TransformError(
        f"rational tight designs on C_D(r) exist only for D in {{1, 3}}, not D={D}"
    )


def rotation_order(gen: RationalRotation, cap: int = ORBIT_CAP) -> int:
    I = identity(2)
    M = gen.M
    for k in range(1, cap + 1):
        if M == I:
            return k
        M = mat_mul(M, gen.M)
    raise TransformError(f"rotation has no finite order within {cap} steps")


def orbit_design(D: int, start: EllipsePoint | Sequence, gen: RationalRotation) -> DesignSet:
    """The orbit of ``start`` under the cyclic group of ``gen``.

    With generator order ``k`` the orbit is a ``(k-1)``-design; this is checked.
    """
    if gen.D != D:
        raise TransformError("generator D mismatch")
    if isinstance(start, EllipsePoint):
        if start.D != D:
            raise TransformError("start point D mismatch")
        r, v = start.r, start.coords
    else:
        v = tuple(Fraction(c) for c in start)
        r = EllipsePoint(D, v[0], v[1], _norm(D, v)).r
    k = rotation_order(gen)
    pts = [v]
    for _ in range(k - 1):
        pts.append(gen(pts[-1]))
    X = DesignSet(D, r, pts)
    if k > 1 and first_nonvanishing(X, k - 1) is not None:
        raise TransformError(f"orbit of order {k} is not a {k - 1}-design")
    return X


def _norm(D: int, v: Sequence) -> Fraction:
    from .ellipse import norm_form

    return norm_form(D, v[0], v[1])


@dataclass(frozen=True)
class DesignPair:
    solution: PteSolution
    rotation: RationalRotation | None


def design_pair_to_pte2(
    X: DesignSet,
    Y: DesignSet,
    degree: int,
    rot: RationalRotation | None = None,
    retry_params: Iterable = DEFAULT_RETRY_PARAMS,
) -> DesignPair:
    """Pair two n-designs on the same conic into a PTE solution.

    The right side is ``rot(Y)`` (``Y`` itself when ``rot`` is ``None``).  If
    the sides then coincide, rotations ``rational_rotation(D, t)`` for ``t`` in
    ``retry_params`` are tried in order; the rotation actually used is
    returned.  With ``retry_params=()`` a coinciding pair is returned flagged.
    """
    if (X.D, X.r) != (Y.D, Y.r):
        raise TransformError("designs lie on different conics")
    if len(X) != len(Y):
        raise TransformError("designs have different sizes")
    for name, Z in (("left", X), ("right", Y)):
        k = first_nonvanishing(Z, degree)
        if k is not None:
            raise TransformError(f"{name} design fails at degree {k} (requested {degree})")
    base = rot
    candidates = [base] + [
        rational_rotation(X.D, t) if base is None else base.compose(rational_rotation(X.D, t))
        for t in retry_params
    ]
    first = None
    for cand in candidates:
        right = Y if cand is None else apply(cand, Y)
        pair = DesignPair(PteSolution(2, degree, X.coords, right.coords), cand)
        if is_disjoint(pair.solution):
            return pair
        first = first or pair
    return first


def zero_sum_triples(side: Sequence) -> list[tuple]:
    """All ordered triples ``(a1, a2, a3)`` with ``side == {+-a1, +-a2, +-a3}`` and zero sum.

    The first candidate follows the side's own order of first appearance.
    """
    values = [v[0] if isinstance(v, tuple) else v for v in side]
    if len(values) != 6:
        return []
    remaining = list(values)
    reps = []
    while remaining:
        x = remaining.pop(0)
        try:
            remaining.remove(-x)
        except ValueError:
            return []
        reps.append(x)
    out = []
    seen = set()
    for perm in permutations(reps):
        for signs in product((1, -1), repeat=2):
            trip = (perm[0], signs[0] * perm[1], signs[1] * perm[2])
            if sum(trip) == 0 and trip not in seen:
                seen.add(trip)
                out.append(trip)
    return out


def _lift_side(a: tuple) -> list[tuple]:
    pairs = [(a[0], a[1]), (a[1], a[2]), (a[2], a[0])]
    out = []
    for p in pairs:
        out.append(p)
        out.append((-p[0], -p[1]))
    return out


def cyclic_lift(s: PteSolution) -> PteSolution:
    """Lift a symmetric zero-sum 1D sextuple solution to two dimensions.

    ``[+-a1, +-a2, +-a3] = [+-b1, +-b2, +-b3]`` becomes
    ``[+-(a1,a2), +-(a2,a3), +-(a3,a1)] = [+-(b1,b2), +-(b2,b3), +-(b3,b1)]``,
    which is then verified at the same degree.
    """
    if s.dimension != 1 or s.size != 6:
        raise TransformError("cyclic lift needs a one-dimensional solution of size 6")
    lefts, rights = zero_sum_triples(s.left), zero_sum_triples(s.right)
    if not lefts or not rights:
        side = "left" if not lefts else "right"
        raise TransformError(f"{side} side has no symmetric zero-sum decomposition")
    failure = None
    for a in lefts:
        for b in rights:
            lifted = PteSolution(2, s.degree, _lift_side(a), _lift_side(b))
            report = verify_pte(lifted)
            if report.valid:
                return lifted
            failure = failure or report.first_failure
    raise TransformError(f"lifted solution fails at monomial {failure}")
