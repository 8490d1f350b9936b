"""Affine containment between PTE solutions and cheap non-equivalence certificates.

A solution ``s`` *contains* ``t`` when an affine map ``v -> M v + e`` sends the
left multiset of ``s`` onto the left multiset of ``t`` and the right onto the
right.  The search is exhaustive over anchor correspondences and only returns
invertible ``M``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import format_rat, is_rational_square
from .pte import PteSolution, is_symmetric, vector_key, verify_pte
from .transform import mat_vec

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class AffineMap:
    M: Matrix
    e: tuple[Fraction, ...]
    non_unique: bool = False

    @property
    def invertible(self) -> bool:
        return rank([list(row) for row in self.M]) == len(self.M)

    def __call__(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(a + b for a, b in zip(mat_vec(self.M, v), self.e))

    def to_json(self) -> dict:
        return {
            "M": [[format_rat(c) for c in row] for row in self.M],
            "e": [format_rat(c) for c in self.e],
            "invertible": self.invertible,
            "non_unique": self.non_unique,
        }


def solve(A: list[list[Fraction]], B: list[list[Fraction]]) -> list[list[Fraction]] | None:
    """Solve ``A X = B`` exactly for square ``A``; ``None`` if ``A`` is singular."""
    n = len(A)
    aug = [list(map(Fraction, A[i])) + list(map(Fraction, B[i])) for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def rank(rows: list[list[Fraction]]) -> int:
    rows = [list(map(Fraction, r)) for r in rows]
    rk, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rk, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        for r in range(len(rows)):
            if r != rk and rows[r][col] != 0:
                f = rows[r][col] / rows[rk][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def _independent_subset(vectors: list[tuple], limit: int) -> list[int]:
    """Greedy indices of linearly independent vectors (at most ``limit``)."""
    chosen: list[int] = []
    for i, v in enumerate(vectors):
        if len(chosen) == limit:
            break
        if rank([list(vectors[j]) for j in chosen] + [list(v)]) == len(chosen) + 1:
            chosen.append(i)
    return chosen


def _complete_basis(vectors: list[tuple], r: int) -> list[tuple]:
    """Append standard basis vectors until ``vectors`` spans ``Q^r``."""
    out = list(vectors)
    for j in range(r):
        if len(out) == r:
            break
        e = tuple(Fraction(int(i == j)) for i in range(r))
        if rank([list(v) for v in out] + [list(e)]) == len(out) + 1:
            out.append(e)
    return out


def _matrix_from_images(src: list[tuple], dst: list[tuple], r: int) -> tuple[Matrix, bool] | None:
    """An invertible ``M`` with ``M src[i] = dst[i]``.

    ``src`` must be linearly independent.  When ``len(src) < r`` the map is
    extended by sending completing basis vectors to vectors completing ``dst``;
    the result is flagged non-unique.  ``None`` if no invertible ``M`` exists.
    """
    k = len(src)
    if rank([list(v) for v in dst]) < k:
        return None
    src_full = _complete_basis(src, r)
    dst_full = _complete_basis(dst, r)
    # M S = T with S, T having basis vectors as columns  <=>  S^T M^T = T^T
    Mt = solve([list(v) for v in src_full], [list(v) for v in dst_full])
    if Mt is None:
        return None
    M = tuple(tuple(Mt[j][i] for j in range(r)) for i in range(r))
    return M, k < r


def _images_match(amap: AffineMap, src: Sequence[tuple], dst: Sequence[tuple]) -> bool:
    return Counter(vector_key(amap(v)) for v in src) == Counter(vector_key(v) for v in dst)


def _distinct(vectors: Sequence[tuple]) -> list[tuple]:
    seen, out = set(), []
    for v in sorted(vectors, key=vector_key):
        k = vector_key(v)
        if k not in seen:
            seen.add(k)
            out.append(v)
    return out


def _anchor_plan(src: PteSolution, affine: bool) -> tuple[list[tuple[str, tuple]], int]:
    """Anchor points (tagged with their side) and the dimension they span.

    Affine mode picks affinely independent points (differences from a base
    point must be linearly independent); linear mode picks linearly
    independent vectors.
    """
    r = src.dimension
    tagged = [("left", v) for v in _distinct(src.left)] + [
        ("right", v) for v in _distinct(src.right)
    ]
    if not affine:
        idx = _independent_subset([v for _, v in tagged], r)
        return [tagged[i] for i in idx], len(idx)
    base_side, base = tagged[0]
    diffs = [tuple(a - b for a, b in zip(v, base)) for _, v in tagged]
    idx = _independent_subset(diffs, r)
    return [(base_side, base)] + [tagged[i] for i in idx], len(idx)


def find_affine_containment(src: PteSolution, dst: PteSolution) -> AffineMap | None:
    """An invertible affine map taking ``src`` onto ``dst`` side by side, or ``None``.

    Anchors are affinely independent points of ``src``; every injective
    assignment of anchors to same-side distinct points of ``dst`` is solved
    exactly and the full multiset images are then checked.  If both solutions
    are symmetric the translation is forced to zero and only linear anchors
    are used.  Candidates are tried in sorted order, so the first hit is
    deterministic.
    """
    if src.dimension != dst.dimension:
        raise ValueError("dimension mismatch")
    if src.size != dst.size:
        raise ValueError("size mismatch")
    r = src.dimension
    linear = is_symmetric(src) and is_symmetric(dst)
    anchors, span = _anchor_plan(src, affine=not linear)
    targets = {"left": _distinct(dst.left), "right": _distinct(dst.right)}
    zero = tuple(Fraction(0) for _ in range(r))

    def candidates(i: int, used: list[tuple]):
        if i == len(anchors):
            yield list(used)
            return
        side = anchors[i][0]
        taken = {vector_key(u) for (s2, _), u in zip(anchors, used) if s2 == side}
        for t in targets[side]:
            if vector_key(t) in taken:
                continue
            used.append(t)
            yield from candidates(i + 1, used)
            used.pop()

    if span == 0 and linear:
        # every point is the zero vector
        amap = AffineMap(tuple(tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)), zero, True)
        return amap if _images_match(amap, src.left, dst.left) and _images_match(amap, src.right, dst.right) else None

    for images in candidates(0, []):
        pts = [v for _, v in anchors]
        if linear:
            src_vecs, dst_vecs = pts, images
        else:
            src_vecs = [tuple(a - b for a, b in zip(v, pts[0])) for v in pts[1:]]
            dst_vecs = [tuple(a - b for a, b in zip(v, images[0])) for v in images[1:]]
        solved = _matrix_from_images(src_vecs, dst_vecs, r) if src_vecs else (
            tuple(tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)),
            r > 0,
        )
        if solved is None:
            continue
        M, non_unique = solved
        if linear:
            e = zero
        else:
            Mp = mat_vec(M, pts[0])
            e = tuple(a - b for a, b in zip(images[0], Mp))
        amap = AffineMap(M, e, non_unique)
        if _images_match(amap, src.left, dst.left) and _images_match(amap, src.right, dst.right):
            return amap
    return None


@dataclass(frozen=True)
class EquivalenceReport:
    contained_lr: AffineMap | None
    contained_rl: AffineMap | None

    @property
    def equivalent(self) -> bool:
        return self.contained_lr is not None and self.contained_rl is not None


def are_equivalent(s1: PteSolution, s2: PteSolution) -> EquivalenceReport:
    return EquivalenceReport(find_affine_containment(s1, s2), find_affine_containment(s2, s1))


@dataclass(frozen=True)
class ObstructionReport:
    obstructed: bool
    ratio: Fraction

    def to_json(self) -> dict:
        return {"obstructed": self.obstructed, "ratio": format_rat(self.ratio)}


def square_ratio_obstruction(s1: PteSolution, s2: PteSolution) -> ObstructionReport:
    """Sum-of-squares test for symmetric one-dimensional solutions.

    A scaling ``x -> A x`` taking ``s1`` onto ``s2`` forces
    ``A^2 = sum(s2.left^2) / sum(s1.left^2)``; if that ratio is not a rational
    square, no such map exists.
    """
    for s in (s1, s2):
        if s.dimension != 1:
            raise ValueError("obstruction is only defined for one-dimensional solutions")
        if not is_symmetric(s):
            raise ValueError("obstruction requires symmetric solutions")
    q1 = sum((v[0] * v[0] for v in s1.left), Fraction(0))
    q2 = sum((v[0] * v[0] for v in s2.left), Fraction(0))
    if q1 == 0 or q2 == 0:
        raise ValueError("degenerate all-zero solution")
    ratio = Fraction(q2) / Fraction(q1)
    square, _ = is_rational_square(ratio)
    return ObstructionReport(not square, ratio)


def degrees_agree(s1: PteSolution, s2: PteSolution) -> bool:
    return verify_pte(s1).max_valid_degree == verify_pte(s2).max_valid_degree
