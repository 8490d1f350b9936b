"""PTE solutions in dimension ``r`` and their structural predicates."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Sequence

from .arith import QuadExt, format_rat, parse_rat


def _as_vector(v: Any, r: int) -> tuple:
    if isinstance(v, (list, tuple)):
        vec = tuple(v)
    else:
        vec = (v,)
    if len(vec) != r:
        raise ValueError(f"expected a vector of length {r}, got {v!r}")
    return tuple(c if isinstance(c, QuadExt) else Fraction(c) for c in vec)


def _entry_key(c) -> tuple:
    if isinstance(c, QuadExt) and not c.is_rational():
        return (1, c.disc, c.a, c.b)
    if isinstance(c, QuadExt):
        return (0, c.a)
    return (0, c)


def vector_key(v: Sequence) -> tuple:
    return tuple(_entry_key(c) for c in v)


@dataclass(frozen=True)
class PteSolution:
    """Two equal-size multisets of ``dimension``-vectors and a claimed degree.

    Entries are ``Fraction`` (or ``QuadExt`` for quadratic-field solutions).
    One-dimensional solutions still store 1-tuples.
    """

    dimension: int
    degree: int
    left: tuple
    right: tuple

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.degree < 1:
            raise ValueError("degree must be positive")
        left = tuple(_as_vector(v, self.dimension) for v in self.left)
        right = tuple(_as_vector(v, self.dimension) for v in self.right)
        if len(left) != len(right):
            raise ValueError(f"side sizes differ: {len(left)} vs {len(right)}")
        if not left:
            raise ValueError("sides must be non-empty")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def size(self) -> int:
        return len(self.left)

    def with_degree(self, degree: int) -> PteSolution:
        return PteSolution(self.dimension, degree, self.left, self.right)

    def to_json(self) -> dict:
        def enc(c):
            return c.to_json() if isinstance(c, QuadExt) else format_rat(c)

        return {
            "dimension": self.dimension,
            "degree": self.degree,
            "left": [[enc(c) for c in v] for v in self.left],
            "right": [[enc(c) for c in v] for v in self.right],
        }

    @classmethod
    def from_json(cls, obj: dict) -> PteSolution:
        def dec(c):
            if isinstance(c, dict):
                q = QuadExt.from_json(c)
                return q.a if q.is_rational() else q
            return parse_rat(c)

        def vec(v):
            return [dec(c) for c in v] if isinstance(v, list) else [dec(v)]

        return cls(
            int(obj["dimension"]),
            int(obj["degree"]),
            tuple(vec(v) for v in obj["left"]),
            tuple(vec(v) for v in obj["right"]),
        )


@dataclass(frozen=True)
class PteReport:
    valid: bool
    max_valid_degree: int
    disjoint: bool
    first_failure: tuple[int, ...] | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "max_valid_degree": self.max_valid_degree,
            "disjoint": self.disjoint,
            "first_failure": list(self.first_failure) if self.first_failure else None,
            "notes": list(self.notes),
        }


def exponent_tuples(r: int, total: int) -> list[tuple[int, ...]]:
    """All exponent vectors of length ``r`` summing to ``total``, lexicographically descending."""
    if r == 1:
        return [(total,)]
    out = []
    for k in range(total, -1, -1):
        for rest in exponent_tuples(r - 1, total - k):
            out.append((k,) + rest)
    return out


def _comparable(v):
    if isinstance(v, QuadExt) and v.is_rational():
        return v.a
    return v


class _MomentTable:
    """Cached coordinate powers for one multiset of vectors."""

    def __init__(self, vectors: Sequence[tuple]) -> None:
        self.vectors = vectors
        self.powers = [[[1] for _ in v] for v in vectors]

    def _pow(self, i: int, j: int, k: int):
        table = self.powers[i][j]
        while len(table) <= k:
            table.append(table[-1] * self.vectors[i][j])
        return table[k]

    def moment(self, exps: tuple[int, ...]):
        total = 0
        for i, v in enumerate(self.vectors):
            term = 1
            for j, k in enumerate(exps):
                if k:
                    term = term * self._pow(i, j, k)
            total = total + term
        return _comparable(total)


def moment(vectors: Sequence[tuple], exps: tuple[int, ...]):
    """``sum_i prod_j v_ij ** exps[j]`` over the multiset ``vectors``."""
    return _MomentTable(vectors).moment(exps)


def is_disjoint(s: PteSolution) -> bool:
    left = {vector_key(v) for v in s.left}
    return not any(vector_key(v) in left for v in s.right)


def verify_pte(s: PteSolution) -> PteReport:
    """Compare all mixed power sums of total degree up to ``s.degree + 3``.

    ``max_valid_degree`` is the largest scanned ``d`` with agreement for every
    total degree ``<= d``; ``first_failure`` is the first exponent vector where
    the sides disagree (``None`` when the whole scan agrees).
    """
    lt, rt = _MomentTable(s.left), _MomentTable(s.right)
    cap = s.degree + 3
    max_ok = 0
    failure = None
    for d in range(1, cap + 1):
        for exps in exponent_tuples(s.dimension, d):
            if lt.moment(exps) != rt.moment(exps):
                failure = exps
                break
        if failure is not None:
            break
        max_ok = d
    disjoint = is_disjoint(s)
    notes = []
    if not disjoint:
        notes.append("sides share elements (degenerate)")
    return PteReport(
        valid=max_ok >= s.degree,
        max_valid_degree=max_ok,
        disjoint=disjoint,
        first_failure=failure,
        notes=notes,
    )


def _negate(v: tuple) -> tuple:
    return tuple(-c for c in v)


def _multiset(vectors: Iterable[tuple]) -> Counter:
    return Counter(vector_key(v) for v in vectors)


def is_symmetric_side(vectors: Sequence[tuple]) -> bool:
    return _multiset(vectors) == _multiset(_negate(v) for v in vectors)


def is_symmetric(s: PteSolution) -> bool:
    return is_symmetric_side(s.left) and is_symmetric_side(s.right)


def _is_zero(v: tuple) -> bool:
    return all(c == 0 for c in v)


def zero_sum_subset(vectors: Sequence[tuple], subset_max: int) -> tuple[int, ...] | None:
    """Smallest index set with zero vector sum, ignoring trivial ones.

    Subsets containing a zero vector or an antipodal pair ``{v, -v}`` are
    skipped: every symmetric side has those.
    """
    keys = [vector_key(v) for v in vectors]
    neg_keys = [vector_key(_negate(v)) for v in vectors]
    for size in range(2, subset_max + 1):
        for idx in combinations(range(len(vectors)), size):
            if any(_is_zero(vectors[i]) for i in idx):
                continue
            chosen = {keys[i] for i in idx}
            if any(neg_keys[i] in chosen for i in idx):
                continue
            if all(sum(vectors[i][j] for i in idx) == 0 for j in range(len(vectors[0]))):
                return idx
    return None


def is_linear(s: PteSolution, subset_max: int | None = None) -> tuple[bool, tuple | None]:
    """Search each side independently for a non-trivial zero-sum subset.

    Returns ``(found, (left_indices, right_indices))``.
    """
    if subset_max is None:
        subset_max = s.size
    if subset_max > s.size:
        raise ValueError("subset_max exceeds solution size")
    lw = zero_sum_subset(s.left, subset_max)
    rw = zero_sum_subset(s.right, subset_max)
    if lw is None or rw is None:
        return False, None
    return True, (lw, rw)


def is_ideal(s: PteSolution) -> bool:
    return s.size == s.degree + 1


def canonicalize(s: PteSolution) -> PteSolution:
    left = tuple(sorted(s.left, key=vector_key))
    right = tuple(sorted(s.right, key=vector_key))
    return PteSolution(s.dimension, s.degree, left, right)


def same_solution(s1: PteSolution, s2: PteSolution) -> bool:
    """Multiset equality of both sides (degree is ignored)."""
    a, b = canonicalize(s1), canonicalize(s2)
    return (
        a.dimension == b.dimension
        and [vector_key(v) for v in a.left] == [vector_key(v) for v in b.left]
        and [vector_key(v) for v in a.right] == [vector_key(v) for v in b.right]
    )
