"""Exhaustive small-box searches used as independent checks of the size bounds."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

from .ellipse import DesignSet, check_D, first_nonvanishing
from .pte import PteSolution, exponent_tuples, moment

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, budget: int) -> None:
        super().__init__(f"estimated {estimate} states exceeds budget {budget}")
        self.estimate = estimate
        self.budget = budget


@dataclass(frozen=True)
class SearchSpec:
    dimension: int
    degree: int
    size: int
    bound: int
    dedup: str = "canonical"

    def __post_init__(self) -> None:
        if self.dimension not in (1, 2):
            raise ValueError("dimension must be 1 or 2")
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if self.degree < 1 or self.size < 1:
            raise ValueError("degree and size must be positive")
        if self.dedup not in ("none", "canonical", "affine-classes"):
            raise ValueError(f"unknown dedup mode {self.dedup!r}")


@dataclass
class SearchResult:
    solutions: list[PteSolution]
    states: int
    spec: SearchSpec
    notes: list[str] = field(default_factory=list)


def _box(spec: SearchSpec) -> list[tuple[int, ...]]:
    # canonical mode translates so every coordinate minimum is 0; a box
    # [-B, B] then becomes [0, 2B]
    if spec.dedup == "none":
        coords = range(-spec.bound, spec.bound + 1)
    else:
        coords = range(0, 2 * spec.bound + 1)
    return list(product(coords, repeat=spec.dimension))


def estimate_states(spec: SearchSpec) -> int:
    v = (2 * spec.bound + 1) ** spec.dimension
    return math.comb(v + spec.size - 1, spec.size)


def _signature(side: tuple, exps: list[tuple[int, ...]]) -> tuple:
    return tuple(moment(side, e) for e in exps)


def _touches_origin_axes(left: tuple, right: tuple, r: int) -> bool:
    pts = left + right
    return all(min(p[j] for p in pts) == 0 for j in range(r))


def _canonical_key(left: tuple, right: tuple, r: int) -> tuple:
    """Translation-and-reflection invariant key of an integer solution."""
    keys = []
    for signs in product((1, -1), repeat=r):
        L = [tuple(s * c for s, c in zip(signs, p)) for p in left]
        R = [tuple(s * c for s, c in zip(signs, p)) for p in right]
        mins = [min(p[j] for p in L + R) for j in range(r)]
        L = tuple(sorted(tuple(c - m for c, m in zip(p, mins)) for p in L))
        R = tuple(sorted(tuple(c - m for c, m in zip(p, mins)) for p in R))
        keys.append(min((L, R), (R, L)))
    return min(keys)


def search_pte(spec: SearchSpec, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """All disjoint integer solutions in the box, up to the chosen dedup.

    Multisets of size ``m`` are bucketed by their power-sum signature up to
    the requested degree; solutions are disjoint pairs inside a bucket.
    ``states`` counts the multisets enumerated.
    """
    estimate = estimate_states(spec)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    r = spec.dimension
    exps = [e for d in range(1, spec.degree + 1) for e in exponent_tuples(r, d)]
    buckets: dict[tuple, list[tuple]] = defaultdict(list)
    states = 0
    for side in combinations_with_replacement(_box(spec), spec.size):
        states += 1
        buckets[_signature(side, exps)].append(side)

    found: list[tuple[tuple, tuple]] = []
    seen: set = set()
    for sides in buckets.values():
        for left, right in combinations(sides, 2):
            if set(left) & set(right):
                continue
            if spec.dedup != "none":
                if not _touches_origin_axes(left, right, r):
                    continue
                key = _canonical_key(left, right, r)
                if key in seen:
                    continue
                seen.add(key)
            found.append((left, right))
    found.sort()
    solutions = [PteSolution(r, spec.degree, L, R) for L, R in found]
    if spec.dedup == "affine-classes":
        from .equivalence import are_equivalent

        classes: list[PteSolution] = []
        for s in solutions:
            if not any(are_equivalent(s, c).equivalent for c in classes):
                classes.append(s)
        solutions = classes
    return SearchResult(solutions, states, spec)


@dataclass
class StroudResult:
    witness: DesignSet | None
    subsets_scanned: int


def stroud_witness(
    D: int, r, n: int, pool: DesignSet, budget: int = DEFAULT_BUDGET
) -> StroudResult:
    """Look for an n-design among sub-multisets of ``pool`` with at most ``n`` points."""
    check_D(D)
    r = Fraction(r)
    if (pool.D, pool.r) != (D, r):
        raise ValueError("pool does not lie on C_D(r)")
    total = sum(math.comb(len(pool), k) for k in range(1, min(n, len(pool)) + 1))
    if total > budget:
        raise BudgetExceeded(total, budget)
    scanned = 0
    for k in range(1, min(n, len(pool)) + 1):
        for idx in combinations(range(len(pool)), k):
            scanned += 1
            X = DesignSet(D, r, [pool.points[i] for i in idx])
            if first_nonvanishing(X, n) is None:
                return StroudResult(X, scanned)
    return StroudResult(None, scanned)
