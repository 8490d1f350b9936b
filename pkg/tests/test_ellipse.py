from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import sympy_power_sum
from pte_designs.arith import QuadExt
from pte_designs.ellipse import (
    DesignSet,
    EllipsePoint,
    elementary_symmetric,
    elementary_symmetric_check,
    embed,
    is_T_design,
    is_design,
    norm_form,
    power_sum,
    shell_design_degrees,
    shell_points,
)

F = Fraction
HEXAGON = {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}
SQUARE = [(1, 0), (0, 1), (-1, 0), (0, -1)]


@pytest.mark.parametrize(
    "D, x, y, expected",
    [(3, 1, -1, 1), (1, 0, 1, 1), (3, F(5, 7), F(3, 7), 1), (2, 1, 1, 3), (7, 1, 1, 4)],
)
def test_norm_form(D, x, y, expected):
    assert norm_form(D, x, y) == expected


@pytest.mark.parametrize("D", [0, -3, 4, 12, 18])
def test_norm_form_rejects_non_squarefree(D):
    with pytest.raises(ValueError):
        norm_form(D, 1, 1)


def test_point_must_lie_on_conic():
    with pytest.raises(ValueError):
        EllipsePoint(3, 1, 1, 1)


@pytest.mark.parametrize(
    "D, x, y, expected",
    [
        (2, 1, 1, QuadExt(-2, 1, 1)),
        (3, 0, 1, QuadExt(-3, F(1, 2), F(1, 2))),
        (3, 1, -1, QuadExt(-3, F(1, 2), F(-1, 2))),
    ],
)
def test_embed(D, x, y, expected):
    p = EllipsePoint(D, x, y, norm_form(D, x, y))
    assert embed(p) == expected


@given(
    st.sampled_from([1, 2, 3, 5, 7, 11, 15, 19]),
    st.fractions(max_denominator=30),
    st.fractions(max_denominator=30),
)
def test_embed_preserves_norm(D, x, y):
    r = norm_form(D, x, y)
    if r == 0:
        return
    assert embed(EllipsePoint(D, x, y, r)).norm() == r


def test_power_sums_hexagon(hexagon):
    assert power_sum(hexagon, 3) == 0
    assert power_sum(hexagon, 6) == 6
    single = DesignSet(1, 1, [(1, 0)])
    assert power_sum(single, 5) == 1


@pytest.mark.parametrize("k", range(1, 13))
def test_power_sums_match_sympy_oracle(hexagon, k):
    oracle = sympy_power_sum(3, hexagon.coords, k)
    got = power_sum(hexagon, k)
    assert got.b == 0 and got.a == oracle


def test_is_design_examples(hexagon):
    assert is_design(hexagon, 5)
    assert not is_design(hexagon, 6)
    sq = DesignSet(1, 1, SQUARE)
    assert is_design(sq, 3)
    assert not is_design(sq, 4)


def test_elementary_symmetric_examples(hexagon):
    assert elementary_symmetric_check(hexagon, 5)
    assert not elementary_symmetric_check(hexagon, 6)
    e = elementary_symmetric([embed(p) for p in hexagon], 6, QuadExt(-3))
    assert e[6] == -1
    antipodal = DesignSet(1, 1, [(1, 0), (-1, 0)])
    assert elementary_symmetric_check(antipodal, 1)
    with pytest.raises(ValueError):
        elementary_symmetric_check(antipodal, 3)


def _random_designish(seed):
    """Point sets mixing designs and non-designs on C_3(1) and C_1(25)."""
    import random

    from pte_designs.families import gen_hexagon_design

    rng = random.Random(seed)
    X = gen_hexagon_design(F(rng.randint(-9, 9), rng.randint(1, 9)))
    pts = list(X.coords)
    rng.shuffle(pts)
    return DesignSet(3, 1, pts[: rng.randint(1, 6)])


@pytest.mark.parametrize("seed", range(20))
def test_newton_equivalence(seed):
    X = _random_designish(seed)
    for n in range(1, len(X) + 1):
        assert is_design(X, n) == elementary_symmetric_check(X, n)


def test_newton_equivalence_shells():
    for D, r in [(1, 25), (1, 5), (2, 6), (3, 7), (7, 8)]:
        X = shell_points(D, r)
        for n in range(1, len(X) + 1):
            assert is_design(X, n) == elementary_symmetric_check(X, n)


def test_T_designs():
    hexagon = shell_points(3, 1)
    assert is_T_design(hexagon, lambda k: k % 6 != 0, 12)
    assert not is_T_design(hexagon, lambda k: True, 12)
    assert is_T_design(DesignSet(1, 1, SQUARE), lambda k: k % 4 != 0, 12)
    assert is_T_design(DesignSet(2, 1, [(1, 0), (-1, 0)]), lambda k: k % 2 == 1, 11)


def test_shell_points_examples():
    assert set(shell_points(3, 1).coords) == HEXAGON
    assert shell_points(3, F(3, 4)) is None
    assert set(shell_points(1, 1).coords) == set(SQUARE)


def _brute_shell(D, r, box=12):
    return {
        (x, y)
        for x in range(-box, box + 1)
        for y in range(-box, box + 1)
        if norm_form(D, x, y) == r
    }


@pytest.mark.parametrize("D", [1, 2, 3, 7, 11, 15])
def test_shell_points_brute_force(D):
    for r in range(1, 40):
        X = shell_points(D, r)
        got = set() if X is None else set(X.coords)
        assert got == _brute_shell(D, r)


@pytest.mark.parametrize("D", [1, 2, 3, 7, 11])
def test_shells_are_T_designs(D):
    T = shell_design_degrees(D)
    for r in range(1, 26):
        X = shell_points(D, r)
        if X is not None:
            assert is_T_design(X, T, 11)


def test_design_json_roundtrip(hexagon):
    assert DesignSet.from_json(hexagon.to_json()) == hexagon
    assert hexagon.to_json()["points"][0] == ["-1", "0"]
