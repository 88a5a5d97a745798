import random
from fractions import Fraction

import pytest

from stabkit.ellipsoid import (_ceil_minus_sqrt, _floor_plus_sqrt,
                               enumerate_ellipsoid, ldl_decompose)
from stabkit.errors import BudgetError


def test_exact_sqrt_bounds():
    assert _floor_plus_sqrt(Fraction(0), Fraction(2)) == 1
    assert _floor_plus_sqrt(Fraction(0), Fraction(4)) == 2
    assert _floor_plus_sqrt(Fraction(1, 2), Fraction(9, 4)) == 2
    assert _ceil_minus_sqrt(Fraction(0), Fraction(2)) == -1
    assert _ceil_minus_sqrt(Fraction(-3), Fraction(4)) == -5
    rng = random.Random(81)
    for _ in range(500):
        c = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        q = Fraction(rng.randint(0, 400), rng.randint(1, 9))
        k = _floor_plus_sqrt(c, q)
        # k <= c + sqrt(q) < k + 1, checked by squaring exactly
        t = k - c
        assert t <= 0 or t * t <= q
        t1 = k + 1 - c
        assert t1 > 0 and t1 * t1 > q


def test_ldl_rejects_indefinite():
    with pytest.raises(ValueError):
        ldl_decompose([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]])


def test_enumeration_matches_brute_force():
    rng = random.Random(82)
    for _ in range(20):
        # random PD integer form: A^T A + I
        a = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        g = [[Fraction(sum(a[k][i] * a[k][j] for k in range(2))
                       + (1 if i == j else 0)) for j in range(2)]
             for i in range(2)]
        bound = Fraction(rng.randint(1, 30))
        got = sorted(enumerate_ellipsoid(g, bound))
        brute = []
        for x in range(-40, 41):
            for y in range(-40, 41):
                q = (g[0][0] * x * x + 2 * g[0][1] * x * y + g[1][1] * y * y)
                if q <= bound:
                    brute.append((x, y))
        assert got == sorted(brute)


def test_budget_error_carries_bound():
    g = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    with pytest.raises(BudgetError) as err:
        list(enumerate_ellipsoid(g, Fraction(10 ** 6), budget=10))
    assert err.value.bound_reached == 10 ** 6


def test_negative_bound_empty():
    g = [[Fraction(1)]]
    assert list(enumerate_ellipsoid(g, Fraction(-1))) == []
