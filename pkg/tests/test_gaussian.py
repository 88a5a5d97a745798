import random
from fractions import Fraction

import pytest

from stabkit.gaussian import as_fraction, gaussian


def test_basic_arithmetic():
    z = gaussian(1, 2)
    w = gaussian("1/2", "-3")
    assert z + w == gaussian(Fraction(3, 2), -1)
    assert z - w == gaussian(Fraction(1, 2), 5)
    assert z * w == gaussian(Fraction(1, 2) + 6, 1 - 3)
    assert -z == gaussian(-1, -2)


def test_division_exact():
    rng = random.Random(7)
    for _ in range(200):
        z = gaussian(Fraction(rng.randint(-9, 9), rng.randint(1, 7)),
                     Fraction(rng.randint(-9, 9), rng.randint(1, 7)))
        w = gaussian(Fraction(rng.randint(-9, 9), rng.randint(1, 7)),
                     Fraction(rng.randint(-9, 9), rng.randint(1, 7)))
        if w.is_zero():
            continue
        assert (z / w) * w == z


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        gaussian(1, 0) / gaussian(0, 0)


def test_norm_and_conjugate():
    z = gaussian(3, -4)
    assert z.norm2() == 25
    assert z.conjugate() == gaussian(3, 4)
    assert (z * z.conjugate()) == gaussian(25, 0)


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.1)


def test_scalar_coercion():
    assert gaussian(2, 0) * Fraction(1, 2) == gaussian(1, 0)
    assert 2 * gaussian(1, 1) == gaussian(2, 2)
