import random
from fractions import Fraction

import pytest

from stabkit import (ChargeParams, QuadraticForm, build_q_z,
                     charge_kernel, charge_norm_form, charge_row,
                     discreteness_classes, equivalent_support_roundtrip,
                     is_negative_definite_on, min_root_norm, support_check)
from stabkit.errors import BudgetError, ChargeError, DegenerateError
from stabkit.gaussian import gaussian
from stabkit.linalg import identity
from stabkit.support import charge_norm_sq


def worked_example(k3d2):
    params = ChargeParams(k3d2, (Fraction(0),), (Fraction(2),))
    return charge_row(params), k3d2.mukai_gram()


def test_charge_kernel_worked_example(k3d2):
    z, gram = worked_example(k3d2)
    assert [str(x) for x in z] == ["4+0i", "0+4i", "-1+0i"]
    k = charge_kernel(z, gram)
    assert k.basis == ((Fraction(1), Fraction(0), Fraction(4)),)
    # restricted pairing value is -8
    b = k.basis[0]
    from stabkit.linalg import bilinear
    assert bilinear(b, gram, b) == -8
    # projector fixes the kernel and is pairing-orthogonal
    assert tuple(k.project(b)) == b
    v = [Fraction(3), Fraction(1), Fraction(0)]
    pv = k.project(v)
    assert bilinear([a - b for a, b in zip(v, pv)], gram, k.basis[0]) == 0


def test_charge_kernel_trivial_for_curve():
    z = [gaussian(-1, 0), gaussian(0, 1)]  # -d + i r, injective
    k = charge_kernel(z, identity(2))
    assert k.basis == ()
    assert all(all(x == 0 for x in row) for row in k.projector)


def test_charge_kernel_degenerate_rejected(k3d2):
    gram = k3d2.mukai_gram()
    # real and imaginary parts proportional: rank-1 charge
    z = [gaussian(1, 2), gaussian(2, 4), gaussian(-1, -2)]
    with pytest.raises(DegenerateError):
        charge_kernel(z, gram)
    # kernel spanned by an isotropic vector: restricted pairing degenerate
    z2 = [gaussian(0, 0), gaussian(0, 1), gaussian(-1, 0)]
    with pytest.raises(DegenerateError):
        charge_kernel(z2, gram)
    with pytest.raises(ChargeError):
        charge_kernel([gaussian(0, 0)], identity(1))


def test_negative_definite_on(k3d2):
    gram = k3d2.mukai_gram()
    q = QuadraticForm(tuple(tuple(row) for row in gram))
    assert is_negative_definite_on(q, [(1, 0, 4)])
    assert not is_negative_definite_on(q, [(1, 0, -1)])
    assert is_negative_definite_on(q, [])
    with pytest.raises(ValueError):
        is_negative_definite_on(q, [(1, 0, 4), (2, 0, 8)])


def test_support_check(k3d2):
    z, gram = worked_example(k3d2)
    q = QuadraticForm(tuple(tuple(row) for row in gram))
    rep = support_check(q, z, [(1, 0, -1), (0, 0, 1), (1, 0, 1)])
    assert rep.kernel_negative_definite
    # (1,0,-1) has square 2, (0,0,1) square 0, (1,0,1) square -2 -> fails
    assert [ok for _, _, ok in rep.verdicts] == [True, True, False]
    assert not rep.all_pass
    # positive definite Q on a curve lattice passes anything
    zc = [gaussian(-1, 0), gaussian(0, 1)]
    qc = QuadraticForm(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))))
    rep2 = support_check(qc, zc, [(3, 4), (-2, 5), (0, 7)])
    assert rep2.all_pass


def test_charge_norm_form_worked_example(k3d2):
    z, gram = worked_example(k3d2)
    k = charge_kernel(z, gram)
    s = charge_norm_form(z, k, gram)
    assert s == [[Fraction(1, 8), Fraction(0)], [Fraction(0), Fraction(1, 8)]]


def test_charge_norm_form_residual_vanishes_randomly(k3d2):
    rng = random.Random(51)
    from stabkit.linalg import bilinear
    for _ in range(20):
        beta = (Fraction(rng.randint(-3, 3), rng.randint(1, 2)),)
        omega = (Fraction(rng.randint(2, 4)),)
        params = ChargeParams(k3d2, beta, omega)
        z = charge_row(params)
        gram = k3d2.mukai_gram()
        k = charge_kernel(z, gram)
        s = charge_norm_form(z, k, gram)
        for _ in range(20):
            v = [Fraction(rng.randint(-6, 6)) for _ in range(3)]
            pv = k.project(v)
            lhs = bilinear(v, gram, v)
            rhs = charge_norm_sq(z, s, v) - (-bilinear(pv, gram, pv))
            assert lhs == rhs


def test_charge_norm_form_scaling(k3d2):
    z, gram = worked_example(k3d2)
    k = charge_kernel(z, gram)
    s = charge_norm_form(z, k, gram)
    z3 = [zi * 3 for zi in z]
    s3 = charge_norm_form(z3, charge_kernel(z3, gram), gram)
    assert s3 == [[x / 9 for x in row] for row in s]


def test_min_root_norm_matches_brute_force(k3d2):
    z, gram = worked_example(k3d2)
    k = charge_kernel(z, gram)
    s = charge_norm_form(z, k, gram)
    res = min_root_norm(z, k, s, gram)
    assert res.found
    # brute force over the coordinate box |r|, |m|, |s| <= 40
    best = None
    for r in range(-40, 41):
        for m in range(-40, 41):
            for sc in range(-40, 41):
                if m * m - r * sc != -1:  # (v, v) = 2m^2 - 2 r s = -2
                    continue
                nz = charge_norm_sq(z, s, (r, m, sc))
                if best is None or nz < best:
                    best = nz
    assert res.c_squared == best == Fraction(9, 8)
    assert res.witness.coords() == (-1, 0, -1)


def test_min_root_norm_monotone_under_deeper_bound(k3d2):
    z, gram = worked_example(k3d2)
    k = charge_kernel(z, gram)
    s = charge_norm_form(z, k, gram)
    r1 = min_root_norm(z, k, s, gram, start_bound=Fraction(8))
    r2 = min_root_norm(z, k, s, gram, start_bound=Fraction(16))
    assert r1.c_squared == r2.c_squared


def test_min_root_norm_budget_error(k3d2):
    z, gram = worked_example(k3d2)
    k = charge_kernel(z, gram)
    s = charge_norm_form(z, k, gram)
    with pytest.raises(BudgetError):
        min_root_norm(z, k, s, gram, budget=3)


def test_build_q_z_properties(k3d2):
    z, gram = worked_example(k3d2)
    k = charge_kernel(z, gram)
    s = charge_norm_form(z, k, gram)
    res = min_root_norm(z, k, s, gram)
    q_z = build_q_z(z, s, res.c_squared, gram)
    assert is_negative_definite_on(q_z, k.basis)
    assert q_z.evaluate(res.witness) == 0  # the witness attains C
    # Q_Z >= Mukai square everywhere (the added term is nonnegative)
    from stabkit.linalg import bilinear
    rng = random.Random(52)
    for _ in range(200):
        v = [Fraction(rng.randint(-9, 9)) for _ in range(3)]
        assert q_z.evaluate(v) >= bilinear(v, gram, v)
    # on the kernel, Q_Z equals the Mukai form
    b = k.basis[0]
    assert q_z.evaluate(b) == bilinear(b, gram, b)


def test_roundtrip_curve_lattice():
    z = [gaussian(-1, 0), gaussian(0, 1)]
    q = QuadraticForm(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))))
    rng = random.Random(53)
    classes = [(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(50)]
    rep = equivalent_support_roundtrip(q, z, classes)
    assert rep.k_const == 1 and rep.c_squared == Fraction(1, 2)
    assert rep.all_pass
    # |Z|^2 = d^2 + r^2 equals the norm here, so the bound is exactly 1/2
    for v in rep.verdicts:
        if not v.skipped:
            assert v.z_abs_sq == v.norm_sq


def test_roundtrip_on_built_support_form(k3d2):
    z, gram = worked_example(k3d2)
    k = charge_kernel(z, gram)
    s = charge_norm_form(z, k, gram)
    res = min_root_norm(z, k, s, gram)
    q_z = build_q_z(z, s, res.c_squared, gram)
    rng = random.Random(54)
    classes = [tuple(rng.randint(-8, 8) for _ in range(3)) for _ in range(200)]
    rep = equivalent_support_roundtrip(q_z, z, classes)
    assert rep.all_pass
    assert any(not v.skipped for v in rep.verdicts)
    assert any(v.skipped for v in rep.verdicts)  # Q_Z < 0 happens too


def test_discreteness_finite_list(k3d2):
    z, gram = worked_example(k3d2)
    k = charge_kernel(z, gram)
    s = charge_norm_form(z, k, gram)
    res = min_root_norm(z, k, s, gram)
    classes = discreteness_classes(z, s, res.c_squared, gram,
                                   radius_sq=Fraction(4))
    assert classes  # some classes exist in the disc
    q_z = build_q_z(z, s, res.c_squared, gram)
    for x in classes:
        assert q_z.evaluate(x) >= 0
        assert charge_norm_sq(z, s, x) <= 4
    # growing the radius never loses classes
    bigger = discreteness_classes(z, s, res.c_squared, gram,
                                  radius_sq=Fraction(8))
    assert set(classes) <= set(bigger)


def test_min_root_norm_second_configuration(k3d2):
    """Brute-force cross-check at a second slice point (beta = H/2)."""
    params = ChargeParams(k3d2, (Fraction(1, 2),), (Fraction(2),))
    z = charge_row(params)
    gram = k3d2.mukai_gram()
    k = charge_kernel(z, gram)
    s = charge_norm_form(z, k, gram)
    res = min_root_norm(z, k, s, gram)
    best = None
    for r in range(-30, 31):
        for m in range(-30, 31):
            if r == 0:
                continue
            num = m * m + 1
            if num % r:
                continue
            sc = num // r
            if abs(sc) > 30:
                continue
            nz = charge_norm_sq(z, s, (r, m, sc))
            if best is None or nz < best:
                best = nz
    assert res.found and res.c_squared == best
