"""Support-property machinery: charge kernels, negative-definiteness
certificates, the exact 2x2 norm form replacing the GL2+ normalization, the
minimal charge norm over roots, and the resulting support form.

The norm normalization carries a positive symmetric 2x2 matrix S with

    (v, v) = Z(v)^T S Z(v) - |||p(v)|||^2,

where p is the pairing-orthogonal projection onto Ker Z and |||.|||^2 is the
norm induced by minus the pairing there; irrational square roots never
appear.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .ellipsoid import enumerate_ellipsoid
from .errors import BudgetError, ChargeError, DegenerateError
from .gaussian import GaussianRational, as_fraction
from .lattice import MukaiVector
from .linalg import (bilinear, frac_rows, identity, inverse, is_negative_definite,
                     is_positive_definite, is_positive_semidefinite, mat_mul,
                     mat_vec, nullspace, rref, transpose)

DEFAULT_BUDGET = 1 << 20
BUDGET_ENV = "BRIDGELAND_BUDGET"


def effective_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return DEFAULT_BUDGET


Vec = Tuple[Fraction, ...]


def _coords(v) -> List[Fraction]:
    if isinstance(v, MukaiVector):
        return [Fraction(x) for x in v.coords()]
    return [as_fraction(x) for x in v]


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric rational Gram matrix with evaluation Q(v) = v^T gram v."""

    gram: Tuple[Vec, ...]

    def __post_init__(self):
        g = tuple(tuple(as_fraction(x) for x in row) for row in self.gram)
        n = len(g)
        if any(len(r) != n for r in g):
            raise ValueError("gram must be square")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram must be symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def evaluate(self, v) -> Fraction:
        c = _coords(v)
        return bilinear(c, self.gram, c)

    def pair(self, u, v) -> Fraction:
        return bilinear(_coords(u), self.gram, _coords(v))

    def restrict(self, basis: Sequence[Sequence]) -> List[List[Fraction]]:
        vecs = [_coords(b) for b in basis]
        return [[bilinear(u, self.gram, w) for w in vecs] for u in vecs]


@dataclass(frozen=True)
class ChargeKernel:
    """Rational kernel of a charge functional with the pairing-orthogonal
    projector onto it."""

    basis: Tuple[Vec, ...]
    projector: Tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def project(self, v) -> List[Fraction]:
        return mat_vec(self.projector, _coords(v))


def charge_rows(z_row: Sequence[GaussianRational]) -> List[List[Fraction]]:
    """The 2 x n real matrix (Re Z; Im Z) of a charge functional."""
    return [[z.re for z in z_row], [z.im for z in z_row]]


def evaluate(z_row: Sequence[GaussianRational], v) -> GaussianRational:
    c = _coords(v)
    re = sum((z.re * x for z, x in zip(z_row, c)), Fraction(0))
    im = sum((z.im * x for z, x in zip(z_row, c)), Fraction(0))
    return GaussianRational(re, im)


def charge_kernel(z_row: Sequence[GaussianRational],
                  ambient_gram: Sequence[Sequence[Fraction]]) -> ChargeKernel:
    """Exact kernel of Z with the pairing-orthogonal projector.

    Fails when the ambient pairing restricted to Ker Z is degenerate (the
    projector is then undefined -- the charge sits outside the good locus).
    """
    n = len(z_row)
    if all(z.is_zero() for z in z_row):
        raise ChargeError("zero charge functional")
    rows = charge_rows(z_row)
    _, pivots = rref(rows)
    if len(pivots) < 2:
        raise DegenerateError(
            "charge has real rank < 2 (parts proportional): the kernel is too "
            "large for the good locus")
    basis = nullspace(rows)
    if not basis:
        proj = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
        return ChargeKernel((), proj)
    k = [[Fraction(x) for x in b] for b in basis]  # r x n, rows are basis
    kt = transpose(k)  # n x r, columns are basis
    m = frac_rows(ambient_gram)
    inner = mat_mul(k, mat_mul(m, kt))  # r x r, restricted pairing
    try:
        inner_inv = inverse(inner)
    except ValueError:
        raise DegenerateError(
            "pairing degenerate on Ker Z: charge lies outside the good locus"
        ) from None
    proj = mat_mul(kt, mat_mul(inner_inv, mat_mul(k, m)))
    kernel = ChargeKernel(tuple(tuple(b) for b in basis),
                          tuple(tuple(row) for row in proj))
    for b in basis:
        if not evaluate(z_row, b).is_zero():
            raise AssertionError("kernel basis vector not annihilated by Z")
    p2 = mat_mul(proj, proj)
    if p2 != [list(row) for row in proj]:
        raise AssertionError("projector is not idempotent")
    return kernel


def is_negative_definite_on(q: QuadraticForm, basis: Sequence[Sequence]) -> bool:
    """Exact Sylvester test of Q restricted to the span of the basis."""
    if not basis:
        return True
    vecs = [_coords(b) for b in basis]
    _, pivots = rref(vecs)
    if len(pivots) != len(vecs):
        raise ValueError("basis vectors are linearly dependent")
    return is_negative_definite(q.restrict(basis))


@dataclass(frozen=True)
class SupportCheckResult:
    kernel_negative_definite: bool
    verdicts: Tuple[Tuple[Vec, Fraction, bool], ...]

    @property
    def all_pass(self) -> bool:
        return self.kernel_negative_definite and all(ok for _, _, ok in self.verdicts)


def support_check(q: QuadraticForm, z_row: Sequence[GaussianRational],
                  classes: Sequence) -> SupportCheckResult:
    """Per-class support verdicts: Q must be negative definite on Ker Z and
    nonnegative on every supplied class (the caller asserts these are classes
    of semistable objects). Failures are data, not errors."""
    basis = nullspace(charge_rows(z_row))
    kernel_ok = is_negative_definite_on(q, basis) if basis else True
    verdicts = []
    for cls in classes:
        val = q.evaluate(cls)
        verdicts.append((tuple(_coords(cls)), val, val >= 0))
    return SupportCheckResult(kernel_ok, tuple(verdicts))


def charge_norm_form(z_row: Sequence[GaussianRational], kernel: ChargeKernel,
                     ambient_gram: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """The unique symmetric S with (v,w) = Z(v)^T S Z(w) - <p v, p w> for all
    v, w, where <.,.> is minus the pairing on Ker Z.

    Solved on a rank-2 complement and re-verified on the full basis; S must
    come out positive definite, otherwise the charge does not span a positive
    2-plane and the construction refuses.
    """
    n = len(z_row)
    m = frac_rows(ambient_gram)
    rows = charge_rows(z_row)
    _, pivots = rref(rows)
    if len(pivots) != 2:
        raise DegenerateError("charge has real rank < 2: no 2x2 norm form")
    i, j = pivots
    basis_c = []
    for idx in (i, j):
        e = [Fraction(0)] * n
        e[idx] = Fraction(1)
        basis_c.append(e)

    def rhs(u, w) -> Fraction:
        pu, pw = kernel.project(u), kernel.project(w)
        return bilinear(u, m, w) - bilinear(pu, m, pw)

    def z2(u) -> Tuple[Fraction, Fraction]:
        zu = evaluate(z_row, u)
        return (zu.re, zu.im)

    eqs = []
    vals = []
    for (u, w) in ((basis_c[0], basis_c[0]), (basis_c[0], basis_c[1]),
                   (basis_c[1], basis_c[1])):
        (x1, y1), (x2, y2) = z2(u), z2(w)
        eqs.append([x1 * x2, x1 * y2 + y1 * x2, y1 * y2])
        vals.append(rhs(u, w))
    from .linalg import solve
    s11, s12, s22 = solve(eqs, vals)
    s = [[s11, s12], [s12, s22]]
    # residual must vanish identically; verify on the full basis
    for a in range(n):
        ea = [Fraction(0)] * n
        ea[a] = Fraction(1)
        for b in range(a, n):
            eb = [Fraction(0)] * n
            eb[b] = Fraction(1)
            (x1, y1), (x2, y2) = z2(ea), z2(eb)
            lhs = s11 * x1 * x2 + s12 * (x1 * y2 + y1 * x2) + s22 * y1 * y2
            if lhs != rhs(ea, eb):
                raise AssertionError("norm-form residual does not vanish on the basis")
    if not is_positive_definite(s):
        raise DegenerateError(
            "no positive definite norm form: charge outside the positive locus")
    return s


def charge_norm_sq(z_row: Sequence[GaussianRational], s: Sequence[Sequence[Fraction]],
                   v) -> Fraction:
    z = evaluate(z_row, v)
    vec = [z.re, z.im]
    return bilinear(vec, s, vec)


def _norm_pullback_gram(z_row, s) -> List[List[Fraction]]:
    """Gram of v -> Z(v)^T S Z(v) on the ambient lattice."""
    p = charge_rows(z_row)  # 2 x n
    return mat_mul(transpose(p), mat_mul(frac_rows(s), p))


def aux_positive_gram(z_row, s, ambient_gram) -> List[List[Fraction]]:
    """Gram of Q_aux(v) = 2 ||Z(v)||_S^2 - (v, v) = ||Z(v)||_S^2 + |||p(v)|||^2,
    positive definite on the whole lattice."""
    zs = _norm_pullback_gram(z_row, s)
    m = frac_rows(ambient_gram)
    return [[2 * zs[i][j] - m[i][j] for j in range(len(m))] for i in range(len(m))]


@dataclass(frozen=True)
class RootNormResult:
    c_squared: Optional[Fraction]
    witness: Optional[MukaiVector]
    bound_reached: Fraction
    points_visited: int

    @property
    def found(self) -> bool:
        return self.c_squared is not None


def min_root_norm(z_row: Sequence[GaussianRational], kernel: ChargeKernel,
                  s: Sequence[Sequence[Fraction]],
                  ambient_gram: Sequence[Sequence[Fraction]],
                  budget: Optional[int] = None,
                  start_bound: Fraction = Fraction(8)) -> RootNormResult:
    """Minimize ||Z(delta)||_S^2 over roots ((delta, delta) = -2).

    Iterative deepening on the bound B: every root with ||Z||^2 <= B satisfies
    Q_aux <= 2B + 2 (from |||p(delta)|||^2 = 2 + ||Z(delta)||^2), so a root
    found with norm <= B is a certified minimum. When the budget runs out
    before any root appears, the result carries c_squared = None with the last
    completed bound ("no roots in the searched region").
    """
    del kernel  # the identity behind Q_aux already absorbs the projector
    budget_n = effective_budget(budget)
    q_aux = aux_positive_gram(z_row, s, ambient_gram)
    m = frac_rows(ambient_gram)
    bound = Fraction(start_bound)
    visited_total = 0
    last_completed = Fraction(0)
    while True:
        best: Optional[Fraction] = None
        best_vec: Optional[Tuple[int, ...]] = None
        count = 0
        remaining = budget_n - visited_total
        try:
            for x in enumerate_ellipsoid(q_aux, 2 * bound + 2,
                                         budget=max(remaining, 0)):
                count += 1
                if all(c == 0 for c in x):
                    continue
                xv = [Fraction(c) for c in x]
                if bilinear(xv, m, xv) != -2:
                    continue
                nz = charge_norm_sq(z_row, s, xv)
                if best is None or nz < best or (nz == best and x < best_vec):
                    best, best_vec = nz, x
        except BudgetError:
            if best is None and last_completed > 0:
                return RootNormResult(None, None, last_completed,
                                      visited_total + count)
            raise BudgetError(
                f"root search budget of {budget_n} points exhausted before "
                f"certification (bound reached {bound})",
                bound_reached=bound) from None
        visited_total += count
        last_completed = bound
        if best is not None:
            if best <= bound:
                return RootNormResult(best, MukaiVector.from_coords(best_vec),
                                      bound, visited_total)
            bound = best
        else:
            bound *= 2


def build_q_z(z_row: Sequence[GaussianRational], s: Sequence[Sequence[Fraction]],
              c_squared: Fraction,
              ambient_gram: Sequence[Sequence[Fraction]]) -> QuadraticForm:
    """Support form Q_Z(v) = (v, v) + (2 / C^2) ||Z(v)||_S^2.

    Negative definite on Ker Z by construction (the charge term vanishes
    there) and nonnegative on every root since ||Z(delta)||^2 >= C^2.
    """
    if c_squared <= 0:
        raise ValueError("need a positive minimal root norm")
    zs = _norm_pullback_gram(z_row, s)
    m = frac_rows(ambient_gram)
    n = len(m)
    f = Fraction(2) / c_squared
    gram = [[m[i][j] + f * zs[i][j] for j in range(n)] for i in range(n)]
    return QuadraticForm(tuple(tuple(row) for row in gram))


@dataclass(frozen=True)
class RoundtripVerdict:
    cls: Vec
    q_value: Fraction
    skipped: bool
    norm_sq: Optional[Fraction]
    z_abs_sq: Optional[Fraction]
    passed: Optional[bool]


@dataclass(frozen=True)
class RoundtripReport:
    k_const: Fraction
    c_squared: Fraction
    verdicts: Tuple[RoundtripVerdict, ...]

    @property
    def all_pass(self) -> bool:
        return all(v.passed for v in self.verdicts if not v.skipped)


def equivalent_support_roundtrip(q: QuadraticForm,
                                 z_row: Sequence[GaussianRational],
                                 test_classes: Sequence) -> RoundtripReport:
    """Mechanize the equivalence of the two support formulations.

    From Q (negative definite on Ker Z) build the norm
    ||a + b||^2 = -Q(a) + |Z(b)|^2 on KerZ (+) its Q-orthogonal complement,
    pick a rational K > 0 with K Q(b) <= |Z(b)|^2 on the complement, and
    verify |Z(v)|^2 >= C^2 ||v||^2 with C^2 = K / (1 + K) for every test
    class with Q(v) >= 0. Exact throughout; a failure indicates a bug, since
    the underlying proof is constructive.
    """
    n = len(z_row)
    kernel_basis = nullspace(charge_rows(z_row))
    if kernel_basis and not is_negative_definite_on(q, kernel_basis):
        raise DegenerateError("Q is not negative definite on Ker Z")
    if kernel_basis:
        k_rows = [[Fraction(x) for x in b] for b in kernel_basis]
        ortho_rows = mat_mul(k_rows, [list(r) for r in q.gram])
        complement = nullspace(ortho_rows)
    else:
        complement = [row[:] for row in identity(n)]
    comp = [[Fraction(x) for x in b] for b in complement]
    z_abs_gram = _norm_pullback_gram(z_row, [[Fraction(1), Fraction(0)],
                                             [Fraction(0), Fraction(1)]])
    n_res = [[bilinear(u, z_abs_gram, w) for w in comp] for u in comp]
    q_res = [[bilinear(u, [list(r) for r in q.gram], w) for w in comp] for u in comp]
    k_const = Fraction(1)
    for _ in range(200):
        trial = [[n_res[i][j] - k_const * q_res[i][j] for j in range(len(comp))]
                 for i in range(len(comp))]
        if is_positive_semidefinite(trial):
            break
        k_const /= 2
    else:
        raise DegenerateError("could not find K with K Q <= |Z|^2 on the complement")
    c2 = k_const / (1 + k_const)
    # Q-orthogonal projection onto the kernel for the norm decomposition
    if kernel_basis:
        kt = transpose(k_rows)
        inner = mat_mul(k_rows, mat_mul([list(r) for r in q.gram], kt))
        proj = mat_mul(kt, mat_mul(inverse(inner), mat_mul(k_rows, [list(r) for r in q.gram])))
    else:
        proj = [[Fraction(0)] * n for _ in range(n)]
    verdicts = []
    for cls in test_classes:
        v = _coords(cls)
        qv = q.evaluate(v)
        if qv < 0:
            verdicts.append(RoundtripVerdict(tuple(v), qv, True, None, None, None))
            continue
        a = mat_vec(proj, v)
        qa = bilinear(a, [list(r) for r in q.gram], a)
        zabs = evaluate(z_row, v).norm2()
        norm_sq = -qa + zabs
        verdicts.append(RoundtripVerdict(tuple(v), qv, False, norm_sq, zabs,
                                         zabs >= c2 * norm_sq))
    return RoundtripReport(k_const, c2, tuple(verdicts))


def discreteness_classes(z_row: Sequence[GaussianRational],
                         s: Sequence[Sequence[Fraction]], c_squared: Fraction,
                         ambient_gram: Sequence[Sequence[Fraction]],
                         radius_sq: Fraction,
                         budget: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Finite list of lattice classes with Q_Z(v) >= 0 and ||Z(v)||_S^2 <=
    radius_sq: the computable shadow of charge-image discreteness."""
    q_z = build_q_z(z_row, s, c_squared, ambient_gram)
    q_aux = aux_positive_gram(z_row, s, ambient_gram)
    cap = 2 * Fraction(radius_sq) + (Fraction(2) / Fraction(c_squared)) * Fraction(radius_sq)
    out = []
    for x in enumerate_ellipsoid(q_aux, cap, budget=effective_budget(budget)):
        if all(c == 0 for c in x):
            continue
        xv = [Fraction(c) for c in x]
        if charge_norm_sq(z_row, s, xv) <= radius_sq and q_z.evaluate(xv) >= 0:
            out.append(x)
    return sorted(out)
