"""Small exact linear algebra layer: Fraction matrices and integer lattices.

Everything here works over Q (fractions.Fraction) or Z (python ints); no
floating point. Matrices are lists of lists, vectors are lists or tuples.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Vec = Sequence[Fraction]
Mat = Sequence[Sequence[Fraction]]


def frac_rows(mat) -> List[List[Fraction]]:
    return [[Fraction(x) for x in row] for row in mat]


def identity(n: int) -> List[List[Fraction]]:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def transpose(mat: Mat) -> List[List[Fraction]]:
    return [list(col) for col in zip(*mat)]


def mat_vec(mat: Mat, v: Vec) -> List[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in mat]


def vec_mat(v: Vec, mat: Mat) -> List[Fraction]:
    return mat_vec(transpose(mat), v)


def mat_mul(a: Mat, b: Mat) -> List[List[Fraction]]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def dot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def bilinear(u: Vec, gram: Mat, v: Vec) -> Fraction:
    return dot(u, mat_vec(gram, v))


def rref(mat: Mat) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = frac_rows(mat)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def solve(mat: Mat, rhs: Vec) -> List[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(mat)
    aug = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    if len(pivots) != n or pivots != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def inverse(mat: Mat) -> List[List[Fraction]]:
    n = len(mat)
    aug = [list(map(Fraction, row)) + identity(n)[i] for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in red]


def determinant(mat: Mat) -> Fraction:
    """Fraction-pivot Gaussian elimination determinant."""
    a = frac_rows(mat)
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def nullspace(mat: Mat) -> List[List[Fraction]]:
    """Canonical rational kernel basis of a matrix (solutions of M x = 0).

    Basis vectors come from the RREF free columns and are rescaled to
    primitive integer vectors with positive leading entry, so the output is
    deterministic.
    """
    rows, pivots = rref(mat)
    ncols = len(mat[0]) if mat else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(primitive_vector(v))
    return basis


def primitive_vector(v: Vec) -> List[Fraction]:
    """Rescale a nonzero rational vector to a primitive integer vector with
    positive first nonzero entry; the zero vector is returned unchanged."""
    denoms = [x.denominator for x in map(Fraction, v)]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(Fraction(x) * lcm) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return [Fraction(0)] * len(ints)
    ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return [Fraction(x) for x in ints]


def signature(gram: Mat) -> Tuple[int, int, int]:
    """Signature (n_plus, n_minus, n_zero) of a symmetric rational matrix,
    by exact congruence diagonalization."""
    a = frac_rows(gram)
    n = len(a)
    pos = neg = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                # diagonal block is zero but a[k][j] != 0: add row/col j into k
                for c in range(n):
                    a[k][c] += a[j][c]
                for r in range(n):
                    a[r][k] += a[r][j]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for c in range(n):
                    a[i][c] -= f * a[k][c]
                for r in range(n):
                    a[r][i] -= f * a[r][k]
    return pos, neg, zero


def leading_principal_minors(gram: Mat) -> List[Fraction]:
    n = len(gram)
    return [determinant([row[: k + 1] for row in list(gram)[: k + 1]]) for k in range(n)]


def is_negative_definite(gram: Mat) -> bool:
    """Sylvester test: (-1)^k * (k-th leading principal minor) > 0 for all k."""
    if not gram:
        return True
    for k, m in enumerate(leading_principal_minors(gram), start=1):
        if (-1) ** k * m <= 0:
            return False
    return True


def is_positive_definite(gram: Mat) -> bool:
    if not gram:
        return True
    return all(m > 0 for m in leading_principal_minors(gram))


def is_positive_semidefinite(gram: Mat) -> bool:
    """Every principal minor (all index subsets, not just leading) must be
    nonnegative; exact, intended for small matrices."""
    from itertools import combinations

    n = len(gram)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            sub = [[gram[i][j] for j in idx] for i in idx]
            if determinant(sub) < 0:
                return False
    return True


# -- integer lattices --------------------------------------------------------


def hnf_rows(mat: Sequence[Sequence[int]]) -> List[List[int]]:
    """Canonical row Hermite normal form of an integer matrix.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    zero rows are dropped. This is the deterministic basis normal form used
    for saturations and kernels.
    """
    h, _ = hnf_rows_transform(mat)
    return h


def hnf_rows_transform(
    mat: Sequence[Sequence[int]],
) -> Tuple[List[List[int]], List[List[int]]]:
    """Row HNF together with a unimodular transform: T @ mat == [H; 0]."""
    rows = [list(map(int, r)) for r in mat]
    m = len(rows)
    t = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    if m == 0:
        return [], []
    n = len(rows[0])
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, m) if rows[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[i0] = rows[i0], rows[r]
            t[r], t[i0] = t[i0], t[r]
            if len(nz) == 1:
                break
            p = rows[r][c]
            for i in range(r + 1, m):
                if rows[i][c] != 0:
                    q = rows[i][c] // p
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    t[i] = [x - q * y for x, y in zip(t[i], t[r])]
        if r < m and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
                t[r] = [-x for x in t[r]]
            p = rows[r][c]
            for i in range(r):
                q = rows[i][c] // p
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    t[i] = [x - q * y for x, y in zip(t[i], t[r])]
            r += 1
            if r == m:
                break
    return rows[:r], t


def integer_kernel(mat: Sequence[Sequence[int]], ncols: int | None = None) -> List[List[int]]:
    """Basis of the integer kernel {x in Z^n : mat @ x = 0}.

    The basis spans the full (saturated) kernel lattice; rows are returned in
    canonical HNF.
    """
    rows = [list(map(int, r)) for r in mat]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return hnf_rows([[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)])
    bt = [list(col) for col in zip(*rows)]  # ncols x m
    h, t = hnf_rows_transform(bt)
    rank = len(h)
    kernel = [t[i] for i in range(rank, ncols)]
    if not kernel:
        return []
    return hnf_rows(kernel)


def gcd_vector(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def minors2_gcd(row1: Sequence[int], row2: Sequence[int]) -> int:
    """gcd of all 2x2 minors of the 2xn matrix [row1; row2]."""
    n = len(row1)
    g = 0
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(g, abs(row1[i] * row2[j] - row1[j] * row2[i]))
    return g
