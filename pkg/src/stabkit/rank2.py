"""Saturated rank-2 sublattices and binary quadratic form searches.

A wall attaches a rank-2 lattice spanned by the fixed class v and a
destabilizing class w; its saturation, roots (square -2) and isotropic rays
drive the wall classification hints.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

from .errors import DegenerateError, LatticeError
from .lattice import MukaiVector, NSLattice, mukai_pairing
from .linalg import integer_kernel, minors2_gcd, nullspace

Pair = Tuple[int, int]
Gram2 = Tuple[Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True)
class Rank2Lattice:
    """Primitive basis of a saturated rank-2 sublattice with its Gram matrix.

    Use :func:`saturate_rank2` to build one with the invariants guaranteed;
    direct construction trusts the caller (used for raw-form experiments).
    """

    basis: Tuple[MukaiVector, MukaiVector]
    gram2: Gram2

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram2)
        if len(g) != 2 or any(len(r) != 2 for r in g) or g[0][1] != g[1][0]:
            raise LatticeError("gram2 must be a symmetric 2x2 integer matrix")
        object.__setattr__(self, "gram2", g)
        object.__setattr__(self, "basis", tuple(self.basis))

    def det(self) -> int:
        return self.gram2[0][0] * self.gram2[1][1] - self.gram2[0][1] ** 2

    def pairing(self, a: Pair, b: Pair) -> int:
        g = self.gram2
        return (a[0] * (g[0][0] * b[0] + g[0][1] * b[1])
                + a[1] * (g[1][0] * b[0] + g[1][1] * b[1]))

    def square(self, a: Pair) -> int:
        return self.pairing(a, a)

    def to_ambient(self, coords: Pair) -> MukaiVector:
        b1, b2 = self.basis
        return b1.scale(coords[0]) + b2.scale(coords[1])

    def coords_of(self, v: MukaiVector) -> Pair:
        """Integral coordinates of v in the basis; error if v is outside."""
        r1, r2, rv = self.basis[0].coords(), self.basis[1].coords(), v.coords()
        n = len(r1)
        # pick two coordinate positions where the basis matrix is invertible
        for i in range(n):
            for j in range(i + 1, n):
                det = r1[i] * r2[j] - r1[j] * r2[i]
                if det != 0:
                    x = Fraction(rv[i] * r2[j] - rv[j] * r2[i], det)
                    y = Fraction(r1[i] * rv[j] - r1[j] * rv[i], det)
                    if x.denominator != 1 or y.denominator != 1:
                        raise LatticeError(f"{v} is not integral in the rank-2 basis")
                    if self.to_ambient((int(x), int(y))) != v:
                        raise LatticeError(f"{v} does not lie in the rank-2 lattice")
                    return (int(x), int(y))
        raise LatticeError("degenerate rank-2 basis")


def saturate_rank2(v: MukaiVector, w: MukaiVector, lat: NSLattice) -> Rank2Lattice:
    """Saturation of span(v, w) in the extended lattice.

    Basis choice is deterministic: if (v, w) already generate a saturated
    sublattice (gcd of the 2x2 coordinate minors is 1) they are kept in the
    given order; otherwise the canonical Hermite-normal-form basis of the
    saturation is returned.
    """
    rows = [list(v.coords()), list(w.coords())]
    if minors2_gcd(rows[0], rows[1]) == 0:
        raise DegenerateError("v and w are proportional; no rank-2 lattice")
    if minors2_gcd(rows[0], rows[1]) == 1:
        basis = (v, w)
    else:
        ortho = nullspace([[Fraction(x) for x in r] for r in rows])
        bmat = [[int(x) for x in k] for k in ortho]
        sat = integer_kernel(bmat, ncols=len(rows[0]))
        basis = (MukaiVector.from_coords(sat[0]), MukaiVector.from_coords(sat[1]))
    g01 = mukai_pairing(basis[0], basis[1], lat)
    gram2 = ((mukai_pairing(basis[0], basis[0], lat), g01),
             (g01, mukai_pairing(basis[1], basis[1], lat)))
    return Rank2Lattice(basis, gram2)


def is_hyperbolic(h: Rank2Lattice) -> bool:
    """Signature (1,1), i.e. det(gram2) < 0."""
    return h.det() < 0


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _perfect_square(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def roots_of_binary_form(gram2: Sequence[Sequence[int]], v_coords: Pair,
                         pairing_bound: int) -> List[Pair]:
    """All (x, y) with Q(x, y) = -2 and |((x,y), v)| <= pairing_bound.

    Solved exactly: for each admissible pairing value the linear condition cuts
    the conic Q = -2 in at most two integral points. Hyperbolic forms have
    infinitely many roots overall, which is why the bound is mandatory.
    """
    if pairing_bound < 0:
        raise ValueError("pairing_bound must be nonnegative")
    a, b = int(gram2[0][0]), int(gram2[0][1])
    c = int(gram2[1][1])

    def q(x: int, y: int) -> int:
        return a * x * x + 2 * b * x * y + c * y * y

    def bil(p1: Pair, p2: Pair) -> int:
        return (p1[0] * (a * p2[0] + b * p2[1]) + p1[1] * (b * p2[0] + c * p2[1]))

    l1 = a * v_coords[0] + b * v_coords[1]
    l2 = b * v_coords[0] + c * v_coords[1]
    if l1 == 0 and l2 == 0:
        raise DegenerateError(
            "pairing with v vanishes identically; the bound cuts nothing"
        )
    g, u1, u2 = _ext_gcd(l1, l2)
    d = (l2 // g, -(l1 // g))
    kappa2 = q(*d)
    found = set()
    for lam in range(-pairing_bound, pairing_bound + 1):
        if lam % g != 0:
            continue
        m = lam // g
        p0 = (u1 * m, u2 * m)
        kappa1 = 2 * bil(p0, d)
        kappa0 = q(*p0) + 2
        if kappa2 != 0:
            disc = kappa1 * kappa1 - 4 * kappa2 * kappa0
            root = _perfect_square(disc)
            if root is None:
                continue
            for sgn in ((root,) if root == 0 else (root, -root)):
                num = -kappa1 + sgn
                if num % (2 * kappa2) == 0:
                    t = num // (2 * kappa2)
                    found.add((p0[0] + d[0] * t, p0[1] + d[1] * t))
        elif kappa1 != 0:
            if kappa0 % kappa1 == 0:
                t = -kappa0 // kappa1
                found.add((p0[0] + d[0] * t, p0[1] + d[1] * t))
        elif kappa0 == 0:
            raise DegenerateError("degenerate form: a full line of roots")
    return sorted(found)


def isotropic_rays_of_binary_form(gram2: Sequence[Sequence[int]]) -> List[Pair]:
    """Primitive integral isotropic rays of a binary form (at most two).

    A nonzero binary form represents 0 nontrivially over Z iff -det(gram2) is
    a perfect square; that criterion drives the case split.
    """
    a, b = int(gram2[0][0]), int(gram2[0][1])
    c = int(gram2[1][1])
    if a == 0 and b == 0 and c == 0:
        raise DegenerateError("zero form: every ray is isotropic")
    rays = set()
    if a != 0:
        e = _perfect_square(b * b - a * c)
        if e is None:
            return []
        for sgn in ((e,) if e == 0 else (e, -e)):
            rays.add(_primitive_ray((-b + sgn, a)))
    else:
        # Q = y (2 b x + c y)
        rays.add((1, 0))
        if b != 0:
            rays.add(_primitive_ray((-c, 2 * b)))
    return sorted(rays)


def _primitive_ray(p: Pair) -> Pair:
    g = gcd(abs(p[0]), abs(p[1]))
    x, y = p[0] // g, p[1] // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return (x, y)


def rank2_roots(h: Rank2Lattice, v: MukaiVector, pairing_bound: int) -> List[MukaiVector]:
    """Roots delta of h ((delta, delta) = -2) with |(delta, v)| <= pairing_bound."""
    coords = h.coords_of(v)
    pairs = roots_of_binary_form(h.gram2, coords, pairing_bound)
    return [h.to_ambient(p) for p in pairs]


def rank2_isotropic(h: Rank2Lattice) -> List[MukaiVector]:
    """Primitive isotropic rays of h; empty list when the discriminant
    -det(gram2) is not a perfect square (the ``none`` case)."""
    return [h.to_ambient(p) for p in isotropic_rays_of_binary_form(h.gram2)]
