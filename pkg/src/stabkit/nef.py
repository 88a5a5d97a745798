"""Divisor-class layer for moduli of sheaves: the class Omega attached to a
charge, its Beauville-Bogomolov square, moduli dimensions, per-wall rank-2
reports and Lagrangian-fibration candidates.

Omega is pinned by (Omega, w) = Im(Z(w) / Z(v)) for all w; under the
isometry between v-perp and the Neron-Severi group of the moduli space it is
the numerical avatar of the nef class attached to the stability condition.
Everything is solved exactly over Q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import ChargeError, DegenerateError, LatticeError
from .gaussian import GaussianRational
from .lattice import MukaiVector, NSLattice, mukai_square
from .linalg import bilinear, integer_kernel, mat_vec, minors2_gcd, solve
from .rank2 import (Rank2Lattice, is_hyperbolic, rank2_isotropic, rank2_roots,
                    saturate_rank2)
from .support import evaluate as charge_evaluate
from .walls import SliceParams, WallKind, WallLocus, slice_charge, wall_locus


@dataclass(frozen=True)
class OmegaClass:
    """Rational class with (Omega, w) = Im(Z(w) / Z(v)) for every w; in
    particular (Omega, v) = 0 exactly."""

    coords: Tuple[Fraction, ...]
    v: MukaiVector
    z_row: Tuple[GaussianRational, ...]


def omega_class(v: MukaiVector, z_row: Sequence[GaussianRational],
                lat: NSLattice) -> OmegaClass:
    """Solve the defining linear system of Omega over the standard basis.

    Z(w)/Z(v) is Gaussian rational, so the right-hand sides are exact; the
    pairing matrix must be invertible (it is, for any valid lattice)."""
    m = lat.mukai_gram()
    zv = charge_evaluate(z_row, v)
    if zv.is_zero():
        raise ChargeError("Z(v) = 0: Omega undefined")
    n = lat.mukai_rank
    rhs = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rhs.append((charge_evaluate(z_row, e) / zv).im)
    coords = solve(m, rhs)
    omega = OmegaClass(tuple(coords), v, tuple(z_row))
    # re-verify the postcondition on the full basis
    for i in range(n):
        e = [0] * n
        e[i] = 1
        lhs = bilinear(coords, m, [Fraction(x) for x in e])
        if lhs != rhs[i]:
            raise AssertionError("Omega postcondition failed on a basis vector")
    if bilinear(coords, m, [Fraction(x) for x in v.coords()]) != 0:
        raise AssertionError("(Omega, v) != 0")
    return omega


def bb_square(omega: OmegaClass, lat: NSLattice) -> Fraction:
    """Beauville-Bogomolov square of the induced nef class: the pairing
    square of Omega (the isometry onto NS of the moduli space preserves it)."""
    m = lat.mukai_gram()
    return bilinear(omega.coords, m, omega.coords)


@dataclass(frozen=True)
class ModuliDimension:
    dimension: int
    rigid: bool        # square -2: a point
    isotropic: bool    # square 0: the underlying surface itself


def moduli_dimension(v: MukaiVector, lat: NSLattice) -> ModuliDimension:
    """dim = (v, v) + 2 for primitive v with (v, v) >= -2; empty otherwise."""
    if not v.is_primitive():
        raise LatticeError(f"{v} is not primitive (gcd of coordinates != 1)")
    sq = mukai_square(v, lat)
    if sq < -2:
        raise LatticeError(f"(v, v) = {sq} < -2: empty moduli space")
    return ModuliDimension(sq + 2, rigid=(sq == -2), isotropic=(sq == 0))


# -- decompositions in the rank-2 wall lattice ----------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Multiset of parts a_i in H_W with sum v, each square >= -2, subject to
    v^2 >= 2(m-1) + sum a_i^2; slack is the difference of the two sides."""

    parts: Tuple[Tuple[int, int], ...]
    slack: int

    @property
    def m(self) -> int:
        return len(self.parts)


def decomposition_scan(v_coords: Tuple[int, int], hw: Rank2Lattice,
                       max_m: int, box: int = 10) -> List[Decomposition]:
    """Enumerate part multisets within the coordinate box |x|, |y| <= box.

    The box is a genuine parameter: the three displayed constraints do not
    bound coordinates on their own (isotropic splits b + c with b + c fixed,
    and root pairs delta, -delta, slide off to infinity in a hyperbolic
    plane), so completeness is certified only within the box.
    """
    if max_m < 1:
        raise ValueError("max_m must be at least 1")
    vsq = hw.square(v_coords)
    pool = sorted((x, y)
                  for x in range(-box, box + 1)
                  for y in range(-box, box + 1)
                  if (x, y) != (0, 0) and hw.square((x, y)) >= -2)
    out: List[Decomposition] = []
    n = len(pool)

    def rec(start: int, chosen: List[Tuple[int, int]], sum_xy: Tuple[int, int],
            sum_sq: int):
        m = len(chosen)
        if m >= 1 and sum_xy == v_coords:
            slack = vsq - 2 * (m - 1) - sum_sq
            if slack >= 0:
                out.append(Decomposition(tuple(chosen), slack))
        if m == max_m:
            return
        for idx in range(start, n):
            p = pool[idx]
            nxt = (sum_xy[0] + p[0], sum_xy[1] + p[1])
            after = max_m - m - 1  # parts still addable after p
            gap_x = abs(v_coords[0] - nxt[0])
            gap_y = abs(v_coords[1] - nxt[1])
            if (gap_x, gap_y) != (0, 0) and (gap_x > after * box or gap_y > after * box):
                continue
            rec(idx, chosen + [p], nxt, sum_sq + hw.square(p))

    rec(0, [], (0, 0), 0)
    out.sort(key=lambda d: (d.m, d.parts))
    return out


# -- wall reports ----------------------------------------------------------------


@dataclass(frozen=True)
class WallReport:
    wall: WallLocus
    hw: Rank2Lattice
    v_in_hw: Tuple[int, int]
    roots: Tuple[MukaiVector, ...]
    isotropic: Tuple[MukaiVector, ...]
    decompositions: Tuple[Decomposition, ...]
    has_root: bool
    has_isotropic: bool
    admits_totally_semistable_candidate: bool
    point_residual: Optional[Fraction]  # alignment value at the supplied point


def wall_report(v: MukaiVector, w: MukaiVector, slice_: SliceParams,
                point: Optional[Tuple[Fraction, Fraction]] = None,
                pairing_bound: Optional[int] = None, max_m: int = 3,
                box: int = 10) -> WallReport:
    """Rank-2 analysis of the wall spanned by v and w.

    Hints are advisory flags, never a classification: a totally-semistable
    candidate needs both a nontrivial decomposition (m >= 2) and a root or
    isotropic class in the wall lattice. The optional point is checked
    against the wall equation and its residual reported. v must be primitive
    here (the wall scan itself accepts any v; the divisor-class statements do
    not)."""
    if not v.is_primitive():
        raise LatticeError(
            f"{v} is not primitive; the rank-2 wall analysis assumes a "
            "primitive class (divide out the gcd first)")
    loc = wall_locus(v, w, slice_)
    if loc.kind is WallKind.DEGENERATE:
        raise DegenerateError("degenerate wall: charges proportional on the slice")
    lat = slice_.lattice
    hw = saturate_rank2(v, w, lat)
    if not is_hyperbolic(hw):
        raise DegenerateError(
            f"wall lattice is not hyperbolic (det {hw.det()} >= 0); "
            "a genuine wall cannot produce this")
    vsq = mukai_square(v, lat)
    bound = pairing_bound if pairing_bound is not None else max(vsq, 2)
    roots = tuple(rank2_roots(hw, v, bound))
    isotropic = tuple(rank2_isotropic(hw))
    v_in = hw.coords_of(v)
    decs = tuple(decomposition_scan(v_in, hw, max_m=max_m, box=box))
    has_root = bool(roots)
    has_iso = bool(isotropic)
    nontrivial = any(d.m >= 2 for d in decs)
    residual = None
    if point is not None:
        b, t = point
        zv = slice_charge(slice_, v, b, t)
        zw = slice_charge(slice_, w, b, t)
        residual = zw.im * zv.re - zw.re * zv.im
    return WallReport(
        wall=loc, hw=hw, v_in_hw=v_in, roots=roots, isotropic=isotropic,
        decompositions=decs, has_root=has_root, has_isotropic=has_iso,
        admits_totally_semistable_candidate=nontrivial and (has_root or has_iso),
        point_residual=residual)


# -- Lagrangian fibration candidates ---------------------------------------------


def lagrangian_candidates(v: MukaiVector, lat: NSLattice, bound: int) -> List[MukaiVector]:
    """Primitive isotropic classes in v-perp with ambient coordinates bounded
    by ``bound``; each maps to a square-zero line bundle class on the moduli
    space, the numerical hypothesis of a Lagrangian fibration.

    Rays are deduplicated (one canonical representative with positive leading
    coordinate). For (v, v) = 0 the search runs in v-perp / <v>: v lies in
    the radical of v-perp, so squares descend; candidates are reduced modulo
    v to a canonical representative and must be primitive in the quotient."""
    if not v.is_primitive():
        raise LatticeError(f"{v} is not primitive")
    vsq = mukai_square(v, lat)
    if vsq < 0:
        raise LatticeError("need (v, v) >= 0")
    m = lat.mukai_gram()
    n = lat.mukai_rank
    lform = mat_vec(m, [Fraction(x) for x in v.coords()])
    lint = [int(x) for x in lform]
    perp = integer_kernel([lint], ncols=n)  # HNF basis rows of v-perp
    if vsq == 0:
        return _lagrangian_isotropic_case(v, lat, perp, bound)
    out = []
    seen = set()
    for u in _perp_box(perp, bound):
        mv = MukaiVector.from_coords(u)
        if mv.is_zero() or not mv.is_primitive():
            continue
        if mukai_square(mv, lat) != 0:
            continue
        ray = _canonical_ray(u)
        if ray not in seen:
            seen.add(ray)
            out.append(MukaiVector.from_coords(ray))
    return sorted(out, key=lambda x: x.coords())


def _perp_box(perp_basis: Sequence[Sequence[int]], bound: int):
    """All integer combinations of the HNF basis rows whose ambient
    coordinates stay in the box |x_i| <= bound.

    The basis is in row HNF, so the pivot columns give a triangular system:
    the coefficient of row k is pinned (within an exact interval) by the
    pivot-column coordinate once the earlier coefficients are fixed. This
    makes the enumeration complete for the box.
    """
    rows = [list(r) for r in perp_basis]
    if not rows:
        return
    n = len(rows[0])
    pivots = [next(i for i, x in enumerate(r) if x != 0) for r in rows]

    def rec(k: int, partial: List[int]):
        if k == len(rows):
            if all(abs(x) <= bound for x in partial):
                yield tuple(partial)
            return
        j = pivots[k]
        p = rows[k][j]
        if p <= 0:
            raise AssertionError("HNF pivots are positive")
        # |partial[j] + c * p| <= bound pins c to an exact integer interval
        lo = _ceil_div(-bound - partial[j], p)
        hi = (bound - partial[j]) // p
        for c in range(lo, hi + 1):
            nxt = [a + c * b for a, b in zip(partial, rows[k])]
            yield from rec(k + 1, nxt)

    yield from rec(0, [0] * n)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _canonical_ray(u: Sequence[int]) -> Tuple[int, ...]:
    lead = next((x for x in u if x != 0), 0)
    if lead < 0:
        return tuple(-x for x in u)
    return tuple(u)


def _lagrangian_isotropic_case(v: MukaiVector, lat: NSLattice,
                               perp: Sequence[Sequence[int]], bound: int) -> List[MukaiVector]:
    """(v, v) = 0: classes live in v-perp / <v>. Enumerate representatives in
    the box, reduce modulo v deterministically, keep residues primitive in
    the quotient, and return one canonical ambient representative per ray."""
    vcs = v.coords()
    out = {}
    for u in _perp_box(perp, bound):
        mv = MukaiVector.from_coords(u)
        if mukai_square(mv, lat) != 0:  # square is well defined mod v
            continue
        res = _reduce_mod_v(u, vcs)
        if all(x == 0 for x in res):
            continue
        if minors2_gcd(list(res), list(vcs)) != 1:
            continue  # not primitive in the quotient
        # one representative per quotient ray: reduce both signs, keep the
        # lexicographically smaller residue
        res_neg = _reduce_mod_v([-x for x in u], vcs)
        ray = min(res, res_neg)
        out[ray] = MukaiVector.from_coords(ray)
    return sorted(out.values(), key=lambda x: x.coords())


def _reduce_mod_v(u: Sequence[int], v: Sequence[int]) -> Tuple[int, ...]:
    """Canonical representative of u modulo integer multiples of v: floor-
    reduce the first coordinate where v is nonzero."""
    j = next(i for i, x in enumerate(v) if x != 0)
    k = u[j] // v[j]
    return tuple(a - k * b for a, b in zip(u, v))
