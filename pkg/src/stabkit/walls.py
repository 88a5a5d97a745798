"""Numerical wall-and-chamber computation for a fixed class in a
two-parameter slice beta = beta0 + b H, omega = t H of stability parameters.

A potential wall for v is the locus where some class w has Z(w) / Z(v) real.
For the quadratic surface charges this locus, divided by the overall factor
t, is an exact conic A (b^2 + t^2) + B b + D = 0: a semicircle centered on
the b-axis, a vertical line, or nothing. Everything is computed and
classified in exact rational arithmetic; walls are "potential" (charge
alignment only), a superset of the actual walls.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ChargeError, LatticeError
from .gaussian import GaussianRational, as_fraction, gaussian
from .lattice import MukaiVector, NSLattice, mukai_pairing

Poly = Dict[Tuple[int, int], Fraction]  # (deg_b, deg_t) -> coefficient


@dataclass(frozen=True)
class SliceParams:
    """Two-parameter family beta = beta0 + b * direction, omega = t * t_axis.

    The conic classification below needs direction == t_axis (the standard
    slice along the ample class), which is enforced.
    """

    lattice: NSLattice
    beta0: Tuple[Fraction, ...]
    direction: Tuple[int, ...] = ()
    t_axis: Tuple[int, ...] = ()

    def __post_init__(self):
        beta0 = tuple(as_fraction(x) for x in self.beta0)
        if len(beta0) != self.lattice.rank:
            raise LatticeError("beta0 has wrong NS rank")
        direction = tuple(int(x) for x in (self.direction or self.lattice.ample))
        t_axis = tuple(int(x) for x in (self.t_axis or self.lattice.ample))
        if direction != t_axis:
            raise LatticeError("slice needs direction == t_axis for the conic shape")
        if self.lattice.ns_dot(t_axis, t_axis) <= 0:
            raise LatticeError("slice axis must have positive self-intersection")
        object.__setattr__(self, "beta0", beta0)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "t_axis", t_axis)

    def axis_sq(self) -> Fraction:
        return self.lattice.ns_dot(self.t_axis, self.t_axis)


@dataclass(frozen=True)
class Region:
    """Rectangle b in [b_min, b_max], t in [t_min, t_max] with t_min > 0
    (walls accumulate towards t = 0, so the axis is refused)."""

    b_min: Fraction
    b_max: Fraction
    t_min: Fraction
    t_max: Fraction

    def __post_init__(self):
        vals = {k: as_fraction(getattr(self, k)) for k in
                ("b_min", "b_max", "t_min", "t_max")}
        for k, v in vals.items():
            object.__setattr__(self, k, v)
        if self.b_min > self.b_max or self.t_min > self.t_max:
            raise ValueError("empty region")
        if self.t_min <= 0:
            raise ValueError("t_min must be strictly positive")


class WallKind(enum.Enum):
    SEMICIRCLE = "SEMICIRCLE"
    VERTICAL_LINE = "VERTICAL_LINE"
    EMPTY = "EMPTY"
    DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class WallLocus:
    """Conic locus of charge alignment between v and w on the slice."""

    v: MukaiVector
    w: MukaiVector
    conic: Tuple[Fraction, Fraction, Fraction, Fraction]  # A, B, C(=0), D
    kind: WallKind
    center: Optional[Fraction] = None
    radius_sq: Optional[Fraction] = None

    def key(self) -> Tuple[int, int, int, int]:
        """Conic normalized to coprime integers with positive leading entry;
        loci with equal keys are the same wall."""
        a, b, c, d = self.conic
        dens = [x.denominator for x in (a, b, c, d)]
        lcm = 1
        for q in dens:
            lcm = lcm * q // gcd(lcm, q)
        ints = [int(x * lcm) for x in (a, b, c, d)]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        if g:
            ints = [x // g for x in ints]
        lead = next((x for x in ints if x != 0), 0)
        if lead < 0:
            ints = [-x for x in ints]
        return tuple(ints)

    def sort_key(self):
        rank = {WallKind.VERTICAL_LINE: 0, WallKind.SEMICIRCLE: 1,
                WallKind.EMPTY: 2, WallKind.DEGENERATE: 3}[self.kind]
        return (rank, self.center if self.center is not None else Fraction(0),
                self.radius_sq if self.radius_sq is not None else Fraction(0),
                self.key())


# -- exact charge on the slice -------------------------------------------------


def _vector_profile(slice_: SliceParams, vec: MukaiVector):
    """Constants (r, e, m, sigma) of a class on the slice: rank, axis degree,
    beta0 degree and the degree-4 slot (Mukai s on a K3, ch2 otherwise)."""
    lat = slice_.lattice
    if len(vec.c) != lat.rank:
        raise LatticeError("vector has wrong NS rank")
    r = Fraction(vec.r)
    e = lat.ns_dot(slice_.t_axis, vec.c)
    m = lat.ns_dot(slice_.beta0, vec.c)
    sigma = Fraction(vec.s)
    return r, e, m, sigma


def _charge_polys(slice_: SliceParams, vec: MukaiVector) -> Tuple[Poly, Poly]:
    """Real and imaginary parts of Z_{b,t}(vec) as polynomials in (b, t).

    Both charge conventions reduce to

        Re = m + b e - sigma - (r/2) (beta0^2 + 2 b u + b^2 d - t^2 d)
        Im = t (e - r u - r b d)

    with d the axis square and u = beta0 . axis.
    """
    r, e, m, sigma = _vector_profile(slice_, vec)
    lat = slice_.lattice
    d = slice_.axis_sq()
    u = lat.ns_dot(slice_.beta0, slice_.t_axis)
    b0_sq = lat.ns_dot(slice_.beta0, slice_.beta0)
    re: Poly = {
        (0, 0): m - sigma - r * b0_sq / 2,
        (1, 0): e - r * u,
        (2, 0): -r * d / 2,
        (0, 2): r * d / 2,
    }
    im: Poly = {
        (0, 1): e - r * u,
        (1, 1): -r * d,
    }
    return _poly_trim(re), _poly_trim(im)


def _poly_trim(p: Poly) -> Poly:
    return {k: v for k, v in p.items() if v != 0}


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, Fraction(0)) + c1 * c2
    return _poly_trim(out)


def _poly_sub(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, Fraction(0)) - c
    return _poly_trim(out)


def _poly_eval(p: Poly, b: Fraction, t: Fraction) -> Fraction:
    return sum((c * b ** i * t ** j for (i, j), c in p.items()), Fraction(0))


def slice_charge(slice_: SliceParams, vec: MukaiVector, b, t) -> GaussianRational:
    """Exact charge of a class at a rational point (b, t) of the slice."""
    re, im = _charge_polys(slice_, vec)
    b, t = as_fraction(b), as_fraction(t)
    return gaussian(_poly_eval(re, b, t), _poly_eval(im, b, t))


def wall_locus(v: MukaiVector, w: MukaiVector, slice_: SliceParams) -> WallLocus:
    """Expand Im(Z(w) conj(Z(v))) over the slice and classify its zero locus.

    The expansion must come out as t (A (b^2 + t^2) + B b + D); the structure
    (equal b^2/t^2 coefficients, no t-linear term) is asserted on the exact
    polynomial, and the conic is classified within t > 0.
    """
    re_v, im_v = _charge_polys(slice_, v)
    re_w, im_w = _charge_polys(slice_, w)
    f = _poly_sub(_poly_mul(im_w, re_v), _poly_mul(re_w, im_v))
    # F is divisible by t; g = F / t must be A b^2 + A t^2 + B b + D
    g: Poly = {}
    for (i, j), c in f.items():
        if j < 1:
            raise AssertionError("alignment polynomial not divisible by t")
        g[(i, j - 1)] = c
    allowed = {(2, 0), (0, 2), (1, 0), (0, 0)}
    if not set(g) <= allowed:
        raise AssertionError(f"unexpected conic shape: monomials {sorted(g)}")
    a_b = g.get((2, 0), Fraction(0))
    a_t = g.get((0, 2), Fraction(0))
    if a_b != a_t:
        raise AssertionError("b^2 and t^2 coefficients differ; not a circle")
    a = a_b
    b_coef = g.get((1, 0), Fraction(0))
    d_coef = g.get((0, 0), Fraction(0))
    conic = (a, b_coef, Fraction(0), d_coef)
    if a == 0 and b_coef == 0 and d_coef == 0:
        return WallLocus(v, w, conic, WallKind.DEGENERATE)
    if a == 0:
        if b_coef == 0:
            return WallLocus(v, w, conic, WallKind.EMPTY)
        return WallLocus(v, w, conic, WallKind.VERTICAL_LINE,
                         center=-d_coef / b_coef)
    center = -b_coef / (2 * a)
    radius_sq = center * center - d_coef / a
    if radius_sq <= 0:
        return WallLocus(v, w, conic, WallKind.EMPTY)
    return WallLocus(v, w, conic, WallKind.SEMICIRCLE, center=center,
                     radius_sq=radius_sq)


def locus_meets_region(loc: WallLocus, region: Region) -> bool:
    """Exact test whether the locus intersects the closed region (t > 0)."""
    if loc.kind is WallKind.VERTICAL_LINE:
        return region.b_min <= loc.center <= region.b_max
    if loc.kind is WallKind.SEMICIRCLE:
        c, q = loc.center, loc.radius_sq
        # range of rho^2 - (b - c)^2 over [b_min, b_max]
        if region.b_min <= c <= region.b_max:
            g_max = q
        else:
            near = region.b_min if c < region.b_min else region.b_max
            g_max = q - (near - c) ** 2
        far = region.b_min if abs(region.b_min - c) >= abs(region.b_max - c) else region.b_max
        g_min = q - (far - c) ** 2
        return g_max >= region.t_min ** 2 and g_min <= region.t_max ** 2
    return False


# -- candidate enumeration -----------------------------------------------------


def _is_proportional(v: MukaiVector, w: MukaiVector) -> bool:
    cv, cw = v.coords(), w.coords()
    for i in range(len(cv)):
        for j in range(i + 1, len(cv)):
            if cv[i] * cw[j] - cv[j] * cw[i] != 0:
                return False
    return True


def _candidate_filter(v: MukaiVector, w: MukaiVector, lat: NSLattice) -> bool:
    """Numerical constraints a destabilizing class must satisfy: both w and
    v - w are classes of would-be semistable objects (square >= -2) and
    span(v, w) is hyperbolic."""
    if w.is_zero() or _is_proportional(v, w):
        return False
    ww = mukai_pairing(w, w, lat)
    if ww < -2:
        return False
    rest = v - w
    if mukai_pairing(rest, rest, lat) < -2:
        return False
    vw = mukai_pairing(v, w, lat)
    vv = mukai_pairing(v, v, lat)
    return vw * vw > vv * ww


def _enumerate_candidates(v: MukaiVector, slice_: SliceParams,
                          search_bound: int) -> Iterable[MukaiVector]:
    lat = slice_.lattice
    if not lat.k3:
        raise ChargeError("candidate enumeration uses the K3 square bounds; "
                          "flag the lattice k3 or enumerate classes yourself")
    lat.require_even()
    n = lat.mukai_rank
    rng = range(-search_bound, search_bound + 1)
    for coords in itertools.product(rng, repeat=n):
        w = MukaiVector.from_coords(coords)
        if _candidate_filter(v, w, lat):
            yield w


def scan_walls(v: MukaiVector, slice_: SliceParams, region: Region,
               search_bound: int) -> List[WallLocus]:
    """Potential walls for v meeting the region, one representative per
    distinct conic (the wall only depends on the rank-2 span, so w, v - w and
    w + k v all collapse to the same locus). Deterministically sorted."""
    if search_bound <= 0:
        raise ValueError("search_bound must be positive")
    chosen: Dict[Tuple[int, int, int, int], WallLocus] = {}
    for w in _enumerate_candidates(v, slice_, search_bound):
        loc = wall_locus(v, w, slice_)
        if loc.kind in (WallKind.EMPTY, WallKind.DEGENERATE):
            continue
        if not locus_meets_region(loc, region):
            continue
        key = loc.key()
        if key not in chosen or w.coords() < chosen[key].w.coords():
            chosen[key] = loc
    return sorted(chosen.values(), key=WallLocus.sort_key)


def candidate_classes(v: MukaiVector, slice_: SliceParams, region: Region,
                      search_bound: int) -> List[MukaiVector]:
    """Representative destabilizing classes, one per potential wall."""
    return [loc.w for loc in scan_walls(v, slice_, region, search_bound)]


# -- sampling oracle -----------------------------------------------------------


@dataclass(frozen=True)
class OracleWall:
    locus: WallLocus
    detected: bool


def sampling_oracle(v: MukaiVector, slice_: SliceParams, region: Region,
                    grid: int, search_bound: int) -> List[OracleWall]:
    """Independent verification oracle: evaluate the exact sign of
    Im(Z(w) conj(Z(v))) on a (grid+1) x (grid+1) lattice over the region and
    flag each candidate wall whose sign flips between adjacent nodes (or hits
    an exact zero). Used to certify enumeration completeness at grid scale."""
    if grid < 2:
        raise ValueError("grid too coarse")
    cands: Dict[Tuple[int, int, int, int], WallLocus] = {}
    for w in _enumerate_candidates(v, slice_, search_bound):
        loc = wall_locus(v, w, slice_)
        if loc.kind is WallKind.DEGENERATE:
            continue
        key = loc.key()
        if key not in cands or w.coords() < cands[key].w.coords():
            cands[key] = loc
    b_den = grid * region.b_min.denominator * region.b_max.denominator
    t_den = grid * region.t_min.denominator * region.t_max.denominator
    b_nums = [int((region.b_min + Fraction(i, grid) * (region.b_max - region.b_min)) * b_den)
              for i in range(grid + 1)]
    t_nums = [int((region.t_min + Fraction(j, grid) * (region.t_max - region.t_min)) * t_den)
              for j in range(grid + 1)]
    out = []
    for key in sorted(cands):
        loc = cands[key]
        out.append(OracleWall(loc, _signs_flip(loc, b_nums, b_den, t_nums, t_den)))
    return sorted(out, key=lambda ow: ow.locus.sort_key())


def _signs_flip(loc: WallLocus, b_nums: List[int], b_den: int,
                t_nums: List[int], t_den: int) -> bool:
    a, b_coef, _, d_coef = loc.conic
    lcm = 1
    for q in (a.denominator, b_coef.denominator, d_coef.denominator):
        lcm = lcm * q // gcd(lcm, q)
    ai, bi, di = int(a * lcm), int(b_coef * lcm), int(d_coef * lcm)
    td2 = t_den * t_den
    bd2 = b_den * b_den
    cols = [ai * bn * bn * td2 + bi * bn * b_den * td2 + di * bd2 * td2
            for bn in b_nums]
    t_terms = [ai * tn * tn * bd2 for tn in t_nums]
    nb, nt = len(b_nums), len(t_nums)
    signs = [[0] * nt for _ in range(nb)]
    for i in range(nb):
        ci = cols[i]
        row = signs[i]
        for j in range(nt):
            val = ci + t_terms[j]
            if val == 0:
                return True
            row[j] = 1 if val > 0 else -1
    for i in range(nb):
        row = signs[i]
        for j in range(nt - 1):
            if row[j] != row[j + 1]:
                return True
    for j in range(nt):
        for i in range(nb - 1):
            if signs[i][j] != signs[i + 1][j]:
                return True
    return False


# -- chambers along a vertical path --------------------------------------------


@dataclass(frozen=True)
class Crossing:
    t_squared: Fraction  # exact radicand: the crossing is at t = sqrt of this
    wall: WallLocus

    def t_decimal(self, digits: int = 30) -> str:
        return sqrt_decimal(self.t_squared, digits)


@dataclass(frozen=True)
class ChamberPath:
    b_star: Fraction
    t_lo: Fraction
    t_hi: Fraction
    crossings: Tuple[Crossing, ...]
    coincident_walls: Tuple[WallLocus, ...]

    @property
    def chamber_count(self) -> int:
        return len(self.crossings) + 1


def chambers_along_path(v: MukaiVector, slice_: SliceParams, b_star, t_lo, t_hi,
                        walls: Sequence[WallLocus]) -> ChamberPath:
    """Exact crossings of the vertical segment b = b_star, t in [t_lo, t_hi]
    with the given walls, sorted by t (compared via the exact radicands).

    Circles centered on the b-axis can only be tangent to a vertical line at
    t = 0, outside the path; the one degenerate case is a vertical wall
    coinciding with the path, which is reported separately and crossed by
    nothing (an infinitesimal perturbation of b_star removes it)."""
    del v, slice_
    b_star, t_lo, t_hi = as_fraction(b_star), as_fraction(t_lo), as_fraction(t_hi)
    if not 0 < t_lo <= t_hi:
        raise ValueError("need 0 < t_lo <= t_hi")
    crossings = []
    coincident = []
    for wall in walls:
        if wall.kind is WallKind.VERTICAL_LINE:
            if wall.center == b_star:
                coincident.append(wall)
            continue
        if wall.kind is not WallKind.SEMICIRCLE:
            continue
        rad = wall.radius_sq - (b_star - wall.center) ** 2
        if rad <= 0:
            continue
        if t_lo ** 2 <= rad <= t_hi ** 2:
            crossings.append(Crossing(rad, wall))
    crossings.sort(key=lambda c: (c.t_squared, c.wall.sort_key()))
    return ChamberPath(b_star, t_lo, t_hi, tuple(crossings), tuple(coincident))


def sqrt_decimal(q: Fraction, digits: int = 30) -> str:
    """Decimal approximation of sqrt(q) to the given digits (floor-rounded)."""
    q = as_fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    scaled = isqrt(q.numerator * q.denominator * 10 ** (2 * digits)) // q.denominator
    s = str(scaled).rjust(digits + 1, "0")
    return s[:-digits] + "." + s[-digits:]


# -- nesting check --------------------------------------------------------------


@dataclass(frozen=True)
class NestingReport:
    pairs_checked: int
    violations: Tuple[Tuple[WallLocus, WallLocus, str], ...]
    touching: Tuple[Tuple[WallLocus, WallLocus, str], ...]


def nesting_check(v: MukaiVector, slice_: SliceParams,
                  walls: Sequence[WallLocus]) -> NestingReport:
    """Pairwise geometry of the walls of a fixed v on a rank-1 slice: every
    pair of semicircles should be nested or disjoint; anything crossing is a
    finding (reported, not an error), touching pairs are listed separately."""
    del v
    if slice_.lattice.rank != 1:
        raise LatticeError("nesting check is a rank-1 slice statement")
    violations = []
    touching = []
    pairs = 0
    geoms = [wl for wl in walls if wl.kind in (WallKind.SEMICIRCLE,
                                               WallKind.VERTICAL_LINE)]
    for a, b in itertools.combinations(geoms, 2):
        pairs += 1
        rel = _pair_relation(a, b)
        if rel == "crossing":
            violations.append((a, b, rel))
        elif rel.startswith("touching"):
            touching.append((a, b, rel))
    return NestingReport(pairs, tuple(violations), tuple(touching))


def _pair_relation(a: WallLocus, b: WallLocus) -> str:
    if a.kind is WallKind.VERTICAL_LINE and b.kind is WallKind.VERTICAL_LINE:
        return "identical" if a.center == b.center else "disjoint"
    if a.kind is WallKind.VERTICAL_LINE or b.kind is WallKind.VERTICAL_LINE:
        line, circ = (a, b) if a.kind is WallKind.VERTICAL_LINE else (b, a)
        d2 = (line.center - circ.center) ** 2
        if d2 > circ.radius_sq:
            return "disjoint"
        if d2 == circ.radius_sq:
            return "touching at boundary"
        return "crossing"
    d2 = (a.center - b.center) ** 2
    diff = d2 - a.radius_sq - b.radius_sq
    rhs = 4 * a.radius_sq * b.radius_sq
    if diff * diff == rhs:
        if d2 == 0 and a.radius_sq == b.radius_sq:
            return "identical"
        return "touching"
    if diff > 0 and diff * diff > rhs:
        return "disjoint"
    if diff < 0 and diff * diff > rhs:
        return "nested"
    return "crossing"
