"""Central charges for curves and surfaces, exact phase comparison, slopes,
tilted-heart membership and the Gieseker / large-volume comparison.

Charges are Gaussian rationals; phases themselves (transcendental) are never
materialized, only exact order comparisons on rays of the upper half-plane
closed up with the strictly negative reals.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .errors import ChargeError, LatticeError
from .gaussian import GaussianRational, as_fraction, gaussian
from .lattice import ChernCharacter, MukaiVector, NSLattice, twist_chern


class Order(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1

    def reversed(self) -> "Order":
        return Order(-self.value)


INFINITY = "inf"
Slope = Union[Fraction, str]  # a rational or the INFINITY sentinel


@dataclass(frozen=True)
class ChargeParams:
    """Stability parameters (beta, omega) in NS coordinates.

    omega must lie in the positive cone (omega^2 > 0); on a K3 the tilted
    heart construction additionally needs omega^2 > 2, which is reported by
    :meth:`heart_certified` and enforced only where a heart is actually used.
    """

    lattice: NSLattice
    beta: Tuple[Fraction, ...]
    omega: Tuple[Fraction, ...]

    def __post_init__(self):
        beta = tuple(as_fraction(x) for x in self.beta)
        omega = tuple(as_fraction(x) for x in self.omega)
        if len(beta) != self.lattice.rank or len(omega) != self.lattice.rank:
            raise LatticeError("beta/omega have wrong NS rank")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "omega", omega)
        if self.omega_sq() <= 0:
            raise ChargeError("omega must lie in the positive cone (omega^2 > 0)")

    def omega_sq(self) -> Fraction:
        return self.lattice.ns_dot(self.omega, self.omega)

    def heart_certified(self) -> bool:
        """True when the parameters back an actual tilted-heart stability
        condition (always for surfaces, omega^2 > 2 on a K3)."""
        if self.lattice.k3:
            return self.omega_sq() > 2
        return True

    def require_heart(self) -> None:
        if not self.heart_certified():
            raise ChargeError("K3 convention needs omega^2 > 2 for a heart-backed charge")


def curve_charge(degree: int, rank: int) -> GaussianRational:
    """Charge of a class on a curve: -deg + i rank."""
    return gaussian(-degree, rank)


def surface_charge(ch: ChernCharacter, params: ChargeParams) -> GaussianRational:
    """Surface-convention charge

        (rg * omega^2 / 2 - ch2^beta) + i * omega . ch1^beta,

    which equals minus the codimension-2 part of e^(-i omega - beta) ch.
    """
    if params.lattice.k3:
        raise ChargeError("lattice is flagged K3; use k3_charge")
    tw = twist_chern(ch, params.beta, params.lattice)
    re = ch.ch0 * params.omega_sq() / 2 - tw.ch2
    im = params.lattice.ns_dot(params.omega, tw.ch1)
    return gaussian(re, im)


def k3_charge(v: MukaiVector, params: ChargeParams) -> GaussianRational:
    """K3-convention charge: the extended pairing (e^(beta + i omega), v).

    Expanding e^(beta+i omega) = (1, beta+i omega, (beta+i omega)^2 / 2) and
    pairing against v = (r, c, s) gives

        (beta + i omega).c - s - r (beta + i omega)^2 / 2,

    with (beta+i omega)^2 = beta^2 - omega^2 + 2 i beta.omega; this equals the
    codimension-2 integral against ch sqrt(td) with the opposite sign (checked
    term by term in the test suite).
    """
    lat = params.lattice
    if not lat.k3:
        raise ChargeError("lattice is not flagged K3; use surface_charge")
    if len(v.c) != lat.rank:
        raise LatticeError("Mukai vector has wrong NS rank")
    b_c = lat.ns_dot(params.beta, v.c)
    w_c = lat.ns_dot(params.omega, v.c)
    b2 = lat.ns_dot(params.beta, params.beta)
    w2 = params.omega_sq()
    bw = lat.ns_dot(params.beta, params.omega)
    re = b_c - v.s - Fraction(v.r) * (b2 - w2) / 2
    im = w_c - Fraction(v.r) * bw
    return gaussian(re, im)


def charge_row(params: ChargeParams) -> List[GaussianRational]:
    """The charge as a functional on the extended lattice: its values on the
    standard basis (r, c_1..c_rho, s)."""
    lat = params.lattice
    n = lat.mukai_rank
    rows = []
    for i in range(n):
        coords = [0] * n
        coords[i] = 1
        rows.append(k3_charge(MukaiVector.from_coords(coords), params))
    return rows


def evaluate_charge_row(row: Sequence[GaussianRational], coords: Sequence) -> GaussianRational:
    z = gaussian(0)
    for zi, xi in zip(row, coords):
        z = z + zi * as_fraction(xi)
    return z


def phase_valid(z: GaussianRational) -> bool:
    """True iff z lies in the upper half-plane or on the strictly negative
    real axis (the allowed range of a stability function)."""
    return z.im > 0 or (z.im == 0 and z.re < 0)


def phase_compare(z1: GaussianRational, z2: GaussianRational) -> Order:
    """Exact comparison of phases in (0, 1].

    A charge on the negative real axis has phase 1 and beats everything else;
    inside the open upper half-plane the sign of re1*im2 - im1*re2 decides
    (positive means phi(z1) < phi(z2)). EQ holds exactly on common rays.
    """
    for z in (z1, z2):
        if not phase_valid(z):
            raise ChargeError(f"charge {z} outside the allowed half-plane")
    on_axis1 = z1.im == 0
    on_axis2 = z2.im == 0
    if on_axis1 and on_axis2:
        return Order.EQ
    if on_axis1:
        return Order.GT
    if on_axis2:
        return Order.LT
    cross = z1.re * z2.im - z1.im * z2.re
    if cross > 0:
        return Order.LT
    if cross < 0:
        return Order.GT
    return Order.EQ


def phase_max(charges: Sequence[GaussianRational]) -> GaussianRational:
    best = charges[0]
    for z in charges[1:]:
        if phase_compare(z, best) is Order.GT:
            best = z
    return best


def slope(ch: ChernCharacter, params: ChargeParams) -> Slope:
    """Twisted slope mu_{omega,beta} = omega.(ch1 - ch0 beta) / ch0,
    +inf for rank zero."""
    if ch.ch0 < 0:
        raise ChargeError("negative rank is not a sheaf class")
    if ch.ch0 == 0:
        return INFINITY
    lat = params.lattice
    num = lat.ns_dot(params.omega,
                     [c - ch.ch0 * b for c, b in zip(ch.ch1, params.beta)])
    return num / ch.ch0


@dataclass(frozen=True)
class SlopeProfile:
    """Strictly decreasing slope-HN profile mu+ = mu_1 > ... > mu_n = mu- of a
    sheaf class; +inf allowed only in first position."""

    slopes: Tuple[Slope, ...]

    def __post_init__(self):
        sl = tuple(s if s == INFINITY else as_fraction(s) for s in self.slopes)
        if not sl:
            raise ChargeError("empty slope profile")
        for i, s in enumerate(sl):
            if s == INFINITY and i > 0:
                raise ChargeError("+inf only allowed as the leading slope")
        finite = [s for s in sl if s != INFINITY]
        if any(a <= b for a, b in zip(finite, finite[1:])):
            raise ChargeError("slopes must be strictly decreasing")
        object.__setattr__(self, "slopes", sl)

    @property
    def mu_plus(self) -> Slope:
        return self.slopes[0]

    @property
    def mu_minus(self) -> Slope:
        return self.slopes[-1]


class HeartPosition(enum.Enum):
    IN_T = "IN_T"
    IN_F = "IN_F"
    MIXED = "MIXED"


def heart_position(profile: SlopeProfile) -> HeartPosition:
    """Position of a sheaf relative to the slope-zero torsion pair (F, T):
    in T when mu- > 0, in F when mu+ <= 0 (boundary goes to F), mixed else."""
    mu_minus = profile.mu_minus
    if mu_minus == INFINITY or mu_minus > 0:
        return HeartPosition.IN_T
    mu_plus = profile.mu_plus
    if mu_plus != INFINITY and mu_plus <= 0:
        return HeartPosition.IN_F
    return HeartPosition.MIXED


# -- Gieseker comparison and the large-volume charge -------------------------


def monic_normalize(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Monic polynomial proportional to the input (leading coefficient first
    in the returned tuple). Input is constant-term-first, as serialized."""
    cs = [as_fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ChargeError("zero polynomial has no reduced form")
    lead = cs[-1]
    if lead <= 0:
        raise ChargeError("leading coefficient must be positive")
    return tuple(c / lead for c in reversed(cs))


def gieseker_compare(p_a: Sequence[Fraction], p_b: Sequence[Fraction]) -> Order:
    """Eventual comparison of reduced Hilbert polynomials.

    Both inputs are coefficient lists, constant term first, degree <= 3,
    positive leading coefficient. Each is normalized to its monic multiple and
    the monic coefficient tuples are compared lexicographically from the top
    degree down, which is the same as comparing values at all large n.
    """
    na, nb = monic_normalize(p_a), monic_normalize(p_b)
    if len(na) != len(nb):
        # different degrees: the higher-degree polynomial eventually dominates
        return Order.GT if len(na) > len(nb) else Order.LT
    if na > nb:
        return Order.GT
    if na < nb:
        return Order.LT
    return Order.EQ


def hilbert_polynomial(ch: ChernCharacter, params: ChargeParams,
                       todd2: Fraction = Fraction(2)) -> Tuple[Fraction, Fraction, Fraction]:
    """Coefficients (constant first) of P(n) = integral of e^(n omega) ch td.

    td_1 = 0 and td_2 defaults to 2 (the K3 value); other surfaces can pass
    their own degree-4 Todd number.
    """
    lat = params.lattice
    w2 = params.omega_sq()
    c2 = ch.ch0 * w2 / 2
    c1 = lat.ns_dot(params.omega, ch.ch1)
    c0 = ch.ch2 + ch.ch0 * as_fraction(todd2)
    return (c0, c1, c2)


def large_volume_phase(poly: Sequence[Fraction], n: Fraction) -> GaussianRational:
    """-i P(i n) for a quadratic P with positive leading coefficient.

    With P(X) = a (X^2 + b X + c) this is a (b n + i (n^2 - c)): the charge
    whose eventual phase ordering encodes the Gieseker comparison.
    """
    n = as_fraction(n)
    if n <= 0:
        raise ChargeError("n must be positive")
    cs = [as_fraction(c) for c in poly]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) != 3:
        raise ChargeError("large-volume charge needs a genuinely quadratic polynomial")
    c0, c1, c2 = cs
    if c2 <= 0:
        raise ChargeError("leading coefficient must be positive (positive rank)")
    # P(in) = -c2 n^2 + i c1 n + c0; multiply by -i
    return gaussian(c1 * n, c2 * n * n - c0)


def large_volume_threshold(p_a: Sequence[Fraction], p_b: Sequence[Fraction]) -> int:
    """Smallest certified N such that for every n >= N the phase order of the
    charges -i P(in) is constant and determined by the monic coefficients.

    With monic normalizations X^2 + b X + c and X^2 + b' X + c', the phase
    cross product at n is proportional to n ((b - b') n^2 + (b' c - b c')),
    so beyond N = 1 + floor(sqrt(|b'c - bc'| / |b - b'|)) (and beyond the
    zeros n^2 = c, c' of the imaginary parts) the sign is frozen.
    """
    _, b1, c1 = _monic_quadratic(p_a)
    _, b2, c2 = _monic_quadratic(p_b)
    bound = Fraction(1)
    for c in (c1, c2):
        if c > 0:
            bound = max(bound, c)
    if b1 != b2:
        bound = max(bound, abs(b2 * c1 - b1 * c2) / abs(b1 - b2))
    n = 1
    while Fraction(n * n) <= bound:
        n += 1
    return n


def _monic_quadratic(poly: Sequence[Fraction]) -> Tuple[Fraction, Fraction, Fraction]:
    cs = [as_fraction(c) for c in poly]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) != 3 or cs[-1] <= 0:
        raise ChargeError("need a quadratic with positive leading coefficient")
    a = cs[2]
    return (Fraction(1), cs[1] / a, cs[0] / a)
