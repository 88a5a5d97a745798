import random
from fractions import Fraction

import pytest

from stabkit import CategoryPresentation, Edge, NSLattice
from stabkit.gaussian import GaussianRational
from stabkit.linalg import inverse, mat_mul, transpose


@pytest.fixture
def k3d2():
    """Degree-2 K3 with Picard rank 1: NS = Z H, H^2 = 2."""
    return NSLattice(1, ((2,),), (1,))


def random_even_ns_lattice(rng: random.Random, rank=None) -> NSLattice:
    """Random even lattice of signature (1, rank-1) with an integral ample
    class: conjugate an even diagonal form by a random unimodular matrix."""
    rank = rank or rng.choice([1, 1, 2, 2, 3])
    diag = [2 * rng.randint(1, 4)] + [-2 * rng.randint(1, 4) for _ in range(rank - 1)]
    u = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for _ in range(3 * rank):
        if rank == 1:
            break
        i, j = rng.sample(range(rank), 2)
        k = rng.randint(-2, 2)
        for c in range(rank):
            u[i][c] += k * u[j][c]
    ut = transpose(u)
    d = [[Fraction(diag[i]) if i == j else Fraction(0) for j in range(rank)]
         for i in range(rank)]
    gram = mat_mul(ut, mat_mul(d, u))
    uinv = inverse(u)
    ample = tuple(int(uinv[i][0]) for i in range(rank))
    return NSLattice(rank,
                     tuple(tuple(int(x) for x in row) for row in gram),
                     ample)


def random_valid_charge(rng: random.Random) -> GaussianRational:
    """A random charge value in the upper half-plane union R_{<0}."""
    if rng.random() < 0.15:
        return GaussianRational(Fraction(-rng.randint(1, 8), rng.randint(1, 4)),
                                Fraction(0))
    return GaussianRational(Fraction(rng.randint(-8, 8), rng.randint(1, 4)),
                            Fraction(rng.randint(1, 8), rng.randint(1, 4)))


def random_presentation(rng: random.Random):
    """Random valid presentation (<= 12 objects) plus a matching charge row.

    Two shapes: interval towers (iterated extensions of a flag of simples,
    every subquotient present) and biproduct diamonds. Classes live in Z^k
    with the simples as standard basis vectors, so additivity is automatic
    and the charge row is the list of simple charges.
    """
    if rng.random() < 0.7:
        m = rng.randint(2, 4)
        charge = [random_valid_charge(rng) for _ in range(m)]

        def unit(i):
            return tuple(1 if k == i else 0 for k in range(m))

        def interval(i, j):
            return tuple(1 if i <= k < j else 0 for k in range(m))

        objects = {"0": tuple(0 for _ in range(m))}
        for i in range(m):
            for j in range(i + 1, m + 1):
                objects[f"X{i}{j}"] = interval(i, j)
        edges = []
        for i in range(m):
            for j in range(i + 1, m + 1):
                for k in range(j + 1, m + 1):
                    edges.append(Edge(f"X{i}{j}", f"X{i}{k}", f"X{j}{k}"))
        cat = CategoryPresentation(objects, tuple(edges), "0")
        return cat, charge, f"X0{m}"
    # diamond: S, T, S + T
    charge = [random_valid_charge(rng) for _ in range(2)]
    objects = {"0": (0, 0), "S": (1, 0), "T": (0, 1), "A": (1, 1)}
    edges = (Edge("S", "A", "T"), Edge("T", "A", "S"))
    cat = CategoryPresentation(objects, edges, "0")
    return cat, charge, "A"
