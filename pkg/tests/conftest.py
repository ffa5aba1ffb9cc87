"""Shared fixtures and independent oracles.

The oracles deliberately avoid the code paths they validate: norms are
bounded by sampling exact unit-sphere points, the operator modulus is
recomputed from its defining supremum over sign patterns, and
sup-preservation is re-decided behaviorally on vertex pairs.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from random import Random

import pytest

from dominion import L1Vector, MatrixOperator, MeasureSpace, unit_gap_pair


@pytest.fixture
def gap_pair():
    return unit_gap_pair()


@pytest.fixture
def two_point():
    return MeasureSpace((1, 1))


def exact_unit_sphere_points(space: MeasureSpace, rng: Random, count: int) -> list[L1Vector]:
    """Exact norm-one vectors: signed convex combinations of the unit ball's
    vertices, so every sampled ratio comparison is exact."""
    points = []
    n = space.n
    for _ in range(count):
        raw = [Fraction(rng.randint(0, 12), rng.randint(1, 12)) for _ in range(n)]
        total = sum(raw)
        if total == 0:
            raw[rng.randrange(n)] = Fraction(1)
            total = Fraction(1)
        signs = [rng.choice((1, -1)) for _ in range(n)]
        coords = tuple(
            sign * (lam / total) / weight
            for sign, lam, weight in zip(signs, raw, space.weights)
        )
        points.append(L1Vector(space, coords))
    return points


def modulus_sup_oracle(a: MatrixOperator, x: L1Vector) -> L1Vector:
    """Defining supremum of the modulus: coordinatewise maximum of A y over
    the extreme points y of the order interval [-x, x]."""
    assert x.is_nonnegative()
    best = None
    for signs in itertools.product((1, -1), repeat=a.space.n):
        y = L1Vector(a.space, tuple(s * c for s, c in zip(signs, x.coords)))
        image = a @ y
        best = image if best is None else best.join(image)
    return best


def sup_preserving_on_vertices(z: MatrixOperator) -> bool:
    """Behavioral sup-preservation check over all pairs of signed vertices."""
    space = z.space
    vertices = [
        space.vertex(j, negative)
        for j in range(space.n)
        for negative in (False, True)
    ]
    return all(
        z @ x.join(y) == (z @ x).join(z @ y)
        for x in vertices
        for y in vertices
    )


def random_vector(space: MeasureSpace, rng: Random, bound: int = 2) -> L1Vector:
    coords = tuple(
        Fraction(rng.randint(-bound * 8, bound * 8), rng.randint(1, 8))
        for _ in range(space.n)
    )
    return L1Vector(space, coords)
