"""Known fixed-point datasets and random generators.

Smooth projective toric varieties give realizable data: at the fixed point
of a maximal cone the tangent weights are the basis dual to the cone's rays,
and every sign is +1.
"""

from __future__ import annotations

import random
from itertools import combinations

from . import intmat
from .fixedpoint import Dataset, FixedPointDatum


def from_fan(rays, cones) -> Dataset:
    """Fixed-point data of the smooth complete toric variety of a fan.

    ``cones`` lists the maximal cones as tuples of ray indices.
    """
    rays = [tuple(r) for r in rays]
    n = len(rays[0])
    points = []
    for cone in cones:
        cols = intmat.transpose([rays[i] for i in cone])
        dual = intmat.integer_inverse(cols)  # rows are the dual basis
        points.append(FixedPointDatum(tuple(tuple(row) for row in dual), 1))
    return Dataset(n, tuple(points))


def cp(n: int) -> Dataset:
    """Complex projective space CP^n with its standard T^n action."""
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    return from_fan(rays, list(combinations(range(n + 1), n)))


def hirzebruch(a: int) -> Dataset:
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return from_fan(rays, [(0, 1), (1, 2), (2, 3), (3, 0)])


def product(d1: Dataset, d2: Dataset) -> Dataset:
    """Product action of T^(n1+n2): weights are unions, signs multiply."""
    n1, n2 = d1.rank, d2.rank
    points = []
    for p in d1.points:
        for q in d2.points:
            ws = tuple(w + (0,) * n2 for w in p.weights) + tuple((0,) * n1 + w for w in q.weights)
            points.append(FixedPointDatum(ws, p.sign * q.sign))
    return Dataset(n1 + n2, tuple(points))


def cancelled_pair(p: FixedPointDatum) -> Dataset:
    return Dataset(p.rank, (p, p.reversed()))


def random_unimodular(rng: random.Random, n: int, bound: int = 3, steps: int | None = None) -> list:
    """Random matrix in GL(n, Z) built from elementary row operations.

    Row additions/subtractions, negations and swaps are applied to the
    identity; the whole walk is regenerated if an entry leaves [-bound, bound].
    """
    if steps is None:
        steps = rng.randint(0, 3 * n)
    while True:
        m = intmat.identity(n)
        ok = True
        for _ in range(steps):
            op = rng.randrange(3) if n > 1 else 1
            if op == 0:
                i, j = rng.sample(range(n), 2)
                s = rng.choice((1, -1))
                m[i] = [a + s * b for a, b in zip(m[i], m[j])]
                if max(abs(x) for x in m[i]) > bound:
                    ok = False
                    break
            elif op == 1:
                i = rng.randrange(n)
                m[i] = [-a for a in m[i]]
            else:
                i, j = rng.sample(range(n), 2)
                m[i], m[j] = m[j], m[i]
        if ok:
            return m


def random_basis(rng: random.Random, n: int, bound: int = 3) -> tuple:
    return tuple(tuple(row) for row in random_unimodular(rng, n, bound))


def random_dataset(rng: random.Random, n: int, points: int, bound: int = 2) -> Dataset:
    return Dataset(n, tuple(
        FixedPointDatum(random_basis(rng, n, bound), rng.choice((1, -1))) for _ in range(points)
    ))


def _max_entry(d: Dataset) -> int:
    return max(abs(x) for p in d.points for w in p.weights for x in w)


def random_transform(rng: random.Random, d: Dataset, bound: int, tries: int = 20) -> Dataset:
    """Image of ``d`` under a random GL(n, Z) element keeping entries within ``bound``."""
    for _ in range(tries):
        a = random_unimodular(rng, d.rank, bound)
        image = d.transformed(a)
        if _max_entry(image) <= bound:
            return image
    return d


def building_blocks(n: int) -> list:
    """Realizable datasets of rank n with at most 4 fixed points."""
    if n == 1:
        return [cp(1)]
    if n == 2:
        return [cp(2), product(cp(1), cp(1)), hirzebruch(1), hirzebruch(-1)]
    if n == 3:
        return [cp(3)]
    return []


def random_consistent_dataset(rng: random.Random, n: int, max_points: int = 5, bound: int = 2) -> Dataset:
    """A disjoint union of transformed, possibly reversed, realizable pieces.

    Pieces are toric building blocks and cancelled pairs p, -p.
    """
    pieces = []
    budget = max_points
    blocks = [b for b in building_blocks(n) if _max_entry(b) <= bound]
    while budget >= 2:
        choices = [b for b in blocks if len(b) <= budget]
        if choices and rng.random() < 0.6:
            piece = random_transform(rng, rng.choice(choices), bound)
        else:
            piece = cancelled_pair(FixedPointDatum(random_basis(rng, n, bound), 1))
        if rng.random() < 0.5:
            piece = piece.reversed()
        pieces.append(piece)
        budget -= len(piece)
        if pieces and rng.random() < 0.4:
            break
    points = [p for piece in pieces for p in piece.points]
    rng.shuffle(points)
    return Dataset(n, tuple(points))
