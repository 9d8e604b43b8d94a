"""Shared strategies, the random dataset corpus and independent oracles."""

import random
from functools import lru_cache

import sympy
from hypothesis import strategies as st

from eqchern import samples
from eqchern.fixedpoint import Dataset, FixedPointDatum
from eqchern.polyring import Polynomial

CP1 = samples.cp(1)
CP2 = samples.cp(2)
CANCELLED = Dataset(2, (FixedPointDatum(((1, 0), (0, 1)), 1), FixedPointDatum(((1, 0), (0, 1)), -1)))
CANCELLED_1 = Dataset(1, (FixedPointDatum(((1,),), 1), FixedPointDatum(((1,),), -1)))


def polynomials(rank, max_degree=5, max_terms=6, coeffs=st.integers(-20, 20)):
    mono = st.lists(st.integers(0, max_degree), min_size=rank, max_size=rank).filter(
        lambda m: sum(m) <= max_degree).map(tuple)
    return st.dictionaries(mono, coeffs, max_size=max_terms).map(lambda t: Polynomial(rank, t))


@st.composite
def unimodular(draw, n, bound=3):
    seed = draw(st.integers(0, 2**32 - 1))
    return samples.random_unimodular(random.Random(seed), n, bound)


@st.composite
def bases(draw, n, bound=3):
    return tuple(tuple(r) for r in draw(unimodular(n, bound)))


@st.composite
def datasets(draw, max_rank=3, max_points=5, bound=2):
    n = draw(st.integers(1, max_rank))
    k = draw(st.integers(1, max_points))
    pts = [FixedPointDatum(draw(bases(n, bound)), draw(st.sampled_from((1, -1)))) for _ in range(k)]
    return Dataset(n, tuple(pts))


@st.composite
def consistent_datasets(draw, max_rank=3, max_points=5, bound=2):
    n = draw(st.integers(1, max_rank))
    seed = draw(st.integers(0, 2**32 - 1))
    return samples.random_consistent_dataset(random.Random(seed), n, max_points, bound)


@lru_cache(maxsize=None)
def corpus(size=500, seed=20240601):
    """Seeded valid datasets, n <= 3, <= 5 points, entries within [-2, 2].

    Half are unions of random bases with random signs (almost never
    consistent); half are unions of transformed realizable pieces.
    """
    rng = random.Random(seed)
    out = []
    for i in range(size):
        n = rng.choice((1, 2, 3))
        if i % 2:
            d = samples.random_dataset(rng, n, rng.randint(1, 5), 2)
        else:
            d = samples.random_consistent_dataset(rng, n, 5, 2)
        out.append(d)
    return tuple(out)


# sympy oracle: evaluates the localization sum directly as a rational function

def sympy_vars(n):
    return sympy.symbols(f"x1:{n + 1}")


def sympy_chern(d: Dataset, omega):
    xs = sympy_vars(d.rank)
    total = sympy.Integer(0)
    for p in d.points:
        forms = [sum(c * x for c, x in zip(w, xs)) for w in p.weights]
        t = sympy.symbols("t")
        poly = sympy.expand(sympy.prod([1 + f * t for f in forms]))
        sig = [poly.coeff(t, j) for j in range(1, d.rank + 1)]
        num = sympy.prod([s ** e for s, e in zip(sig, omega)])
        total += num / (p.sign * sig[-1])
    return sympy.cancel(sympy.together(total))


def to_sympy(p: Polynomial):
    xs = sympy_vars(p.rank)
    return sum(c * sympy.prod([x ** e for x, e in zip(xs, m)]) for m, c in p.terms) if p else sympy.Integer(0)
