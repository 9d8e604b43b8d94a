import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from eqchern import samples
from eqchern.errors import IndexRequiresDivision, RankMismatch
from eqchern.localization import (
    chern_number_multiplicity,
    chern_number_rational,
    consistency_suite,
    multi_indices,
    weighted_degree,
)
from eqchern.polyring import Polynomial, parse_poly, substitute_linear

from helpers import CANCELLED, CANCELLED_1, CP1, CP2, consistent_datasets, datasets, sympy_chern, to_sympy, unimodular

x1 = Polynomial.variable(1, 0)


def value(d, omega):
    res = chern_number_rational(d, omega)
    assert res.is_polynomial, res.detail
    return res.value


def test_cp1_examples():
    assert value(CP1, (1,)) == 2
    assert value(CP1, (0,)) == 0
    assert value(CP1, (2,)) == 0
    assert value(CP1, (3,)) == 2 * x1 * x1


def test_cp2_examples():
    # frozen from the sympy oracle below and the classical c1^2 = 9, c2 = 3
    assert value(CP2, (2, 0)) == 9
    assert value(CP2, (0, 1)) == 3


@pytest.mark.parametrize("omega", [(2, 0), (0, 1), (1, 1), (3, 0), (0, 2), (4, 0), (0, 0), (1, 0)])
def test_cp2_against_sympy(omega):
    assert sympy.expand(to_sympy(value(CP2, omega)) - sympy_chern(CP2, omega)) == 0


def test_classical_numbers():
    cp1xcp1 = samples.product(CP1, CP1)
    assert value(cp1xcp1, (2, 0)) == 8 and value(cp1xcp1, (0, 1)) == 4
    cp3 = samples.cp(3)
    # c1^3 = 64, c1 c2 = 24, c3 = 4 for CP^3
    assert value(cp3, (3, 0, 0)) == 64
    assert value(cp3, (1, 1, 0)) == 24
    assert value(cp3, (0, 0, 1)) == 4


def test_single_point_is_not_polynomial():
    d = CP1.__class__(1, CP1.points[:1])
    res = chern_number_rational(d, (0,))
    assert not res.is_polynomial and str(res) == "NONPOLY"
    assert "remainder" in res.detail


def test_multiplicity_examples():
    assert chern_number_multiplicity(CP1, (1,)) == 2
    assert chern_number_multiplicity(CP1, (3,)) == 2 * x1 * x1
    assert chern_number_multiplicity(CANCELLED, (1, 1)).is_zero
    with pytest.raises(IndexRequiresDivision):
        chern_number_multiplicity(CP2, (2, 0))


def test_omega_length_checked():
    with pytest.raises(RankMismatch):
        chern_number_rational(CP2, (1,))


def test_multi_indices():
    got = list(multi_indices(2, 2))
    assert got == [(0, 0), (0, 1), (1, 0), (2, 0)]
    assert all(weighted_degree(w) <= 6 for w in multi_indices(3, 6))
    assert len(list(multi_indices(3, 6))) == 23


def test_consistency_examples():
    rep = consistency_suite(CP1, 3)
    assert rep.ok and len(rep.checks) == 4
    single = CP1.__class__(1, CP1.points[:1])
    rep = consistency_suite(single, 1)
    assert not rep.ok
    assert rep.violations[0].omega == (0,) and "nonpolynomial" in rep.violations[0].failures
    rep = consistency_suite(CANCELLED, 4)
    assert rep.ok and all(c.result.value.is_zero for c in rep.checks)


def test_consistency_report_lines():
    lines = consistency_suite(CP1, 2).lines()
    assert lines == [
        "omega=(0) value=0 checks=pass",
        "omega=(1) value=2 checks=pass",
        "omega=(2) value=0 checks=pass",
    ]
    single = CP1.__class__(1, CP1.points[:1])
    assert consistency_suite(single, 1).lines()[0] == "omega=(0) value=NONPOLY checks=fail:nonpolynomial"


def test_consistency_cap_must_reach_rank():
    with pytest.raises(ValueError):
        consistency_suite(CP2, 1)


def test_realizable_examples_consistent():
    for d in [CP1, CP2, samples.cp(3), samples.product(CP1, CP1), samples.hirzebruch(1),
              samples.hirzebruch(3), samples.product(CP1, CP2), CANCELLED, CANCELLED_1]:
        assert consistency_suite(d).ok, d


# properties

@settings(max_examples=40)
@given(datasets(max_points=4))
def test_rational_route_matches_sympy(d):
    for omega in [(0,) * d.rank, (1,) + (0,) * (d.rank - 1), (0,) * (d.rank - 1) + (2,)]:
        res = chern_number_rational(d, omega)
        expected = sympy_chern(d, omega)
        num, den = sympy.fraction(expected)
        is_poly = not den.free_symbols
        assert res.is_polynomial == is_poly
        if is_poly:
            assert sympy.expand(to_sympy(res.value) - expected) == 0


@given(datasets())
def test_route_agreement(d):
    n = d.rank
    for omega in multi_indices(n, 2 * n):
        if omega[-1] >= 1:
            assert value(d, omega) == chern_number_multiplicity(d, omega)


@given(datasets(max_points=3), datasets(max_points=3))
def test_additivity(d1, d2):
    if d1.rank != d2.rank:
        return
    for omega in multi_indices(d1.rank, d1.rank + 1):
        r1, r2, r12 = (chern_number_rational(d, omega) for d in (d1, d2, d1 + d2))
        if r1.is_polynomial and r2.is_polynomial:
            assert r12.value == r1.value + r2.value


@given(consistent_datasets(), st.data())
def test_gl_equivariance(d, data):
    a = data.draw(unimodular(d.rank, 2))
    image = d.transformed(a)
    for omega in multi_indices(d.rank, 2 * d.rank):
        assert value(image, omega) == substitute_linear(value(d, omega), a)


@given(datasets(), st.data())
def test_gl_preserves_nonpolynomial_status(d, data):
    a = data.draw(unimodular(d.rank, 2))
    image = d.transformed(a)
    for omega in multi_indices(d.rank, d.rank):
        assert chern_number_rational(d, omega).is_polynomial == chern_number_rational(image, omega).is_polynomial


@given(datasets())
def test_orientation_reversal_negates(d):
    rev = d.reversed()
    for omega in multi_indices(d.rank, 2 * d.rank):
        a, b = chern_number_rational(d, omega), chern_number_rational(rev, omega)
        assert a.is_polynomial == b.is_polynomial
        if a.is_polynomial:
            assert b.value == -a.value


@given(consistent_datasets())
def test_degree_n_gives_constants(d):
    for omega in multi_indices(d.rank, 2 * d.rank):
        v = value(d, omega)
        deg = weighted_degree(omega)
        if deg < d.rank:
            assert v.is_zero
        elif not v.is_zero:
            assert v.is_homogeneous() and v.degree == deg - d.rank


@given(datasets(max_points=3))
def test_union_with_reverse_vanishes(d):
    dd = d + d.reversed()
    for omega in multi_indices(d.rank, 2 * d.rank):
        assert value(dd, omega).is_zero


def test_random_consistent_generator_is_consistent():
    rng = random.Random(5)
    for _ in range(60):
        d = samples.random_consistent_dataset(rng, rng.choice((1, 2, 3)), 5, 2)
        assert consistency_suite(d).ok
