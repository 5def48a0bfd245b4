from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from lensstruct import lclass, tables
from lensstruct.lclass import CohClass, SplittingData

import oracles


def test_series_matches_sympy():
    ours = lclass.l_genus_series(8).coefficients
    ref = oracles.tanh_series(8)
    assert [sp.Rational(c.numerator, c.denominator) for c in ours] == ref
    assert ours[:3] == (Fraction(1), Fraction(1, 3), Fraction(-1, 45))


def test_series_validation():
    with pytest.raises(ValueError):
        lclass.l_genus_series(0)
    s = lclass.l_genus_series(3)
    with pytest.raises(IndexError):
        s[3]


def test_gamma_examples():
    assert lclass.gamma(2, 1) == 1
    assert lclass.gamma(4, 1) == Fraction(5, 3)
    assert lclass.gamma(4, 2) == 1
    with pytest.raises(ValueError):
        lclass.gamma(3, 2)


@pytest.mark.parametrize("j", range(0, 9))
def test_gamma_against_sympy(j):
    x = sp.Symbol("x")
    ser = sp.series((x / sp.tanh(x)) ** (j + 1), x, 0, j + 2).removeO()
    for w in range(j // 2 + 1):
        c = lclass.gamma(j, w)
        assert sp.Rational(c.numerator, c.denominator) == ser.coeff(x, 2 * w)


def test_gamma_normalization():
    assert all(lclass.gamma(j, 0) == 1 for j in range(21))
    # signature of CP^2w
    assert all(lclass.gamma(2 * w, w) == 1 for w in range(9))


def splitting(d, k):
    idx = list(tables.index_I4S(d, k))
    return st.lists(st.integers(-50, 50), min_size=len(idx), max_size=len(idx)).map(
        lambda v: SplittingData(d, k, dict(zip(idx, v)))
    )


dk = st.tuples(st.integers(2, 8), st.integers(1, 4))


@settings(max_examples=60, deadline=None)
@given(dk.flatmap(lambda p: st.tuples(st.just(p), splitting(*p), splitting(*p), st.integers(-7, 7))))
def test_solve_beta_linear(args):
    (d, k), s, t, c = args
    bs, bt = lclass.solve_beta(d, k, s), lclass.solve_beta(d, k, t)
    assert lclass.solve_beta(d, k, s + t) == bs + bt
    assert lclass.solve_beta(d, k, s.scaled(c)) == bs.scaled(c)
    assert all(bs[(u, 0)] == 0 for u in range(d))
    # alpha is affine: alpha(s) - alpha(0) is linear
    a0 = lclass.compute_alpha(d, k, lclass.solve_beta(d, k, SplittingData.zero(d, k)))
    a = lambda x: lclass.compute_alpha(d, k, lclass.solve_beta(d, k, x)) - a0  # noqa: E731
    assert a(s + t) == a(s) + a(t)


@settings(max_examples=60, deadline=None)
@given(dk.flatmap(lambda p: st.tuples(st.just(p), splitting(*p))))
def test_parity_vanishing_and_roundtrip(args):
    (d, k), s = args
    beta = lclass.solve_beta(d, k, s)
    alpha = lclass.compute_alpha(d, k, beta)
    for c in (beta, alpha):
        assert all((u + k * v) % 2 == 0 for (u, v) in c.coeffs)
    assert lclass.roundtrip_splitting(d, k, s) == s


@pytest.mark.parametrize("d", range(2, 9))
@pytest.mark.parametrize("k", range(1, 5))
def test_roundtrip_unit_vectors(d, k):
    idx = list(tables.index_I4S(d, k))
    for i in idx:
        s = SplittingData(d, k, {j: int(j == i) for j in idx})
        assert lclass.roundtrip_splitting(d, k, s) == s
    assert lclass.roundtrip_splitting(d, k, SplittingData.zero(d, k)) == SplittingData.zero(d, k)


def test_lowest_unit_vector_beta():
    # lowest equation reads 8 s = beta_(u0, 1)
    d, k = 5, 2
    lo = tables.index_I4S(d, k)[0]
    s = SplittingData(d, k, {i: int(i == lo) for i in tables.index_I4S(d, k)})
    beta = lclass.solve_beta(d, k, s)
    assert beta[(2 * lo - k, 1)] == 8


def test_alpha_identity_normal_map():
    d, k = 3, 1
    alpha = lclass.compute_alpha(d, k, lclass.solve_beta(d, k, SplittingData.zero(d, k)))
    assert alpha[(0, 0)] == 1
    assert alpha[(2, 0)] == lclass.gamma(2, 1) == 1
    assert all(alpha[(u, 1)] == 0 for u in range(d))
    for d in range(2, 8):
        a = lclass.compute_alpha(d, 2, lclass.solve_beta(d, 2, SplittingData.zero(d, 2)))
        assert a == lclass.l_class_cp(d, 2)


def test_cohclass_validation():
    with pytest.raises(ValueError):
        CohClass(3, 1, {(1, 0): 1})
    with pytest.raises(ValueError):
        CohClass(3, 1, {(3, 0): 1})
    with pytest.raises(ValueError):
        SplittingData(4, 2, {1: 0})
