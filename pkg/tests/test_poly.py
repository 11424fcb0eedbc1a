# -*- coding: utf-8 -*-
"""多项式运算与实根机制"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poly import (
    NoSignChange,
    NumericalBreakdown,
    Polynomial,
    add,
    isolate_roots,
    mul,
    real_roots,
    refine_root,
    scale,
    square_free,
    sturm_sequence,
    sub,
)

st_unit = st.integers(-1000, 1000).map(lambda k: k / 1000.0)
st_coeffs = st.lists(st_unit.map(lambda v: 10.0 * v), min_size=1, max_size=30)
st_point = st.integers(-1500, 1500).map(lambda k: k / 1000.0)


def _term_sum(coeffs, x):
    return sum(c * x ** k for k, c in enumerate(coeffs))


def _bound(coeffs, x):
    return sum(abs(c) * abs(x) ** k for k, c in enumerate(coeffs))


@settings(max_examples=100, deadline=None)
@given(a=st_coeffs, b=st_coeffs, x=st_point)
def test_arithmetic_matches_pointwise(a, b, x):
    p, q = Polynomial(a), Polynomial(b)
    ba, bb = _bound(a, x) + 1e-300, _bound(b, x) + 1e-300
    assert abs((p + q)(x) - (p(x) + q(x))) <= 1e-10 * (ba + bb)
    assert abs((p - q)(x) - (p(x) - q(x))) <= 1e-10 * (ba + bb)
    assert abs((p * q)(x) - p(x) * q(x)) <= 1e-9 * ba * bb


@settings(max_examples=100, deadline=None)
@given(a=st_coeffs, x=st_point)
def test_horner_matches_term_sum(a, x):
    expected = _term_sum(a, x)
    bound = _bound(a, x)
    assert abs(Polynomial(a)(x) - expected) <= 1e-10 * max(bound, 1e-300)


@settings(max_examples=50, deadline=None)
@given(a=st.lists(st_unit, min_size=40, max_size=81),
       b=st.lists(st_unit, min_size=40, max_size=81),
       c=st.lists(st_unit, min_size=40, max_size=81))
def test_multiplication_is_associative_and_commutative(a, b, c):
    p, q, r = Polynomial(a), Polynomial(b), Polynomial(c)
    assert (p * q).allclose(q * p, rtol=1e-12)
    assert ((p * q) * r).allclose(p * (q * r), rtol=1e-12)


def test_degree_and_trim():
    assert Polynomial([1.0, 2.0, 0.0, 0.0]).degree() == 1
    assert Polynomial([1.0, 2.0, 0.0, 0.0]).nominal_degree == 3
    assert Polynomial([1.0, 1e-13]).degree() == 0
    assert Polynomial.zero().degree() == -1
    assert Polynomial([]).is_zero()


def test_multiplication_keeps_nominal_length():
    p = Polynomial([1.0, 1.0, 0.0])
    assert (p * p).nominal_degree == 4
    assert (p * p).degree() == 2


def test_derivative_and_roots():
    p = Polynomial.from_roots([1.0, 2.0, 3.0])
    assert p.degree() == 3
    assert p.derivative() == Polynomial([11.0, -12.0, 3.0])
    assert Polynomial.constant(5.0).derivative().is_zero()


def test_divmod():
    p = Polynomial.from_roots([1.0, -2.0, 0.5])
    q, r = p.divmod(Polynomial.from_roots([1.0]))
    assert q.allclose(Polynomial.from_roots([-2.0, 0.5]), rtol=1e-12)
    assert r.max_abs < 1e-12
    with pytest.raises(ZeroDivisionError):
        p.divmod(Polynomial.zero())


def test_substitute_scale():
    p = Polynomial([1.0, 2.0, 3.0])
    assert p.substitute_scale(2.0)(0.5) == pytest.approx(p(1.0))


def test_refine_sqrt_two():
    root = refine_root(Polynomial([-2.0, 0.0, 1.0]), (1.0, 2.0))
    assert root == pytest.approx(math.sqrt(2.0), abs=1e-10)


def test_refine_without_sign_change():
    with pytest.raises(NoSignChange):
        refine_root(Polynomial([1.0, 0.0, 1.0]), (0.0, 1.0))


def test_sturm_count():
    p = Polynomial.from_roots([-0.5, 0.2, 0.7])
    seq = sturm_sequence(p)
    assert seq.count(-1.0, 1.0) == 3
    assert seq.count(0.0, 1.0) == 2
    assert seq.count(0.8, 2.0) == 0


def test_sturm_rejects_repeated_roots_and_zero():
    with pytest.raises(NumericalBreakdown):
        sturm_sequence(Polynomial.from_roots([1.0, 1.0]))
    with pytest.raises(ValueError):
        sturm_sequence(Polynomial.zero())


def test_square_free_removes_multiplicity():
    p = Polynomial.from_roots([1.0, 1.0, -2.0])
    sf = square_free(p)
    assert sf.degree() == 2
    assert sf(1.0) == pytest.approx(0.0, abs=1e-10)
    assert sf(-2.0) == pytest.approx(0.0, abs=1e-10)
    with pytest.raises(ValueError):
        square_free(Polynomial.zero())


def test_real_roots_of_repeated_root_polynomial():
    p = Polynomial.from_roots([0.3, 0.3, -0.4])
    values = real_roots(p, -1.0, 1.0).values()
    np.testing.assert_allclose(values, [-0.4, 0.3], atol=1e-8)


def test_no_real_roots():
    assert len(real_roots(Polynomial([1.0, 0.0, 1.0]), -5.0, 5.0)) == 0


def test_isolate_rejects_bad_interval():
    with pytest.raises(ValueError):
        isolate_roots(Polynomial([-1.0, 1.0]), 1.0, 1.0)


@settings(max_examples=150, deadline=None)
@given(
    ticks=st.lists(st.integers(-20, 20), min_size=1, max_size=8, unique=True),
    quadratics=st.lists(st.integers(1, 4), max_size=2, unique=True),
    outside=st.lists(st.floats(2.5, 4.0), max_size=1),
)
def test_planted_roots_are_recovered(ticks, quadratics, outside):
    planted = sorted(t / 10.0 for t in ticks)
    p = Polynomial.from_roots(planted + outside)
    for q in quadratics:
        p = p * Polynomial([q / 2.0, 0.0, 1.0])

    seq = sturm_sequence(square_free(p))
    assert seq.count(-2.1, 2.1) == len(planted)

    found = real_roots(p, -2.1, 2.1)
    assert len(found) == len(planted)
    np.testing.assert_allclose(found.values(), planted, atol=1e-8)


def test_root_on_bisection_midpoint_is_not_duplicated():
    p = Polynomial.from_roots([-1.0, 0.0, 1.0])
    isolated = isolate_roots(p, -2.0, 2.0)
    assert len(isolated) == 3
    for iv, root in zip(isolated, (-1.0, 0.0, 1.0)):
        assert iv.lo < root <= iv.hi
    np.testing.assert_allclose(real_roots(p, -2.0, 2.0).values(), [-1.0, 0.0, 1.0], atol=1e-10)

    found = real_roots(Polynomial.from_roots([0.0, 0.1]), -2.1, 2.1).values()
    np.testing.assert_allclose(found, [0.0, 0.1], atol=1e-10)


def test_refine_excludes_left_endpoint():
    p = Polynomial.from_roots([-1.0, 0.0, 1.0])
    assert refine_root(p, (-1.0, 0.5)) == pytest.approx(0.0, abs=1e-12)
    assert refine_root(p, (0.0, 1.5)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(NoSignChange):
        refine_root(p, (1.0, 1.5))


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(
    ticks=st.lists(st.integers(-10, 10), min_size=1, max_size=8, unique=True),
    half=st.integers(0, 36),
)
def test_planted_roots_up_to_degree_80(ticks, half):
    planted = sorted(t / 10.0 for t in ticks)
    # x^(2m) + 1.3^(2m) 在实轴上恒正
    envelope = np.zeros(2 * half + 1)
    envelope[0], envelope[-1] = 1.3 ** (2 * half), 1.0
    p = Polynomial.from_roots(planted) * Polynomial(envelope)
    assert p.degree() == len(planted) + 2 * half

    seq = sturm_sequence(square_free(p))
    assert seq.count(-1.1, 1.1) == len(planted)

    found = real_roots(p, -1.1, 1.1)
    assert len(found) == len(planted)
    np.testing.assert_allclose(found.values(), planted, atol=1e-8)


def test_function_forms_accept_scalars():
    p = Polynomial([1.0, 2.0])
    assert add(p, 1.0) == Polynomial([2.0, 2.0])
    assert sub(p, p).is_zero()
    assert mul(p, 2.0) == scale(p, 2.0)
    assert mul(p, p).eval(1.5) == pytest.approx(16.0)
