from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinflat.lifts import (
    ONE,
    ZERO,
    SqrtPiModule,
    SqrtPiScalar,
    basis_vector,
    build_lift,
    check_lm_conditions,
    contains,
    dual_module,
    elementary_divisor_valuations,
    gram_form,
    orthogonal_index_set,
    same_module,
    span_of,
    verify_lift,
)
from spinflat.permissible import class_labels, representative_subset

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def scalars(draw):
    a, b, c = draw(fractions), draw(fractions), draw(fractions)
    return SqrtPiScalar.from_parts(a, b) + SqrtPiScalar(c) * SqrtPiScalar.pi()


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x and x * ONE == x
    assert x - x == ZERO


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars())
def test_reduction_is_homomorphism(x, y):
    assert (x + y).reduce() == x.reduce() + y.reduce()
    assert (x * y).reduce() == x.reduce() * y.reduce()


def test_scalar_basics():
    s = SqrtPiScalar.s()
    assert s * s == SqrtPiScalar.pi()
    assert SqrtPiScalar.from_parts(2, 3).reduce() == 2
    assert s.valuation() == 1 and SqrtPiScalar.pi().valuation() == 2
    assert (ONE / s).valuation() == -1
    assert not (ONE / s).is_integral()
    assert (ONE / (ONE + s)).is_unit()
    assert (ONE / (ONE + s)).reduce() == Fraction(1)
    with pytest.raises(ValueError):
        (ONE / s).reduce()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_gram_form():
    h = gram_form(8)
    assert all(h[i][j] == h[j][i] for i in range(8) for j in range(8))
    assert all(h[i][j] == (1 if j == 7 - i else 0) for i in range(8) for j in range(8))


def test_top_lift_is_first_coordinates():
    for n in (4, 5):
        for i in range(1, n):
            fp, fm = build_lift(i, 1, i, n)
            assert fp.cols == tuple(tuple(basis_vector(k, 2 * n)) for k in range(1, n + 1))
            assert same_module(fp, fm)
            assert check_lm_conditions((fp, fm), i, n).passed


def test_lift_contains_listed_generator():
    n, i, ell = 4, 2, 0
    fp, _ = build_lift(ell, 1, i, n)
    s = SqrtPiScalar.s()
    target = tuple(basis_vector(n + 1, 2 * n)[:-1]) + (-s,)
    assert target in fp.cols
    assert contains(fp, target)


def test_lift_reduction_spans_subset():
    n, i = 5, 3
    for ell in range(1, i):
        fp, fm = build_lift(ell, 1, i, n)
        E = representative_subset(ell, 1, i, n)
        red = fp.reduction()
        support = {r for col in red for r, x in enumerate(col, 1) if x != 0}
        assert support == E


def test_dual_module_examples():
    n = 4
    first = span_of(tuple(basis_vector(k, 2 * n)) for k in range(1, n + 1))
    assert same_module(dual_module(first), first)
    for i in range(1, n):
        for ell, d in class_labels(i, n):
            fp, fm = build_lift(ell, d, i, n)
            assert same_module(dual_module(fp), fm)
            assert same_module(dual_module(dual_module(fp)), fp)


def test_dual_module_rejects_degenerate():
    n = 4
    s = SqrtPiScalar.s()
    cols = [tuple(x * s for x in basis_vector(k, 2 * n)) for k in range(1, n + 1)]
    with pytest.raises(ValueError):
        dual_module(span_of(cols))


def test_elementary_divisors():
    n = 4
    s = SqrtPiScalar.s()
    cols = [tuple(basis_vector(k, 2 * n)) for k in range(1, n)]
    cols.append(tuple(x * s for x in basis_vector(n, 2 * n)))
    assert elementary_divisor_valuations(span_of(cols)) == [0, 0, 0, 1]
    report = check_lm_conditions((span_of(cols), span_of(cols)), 1, n)
    assert not report.passed
    assert "a:summand F_i" in [c.name for c in report.failed()]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_all_lifts_pass(n):
    for i in range(1, n):
        for ell, d in class_labels(i, n):
            report = verify_lift(ell, d, i, n)
            assert report.passed, report.failed()


def test_mutation_is_caught():
    n, i, ell = 4, 2, 0
    fp, fm = build_lift(ell, 1, i, n)
    cols = list(fp.cols)
    idx = next(k for k, c in enumerate(cols) if any(x.valuation() == 1 for x in c))
    cols[idx] = tuple(-x if x.valuation() == 1 else x for x in cols[idx])
    report = check_lm_conditions((span_of(cols), fm), i, n, representative_subset(ell, 1, i, n))
    failed = {c.name for c in report.failed()}
    assert failed & {"b:orthogonal", "c:lambda1", "c:lambda2"}
    assert all(c.witness is not None for c in report.failed())


def test_orthogonal_index_set():
    assert orthogonal_index_set({1, 2, 3, 4}, 4) == {1, 2, 3, 4}
    assert orthogonal_index_set({3, 4, 5, 6}, 4) == {1, 2, 7, 8}
