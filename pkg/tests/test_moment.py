#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
矩布局、Hankel/局部化矩阵与等式消元测试
"""

from fractions import Fraction

import numpy as np
import pytest

from src.freealg import NcPolynomial, matrix_product
from src.moment import (
    EqualityConstraint,
    build_layout,
    build_localizing,
    equality_rows,
    hankel_from_functional,
    moment_template,
    solve_equalities,
)
from src.nc_types import DegreeOverflowError, InconsistentFunctionalError, NotSymmetricError, RelaxationMode
from src.poly_text import parse_polynomial


def _random_pair(rng, size=3):
    a = rng.standard_normal((size, size))
    b = rng.standard_normal((size, size))
    return [a + a.T, b + b.T]


def test_layout_identifications():
    eig = build_layout(2, 2, RelaxationMode.EIGENVALUE)
    tr = build_layout(2, 2, RelaxationMode.TRACE)
    assert eig.class_id((1, 2, 2)) == eig.class_id((2, 2, 1))
    assert eig.class_id((1, 2, 2)) != eig.class_id((2, 1, 2))
    assert tr.class_id((1, 2, 2)) == tr.class_id((2, 1, 2)) == tr.class_id((2, 2, 1))
    assert eig.class_id(()) == tr.class_id(()) == 0
    assert tr.num_classes < eig.num_classes
    with pytest.raises(DegreeOverflowError):
        eig.class_id((1,) * 5)


def test_layout_partitions_all_words():
    layout = build_layout(2, 2)
    members = [w for cls in layout.classes for w in cls]
    assert len(members) == len(set(members)) == sum(2 ** k for k in range(5))


@pytest.mark.parametrize("mode", [RelaxationMode.EIGENVALUE, RelaxationMode.TRACE])
def test_hankel_of_matrix_functional_is_psd(mode):
    rng = np.random.default_rng(11)
    mats = _random_pair(rng)
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    layout = build_layout(2, 2, mode)

    def functional(word):
        value = matrix_product(word, mats)
        if mode == RelaxationMode.TRACE:
            return float(np.trace(value)) / 3
        return float(v @ value @ v)

    M = hankel_from_functional(functional, layout)
    assert M.shape == (7, 7)
    assert np.allclose(M, M.T)
    assert np.linalg.eigvalsh(M)[0] >= -1e-9


def test_hankel_rejects_inconsistent_functional():
    layout = build_layout(2, 1)
    with pytest.raises(InconsistentFunctionalError):
        hankel_from_functional({(): 1.0, (1, 2): 1.0, (2, 1): 0.0}, layout)


def test_localizing_matrix_at_point_evaluation():
    a = 0.5
    layout = build_layout(1, 2)
    g = parse_polynomial("1-x1^2", 1)
    template = build_localizing(layout, g)
    assert template.size == 2
    y = [a ** len(cls[0]) for cls in layout.classes]
    M = template.instantiate(y)
    expected = (1 - a * a) * np.array([[1.0, a], [a, a * a]])
    assert np.allclose(M, expected)


def test_localizing_template_is_exact_on_fractions():
    layout = build_layout(1, 1)
    template = moment_template(layout)
    y = [Fraction(1), Fraction(1, 3), Fraction(1, 7)]
    M = template.instantiate(y)
    assert M[0, 1] == Fraction(1, 3)
    assert M[1, 1] == Fraction(1, 7)


def test_operator_matches_instantiate():
    layout = build_layout(2, 2, RelaxationMode.TRACE)
    g = parse_polynomial("2-x^2-y^2", 2)
    template = build_localizing(layout, g)
    y = np.random.default_rng(1).standard_normal(layout.num_classes)
    size = template.size
    assert np.allclose((template.operator() @ y).reshape(size, size), template.instantiate(list(y)))


def test_localizing_rejects_bad_constraints():
    layout = build_layout(2, 1)
    with pytest.raises(NotSymmetricError):
        build_localizing(layout, parse_polynomial("x*y", 2))
    with pytest.raises(DegreeOverflowError):
        build_localizing(layout, parse_polynomial("1-x^4", 2))


def test_equality_rows_deduplicate():
    layout = build_layout(1, 2)
    h = parse_polynomial("x1^2-1", 1)
    rows = equality_rows(layout, h)
    assert len(rows) == 3
    assert {0: Fraction(-1), 2: Fraction(1)} in rows
    assert EqualityConstraint(h=h).compile(layout) == rows
    assert equality_rows(layout, NcPolynomial.zero(1)) == []


def test_solve_equalities_back_substitutes():
    rows = [({2: Fraction(1), 0: Fraction(-1)}, Fraction(0)), ({0: Fraction(1)}, Fraction(1))]
    affine = solve_equalities(rows, 3)
    assert affine.consistent
    assert affine.y0 == [Fraction(1), Fraction(0), Fraction(1)]
    assert affine.free == [1]
    assert affine.rank == 2
    assert np.allclose(affine.N.toarray(), [[0.0], [1.0], [0.0]])


def test_solve_equalities_detects_contradiction():
    rows = [({0: Fraction(1)}, Fraction(1)), ({0: Fraction(2)}, Fraction(3))]
    assert not solve_equalities(rows, 1).consistent


def test_commutator_rows_identify_words():
    layout = build_layout(2, 1)
    x = NcPolynomial.variable(1, 2)
    y = NcPolynomial.variable(2, 2)
    rows = equality_rows(layout, x * y - y * x)
    # 特征值模式下 xy 与 yx 已同类，交换子在 d=1 时不产生约束
    assert rows == []


def test_dual_value_independent_of_gram_choice(sohs_poly):
    rng = np.random.default_rng(8)
    mats = _random_pair(rng)
    layout = build_layout(2, 2, RelaxationMode.TRACE)
    M = hankel_from_functional(lambda w: float(np.trace(matrix_product(w, mats))) / 3, layout)
    q1 = np.array([1, 1, 0, 0, 0, 0, 1], dtype=float)
    q2 = np.array([0, 0, 0, 0, 1, 0, 0], dtype=float)
    G1 = np.outer(q1, q1) + np.outer(q2, q2)
    # x·x 与 1·x² 给出同一个词，质量可以在两处之间移动
    G2 = G1.copy()
    G2[1, 1] += 1.0
    G2[0, 3] -= 0.5
    G2[3, 0] -= 0.5
    assert np.sum(M * G1) == pytest.approx(np.sum(M * G2), rel=1e-12)
    value = sum(float(c) * np.trace(matrix_product(w, mats)) / 3 for w, c in sohs_poly.items())
    assert np.sum(M * G1) == pytest.approx(value, rel=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [0, 1, 2])
def test_trace_mode_never_has_more_classes(n, d):
    eig = build_layout(n, d, RelaxationMode.EIGENVALUE)
    tr = build_layout(n, d, RelaxationMode.TRACE)
    assert tr.num_classes <= eig.num_classes
    # 特征值模式同类的词在迹模式下仍同类
    for cls in eig.classes:
        assert len({tr.class_id(w) for w in cls}) == 1
