#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Gram 系统、证书提取与 SOHS 判定测试
"""

from fractions import Fraction

import numpy as np
import pytest

from src.freealg import NcPolynomial, cyclically_equivalent, enumerate_basis
from src.gram import (
    build_gram_system,
    extract_sohs,
    factor_psd,
    gram_to_poly,
    random_sohs,
    sohs_check,
    verify_gram_point,
)
from src.nc_types import CertificateError, DegreeOverflowError, DimensionMismatchError, RelaxationMode
from src.poly_text import parse_polynomial


def _example_gram():
    """t(x,y) 在 W_2 = (1, x, y, x², xy, yx, y²) 上的秩 2 Gram 矩阵"""
    q1 = np.array([1, 1, 0, 0, 0, 0, 1])
    q2 = np.array([0, 0, 0, 0, 1, 0, 0])
    G = np.outer(q1, q1) + np.outer(q2, q2)
    return [[Fraction(int(v)) for v in row] for row in G], q1, q2


def test_gram_rows_cover_every_word(sohs_poly):
    system = build_gram_system(sohs_poly, 2)
    keys = [row.key for row in system.constraints]
    assert len(keys) == len(set(keys))
    # 次数 ≤ 4 的词按 {w, w*} 去重后的类数
    words = {min(w, w[::-1]) for w in enumerate_basis(2, 4).words}
    assert set(keys) == words
    assert not system.symmetrized


def test_exact_gram_point(sohs_poly):
    G, _, _ = _example_gram()
    system = build_gram_system(sohs_poly, 2)
    assert verify_gram_point(system, G) == 0
    assert gram_to_poly(G, system.basis) == sohs_poly


def test_gram_point_violation_is_exact(sohs_poly):
    G, _, _ = _example_gram()
    # 空词自对合，对角元在约束行中权重为 2
    G[0][0] += Fraction(1, 3)
    system = build_gram_system(sohs_poly, 2)
    assert verify_gram_point(system, G) == Fraction(2, 3)


def test_trace_mode_rows_use_cyclic_classes():
    f = parse_polynomial("x*y*y+y*y*x", 2)
    system = build_gram_system(f, 2, RelaxationMode.TRACE)
    by_key = {row.key: row for row in system.constraints}
    assert by_key[(1, 2, 2)].rhs == 2
    assert all(row.rhs == 0 for key, row in by_key.items() if key != (1, 2, 2))


def test_nonsymmetric_target_is_symmetrized():
    f = parse_polynomial("x*y", 2)
    system = build_gram_system(f, 1)
    assert system.symmetrized
    assert system.target == f.symmetrize()


def test_degree_overflow(sohs_poly):
    with pytest.raises(DegreeOverflowError):
        build_gram_system(sohs_poly, 1)


def test_gram_to_poly_shape_check():
    basis = enumerate_basis(2, 1)
    with pytest.raises(DimensionMismatchError):
        gram_to_poly(np.eye(2), basis)


def test_extract_recovers_summand_space(sohs_poly):
    G, q1, q2 = _example_gram()
    basis = enumerate_basis(2, 2)
    cert = extract_sohs(np.array(G, dtype=float), basis, target=sohs_poly)
    assert len(cert.summands) == 2
    assert cert.residual_norm() <= 1e-9
    span = np.column_stack([q1, q2]).astype(float)
    for g in cert.summands:
        vec = g.coefficient_vector(basis)
        coef, *_ = np.linalg.lstsq(span, vec, rcond=None)
        assert np.allclose(span @ coef, vec, atol=1e-9)


def test_factor_rejects_indefinite():
    basis = enumerate_basis(1, 1)
    with pytest.raises(CertificateError):
        factor_psd(np.array([[1.0, 0.0], [0.0, -1.0]]), basis, 1e-8)


def test_empty_certificate_for_zero_gram():
    basis = enumerate_basis(1, 1)
    cert = extract_sohs(np.zeros((2, 2)), basis)
    assert cert.summands == []
    assert cert.residual.is_zero()


def test_sohs_check_example(sohs_poly, options):
    result = sohs_check(sohs_poly, 2, options=options)
    assert result.feasible
    assert result.certificate is not None
    assert result.certificate.residual_norm() <= 1e-6
    expanded = result.certificate.expand()
    diff = sohs_poly - expanded
    assert diff.max_abs_coefficient() <= 1e-6


def test_sohs_check_rejects_negative_constant(options):
    f = parse_polynomial("x1^2-1", 1)
    result = sohs_check(f, 1, options=options)
    assert not result.feasible
    assert result.certificate is None


def test_trace_check_accepts_commutator_shift(options):
    x = NcPolynomial.variable(1, 2)
    y = NcPolynomial.variable(2, 2)
    # x*y*y*x 是 SOHS；加上对称的交换子和仍循环等价于 SOHS
    f = x * y * y * x + (x * x * y * y + y * y * x * x) - (x * y * y * x) * 2
    assert cyclically_equivalent(f, x * y * y * x)
    result = sohs_check(f, 2, RelaxationMode.TRACE, options)
    assert result.feasible


def test_random_sohs_is_symmetric():
    rng = np.random.default_rng(5)
    f, gs = random_sohs(2, 1, 3, rng)
    assert f.is_symmetric()
    assert len(gs) == 3
    assert f.degree <= 2
