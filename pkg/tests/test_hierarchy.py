#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
松弛层次测试：特征值/迹最小化、约束情形、CHSH 与 psd 秩
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from src.freealg import NcPolynomial, ball_constraint, evaluate, sum_polynomials
from src.gram import random_sohs
from src.hierarchy import (
    NcProblem,
    build_moment_program,
    build_problem_program,
    eig_min_constrained,
    eig_min_unconstrained,
    minimize,
    psd_rank_lower_bound,
    psd_rank_problem,
    trace_min_constrained,
    trace_min_unconstrained,
)
from src.moment import EqualityConstraint
from src.nc_types import BoundStatus, DegreeOverflowError, NcOptError, NotSymmetricError, RelaxationMode
from src.poly_text import parse_polynomial
from src.presets import CHSH_QUANTUM_BOUND, PSD_RANK_EXAMPLE, PSD_RANK_EXAMPLE_VALUE, preset_problem
from src.sampling import sample_upper_bound

from conftest import MOTZKIN_NC


def _x(n=1):
    return NcPolynomial.variable(1, n)


def test_problem_defaults_and_validation():
    f = parse_polynomial("x*y+y^4", 2)
    prob = NcProblem(objective=f)
    assert prob.symmetrized
    assert prob.objective.is_symmetric()
    assert prob.order == 2
    with pytest.raises(DegreeOverflowError):
        NcProblem(objective=f, order=1)
    with pytest.raises(NotSymmetricError):
        NcProblem(objective=f, inequalities=[parse_polynomial("x*y", 2)])
    with pytest.raises(NcOptError):
        NcProblem(objective=f, inequalities=[parse_polynomial("x1", 3)])


def test_univariate_quadratic(options):
    f = parse_polynomial("x1^2-2*x1+3", 1)
    report = eig_min_unconstrained(f, 1, options)
    assert report.status == BoundStatus.OPTIMAL
    assert report.dual_bound == pytest.approx(2.0, abs=1e-6)
    assert report.duality_ok()
    assert report.certificate is not None
    assert report.certificate.residual_norm() <= 1e-6


def test_trace_example_bound(sohs_poly, options):
    report = trace_min_unconstrained(sohs_poly, 2, options)
    assert report.status == BoundStatus.OPTIMAL
    assert abs(report.dual_bound) <= 1e-6
    assert report.duality_ok()
    assert report.moment_matrix.shape == (7, 7)
    assert report.certificate is not None
    assert report.certificate.residual_norm() <= 1e-6


def test_eigenvalue_bound_of_sohs_is_nonnegative(sohs_poly, options):
    report = eig_min_unconstrained(sohs_poly, 2, options)
    assert report.status == BoundStatus.OPTIMAL
    assert report.dual_bound >= -1e-6


def test_motzkin_trace_is_unbounded(options):
    f = parse_polynomial(MOTZKIN_NC, 2)
    report = trace_min_unconstrained(f, 3, options)
    assert report.status == BoundStatus.UNBOUNDED
    assert report.dual_bound == -math.inf
    assert report.primal_status == "Infeasible"
    assert report.dual_status == "Unbounded"
    assert math.isnan(report.gap)


def test_odd_degree_is_unbounded(options):
    report = eig_min_unconstrained(parse_polynomial("x1", 1), 1, options)
    assert report.status == BoundStatus.UNBOUNDED
    assert report.value == -math.inf


def test_ball_constrained_linear(options):
    prob = NcProblem(objective=_x(), inequalities=[parse_polynomial("1-x1^2", 1)], order=1)
    report = eig_min_constrained(prob, options)
    assert report.status == BoundStatus.OPTIMAL
    assert report.dual_bound == pytest.approx(-1.0, abs=1e-6)
    assert report.certificate is not None
    assert report.certificate.residual_norm() <= 1e-5


def test_equality_constrained_linear(options):
    prob = NcProblem(objective=_x(), equalities=[parse_polynomial("x1^2-1", 1)], order=1)
    report = eig_min_constrained(prob, options)
    assert report.status == BoundStatus.OPTIMAL
    assert report.dual_bound == pytest.approx(-1.0, abs=1e-6)
    assert report.certificate is None


def test_inconsistent_equalities_are_infeasible(options):
    prob = NcProblem(objective=_x(), equalities=[NcPolynomial.constant(1, 1)], order=1)
    program = build_problem_program(prob)
    assert program.sdp is None
    report = minimize(prob, options)
    assert report.status == BoundStatus.INFEASIBLE
    assert report.dual_bound == math.inf


def test_empty_constraint_set_reduces_to_unconstrained(sohs_poly, options):
    prob = NcProblem(objective=sohs_poly, kind=RelaxationMode.TRACE, order=2)
    constrained = build_problem_program(prob)
    plain = build_moment_program(sohs_poly, [], [], 2, RelaxationMode.TRACE)
    assert constrained.sdp.same_as(plain.sdp)
    report = trace_min_constrained(prob, options)
    assert report.dual_bound == pytest.approx(trace_min_unconstrained(sohs_poly, 2, options).dual_bound, abs=1e-8)


def test_kind_mismatch_rejected():
    prob = NcProblem(objective=_x(), kind=RelaxationMode.TRACE, order=1)
    with pytest.raises(NcOptError):
        eig_min_constrained(prob)
    with pytest.raises(NcOptError):
        trace_min_constrained(prob.model_copy(update={"kind": RelaxationMode.EIGENVALUE}))


@pytest.mark.parametrize("kind", [RelaxationMode.EIGENVALUE, RelaxationMode.TRACE])
def test_sandwich_on_constructed_objectives(kind, options):
    rng = np.random.default_rng(2024)
    for _ in range(50):
        sohs, _ = random_sohs(2, 1, 2, rng)
        c = Fraction(int(rng.integers(-5, 6)))
        prob = NcProblem(objective=sohs + c, kind=kind, order=1)
        report = minimize(prob, options)
        assert report.status == BoundStatus.OPTIMAL
        assert report.dual_bound >= float(c) - 1e-6
        sample = sample_upper_bound(prob, sizes=(1, 2, 3), trials=60, seed=1)
        assert report.dual_bound <= sample.value + 1e-6
        assert report.duality_ok()


def _random_symmetric(rng, nvars, degree, terms=6):
    poly = {}
    for _ in range(terms):
        length = int(rng.integers(0, degree + 1))
        word = tuple(int(i) for i in rng.integers(1, nvars + 1, size=length))
        poly[word] = int(rng.integers(-3, 4))
    return NcPolynomial(poly, nvars).symmetrize()


@pytest.mark.parametrize("kind", [RelaxationMode.EIGENVALUE, RelaxationMode.TRACE])
def test_bounds_increase_with_order(kind, options):
    rng = np.random.default_rng(9)
    ball = ball_constraint(2, 1)
    for _ in range(20):
        f = _random_symmetric(rng, 2, 3)
        prob = NcProblem(objective=f, inequalities=[ball], kind=kind, order=2)
        low = minimize(prob, options)
        high = minimize(prob.with_order(3), options)
        assert low.status == BoundStatus.OPTIMAL
        assert high.status == BoundStatus.OPTIMAL
        assert low.dual_bound <= high.dual_bound + 1e-7


def test_certificate_summands_are_psd_on_matrices(sohs_poly, options):
    rng = np.random.default_rng(21)
    f = sohs_poly + parse_polynomial("x^2-2*x", 2)
    report = eig_min_unconstrained(f, 2, options)
    assert report.status == BoundStatus.OPTIMAL
    cert = report.certificate
    assert cert is not None and cert.summands
    total = sum_polynomials((g.star() * g for g in cert.summands), 2)
    for _ in range(20):
        size = int(rng.integers(1, 5))
        mats = []
        for _ in range(2):
            a = rng.standard_normal((size, size))
            mats.append(a + a.T)
        value = evaluate(total, mats)
        assert np.linalg.eigvalsh(value)[0] >= -1e-7


def test_equality_rows_match_two_sided_blocks(options):
    rows_form = preset_problem("chsh", 1)
    squares = [h for h in rows_form.equalities if h.is_symmetric()]
    commutators = [h for h in rows_form.equalities if not h.is_symmetric()]
    assert len(squares) == 4 and len(commutators) == 4
    blocks_form = NcProblem(objective=rows_form.objective,
                            inequalities=squares + [-h for h in squares],
                            equalities=commutators, kind=RelaxationMode.EIGENVALUE, order=1)
    with_rows = eig_min_constrained(rows_form, options)
    with_blocks = eig_min_constrained(blocks_form, options)
    assert with_rows.status == BoundStatus.OPTIMAL
    assert with_blocks.status == BoundStatus.OPTIMAL
    assert with_rows.dual_bound == pytest.approx(with_blocks.dual_bound, abs=1e-6)


def test_equality_constraint_objects_compile_like_polynomials():
    f = parse_polynomial("x*y+y*x+x^2", 2)
    h = parse_polynomial("x^2-1", 2)
    plain = build_moment_program(f, [], [h], 1, RelaxationMode.EIGENVALUE)
    wrapped = build_moment_program(f, [], [EqualityConstraint(h=h)], 1, RelaxationMode.EIGENVALUE)
    assert plain.sdp.same_as(wrapped.sdp)


@pytest.mark.slow
def test_chsh_maximal_violation(options):
    prob = preset_problem("chsh", 2)
    report = eig_min_constrained(prob, options)
    assert report.status == BoundStatus.OPTIMAL
    assert report.dual_bound == pytest.approx(-CHSH_QUANTUM_BOUND, abs=1e-4)
    assert report.duality_ok()


def test_psd_rank_of_rank_one_matrix(options):
    ones = [[1, 1], [1, 1]]
    report = psd_rank_lower_bound(ones, 2, options)
    assert report.status == BoundStatus.OPTIMAL
    assert report.dual_bound <= 1 + 1e-6
    assert report.metadata["matrix_shape"] == [2, 2]


def test_psd_rank_problem_data():
    data = psd_rank_problem(PSD_RANK_EXAMPLE)
    assert data.shape == (3, 3)
    assert data.fixed_words[(1, 5)] == Fraction(7, 4)
    assert data.equality == parse_polynomial("1-x1-x2-x3", 6)
    assert data.inequalities[3] == parse_polynomial("11/4*x4-x4^2", 6)
    with pytest.raises(NcOptError):
        psd_rank_problem([[1, -1]])
    with pytest.raises(NcOptError):
        psd_rank_problem([[1, 2], [3]])


def test_psd_rank_example_order_two(options):
    report = psd_rank_lower_bound(PSD_RANK_EXAMPLE, 2, options)
    assert report.status == BoundStatus.OPTIMAL
    assert report.dual_bound == pytest.approx(PSD_RANK_EXAMPLE_VALUE, abs=1e-3)


@pytest.mark.slow
def test_psd_rank_example_order_three(options):
    report = psd_rank_lower_bound(PSD_RANK_EXAMPLE, 3, options)
    assert report.status == BoundStatus.OPTIMAL
    assert report.dual_bound == pytest.approx(PSD_RANK_EXAMPLE_VALUE, abs=1e-3)
