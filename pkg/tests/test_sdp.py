#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
内点法求解器与 SDPA 读写测试
"""

import numpy as np
import pytest
import scipy.sparse as sp

from src.sdp import (
    InteriorPointSolver,
    SdpDimensionError,
    SdpFormatError,
    SdpProblem,
    SdpStatus,
    SolverOptions,
    export_sdpa,
    import_sdpa,
    solve,
)
from src.sdp.sdp_solver import _SchurSystem


def _constructed_problem(rng, sizes, m, rank):
    """构造已知最优解的问题：X*Z* = 0，C = A*(y*) − Z*"""
    C, X_opt, Z_opt = [], [], []
    for n in sizes:
        Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        x = np.concatenate([rng.uniform(0.5, 2.0, rank), np.zeros(n - rank)])
        z = np.concatenate([np.zeros(rank), rng.uniform(0.5, 2.0, n - rank)])
        X = Q @ np.diag(x) @ Q.T
        Z = Q @ np.diag(z) @ Q.T
        X_opt.append((X + X.T) / 2)
        Z_opt.append((Z + Z.T) / 2)
    A = []
    for _ in range(m):
        row = []
        for n in sizes:
            M = rng.standard_normal((n, n))
            row.append(sp.csr_matrix(M + M.T))
        A.append(row)
    y_opt = rng.standard_normal(m)
    for k, n in enumerate(sizes):
        aty = sum(y_opt[j] * A[j][k].toarray() for j in range(m))
        C.append(aty - Z_opt[k])
    b = [sum(float(np.sum(A[j][k].toarray() * X_opt[k])) for k in range(len(sizes))) for j in range(m)]
    return SdpProblem.build(list(sizes), C, A, b), float(np.dot(b, y_opt))


@pytest.mark.parametrize("seed", range(5))
def test_constructed_optimum(seed, options):
    rng = np.random.default_rng(seed)
    problem, value = _constructed_problem(rng, (4, 3), m=6, rank=2)
    solution = solve(problem, options)
    assert solution.status == SdpStatus.OPTIMAL
    assert solution.primal_value == pytest.approx(value, rel=1e-6, abs=1e-6)
    assert solution.dual_value == pytest.approx(value, rel=1e-6, abs=1e-6)
    for x in solution.X:
        assert np.linalg.eigvalsh(x)[0] >= -1e-8


def test_primal_infeasible(options):
    # ⟨I, X⟩ = −1 没有半正定解
    problem = SdpProblem.build([2], None, [[np.eye(2)]], [-1.0])
    solution = solve(problem, options)
    assert solution.status == SdpStatus.PRIMAL_INFEASIBLE


def test_dual_infeasible(options):
    # max tr X，仅约束非对角元，原始无界
    off = np.array([[0.0, 0.5], [0.5, 0.0]])
    problem = SdpProblem.build([2], [np.eye(2)], [[off]], [0.0])
    solution = solve(problem, options)
    assert solution.status == SdpStatus.DUAL_INFEASIBLE


def test_no_constraints():
    problem = SdpProblem.build([2], [-np.eye(2)], [], [])
    assert solve(problem).status == SdpStatus.OPTIMAL
    problem = SdpProblem.build([2], [np.eye(2)], [], [])
    assert solve(problem).status == SdpStatus.DUAL_INFEASIBLE


def test_build_validates_dimensions():
    with pytest.raises(SdpDimensionError):
        SdpProblem.build([2], None, [[np.eye(3)]], [1.0])
    with pytest.raises(SdpDimensionError):
        SdpProblem.build([2], None, [[np.array([[0.0, 1.0], [0.0, 0.0]])]], [1.0])
    with pytest.raises(SdpDimensionError):
        SdpProblem.build([2], None, [[np.eye(2)]], [1.0, 2.0])


def test_sdpa_round_trip_is_exact():
    rng = np.random.default_rng(7)
    problem, _ = _constructed_problem(rng, (3, 2), m=4, rank=1)
    text = export_sdpa(problem)
    assert import_sdpa(text).same_as(problem)
    assert export_sdpa(import_sdpa(text)) == text


def test_sdpa_small_example():
    C = [np.array([[-1.0, 0.0], [0.0, 0.0]])]
    A = [[np.array([[1.0, 0.0], [0.0, 0.0]])]]
    text = export_sdpa(SdpProblem.build([2], C, A, [1.0]))
    lines = text.splitlines()
    assert lines[:4] == ["1", "1", "2", "1.0"]
    assert "0 1 1 1 -1.0" in lines
    assert "1 1 1 1 1.0" in lines


def test_sdpa_diagonal_block_and_comments():
    text = '"comment\n1\n2\n2 -2\n3.0\n* another\n0 1 1 2 1.0\n1 1 1 1 1.0\n1 2 2 2 2.0\n'
    problem = import_sdpa(text)
    assert problem.block_sizes == [2, -2]
    assert problem.C[0][1, 0] == 1.0
    assert problem.A[0][1].toarray()[1, 1] == 2.0


@pytest.mark.parametrize("text, line", [
    ("1\n1\n2\n", 3),
    ("1\n1\n2\n1.0\n0 1 1 1\n", 5),
    ("1\n1\n2\n1.0\n2 1 1 1 1.0\n", 5),
    ("1\n1\n-2\n1.0\n1 1 1 2 1.0\n", 5),
])
def test_sdpa_errors_carry_line(text, line):
    with pytest.raises(SdpFormatError) as info:
        import_sdpa(text)
    assert info.value.line == line


def test_diagonal_block_linear_program(options):
    # max x1 + 2 x2 s.t. x1 + x2 = 1, x ≥ 0
    problem = SdpProblem.build([-2], [np.diag([1.0, 2.0])], [[np.eye(2)]], [1.0])
    solution = solve(problem, options)
    assert solution.status == SdpStatus.OPTIMAL
    assert solution.primal_value == pytest.approx(2.0, abs=1e-6)
    assert solution.X[0].shape == (2, 2)
    assert solution.X[0][0, 1] == 0.0
    assert np.allclose(np.diag(solution.X[0]), [0.0, 1.0], atol=1e-6)


def test_mixed_dense_and_diagonal_blocks(options):
    # max −tr X1 + x1 + 2 x2 s.t. tr X1 + x1 + x2 = 1
    problem = SdpProblem.build([2, -2], [-np.eye(2), np.diag([1.0, 2.0])],
                               [[np.eye(2), np.eye(2)]], [1.0])
    solution = solve(problem, options)
    assert solution.status == SdpStatus.OPTIMAL
    assert solution.dual_value == pytest.approx(2.0, abs=1e-6)
    assert np.linalg.eigvalsh(solution.Z[0])[0] >= -1e-8
    assert np.min(np.diag(solution.Z[1])) >= -1e-8


def test_schur_system_falls_back_on_singular_matrix():
    S = np.array([[4.0, 2.0, 0.0], [2.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    rhs = S @ np.ones(3)
    x = _SchurSystem(S).solve(rhs)
    assert np.all(np.isfinite(x))
    assert np.allclose(S @ x, rhs)


def test_schur_system_handles_badly_scaled_matrix():
    rng = np.random.default_rng(4)
    B = rng.standard_normal((6, 6))
    D = np.diag(10.0 ** np.arange(-5, 7, 2))
    M = B @ B.T + np.eye(6)
    S = D @ M @ D
    rhs = rng.standard_normal(6)
    x = _SchurSystem(S).solve(rhs)
    expected = np.linalg.solve(D, np.linalg.solve(M, np.linalg.solve(D, rhs)))
    assert np.allclose(x, expected, rtol=1e-8, atol=0.0)


def _failing_direction(monkeypatch, after, fault):
    real = InteriorPointSolver._direction
    calls = {"count": 0}

    def wrapper(self, *args):
        calls["count"] += 1
        if calls["count"] > after:
            return fault(real(self, *args))
        return real(self, *args)

    monkeypatch.setattr(InteriorPointSolver, "_direction", wrapper)


def test_non_finite_direction_reports_numerical_trouble(monkeypatch, options):
    problem, _ = _constructed_problem(np.random.default_rng(0), (4, 3), m=6, rank=2)

    def poison(direction):
        dX, dy, dZ = direction
        return [np.full_like(d, np.nan) for d in dX], dy, dZ

    _failing_direction(monkeypatch, 3, poison)
    solution = solve(problem, options)
    assert solution.status == SdpStatus.NUMERICAL_TROUBLE
    assert np.isfinite(solution.primal_value) and np.isfinite(solution.dual_value)
    assert all(np.all(np.isfinite(x)) for x in solution.X)


def test_value_error_in_direction_is_contained(monkeypatch, options):
    problem, _ = _constructed_problem(np.random.default_rng(1), (3,), m=3, rank=1)

    def fail(direction):
        raise ValueError("array must not contain infs or NaNs")

    _failing_direction(monkeypatch, 0, fail)
    solution = solve(problem, options)
    assert solution.status == SdpStatus.NUMERICAL_TROUBLE
    assert "线性代数失败" in solution.message
    assert np.isfinite(solution.primal_infeasibility)


def test_iteration_limit_returns_best_point(options):
    problem, _ = _constructed_problem(np.random.default_rng(2), (4, 3), m=6, rank=2)
    solution = solve(problem, SolverOptions(tol_feas=1e-8, tol_gap=1e-8, max_iter=4))
    assert solution.status == SdpStatus.ITERATION_LIMIT
    assert solution.iterations == 4
    assert np.isfinite(solution.primal_infeasibility) and np.isfinite(solution.gap)
