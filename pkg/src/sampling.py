#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
随机采样上界
在 D_𝔤 中拒绝采样对称矩阵组，取 f 的最小特征值（特征值问题）或归一化迹（迹问题）的最小值，
作为松弛下界的对照。给定种子时结果确定。
"""

import concurrent.futures
import logging
import math
import time
from enum import Enum
from typing import Callable, List, Optional, Sequence

import numpy as np
import scipy.linalg as la
from pydantic import BaseModel, Field

from .freealg import NcPolynomial, evaluate
from .hierarchy import BoundReport, NcProblem
from .nc_types import NcOptError, RelaxationMode

logger = logging.getLogger(__name__)

# 判定 g(A) ⪰ 0 与 h(A) = 0 的容差
MEMBERSHIP_TOL = 1e-8


class Sampler(str, Enum):
    """矩阵组采样方式"""
    GAUSSIAN = "gaussian"
    REFLECTION = "reflection"
    TENSOR_REFLECTION = "tensor_reflection"

    @classmethod
    def default_for(cls, prob: NcProblem) -> "Sampler":
        return cls.TENSOR_REFLECTION if prob.equalities else cls.GAUSSIAN


class SampleResult(BaseModel):
    """采样结果；没有可行样本时 value 为 None"""
    value: Optional[float] = Field(default=None, description="样本上的最小值")
    trials: int = 0
    feasible: int = Field(default=0, description="落入 D_𝔤 的样本数")
    best_size: Optional[int] = None
    sampler: Sampler = Sampler.GAUSSIAN
    seed: int = 0


def _gaussian_symmetric(size: int, rng: np.random.Generator) -> np.ndarray:
    G = rng.normal(size=(size, size))
    A = (G + G.T) / 2
    norm = float(np.max(np.abs(la.eigvalsh(A)))) if size else 0.0
    if norm > 0:
        A = A / norm * rng.uniform(0.0, 2.0)
    return A


def _reflection(size: int, rng: np.random.Generator) -> np.ndarray:
    """Q diag(±1) Qᵀ，满足 A² = I"""
    Q, _ = la.qr(rng.normal(size=(size, size)))
    signs = rng.choice([-1.0, 1.0], size=size)
    A = (Q * signs) @ Q.T
    return (A + A.T) / 2


def sample_tuple(nvars: int, size: int, sampler: Sampler, rng: np.random.Generator) -> List[np.ndarray]:
    """
    采样一个对称矩阵组

    tensor_reflection 把字母平分为两组：前一半为 R_i ⊗ I，后一半为 I ⊗ S_j，
    两组之间天然可交换，矩阵阶数为 size²。
    """
    if sampler == Sampler.GAUSSIAN:
        return [_gaussian_symmetric(size, rng) for _ in range(nvars)]
    if sampler == Sampler.REFLECTION:
        return [_reflection(size, rng) for _ in range(nvars)]
    half = nvars // 2
    eye = np.eye(size)
    left = [np.kron(_reflection(size, rng), eye) for _ in range(half)]
    right = [np.kron(eye, _reflection(size, rng)) for _ in range(nvars - half)]
    return left + right


def in_domain(prob: NcProblem, mats: Sequence[np.ndarray]) -> bool:
    """A̲ ∈ D_𝔤 且 h(A̲) = 0"""
    for g in prob.inequalities:
        if la.eigvalsh(evaluate(g, mats))[0] < -MEMBERSHIP_TOL:
            return False
    for h in prob.equalities:
        if np.max(np.abs(evaluate(h, mats)), initial=0.0) > MEMBERSHIP_TOL:
            return False
    return True


def objective_value(f: NcPolynomial, mats: Sequence[np.ndarray], kind: RelaxationMode) -> float:
    value = evaluate(f, mats)
    if kind == RelaxationMode.TRACE:
        return float(np.trace(value)) / value.shape[0]
    return float(la.eigvalsh((value + value.T) / 2)[0])


def sample_upper_bound(prob: NcProblem, sizes: Sequence[int] = (1, 2, 3, 4), trials: int = 200,
                       seed: int = 0, sampler: Optional[Sampler] = None) -> SampleResult:
    """
    随机采样上界

    Args:
        prob: 优化问题
        sizes: 候选矩阵阶数，逐次轮换
        trials: 采样次数，≥ 1
        seed: 随机种子
        sampler: 采样方式，缺省时有等式约束用 tensor_reflection，否则 gaussian

    Returns:
        SampleResult: 无可行样本时 value 为 None（不是错误）

    Raises:
        NcOptError: trials < 1 或 sizes 为空
    """
    if trials < 1:
        raise NcOptError(f"采样次数必须 ≥ 1: {trials}")
    if not sizes or any(s < 1 for s in sizes):
        raise NcOptError(f"矩阵阶数必须为正: {list(sizes)}")
    sampler = sampler or Sampler.default_for(prob)
    rng = np.random.default_rng(seed)
    result = SampleResult(trials=trials, sampler=sampler, seed=seed)
    best = math.inf
    for t in range(trials):
        size = sizes[t % len(sizes)]
        mats = sample_tuple(prob.nvars, size, sampler, rng)
        if not in_domain(prob, mats):
            continue
        result.feasible += 1
        value = objective_value(prob.objective, mats, prob.kind)
        if value < best:
            best = value
            result.best_size = mats[0].shape[0]
    if result.feasible:
        result.value = best
    else:
        logger.warning(f"{trials} 次采样（{sampler.value}）没有落入可行集的样本")
    logger.info(f"采样上界: value={result.value}, feasible={result.feasible}/{trials}")
    return result


def solve_with_sampling(prob: NcProblem, solver: Callable[[NcProblem], BoundReport],
                        sizes: Sequence[int], trials: int, seed: int,
                        sampler: Optional[Sampler] = None) -> BoundReport:
    """
    并发执行松弛求解与采样，结果按固定顺序合并

    Returns:
        BoundReport: 附带 sample_bound 与采样元数据
    """
    started = time.perf_counter()
    with concurrent.futures.ThreadPoolExecutor(max_workers=2) as executor:
        report_future = executor.submit(solver, prob)
        sample_future = executor.submit(sample_upper_bound, prob, sizes, trials, seed, sampler)
        report = report_future.result()
        sample = sample_future.result()
    report.sample_bound = sample.value
    report.metadata["sampling"] = sample.model_dump(mode="json")
    report.timings["sampling_wall"] = time.perf_counter() - started
    return report
