#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Gram 矩阵机制
构造线性约束系统 ⟨A_w, G⟩ = f_w + f_{w*}，多项式与 Gram 矩阵互相转换，
并从半正定 Gram 矩阵提取 SOHS 证书。
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, Field

from .freealg import (
    NcPolynomial,
    Word,
    WordBasis,
    cyclic_canonical,
    enumerate_basis,
    rotation_canonical,
    sum_polynomials,
    symmetric_canonical,
    to_fraction,
    word_star,
)
from .nc_types import CertificateError, DegreeOverflowError, DimensionMismatchError, RelaxationMode
from .sdp import SdpProblem, SdpSolution, SolverOptions, solve
from .utils import get_settings

logger = logging.getLogger(__name__)


class GramConstraint(BaseModel):
    """一行约束 ⟨A_key, G⟩ = rhs；entries 为对称满存储的整数权重"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    key: Word = Field(description="规范词：min(w,w*) 或循环规范形")
    entries: Dict[Tuple[int, int], int] = Field(description="(u,v) 下标 -> 权重")
    rhs: Fraction = Field(description="右端项")

    def matrix(self, size: int) -> sp.csr_matrix:
        rows, cols = zip(*self.entries) if self.entries else ((), ())
        return sp.csr_matrix((list(self.entries.values()), (rows, cols)), shape=(size, size), dtype=float)

    def evaluate(self, G) -> Fraction:
        """⟨A, G⟩，G 元素为有理数时结果精确"""
        total = Fraction(0)
        for (i, j), weight in self.entries.items():
            total += weight * to_fraction(G[i][j])
        return total


class GramSystem(BaseModel):
    """Gram 约束系统"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    basis: WordBasis
    constraints: List[GramConstraint]
    mode: RelaxationMode
    target: NcPolynomial = Field(description="实际参与约束的多项式（特征值模式下已对称化）")
    symmetrized: bool = Field(default=False, description="构造时是否做了 (f+f*)/2")

    @property
    def size(self) -> int:
        return len(self.basis)


class ConstraintTerm(BaseModel):
    """约束多项式 g 及其权重多项式 p_j：Σ_j p_j* g p_j"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    constraint: NcPolynomial
    weights: List[NcPolynomial] = Field(default_factory=list)

    def expand(self) -> NcPolynomial:
        g = self.constraint
        return sum_polynomials((p.star() * g * p for p in self.weights), g.nvars)


class SohsCertificate(BaseModel):
    """SOHS 证书：target ≈ Σ g_i* g_i + Σ_g Σ_j p_j* g p_j"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    summands: List[NcPolynomial] = Field(default_factory=list)
    constraint_terms: List[ConstraintTerm] = Field(default_factory=list)
    residual: NcPolynomial = Field(description="target − 展开式")
    mode: RelaxationMode = RelaxationMode.EIGENVALUE
    eigenvalues: List[float] = Field(default_factory=list, description="保留的 Gram 特征值")

    def expand(self) -> NcPolynomial:
        nvars = self.residual.nvars
        total = sum_polynomials((g.star() * g for g in self.summands), nvars)
        for term in self.constraint_terms:
            total = total + term.expand()
        return total

    def residual_norm(self) -> float:
        """残差的最大系数绝对值；迹模式下按旋转类求和后再取最大值"""
        if self.mode == RelaxationMode.TRACE:
            sums: Dict[Word, Fraction] = {}
            for w, c in self.residual.terms.items():
                key = rotation_canonical(w)
                sums[key] = sums.get(key, Fraction(0)) + c
            return max((abs(float(v)) for v in sums.values()), default=0.0)
        return self.residual.max_abs_coefficient()


def _class_key(word: Word, mode: RelaxationMode) -> Word:
    if mode == RelaxationMode.TRACE:
        return cyclic_canonical(word)
    return symmetric_canonical(word)


def build_gram_system(f: NcPolynomial, d: int, mode: RelaxationMode = RelaxationMode.EIGENVALUE,
                      basis: Optional[WordBasis] = None) -> GramSystem:
    """
    构造 Gram 约束系统

    Args:
        f: 目标多项式，deg f ≤ 2d
        d: 词基次数
        mode: 特征值模式（约束按 {w,w*} 去重）或迹模式（按循环类去重）
        basis: 可复用的词基

    Returns:
        GramSystem: 每个次数 ≤ 2d 的词恰被一行约束覆盖

    Raises:
        DegreeOverflowError: deg f > 2d
    """
    if f.degree is not None and f.degree > 2 * d:
        raise DegreeOverflowError(f"deg f = {f.degree} 超过 2d = {2 * d}")
    basis = basis or enumerate_basis(f.nvars, d)

    symmetrized = False
    target = f
    if not f.is_symmetric():
        target = f.symmetrize()
        symmetrized = True
        logger.info(f"目标多项式不对称，已替换为 (f+f*)/2（{mode.value} 模式）")

    rows: Dict[Word, Dict[Tuple[int, int], int]] = {}
    for i, u in enumerate(basis.words):
        u_star = word_star(u)
        for j, v in enumerate(basis.words):
            w = u_star + v
            key = _class_key(w, mode)
            if mode == RelaxationMode.EIGENVALUE:
                weight = 2 if w == word_star(w) else 1
            else:
                weight = 1
            entries = rows.setdefault(key, {})
            entries[(i, j)] = entries.get((i, j), 0) + weight

    rhs: Dict[Word, Fraction] = {key: Fraction(0) for key in rows}
    for w, c in target.terms.items():
        key = _class_key(w, mode)
        if mode == RelaxationMode.EIGENVALUE:
            # f_w + f_{w*}：对称化后的 f 在 w 与 w* 上系数相同
            rhs[key] += c if w != word_star(w) else 2 * c
        else:
            rhs[key] += c

    constraints = [GramConstraint(key=key, entries=rows[key], rhs=rhs[key])
                   for key in sorted(rows, key=lambda w: (len(w), w))]
    return GramSystem(basis=basis, constraints=constraints, mode=mode, target=target,
                      symmetrized=symmetrized)


def verify_gram_point(system: GramSystem, G) -> Fraction:
    """
    候选 Gram 矩阵的最大约束违反量（G 为有理数矩阵时精确）

    Returns:
        Fraction: max |⟨A_w, G⟩ − rhs_w|
    """
    worst = Fraction(0)
    for row in system.constraints:
        worst = max(worst, abs(row.evaluate(G) - row.rhs))
    return worst


def gram_to_poly(G, basis: WordBasis) -> NcPolynomial:
    """
    精确展开 W_d* G W_d = Σ_{u,v} G_{u,v} u*v

    Raises:
        DimensionMismatchError: G 的尺寸不是 s(d,n)
    """
    size = len(basis)
    shape = np.shape(G)
    if shape != (size, size):
        raise DimensionMismatchError(f"Gram 矩阵尺寸 {shape} 应为 {(size, size)}")
    terms: Dict[Word, Fraction] = {}
    for i, u in enumerate(basis.words):
        u_star = word_star(u)
        for j, v in enumerate(basis.words):
            value = to_fraction(G[i][j])
            if value:
                w = u_star + v
                terms[w] = terms.get(w, Fraction(0)) + value
    return NcPolynomial(terms, basis.nvars)


def factor_psd(G: np.ndarray, basis: WordBasis, tol: float) -> Tuple[List[NcPolynomial], List[float]]:
    """
    特征分解 G = Σ λ_k q_k q_kᵀ，g_k = √λ_k · q_kᵀ W

    Raises:
        CertificateError: 最小特征值低于 −tol·max(1,‖G‖)
    """
    G = np.asarray(G, dtype=float)
    if G.size == 0:
        return [], []
    G = (G + G.T) / 2
    lam, Q = la.eigh(G)
    scale = max(1.0, float(np.max(np.abs(lam))))
    if lam[0] < -tol * scale:
        raise CertificateError(f"Gram 矩阵不定：最小特征值 {lam[0]:.3e} < −{tol:.1e}")
    summands, kept = [], []
    for k in range(len(lam) - 1, -1, -1):
        if lam[k] <= tol * scale:
            continue
        vec = np.sqrt(lam[k]) * Q[:, k]
        cutoff = 1e-12 * float(np.max(np.abs(vec)))
        terms = {basis.words[i]: float(vec[i]) for i in range(len(vec)) if abs(vec[i]) > cutoff}
        summands.append(NcPolynomial(terms, basis.nvars))
        kept.append(float(lam[k]))
    return summands, kept


def extract_sohs(G: np.ndarray, basis: WordBasis, tol: Optional[float] = None,
                 target: Optional[NcPolynomial] = None,
                 mode: RelaxationMode = RelaxationMode.EIGENVALUE) -> SohsCertificate:
    """
    从半正定 Gram 矩阵提取 SOHS 证书

    Args:
        G: 对称矩阵
        basis: 对应词基
        tol: 特征值截断容差，默认取配置 eig_tol
        target: 证书要逼近的多项式，默认 gram_to_poly(G)
        mode: 残差度量方式

    Returns:
        SohsCertificate: 含残差的证书

    Raises:
        CertificateError: G 不定超出容差
    """
    tol = get_settings().eig_tol if tol is None else tol
    summands, kept = factor_psd(G, basis, tol)
    if target is None:
        target = gram_to_poly(np.asarray(G, dtype=float), basis)
    cert = SohsCertificate(summands=summands, residual=target, mode=mode, eigenvalues=kept)
    cert.residual = target - cert.expand()
    return cert


def gram_feasibility_problem(system: GramSystem) -> SdpProblem:
    """Gram 系统转为可行性半定规划（C = 0）"""
    size = system.size
    A = [[row.matrix(size)] for row in system.constraints]
    b = [float(row.rhs) for row in system.constraints]
    return SdpProblem.build([size], None, A, b)


class SohsCheckResult(BaseModel):
    """SOHS 成员判定结果"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    feasible: bool
    system: GramSystem
    solution: SdpSolution
    certificate: Optional[SohsCertificate] = None


def sohs_check(f: NcPolynomial, d: int, mode: RelaxationMode = RelaxationMode.EIGENVALUE,
               options: Optional[SolverOptions] = None) -> SohsCheckResult:
    """
    判定 f ∈ Σ_{2d}（迹模式：f 循环等价于某个 SOHS），可行时给出证书
    """
    system = build_gram_system(f, d, mode)
    solution = solve(gram_feasibility_problem(system), options)
    feasible = solution.is_usable()
    certificate = None
    if feasible:
        try:
            certificate = extract_sohs(solution.X[0], system.basis, target=system.target, mode=mode)
        except CertificateError as e:
            logger.warning(f"证书提取失败: {e}")
    logger.info(f"SOHS 判定: feasible={feasible}, status={solution.status.value}")
    return SohsCheckResult(feasible=feasible, system=system, solution=solution, certificate=certificate)


def random_sohs(nvars: int, degree: int, count: int, rng: np.random.Generator,
                integer: bool = True) -> Tuple[NcPolynomial, List[NcPolynomial]]:
    """构造随机 SOHS：Σ g_i* g_i，g_i 次数 ≤ degree（测试与采样用）"""
    basis = enumerate_basis(nvars, degree)
    gs = []
    for _ in range(count):
        if integer:
            coefs = rng.integers(-3, 4, size=len(basis))
        else:
            coefs = rng.normal(size=len(basis))
        gs.append(NcPolynomial({w: (int(c) if integer else float(c)) for w, c in zip(basis.words, coefs)}, nvars))
    return sum_polynomials((g.star() * g for g in gs), nvars), gs
