#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
松弛层级的组装与求解
无约束/约束的特征值最小化与迹最小化（SOHS 原始形式与矩对偶形式），以及 psd 秩下界的可行性规划。

求解路径：先构造矩形式的标准半定规划（矩变量经等式消元参数化为 y = y0 + N z），
SOHS 一侧的界与证书由求解器的原始变量 X 重构。
"""

import logging
import math
import time
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .freealg import NcPolynomial, to_fraction
from .gram import ConstraintTerm, SohsCertificate, factor_psd
from .moment import (
    AffineSolution,
    EqualityConstraint,
    LinearForm,
    LocalizingTemplate,
    MomentLayout,
    build_layout,
    build_localizing,
    moment_template,
    solve_equalities,
)
from .nc_types import BoundStatus, CertificateError, DegreeOverflowError, NcOptError, NotSymmetricError, RelaxationMode
from .sdp import SdpProblem, SdpSolution, SdpStatus, SolverOptions, solve
from .utils import get_settings

logger = logging.getLogger(__name__)

# 强对偶检查的相对容差
DUALITY_TOL = 1e-6


class NcProblem(BaseModel):
    """
    非交换多项式优化问题

    objective 在构造时对称化（(f+f*)/2）；inequalities 必须对称；equalities 不要求对称。
    order 缺省时取 max(⌈deg f/2⌉, max d_g, max d_h)。
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    objective: NcPolynomial = Field(description="目标多项式 f")
    inequalities: List[NcPolynomial] = Field(default_factory=list, description="约束集 𝔤（g ⪰ 0）")
    equalities: List[NcPolynomial] = Field(default_factory=list, description="等式集 𝔥（h = 0）")
    kind: RelaxationMode = Field(default=RelaxationMode.EIGENVALUE, description="特征值或迹")
    order: Optional[int] = Field(default=None, description="松弛阶数 d")
    symmetrized: bool = Field(default=False, description="目标是否在构造时被对称化")

    @model_validator(mode="after")
    def _normalize(self) -> "NcProblem":
        n = self.objective.nvars
        for poly in self.inequalities + self.equalities:
            if poly.nvars != n:
                raise NcOptError(f"约束的变量个数 {poly.nvars} 与目标的 {n} 不一致")
        for g in self.inequalities:
            if g.is_zero():
                raise NcOptError("不等式约束不能为零多项式")
            if not g.is_symmetric():
                raise NotSymmetricError(f"不等式约束必须对称: {g}")
        if not self.objective.is_symmetric():
            self.objective = self.objective.symmetrize()
            self.symmetrized = True
        self.equalities = [h for h in self.equalities if not h.is_zero()]
        minimum = self.min_order()
        if self.order is None:
            self.order = minimum
        elif self.order < minimum:
            raise DegreeOverflowError(f"松弛阶数 {self.order} 小于所需的最小阶数 {minimum}")
        return self

    @property
    def nvars(self) -> int:
        return self.objective.nvars

    def min_order(self) -> int:
        halves = [0]
        if self.objective.degree is not None:
            halves.append(self.objective.half_degree())
        halves.extend(p.half_degree() for p in self.inequalities + self.equalities)
        return max(halves)

    def with_order(self, order: int) -> "NcProblem":
        return NcProblem(objective=self.objective, inequalities=self.inequalities,
                         equalities=self.equalities, kind=self.kind, order=order,
                         symmetrized=self.symmetrized)


class MomentProgram(BaseModel):
    """矩形式半定规划及其与类变量之间的对应"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    layout: MomentLayout
    templates: List[LocalizingTemplate] = Field(description="第0块为矩矩阵，其余为局部化矩阵")
    affine: AffineSolution
    objective_form: LinearForm
    normalized: bool = Field(description="是否固定 L(1) = 1")
    sdp: Optional[SdpProblem] = Field(default=None, description="等式组矛盾时为空")
    offset: float = 0.0

    def class_values(self, z: np.ndarray) -> np.ndarray:
        """y = y0 + N z"""
        return self.affine.y0_float + self.affine.N @ np.asarray(z, dtype=float)


def _template_blocks(template: LocalizingTemplate, affine: AffineSolution):
    """把模板 Σ_c y_c B_c 改写为 Σ_j z_j A_j − C"""
    size = template.size
    T = template.operator()
    C = -(T @ affine.y0_float).reshape(size, size)
    TN = (T @ affine.N).tocsc()
    blocks = []
    for j in range(TN.shape[1]):
        start, end = TN.indptr[j], TN.indptr[j + 1]
        idx = TN.indices[start:end]
        blocks.append(sp.csr_matrix((TN.data[start:end], (idx // size, idx % size)), shape=(size, size)))
    return C, blocks


def build_moment_program(objective: NcPolynomial, inequalities: Sequence[NcPolynomial],
                         equalities: Sequence[Union[NcPolynomial, EqualityConstraint]], order: int,
                         mode: RelaxationMode,
                         normalized: bool = True,
                         fixed: Sequence[Tuple[NcPolynomial, Fraction]] = ()) -> MomentProgram:
    """
    组装矩松弛

    Args:
        objective: 目标 f（最小化 L(f)）
        inequalities: 𝔤，每个生成一个局部化块
        equalities: 𝔥，多项式或 EqualityConstraint，编译为类变量上的线性等式
        order: 松弛阶数 d
        mode: 识别模式
        normalized: True 时施加 L(1) = 1；psd 秩规划中 L(1) 是目标，不归一
        fixed: 额外的矩等式 L(p) = 右端

    Returns:
        MomentProgram: 含标准形式数据的规划
    """
    layout = build_layout(objective.nvars, order, mode)
    templates = [moment_template(layout)] + [build_localizing(layout, g) for g in inequalities]

    rows: List[Tuple[LinearForm, Fraction]] = []
    if normalized:
        rows.append(({0: Fraction(1)}, Fraction(1)))
    rows.extend((layout.class_sums(p), to_fraction(rhs)) for p, rhs in fixed)
    for h in equalities:
        constraint = h if isinstance(h, EqualityConstraint) else EqualityConstraint(h=h)
        rows.extend((form, Fraction(0)) for form in constraint.compile(layout))
    affine = solve_equalities(rows, layout.num_classes)

    objective_form = layout.class_sums(objective)
    program = MomentProgram(layout=layout, templates=templates, affine=affine,
                            objective_form=objective_form, normalized=normalized)
    if not affine.consistent:
        return program

    fvec = np.zeros(layout.num_classes)
    for cid, coef in objective_form.items():
        fvec[cid] = float(coef)
    b = affine.N.T @ fvec
    program.offset = float(fvec @ affine.y0_float)

    C_blocks, A_rows = [], [[] for _ in range(len(affine.free))]
    for template in templates:
        C, blocks = _template_blocks(template, affine)
        C_blocks.append(C)
        for j, blk in enumerate(blocks):
            A_rows[j].append(blk)
    program.sdp = SdpProblem.build([t.size for t in templates], C_blocks, A_rows, b)
    logger.info(f"矩松弛: d={order}, mode={mode.value}, 类={layout.num_classes}, "
                f"自由变量={len(affine.free)}, 块={[t.size for t in templates]}")
    return program


class BoundReport(BaseModel):
    """一次松弛求解的结果"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    program: str = Field(description="eig-min / trace-min / psd-rank")
    mode: RelaxationMode
    order: int
    status: BoundStatus
    primal_bound: float = Field(description="SOHS 一侧的界，可为 ±inf")
    dual_bound: float = Field(description="矩一侧的界，可为 ±inf")
    primal_status: str
    dual_status: str
    gap: float = float("nan")
    sample_bound: Optional[float] = None
    certificate: Optional[SohsCertificate] = None
    moment_matrix: Optional[np.ndarray] = None
    solution: Optional[SdpSolution] = None
    symmetrized: bool = False
    metadata: Dict[str, Any] = Field(default_factory=dict)
    timings: Dict[str, float] = Field(default_factory=dict)

    @property
    def value(self) -> float:
        """对外报告的界：优先取矩一侧"""
        return self.dual_bound

    def duality_ok(self, tol: float = DUALITY_TOL) -> bool:
        if self.status != BoundStatus.OPTIMAL:
            return True
        return abs(self.primal_bound - self.dual_bound) <= tol * (1 + abs(self.dual_bound))


def _classify(solution: SdpSolution, offset: float) -> Tuple[BoundStatus, float, float, str, str]:
    if solution.is_usable():
        return (BoundStatus.OPTIMAL, offset + solution.primal_value, offset + solution.dual_value,
                "Optimal", "Optimal")
    if solution.status == SdpStatus.PRIMAL_INFEASIBLE:
        logger.info(f"矩规划无下界，界为 −inf（{solution.message}）")
        return BoundStatus.UNBOUNDED, -math.inf, -math.inf, "Infeasible", "Unbounded"
    if solution.status == SdpStatus.DUAL_INFEASIBLE:
        logger.info(f"矩规划不可行，界为 +inf（{solution.message}）")
        return BoundStatus.INFEASIBLE, math.inf, math.inf, "Unbounded", "Infeasible"
    status = BoundStatus(solution.status.value)
    logger.warning(f"求解未收敛: {solution.status.value}（{solution.message}）")
    return (status, offset + solution.primal_value, offset + solution.dual_value,
            solution.status.value, solution.status.value)


def _reconstruct_certificate(program: MomentProgram, solution: SdpSolution, target: NcPolynomial,
                             bound: float, tol: float) -> Optional[SohsCertificate]:
    """由原始变量 X 的各块重构 f − λ = Σ g_i* g_i + Σ_g Σ_j p_j* g p_j"""
    try:
        summands, eigenvalues = factor_psd(solution.X[0], program.templates[0].rows, tol)
        terms = []
        for template, X in zip(program.templates[1:], solution.X[1:]):
            weights, _ = factor_psd(X, template.rows, tol)
            terms.append(ConstraintTerm(constraint=template.g, weights=weights))
    except CertificateError as e:
        logger.warning(f"证书重构失败: {e}")
        return None
    shifted = target - NcPolynomial.constant(to_fraction(bound), target.nvars)
    cert = SohsCertificate(summands=summands, constraint_terms=terms, residual=shifted,
                           mode=program.layout.mode, eigenvalues=eigenvalues)
    cert.residual = shifted - cert.expand()
    return cert


def solve_program(program: MomentProgram, name: str, options: Optional[SolverOptions] = None,
                  target: Optional[NcPolynomial] = None, with_certificate: bool = False,
                  build_seconds: float = 0.0) -> BoundReport:
    """
    求解已组装的矩规划并整理两侧的界

    Args:
        program: build_moment_program 的结果
        name: 规划名称（写入报告）
        options: 求解选项
        target: 证书要表示的多项式（对称化后的 f）
        with_certificate: 是否尝试重构 SOHS 证书
        build_seconds: 组装耗时

    Returns:
        BoundReport: 两侧的界与状态
    """
    layout = program.layout
    base = dict(program=name, mode=layout.mode, order=layout.degree)
    if program.sdp is None:
        logger.warning("等式约束矛盾，可行集为空")
        return BoundReport(**base, status=BoundStatus.INFEASIBLE, primal_bound=math.inf,
                           dual_bound=math.inf, primal_status="Unbounded", dual_status="Infeasible",
                           metadata={"reason": "inconsistent equalities"},
                           timings={"build": build_seconds, "solve": 0.0})

    options = options or SolverOptions.from_settings()
    started = time.perf_counter()
    solution = solve(program.sdp, options)
    solve_seconds = time.perf_counter() - started

    status, primal, dual, p_status, d_status = _classify(solution, program.offset)
    gap = float("nan") if status.is_classified else abs(primal - dual)
    report = BoundReport(**base, status=status, primal_bound=primal, dual_bound=dual,
                         primal_status=p_status, dual_status=d_status, gap=gap, solution=solution,
                         timings={"build": build_seconds, "solve": solve_seconds})
    report.metadata.update({
        "classes": layout.num_classes,
        "free_variables": len(program.affine.free),
        "block_sizes": [t.size for t in program.templates],
        "sdp_status": solution.status.value,
        "solver_message": solution.message,
    })
    if status == BoundStatus.OPTIMAL:
        y = program.class_values(solution.y)
        size = program.templates[0].size
        report.moment_matrix = (program.templates[0].operator() @ y).reshape(size, size)
        report.metadata["strong_duality"] = report.duality_ok()
        if not report.metadata["strong_duality"]:
            logger.warning(f"强对偶检查未通过: primal={primal:.10g}, dual={dual:.10g}")
        if with_certificate and target is not None:
            report.certificate = _reconstruct_certificate(program, solution, target, primal,
                                                          get_settings().eig_tol)
    return report


def build_problem_program(prob: NcProblem) -> MomentProgram:
    """NcProblem 对应的矩规划（L(1) = 1）"""
    return build_moment_program(prob.objective, prob.inequalities, prob.equalities, prob.order, prob.kind)


def _minimize(prob: NcProblem, options: Optional[SolverOptions]) -> BoundReport:
    started = time.perf_counter()
    program = build_problem_program(prob)
    build_seconds = time.perf_counter() - started
    name = "eig-min" if prob.kind == RelaxationMode.EIGENVALUE else "trace-min"
    # 有等式约束时 f − λ 只在理想的商中成立，不给出证书
    report = solve_program(program, name, options, target=prob.objective,
                           with_certificate=not prob.equalities, build_seconds=build_seconds)
    report.symmetrized = prob.symmetrized
    report.metadata["archimedean"] = "assumed, not verified"
    return report


def eig_min_unconstrained(f: NcPolynomial, d: Optional[int] = None,
                          options: Optional[SolverOptions] = None) -> BoundReport:
    """
    无约束特征值最小化：max λ s.t. f − λ ∈ Σ_{2d}

    Args:
        f: 目标多项式（不对称时先对称化）
        d: 松弛阶数，缺省 ⌈deg f/2⌉
        options: 求解选项

    Returns:
        BoundReport: 无下界时界为 −inf
    """
    return _minimize(NcProblem(objective=f, kind=RelaxationMode.EIGENVALUE, order=d), options)


def trace_min_unconstrained(f: NcPolynomial, d: Optional[int] = None,
                            options: Optional[SolverOptions] = None) -> BoundReport:
    """无约束迹最小化：max τ s.t. f − τ 循环等价于 Σ_{2d} 中的元素"""
    return _minimize(NcProblem(objective=f, kind=RelaxationMode.TRACE, order=d), options)


def eig_min_constrained(prob: NcProblem, options: Optional[SolverOptions] = None) -> BoundReport:
    """
    约束特征值最小化：max λ s.t. f − λ ∈ Q(𝔤)_{2d}，𝔥 以零局部化等式施加

    Raises:
        NcOptError: prob.kind 不是 eigenvalue
    """
    if prob.kind != RelaxationMode.EIGENVALUE:
        raise NcOptError(f"eig_min_constrained 需要 eigenvalue 问题，得到 {prob.kind.value}")
    return _minimize(prob, options)


def trace_min_constrained(prob: NcProblem, options: Optional[SolverOptions] = None) -> BoundReport:
    """
    约束迹最小化：max τ s.t. f − τ ∈ Q^cyc(𝔤)_{2d}

    Raises:
        NcOptError: prob.kind 不是 trace
    """
    if prob.kind != RelaxationMode.TRACE:
        raise NcOptError(f"trace_min_constrained 需要 trace 问题，得到 {prob.kind.value}")
    report = _minimize(prob, options)
    report.metadata["convergence"] = "tracial Positivstellensatz applies only under Archimedean 𝔤"
    return report


def minimize(prob: NcProblem, options: Optional[SolverOptions] = None) -> BoundReport:
    """按 prob.kind 分派"""
    if prob.kind == RelaxationMode.TRACE:
        return trace_min_constrained(prob, options)
    return eig_min_constrained(prob, options)


class PsdRankProblem(BaseModel):
    """psd 秩下界规划的多项式数据：p+q 个字母，前 p 个对应行，后 q 个对应列"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    matrix: List[List[Fraction]]
    inequalities: List[NcPolynomial]
    equality: NcPolynomial
    fixed_words: Dict[Tuple[int, int], Fraction] = Field(description="词 x_i x_{p+j} -> M_ij")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.matrix), len(self.matrix[0])


def psd_rank_problem(M) -> PsdRankProblem:
    """
    由非负矩阵构造 psd 秩规划的约束

    Raises:
        NcOptError: M 为空、非矩形或含负元素
    """
    rows = [[to_fraction(v) for v in row] for row in M]
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise NcOptError("矩阵必须为非空矩形")
    if any(v < 0 for r in rows for v in r):
        raise NcOptError("矩阵必须逐元素非负")
    p, q = len(rows), len(rows[0])
    n = p + q
    ineqs = []
    for i in range(1, p + 1):
        x = NcPolynomial.variable(i, n)
        ineqs.append(x - x * x)
    for j in range(1, q + 1):
        x = NcPolynomial.variable(p + j, n)
        column_sum = sum((rows[i][j - 1] for i in range(p)), Fraction(0))
        ineqs.append(x * column_sum - x * x)
    h = NcPolynomial.constant(1, n)
    for i in range(1, p + 1):
        h = h - NcPolynomial.variable(i, n)
    fixed = {(i + 1, p + j + 1): rows[i][j] for i in range(p) for j in range(q)}
    return PsdRankProblem(matrix=rows, inequalities=ineqs, equality=h, fixed_words=fixed)


def build_psd_rank_program(data: PsdRankProblem, d: int) -> MomentProgram:
    """
    psd 秩规划：迹模式、不归一，目标为 L(1)

    Raises:
        DegreeOverflowError: d < 1
    """
    if d < 1:
        raise DegreeOverflowError(f"psd 秩规划需要 d ≥ 1，得到 {d}")
    n = sum(data.shape)
    objective = NcPolynomial.constant(1, n)
    fixed = [(NcPolynomial.from_word(word, n), value) for word, value in data.fixed_words.items()]
    return build_moment_program(objective, data.inequalities, [data.equality], d,
                                RelaxationMode.TRACE, normalized=False, fixed=fixed)


def psd_rank_lower_bound(M, d: int = 2, options: Optional[SolverOptions] = None) -> BoundReport:
    """
    psd 秩的层级下界 ρ^(d)(M) = inf L(1)

    约束：L(x_i x_{p+j}) = M_ij，g ∈ 𝔤 ∪ {1} 的局部化矩阵半正定，M(hL) = 0，L 为迹泛函。
    注意这些近似收敛时也未必收敛到 psd 秩本身。

    Args:
        M: p×q 非负矩阵
        d: 松弛阶数，≥ 1
        options: 求解选项

    Returns:
        BoundReport: dual_bound 即 ρ^(d)(M)
    """
    data = psd_rank_problem(M)
    started = time.perf_counter()
    program = build_psd_rank_program(data, d)
    build_seconds = time.perf_counter() - started
    report = solve_program(program, "psd-rank", options, build_seconds=build_seconds)
    report.metadata.update({
        "matrix_shape": list(data.shape),
        "caveat": "approximations may converge without converging to the psd rank",
    })
    return report
