#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
半定规划数据模型
标准原始形式：max ⟨C,X⟩ s.t. ⟨A_j,X⟩ = b_j, X ⪰ 0
对偶形式：   min bᵀy  s.t. Z = Σ y_j A_j − C ⪰ 0
"""

from typing import List, Optional

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, Field

from ..utils import get_settings
from .sdp_types import SdpDimensionError, SdpStatus


class SolverOptions(BaseModel):
    """内点法选项（所有容差集中在此）"""
    tol_feas: float = Field(default=1e-8, description="相对可行性容差")
    tol_gap: float = Field(default=1e-8, description="相对对偶间隙容差")
    max_iter: int = Field(default=200, description="最大迭代次数")
    infeas_tol: float = Field(default=1e-8, description="不可行射线残差阈值")
    diverge_bound: float = Field(default=1e10, description="目标发散阈值")
    step_fraction: float = Field(default=0.95, description="到边界的步长比例")

    @classmethod
    def from_settings(cls, **overrides) -> "SolverOptions":
        """以运行配置为默认值构造，overrides 中的 None 被忽略"""
        settings = get_settings()
        values = dict(tol_feas=settings.tol_feas, tol_gap=settings.tol_gap, max_iter=settings.max_iter)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class SdpProblem(BaseModel):
    """
    块对角半定规划数据

    block_sizes 中的负数表示对角块（数据只在对角线上）；
    C[k] 为第 k 块的稠密对称矩阵，A[j][k] 为第 j 个约束在第 k 块上的稀疏对称矩阵。
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    block_sizes: List[int] = Field(description="块尺寸，负数为对角块")
    C: List[np.ndarray] = Field(description="目标矩阵（按块）")
    A: List[List[sp.csr_matrix]] = Field(description="约束矩阵（按约束、按块）")
    b: np.ndarray = Field(description="约束右端项")

    @property
    def num_constraints(self) -> int:
        return len(self.A)

    @property
    def dims(self) -> List[int]:
        return [abs(s) for s in self.block_sizes]

    @classmethod
    def build(cls, block_sizes: List[int], C: Optional[List[np.ndarray]],
              A: List[List], b) -> "SdpProblem":
        """
        构造并校验问题，稀疏矩阵统一为 csr，C 为 None 时为可行性问题

        Raises:
            SdpDimensionError: 维度不一致或矩阵不对称
        """
        dims = [abs(s) for s in block_sizes]
        if C is None:
            C = [np.zeros((n, n)) for n in dims]
        problem = cls(
            block_sizes=list(block_sizes),
            C=[np.asarray(c, dtype=float) for c in C],
            A=[[sp.csr_matrix(blk, dtype=float) for blk in row] for row in A],
            b=np.asarray(b, dtype=float).reshape(-1),
        )
        problem.validate_data()
        return problem

    def validate_data(self) -> None:
        dims = self.dims
        if len(self.C) != len(dims):
            raise SdpDimensionError(f"C 的块数 {len(self.C)} 与块尺寸数 {len(dims)} 不一致")
        if len(self.A) != self.b.shape[0]:
            raise SdpDimensionError(f"约束个数 {len(self.A)} 与 b 的长度 {self.b.shape[0]} 不一致")
        for k, (mat, n) in enumerate(zip(self.C, dims)):
            if mat.shape != (n, n):
                raise SdpDimensionError(f"C 第{k + 1}块尺寸 {mat.shape} 应为 {(n, n)}")
            if not np.allclose(mat, mat.T, atol=1e-12):
                raise SdpDimensionError(f"C 第{k + 1}块不对称")
        for j, row in enumerate(self.A):
            if len(row) != len(dims):
                raise SdpDimensionError(f"A_{j + 1} 的块数 {len(row)} 与块尺寸数不一致")
            for k, (mat, n) in enumerate(zip(row, dims)):
                if mat.shape != (n, n):
                    raise SdpDimensionError(f"A_{j + 1} 第{k + 1}块尺寸 {mat.shape} 应为 {(n, n)}")
        for k, (size, n) in enumerate(zip(self.block_sizes, dims)):
            if size < 0:
                if np.count_nonzero(self.C[k] - np.diag(np.diag(self.C[k]))):
                    raise SdpDimensionError(f"第{k + 1}块声明为对角块但含非对角元")
                self._stacked(k, diagonal=True)
                continue
            P = self._stacked(k, diagonal=False)
            idx = np.arange(n * n)
            diff = abs(P - P[:, (idx % n) * n + idx // n])
            if diff.nnz:
                worst = np.asarray(diff.max(axis=1).todense()).ravel()
                bad = np.flatnonzero(worst > 1e-12)
                if bad.size:
                    raise SdpDimensionError(f"A_{bad[0] + 1} 第{k + 1}块不对称")

    def _stacked(self, k: int, diagonal: bool) -> sp.csr_matrix:
        n = self.dims[k]
        rows, cols, vals = [np.zeros(0, dtype=np.int64)], [np.zeros(0, dtype=np.int64)], [np.zeros(0)]
        for j, row in enumerate(self.A):
            coo = row[k].tocoo()
            if diagonal:
                off = coo.row != coo.col
                if off.any() and np.any(coo.data[off]):
                    raise SdpDimensionError(f"第{k + 1}块声明为对角块但 A_{j + 1} 含非对角元")
                keep = ~off
                rows.append(np.full(int(keep.sum()), j, dtype=np.int64))
                cols.append(coo.row[keep].astype(np.int64))
                vals.append(coo.data[keep])
            else:
                rows.append(np.full(coo.nnz, j, dtype=np.int64))
                cols.append(coo.row.astype(np.int64) * n + coo.col)
                vals.append(coo.data)
        width = n if diagonal else n * n
        return sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                             shape=(self.num_constraints, width))

    def block_operator(self, k: int) -> sp.csr_matrix:
        """
        第 k 块上全部约束的堆叠算子

        稠密块为 约束数 × n² 的展平矩阵（第 j 行即 vec(A_j)）；对角块只保留对角线，为 约束数 × n。

        Raises:
            SdpDimensionError: 对角块的约束含非对角元
        """
        return self._stacked(k, diagonal=self.block_sizes[k] < 0)

    def same_as(self, other: "SdpProblem") -> bool:
        """数据逐元素精确相等"""
        if self.block_sizes != other.block_sizes or self.num_constraints != other.num_constraints:
            return False
        if not np.array_equal(self.b, other.b):
            return False
        if any(not np.array_equal(c1, c2) for c1, c2 in zip(self.C, other.C)):
            return False
        for row1, row2 in zip(self.A, other.A):
            for m1, m2 in zip(row1, row2):
                if (m1 != m2).nnz:
                    return False
        return True


class SdpSolution(BaseModel):
    """求解结果"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    status: SdpStatus
    X: List[np.ndarray] = Field(default_factory=list, description="原始矩阵（按块）")
    y: np.ndarray = Field(default_factory=lambda: np.zeros(0), description="对偶向量")
    Z: List[np.ndarray] = Field(default_factory=list, description="对偶松弛矩阵（按块）")
    primal_value: float = Field(default=float("nan"), description="⟨C,X⟩")
    dual_value: float = Field(default=float("nan"), description="bᵀy")
    gap: float = Field(default=float("nan"), description="|primal − dual|")
    primal_infeasibility: float = Field(default=float("nan"), description="‖A(X) − b‖∞/(1+‖b‖∞)")
    dual_infeasibility: float = Field(default=float("nan"), description="‖A*(y) − C − Z‖_F/(1+‖C‖_F)")
    iterations: int = 0
    message: str = ""

    def is_usable(self, tol: float = 1e-6) -> bool:
        """最优，或在放宽容差下残差足够小（数值困难/迭代上限时）"""
        if self.status == SdpStatus.OPTIMAL:
            return True
        if self.status not in (SdpStatus.NUMERICAL_TROUBLE, SdpStatus.ITERATION_LIMIT):
            return False
        scale = 1.0 + abs(self.primal_value)
        return (self.primal_infeasibility <= tol and self.dual_infeasibility <= tol
                and self.gap <= tol * scale)
