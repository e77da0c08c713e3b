#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
稠密原始-对偶内点法
Nesterov–Todd 缩放 + Mehrotra 预测-校正，Schur 补经对角均衡后 Cholesky 分解并做迭代精化。
面向 s(d,n) 不超过数百的桌面规模问题；对角块按元素处理。

不可行/无界判定为启发式：目标发散超过 diverge_bound，或归一化改进射线残差低于 infeas_tol。
未收敛时返回迭代过程中残差与间隙最好的点。
"""

import logging
import math
import warnings
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from .sdp_problem import SdpProblem, SdpSolution, SolverOptions
from .sdp_types import SdpStatus

logger = logging.getLogger(__name__)

# Schur 补分批计算时单批稠密缓冲的元素上限
_SCHUR_BATCH_ELEMENTS = 4_000_000
# Schur 方程迭代精化的最多步数
_REFINE_STEPS = 3
# 最好点已满足放宽容差后，连续这么多次迭代没有改进即停止
_NO_PROGRESS_LIMIT = 6
# 放宽容差，与 SdpSolution.is_usable 的缺省值一致
_USABLE_TOL = 1e-6
# 缩放矩阵特征值相对最大值的下限
_EIG_FLOOR = 1e-24


def _sym(M: np.ndarray) -> np.ndarray:
    return (M + M.T) / 2


def _psd_root(M: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    M = L Lᵀ 的因子 L 及其逆

    Cholesky 失败（舍入使 M 略失正定）时改用特征分解，把过小的特征值抬到相对下限。

    Raises:
        la.LinAlgError: M 没有正特征值或含非有限值
    """
    try:
        L = la.cholesky(M, lower=True, check_finite=False)
        return L, la.solve_triangular(L, np.eye(M.shape[0]), lower=True, check_finite=False)
    except la.LinAlgError:
        pass
    if not np.all(np.isfinite(M)):
        raise la.LinAlgError("矩阵含非有限值")
    w, U = la.eigh(_sym(M))
    if w[-1] <= 0:
        raise la.LinAlgError("矩阵没有正特征值")
    s = np.sqrt(np.maximum(w, w[-1] * np.finfo(float).eps))
    return U * s, (U / s).T


class _DenseScaling:
    """NT 缩放：W = R Rᵀ，满足 W Z W = X，缩放后 V = R⁻¹ X R⁻ᵀ = Rᵀ Z R = diag(v)"""

    __slots__ = ("R", "R_inv", "W", "v")

    def __init__(self, X: np.ndarray, Z: np.ndarray):
        L, L_inv = _psd_root(X)
        d, U = la.eigh(_sym(L.T @ Z @ L))
        if not d[-1] > 0:
            raise la.LinAlgError("XZ 没有正特征值")
        d = np.maximum(d, d[-1] * _EIG_FLOOR)
        self.v = np.sqrt(d)
        q = d ** -0.25
        self.R = (L @ U) * q
        self.R_inv = (U.T / q[:, None]) @ L_inv
        self.W = self.R @ self.R.T

    def sandwich(self, M: np.ndarray) -> np.ndarray:
        return self.W @ M @ self.W

    def _lift(self, target: np.ndarray) -> np.ndarray:
        """解 (V H + H V)/2 = target，返回 R H Rᵀ"""
        H = 2.0 * target / (self.v[:, None] + self.v[None, :])
        return self.R @ H @ self.R.T

    def predictor_rhs(self) -> np.ndarray:
        return self._lift(-np.diag(self.v ** 2))

    def corrector_rhs(self, sigma_mu: float, dX: np.ndarray, dZ: np.ndarray) -> np.ndarray:
        sdx = self.R_inv @ dX @ self.R_inv.T
        sdz = self.R.T @ dZ @ self.R
        target = sigma_mu * np.eye(len(self.v)) - np.diag(self.v ** 2) - _sym(sdx @ sdz)
        return self._lift(target)


class _DiagScaling:
    """对角块的 NT 缩放：W² = x/z，v = √(xz)"""

    __slots__ = ("x", "z", "w2")

    def __init__(self, x: np.ndarray, z: np.ndarray):
        if not (np.all(x > 0) and np.all(z > 0)):
            raise la.LinAlgError("对角块离开正锥")
        self.x = x
        self.z = z
        self.w2 = x / z

    def sandwich(self, m: np.ndarray) -> np.ndarray:
        return self.w2 * m

    def predictor_rhs(self) -> np.ndarray:
        return -self.x

    def corrector_rhs(self, sigma_mu: float, dx: np.ndarray, dz: np.ndarray) -> np.ndarray:
        return (sigma_mu - self.x * self.z - dx * dz) / self.z


class _DenseBlock:
    """半正定块：PT 第 j 行为 vec(A_j)，entries 缓存各活跃约束的非零三元组"""

    __slots__ = ("n", "C", "PT", "active", "PT_active", "entries")

    def __init__(self, n: int, C: np.ndarray, PT: sp.csr_matrix):
        self.n = n
        self.C = C
        self.PT = PT
        self.active = np.flatnonzero(np.diff(PT.indptr))
        self.PT_active = PT[self.active]
        self.entries = []
        for j in self.active:
            start, end = PT.indptr[j], PT.indptr[j + 1]
            idx = PT.indices[start:end]
            self.entries.append((idx // n, idx % n, PT.data[start:end]))

    def identity(self) -> np.ndarray:
        return np.eye(self.n)

    @staticmethod
    def inner(A: np.ndarray, B: np.ndarray) -> float:
        return float(np.sum(A * B))

    def apply(self, X: np.ndarray) -> np.ndarray:
        return self.PT @ X.ravel()

    def adjoint(self, y: np.ndarray) -> np.ndarray:
        return (self.PT.T @ y).reshape(self.n, self.n)

    @staticmethod
    def symmetrize(M: np.ndarray) -> np.ndarray:
        return _sym(M)

    @staticmethod
    def scaling(X: np.ndarray, Z: np.ndarray) -> _DenseScaling:
        return _DenseScaling(X, Z)

    @staticmethod
    def max_step(M: np.ndarray, D: np.ndarray) -> float:
        """M ⪰ 0 沿方向 D 保持半正定的最大步长"""
        _, L_inv = _psd_root(M)
        lam = la.eigvalsh(_sym(L_inv @ D @ L_inv.T))[0]
        return math.inf if lam >= 0 else -1.0 / lam

    @staticmethod
    def least_eigenvalue(M: np.ndarray) -> float:
        return float(la.eigvalsh(M)[0]) if M.size else 0.0

    @staticmethod
    def as_matrix(M: np.ndarray) -> np.ndarray:
        return M

    def add_schur(self, S: np.ndarray, sc: _DenseScaling) -> None:
        """把 S_ij = ⟨A_i, W A_j W⟩ 的下三角部分累加进 S"""
        act = self.active
        if not act.size:
            return
        W = sc.W
        nn = self.n * self.n
        batch = max(1, _SCHUR_BATCH_ELEMENTS // nn)
        for start in range(0, act.size, batch):
            stop = min(start + batch, act.size)
            cols = np.empty((nn, stop - start))
            for k in range(start, stop):
                r, c, v = self.entries[k]
                cols[:, k - start] = ((W[:, r] * v) @ W[c, :]).ravel()
            S[np.ix_(act[start:], act[start:stop])] += self.PT_active[start:] @ cols


class _DiagBlock:
    """对角块：X、Z、C 都以对角线向量存放，PT 第 j 行为 A_j 的对角线"""

    __slots__ = ("n", "C", "PT")

    def __init__(self, n: int, C: np.ndarray, PT: sp.csr_matrix):
        self.n = n
        self.C = np.diag(C).copy()
        self.PT = PT

    def identity(self) -> np.ndarray:
        return np.ones(self.n)

    @staticmethod
    def inner(a: np.ndarray, b: np.ndarray) -> float:
        return float(a @ b)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.PT @ x

    def adjoint(self, y: np.ndarray) -> np.ndarray:
        return self.PT.T @ y

    @staticmethod
    def symmetrize(m: np.ndarray) -> np.ndarray:
        return m

    @staticmethod
    def scaling(x: np.ndarray, z: np.ndarray) -> _DiagScaling:
        return _DiagScaling(x, z)

    @staticmethod
    def max_step(m: np.ndarray, dm: np.ndarray) -> float:
        neg = dm < 0
        if not neg.any():
            return math.inf
        return float(np.min(-m[neg] / dm[neg]))

    @staticmethod
    def least_eigenvalue(m: np.ndarray) -> float:
        return float(np.min(m)) if m.size else 0.0

    @staticmethod
    def as_matrix(m: np.ndarray) -> np.ndarray:
        return np.diag(m)

    def add_schur(self, S: np.ndarray, sc: _DiagScaling) -> None:
        if self.PT.nnz:
            S += (self.PT @ sp.diags(sc.w2) @ self.PT.T).toarray()


class _SchurSystem:
    """
    Schur 补方程 S dy = r

    先做对角均衡 D S D，Cholesky 失败时改用 LU；解含非有限值时退回最小二乘。
    每次求解后对原始 S 做若干步迭代精化。
    """

    def __init__(self, S: np.ndarray):
        self.S = S
        diag = np.diag(S)
        self.scale = 1.0 / np.sqrt(np.where(diag > 0, diag, 1.0))
        equilibrated = S * self.scale[:, None] * self.scale[None, :]
        try:
            self.factor = la.cho_factor(equilibrated, lower=True, check_finite=False)
            self.kind = "cholesky"
        except la.LinAlgError:
            logger.debug("Schur 补不正定，改用 LU 分解")
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", la.LinAlgWarning)
                self.factor = la.lu_factor(equilibrated, check_finite=False)
            self.kind = "lu"

    def _solve_once(self, rhs: np.ndarray) -> np.ndarray:
        r = rhs * self.scale
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", la.LinAlgWarning)
            if self.kind == "cholesky":
                x = la.cho_solve(self.factor, r, check_finite=False)
            else:
                x = la.lu_solve(self.factor, r, check_finite=False)
        x = x * self.scale
        if not np.all(np.isfinite(x)):
            logger.debug("Schur 分解求解失败，改用最小二乘")
            x = la.lstsq(self.S, rhs, check_finite=False)[0]
        return x

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        x = self._solve_once(rhs)
        residual = rhs - self.S @ x
        norm = float(np.linalg.norm(residual))
        floor = np.finfo(float).eps * float(np.linalg.norm(rhs))
        for _ in range(_REFINE_STEPS):
            if norm <= floor:
                break
            candidate = x + self._solve_once(residual)
            new_residual = rhs - self.S @ candidate
            new_norm = float(np.linalg.norm(new_residual))
            if not new_norm < norm:
                break
            x, residual, norm = candidate, new_residual, new_norm
        return x


class _Point:
    """一个迭代点及其残差"""

    __slots__ = ("X", "y", "Z", "rp", "Rd", "pobj", "dobj", "pinf", "dinf", "gap", "mu", "iteration")

    def relative_gap(self) -> float:
        return self.gap / (1.0 + abs(self.pobj))

    def merit(self, opts: SolverOptions) -> float:
        return max(self.pinf / opts.tol_feas, self.dinf / opts.tol_feas, self.relative_gap() / opts.tol_gap)

    def converged(self, opts: SolverOptions) -> bool:
        return self.pinf <= opts.tol_feas and self.dinf <= opts.tol_feas and self.relative_gap() <= opts.tol_gap

    def usable(self) -> bool:
        return self.pinf <= _USABLE_TOL and self.dinf <= _USABLE_TOL and self.relative_gap() <= _USABLE_TOL

    def finite(self) -> bool:
        return all(math.isfinite(v) for v in (self.pobj, self.dobj, self.pinf, self.dinf, self.mu))


def _all_finite(*groups) -> bool:
    for group in groups:
        items = group if isinstance(group, list) else [group]
        if not all(np.all(np.isfinite(item)) for item in items):
            return False
    return True


class InteriorPointSolver:
    """
    原始-对偶路径跟踪内点法（不可行起点）

    原始：max ⟨C,X⟩ s.t. A(X) = b, X ⪰ 0
    对偶：min bᵀy  s.t. Z = A*(y) − C ⪰ 0
    """

    def __init__(self, options: Optional[SolverOptions] = None):
        self.options = options or SolverOptions.from_settings()

    def solve(self, problem: SdpProblem) -> SdpSolution:
        problem.validate_data()
        blocks = []
        for k, (size, C) in enumerate(zip(problem.block_sizes, problem.C)):
            PT = problem.block_operator(k)
            blocks.append(_DiagBlock(-size, C, PT) if size < 0 else _DenseBlock(size, C, PT))
        if problem.num_constraints == 0:
            return self._solve_unconstrained(blocks)
        return self._iterate(blocks, problem.b, problem.num_constraints)

    # ---------- 无约束情形 ----------

    def _solve_unconstrained(self, blocks) -> SdpSolution:
        """m = 0：原始 max ⟨C,X⟩ 有界当且仅当 C ⪯ 0，此时最优值为 0"""
        tol = self.options.tol_feas
        worst = min((blk.least_eigenvalue(-blk.C) for blk in blocks), default=0.0)
        status = SdpStatus.OPTIMAL if worst >= -tol else SdpStatus.DUAL_INFEASIBLE
        value = 0.0 if status == SdpStatus.OPTIMAL else math.inf
        logger.info(f"无约束半定规划: {status.value}")
        return SdpSolution(status=status, X=[np.zeros((blk.n, blk.n)) for blk in blocks], y=np.zeros(0),
                           Z=[blk.as_matrix(-blk.C) for blk in blocks], primal_value=value,
                           dual_value=0.0, gap=0.0 if value == 0.0 else math.inf,
                           primal_infeasibility=0.0, dual_infeasibility=0.0, iterations=0,
                           message="没有等式约束")

    # ---------- 主迭代 ----------

    @staticmethod
    def _A(blocks, X) -> np.ndarray:
        return sum(blk.apply(x) for blk, x in zip(blocks, X))

    @staticmethod
    def _At(blocks, y) -> List[np.ndarray]:
        return [blk.adjoint(y) for blk in blocks]

    def _initial_point(self, blocks, b):
        n_total = sum(blk.n for blk in blocks)
        root = math.sqrt(n_total)
        a_norms = np.zeros(b.shape[0])
        for blk in blocks:
            a_norms += np.asarray(blk.PT.multiply(blk.PT).sum(axis=1)).ravel()
        a_norms = np.sqrt(a_norms)
        c_norm = math.sqrt(sum(blk.inner(blk.C, blk.C) for blk in blocks))
        xi = max(10.0, root, float(np.max(root * (1 + np.abs(b)) / (1 + a_norms))))
        eta = max(10.0, root, float(np.max(a_norms)), c_norm)
        X = [xi * blk.identity() for blk in blocks]
        Z = [eta * blk.identity() for blk in blocks]
        return X, np.zeros(b.shape[0]), Z

    def _measure(self, blocks, b, X, y, Z, iteration, b_norm, c_norm, n_total) -> _Point:
        point = _Point()
        point.X, point.y, point.Z, point.iteration = X, y, Z, iteration
        point.rp = b - self._A(blocks, X)
        point.Rd = [aty - blk.C - z for aty, blk, z in zip(self._At(blocks, y), blocks, Z)]
        point.pobj = sum(blk.inner(blk.C, x) for blk, x in zip(blocks, X))
        point.dobj = float(b @ y)
        point.pinf = float(np.max(np.abs(point.rp))) / b_norm
        point.dinf = math.sqrt(sum(blk.inner(r, r) for blk, r in zip(blocks, point.Rd))) / c_norm
        point.gap = abs(point.pobj - point.dobj)
        point.mu = sum(blk.inner(x, z) for blk, x, z in zip(blocks, X, Z)) / n_total
        return point

    def _iterate(self, blocks, b: np.ndarray, m: int) -> SdpSolution:
        opts = self.options
        X, y, Z = self._initial_point(blocks, b)
        n_total = sum(blk.n for blk in blocks)
        b_norm = 1.0 + float(np.max(np.abs(b)))
        c_norm = 1.0 + math.sqrt(sum(blk.inner(blk.C, blk.C) for blk in blocks))
        status = SdpStatus.ITERATION_LIMIT
        message = "达到迭代上限"
        last: Optional[_Point] = None
        best: Optional[_Point] = None
        stalls = since_best = 0
        iteration = 0

        for iteration in range(1, opts.max_iter + 1):
            point = self._measure(blocks, b, X, y, Z, iteration, b_norm, c_norm, n_total)
            if not point.finite():
                status, message = SdpStatus.NUMERICAL_TROUBLE, "迭代点含非有限值"
                break
            last = point
            logger.debug(f"iter {iteration:3d} pobj={point.pobj:+.10e} dobj={point.dobj:+.10e} "
                         f"pinf={point.pinf:.2e} dinf={point.dinf:.2e} mu={point.mu:.2e}")

            if point.converged(opts):
                best = point
                status, message = SdpStatus.OPTIMAL, "收敛"
                break
            if best is None or point.merit(opts) < best.merit(opts):
                best, since_best = point, 0
            else:
                since_best += 1
            verdict = self._infeasibility(blocks, point, b)
            if verdict is not None:
                status, message = verdict
                break
            if best.usable() and since_best >= _NO_PROGRESS_LIMIT:
                status, message = SdpStatus.NUMERICAL_TROUBLE, f"连续 {since_best} 次迭代没有改进"
                break

            try:
                with np.errstate(all="ignore"):
                    X, y, Z, ap, ad = self._step(blocks, point, m, n_total)
            except (la.LinAlgError, ValueError, ArithmeticError) as e:
                status, message = SdpStatus.NUMERICAL_TROUBLE, f"线性代数失败: {e}"
                break

            stalls = stalls + 1 if max(ap, ad) < 1e-8 else 0
            if stalls >= 3:
                status, message = SdpStatus.NUMERICAL_TROUBLE, "步长停滞"
                break

        result = best if status == SdpStatus.OPTIMAL else last
        if status in (SdpStatus.ITERATION_LIMIT, SdpStatus.NUMERICAL_TROUBLE) and last is not None:
            late = self._late_divergence(last)
            if late is not None:
                status, message = late
            elif best is not None:
                result = best
                message = f"{message}；返回第 {best.iteration} 次迭代的最好点"
        if result is None:
            return SdpSolution(status=status, X=[blk.as_matrix(x) for blk, x in zip(blocks, X)], y=y,
                               Z=[blk.as_matrix(z) for blk, z in zip(blocks, Z)],
                               iterations=iteration, message=message)

        logger.info(f"半定规划结束: {status.value} ({message}), iter={iteration}, "
                    f"primal={result.pobj:.10g}, dual={result.dobj:.10g}")
        return SdpSolution(status=status, X=[blk.as_matrix(x) for blk, x in zip(blocks, result.X)],
                           y=result.y, Z=[blk.as_matrix(z) for blk, z in zip(blocks, result.Z)],
                           primal_value=result.pobj, dual_value=result.dobj, gap=result.gap,
                           primal_infeasibility=result.pinf, dual_infeasibility=result.dinf,
                           iterations=iteration, message=message)

    def _step(self, blocks, point: _Point, m: int, n_total: int):
        """一次预测-校正步，返回新的 (X, y, Z) 与原始/对偶步长"""
        X, y, Z = point.X, point.y, point.Z
        scalings = [blk.scaling(x, z) for blk, x, z in zip(blocks, X, Z)]
        S = np.zeros((m, m))
        for blk, sc in zip(blocks, scalings):
            blk.add_schur(S, sc)
        S = np.tril(S)
        S += np.tril(S, -1).T
        system = _SchurSystem(S)

        # 预测步
        rhs_pred = [sc.predictor_rhs() for sc in scalings]
        dX_a, _, dZ_a = self._direction(blocks, scalings, system, rhs_pred, point.rp, point.Rd)
        ap = min(1.0, min(blk.max_step(x, dx) for blk, x, dx in zip(blocks, X, dX_a)))
        ad = min(1.0, min(blk.max_step(z, dz) for blk, z, dz in zip(blocks, Z, dZ_a)))
        mu_aff = sum(blk.inner(x + ap * dx, z + ad * dz)
                     for blk, x, dx, z, dz in zip(blocks, X, dX_a, Z, dZ_a)) / n_total
        mu = point.mu
        sigma = min(1.0, max(0.0, (mu_aff / mu) ** 3)) if mu > 0 else 0.0

        # 校正步
        rhs_corr = [sc.corrector_rhs(sigma * mu, dx, dz) for sc, dx, dz in zip(scalings, dX_a, dZ_a)]
        dX, dy, dZ = self._direction(blocks, scalings, system, rhs_corr, point.rp, point.Rd)

        gamma = self.options.step_fraction
        ap = min(1.0, gamma * min(blk.max_step(x, dx) for blk, x, dx in zip(blocks, X, dX)))
        ad = min(1.0, gamma * min(blk.max_step(z, dz) for blk, z, dz in zip(blocks, Z, dZ)))
        X = [blk.symmetrize(x + ap * dx) for blk, x, dx in zip(blocks, X, dX)]
        y = y + ad * dy
        Z = [blk.symmetrize(z + ad * dz) for blk, z, dz in zip(blocks, Z, dZ)]
        return X, y, Z, ap, ad

    def _direction(self, blocks, scalings, system: _SchurSystem, Rc, rp, Rd):
        """
        解 Newton 系统
            A(dX) = rp,  dZ = A*(dy) + Rd,  dX + W dZ W = Rc

        Raises:
            FloatingPointError: 方向含非有限值
        """
        pieces = [rc - sc.sandwich(rd) for rc, sc, rd in zip(Rc, scalings, Rd)]
        dy = system.solve(self._A(blocks, pieces) - rp)
        Aty = self._At(blocks, dy)
        dZ = [blk.symmetrize(aty + rd) for blk, aty, rd in zip(blocks, Aty, Rd)]
        dX = [blk.symmetrize(piece - sc.sandwich(aty))
              for blk, piece, sc, aty in zip(blocks, pieces, scalings, Aty)]
        if not _all_finite(dX, dy, dZ):
            raise FloatingPointError("搜索方向含非有限值")
        return dX, dy, dZ

    def _infeasibility(self, blocks, point: _Point, b: np.ndarray):
        """基于改进射线与目标发散的不可行判定"""
        opts = self.options
        pobj, dobj = point.pobj, point.dobj
        # 原始不可行：存在 ȳ 使 A*(ȳ) ⪰ 0 且 bᵀȳ < 0，对偶目标趋于 −∞
        if dobj < -1e-6:
            ray = math.sqrt(sum(blk.inner(blk.C + r, blk.C + r) for blk, r in zip(blocks, point.Rd))) / abs(dobj)
            if ray <= opts.infeas_tol:
                return SdpStatus.PRIMAL_INFEASIBLE, f"对偶改进射线残差 {ray:.1e}"
        if dobj < -opts.diverge_bound and point.dinf <= 1e-6:
            return SdpStatus.PRIMAL_INFEASIBLE, f"对偶目标发散 {dobj:.3e}"
        # 对偶不可行：存在 X ⪰ 0 使 A(X) = 0 且 ⟨C,X⟩ > 0，原始目标趋于 +∞
        if pobj > 1e-6:
            ax = float(np.max(np.abs(b - point.rp))) if b.size else 0.0
            ray = ax / pobj
            if ray <= opts.infeas_tol:
                return SdpStatus.DUAL_INFEASIBLE, f"原始改进射线残差 {ray:.1e}"
        if pobj > opts.diverge_bound and point.pinf <= 1e-6:
            return SdpStatus.DUAL_INFEASIBLE, f"原始目标发散 {pobj:.3e}"
        return None

    @staticmethod
    def _late_divergence(point: _Point):
        """迭代未收敛时的兜底判定：一侧可行且目标量级远超另一侧"""
        pobj, dobj, pinf, dinf = point.pobj, point.dobj, point.pinf, point.dinf
        if dinf <= 1e-6 and pinf > 1e-6 and dobj < -1e6 * (1 + abs(pobj)):
            return SdpStatus.PRIMAL_INFEASIBLE, f"对偶目标持续下降 {dobj:.3e}（启发式）"
        if pinf <= 1e-6 and dinf > 1e-6 and pobj > 1e6 * (1 + abs(dobj)):
            return SdpStatus.DUAL_INFEASIBLE, f"原始目标持续上升 {pobj:.3e}（启发式）"
        return None


def solve(problem: SdpProblem, options: Optional[SolverOptions] = None) -> SdpSolution:
    """
    求解标准形式半定规划

    Args:
        problem: 问题数据
        options: 求解选项，默认取运行配置

    Returns:
        SdpSolution: 含状态分类的解；数值失败时不抛出异常，状态为 NumericalTrouble
    """
    return InteriorPointSolver(options).solve(problem)
