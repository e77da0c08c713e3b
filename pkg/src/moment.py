#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
矩（对偶）侧机制
非交换 Hankel 矩阵、局部化矩阵、对称/循环等价下的元素识别，以及等式约束的精确消元。

约定：矩变量为每个识别类一个标量 y_c，类 0 恒为空词 {1}。
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, Field

from .freealg import (
    NcPolynomial,
    Word,
    WordBasis,
    basis_size,
    cyclic_canonical,
    enumerate_basis,
    iter_words,
    symmetric_canonical,
    word_key,
    word_star,
)
from .nc_types import DegreeOverflowError, InconsistentFunctionalError, NcOptError, NotSymmetricError, RelaxationMode

logger = logging.getLogger(__name__)

# 线性型：类编号 -> 系数
LinearForm = Dict[int, Fraction]


class MomentLayout:
    """
    次数 ≤ 2d 的全部词在识别关系下的划分

    特征值模式：w 与 w* 同类；迹模式：w 的全部旋转及其对合同类。
    """

    __slots__ = ("basis", "mode", "classes", "class_of")

    def __init__(self, basis: WordBasis, mode: RelaxationMode,
                 classes: List[List[Word]], class_of: Dict[Word, int]):
        self.basis = basis
        self.mode = mode
        self.classes = classes
        self.class_of = class_of

    @property
    def nvars(self) -> int:
        return self.basis.nvars

    @property
    def degree(self) -> int:
        return self.basis.degree

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def canonical(self, word: Word) -> Word:
        if self.mode == RelaxationMode.TRACE:
            return cyclic_canonical(word)
        return symmetric_canonical(word)

    def class_id(self, word: Word) -> int:
        try:
            return self.class_of[word]
        except KeyError:
            raise DegreeOverflowError(f"词长 {len(word)} 超过 2d = {2 * self.degree}")

    def class_sums(self, f: NcPolynomial) -> LinearForm:
        """L(f) 作为类变量的线性型：每类上系数求和"""
        form: LinearForm = {}
        for w, c in f.terms.items():
            cid = self.class_id(w)
            form[cid] = form.get(cid, Fraction(0)) + c
        return {cid: c for cid, c in form.items() if c != 0}

    def sub_basis(self, degree: int) -> WordBasis:
        """W_k（k ≤ d），即词基的前缀"""
        if degree < 0 or degree > self.degree:
            raise DegreeOverflowError(f"子词基次数 {degree} 不在 0..{self.degree}")
        size = basis_size(self.nvars, degree)
        return WordBasis(self.nvars, degree, self.basis.words[:size])

    def __repr__(self) -> str:
        return (f"MomentLayout(n={self.nvars}, d={self.degree}, mode={self.mode.value}, "
                f"classes={self.num_classes})")


def build_layout(n: int, d: int, mode: RelaxationMode = RelaxationMode.EIGENVALUE,
                 limit: Optional[int] = None) -> MomentLayout:
    """
    构造矩布局

    Args:
        n: 变量个数，≥ 1
        d: 松弛阶数，≥ 0
        mode: 识别模式
        limit: 词基规模上限（超过时抛出 BasisOverflowError）

    Returns:
        MomentLayout: 类个数即自由矩变量个数
    """
    basis = enumerate_basis(n, d, limit)
    keyed: Dict[Word, List[Word]] = {}
    canon = cyclic_canonical if mode == RelaxationMode.TRACE else symmetric_canonical
    for w in iter_words(n, 2 * d):
        keyed.setdefault(canon(w), []).append(w)
    class_of: Dict[Word, int] = {}
    classes: List[List[Word]] = []
    for cid, key in enumerate(sorted(keyed, key=word_key)):
        members = keyed[key]
        classes.append(members)
        for w in members:
            class_of[w] = cid
    layout = MomentLayout(basis, mode, classes, class_of)
    logger.debug(f"构造矩布局: {layout}")
    return layout


def _functional_value(L: Union[Mapping[Word, float], Callable[[Word], float]], word: Word):
    if callable(L):
        return L(word)
    return L.get(word, 0)


def hankel_from_functional(L: Union[Mapping[Word, float], Callable[[Word], float]],
                           layout: MomentLayout, tol: float = 1e-9) -> np.ndarray:
    """
    由线性泛函构造 Hankel 矩阵 M_{u,v} = L(u*v)

    Args:
        L: 词 -> 数值（映射或可调用对象），缺失的词视为 0
        layout: 矩布局
        tol: 类内一致性的相对容差

    Returns:
        np.ndarray: 对称矩阵

    Raises:
        InconsistentFunctionalError: L 在某个识别类上取值不一致
    """
    values: List[float] = []
    for members in layout.classes:
        vals = [_functional_value(L, w) for w in members]
        first = vals[0]
        scale = 1.0 + max(abs(float(v)) for v in vals)
        for w, v in zip(members, vals):
            if abs(float(v) - float(first)) > tol * scale:
                raise InconsistentFunctionalError(f"L 在类 {members[0]} 上不一致: {first} vs {v} (词 {w})")
        values.append(first)
    words = layout.basis.words
    size = len(words)
    M = np.zeros((size, size))
    for i, u in enumerate(words):
        u_star = word_star(u)
        for j in range(i, size):
            value = float(values[layout.class_of[u_star + words[j]]])
            M[i, j] = M[j, i] = value
    return M


class LocalizingTemplate:
    """
    局部化矩阵模板：entries[(i,j)] 为 L(u_i* g u_j) 关于类变量的线性型

    g = 1 时退化为 d 阶矩矩阵。
    """

    __slots__ = ("g", "d_g", "rows", "entries", "num_classes")

    def __init__(self, g: NcPolynomial, d_g: int, rows: WordBasis,
                 entries: Dict[Tuple[int, int], LinearForm], num_classes: int):
        self.g = g
        self.d_g = d_g
        self.rows = rows
        self.entries = entries
        self.num_classes = num_classes

    @property
    def size(self) -> int:
        return len(self.rows)

    def operator(self) -> sp.csr_matrix:
        """稀疏算子 T（size² × 类数），vec(M(gL)) = T y"""
        size = self.size
        r, c, v = [], [], []
        for (i, j), form in self.entries.items():
            for cid, coef in form.items():
                r.append(i * size + j)
                c.append(cid)
                v.append(float(coef))
        return sp.csr_matrix((v, (r, c)), shape=(size * size, self.num_classes))

    def instantiate(self, y: Sequence) -> np.ndarray:
        """代入类变量取值；y 为有理数时结果精确（object 数组）"""
        size = self.size
        exact = any(isinstance(value, Fraction) for value in y)
        M = np.zeros((size, size), dtype=object if exact else float)
        for (i, j), form in self.entries.items():
            M[i, j] = sum((coef * y[cid] for cid, coef in form.items()), Fraction(0) if exact else 0.0)
        return M


def _entry_form(layout: MomentLayout, u_star: Word, g_terms, v: Word) -> LinearForm:
    form: LinearForm = {}
    for w, coef in g_terms:
        cid = layout.class_of[u_star + w + v]
        form[cid] = form.get(cid, Fraction(0)) + coef
    return {cid: coef for cid, coef in form.items() if coef != 0}


def _localizing_entries(layout: MomentLayout, g: NcPolynomial, symmetric: bool):
    if g.is_zero():
        raise NcOptError("约束多项式不能为零")
    if g.nvars != layout.nvars:
        raise NcOptError(f"变量个数不一致: {g.nvars} vs {layout.nvars}")
    d_g = g.half_degree()
    if d_g > layout.degree:
        raise DegreeOverflowError(f"约束次数 d_g = {d_g} 超过松弛阶数 d = {layout.degree}")
    rows = layout.sub_basis(layout.degree - d_g)
    g_terms = list(g.terms.items())
    entries: Dict[Tuple[int, int], LinearForm] = {}
    words = rows.words
    for i, u in enumerate(words):
        u_star = word_star(u)
        start = i if symmetric else 0
        for j in range(start, len(words)):
            form = _entry_form(layout, u_star, g_terms, words[j])
            if not form:
                continue
            entries[(i, j)] = form
            if symmetric and i != j:
                entries[(j, i)] = form
    return d_g, rows, entries


def build_localizing(layout: MomentLayout, g: NcPolynomial) -> LocalizingTemplate:
    """
    构造 M_{d−d_g}(gL) 的模板

    Raises:
        NotSymmetricError: g 不对称
        DegreeOverflowError: d_g > d
        NcOptError: g = 0
    """
    if not g.is_symmetric():
        raise NotSymmetricError(f"局部化约束必须对称: {g}")
    d_g, rows, entries = _localizing_entries(layout, g, symmetric=True)
    return LocalizingTemplate(g, d_g, rows, entries, layout.num_classes)


def moment_template(layout: MomentLayout) -> LocalizingTemplate:
    """矩矩阵 M_d(L) 本身（g = 1）"""
    return build_localizing(layout, NcPolynomial.constant(1, layout.nvars))


def _normalize_form(form: LinearForm) -> Tuple[Tuple[int, Fraction], ...]:
    items = sorted(form.items())
    lead = items[0][1]
    return tuple((cid, coef / lead) for cid, coef in items)


def equality_rows(layout: MomentLayout, h: NcPolynomial) -> List[LinearForm]:
    """
    零局部化约束 M_{d−d_h}(hL) = 0 展开的线性等式（右端为 0），按支撑去重

    h 不要求对称；h = 0 时返回空列表。

    Raises:
        DegreeOverflowError: d_h > d
    """
    if h.is_zero():
        return []
    _, _, entries = _localizing_entries(layout, h, symmetric=False)
    seen = set()
    rows: List[LinearForm] = []
    for key in sorted(entries):
        form = entries[key]
        normal = _normalize_form(form)
        if normal in seen:
            continue
        seen.add(normal)
        rows.append(form)
    return rows


class EqualityConstraint(BaseModel):
    """等式约束 h = 0，以零局部化矩阵的形式施加"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    h: NcPolynomial
    kind: str = Field(default="zero-localizing", description="施加方式")

    def compile(self, layout: MomentLayout) -> List[LinearForm]:
        return equality_rows(layout, self.h)


class AffineSolution(BaseModel):
    """
    线性等式组的参数化 y = y0 + N z

    free 为自由类变量；consistent 为 False 时方程组无解。
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    y0: List[Fraction]
    free: List[int]
    N: sp.csr_matrix = Field(description="类数 × 自由变量数")
    consistent: bool = True
    rank: int = 0

    @property
    def y0_float(self) -> np.ndarray:
        return np.array([float(v) for v in self.y0])


def _substitute(form: LinearForm, const: Fraction,
                pivots: Dict[int, Tuple[LinearForm, Fraction]]) -> Tuple[LinearForm, Fraction]:
    """把 form 中的主元变量替换为其表达式，直到不含主元"""
    form = dict(form)
    while True:
        hits = [cid for cid in form if cid in pivots]
        if not hits:
            return form, const
        for cid in hits:
            a = form.pop(cid)
            expr, k = pivots[cid]
            const -= a * k
            for q, e in expr.items():
                value = form.get(q, Fraction(0)) + a * e
                if value:
                    form[q] = value
                else:
                    form.pop(q, None)


def solve_equalities(rows: Sequence[Tuple[LinearForm, Fraction]], num_vars: int) -> AffineSolution:
    """
    有理数上的稀疏 Gauss 消元，求 Σ a_c y_c = rhs 的全部解

    主元取每行中编号最大（词最长）的类变量，使高次矩由低次矩表示。

    Args:
        rows: (线性型, 右端项) 列表
        num_vars: 类变量个数

    Returns:
        AffineSolution: 解集的仿射参数化
    """
    pivots: Dict[int, Tuple[LinearForm, Fraction]] = {}
    order: List[int] = []
    consistent = True
    for form, rhs in rows:
        reduced, const = _substitute(form, Fraction(rhs), pivots)
        if not reduced:
            if const != 0:
                consistent = False
                logger.warning(f"等式约束矛盾: 0 = {const}")
            continue
        p = max(reduced)
        a = reduced.pop(p)
        pivots[p] = ({q: -e / a for q, e in reduced.items()}, const / a)
        order.append(p)

    # 逆序回代：后建立的主元表达式只含自由变量
    for p in reversed(order):
        expr, k = pivots[p]
        resolved, shift = _substitute(expr, Fraction(0), pivots)
        pivots[p] = (resolved, k - shift)

    free = [c for c in range(num_vars) if c not in pivots]
    column = {c: idx for idx, c in enumerate(free)}
    y0 = [Fraction(0)] * num_vars
    r, c, v = [], [], []
    for f in free:
        r.append(f)
        c.append(column[f])
        v.append(1.0)
    for p, (expr, k) in pivots.items():
        y0[p] = k
        for q, e in expr.items():
            r.append(p)
            c.append(column[q])
            v.append(float(e))
    N = sp.csr_matrix((v, (r, c)), shape=(num_vars, len(free)))
    logger.debug(f"等式消元: {len(order)} 个主元，{len(free)} 个自由变量")
    return AffineSolution(y0=y0, free=free, N=N, consistent=consistent, rank=len(order))
