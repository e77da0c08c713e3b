#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
自由代数 ℝ⟨x̲⟩ 的精确符号运算
词（自由幺半群元素）、对合、非交换多项式、词基、循环等价
"""

import itertools
from fractions import Fraction
from functools import reduce
from numbers import Rational, Real
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .nc_types import BasisOverflowError, DimensionMismatchError, NcOptError
from .utils import get_settings

# 词：字母编号（从1开始）的元组，空元组即单位词 1
Word = Tuple[int, ...]
Number = Union[int, float, Fraction]

EMPTY_WORD: Word = ()


def to_fraction(value: Number) -> Fraction:
    """将系数转换为精确有理数（浮点数按二进制精确值转换）"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, Real):
        return Fraction(float(value))
    raise TypeError(f"不支持的系数类型: {type(value).__name__}")


def word_key(w: Word) -> Tuple[int, Word]:
    """分级字典序的排序键：先比较长度，再逐字母比较"""
    return len(w), w


def word_mul(u: Word, v: Word) -> Word:
    """词的乘法即拼接"""
    return tuple(u) + tuple(v)


def word_star(w: Word) -> Word:
    """词的对合：反转"""
    return tuple(reversed(w))


def rotations(w: Word) -> Iterator[Word]:
    """枚举词的全部循环旋转"""
    if not w:
        yield EMPTY_WORD
        return
    for k in range(len(w)):
        yield w[k:] + w[:k]


def rotation_canonical(w: Word) -> Word:
    """仅在循环旋转下的规范代表（最小旋转）"""
    return min(rotations(w))


def cyclic_canonical(w: Word) -> Word:
    """
    对称化循环类的规范代表：w 与 w* 的全部旋转中分级字典序最小者

    同一类中的词长度相同，直接比较元组即为分级字典序。
    """
    return min(rotation_canonical(w), rotation_canonical(word_star(w)))


def symmetric_canonical(w: Word) -> Word:
    """特征值模式下的识别代表：min(w, w*)"""
    return min(w, word_star(w))


class NcPolynomial:
    """
    非交换多项式：词到有理系数的稀疏映射

    构造后不可变；不保存零系数。
    """

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Optional[Mapping[Word, Number]] = None, nvars: int = 1):
        if nvars < 1:
            raise NcOptError(f"变量个数必须 ≥ 1: {nvars}")
        cleaned: Dict[Word, Fraction] = {}
        for word, coef in (terms or {}).items():
            word = tuple(int(letter) for letter in word)
            for letter in word:
                if letter < 1 or letter > nvars:
                    raise NcOptError(f"字母 x{letter} 超出变量范围 1..{nvars}")
            value = to_fraction(coef)
            if value != 0:
                cleaned[word] = cleaned.get(word, Fraction(0)) + value
                if cleaned[word] == 0:
                    del cleaned[word]
        self._terms = cleaned
        self._nvars = nvars
        self._hash = None

    # ---------- 构造 ----------

    @classmethod
    def zero(cls, nvars: int) -> "NcPolynomial":
        return cls({}, nvars)

    @classmethod
    def constant(cls, value: Number, nvars: int) -> "NcPolynomial":
        return cls({EMPTY_WORD: value}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "NcPolynomial":
        return cls({(index,): 1}, nvars)

    @classmethod
    def from_word(cls, word: Word, nvars: int, coef: Number = 1) -> "NcPolynomial":
        return cls({tuple(word): coef}, nvars)

    # ---------- 基本属性 ----------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Dict[Word, Fraction]:
        return dict(self._terms)

    @property
    def degree(self) -> Optional[int]:
        """最长词的长度；零多项式返回 None（"无次数"）"""
        if not self._terms:
            return None
        return max(len(w) for w in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, word: Word) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def items(self) -> List[Tuple[Word, Fraction]]:
        """按分级字典序排列的 (词, 系数) 列表"""
        return sorted(self._terms.items(), key=lambda item: word_key(item[0]))

    def words(self) -> List[Word]:
        return [w for w, _ in self.items()]

    def half_degree(self) -> int:
        """d_g = ⌈deg(g)/2⌉；零多项式无定义"""
        if self.degree is None:
            raise NcOptError("零多项式没有次数")
        return (self.degree + 1) // 2

    # ---------- 运算 ----------

    def _check_same(self, other: "NcPolynomial") -> None:
        if other.nvars != self.nvars:
            raise NcOptError(f"变量个数不一致: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "NcPolynomial":
        if isinstance(other, NcPolynomial):
            self._check_same(other)
            return other
        if isinstance(other, (int, float, Fraction, Rational, Real)):
            return NcPolynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return NcPolynomial(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return NcPolynomial({w: -c for w, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Word, Fraction] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u + v
                terms[w] = terms.get(w, Fraction(0)) + a * b
        return NcPolynomial(terms, self.nvars)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise NcOptError(f"只支持非负整数次幂: {exponent}")
        result = NcPolynomial.constant(1, self.nvars)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, NcPolynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, float, Fraction)):
            return self == NcPolynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def star(self) -> "NcPolynomial":
        """对合：每个词反转，系数不变"""
        return NcPolynomial({word_star(w): c for w, c in self._terms.items()}, self.nvars)

    def is_symmetric(self) -> bool:
        return self == self.star()

    def symmetrize(self) -> "NcPolynomial":
        """(f + f*)/2"""
        return (self + self.star()) * Fraction(1, 2)

    def coefficient_vector(self, basis: "WordBasis") -> np.ndarray:
        """系数向量 f，满足 f = fᵀ W_d"""
        if self.degree is not None and self.degree > basis.degree:
            raise NcOptError(f"多项式次数 {self.degree} 超过词基次数 {basis.degree}")
        vec = np.zeros(len(basis))
        for w, c in self._terms.items():
            vec[basis.index[w]] = float(c)
        return vec

    def max_abs_coefficient(self) -> float:
        return max((abs(float(c)) for c in self._terms.values()), default=0.0)

    def __str__(self) -> str:
        from .poly_text import format_polynomial
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"NcPolynomial({str(self)!r}, nvars={self.nvars})"


def involution(f: NcPolynomial) -> NcPolynomial:
    """多项式对合 f ↦ f*"""
    return f.star()


def commutator(p: NcPolynomial, q: NcPolynomial) -> NcPolynomial:
    """[p, q] = pq − qp"""
    return p * q - q * p


def basis_size(n: int, d: int) -> int:
    """s(d,n) = Σ_{i=0}^{d} n^i"""
    return sum(n ** i for i in range(d + 1))


class WordBasis:
    """次数 ≤ d 的全部词，按分级字典序排列，位置 0 为空词"""

    __slots__ = ("nvars", "degree", "words", "index")

    def __init__(self, nvars: int, degree: int, words: List[Word]):
        self.nvars = nvars
        self.degree = degree
        self.words = words
        self.index: Dict[Word, int] = {w: i for i, w in enumerate(words)}

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __getitem__(self, position: int) -> Word:
        return self.words[position]

    def __repr__(self) -> str:
        return f"WordBasis(n={self.nvars}, d={self.degree}, size={len(self)})"


def iter_words(n: int, d: int) -> Iterator[Word]:
    """按分级字典序枚举次数 ≤ d 的词"""
    for length in range(d + 1):
        yield from itertools.product(range(1, n + 1), repeat=length)


def enumerate_basis(n: int, d: int, limit: Optional[int] = None) -> WordBasis:
    """
    构造词基 W_d

    Args:
        n: 变量个数，≥ 1
        d: 次数，≥ 0
        limit: 规模上限，默认取配置 max_basis

    Returns:
        WordBasis: 大小为 s(d,n) 的词基

    Raises:
        BasisOverflowError: s(d,n) 超过上限
    """
    if n < 1 or d < 0:
        raise NcOptError(f"词基参数非法: n={n}, d={d}")
    limit = get_settings().max_basis if limit is None else limit
    size = basis_size(n, d)
    if size > limit:
        raise BasisOverflowError(f"词基规模 s({d},{n})={size} 超过上限 {limit}，松弛过大")
    return WordBasis(n, d, list(iter_words(n, d)))


def cyclically_equivalent(f: NcPolynomial, g: NcPolynomial) -> bool:
    """
    判断循环等价：每个旋转类上系数和相等

    Raises:
        NcOptError: 变量个数不一致
    """
    if f.nvars != g.nvars:
        raise NcOptError(f"变量个数不一致: {f.nvars} vs {g.nvars}")
    sums: Dict[Word, Fraction] = {}
    for w, c in (f - g).terms.items():
        key = rotation_canonical(w)
        sums[key] = sums.get(key, Fraction(0)) + c
    return all(value == 0 for value in sums.values())


def ball_constraint(n: int, radius_sq: Number = 1) -> NcPolynomial:
    """R − (x₁² + ⋯ + xₙ²)，常用的 Archimedean 生成元"""
    poly = NcPolynomial.constant(radius_sq, n)
    for i in range(1, n + 1):
        poly = poly - NcPolynomial.from_word((i, i), n)
    return poly


def _check_matrices(f: NcPolynomial, mats: Sequence[np.ndarray], sym_tol: float) -> int:
    if len(mats) != f.nvars:
        raise DimensionMismatchError(f"矩阵个数 {len(mats)} 与变量个数 {f.nvars} 不一致")
    size = None
    for i, mat in enumerate(mats):
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatchError(f"第{i + 1}个矩阵不是方阵: {mat.shape}")
        if size is None:
            size = mat.shape[0]
        elif mat.shape[0] != size:
            raise DimensionMismatchError(f"矩阵尺寸不一致: {size} vs {mat.shape[0]}")
        scale = max(1.0, float(np.max(np.abs(mat))) if mat.size else 1.0)
        if np.max(np.abs(mat - mat.T), initial=0.0) > sym_tol * scale:
            raise DimensionMismatchError(f"第{i + 1}个矩阵不对称")
    return size


def evaluate(f: NcPolynomial, mats: Sequence[np.ndarray], sym_tol: float = 1e-9) -> np.ndarray:
    """
    在对称矩阵组 A̲ 上求值 f(A̲)

    Args:
        f: 非交换多项式
        mats: 对称矩阵元组，长度等于 nvars
        sym_tol: 对称性容差（相对）

    Returns:
        np.ndarray: r×r 矩阵

    Raises:
        DimensionMismatchError: 维度或对称性不满足
    """
    mats = [np.asarray(m, dtype=float) for m in mats]
    size = _check_matrices(f, mats, sym_tol)
    identity = np.eye(size)
    result = np.zeros((size, size))
    # 前缀乘积缓存，共享前缀的词只计算一次
    prefix: Dict[Word, np.ndarray] = {EMPTY_WORD: identity}
    for w, c in f.items():
        if w not in prefix:
            for k in range(1, len(w) + 1):
                head = w[:k]
                if head not in prefix:
                    prefix[head] = prefix[w[:k - 1]] @ mats[w[k - 1] - 1]
        result += float(c) * prefix[w]
    return result


def normalized_trace(f: NcPolynomial, mats: Sequence[np.ndarray]) -> float:
    """归一化迹 tr(f(A̲)) = Tr(f(A̲))/r"""
    value = evaluate(f, mats)
    return float(np.trace(value)) / value.shape[0]


def matrix_product(word: Word, mats: Sequence[np.ndarray]) -> np.ndarray:
    """单个词在矩阵组上的取值"""
    size = mats[0].shape[0]
    return reduce(np.matmul, (mats[i - 1] for i in word), np.eye(size))


def sum_polynomials(polys: Iterable[NcPolynomial], nvars: int) -> NcPolynomial:
    terms: Dict[Word, Fraction] = {}
    for p in polys:
        if p.nvars != nvars:
            raise NcOptError(f"变量个数不一致: {nvars} vs {p.nvars}")
        for w, c in p._terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
    return NcPolynomial(terms, nvars)
