#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
多项式文本语法
项之间以 + / − 分隔；项为可选的小数或分数系数，后接以 * 连接的字母，
字母写作 x1…xN（n=2 时可写 x、y），^k 表示重复；忽略空白。
例：1+2*x+x^2+x*y^2+2*y^2+y^2*x+y*x^2*y+y^4
"""

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .freealg import EMPTY_WORD, NcPolynomial, Word
from .nc_types import PolynomialParseError, UnknownVariableError

# 词法单元
_TOKEN_RE = re.compile(
    r"""
    (?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:/\d+)?|\.\d+(?:[eE][+-]?\d+)?)
  | (?P<letter>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[+\-*^])
  | (?P<space>\s+)
    """,
    re.VERBOSE,
)

# 分母不超过该值的系数以分数形式输出，否则按17位有效数字输出
_MAX_PRETTY_DENOMINATOR = 10 ** 6


def _use_aliases(nvars: int, aliases: Optional[bool]) -> bool:
    return nvars == 2 if aliases is None else (aliases and nvars == 2)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    """切分为 (类型, 文本, 列号) 列表"""
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise PolynomialParseError(f"无法识别的字符 {text[pos]!r}", column=pos + 1)
        kind = match.lastgroup
        if kind != "space":
            tokens.append((kind, match.group(), pos + 1))
        pos = match.end()
    return tokens


def _parse_number(token: str, column: int) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/")
            return Fraction(num) / Fraction(den)
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as e:
        raise PolynomialParseError(f"非法系数 {token!r}: {e}", column=column)


def _letter_index(token: str, column: int, nvars: int, aliases: bool) -> int:
    if token in ("x", "y"):
        if not aliases:
            raise UnknownVariableError(f"未启用别名时不能使用变量 {token!r}", column=column)
        return 1 if token == "x" else 2
    if not re.fullmatch(r"x\d+", token):
        raise UnknownVariableError(f"未知变量 {token!r}", column=column)
    index = int(token[1:])
    if index < 1 or index > nvars:
        raise UnknownVariableError(f"变量 {token} 超出范围 x1..x{nvars}", column=column)
    return index


def parse_polynomial(text: str, nvars: int, aliases: Optional[bool] = None) -> NcPolynomial:
    """
    解析多项式文本

    Args:
        text: 多项式文本
        nvars: 变量个数
        aliases: 是否允许 x,y 别名，默认 nvars=2 时允许

    Returns:
        NcPolynomial: 解析结果

    Raises:
        PolynomialParseError: 语法错误（携带列号）
        UnknownVariableError: 变量编号超出 nvars
    """
    use_aliases = _use_aliases(nvars, aliases)
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialParseError("多项式为空", column=1)

    terms = {}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    expect_term = True
    sign = 1
    while pos < len(tokens):
        # 项前的符号（可连续出现）
        while peek() is not None and peek()[0] == "op" and peek()[1] in "+-":
            if peek()[1] == "-":
                sign = -sign
            pos += 1
        if peek() is None:
            raise PolynomialParseError("表达式以运算符结尾", column=len(text))

        coef = Fraction(sign)
        word: Word = EMPTY_WORD
        while True:
            token = peek()
            if token is None or token[0] not in ("number", "letter"):
                column = token[2] if token else len(text)
                raise PolynomialParseError("此处需要系数或变量", column=column)
            kind, value, column = token
            pos += 1
            power = 1
            if peek() is not None and peek()[1] == "^":
                pos += 1
                exp_token = peek()
                if exp_token is None or exp_token[0] != "number" or not exp_token[1].isdigit():
                    col = exp_token[2] if exp_token else len(text)
                    raise PolynomialParseError("^ 后需要非负整数", column=col)
                power = int(exp_token[1])
                pos += 1
            if kind == "number":
                coef *= _parse_number(value, column) ** power
            else:
                word = word + (_letter_index(value, column, nvars, use_aliases),) * power
            token = peek()
            if token is not None and token[1] == "*":
                pos += 1
                continue
            break

        terms[word] = terms.get(word, Fraction(0)) + coef
        sign = 1
        expect_term = False
        token = peek()
        if token is not None and not (token[0] == "op" and token[1] in "+-"):
            raise PolynomialParseError(f"多余的符号 {token[1]!r}", column=token[2])

    if expect_term:
        raise PolynomialParseError("多项式为空", column=1)
    return NcPolynomial(terms, nvars)


def letter_name(index: int, nvars: int, aliases: Optional[bool] = None) -> str:
    if _use_aliases(nvars, aliases):
        return "x" if index == 1 else "y"
    return f"x{index}"


def format_word(word: Word, nvars: int, aliases: Optional[bool] = None) -> str:
    """词的文本形式，连续相同字母合并为 ^k"""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = letter_name(word[i], nvars, aliases)
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def format_coefficient(value: Fraction) -> str:
    """非负系数的文本形式"""
    if value.denominator == 1:
        return str(value.numerator)
    if value.denominator <= _MAX_PRETTY_DENOMINATOR:
        return f"{value.numerator}/{value.denominator}"
    return format(float(value), ".17g")


def format_polynomial(f: NcPolynomial, aliases: Optional[bool] = None) -> str:
    """
    按分级字典序输出多项式文本，零多项式输出 0

    Args:
        f: 多项式
        aliases: 是否使用 x,y 别名

    Returns:
        可被 parse_polynomial 解析回原多项式的文本
    """
    items = f.items()
    if not items:
        return "0"
    chunks = []
    for k, (word, coef) in enumerate(items):
        negative = coef < 0
        magnitude = -coef if negative else coef
        if word == EMPTY_WORD:
            body = format_coefficient(magnitude)
        elif magnitude == 1:
            body = format_word(word, f.nvars, aliases)
        else:
            body = f"{format_coefficient(magnitude)}*{format_word(word, f.nvars, aliases)}"
        if k == 0:
            chunks.append(f"-{body}" if negative else body)
        else:
            chunks.append(f" - {body}" if negative else f" + {body}")
    return "".join(chunks)
