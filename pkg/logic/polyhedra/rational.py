"""
Exact rational plumbing: every scalar in setconj is a ``fractions.Fraction``.

Matrices are numpy arrays of ``dtype=object`` holding Fractions so that ``@`` and ``.T``
stay exact.
"""
import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

import numpy as np

Rat = Fraction
Vector = Tuple[Fraction, ...]

_RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')


def parse_rat(text: str) -> Fraction:
    """
    Parse the textual rational form "p/q" (or a bare integer "p")

    :param text: the string to parse
    :return: the exact value
    :rtype: Fraction
    """
    match = _RATIONAL_PATTERN.match(text)
    if match is None:
        raise ValueError("malformed rational {!r}".format(text))
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError("zero denominator in {!r}".format(text))
    return Fraction(numerator, denominator)


def format_rat(value: Fraction) -> str:
    return "{}/{}".format(value.numerator, value.denominator)


def to_rat(value) -> Fraction:
    """
    Coerce ints, Fractions and "p/q" strings; floats are refused so nothing inexact leaks in

    :param value: value to coerce
    :return: exact value
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError("cannot use {} as an exact rational".format(type(value).__name__))


def rat_vector(values: Iterable) -> Vector:
    return tuple(to_rat(v) for v in values)


def zero_vector(dim: int) -> Vector:
    return tuple(Fraction(0) for _ in range(dim))


def unit_vector(dim: int, index: int, scale=1) -> Vector:
    return tuple(to_rat(scale) if i == index else Fraction(0) for i in range(dim))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


def add_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(t: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(t * a for a in v)


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def integer_scaling(values: Sequence[Fraction]) -> Fraction:
    """
    Positive factor that turns ``values`` into coprime integers (1 for the zero vector)

    :param values: the rationals to scale together
    :return: the positive scaling factor
    """
    nonzero = [v for v in values if v != 0]
    if not nonzero:
        return Fraction(1)
    denominators = 1
    for v in nonzero:
        denominators = denominators * v.denominator // math.gcd(denominators, v.denominator)
    numerators = 0
    for v in nonzero:
        numerators = math.gcd(numerators, abs(v.numerator * (denominators // v.denominator)))
    return Fraction(denominators, numerators)


def rat_matrix(rows, columns: int = None) -> np.ndarray:
    """
    Build an exact matrix from nested rows of rationals

    :param rows: row-major entries (ints, Fractions or "p/q" strings)
    :param columns: column count, needed only when ``rows`` is empty
    :return: a 2-D numpy array of Fractions
    :rtype: numpy.ndarray
    """
    rows = [[to_rat(v) for v in row] for row in rows]
    if not rows:
        return np.empty((0, columns or 0), dtype=object)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("ragged matrix rows")
    matrix = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            matrix[i, j] = v
    return matrix


def identity_matrix(dim: int) -> np.ndarray:
    return rat_matrix([unit_vector(dim, i) for i in range(dim)], columns=dim)


def apply(matrix: np.ndarray, vector: Sequence[Fraction]) -> Vector:
    """
    Exact matrix-vector product

    :param matrix: m x n object array
    :param vector: length-n vector
    :return: length-m vector
    """
    rows, columns = matrix.shape
    if len(vector) != columns:
        raise ValueError("matrix with {} columns applied to a vector of length {}".format(columns, len(vector)))
    return tuple(dot(matrix[i, :], vector) for i in range(rows))


def transpose(matrix: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(matrix.T)


def rref(rows: Sequence[Sequence[Fraction]], columns: int):
    """
    Reduced row echelon form of an augmented system; the last entry of each row is carried along
    but never chosen as a pivot

    :param rows: rows of length ``columns + 1``
    :param columns: number of coefficient columns
    :return: (reduced nonzero rows, pivot column per row)
    """
    work = [list(row) for row in rows]
    pivots = []
    pivot_row = 0
    for column in range(columns):
        chosen = None
        for r in range(pivot_row, len(work)):
            if work[r][column] != 0:
                chosen = r
                break
        if chosen is None:
            continue
        work[pivot_row], work[chosen] = work[chosen], work[pivot_row]
        lead = work[pivot_row][column]
        work[pivot_row] = [v / lead for v in work[pivot_row]]
        for r in range(len(work)):
            if r != pivot_row and work[r][column] != 0:
                factor = work[r][column]
                work[r] = [a - factor * b for a, b in zip(work[r], work[pivot_row])]
        pivots.append(column)
        pivot_row += 1
        if pivot_row == len(work):
            break
    return [tuple(row) for row in work[:pivot_row]], pivots
