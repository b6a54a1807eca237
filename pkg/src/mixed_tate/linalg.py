"""Exact linear algebra over Q on sparse vectors (dicts key -> Fraction)."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = Mapping[Hashable, Fraction]


def _qq(c: Fraction):
    return QQ(c.numerator, c.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def matrix(columns: Sequence[Vector], keys: Sequence[Hashable] | None = None) -> tuple[DomainMatrix, list]:
    """Matrix whose j-th column is ``columns[j]`` in coordinates ``keys``."""
    if keys is None:
        keys = sorted({k for v in columns for k in v}, key=repr)
    index = {k: i for i, k in enumerate(keys)}
    rows = [[QQ(0)] * len(columns) for _ in keys]
    for j, v in enumerate(columns):
        for k, c in v.items():
            if c:
                rows[index[k]][j] = _qq(Fraction(c))
    return DomainMatrix(rows, (len(keys), len(columns)), QQ), list(keys)


def rank(vectors: Sequence[Vector]) -> int:
    if not vectors or not any(vectors):
        return 0
    m, _ = matrix(vectors)
    return m.rank()


def nullspace(columns: Sequence[Vector], keys: Sequence[Hashable] | None = None) -> list[list[Fraction]]:
    """Basis of {x : sum_j x_j columns[j] = 0}, as coefficient lists."""
    n = len(columns)
    if n == 0:
        return []
    m, keys = matrix(columns, keys)
    if not keys:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    return [[_frac(c) for c in row] for row in m.nullspace().to_list()]


def combine(coeffs: Sequence[Fraction], vectors: Sequence[Vector]) -> dict:
    out: dict = {}
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, x in v.items():
            out[k] = out.get(k, 0) + c * x
    return {k: x for k, x in out.items() if x}


def same_span(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(list(a) + list(b))


def in_span(v: Vector, basis: Sequence[Vector]) -> bool:
    return rank(list(basis) + [v]) == rank(basis)


def solve(columns: Sequence[Vector], target: Vector) -> list[Fraction] | None:
    """Some x with sum_j x_j columns[j] = target, or None if inconsistent."""
    ns = nullspace(list(columns) + [target])
    for vec in ns:
        if vec[-1]:
            return [-c / vec[-1] for c in vec[:-1]]
    return None if any(target.values()) else [Fraction(0)] * len(columns)


def independent_subset(vectors: Sequence[Vector]) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily."""
    chosen: list[int] = []
    for i, v in enumerate(vectors):
        if rank([vectors[j] for j in chosen] + [v]) > len(chosen):
            chosen.append(i)
    return chosen
