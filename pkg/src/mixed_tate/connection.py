"""Flat connections Gamma : M -> M (x) A^1 and their comodules.

``gamma[i][j]`` is the degree-one cdga element with

    Gamma(m_i) = sum_j m_j (x) gamma[i][j],

so a nonzero entry has Adams degree ``adams(i) - adams(j)``. Entries are
taken directly in the span of the free generators, which stands in for the
degree-one part of a 1-minimal model containing them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algebra import ZERO, CdgaElement, differential, product
from .bar import BarElement, bar_d
from .comodule import Comodule


class ConnectionError(ValueError):
    pass


@dataclass(frozen=True)
class Connection:
    basis: tuple[tuple[str, int], ...]
    gamma: tuple[tuple[CdgaElement, ...], ...]

    def __post_init__(self):
        n = len(self.basis)
        if len(self.gamma) != n or any(len(r) != n for r in self.gamma):
            raise ConnectionError("gamma must be a square matrix matching the basis")
        for i, j in itertools.product(range(n), repeat=2):
            g = self.gamma[i][j]
            if not g:
                continue
            if g.bidegrees() != {(self.basis[i][1] - self.basis[j][1], 1)}:
                raise ConnectionError(
                    f"entry ({self.basis[i][0]}, {self.basis[j][0]}) has bidegrees {sorted(g.bidegrees())}; "
                    f"a connection has Adams degree 0 and degree-one entries")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> list[str]:
        return [b[0] for b in self.basis]

    @property
    def adams(self) -> list[int]:
        return [b[1] for b in self.basis]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def with_entry(self, i: int | str, j: int | str, value: CdgaElement) -> "Connection":
        i = self.index(i) if isinstance(i, str) else i
        j = self.index(j) if isinstance(j, str) else j
        rows = [list(r) for r in self.gamma]
        rows[i][j] = value
        return Connection(self.basis, tuple(tuple(r) for r in rows))


def from_entries(basis: Sequence[tuple[str, int]], entries: dict[tuple[str, str], CdgaElement]) -> Connection:
    names = [b[0] for b in basis]
    rows = tuple(tuple(entries.get((a, b), ZERO) for b in names) for a in names)
    return Connection(tuple((n, int(r)) for n, r in basis), rows)


def zero_connection(basis: Sequence[tuple[str, int]]) -> Connection:
    return from_entries(basis, {})


def curvature(C: Connection) -> list[list[CdgaElement]]:
    """Matrix of d Gamma + Gamma^2; entry (i, l) is the coefficient of m_l in the image of m_i."""
    n = C.dim
    out = []
    for i in range(n):
        row = []
        for l in range(n):
            acc = differential(C.gamma[i][l])
            for j in range(n):
                if C.gamma[i][j] and C.gamma[j][l]:
                    acc = acc + product(C.gamma[j][l], C.gamma[i][j])
            row.append(acc)
        out.append(row)
    return out


def check_flat(C: Connection) -> bool:
    return not any(e for row in curvature(C) for e in row)


def validate_degrees(basis: Sequence[tuple[str, int]]) -> list[tuple[str, str]]:
    """Slots (i, j) where a connection entry can be nonzero.

    The basis order is read as the filtration of an iterated extension: later
    vectors span sub-objects, so Gamma only maps a vector to later ones. A
    slot also needs Adams gap >= 1, the lowest Adams degree of a degree-one
    generator.
    """
    slots = []
    for i, (ni, ri) in enumerate(basis):
        for nj, rj in basis[i + 1:]:
            if ri - rj >= 1:
                slots.append((ni, nj))
    return slots


def gamma_iterate(C: Connection, n: int) -> list[list[BarElement]]:
    """Gamma_n as a matrix of length-n bar words.

    Gamma_n(m_i) = sum over paths i = j_0 -> ... -> j_n of
    m_{j_n} (x) [gamma(j_{n-1}, j_n) | ... | gamma(j_0, j_1)].
    """
    dim = C.dim
    if n == 0:
        return [[BarElement.unit() if i == j else BarElement() for j in range(dim)] for i in range(dim)]
    prev = gamma_iterate(C, n - 1)
    out = [[BarElement() for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if not prev[i][j]:
                continue
            for l in range(dim):
                g = C.gamma[j][l]
                if not g:
                    continue
                for (letters, _), c in prev[i][j].terms.items():
                    out[i][l] = out[i][l] + BarElement.word(g, *[CdgaElement({m: 1}) for m in letters], coeff=c)
    return out


def max_adams_gap(C: Connection) -> int:
    return max(C.adams) - min(C.adams) if C.dim else 0


def to_comodule(C: Connection) -> Comodule:
    """Delta_M = sum_n Gamma_n; the sum stops once Gamma_n vanishes."""
    if not check_flat(C):
        raise ConnectionError("to_comodule needs a flat connection")
    dim = C.dim
    total = gamma_iterate(C, 0)
    n = 1
    while True:
        step = gamma_iterate(C, n)
        if not any(e for row in step for e in row):
            break
        total = [[total[i][j] + step[i][j] for j in range(dim)] for i in range(dim)]
        n += 1
    return Comodule(C.basis, tuple(tuple(r) for r in total))


def coaction_is_cocycle(C: Connection) -> bool:
    cm = to_comodule(C)
    return all(not bar_d(e) for row in cm.coaction for e in row)


def tensor(C1: Connection, C2: Connection) -> Connection:
    """Gamma(m (x) m') = Gamma(m) (x) m' + m (x) Gamma(m'), basis in lexicographic order."""
    basis = [(f"{a}*{b}", ra + rb) for (a, ra), (b, rb) in itertools.product(C1.basis, C2.basis)]
    pairs = list(itertools.product(range(C1.dim), range(C2.dim)))
    rows = []
    for (i, i2) in pairs:
        row = []
        for (j, j2) in pairs:
            e = ZERO
            if i2 == j2:
                e = e + C1.gamma[i][j]
            if i == j:
                e = e + C2.gamma[i2][j2]
            row.append(e)
        rows.append(tuple(row))
    return Connection(tuple(basis), tuple(rows))
