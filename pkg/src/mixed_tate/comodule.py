"""Finite-dimensional Adams-graded right comodules over H^0(B(N)).

A comodule is stored as a basis of (name, adams degree) pairs and a square
matrix of bar elements: ``coaction[i][j]`` is the component such that

    Delta(v_i) = sum_j v_j (x) coaction[i][j].

Entries are degree-0 bar cocycles representing elements of H^0(B(N));
identities are checked at the level of these representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import unit
from .bar import BarElement, Tensor, coproduct, counit, is_cocycle, shuffle
from .field import FieldLike


class ComoduleError(ValueError):
    pass


def _zero() -> BarElement:
    return BarElement()


@dataclass(frozen=True)
class Comodule:
    basis: tuple[tuple[str, int], ...]
    coaction: tuple[tuple[BarElement, ...], ...]

    def __post_init__(self):
        n = len(self.basis)
        if len(self.coaction) != n or any(len(row) != n for row in self.coaction):
            raise ComoduleError("coaction must be a square matrix matching the basis")

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

    def entry(self, i: int | str, j: int | str) -> BarElement:
        i = self.index(i) if isinstance(i, str) else i
        j = self.index(j) if isinstance(j, str) else j
        return self.coaction[i][j]

    def with_entry(self, i: int | str, j: int | str, value: BarElement) -> "Comodule":
        i = self.index(i) if isinstance(i, str) else i
        j = self.index(j) if isinstance(j, str) else j
        rows = [list(r) for r in self.coaction]
        rows[i][j] = value
        return Comodule(self.basis, tuple(tuple(r) for r in rows))

    def describe(self) -> str:
        lines = []
        for i, (name, _) in enumerate(self.basis):
            parts = [f"{self.names[j]} (x) ({self.coaction[i][j]})" for j in range(self.dim) if self.coaction[i][j]]
            lines.append(f"Delta {name} = " + " + ".join(parts))
        return "\n".join(lines)


def from_rows(basis: Sequence[tuple[str, int]], entries: dict[tuple[str, str], BarElement]) -> Comodule:
    """Comodule with unit diagonal and the given off-diagonal entries."""
    names = [b[0] for b in basis]
    rows = []
    for i, ni in enumerate(names):
        row = []
        for j, nj in enumerate(names):
            if i == j:
                row.append(entries.get((ni, nj), BarElement.unit()))
            else:
                row.append(entries.get((ni, nj), _zero()))
        rows.append(tuple(row))
    return Comodule(tuple((n, int(r)) for n, r in basis), tuple(rows))


def tate(r: int) -> Comodule:
    """Q(r): one basis vector of Adams degree -r, trivial coaction."""
    return from_rows([(f"Q({r})", -r)], {})


def kummer(a: FieldLike) -> Comodule:
    """The extension [a] of Q(0) by Q(1)."""
    return from_rows([("f0", 0), ("f-1", -1)], {("f0", "f-1"): BarElement.word(unit(a))})


@dataclass
class AxiomReport:
    degree_ok: bool
    coassoc_ok: bool
    counit_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.coassoc_ok and self.counit_ok


def _require_cocycles(V: Comodule) -> None:
    for i, j in itertools.product(range(V.dim), repeat=2):
        e = V.coaction[i][j]
        try:
            ok = is_cocycle(e)
        except ValueError as exc:
            raise ComoduleError(f"entry ({V.names[i]}, {V.names[j]}) is not of bar degree 0: {exc}") from exc
        if not ok:
            raise ComoduleError(f"entry ({V.names[i]}, {V.names[j]}) = {e} is not a bar cocycle")


def check_axioms(V: Comodule) -> AxiomReport:
    _require_cocycles(V)
    failures = []
    degree_ok = True
    for i, j in itertools.product(range(V.dim), repeat=2):
        e = V.coaction[i][j]
        gap = V.adams[i] - V.adams[j]
        if e and e.adams_degrees() != {gap}:
            degree_ok = False
            failures.append(f"degree: entry ({V.names[i]}, {V.names[j]}) has Adams degrees "
                            f"{sorted(e.adams_degrees())}, expected {gap}")

    coassoc_ok = True
    for i, l in itertools.product(range(V.dim), repeat=2):
        lhs = coproduct(V.coaction[i][l])
        rhs: dict = {}
        for j in range(V.dim):
            for (w1, c1) in V.coaction[j][l].terms.items():
                for (w2, c2) in V.coaction[i][j].terms.items():
                    rhs[(w1, w2)] = rhs.get((w1, w2), 0) + c1 * c2
        if lhs != Tensor(rhs, 2):
            coassoc_ok = False
            failures.append(f"coassociativity fails at ({V.names[i]}, {V.names[l]})")

    counit_ok = True
    for i, j in itertools.product(range(V.dim), repeat=2):
        if counit(V.coaction[i][j]) != (1 if i == j else 0):
            counit_ok = False
            failures.append(f"counit fails at ({V.names[i]}, {V.names[j]})")
    return AxiomReport(degree_ok, coassoc_ok, counit_ok, failures)


# finite reachable span ----------------------------------------------------

def reachable_span(V: Comodule) -> list[dict]:
    """Basis (as word-coordinate vectors) of the smallest subspace containing
    every coaction entry and closed under taking coproduct components."""
    span: list[dict] = []

    def extend(vectors):
        added = False
        for v in vectors:
            if v and linalg.rank(span + [v]) > len(span):
                span.append(v)
                added = True
        return added

    extend([dict(e.terms) for row in V.coaction for e in row])
    frontier = list(span)
    while frontier:
        new = []
        for v in frontier:
            t = coproduct(BarElement(v))
            lefts: dict = {}
            rights: dict = {}
            for (w1, w2), c in t.terms.items():
                lefts.setdefault(w2, {})[w1] = c
                rights.setdefault(w1, {})[w2] = c
            before = len(span)
            extend(list(lefts.values()) + list(rights.values()))
            new.extend(span[before:])
        frontier = new
    return span


@dataclass
class KernelReport:
    kernel_dim: int
    equals_image: bool
    span_dim: int
    span_all_cocycles: bool


def kernel_identity(V: Comodule) -> KernelReport:
    """Kernel of (Delta_V (x) id - id (x) Delta) on V (x) S, S the reachable span."""
    S = reachable_span(V)
    columns = []
    for j in range(V.dim):
        for s in S:
            col: dict = {}
            for l in range(V.dim):
                for w1, c1 in V.coaction[j][l].terms.items():
                    for w2, c2 in s.items():
                        col[(l, w1, w2)] = col.get((l, w1, w2), 0) + c1 * c2
            for (w1, w2), c in coproduct(BarElement(s)).terms.items():
                col[(j, w1, w2)] = col.get((j, w1, w2), 0) - c
            columns.append({k: c for k, c in col.items() if c})
    kernel = linalg.nullspace(columns)
    basis_vectors = [(j, s) for j in range(V.dim) for s in S]
    kernel_words = []
    for vec in kernel:
        out: dict = {}
        for x, (j, s) in zip(vec, basis_vectors):
            if x:
                for w, c in s.items():
                    out[(j, w)] = out.get((j, w), 0) + x * c
        kernel_words.append({k: c for k, c in out.items() if c})
    image = []
    for i in range(V.dim):
        image.append({(j, w): c for j in range(V.dim) for w, c in V.coaction[i][j].terms.items()})
    cocycles = all(is_cocycle(BarElement(s)) for s in S)
    return KernelReport(len(kernel), linalg.same_span(kernel_words, image), len(S), cocycles)


# constructions --------------------------------------------------------------

def tensor(V: Comodule, W: Comodule) -> Comodule:
    """V (x) W with basis pairs in lexicographic order and shuffled entries."""
    basis = [(f"{a}*{b}", ra + rb) for (a, ra), (b, rb) in itertools.product(V.basis, W.basis)]
    pairs = list(itertools.product(range(V.dim), range(W.dim)))
    rows = []
    for (i, i2) in pairs:
        row = []
        for (j, j2) in pairs:
            x, y = V.coaction[i][j], W.coaction[i2][j2]
            row.append(shuffle(x, y) if x and y else _zero())
        rows.append(tuple(row))
    return Comodule(tuple(basis), tuple(rows))


def twist(V: Comodule, r: int) -> Comodule:
    """V(r) = V (x) Q(r), keeping the basis names of V."""
    return Comodule(tuple((n, d - r) for n, d in V.basis), V.coaction)


def sym_power(V: Comodule, n: int) -> Comodule:
    """Symmetric power; the basis is the monomials in the basis of V.

    The coaction is multiplicative, so each entry is a sum of shuffle
    products of entries of V.
    """
    monos = list(itertools.combinations_with_replacement(range(V.dim), n))
    index = {m: k for k, m in enumerate(monos)}

    def name(m):
        parts = []
        for i in sorted(set(m)):
            e = m.count(i)
            parts.append(V.names[i] + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) if parts else "1"

    basis = tuple((name(m), sum(V.adams[i] for i in m)) for m in monos)
    rows = [[_zero() for _ in monos] for _ in monos]
    for m in monos:
        for targets in itertools.product(range(V.dim), repeat=n):
            prod = BarElement.unit()
            for i, j in zip(m, targets):
                e = V.coaction[i][j]
                if not e:
                    prod = None
                    break
                prod = shuffle(prod, e)
            if prod is None or not prod:
                continue
            t = index[tuple(sorted(targets))]
            rows[index[m]][t] = rows[index[m]][t] + prod
    return Comodule(basis, tuple(tuple(r) for r in rows))


def is_subcomodule(V: Comodule, indices: Sequence[int]) -> bool:
    inside = set(indices)
    return all(not V.coaction[i][j] for i in inside for j in range(V.dim) if j not in inside)


def restrict(V: Comodule, indices: Sequence[int]) -> Comodule:
    idx = list(indices)
    return Comodule(tuple(V.basis[i] for i in idx),
                    tuple(tuple(V.coaction[i][j] for j in idx) for i in idx))


def quotient(V: Comodule, sub: Sequence[int]) -> Comodule:
    if not is_subcomodule(V, sub):
        raise ComoduleError("not a sub-comodule")
    rest = [i for i in range(V.dim) if i not in set(sub)]
    return restrict(V, rest)


def _ratio(x: BarElement, y: BarElement) -> Fraction | None:
    """mu with x = mu * y, or None."""
    sol = linalg.solve([dict(y.terms)], dict(x.terms))
    return None if sol is None else sol[0]


def diagonal_isomorphism(V: Comodule, W: Comodule) -> list[Fraction] | None:
    """Scalars lam with v_i = lam_i w_i defining a comodule isomorphism W -> V.

    Basis vectors are matched by position. The scalars are the nullspace of
    the linear system lam_i = mu_ij lam_j, where V's entry (i, j) is mu_ij
    times W's; they are normalised so that the last one is 1.
    """
    if V.dim != W.dim or V.adams != W.adams:
        return None
    n = V.dim
    equations = []
    for i, j in itertools.product(range(n), repeat=2):
        x, y = V.coaction[i][j], W.coaction[i][j]
        if not x and not y:
            continue
        if not x or not y:
            return None
        mu = _ratio(x, y)
        if mu is None:
            return None
        # x = (lam_i / lam_j) y
        equations.append({i: Fraction(1), j: -mu} if i != j else {i: 1 - mu})
    eqs = [{k: c for k, c in e.items() if c} for e in equations]
    # unknowns are the columns: transpose the system
    columns = [{e_idx: e.get(u, Fraction(0)) for e_idx, e in enumerate(eqs) if e.get(u)} for u in range(n)]
    ns = linalg.nullspace(columns, keys=list(range(len(eqs))) or None)
    if len(ns) != 1:
        # a unique ray is expected for an indecomposable match; otherwise pick a generic combination
        if not ns:
            return None
        vec = [sum(c * (k + 1) for k, c in enumerate(col)) for col in zip(*ns)]
    else:
        vec = ns[0]
    if any(c == 0 for c in vec):
        return None
    return [c / vec[-1] for c in vec]
