"""Formal model of the fragment of the chain complex AC used for M_k(a).

A chain term is a cdga monomial ``z`` times an ordered ``o``-product of
symbols:

* ``eta(k, i)``: the chain eta_k(i), 0 <= i <= k-1, degree 0, Adams degree k;
* ``face(k, i)``: its topological-face piece, 1 <= i <= k-1, degree 1;
* ``path(j)``: the j-fold power p^{o j} of a path from 1 to a, degree 0.

The empty product is the unit chain. The differential is pinned by

    d eta_k(i)   = face(k, i) - face(k, i+1) - (a) eta_{k-1}(i)   (i <= k-2),
    d eta_k(k-1) = face(k, k-1) - rho_k(a),
    d face(k, i) = -(a) face(k-1, i)   (i <= k-2),   d face(k, k-1) = -(a) rho_{k-1}(a),
    d path(j)    = -j (a) path(j-1),

with face(k, 0) = 0, so xi_k = sum_i eta_k(i) satisfies
d xi_k = -rho_k(a) - (a) xi_{k-1}. Only these relations and the integrals of
eta_k(0) and path(j) are ever used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

import sympy

from . import linalg
from .algebra import (
    CdgaElement,
    Monomial,
    differential,
    monomial_coh,
    monomial_str,
    normalize,
    rho,
    unit,
)
from .connection import Connection
from .field import FieldLike, check_polylog_argument, field, sort_key

_KIND_ORDER = {"eta": 0, "face": 1, "path": 2}


@dataclass(frozen=True)
class ChainSymbol:
    kind: str
    k: int
    i: int
    a: sympy.Expr

    @property
    def degree(self) -> int:
        return 1 if self.kind == "face" else 0

    @property
    def adams(self) -> int:
        return self.k

    def key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.k, self.i, sort_key(self.a))

    def __str__(self) -> str:
        if self.kind == "path":
            return f"p({self.a})^{self.k}" if self.k > 1 else f"p({self.a})"
        name = "eta" if self.kind == "eta" else "deta"
        return f"{name}_{self.k}({self.i})({self.a})"


def eta_symbol(k: int, i: int, a: FieldLike) -> ChainSymbol:
    if not 0 <= i <= k - 1:
        raise ValueError(f"eta_k(i) needs 0 <= i <= k-1, got k={k}, i={i}")
    a = field(a)
    check_polylog_argument(a)
    return ChainSymbol("eta", k, i, a)


def face_symbol(k: int, i: int, a: FieldLike) -> ChainSymbol:
    if not 1 <= i <= k - 1:
        raise ValueError(f"face(k, i) needs 1 <= i <= k-1, got k={k}, i={i}")
    return ChainSymbol("face", k, i, field(a))


def path_symbol(j: int, a: FieldLike) -> ChainSymbol:
    if j < 1:
        raise ValueError("path powers start at 1; p^0 is the unit chain")
    a = field(a)
    if a == 0:
        raise ValueError("the path must avoid 0")
    return ChainSymbol("path", j, 0, a)


Word = tuple  # tuple[ChainSymbol, ...]
TermKey = tuple  # (Monomial, Word)


def _word_degree(w: Word) -> int:
    return sum(s.degree for s in w)


def _concat(w1: Word, w2: Word) -> Word:
    """w1 o w2, merging adjacent powers of the same path."""
    if w1 and w2 and w1[-1].kind == "path" and w2[0].kind == "path" and w1[-1].a == w2[0].a:
        merged = ChainSymbol("path", w1[-1].k + w2[0].k, 0, w1[-1].a)
        return w1[:-1] + (merged,) + w2[1:]
    return w1 + w2


def term_degree(key: TermKey) -> int:
    m, w = key
    return monomial_coh(m) + _word_degree(w)


def term_adams(key: TermKey) -> int:
    m, w = key
    return sum(g.adams for g in m) + sum(s.adams for s in w)


class ChainElement:
    """Exact rational combination of chain terms. Immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[TermKey, Fraction] | None = None):
        self._terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, *symbols: ChainSymbol, coeff=1) -> "ChainElement":
        w: Word = ()
        for s in symbols:
            w = _concat(w, (s,))
        return cls({((), w): coeff})

    @classmethod
    def cycle(cls, z: CdgaElement) -> "ChainElement":
        return cls({(m, ()): c for m, c in z.terms.items()})

    @property
    def terms(self) -> Mapping[TermKey, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[TermKey, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _term_sort_key(kv[0])))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "ChainElement") -> "ChainElement":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return ChainElement(out)

    def __neg__(self) -> "ChainElement":
        return self * -1

    def __sub__(self, other: "ChainElement") -> "ChainElement":
        return self + (-other)

    def __mul__(self, c) -> "ChainElement":
        if isinstance(c, (int, Fraction)):
            return ChainElement({k: v * c for k, v in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def degrees(self) -> set[int]:
        return {term_degree(k) for k in self._terms}

    def adams_degrees(self) -> set[int]:
        return {term_adams(k) for k in self._terms}

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{describe(k)}" if c != 1 else describe(k) for k, c in self.items())


def _term_sort_key(key: TermKey) -> tuple:
    m, w = key
    return ([g.key() for g in m], [s.key() for s in w])


def describe(key: TermKey) -> str:
    m, w = key
    z = monomial_str(m) if m else ""
    g = " o ".join(str(s) for s in w) if w else "1"
    return f"{z}.{g}" if z else g


ONE = ChainElement({((), ()): 1})
ZERO = ChainElement()


def eta(k: int, i: int, a: FieldLike) -> ChainElement:
    return ChainElement.of(eta_symbol(k, i, a))


def path_power(j: int, a: FieldLike) -> ChainElement:
    return ONE if j == 0 else ChainElement.of(path_symbol(j, a))


def xi(k: int, a: FieldLike) -> ChainElement:
    """xi_k(a) = eta_k(0) + ... + eta_k(k-1); xi_0 = 0."""
    out = ZERO
    for i in range(k):
        out = out + eta(k, i, a)
    return out


def left_mul(z: CdgaElement, x: ChainElement) -> ChainElement:
    """The module action z . x."""
    out: dict[TermKey, Fraction] = {}
    for m1, c1 in z.terms.items():
        for (m2, w), c2 in x.terms.items():
            res = normalize(m1 + m2)
            if res is None:
                continue
            sign, m = res
            out[(m, w)] = out.get((m, w), 0) + sign * c1 * c2
    return ChainElement(out)


def circ(x: ChainElement, y: ChainElement) -> ChainElement:
    """(z.g) o (w.h) = (-1)^{deg g * coh w} (z w).(g o h)."""
    out: dict[TermKey, Fraction] = {}
    for (m1, w1), c1 in x.terms.items():
        for (m2, w2), c2 in y.terms.items():
            res = normalize(m1 + m2)
            if res is None:
                continue
            sign, m = res
            if _word_degree(w1) * monomial_coh(m2) % 2:
                sign = -sign
            key = (m, _concat(w1, w2))
            out[key] = out.get(key, 0) + sign * c1 * c2
    return ChainElement(out)


def symbol_d(s: ChainSymbol) -> ChainElement:
    k, i, a = s.k, s.i, s.a
    if s.kind == "path":
        return left_mul(unit(a), path_power(k - 1, a)) * (-k)
    if s.kind == "eta":
        out = ZERO
        if i > 0:
            out = out + ChainElement.of(face_symbol(k, i, a))
        if i <= k - 2:
            out = out - ChainElement.of(face_symbol(k, i + 1, a))
            out = out - left_mul(unit(a), eta(k - 1, i, a))
        else:
            out = out - ChainElement.cycle(rho(k, a))
        return out
    if i <= k - 2:
        return -left_mul(unit(a), ChainElement.of(face_symbol(k - 1, i, a)))
    return -ChainElement.cycle(unit(a) * rho(k - 1, a))


def chain_d(x: ChainElement) -> ChainElement:
    """d(z.g) = dz.g + (-1)^{coh z} z.dg, with d(s o t) = ds o t + (-1)^{deg s} s o dt."""
    out = ZERO
    for (m, w), c in x.terms.items():
        z = CdgaElement({m: c})
        dz = differential(z)
        if dz:
            out = out + left_mul(dz, ChainElement({((), w): 1}))
        sign = -1 if monomial_coh(m) % 2 else 1
        prefix_deg = 0
        for p, s in enumerate(w):
            ds = symbol_d(s)
            if ds:
                inner = circ(circ(ChainElement({((), w[:p]): 1}), ds), ChainElement({((), w[p + 1:]): 1}))
                out = out + left_mul(z, inner) * (sign * (-1) ** prefix_deg)
            prefix_deg += s.degree
    return out


# twisted complex M (x) AC -------------------------------------------------------

MChain = dict  # basis index -> ChainElement


def twisted_d(C: Connection, x: Mapping[int, ChainElement]) -> MChain:
    """d(m_i (x) g) = m_i (x) dg + sum_j m_j (x) gamma(i, j) . g."""
    out: dict[int, ChainElement] = {}
    for i, g in x.items():
        out[i] = out.get(i, ZERO) + chain_d(g)
        for j in range(C.dim):
            G = C.gamma[i][j]
            if G:
                out[j] = out.get(j, ZERO) + left_mul(G, g)
    return {i: v for i, v in out.items() if v}


def is_twisted_cocycle(C: Connection, x: Mapping[int, ChainElement]) -> bool:
    return not twisted_d(C, x)


def z_and_l_elements(k: int, a: FieldLike) -> dict:
    """Z_k(a) = e_0 (x) 1 + sum_j e_{-j} (x) xi_j(a) and
    L_j(a) = sum_{t >= j} e_{-t} (x) p^{o(t-j)} / (t-j)!."""
    if k < 1:
        raise ValueError("k >= 1 required")
    Z = {0: ONE}
    for j in range(1, k + 1):
        Z[j] = xi(j, a)
    Ls = []
    for j in range(1, k + 1):
        L = {}
        fact = 1
        for t in range(j, k + 1):
            if t > j:
                fact *= t - j
            L[t] = path_power(t - j, a) * Fraction(1, fact)
        Ls.append(L)
    return {"Z": Z, "L": Ls}


def betti_classes(k: int, a: FieldLike) -> list[MChain]:
    """[Z_k(a), L_1(a), ..., L_k(a)]."""
    e = z_and_l_elements(k, a)
    return [e["Z"]] + e["L"]


def rank_of(elements: Sequence[Mapping[int, ChainElement]]) -> int:
    vectors = [{(i, key): c for i, g in x.items() for key, c in g.terms.items()} for x in elements]
    return linalg.rank(vectors)


def tensor_class(x: Mapping[int, ChainElement], y: Mapping[int, ChainElement], dim_y: int) -> MChain:
    """x (x) y in (M (x) M') (x) AC with pair index i * dim_y + j and chain x_i o y_j."""
    out = {}
    for i, g in x.items():
        for j, h in y.items():
            v = circ(g, h)
            if v:
                out[i * dim_y + j] = v
    return out


# the right N-module structure used by B(N, AC) --------------------------------------

class ChainModule:
    """AC as a right module for the bar complex; keys are chain term keys."""

    def degree(self, key: TermKey) -> int:
        return term_degree(key)

    def d(self, key: TermKey) -> Mapping[TermKey, Fraction]:
        return chain_d(ChainElement({key: 1})).terms

    def act(self, m: Monomial, key: TermKey) -> Mapping[TermKey, Fraction]:
        return left_mul(CdgaElement({m: 1}), ChainElement({key: 1})).terms

    def sort_key(self, key: TermKey) -> tuple:
        return _term_sort_key(key)

    def describe(self, key: TermKey) -> str:
        return "{" + describe(key) + "}"


CHAIN_MODULE = ChainModule()
