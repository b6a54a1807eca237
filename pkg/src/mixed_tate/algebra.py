"""Free Adams-graded graded-commutative dga on unit and polylog generators.

The cycle algebra is modelled by the free graded-commutative algebra on
symbols ``(u)`` (a unit ``u`` of the field, bidegree (1, 1)) and
``rho_k(a)`` (bidegree (k, 1)), with

    d(u) = 0,    d rho_k(a) = -(a) . rho_{k-1}(a),    rho_1(a) = (1 - a).

Every generator has cohomological degree 1, so a monomial is a strictly
increasing tuple of generators and the Koszul sign of reordering is the
parity of the sorting permutation. Coefficients are exact ``Fraction``s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

import sympy

from .field import FieldLike, check_polylog_argument, field, one_minus, sort_key

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Generator:
    kind: str  # "unit" or "rho"
    k: int
    value: sympy.Expr

    @property
    def adams(self) -> int:
        return self.k

    @property
    def coh(self) -> int:
        return 1

    def key(self) -> tuple:
        return (0 if self.kind == "unit" else 1, self.k, sort_key(self.value))

    def __lt__(self, other: "Generator") -> bool:
        return self.key() < other.key()

    def __str__(self) -> str:
        if self.kind == "unit":
            return f"({self.value})"
        return f"rho_{self.k}({self.value})"


def unit_generator(u: FieldLike) -> Generator:
    u = field(u)
    if u == 0:
        raise ValueError("unit generator needs a nonzero field element")
    if u == 1:
        # (1) is the zero cycle: the point 1 lies in the removed divisor
        raise ValueError("(1) is degenerate")
    return Generator("unit", 1, u)


def rho_generator(k: int, a: FieldLike) -> Generator:
    if k < 1:
        raise ValueError("rho_k needs k >= 1")
    a = field(a)
    check_polylog_argument(a)
    if k == 1:
        return unit_generator(one_minus(a))
    return Generator("rho", k, a)


Monomial = tuple  # tuple[Generator, ...], strictly increasing


def normalize(gens: Iterable[Generator]) -> tuple[int, Monomial] | None:
    """Sort ``gens`` into canonical order, returning (sign, monomial).

    Returns None when a generator repeats (odd elements square to zero).
    """
    gens = list(gens)
    keys = [g.key() for g in gens]
    if len(set(keys)) < len(keys):
        return None
    order = sorted(range(len(gens)), key=keys.__getitem__)
    # parity of the permutation via cycle decomposition
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign, tuple(gens[i] for i in order)


def monomial_adams(m: Monomial) -> int:
    return sum(g.adams for g in m)


def monomial_coh(m: Monomial) -> int:
    return sum(g.coh for g in m)


def monomial_str(m: Monomial) -> str:
    return "*".join(str(g) for g in m) if m else "1"


class CdgaElement:
    """Exact rational combination of canonical monomials. Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def from_generators(cls, gens: Iterable[Generator], coeff: Scalar = 1) -> "CdgaElement":
        res = normalize(gens)
        if res is None:
            return cls()
        sign, m = res
        return cls({m: sign * Fraction(coeff)})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: [g.key() for g in kv[0]]))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = scalar(other)
        if not isinstance(other, CdgaElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "CdgaElement") -> "CdgaElement":
        if isinstance(other, (int, Fraction)):
            other = scalar(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return CdgaElement(out)

    __radd__ = __add__

    def __neg__(self) -> "CdgaElement":
        return CdgaElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "CdgaElement") -> "CdgaElement":
        return self + (-other)

    def __mul__(self, other) -> "CdgaElement":
        if isinstance(other, (int, Fraction)):
            return CdgaElement({m: c * other for m, c in self._terms.items()})
        if isinstance(other, CdgaElement):
            return product(self, other)
        return NotImplemented

    def __rmul__(self, other) -> "CdgaElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def d(self) -> "CdgaElement":
        return differential(self)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(monomial_adams(m), monomial_coh(m)) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    @property
    def coh(self) -> int:
        degs = {c for _, c in self.bidegrees()}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous in cohomological degree")
        return degs.pop()

    @property
    def adams(self) -> int:
        degs = {r for r, _ in self.bidegrees()}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous in Adams degree")
        return degs.pop()

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            parts.append(f"{c}*{monomial_str(m)}" if c != 1 else monomial_str(m))
        return " + ".join(parts)


def scalar(c: Scalar) -> CdgaElement:
    return CdgaElement({(): c})


ONE = scalar(1)
ZERO = CdgaElement()


def unit(u: FieldLike) -> CdgaElement:
    """The degree-one element ``(u)``."""
    return CdgaElement.from_generators([unit_generator(u)])


def rho(k: int, a: FieldLike) -> CdgaElement:
    """The polylog cycle ``rho_k(a)``; ``rho_1(a)`` is ``(1 - a)``."""
    return CdgaElement.from_generators([rho_generator(k, a)])


def product(z: CdgaElement, w: CdgaElement) -> CdgaElement:
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in z.terms.items():
        for m2, c2 in w.terms.items():
            res = normalize(m1 + m2)
            if res is None:
                continue
            sign, m = res
            out[m] = out.get(m, 0) + sign * c1 * c2
    return CdgaElement(out)


def generator_differential(g: Generator) -> CdgaElement:
    if g.kind == "unit":
        return ZERO
    return -product(unit(g.value), rho(g.k - 1, g.value))


def differential(z: CdgaElement) -> CdgaElement:
    out = ZERO
    for m, c in z.terms.items():
        sign = 1
        for i, g in enumerate(m):
            dg = generator_differential(g)
            if dg:
                left = CdgaElement({m[:i]: 1})
                right = CdgaElement({m[i + 1:]: 1})
                out = out + product(product(left, dg), right) * (sign * c)
            if g.coh % 2:
                sign = -sign
    return out


def augmentation(z: CdgaElement) -> Fraction:
    return z.terms.get((), Fraction(0))
