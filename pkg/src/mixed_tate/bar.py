"""Bar complex B(N) and B(N, M) over the cycle algebra.

A basis word is a pair ``(letters, right)``: ``letters`` is a tuple of
cdga monomials of positive Adams degree and ``right`` is a basis key of the
right module M, or ``None`` when M is Q acting through the augmentation.
Left modules other than Q are not supported.

Signs follow the standard internal/external differentials with
``J a = (-1)^{deg a} a``; the shuffle product uses Koszul signs on letter
degrees shifted down by one.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterator, Mapping, Protocol

from .algebra import (
    CdgaElement,
    Monomial,
    differential,
    monomial_adams,
    monomial_coh,
    monomial_str,
    normalize,
)

Key = tuple  # (letters, right)


class RightModule(Protocol):
    """What the bar complex needs from a differential N-module M."""

    def degree(self, key: Hashable) -> int: ...

    def d(self, key: Hashable) -> Mapping[Hashable, Fraction]: ...

    def act(self, m: Monomial, key: Hashable) -> Mapping[Hashable, Fraction]:
        """Left action of a cdga monomial ``m . key``."""
        ...

    def sort_key(self, key: Hashable) -> tuple: ...

    def describe(self, key: Hashable) -> str: ...


def _letter_key(m: Monomial) -> list:
    return [g.key() for g in m]


class BarElement:
    """Exact rational combination of bar words. Immutable."""

    __slots__ = ("_terms", "module", "_hash")

    def __init__(self, terms: Mapping[Key, Fraction] | None = None, module: RightModule | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[k] = c
        self._terms = clean
        self.module = module
        self._hash = None

    @classmethod
    def word(cls, *letters: CdgaElement, right: Hashable = None, module: RightModule | None = None,
             coeff: Fraction | int = 1) -> "BarElement":
        """Multilinear expansion of ``[letters] right``."""
        partial: dict[tuple, Fraction] = {(): Fraction(coeff)}
        for letter in letters:
            nxt: dict[tuple, Fraction] = {}
            for prefix, c in partial.items():
                for m, cm in letter.terms.items():
                    if monomial_adams(m) <= 0:
                        raise ValueError(f"bar letters must have positive Adams degree, got {monomial_str(m)}")
                    nxt[prefix + (m,)] = nxt.get(prefix + (m,), 0) + c * cm
            partial = nxt
        return cls({(ls, right): c for ls, c in partial.items()}, module)

    @classmethod
    def unit(cls) -> "BarElement":
        return cls({((), None): Fraction(1)})

    @property
    def terms(self) -> Mapping[Key, Fraction]:
        return self._terms

    def sort_key(self, key: Key) -> tuple:
        letters, right = key
        rk = () if right is None else self.module.sort_key(right)
        return (len(letters), [_letter_key(m) for m in letters], rk)

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: self.sort_key(kv[0])))

    def _like(self, terms) -> "BarElement":
        return BarElement(terms, self.module)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BarElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "BarElement") -> "BarElement":
        if not isinstance(other, BarElement):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BarElement(out, self.module or other.module)

    def __neg__(self) -> "BarElement":
        return self._like({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "BarElement") -> "BarElement":
        return self + (-other)

    def __mul__(self, c) -> "BarElement":
        if isinstance(c, (int, Fraction)):
            return self._like({k: v * c for k, v in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def degree_of(self, key: Key) -> int:
        letters, right = key
        rdeg = 0 if right is None else self.module.degree(right)
        return sum(monomial_coh(m) for m in letters) + rdeg - len(letters)

    def adams_of(self, key: Key) -> int:
        return sum(monomial_adams(m) for m in key[0])

    def degrees(self) -> set[int]:
        return {self.degree_of(k) for k in self._terms}

    def adams_degrees(self) -> set[int]:
        return {self.adams_of(k) for k in self._terms}

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (letters, right), c in self.items():
            w = "[" + "|".join(monomial_str(m) for m in letters) + "]"
            if right is not None:
                w += self.module.describe(right)
            parts.append(w if c == 1 else f"{c}*{w}")
        return " + ".join(parts)


def empty_word() -> BarElement:
    return BarElement.unit()


def _J(m: Monomial) -> int:
    return -1 if monomial_coh(m) % 2 else 1


def _mono_times(m1: Monomial, m2: Monomial) -> tuple[int, Monomial] | None:
    return normalize(m1 + m2)


def _add(out: dict, key: Key, c: Fraction) -> None:
    out[key] = out.get(key, 0) + c


def d_internal(x: BarElement) -> BarElement:
    out: dict[Key, Fraction] = {}
    mod = x.module
    for (letters, right), c in x.terms.items():
        s = len(letters)
        jsign = 1  # product of J signs of letters before position i
        for i, a in enumerate(letters):
            da = differential(CdgaElement({a: 1}))
            for m, cm in da.terms.items():
                key = (letters[:i] + (m,) + letters[i + 1:], right)
                _add(out, key, (-1) ** (i + 1) * jsign * c * cm)
            jsign *= _J(a)
        if right is not None:
            for r2, cr in mod.d(right).items():
                _add(out, (letters, r2), (-1) ** s * jsign * c * cr)
    return x._like(out)


def d_external(x: BarElement) -> BarElement:
    out: dict[Key, Fraction] = {}
    mod = x.module
    for (letters, right), c in x.terms.items():
        s = len(letters)
        jsign = 1
        for i in range(s - 1):
            a, b = letters[i], letters[i + 1]
            res = _mono_times(a, b)
            if res is not None:
                sign, m = res
                key = (letters[:i] + (m,) + letters[i + 2:], right)
                _add(out, key, (-1) ** (i + 2) * jsign * _J(a) * sign * c)
            jsign *= _J(a)
        if s and right is not None:
            prefix_sign = 1
            for a in letters[:-1]:
                prefix_sign *= _J(a)
            for r2, cr in mod.act(letters[-1], right).items():
                _add(out, (letters[:-1], r2), (-1) ** (s - 1) * prefix_sign * c * cr)
        # the first external term and the last one for M = Q vanish: letters lie in N_+
    return x._like(out)


def bar_d(x: BarElement) -> BarElement:
    return d_internal(x) + d_external(x)


def is_cocycle(x: BarElement) -> bool:
    if x and x.degrees() != {0}:
        raise ValueError(f"is_cocycle expects bar degree 0, got degrees {sorted(x.degrees())}")
    return not bar_d(x)


# shuffle product -----------------------------------------------------------

def _shifted(m: Monomial) -> int:
    return monomial_coh(m) - 1


@lru_cache(maxsize=65536)
def _shuffle_words(u: tuple, v: tuple) -> tuple[tuple[tuple, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict[tuple, int] = {}
    for w, s in _shuffle_words(u[1:], v):
        out[(u[0],) + w] = out.get((u[0],) + w, 0) + s
    # moving v[0] in front of all of u
    su = sum(_shifted(m) for m in u)
    sign = -1 if (_shifted(v[0]) * su) % 2 else 1
    for w, s in _shuffle_words(u, v[1:]):
        out[(v[0],) + w] = out.get((v[0],) + w, 0) + sign * s
    return tuple((w, s) for w, s in out.items() if s)


def shuffle(x: BarElement, y: BarElement) -> BarElement:
    if x.module is not None or y.module is not None:
        raise ValueError("shuffle is defined on B(N) only")
    out: dict[Key, Fraction] = {}
    for (u, _), cx in x.terms.items():
        for (v, _), cy in y.terms.items():
            for w, s in _shuffle_words(u, v):
                _add(out, (w, None), s * cx * cy)
    return BarElement(out)


def shuffle_power(x: BarElement, n: int) -> BarElement:
    out = BarElement.unit()
    for _ in range(n):
        out = shuffle(out, x)
    return out


# coproduct and counit ----------------------------------------------------

class Tensor:
    """Formal sum of tensors of bar words; only the last slot may carry a
    module element. Keys are tuples of word keys."""

    __slots__ = ("terms", "arity", "module")

    def __init__(self, terms: Mapping[tuple, Fraction], arity: int, module: RightModule | None = None):
        self.terms = {k: Fraction(c) for k, c in terms.items() if c}
        self.arity = arity
        self.module = module

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Tensor(out, self.arity, self.module or other.module)

    def __neg__(self) -> "Tensor":
        return Tensor({k: -c for k, c in self.terms.items()}, self.arity, self.module)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def factor(self, i: int, key: Key) -> BarElement:
        return BarElement({key: 1}, self.module if i == self.arity - 1 else None)

    def __repr__(self) -> str:
        parts = []
        for ks, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            parts.append(f"{c}*" + " (x) ".join(repr(self.factor(i, k)) for i, k in enumerate(ks)))
        return " + ".join(parts) if parts else "0"


def _split(key: Key) -> Iterator[tuple[Key, Key]]:
    letters, right = key
    for i in range(len(letters) + 1):
        yield (letters[:i], None), (letters[i:], right)


def coproduct(x: BarElement) -> Tensor:
    out: dict[tuple, Fraction] = {}
    for key, c in x.terms.items():
        for left, right in _split(key):
            _add(out, (left, right), c)
    return Tensor(out, 2, x.module)


def counit(x: BarElement) -> Fraction:
    if x.module is not None:
        raise ValueError("the counit is defined on B(N) only")
    return x.terms.get(((), None), Fraction(0))


def coproduct_slot(t: Tensor, slot: int) -> Tensor:
    """Apply the coproduct in tensor slot ``slot`` (raising arity by one)."""
    out: dict[tuple, Fraction] = {}
    for ks, c in t.terms.items():
        for left, right in _split(ks[slot]):
            _add(out, ks[:slot] + (left, right) + ks[slot + 1:], c)
    return Tensor(out, t.arity + 1, t.module)


def counit_slot(t: Tensor, slot: int) -> Tensor | BarElement:
    """Apply the counit in tensor slot ``slot``."""
    if slot == t.arity - 1 and t.module is not None:
        raise ValueError("the counit is defined on B(N) only")
    out: dict[tuple, Fraction] = {}
    for ks, c in t.terms.items():
        if ks[slot] == ((), None):
            _add(out, ks[:slot] + ks[slot + 1:], c)
    if t.arity == 2:
        return BarElement({k[0]: c for k, c in out.items()}, t.module if slot == 0 else None)
    return Tensor(out, t.arity - 1, t.module)


def tensor_product(t: Tensor, s: Tensor) -> Tensor:
    """Product in B(N)^{(x) n} with the Koszul rule for interchanging factors."""
    if t.arity != s.arity:
        raise ValueError("arity mismatch")
    n = t.arity
    out: dict[tuple, Fraction] = {}
    for ks, c1 in t.terms.items():
        degs1 = [_word_degree(k) for k in ks]
        for ls, c2 in s.terms.items():
            degs2 = [_word_degree(k) for k in ls]
            # move each factor of s past the later factors of t
            swap = sum(degs2[j] * degs1[i] for j in range(n) for i in range(j + 1, n)) % 2
            partial: dict[tuple, Fraction] = {(): c1 * c2 * (-1 if swap else 1)}
            for i in range(n):
                nxt: dict[tuple, Fraction] = {}
                for pre, c in partial.items():
                    for w, sg in _shuffle_words(ks[i][0], ls[i][0]):
                        _add(nxt, pre + ((w, None),), c * sg)
                partial = nxt
            for k, c in partial.items():
                _add(out, k, c)
    return Tensor(out, n)


def _word_degree(key: Key) -> int:
    return sum(_shifted(m) for m in key[0])


def tensor_d(t: Tensor) -> Tensor:
    """Differential on B(N) (x) B(N,M): d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db."""
    out: dict[tuple, Fraction] = {}
    for ks, c in t.terms.items():
        sign = 1
        for i, k in enumerate(ks):
            elem = t.factor(i, k)
            for k2, c2 in bar_d(elem).terms.items():
                _add(out, ks[:i] + (k2,) + ks[i + 1:], sign * c * c2)
            sign *= -1 if elem.degree_of(k) % 2 else 1
    return Tensor(out, t.arity, t.module)


def as_tensor(x: BarElement) -> Tensor:
    return Tensor({(k,): c for k, c in x.terms.items()}, 1, x.module)

