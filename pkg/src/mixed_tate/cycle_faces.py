"""Parametrized cubical cycles, their faces, and alternation by canonical forms.

A cycle in the cube (P^1)^n is the image of a rational map from (P^1)^m whose
coordinates are either monomials ``c * prod x_p^e`` or ``1 - monomial``; the
constant ``c`` is a sympy expression in the field symbols. Alternation under
G_n = {+-1}^n x| S_n (coordinate inversions and permutations, each with its
sign) is handled by choosing a canonical representative of each orbit rather
than expanding the 2^n n! sum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

import sympy

from .algebra import CdgaElement
from .field import FieldLike, check_polylog_argument, field, is_rational, sort_key


class UnresolvedFace(ValueError):
    """A face this grammar cannot intersect properly."""


Params = tuple  # tuple[(param index, exponent), ...] sorted by index, exponents nonzero


def _clean(params: Iterable[tuple[int, int]]) -> Params:
    acc: dict[int, int] = {}
    for p, e in params:
        acc[p] = acc.get(p, 0) + e
    return tuple(sorted((p, e) for p, e in acc.items() if e))


@dataclass(frozen=True)
class Mono:
    c: sympy.Expr
    params: Params = ()

    def inverse(self) -> "Mono":
        return Mono(1 / self.c, tuple((p, -e) for p, e in self.params))

    def key(self) -> tuple:
        return (0, sort_key(self.c), self.params)

    def __str__(self) -> str:
        parts = [] if self.c == 1 and self.params else [str(self.c)]
        for p, e in self.params:
            parts.append(f"x{p + 1}" if e == 1 else f"x{p + 1}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class OneMinus:
    m: Mono

    def key(self) -> tuple:
        return (1, sort_key(self.m.c), self.m.params)

    @property
    def params(self) -> Params:
        return self.m.params

    def __str__(self) -> str:
        return f"1 - {self.m}"


CoordExpr = Union[Mono, OneMinus]

# markers produced while substituting into a coordinate
_ONE, _ZERO, _INF = "one", "zero", "inf"


def one_minus(m: Mono) -> CoordExpr | str:
    """1 - m, folding constants where the result is again a monomial."""
    if not m.params:
        if m.c == 1:
            return _ZERO
        if is_rational(m.c):
            return Mono(1 - m.c)
    return OneMinus(m)


def _constant(v: sympy.Expr) -> CoordExpr:
    """A constant coordinate in the grammar: a monomial or 1 - monomial."""
    if v == 0 or v == 1:
        raise ValueError("a point coordinate must differ from 0 and 1")
    if not isinstance(v, sympy.Add):
        return Mono(v)
    w = sympy.expand(1 - v)
    if isinstance(w, sympy.Add):
        raise ValueError(f"{v} is neither a monomial nor 1 - monomial")
    return OneMinus(Mono(w))


def _negativity(m: Mono) -> int:
    neg = sum(1 for _, e in m.params if e < 0)
    for base, e in m.c.as_powers_dict().items():
        if not base.is_number and e < 0:
            neg += 1
    num, den = sympy.fraction(m.c) if m.c.is_Rational else (1, 1)
    return neg + (1 if abs(den) > abs(num) else 0)


def _mono_or_one(m: Mono) -> Mono | str:
    return _ONE if not m.params and m.c == 1 else m


@dataclass(frozen=True)
class ParamCycle:
    coeff: Fraction
    coords: tuple
    params: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def m(self) -> int:
        return len(self.params)

    def __str__(self) -> str:
        return f"{self.coeff} * (" + ", ".join(str(c) for c in self.coords) + ")"


class AltCycle:
    """Formal combination of parametrized cycles taken modulo alternation.

    Representatives are kept in the order given so faces can be read off
    coordinate by coordinate; equality goes through ``canonical``.
    """

    __slots__ = ("reps", "n")

    def __init__(self, reps: Iterable[ParamCycle] = (), n: int | None = None):
        self.reps = tuple(r for r in reps if r.coeff)
        ns = {r.n for r in self.reps}
        if len(ns) > 1:
            raise ValueError("representatives live in different cubes")
        self.n = ns.pop() if ns else n

    def __add__(self, other: "AltCycle") -> "AltCycle":
        return AltCycle(self.reps + other.reps, self.n if self.n is not None else other.n)

    def __neg__(self) -> "AltCycle":
        return self * -1

    def __sub__(self, other: "AltCycle") -> "AltCycle":
        return self + (-other)

    def __mul__(self, c) -> "AltCycle":
        return AltCycle((ParamCycle(r.coeff * Fraction(c), r.coords, r.params) for r in self.reps), self.n)

    __rmul__ = __mul__

    def canonical(self) -> dict[tuple, Fraction]:
        out: dict[tuple, Fraction] = {}
        for r in self.reps:
            res = canonical_form(r.coords, r.params)
            if res is None:
                continue
            sign, key = res
            out[key] = out.get(key, 0) + sign * r.coeff
        return {k: c for k, c in out.items() if c}

    def simplify(self) -> "AltCycle":
        reps = []
        for (coords, m), c in sorted(self.canonical().items(), key=lambda kv: repr(kv[0])):
            reps.append(ParamCycle(c, coords, tuple(range(m))))
        return AltCycle(reps, self.n)

    def is_zero(self) -> bool:
        return not self.canonical()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if not self.reps:
            return "0"
        return " + ".join(str(r) for r in self.reps)


def alt_equal(c1: AltCycle, c2: AltCycle) -> bool:
    if c1.n is not None and c2.n is not None and c1.n != c2.n:
        return False
    return c1.canonical() == c2.canonical()


# canonical forms ------------------------------------------------------------

def _transform_params(e: CoordExpr, relabel: dict[int, int], flips: set[int]) -> CoordExpr:
    mono = e.m if isinstance(e, OneMinus) else e
    new = Mono(mono.c, _clean((relabel[p], -x if p in flips else x) for p, x in mono.params))
    return OneMinus(new) if isinstance(e, OneMinus) else new


def _orient(e: CoordExpr) -> tuple[int, CoordExpr] | None:
    """Pick the smaller of e and 1/e; None if e is its own inverse."""
    if isinstance(e, OneMinus):
        return 1, e
    inv = e.inverse()
    if inv == e:
        return None
    return (1, e) if (_negativity(e), e.key()) <= (_negativity(inv), inv.key()) else (-1, inv)


def _sort_sign(keys: list) -> tuple[int, list] | None:
    order = sorted(range(len(keys)), key=keys.__getitem__)
    if any(keys[order[i]] == keys[order[i + 1]] for i in range(len(order) - 1)):
        return None
    inversions = sum(1 for i, j in itertools.combinations(range(len(order)), 2) if order[i] > order[j])
    return (-1) ** inversions, order


def canonical_form(coords: tuple, params: tuple[int, ...]) -> tuple[int, tuple] | None:
    """(sign, key) with Alt(coords) = sign * Alt(canonical), or None if the
    cycle is killed by alternation or its parametrization is degenerate."""
    if _rank(coords, params) < len(params):
        return None
    best: tuple | None = None
    signs: set[int] = set()
    for perm in itertools.permutations(range(len(params))):
        relabel = {p: perm[i] for i, p in enumerate(params)}
        for flip_bits in itertools.product((False, True), repeat=len(params)):
            flips = {p for p, f in zip(params, flip_bits) if f}
            sign = 1
            oriented = []
            for e in coords:
                res = _orient(_transform_params(e, relabel, flips))
                if res is None:
                    return None
                s, e2 = res
                sign *= s
                oriented.append(e2)
            keys = [e.key() for e in oriented]
            res = _sort_sign(keys)
            if res is None:
                return None
            s, order = res
            key = (tuple(oriented[i] for i in order), len(params))
            cmp = tuple(keys[i] for i in order)
            if best is None or cmp < best[0]:
                best, signs = (cmp, key), {sign * s}
            elif cmp == best[0]:
                signs.add(sign * s)
    if best is None:
        return None
    if len(signs) > 1:
        # a sign-reversing element stabilizes the cycle
        return None
    return signs.pop(), best[1]


def _rank(coords: tuple, params: tuple[int, ...]) -> int:
    if not params:
        return 0
    rows = []
    for e in coords:
        exps = dict(e.params)
        rows.append([exps.get(p, 0) for p in params])
    return sympy.Matrix(rows).rank() if rows else 0


# constructors -----------------------------------------------------------------

def point(*values: FieldLike, coeff=1) -> AltCycle:
    """The point (u_1, ..., u_n) of the cube."""
    coords = [_constant(field(v)) for v in values]
    return AltCycle([ParamCycle(Fraction(coeff), tuple(coords), ())], len(coords))


def rho_cycle(k: int, a: FieldLike) -> AltCycle:
    """(-1)^{k(k-1)/2} times the image of
    (x_1, ..., x_{k-1}, 1 - x_1, 1 - x_2/x_1, ..., 1 - a/x_{k-1})."""
    if k < 1:
        raise ValueError("rho_k needs k >= 1")
    a = field(a)
    check_polylog_argument(a)
    if k == 1:
        c = one_minus(Mono(a))
        return AltCycle([ParamCycle(Fraction(1), (c,), ())], 1)
    xs = [Mono(sympy.Integer(1), ((p, 1),)) for p in range(k - 1)]
    tail = [OneMinus(xs[0])]
    for p in range(1, k - 1):
        tail.append(OneMinus(Mono(sympy.Integer(1), ((p - 1, -1), (p, 1)))))
    tail.append(OneMinus(Mono(a, ((k - 2, -1),))))
    sign = (-1) ** (k * (k - 1) // 2)
    return AltCycle([ParamCycle(Fraction(sign), tuple(xs + tail), tuple(range(k - 1)))], 2 * k - 1)


def product(c1: AltCycle, c2: AltCycle) -> AltCycle:
    """Exterior product: concatenate coordinates, parameters of c2 shifted."""
    reps = []
    for r1 in c1.reps:
        shift = max(r1.params, default=-1) + 1
        for r2 in c2.reps:
            relabel = {p: p + shift for p in r2.params}
            coords2 = tuple(_transform_params(e, relabel, set()) for e in r2.coords)
            reps.append(ParamCycle(r1.coeff * r2.coeff, r1.coords + coords2,
                                   r1.params + tuple(relabel[p] for p in r2.params)))
    n = (c1.n or 0) + (c2.n or 0)
    return AltCycle(reps, n)


def realize(z: CdgaElement) -> AltCycle:
    """The cycle of a cdga element: (u) is a point, rho_k(a) the polylog cycle,
    products are exterior products in monomial order."""
    total = None
    for mono, c in z.items():
        cyc = point(coeff=c)
        for g in mono:
            cyc = product(cyc, point(g.value) if g.kind == "unit" else rho_cycle(g.k, g.value))
        total = cyc if total is None else total + cyc
    return total if total is not None else AltCycle()


# faces -------------------------------------------------------------------------

def _subst_zero_inf(e: CoordExpr, p: int, to_zero: bool):
    """Substitute x_p = 0 (to_zero) or x_p = infinity."""
    mono = e.m if isinstance(e, OneMinus) else e
    exps = dict(mono.params)
    if p not in exps:
        return e
    goes_zero = (exps[p] > 0) == to_zero
    if isinstance(e, OneMinus):
        return _ONE if goes_zero else _INF
    return _ZERO if goes_zero else _INF


def _subst_mono(e: CoordExpr, p: int, s: Mono):
    """Substitute x_p = s."""
    mono = e.m if isinstance(e, OneMinus) else e
    exps = dict(mono.params)
    if p not in exps:
        return e
    k = exps.pop(p)
    new = Mono(mono.c * s.c ** k, _clean(list(exps.items()) + [(q, k * x) for q, x in s.params]))
    if isinstance(e, OneMinus):
        return one_minus(new)
    return _mono_or_one(new)


def _solutions(e: CoordExpr, alpha: str) -> list[tuple[int, int, object]]:
    """Components of {e = alpha}: (multiplicity, param, value) with value 0, inf or a Mono."""
    if alpha == _ZERO and isinstance(e, OneMinus):
        m = e.m
        unit_exp = [(p, x) for p, x in m.params if abs(x) == 1]
        if not m.params:
            return []
        if not unit_exp:
            raise UnresolvedFace(f"cannot solve {e} = 0 for a parameter with exponent +-1")
        p, x = unit_exp[-1]
        rest = [(q, y) for q, y in m.params if q != p]
        # c * x_p^x * rest = 1
        if x == 1:
            sol = Mono(1 / m.c, tuple((q, -y) for q, y in rest))
        else:
            sol = Mono(m.c, tuple(rest))
        return [(1, p, sol)]
    mono = e.m if isinstance(e, OneMinus) else e
    want_zero = alpha == _ZERO and isinstance(e, Mono)
    out = []
    for p, x in mono.params:
        to_zero = (x > 0) == want_zero
        out.append((abs(x), p, _ZERO if to_zero else _INF))
    return out


def face(C: AltCycle, i: int, alpha) -> AltCycle:
    """Intersection with the face {x_i = alpha}, i counted from 1, alpha 0 or oo."""
    alpha = _ZERO if alpha in (0, "0", _ZERO) else _INF if alpha in ("inf", "oo", sympy.oo, float("inf"), _INF) else None
    if alpha is None:
        raise ValueError("face value must be 0 or infinity")
    if C.n is not None and not 1 <= i <= C.n:
        raise ValueError(f"face index {i} out of range 1..{C.n}")
    reps = []
    for r in C.reps:
        e = r.coords[i - 1]
        others = r.coords[:i - 1] + r.coords[i:]
        for mult, p, value in _solutions(e, alpha):
            if value in (_ZERO, _INF):
                new = [_subst_zero_inf(o, p, value == _ZERO) for o in others]
            else:
                new = [_subst_mono(o, p, value) for o in others]
            if _ONE in new:
                continue
            if _ZERO in new or _INF in new:
                raise UnresolvedFace(
                    f"face ({i}, {'0' if alpha == _ZERO else 'oo'}) of {r} leaves a constant 0 or oo coordinate")
            params = tuple(q for q in r.params if q != p)
            if _rank(tuple(new), params) < len(params):
                continue
            reps.append(ParamCycle(r.coeff * mult, tuple(new), params))
    return AltCycle(reps, C.n - 1 if C.n else C.n)


def boundary(C: AltCycle) -> AltCycle:
    """sum_i (-1)^{i-1} (face(i, 0) - face(i, oo)), simplified."""
    total = AltCycle(n=C.n - 1 if C.n else C.n)
    for i in range(1, (C.n or 0) + 1):
        sign = (-1) ** (i - 1)
        total = total + face(C, i, 0) * sign - face(C, i, _INF) * sign
    return total.simplify()


def iterated_faces(C: AltCycle, depth: int) -> Iterator[tuple[tuple, AltCycle]]:
    """All nonzero faces reached by up to ``depth`` face operations."""
    frontier = [((), C)]
    for _ in range(depth):
        nxt = []
        for path, cyc in frontier:
            for i in range(1, (cyc.n or 0) + 1):
                for alpha in (_ZERO, _INF):
                    f = face(cyc, i, alpha)
                    if f:
                        nxt.append((path + ((i, alpha),), f))
                        yield path + ((i, alpha),), f
        frontier = nxt


def is_proper(C: AltCycle) -> bool:
    """Every iterated face resolves and keeps the expected codimension."""
    codims = {r.n - r.m for r in C.reps}
    try:
        for _, f in iterated_faces(C, max((r.m for r in C.reps), default=0) + 1):
            if any(r.n - r.m not in codims for r in f.reps):
                return False
    except UnresolvedFace:
        return False
    return True
