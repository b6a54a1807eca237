"""The polylogarithm comodules M_k(a) and the Li_k(a) bar cocycles.

M_k(a) has basis e_0, e_{-1}, ..., e_{-k} (Adams degrees 0, -1, ..., -k) and
connection

    Gamma(e_0) = sum_j e_{-j} (x) rho_j(a),    Gamma(e_{-j}) = e_{-j-1} (x) (a).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import comodule as cm
from .algebra import rho, unit
from .bar import BarElement, bar_d
from .comodule import Comodule
from .connection import Connection, check_flat, from_entries, to_comodule
from .field import FieldLike, check_polylog_argument, is_rational, multiplicatively_dependent, one_minus
from .field import field as to_field


class DependenceWarning(UserWarning):
    """a and 1 - a are multiplicatively dependent, so (a) and (1 - a) are not independent letters."""


def basis(k: int) -> tuple[tuple[str, int], ...]:
    return tuple((f"e{-j}" if j else "e0", -j) for j in range(k + 1))


def li_word(k: int, a: FieldLike) -> BarElement:
    """Li_k(a) = [rho_k(a)] + [(a)|rho_{k-1}(a)] + ... + [(a)|...|(a)|rho_1(a)]."""
    if k < 1:
        raise ValueError("Li_k needs k >= 1")
    out = BarElement()
    for m in range(k):
        out = out + BarElement.word(*([unit(a)] * m), rho(k - m, a))
    return out


def power_word(a: FieldLike, n: int) -> BarElement:
    """[(a)|...|(a)] with n letters; the empty word for n = 0."""
    return BarElement.word(*([unit(a)] * n))


def connection(k: int, a: FieldLike) -> Connection:
    b = basis(k)
    entries = {}
    for j in range(1, k + 1):
        entries[(b[0][0], b[j][0])] = rho(j, a)
    for j in range(1, k):
        entries[(b[j][0], b[j + 1][0])] = unit(a)
    return from_entries(b, entries)


def coaction_formula(k: int, a: FieldLike) -> Comodule:
    """The coaction written down directly: Delta e_0 = sum e_{-j} (x) Li_j(a),
    Delta e_{-j} = sum_{t >= j} e_{-t} (x) [(a)|...|(a)] (t - j letters)."""
    b = basis(k)
    entries = {}
    for j in range(1, k + 1):
        entries[(b[0][0], b[j][0])] = li_word(j, a)
        for t in range(j + 1, k + 1):
            entries[(b[j][0], b[t][0])] = power_word(a, t - j)
    return cm.from_rows(b, entries)


@dataclass(frozen=True)
class PolylogMotive:
    k: int
    a: object
    as_comodule: Comodule
    as_connection: Connection
    dependent: bool = False


def build(k: int, a: FieldLike) -> PolylogMotive:
    """M_k(a) as a connection and as a comodule, cross-checked against each other."""
    if k < 1:
        raise ValueError("M_k(a) needs k >= 1")
    a = to_field(a)
    check_polylog_argument(a)
    dependent = is_rational(a) and multiplicatively_dependent(a, one_minus(a))
    if dependent:
        warnings.warn(f"a = {a} and 1 - a are multiplicatively dependent; (a) and (1 - a) are "
                      f"independent symbols of the free algebra but not in the true cycle algebra",
                      DependenceWarning, stacklevel=2)
    C = connection(k, a)
    if not check_flat(C):
        raise AssertionError("M_k(a) connection is not flat")
    V = to_comodule(C)
    if V != coaction_formula(k, a):
        raise AssertionError("to_comodule disagrees with the closed-form coaction")
    return PolylogMotive(k, a, V, C, dependent)


def li_entries_match(M: PolylogMotive) -> bool:
    """The e_0 row of the coaction consists of Li_j(a), j = 1..k."""
    row = M.as_comodule.coaction[0]
    return all(row[j] == li_word(j, M.a) for j in range(1, M.k + 1))


def entries_are_cocycles(M: PolylogMotive) -> bool:
    return all(not bar_d(e) for row in M.as_comodule.coaction for e in row)


@dataclass
class ExtensionReport:
    sub_ok: bool
    quotient_ok: bool
    sym_ok: bool
    factors: list[Fraction] | None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sub_ok and self.quotient_ok and self.sym_ok


def check_extension_structure(M: PolylogMotive) -> ExtensionReport:
    """M_k(a) is an extension of Q(0) by Sym^{k-1}([a])(1).

    ``factors[q]`` is the scalar lam with e_{-q-1} = lam * f_0^{k-1-q} f_{-1}^q,
    normalised so the last factor is 1.
    """
    V = M.as_comodule
    sub = list(range(1, M.k + 1))
    failures = []
    sub_ok = cm.is_subcomodule(V, sub)
    if not sub_ok:
        failures.append("span(e_-1, ..., e_-k) is not a sub-comodule")
    quotient_ok = False
    if sub_ok:
        Q = cm.quotient(V, sub)
        quotient_ok = Q.adams == [0] and Q.coaction[0][0] == BarElement.unit()
        if not quotient_ok:
            failures.append("quotient is not Q(0)")
    S = cm.twist(cm.sym_power(cm.kummer(M.a), M.k - 1), 1)
    factors = cm.diagonal_isomorphism(cm.restrict(V, sub), S)
    if factors is None:
        failures.append("no diagonal isomorphism with Sym^(k-1)([a])(1)")
    return ExtensionReport(sub_ok, quotient_ok, factors is not None, factors, failures)


def truncation(M: PolylogMotive, j: int) -> Comodule:
    """The quotient M_k(a) -> M_j(a) obtained by dropping e_{-j-1}, ..., e_{-k}."""
    if not 1 <= j <= M.k:
        raise ValueError("truncation level out of range")
    return cm.restrict(M.as_comodule, range(j + 1))
