"""Hodge realization of M_k(a): period matrices and their checks.

Betti classes are the twisted cocycles Z_k(a), L_1(a), ..., L_k(a); de Rham
basis vectors are e_0, ..., e_{-k}. The vector e_{-t} has Adams degree -t,
weight -2t and Hodge type (-t, -t), and is compared through (2 pi i)^t I.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath

from . import chains
from . import connection as conn
from . import polylog
from .bar import BarElement, bar_d
from .chains import CHAIN_MODULE, ChainElement
from .field import FieldLike, check_polylog_argument, evaluate, is_rational, one_minus, to_fraction
from .field import field as to_field
from .periods import GUARD_BITS, I_map, PathSpec, default_path, li


def _two_pi_i():
    return 2j * mpmath.pi


@dataclass
class PeriodMatrix:
    a: str
    precision_bits: int
    path: str
    betti_basis: list[str]
    derham_basis: list[str]
    adams: list[int]
    entries: list[list[mpmath.mpc]]
    k: int | None = None

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def weights(self) -> list[int]:
        return [2 * r for r in self.adams]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def max_diff(self, other: "PeriodMatrix") -> mpmath.mpf:
        if self.size != other.size:
            raise ValueError("period matrices of different sizes")
        return max(abs(x - y) for r1, r2 in zip(self.entries, other.entries) for x, y in zip(r1, r2))

    def to_document(self) -> dict:
        digits = int(self.precision_bits * 0.30103)

        def s(x):
            return mpmath.nstr(x, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf) if x else "0"

        return {
            "k": self.k,
            "a": self.a,
            "precision_bits": self.precision_bits,
            "path": self.path,
            "betti_basis": list(self.betti_basis),
            "derham_basis": list(self.derham_basis),
            "weights": self.weights,
            "entries": [[[s(mpmath.re(x)), s(mpmath.im(x))] for x in row] for row in self.entries],
        }


def _comparison(adams: Sequence[int], classes: Sequence[Mapping[int, ChainElement]],
                path: PathSpec | None, prec: int) -> list[list[mpmath.mpc]]:
    """Entry (t, c) = (2 pi i)^{-adams(t)} I(component t of class c)."""
    n = len(adams)
    rows = [[mpmath.mpc(0)] * len(classes) for _ in range(n)]
    with mpmath.workprec(prec + GUARD_BITS):
        for c, x in enumerate(classes):
            for t, g in x.items():
                rows[t][c] = _two_pi_i() ** (-adams[t]) * I_map(g, path, prec + GUARD_BITS)
    with mpmath.workprec(prec):
        return [[+v for v in row] for row in rows]


def _prepare(k: int, a: FieldLike, path: PathSpec | None, prec: int):
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    a = to_field(a)
    check_polylog_argument(a)
    path = path if path is not None else default_path(a)
    if to_field(path.end) != a:
        raise ValueError("the path must end at a")
    return a, path


def _quiet_build(k: int, a) -> polylog.PolylogMotive:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", polylog.DependenceWarning)
        return polylog.build(k, a)


def period_matrix_psi(k: int, a: FieldLike, path: PathSpec | None = None, prec: int = 128) -> PeriodMatrix:
    """Comparison of Psi(M_k(a)): columns are Z_k(a), L_1(a), ..., L_k(a)."""
    a, path = _prepare(k, a, path, prec)
    C = polylog.connection(k, a)
    classes = chains.betti_classes(k, a)
    for x in classes:
        if not chains.is_twisted_cocycle(C, x):
            raise AssertionError("Betti representative is not a twisted cocycle")
    entries = _comparison(C.adams, classes, path, prec)
    return PeriodMatrix(str(a), prec, path.describe(), _betti_names(k), C.names, C.adams, entries, k)


def _betti_names(k: int) -> list[str]:
    return [f"Z_{k}"] + [f"L_{j}" for j in range(1, k + 1)]


@dataclass
class PhiDetail:
    cocycles: bool
    residual: mpmath.mpf


def delta_class(V, x: Mapping[int, ChainElement]) -> dict[int, BarElement]:
    """Delta(sum_i m_i (x) g_i) = sum_{i, j} m_j (x) [coaction(i, j)] g_i in M (x) B(N, AC)."""
    out: dict[int, BarElement] = {}
    for i, g in x.items():
        for j in range(V.dim):
            word = V.coaction[i][j]
            if not word:
                continue
            terms = {}
            for (letters, _), cw in word.terms.items():
                for key, cg in g.terms.items():
                    terms[(letters, key)] = terms.get((letters, key), 0) + cw * cg
            out[j] = out.get(j, BarElement(module=CHAIN_MODULE)) + BarElement(terms, CHAIN_MODULE)
    return out


def period_matrix_phi(k: int, a: FieldLike, path: PathSpec | None = None, prec: int = 128,
                      detail: list | None = None) -> PeriodMatrix:
    """Comparison through the comodule: each Delta(class) in M (x) B(N, AC) is
    integrated in the module slot and solved against the de Rham vectors
    Delta(e_{-j}) of M (x) B(N)."""
    a, path = _prepare(k, a, path, prec)
    V = _quiet_build(k, a).as_comodule
    classes = chains.betti_classes(k, a)
    n = V.dim
    tw = [-r for r in V.adams]
    columns = []
    cocycles = True
    worst = mpmath.mpf(0)
    with mpmath.workprec(prec + GUARD_BITS):
        cache: dict = {}

        def integral(key):
            if key not in cache:
                cache[key] = I_map(ChainElement({key: 1}), path, prec + GUARD_BITS)
            return cache[key]

        for x in classes:
            dx = delta_class(V, x)
            cocycles &= all(not bar_d(e) for e in dx.values())
            target: dict = {}
            for j, e in dx.items():
                for (letters, key), c in e.terms.items():
                    adams = sum(g.adams for m in letters for g in m)
                    val = mpmath.mpf(c.numerator) / c.denominator * _two_pi_i() ** (tw[j] - adams) * integral(key)
                    target[(j, letters)] = target.get((j, letters), 0) + val
            # Delta(e_i) has the empty word only in slot i
            coeffs = [target.get((i, ()), mpmath.mpc(0)) for i in range(n)]
            resid = dict(target)
            for i, ci in enumerate(coeffs):
                for j in range(n):
                    for (letters, _), c in V.coaction[i][j].terms.items():
                        resid[(j, letters)] = resid.get((j, letters), 0) - ci * mpmath.mpf(c.numerator) / c.denominator
            worst = max([worst] + [abs(v) for v in resid.values()])
            columns.append(coeffs)
    with mpmath.workprec(prec):
        entries = [[+columns[c][t] for c in range(len(classes))] for t in range(n)]
    if detail is not None:
        detail.append(PhiDetail(cocycles, worst))
    if not cocycles:
        raise AssertionError("Delta of a Betti class is not a bar cocycle")
    return PeriodMatrix(str(a), prec, path.describe(), _betti_names(k), V.names, V.adams, entries, k)


def expected_matrix(k: int, a: FieldLike, prec: int = 128, log_a=None) -> PeriodMatrix:
    """1 and -Li_j(a) in column 0; (2 pi i)^j (log a)^{t-j}/(t-j)! at (t, j)."""
    a = to_field(a)
    with mpmath.workprec(prec + GUARD_BITS):
        la = log_a if log_a is not None else mpmath.log(evaluate(a))
        rows = []
        for t in range(k + 1):
            row = [mpmath.mpc(1) if t == 0 else -li(t, a, prec + GUARD_BITS)]
            for j in range(1, k + 1):
                row.append(_two_pi_i() ** j * la ** (t - j) / mpmath.factorial(t - j) if t >= j else mpmath.mpc(0))
            rows.append(row)
    with mpmath.workprec(prec):
        rows = [[+v for v in r] for r in rows]
    return PeriodMatrix(str(a), prec, "closed form", _betti_names(k), [b[0] for b in polylog.basis(k)],
                        [-t for t in range(k + 1)], rows, k)


def tate_matrix(r: int, prec: int = 128) -> PeriodMatrix:
    with mpmath.workprec(prec):
        v = +(_two_pi_i() ** r)
    return PeriodMatrix("-", prec, "-", [f"Q({r})"], [f"Q({r})"], [-r], [[v]])


def kronecker(P: PeriodMatrix, Q: PeriodMatrix) -> PeriodMatrix:
    """Kronecker product with pair indices in lexicographic order."""
    with mpmath.workprec(max(P.precision_bits, Q.precision_bits)):
        rows = [[P[i, c] * Q[i2, c2] for c in range(P.size) for c2 in range(Q.size)]
                for i in range(P.size) for i2 in range(Q.size)]
    return PeriodMatrix(f"{P.a},{Q.a}", min(P.precision_bits, Q.precision_bits), f"{P.path}; {Q.path}",
                        [f"{x}*{y}" for x in P.betti_basis for y in Q.betti_basis],
                        [f"{x}*{y}" for x in P.derham_basis for y in Q.derham_basis],
                        [r + s for r in P.adams for s in Q.adams], rows)


# mixed Tate Hodge structure checks -----------------------------------------------------

@dataclass
class MTHSReport:
    graded_types: list[tuple[int, int]]
    triangular_ok: bool
    diagonal_ok: bool
    graded_scalar_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.triangular_ok and self.diagonal_ok and self.graded_scalar_ok


def check_mths(P: PeriodMatrix, tol: float = 1e-10) -> MTHSReport:
    """Entries vanish from lower to higher weight, and on each weight-graded
    piece the comparison is the scalar (2 pi i)^r of Q(r)."""
    failures = []
    tri = diag = graded = True
    n = P.size
    with mpmath.workprec(P.precision_bits):
        for i in range(n):
            for j in range(n):
                x = P[i, j]
                if P.adams[i] > P.adams[j] and abs(x) > tol:
                    tri = False
                    failures.append(f"entry ({P.derham_basis[i]}, {P.betti_basis[j]}) should vanish")
                elif P.adams[i] == P.adams[j]:
                    want = _two_pi_i() ** (-P.adams[i]) if i == j else 0
                    if abs(x - want) > tol * max(1, abs(want)):
                        if i == j:
                            diag = False
                            failures.append(f"diagonal entry {i} is {mpmath.nstr(x, 12)}, expected (2 pi i)^{-P.adams[i]}")
                        else:
                            graded = False
                            failures.append(f"weight-graded piece {P.weights[i]} is not scalar")
    return MTHSReport([(r, r) for r in P.adams], tri, diag, graded, failures)


# Psi vs Phi, tensor products, regulator ----------------------------------------------------

@dataclass
class CompareReport:
    max_diff: mpmath.mpf
    phi_residual: mpmath.mpf
    phi_cocycles: bool
    ok: bool


def compare(k: int, a: FieldLike, path: PathSpec | None = None, prec: int = 128, tol: float = 1e-10) -> CompareReport:
    detail: list = []
    psi = period_matrix_psi(k, a, path, prec)
    phi = period_matrix_phi(k, a, path, prec, detail)
    diff = psi.max_diff(phi)
    d = detail[0]
    return CompareReport(diff, d.residual, d.cocycles, diff <= tol and d.residual <= tol and d.cocycles)


@dataclass
class TensorReport:
    max_diff: mpmath.mpf
    cocycles: bool
    matrix: PeriodMatrix
    ok: bool


def tensor_check(a: FieldLike, b: FieldLike, prec: int = 128, tol: float = 1e-10) -> TensorReport:
    """Psi(M_1(a) (x) M_1(b)) from o-products of Betti classes against the
    Kronecker product of the two period matrices."""
    a, b = to_field(a), to_field(b)
    Ca, Cb = polylog.connection(1, a), polylog.connection(1, b)
    C = conn.tensor(Ca, Cb)
    classes = [chains.tensor_class(x, y, Cb.dim) for x in chains.betti_classes(1, a) for y in chains.betti_classes(1, b)]
    cocycles = all(chains.is_twisted_cocycle(C, x) for x in classes)
    entries = _comparison(C.adams, classes, None, prec)
    Pa, Pb = period_matrix_psi(1, a, prec=prec), period_matrix_psi(1, b, prec=prec)
    K = kronecker(Pa, Pb)
    P = PeriodMatrix(f"{a},{b}", prec, K.path, K.betti_basis, C.names, C.adams, entries)
    diff = P.max_diff(K)
    return TensorReport(diff, cocycles, P, cocycles and diff <= tol)


@dataclass
class RegulatorReport:
    u: str
    period: mpmath.mpc
    integral: mpmath.mpc
    log_u: mpmath.mpc
    defect: Fraction
    error: mpmath.mpf
    ok: bool


def _mod_two_pi_i(x, tol) -> tuple[Fraction, mpmath.mpf]:
    """Nearest q in Q (denominator <= 12) with x ~ 2 pi i q, and |x - 2 pi i q|."""
    q = Fraction(float(mpmath.im(x) / (2 * mpmath.pi))).limit_denominator(12)
    return q, abs(x - _two_pi_i() * mpmath.mpf(q.numerator) / q.denominator)


def regulator_r1(u: FieldLike, prec: int = 128, tol: float = 1e-12) -> RegulatorReport:
    """For a unit u of Q, M_1(1 - u) = [u]; its period -Li_1(1 - u) and the
    integral of dz/z from 1 to u (the G with dG = -Z) both give log u modulo (2 pi i)Q."""
    u = to_field(u)
    if not is_rational(u):
        raise ValueError("regulator_r1 expects a rational u")
    if not 0 < to_fraction(u) < 1:
        raise ValueError("u must lie in (0, 1)")
    a = one_minus(u)
    check_polylog_argument(a)
    P = period_matrix_psi(1, a, prec=prec)
    with mpmath.workprec(prec + GUARD_BITS):
        uv = mpmath.mpf(evaluate(u).real)
        period = P[1, 0]
        integral = mpmath.quad(lambda t: (uv - 1) / (1 + t * (uv - 1)), [0, 1])
        log_u = mpmath.log(uv)
        q1, e1 = _mod_two_pi_i(period - log_u, tol)
        q2, e2 = _mod_two_pi_i(integral - log_u, tol)
        err = max(e1, e2)
    return RegulatorReport(str(u), period, integral, log_u, q1, err, err <= tol and q1 == q2)
