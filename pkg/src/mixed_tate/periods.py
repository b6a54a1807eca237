"""Numerics: polylogarithms, iterated integrals, and the integration map I.

Values are computed with 32 guard bits above the requested precision and
rounded once on output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from scipy import integrate

from .algebra import CdgaElement, augmentation
from .chains import ChainElement, ChainSymbol
from .field import FieldLike, evaluate
from .field import field as to_field

GUARD_BITS = 32
MIN_PREC = 64


def _check_prec(prec: int) -> None:
    if prec < MIN_PREC:
        raise ValueError(f"precision must be at least {MIN_PREC} bits")


def _round(x, prec: int):
    with mpmath.workprec(prec):
        return +x


def li(k: int, a, prec: int = 128) -> mpmath.mpc:
    """Li_k(a) = sum_{n >= 1} a^n / n^k for |a| < 1, summed until the tail
    bound |a|^{N+1} / ((N+1)^k (1 - |a|)) drops below 2^{-prec-guard}."""
    if k < 1:
        raise ValueError("Li_k needs k >= 1")
    _check_prec(prec)
    work = prec + GUARD_BITS
    with mpmath.workprec(work):
        z = mpmath.mpc(evaluate(a)) if not isinstance(a, (mpmath.mpc, mpmath.mpf, complex, float, int)) \
            else mpmath.mpc(a)
        r = abs(z)
        if r >= 1:
            raise ValueError(f"the series needs |a| < 1, got |a| = {mpmath.nstr(r, 8)}")
        if r == 0:
            return _round(mpmath.mpc(0), prec)
        eps = mpmath.ldexp(1, -work)
        total = mpmath.mpc(0)
        power = mpmath.mpc(1)
        n = 0
        while True:
            n += 1
            power *= z
            total += power / mpmath.mpf(n) ** k
            tail = r ** (n + 1) / (mpmath.mpf(n + 1) ** k * (1 - r))
            if tail < eps * max(abs(total), eps):
                break
    return _round(total, prec)


class QuadratureError(RuntimeError):
    pass


def iterated_quadrature(k: int, a: float, tol: float = 1e-10) -> float:
    """Li_k(a) as the iterated integral over 0 <= t_0 <= ... <= t_{k-1} <= a of
    dt_0/(1 - t_0) dt_1/t_1 ... dt_{k-1}/t_{k-1}, by nested adaptive quadrature."""
    if k < 1:
        raise ValueError("k >= 1 required")
    a = float(a)
    if not 0 < a < 1:
        raise ValueError("iterated_quadrature supports a in (0, 1)")
    inner_tol = tol / (10 * k)
    worst = [0.0]

    def quad(f, upper):
        val, err = integrate.quad(f, 0.0, upper, epsabs=inner_tol, epsrel=inner_tol, limit=200)
        worst[0] = max(worst[0], err)
        return val

    def F(m: int, t: float) -> float:
        # F_1(t) = int_0^t ds/(1 - s), F_m(t) = int_0^t F_{m-1}(s)/s ds
        if t == 0.0:
            return 0.0
        if m == 1:
            return quad(lambda s: 1.0 / (1.0 - s), t)
        return quad(lambda s: F(m - 1, s) / s if s > 0 else 1.0 if m == 2 else 0.0, t)

    value = F(k, a)
    if worst[0] > tol:
        raise QuadratureError(f"quadrature error estimate {worst[0]:.2e} exceeds tolerance {tol:.2e}")
    return value


# paths and the integration map ---------------------------------------------------

@dataclass(frozen=True)
class PathSpec:
    """Piecewise-linear path from 1 through ``via`` to the endpoint, avoiding 0."""

    end: object
    via: tuple = field(default_factory=tuple)

    def vertices(self, prec: int = 128) -> list[mpmath.mpc]:
        with mpmath.workprec(prec + GUARD_BITS):
            return [mpmath.mpc(1)] + [_point(v) for v in self.via] + [_point(self.end)]

    def check(self, prec: int = 128) -> None:
        pts = self.vertices(prec)
        with mpmath.workprec(prec + GUARD_BITS):
            for p, q in zip(pts, pts[1:]):
                if p == 0 or q == 0:
                    raise ValueError("path vertex at 0")
                # 0 lies on [p, q] iff p and q are negatively proportional
                cross = mpmath.im(p * mpmath.conj(q))
                if abs(cross) <= mpmath.ldexp(abs(p) * abs(q), -prec) and mpmath.re(p * mpmath.conj(q)) < 0:
                    raise ValueError("path segment passes through 0")

    def log(self, prec: int = 128) -> mpmath.mpc:
        """log of the endpoint continued along the path."""
        self.check(prec)
        pts = self.vertices(prec)
        with mpmath.workprec(prec + GUARD_BITS):
            total = mpmath.mpc(0)
            for p, q in zip(pts, pts[1:]):
                total += mpmath.log(q / p)
        return _round(total, prec)

    def describe(self) -> str:
        pts = ["1"] + [str(v) for v in self.via] + [str(self.end)]
        return "straight segments " + " -> ".join(pts)


def default_path(a: FieldLike) -> PathSpec:
    return PathSpec(to_field(a))


def _point(v) -> mpmath.mpc:
    """A path vertex: an exact field value, a Python/mpmath number, or a complex literal like '1+2j'."""
    if isinstance(v, (int, float, complex, mpmath.mpf, mpmath.mpc)):
        return mpmath.mpc(v)
    x = to_field(v)
    if x.free_symbols and isinstance(v, str):
        return mpmath.mpc(complex(v))
    return mpmath.mpc(evaluate(x))


class DegreeError(ValueError):
    pass


def _symbol_value(s: ChainSymbol, path: PathSpec | None, prec: int):
    two_pi_i = 2j * mpmath.pi
    if s.kind == "face":
        return mpmath.mpc(0)
    if s.kind == "eta":
        if s.i > 0:
            # the eta_k(i), i > 0, integrate to zero for reasons of type
            return mpmath.mpc(0)
        return -li(s.k, s.a, prec + GUARD_BITS) / two_pi_i ** s.k
    p = path if path is not None and to_field(path.end) == s.a else default_path(s.a)
    return (p.log(prec + GUARD_BITS) / two_pi_i) ** s.k


def I_map(x: ChainElement, path: PathSpec | None = None, prec: int = 128) -> mpmath.mpc:
    """Integration map on degree-0 chains.

    I(eta_k(0)) = -Li_k(a)/(2 pi i)^k, I(eta_k(i)) = 0 for i > 0,
    I(p^{o j}) = (log a / 2 pi i)^j along the path, I(z.g) = eps(z) I(g),
    and I is multiplicative on o-products.
    """
    _check_prec(prec)
    if x and x.degrees() != {0}:
        raise DegreeError(f"I is defined on degree 0, got degrees {sorted(x.degrees())}")
    with mpmath.workprec(prec + GUARD_BITS):
        total = mpmath.mpc(0)
        for (m, w), c in x.items():
            eps = augmentation(CdgaElement({m: 1}))
            if not eps:
                continue
            val = mpmath.mpf(c.numerator) / c.denominator * eps.numerator / eps.denominator
            for s in w:
                val *= _symbol_value(s, path, prec)
            total += val
    return _round(total, prec)


# Cauchy-Stokes on a disk -------------------------------------------------------------

@dataclass
class CauchyStokesReport:
    radius: str
    delta_integral: mpmath.mpc
    boundary_value: int
    residual: mpmath.mpc
    ok: bool


def cauchy_stokes_demo(radius, prec: int = 128, tol: float = 1e-10) -> CauchyStokesReport:
    """gamma = {|z| <= r} in P^1. Its topological boundary is the circle, where
    I_1 = (1/2 pi i) \\oint dz/z; its face boundary is the point z = 0 with
    intersection number 1. Checks I_0(face boundary) - I_1(circle) = 0."""
    _check_prec(prec)
    r = to_field(radius)
    with mpmath.workprec(prec + GUARD_BITS):
        rv = mpmath.mpf(evaluate(r).real)
        if not 0 < rv < 1:
            raise ValueError("radius must lie in (0, 1)")
        two_pi_i = 2j * mpmath.pi

        def integrand(theta):
            z = rv * mpmath.expj(theta)
            dz = 1j * z
            return dz / z

        delta = mpmath.quad(integrand, [0, mpmath.pi / 2, mpmath.pi, 3 * mpmath.pi / 2, 2 * mpmath.pi]) / two_pi_i
        boundary = 1  # face {z = 0} with sign +1, face {z = oo} missed
        residual = boundary - delta
    delta = _round(delta, prec)
    residual = _round(residual, prec)
    return CauchyStokesReport(str(r), delta, boundary, residual, abs(residual) <= tol)

