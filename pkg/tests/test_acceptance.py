"""Acceptance criteria, one test each. Every test prints a single PASS/FAIL line
with the pinned tolerance and time limit.

Run standalone with ``python3 tests/test_acceptance.py``.
"""

import time
from fractions import Fraction

import mpmath
import pytest

from mixed_tate import comodule as cm
from mixed_tate import connection as cn
from mixed_tate import cycle_faces as cf
from mixed_tate import hodge, periods, polylog
from mixed_tate.algebra import ZERO, rho, unit
from mixed_tate.bar import bar_d
from mixed_tate.properties import CHECKS, hopf_suite

PREC = 128
GRID = [(k, a) for k in range(1, 4) for a in ("1/4", "1/2", "3/4")]

C1_SECONDS = 10.0
C3_SECONDS = 60.0
C6_TOL, C6_SECONDS = 1e-10, 5.0
C7_TOL = 1e-10
C8_TOL, C8_SECONDS = 1e-6, 30.0
C9_TOL = 1e-10
C10_TOL = 1e-12
C11_TOL = 1e-10
HOPF_SAMPLES = 200


@pytest.fixture
def report(capsys):
    def emit(criterion: int, ok: bool, text: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {criterion:2d}] {'PASS' if ok else 'FAIL'}: {text}")
        assert ok, text
    return emit


def test_c01_li_words_are_cocycles(report):
    t0 = time.perf_counter()
    bad = [k for k in range(1, 7) if bar_d(polylog.li_word(k, "a"))]
    dt = time.perf_counter() - t0
    report(1, not bad and dt < C1_SECONDS,
           f"bar_d(Li_k(a)) = 0 exactly for k = 1..6 (failures {bad}); {dt:.2f}s < {C1_SECONDS}s")


def test_c02_flatness(report):
    flat = [cn.check_flat(polylog.connection(k, "a")) for k in range(1, 7)]
    broken = cn.check_flat(polylog.connection(3, "a").with_entry("e0", "e-2", ZERO))
    report(2, all(flat) and not broken,
           f"M_k(a) flat for k = 1..6: {flat}; M_3(a) without rho_2 flat: {broken}")


def test_c03_boundary_of_rho(report):
    results, times = {}, {}
    for k in (2, 3, 4):
        t0 = time.perf_counter()
        lhs = cf.boundary(cf.rho_cycle(k, "a"))
        rhs = cf.realize(-(unit("a") * rho(k - 1, "a")))
        results[k] = cf.alt_equal(lhs, rhs)
        times[k] = time.perf_counter() - t0
    report(3, all(results.values()) and times[4] < C3_SECONDS,
           f"boundary(rho_k) = -(a) rho_(k-1) exactly for k = 2,3,4: {results}; "
           f"k = 4 took {times[4]:.2f}s < {C3_SECONDS}s")


def test_c04_hopf_suite(report):
    res = hopf_suite(HOPF_SAMPLES, seed=0, max_len=4)
    failing = {n: c for n, c in res.failures.items() if c}
    report(4, res.ok and res.samples >= HOPF_SAMPLES and set(res.failures) == set(CHECKS),
           f"{len(CHECKS)} Hopf identities on {res.samples} seeded words of length <= 4, "
           f"failures: {failing or 'none'}")


def test_c05_kernel_identity(report):
    got = {}
    for k in range(1, 5):
        rep = cm.kernel_identity(polylog.build(k, "a").as_comodule)
        got[k] = (rep.kernel_dim, rep.equals_image)
    ok = all(got[k] == (k + 1, True) for k in got)
    report(5, ok, f"(kernel_dim, equals_image) for M_k(a), k = 1..4: {got}")


def test_c06_period_matrix_closed_form(report):
    worst_diff, worst_time, mths = mpmath.mpf(0), 0.0, True
    for k, a in GRID:
        t0 = time.perf_counter()
        P = hodge.period_matrix_psi(k, a, prec=PREC)
        worst_time = max(worst_time, time.perf_counter() - t0)
        worst_diff = max(worst_diff, P.max_diff(hodge.expected_matrix(k, a, prec=PREC)))
        with mpmath.workprec(PREC):
            # column 0 once more against mpmath's own polylog
            x = mpmath.mpf(Fraction(a).numerator) / Fraction(a).denominator
            for t in range(1, k + 1):
                worst_diff = max(worst_diff, abs(P[t, 0] + mpmath.polylog(t, x)))
        mths &= hodge.check_mths(P).ok
    report(6, worst_diff <= C6_TOL and worst_time < C6_SECONDS and mths,
           f"Psi(M_k(a)) vs closed form, k = 1..3, a in 1/4,1/2,3/4 at {PREC} bits: "
           f"max diff {mpmath.nstr(worst_diff, 3)} <= {C6_TOL}; slowest {worst_time:.2f}s < {C6_SECONDS}s")


def test_c07_psi_equals_phi(report):
    worst = mpmath.mpf(0)
    for k, a in GRID:
        psi = hodge.period_matrix_psi(k, a, prec=PREC)
        phi = hodge.period_matrix_phi(k, a, prec=PREC)
        worst = max(worst, psi.max_diff(phi))
    report(7, worst <= C7_TOL, f"Psi vs Phi on the same grid: max diff {mpmath.nstr(worst, 3)} <= {C7_TOL}")


def test_c08_quadrature_vs_series(report):
    worst, slowest = 0.0, 0.0
    for k in range(1, 4):
        for a in ("1/4", "1/2", "3/4"):
            t0 = time.perf_counter()
            q = periods.iterated_quadrature(k, float(Fraction(a)))
            dt = time.perf_counter() - t0
            if k == 3:
                slowest = max(slowest, dt)
            worst = max(worst, abs(q - float(periods.li(k, a).real)))
    report(8, worst <= C8_TOL and slowest < C8_SECONDS,
           f"|quadrature - series| for k <= 3: max {worst:.2e} <= {C8_TOL}; k = 3 slowest {slowest:.2f}s < {C8_SECONDS}s")


def test_c09_cauchy_stokes(report):
    reps = [periods.cauchy_stokes_demo(r, prec=PREC, tol=C9_TOL) for r in ("1/4", "1/2")]
    worst = max(abs(r.delta_integral - 1) for r in reps)
    report(9, all(r.ok and r.boundary_value == 1 for r in reps) and worst <= C9_TOL,
           f"disk radii 1/4, 1/2: intersection value 1, |I_1(circle) - 1| max {mpmath.nstr(worst, 3)} <= {C9_TOL}")


def test_c10_regulator(report):
    reps = [hodge.regulator_r1(u, prec=PREC, tol=C10_TOL) for u in ("1/2", "3/4")]
    errs = [mpmath.nstr(r.error, 3) for r in reps]
    report(10, all(r.ok for r in reps), f"regulator r = 1 at u = 1/2, 3/4 agrees with log u: errors {errs} <= {C10_TOL}")


def test_c11_tensor(report):
    reps = [hodge.tensor_check(a, b, prec=PREC, tol=C11_TOL) for a, b in (("1/2", "1/2"), ("1/4", "1/2"))]
    diffs = [mpmath.nstr(r.max_diff, 3) for r in reps]
    report(11, all(r.ok for r in reps), f"Psi(M_1(a) x M_1(b)) vs Kronecker product: diffs {diffs} <= {C11_TOL}")


def test_c12_ext_vanishing(report):
    supports = {n: cn.validate_degrees([("Q(0)", 0), (f"Q({n})", -n)]) for n in range(-10, 1)}
    report(12, all(s == [] for s in supports.values()),
           "validate_degrees on Q(0) + Q(n) is empty for n = -10..0")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
