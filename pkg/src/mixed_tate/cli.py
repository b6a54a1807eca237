"""Command-line entry point: verification suites, periods and Hodge checks.

Exit codes: 0 when every check passes, 1 when one fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import partial
from typing import Callable

import mpmath

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
K_RANGE = (1, 8)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    k: int = 2
    a: str = "1/2"
    b: str = "1/2"
    u: str = "1/2"
    precision_bits: int = 128
    tolerance: float = 1e-10
    seed: int = 0
    samples: int = 200
    output: str | None = None
    parallel: bool = False

    def validate(self) -> None:
        if not K_RANGE[0] <= self.k <= K_RANGE[1]:
            raise UsageError(f"--k must lie in {K_RANGE[0]}..{K_RANGE[1]}, got {self.k}")
        if self.precision_bits < 64:
            raise UsageError(f"--prec must be at least 64, got {self.precision_bits}")
        if not self.tolerance > 0:
            raise UsageError("--tol must be positive")
        if self.samples < 1:
            raise UsageError("--samples must be positive")


def parse_value(text: str) -> tuple[str, str | None]:
    """Field value from the command line: 'p/q' exactly, a decimal read exactly
    as a rational (with a note), or a symbol name for exact checks."""
    text = text.strip()
    if re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        q = Fraction(text)
        return str(q), None
    try:
        q = Fraction(Decimal(text))
    except (InvalidOperation, ValueError):
        q = None
    if q is not None:
        return str(q), f"decimal {text} read exactly as {q}"
    if re.fullmatch(r"[A-Za-z_]\w*", text):
        return text, None
    raise UsageError(f"cannot read {text!r} as a rational, decimal or symbol")


def _numeric(value: str) -> str:
    if re.fullmatch(r"[A-Za-z_]\w*", value):
        raise UsageError(f"this command needs a numeric value, got symbol {value!r}")
    return value


# checks: each returns (passed, detail) ----------------------------------------------------

def _quiet(fn, *args):
    from .polylog import DependenceWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DependenceWarning)
        return fn(*args)


def check_hopf(name: str, result) -> tuple[bool, str]:
    n = result.failures.get(name, 0)
    detail = f"{result.samples - n}/{result.samples} samples"
    if n:
        detail += f"; first failure: {result.first_failure[name]}"
    return n == 0, detail


def check_flat_mk(k: int, a: str) -> tuple[bool, str]:
    from . import connection, polylog

    C = polylog.connection(k, a)
    return connection.check_flat(C), f"M_{k}({a}) connection"


def check_flat_without_rho2(k: int, a: str) -> tuple[bool, str]:
    from . import connection, polylog
    from .algebra import ZERO

    C = polylog.connection(k, a).with_entry("e0", "e-2", ZERO)
    flat = connection.check_flat(C)
    return not flat, f"rho_2 entry removed: check_flat = {flat}"


def check_coaction_cocycles(k: int, a: str) -> tuple[bool, str]:
    from . import polylog

    M = _quiet(polylog.build, k, a)
    return polylog.entries_are_cocycles(M) and polylog.li_entries_match(M), \
        "to_comodule entries are bar cocycles and the e0 row is Li_1..Li_k"


def check_li_cocycle(j: int, a: str) -> tuple[bool, str]:
    from .bar import bar_d
    from .polylog import li_word

    w = li_word(j, a)
    return not bar_d(w), f"Li_{j}({a}) has {len(w.terms)} words"


def check_boundary(j: int, a: str) -> tuple[bool, str]:
    from .cycle_faces import alt_equal, boundary, point, product, rho_cycle

    lhs = boundary(rho_cycle(j, a))
    rhs = -product(point(a), rho_cycle(j - 1, a))
    return alt_equal(lhs, rhs), f"boundary = {lhs.simplify()}"


def check_boundary_squared(j: int, a: str) -> tuple[bool, str]:
    from .cycle_faces import boundary, rho_cycle

    bb = boundary(boundary(rho_cycle(j, a)))
    return bb.is_zero(), "boundary of boundary vanishes"


def check_proper(j: int, a: str) -> tuple[bool, str]:
    from .cycle_faces import is_proper, rho_cycle

    return is_proper(rho_cycle(j, a)), "all iterated faces resolve with the expected codimension"


def check_comodule_axioms(k: int, a: str) -> tuple[bool, str]:
    from . import comodule, polylog

    r = comodule.check_axioms(_quiet(polylog.build, k, a).as_comodule)
    return r.ok, "; ".join(r.failures) or "degree, coassociativity and counit"


def check_kernel(k: int, a: str) -> tuple[bool, str]:
    from . import comodule, polylog

    r = comodule.kernel_identity(_quiet(polylog.build, k, a).as_comodule)
    return r.kernel_dim == k + 1 and r.equals_image, \
        f"kernel_dim = {r.kernel_dim}, equals_image = {r.equals_image}, span_dim = {r.span_dim}"


def check_extension(k: int, a: str) -> tuple[bool, str]:
    from . import polylog

    r = polylog.check_extension_structure(_quiet(polylog.build, k, a))
    factors = ", ".join(str(f) for f in r.factors) if r.factors else "none"
    return r.ok, f"diagonal factors [{factors}]" + ("; " + "; ".join(r.failures) if r.failures else "")


def check_li_value(j: int, a: str, prec: int, tol: float) -> tuple[bool, str]:
    from .field import evaluate
    from .periods import li

    v = li(j, a, prec)
    with mpmath.workprec(prec + 32):
        ref = mpmath.polylog(j, evaluate(a))
        err = abs(v - ref)
    return err <= tol, f"Li_{j}({a}) = {mpmath.nstr(v, 20)}, |series - mpmath.polylog| = {mpmath.nstr(err, 3)}"


def check_quadrature(j: int, a: str, prec: int, tol: float) -> tuple[bool, str]:
    from .field import evaluate
    from .periods import iterated_quadrature, li

    q = iterated_quadrature(j, float(evaluate(a).real), min(tol, 1e-8))
    err = abs(q - li(j, a, prec))
    return err <= max(tol, 1e-6), f"|quadrature - series| = {mpmath.nstr(err, 3)}"


def check_matrix_closed_form(k: int, a: str, prec: int, tol: float) -> tuple[bool, str]:
    from . import hodge

    d = hodge.period_matrix_psi(k, a, prec=prec).max_diff(hodge.expected_matrix(k, a, prec))
    return d <= tol, f"max entry difference {mpmath.nstr(d, 3)}"


def check_matrix_mths(k: int, a: str, prec: int, tol: float) -> tuple[bool, str]:
    from . import hodge

    r = hodge.check_mths(hodge.period_matrix_psi(k, a, prec=prec), tol)
    return r.ok, "; ".join(r.failures) or f"graded types {r.graded_types}"


def check_psi_phi(k: int, a: str, prec: int, tol: float) -> tuple[bool, str]:
    from . import hodge

    r = hodge.compare(k, a, prec=prec, tol=tol)
    return r.ok, (f"max |Psi - Phi| = {mpmath.nstr(r.max_diff, 3)}, Phi residual {mpmath.nstr(r.phi_residual, 3)}, "
                  f"Delta classes are cocycles: {r.phi_cocycles}")


def check_tensor(a: str, b: str, prec: int, tol: float) -> tuple[bool, str]:
    from . import hodge

    r = hodge.tensor_check(a, b, prec, tol)
    return r.ok, f"max |Psi(M x M') - kron| = {mpmath.nstr(r.max_diff, 3)}, tensor classes are cocycles: {r.cocycles}"


def check_regulator(u: str, prec: int, tol: float) -> tuple[bool, str]:
    from . import hodge

    r = hodge.regulator_r1(u, prec, tol)
    return r.ok, (f"period {mpmath.nstr(r.period, 20)}, integral {mpmath.nstr(r.integral, 20)}, "
                  f"log u {mpmath.nstr(r.log_u, 20)}, error {mpmath.nstr(r.error, 3)} mod 2 pi i Q")


def check_cauchy_stokes(radius: str, prec: int, tol: float) -> tuple[bool, str]:
    from .periods import cauchy_stokes_demo

    r = cauchy_stokes_demo(radius, prec, tol)
    return r.ok, f"I_1(circle) = {mpmath.nstr(r.delta_integral, 15)}, residual {mpmath.nstr(r.residual, 3)}"


# command assembly --------------------------------------------------------------------------

Task = tuple  # (name, anchor, callable)

HOPF_ANCHORS = {
    "d_squared": "bar complex differential squares to zero",
    "d_internal_external_anticommute": "internal and external bar differentials anticommute",
    "coassociativity": "deconcatenation coproduct is coassociative",
    "counitarity": "empty-word counit is a counit",
    "shuffle_leibniz": "bar differential is a derivation of the shuffle product",
    "shuffle_associativity": "shuffle product is associative",
    "shuffle_graded_commutativity": "shuffle product is graded commutative",
    "coproduct_algebra_map": "coproduct is multiplicative for the shuffle product",
    "coproduct_chain_map": "coproduct commutes with the differential",
}


def _tasks(cfg: RunConfig, a: str) -> list[Task]:
    cmd, k, prec, tol = cfg.command, cfg.k, cfg.precision_bits, cfg.tolerance
    if cmd == "verify hopf":
        from .properties import CHECKS, hopf_suite

        result = hopf_suite(cfg.samples, cfg.seed, 4)
        return [(f"hopf.{n}", HOPF_ANCHORS[n], partial(check_hopf, n, result)) for n in CHECKS]
    if cmd == "verify flatness":
        tasks = [(f"flat.M_{k}", "a connection is flat when d Gamma + Gamma^2 = 0", partial(check_flat_mk, k, a))]
        if k >= 2:
            tasks.append(("flat.rho2_removed", "flatness fails once the rho_2 entry is dropped",
                          partial(check_flat_without_rho2, k, a)))
        tasks.append(("flat.coaction", "a flat connection gives cocycle coaction entries",
                      partial(check_coaction_cocycles, k, a)))
        return tasks
    if cmd == "verify cocycle":
        return [(f"cocycle.Li_{j}", "Li_j(a) is a cocycle in the bar complex", partial(check_li_cocycle, j, a))
                for j in range(1, k + 1)]
    if cmd == "verify faces":
        tasks = []
        for j in range(2, k + 1):
            tasks.append((f"faces.boundary_rho_{j}", "boundary of rho_k(a) is -(a) rho_{k-1}(a)",
                          partial(check_boundary, j, a)))
            tasks.append((f"faces.boundary_squared_rho_{j}", "cubical boundary squares to zero",
                          partial(check_boundary_squared, j, a)))
            tasks.append((f"faces.proper_rho_{j}", "polylog cycles meet all faces properly",
                          partial(check_proper, j, a)))
        if not tasks:
            tasks.append(("faces.boundary_rho_1", "rho_1(a) is a point and has no boundary",
                          partial(check_boundary_squared, 1, a)))
        return tasks
    if cmd == "verify comodule":
        return [
            (f"comodule.axioms_M_{k}", "coaction axioms: degree, coassociativity, counitarity",
             partial(check_comodule_axioms, k, a)),
            (f"comodule.kernel_M_{k}", "kernel of Delta_V - Delta equals the image of Delta_V",
             partial(check_kernel, k, a)),
            (f"comodule.extension_M_{k}", "M_k(a) is an extension of Q by Sym^(k-1)([a])(1)",
             partial(check_extension, k, a)),
        ]
    if cmd == "periods li":
        return [(f"periods.Li_{j}", "series value of Li_j(a) against an independent evaluation",
                 partial(check_li_value, j, _numeric(a), prec, tol)) for j in range(1, k + 1)]
    if cmd == "periods quadcheck":
        if k > 3:
            raise UsageError("periods quadcheck supports --k up to 3")
        tasks = [(f"periods.quadrature_Li_{j}", "Li_j(a) as an iterated integral over the simplex",
                  partial(check_quadrature, j, _numeric(a), prec, tol)) for j in range(1, k + 1)]
        tasks.append(("periods.cauchy_stokes_disk", "I_{n-1}(face boundary) + (-1)^n I_n(topological boundary) = 0",
                      partial(check_cauchy_stokes, "1/2", prec, tol)))
        return tasks
    if cmd == "hodge matrix":
        a = _numeric(a)
        return [
            (f"hodge.closed_form_M_{k}", "period matrix of Psi(M_k(a)) in closed form",
             partial(check_matrix_closed_form, k, a, prec, tol)),
            (f"hodge.mths_M_{k}", "weight-graded pieces are Tate structures Q(r)",
             partial(check_matrix_mths, k, a, prec, tol)),
        ]
    if cmd == "hodge compare":
        return [(f"hodge.psi_phi_M_{k}", "the comparison Psi -> Phi is an isomorphism",
                 partial(check_psi_phi, k, _numeric(a), prec, tol))]
    if cmd == "hodge tensor":
        b, _ = parse_value(cfg.b)
        return [("hodge.tensor_M_1", "Psi is compatible with tensor products",
                 partial(check_tensor, _numeric(a), _numeric(b), prec, tol))]
    if cmd == "regulator":
        u, _ = parse_value(cfg.u)
        return [("regulator.r1", "the regulator square commutes for r = 1",
                 partial(check_regulator, _numeric(u), prec, tol))]
    raise UsageError(f"unknown command {cmd!r}")


def _run_task(fn: Callable) -> tuple[bool, str]:
    try:
        return fn()
    except UsageError:
        raise
    except Exception as exc:  # a check that crashes is a failed check
        return False, f"{type(exc).__name__}: {exc}"


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Run the checks of one command; returns (exit code, machine report)."""
    cfg.validate()
    a, note = parse_value(cfg.a)
    tasks = _tasks(cfg, a)
    fns = [t[2] for t in tasks]
    if cfg.parallel and len(fns) > 1:
        with ProcessPoolExecutor() as pool:
            outcomes = list(pool.map(_run_task, fns))
    else:
        outcomes = [_run_task(f) for f in fns]
    checks = [{"name": name, "paper_anchor": anchor, "status": "pass" if ok else "fail", "detail": detail}
              for (name, anchor, _), (ok, detail) in zip(tasks, outcomes)]
    config = asdict(cfg)
    config.pop("output")
    config.pop("parallel")
    config["tolerance"] = repr(cfg.tolerance)
    if note:
        config["conversion_note"] = note
    report = {"command": cfg.command, "config": config, "checks": checks}
    if cfg.command == "hodge matrix":
        from . import hodge

        report["matrix"] = hodge.period_matrix_psi(cfg.k, a, prec=cfg.precision_bits).to_document()
    code = EXIT_OK if all(c["status"] == "pass" for c in checks) else EXIT_FAIL
    return code, report


def render(report: dict) -> str:
    lines = [f"{report['command']}:"]
    for c in report["checks"]:
        lines.append(f"  {c['status'].upper():4} {c['name']}: {c['detail']}")
    m = report.get("matrix")
    if m:
        lines.append(f"  period matrix (rows {', '.join(m['derham_basis'])}; columns {', '.join(m['betti_basis'])}):")
        for row in m["entries"]:
            lines.append("    " + "  ".join(f"{float(re_):+.12g}{float(im):+.12g}i" for re_, im in row))
    return "\n".join(lines)


COMMANDS = {
    "verify": ["hopf", "flatness", "cocycle", "faces", "comodule"],
    "periods": ["li", "quadcheck"],
    "hodge": ["matrix", "compare", "tensor"],
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=2, help="polylog depth, 1..8")
    p.add_argument("--a", default="1/2", help="argument a: p/q, decimal, or a symbol name for exact checks")
    p.add_argument("--prec", type=int, default=128, help="working precision in bits (>= 64)")
    p.add_argument("--tol", type=float, default=1e-10, help="numeric tolerance")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--samples", type=int, default=200, help="random samples for verify hopf")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.add_argument("--parallel", action="store_true", help="run independent checks in worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mixed-tate", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    for group, subs in COMMANDS.items():
        g = groups.add_parser(group)
        inner = g.add_subparsers(dest="sub", required=True, parser_class=_Parser)
        for s in subs:
            p = inner.add_parser(s)
            _common(p)
            if (group, s) == ("hodge", "tensor"):
                p.add_argument("--b", default="1/2", help="second argument b")
    reg = groups.add_parser("regulator")
    _common(reg)
    reg.add_argument("--u", default="1/2", help="unit u in (0, 1)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = args.group if args.group == "regulator" else f"{args.group} {args.sub}"
    cfg = RunConfig(command, args.k, args.a, getattr(args, "b", "1/2"), getattr(args, "u", "1/2"),
                    args.prec, args.tol, args.seed, args.samples, args.out, args.parallel)
    try:
        code, report = run(cfg)
    except UsageError as exc:
        print(f"mixed-tate: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(report))
    if cfg.output:
        with open(cfg.output, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
