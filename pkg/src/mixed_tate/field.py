"""Field elements used as tags on generators and chains.

Values are sympy expressions: exact rationals, symbols standing for a generic
element of the number field, or ``1 - a`` style combinations. Numeric work
binds symbols to complex values through an embedding mapping.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

import mpmath
import sympy

FieldLike = Union[int, Fraction, str, sympy.Expr]


def field(x: FieldLike) -> sympy.Expr:
    """Coerce ``x`` to a field value.

    Strings of the form ``p/q`` or integers become rationals, identifiers
    become symbols, and other strings are parsed as rational expressions in
    symbols (``"1 - a"``, ``"a/b"``).
    """
    if isinstance(x, sympy.Basic):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a field value")
    if isinstance(x, int):
        return sympy.Integer(x)
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        try:
            q = Fraction(s)
        except ValueError:
            if s.isidentifier():
                return sympy.Symbol(s)
            try:
                return sympy.expand(sympy.sympify(s, rational=True, convert_xor=True))
            except (sympy.SympifyError, SyntaxError, TypeError) as exc:
                raise ValueError(f"cannot parse {x!r} as a field value") from exc
        return sympy.Rational(q.numerator, q.denominator)
    raise TypeError(f"cannot interpret {x!r} as a field value")


def one_minus(x: FieldLike) -> sympy.Expr:
    return sympy.expand(1 - field(x))


def is_rational(x: sympy.Expr) -> bool:
    return bool(getattr(x, "is_Rational", False))


def to_fraction(x: sympy.Expr) -> Fraction:
    if not is_rational(x):
        raise ValueError(f"{x} is not an exact rational")
    return Fraction(int(x.p), int(x.q))


def sort_key(x: sympy.Expr) -> str:
    # srepr is deterministic across runs, unlike hash-based orderings
    return sympy.srepr(x)


def check_polylog_argument(a: sympy.Expr) -> None:
    if a == 0 or a == 1:
        raise ValueError(f"polylog argument must avoid 0 and 1, got {a}")


def evaluate(x: FieldLike, embedding: Mapping | None = None) -> mpmath.mpc:
    """Numeric value of ``x`` at the current mpmath precision.

    ``embedding`` maps symbols (or their names) to numbers; exact rationals
    in it are converted without rounding error beyond the working precision.
    """
    x = field(x)
    syms = sorted(x.free_symbols, key=str)
    if not syms:
        if is_rational(x):
            return mpmath.mpc(mpmath.mpf(int(x.p)) / int(x.q))
        return mpmath.mpc(complex(sympy.N(x, int(mpmath.mp.dps) + 10)))
    embedding = embedding or {}
    values = []
    for s in syms:
        if s in embedding:
            v = embedding[s]
        elif str(s) in embedding:
            v = embedding[str(s)]
        else:
            raise ValueError(f"no embedding value for symbol {s}")
        values.append(numeric(v))
    f = sympy.lambdify(syms, x, modules="mpmath")
    return mpmath.mpc(f(*values))


def numeric(v) -> mpmath.mpc:
    if isinstance(v, (str, int, Fraction)) or isinstance(v, sympy.Basic):
        return evaluate(field(v))
    return mpmath.mpc(v)


def multiplicatively_dependent(a: sympy.Expr, b: sympy.Expr) -> bool:
    """Whether rational ``a`` and ``b`` are dependent in ``Q^x (x) Q``.

    Signs are torsion and therefore ignored; a value ``+-1`` is the zero
    vector and makes the pair dependent.
    """
    fa, fb = _prime_vector(a), _prime_vector(b)
    primes = sorted(set(fa) | set(fb))
    if not primes:
        return True
    va = [fa.get(p, 0) for p in primes]
    vb = [fb.get(p, 0) for p in primes]
    if not any(va) or not any(vb):
        return True
    # rank < 2 iff all 2x2 minors vanish
    return all(va[i] * vb[j] - va[j] * vb[i] == 0
               for i in range(len(primes)) for j in range(i + 1, len(primes)))


def _prime_vector(x: sympy.Expr) -> dict[int, int]:
    q = to_fraction(x)
    if q == 0:
        raise ValueError("zero has no prime factorisation")
    out: dict[int, int] = {}
    for p, e in sympy.factorint(abs(q.numerator)).items():
        out[p] = out.get(p, 0) + e
    for p, e in sympy.factorint(q.denominator).items():
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in out.items() if e}
