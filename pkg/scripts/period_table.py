#!/usr/bin/env python3
"""Print the period matrices of M_k(a) on a grid, with the Psi/Phi gap and
the distance to the closed form."""

import argparse

import mpmath

from mixed_tate import hodge


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=3)
    ap.add_argument("--a", nargs="+", default=["1/4", "1/2", "3/4"])
    ap.add_argument("--prec", type=int, default=128)
    args = ap.parse_args()

    for a in args.a:
        for k in range(1, args.kmax + 1):
            P = hodge.period_matrix_psi(k, a, prec=args.prec)
            rep = hodge.compare(k, a, prec=args.prec)
            closed = P.max_diff(hodge.expected_matrix(k, a, prec=args.prec))
            print(f"M_{k}({a})  |Psi - Phi| = {mpmath.nstr(rep.max_diff, 3)}  "
                  f"|Psi - closed form| = {mpmath.nstr(closed, 3)}  mths: {hodge.check_mths(P).ok}")
            for name, row in zip(P.derham_basis, P.entries):
                cells = "  ".join(f"{mpmath.nstr(x, 10):>28}" for x in row)
                print(f"  {name:>4} {cells}")
        print()


if __name__ == "__main__":
    main()
