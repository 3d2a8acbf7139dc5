"""Print recovery scan tables for the Siegel and Jacobi modules at critical weight."""

import argparse

from gmpy2 import mpq

from bolcheck.modules import jacobi_module, recovery_scan, siegel_module
from bolcheck.scalars import render


def show(title, rows):
    print(title)
    for x in rows:
        w = "-" if x.weight is None else render(x.weight)
        extra = "" if x.index_ok is None else f"  index={x.index_ok}"
        print(f"  m={x.m}  weight={w:<6} holomorphic={x.holomorphic!s:<5}{extra}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-max", type=int, default=2)
    ap.add_argument("--symbolic", action="store_true", help="also print obstruction roots at symbolic k")
    args = ap.parse_args()
    for n in (1, 2, 3):
        for r in range(args.r_max + 1):
            if n == 3 and r > 1:
                continue
            k = mpq(-r) + mpq(n - 1, 2)
            show(f"siegel n={n} r={r} k={render(k)}", recovery_scan(siegel_module(n, k), r + 3))
    for n, j, M in ((1, 1, [[1]]), (2, 1, [[2]]), (1, 2, [[2, 1], [1, 1]])):
        for r in (1, 2):
            k = mpq(-r) + mpq(n + j + 1, 2)
            show(f"jacobi n={n} j={j} M={M} r={r} k={render(k)}", recovery_scan(jacobi_module(n, j, k, M), r + 2))
    if args.symbolic:
        for n in (1, 2, 3):
            rows = recovery_scan(siegel_module(n), 4)
            print(f"siegel n={n} symbolic k: " + ", ".join(f"m={x.m}: {[render(v) for v in x.obstruction_roots]}" for x in rows[1:]))


if __name__ == "__main__":
    main()
