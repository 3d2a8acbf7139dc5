"""Which power of det Z makes det(That M_{+,n}) proportional to det(Z)^n M_{+,n+j}?

For each (n, j) try det(Z)^a det(That M_{+,n}) for a = 0..j and report the
constant when the two sides are scalar multiples.
"""

import argparse

from bolcheck.jacobi_maps import JacobiMaps, That_M_plus, uea_ratio
from bolcheck.modules import jacobi_algebra
from bolcheck.scalars import render
from bolcheck.uea import build_M_plus, matrix_det


def scan(n, j):
    jm = JacobiMaps(jacobi_algebra(n, j))
    dT = matrix_det(That_M_plus(jm))
    rhs = jm.det_Z**n * build_M_plus(jm.ctx, n + j)[0]
    out = {}
    lhs = dT
    for a in range(j + 1):
        if a:
            lhs = jm.det_Z * lhs
        out[a] = uea_ratio(lhs, rhs)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", default="1,1;2,1;1,2;2,2")
    args = ap.parse_args()
    for pair in args.pairs.split(";"):
        n, j = (int(x) for x in pair.split(","))
        res = scan(n, j)
        cells = "  ".join(f"a={a}: {'-' if c is None else render(c)}" for a, c in res.items())
        print(f"(n, j) = ({n}, {j})  {cells}")


if __name__ == "__main__":
    main()
