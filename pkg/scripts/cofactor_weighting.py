"""Cofactor relation Y_alpha(i,j) M^{r+1} e = C cof(i,j) M^r e at symbolic k.

Literal cofactors give a ratio on off-diagonal (i, j) that is twice the diagonal
one; pairing with the symmetric derivative (weight 2 off the diagonal) gives a
single C.
"""

import argparse

from bolcheck.modules import cofactor_relation_check
from bolcheck.scalars import KAPPA, render


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--r-max", type=int, default=2)
    args = ap.parse_args()
    for n in range(1, args.n_max + 1):
        for r in range(args.r_max + 1):
            for w in ("literal", "symmetric"):
                rep = cofactor_relation_check(n, r, KAPPA, w)
                ratios = {
                    ij: (render(lhs.proportional_to(rhs)) if rhs else "rhs=0") for ij, (lhs, rhs) in sorted(rep.pairs.items())
                }
                head = f"n={n} r={r} {w:<9}"
                if rep.uniform:
                    print(f"{head} uniform C = {render(rep.C)}")
                else:
                    print(f"{head} ratios {ratios}")


if __name__ == "__main__":
    main()
