"""Table of the Bol extension constant c against the two candidate closed forms."""

import argparse
import json

from bolcheck.formal_forms import candidate_forms, monomial_test_set, verify_bol_extension
from bolcheck.scalars import render


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--index", default='{"1": [[[1]], [[2]], [[3]]], "2": [[[1,0],[0,1]], [[2,1],[1,2]], [[3,1],[1,1]]]}')
    args = ap.parse_args()
    mats = {int(k): v for k, v in json.loads(args.index).items()}
    print(f"{'n':>2} {'j':>2} {'M':<18} {'c':<16} {'stated form':<16} {'reciprocal':<16} matched")
    for n in (1, 2):
        for j in (1, 2):
            for M in mats[j]:
                rep = verify_bol_extension(n, j, M, 1, monomial_test_set(n, j, args.degree))
                forms = candidate_forms(n, j, M)
                print(
                    f"{n:>2} {j:>2} {str(M):<18} {render(rep.c) if rep.c is not None else '-':<16} "
                    f"{render(forms['stated']):<16} {render(forms['reciprocal']):<16} "
                    f"{','.join(rep.matched) or '-'}{'' if rep.holds else '  (not uniform)'}"
                )


if __name__ == "__main__":
    main()
