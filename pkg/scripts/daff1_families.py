"""Verdict table for the operator families on the double of (aff1, e1 ^ e2)."""

import argparse

from lietriple.bialgebra_double import family_report
from lietriple.instances import double_aff1, random_family_lambdas

CHOICES = [
    ("Rmu", (0,)), ("Rmu", (1,)), ("Rmu", (2,)),
    ("Nmu", (1,)), ("Nmu", (-2,)),
    ("Nk", (2, 3)), ("Nk", (-1, 2)),
    ("J", (1, 0)), ("J", (2, 1)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--draws", type=int, default=24)
    args = ap.parse_args()

    D = double_aff1()
    print(f"{'family':<12} {'N^2':>5} {'skew':>5}  r~+ / r~-")
    for kind, params in CHOICES:
        rep = family_report(D, kind, params)
        sq = "id" if rep["square_is_id"] else "-id" if rep["square_is_minus_id"] else "-"
        cls = " / ".join(f"{c.label}{' (fact.)' if c.factorizable else ''}" for c in rep["classification"].values())
        print(f"{kind + str(params):<12} {sq:>5} {str(rep['skew_adjoint']):>5}  {cls}")

    agree = 0
    draws = random_family_lambdas(args.seed, args.draws)
    for lam in draws:
        rep = family_report(D, "N", lam)
        agree += rep["skew_adjoint"] == (lam[1] + lam[3] == 0)
    print(f"\nskew-adjoint <=> l2 + l4 = 0 on {agree}/{len(draws)} random draws")


if __name__ == "__main__":
    main()
