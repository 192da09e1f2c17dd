"""RK4 drift of the quadratic Casimir along the sl2 PostLie Lax flow for a ladder of step sizes."""

import argparse

from lietriple import catalog
from lietriple.laxsim import build_lax_pair, conservation_check, integrate, postlie_triple, quadratic_casimir


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-final", type=float, default=10.0)
    ap.add_argument("--a0", default="-10,20,30")
    ap.add_argument("--levels", type=int, default=4, help="number of step halvings starting at h = 2e-3")
    args = ap.parse_args()

    L = catalog.sl2()
    d = postlie_triple(L, catalog.named_operator(L, "minus-borel"), catalog.named_tensor("sl2", "casimir"), 1)
    pair = build_lax_pair(d, quadratic_casimir(d))
    a0 = [float(x) for x in args.a0.split(",")]

    print(f"{'h':>10} {'steps':>7} {'max rel drift':>14} {'ratio':>7}")
    prev = None
    h = 2e-3
    for _ in range(args.levels):
        steps = round(args.t_final / h)
        drift = conservation_check(pair, integrate(pair, a0, h, steps))["max_rel"]
        ratio = f"{prev / drift:7.2f}" if prev else " " * 7
        print(f"{h:10.2e} {steps:7d} {drift:14.3e} {ratio}")
        prev, h = drift, h / 2


if __name__ == "__main__":
    main()
