"""Rebuild a type II double as an extension and locate the image of g*.

Runs on two tensors over D(aff1): the J-family tensor (factorizable, Ker beta = 0)
and a rank-one symmetric part (Ker beta of dimension 3, nonzero cocycle).
"""

from lietriple.bialgebra_double import (
    build_double,
    cocycle_tau,
    exact_sequence,
    family_report,
    gstar_embedding,
    xi_lambda_forms,
)
from lietriple.instances import degenerate_type2_tensor, double_aff1
from lietriple.scalars import is_zero


def main():
    D = double_aff1()
    cases = {
        "J(1,0) r~+": family_report(D, "J", (1, 0))["r_tilde"]["plus"],
        "rank-one beta": degenerate_type2_tensor(),
    }
    for label, r in cases.items():
        DD = build_double(D.algebra, r)
        seq = exact_sequence(DD)
        print(f"== {label}: dim D = {DD.algebra.dim}, rank beta = {seq['rank_beta']}, "
              f"dim Ker beta = {seq['dim_kernel_beta']}, exact = {seq['exact']}")
        for sign in (1, -1):
            E = cocycle_tau(DD, sign)
            forms = xi_lambda_forms(DD, E)
            emb = gstar_embedding(DD, E)
            print(f"  tau{'+' if sign > 0 else '-'}: zero={is_zero(E.tau)}  "
                  f"iso={forms['structure_constants_equal']}  form pulled back={forms['form_is_pullback']}  "
                  f"d phi = -tau: {emb['coboundary_sign_minus']}  d phi = +tau: {emb['coboundary_sign_plus']}  "
                  f"g* recovered={emb['matches_gstar']}")


if __name__ == "__main__":
    main()
