from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from conftest import q_matrix, small_q
from lietriple import catalog
from lietriple.bialgebra_double import build_double, family_report
from lietriple.scalars import exact_array, is_zero
from lietriple.yangbaxter import (
    classify,
    cocommutator,
    cybe_residual,
    dual_bracket,
    ecybe_residual,
    invariant_symmetric_tensors,
    is_lie_bialgebra,
    map_as_tensor,
    split_alpha_beta,
    symmetric_part_invariant,
    tensor_as_map,
    type2_equivalences,
    type2_residual,
)

ALGS = ["sl2", "aff1", "heisenberg3"]
OMEGA = catalog.named_tensor("sl2", "casimir")


def invariant_symmetric_oracle(L):
    """Dimension of invariant symmetric tensors via sympy linsolve on symbolic entries."""
    n = L.dim
    syms = sympy.symbols(f"t0:{n * n}")
    T = sympy.Matrix(n, n, syms)
    eqs = [T[i, j] - T[j, i] for i in range(n) for j in range(i + 1, n)]
    ad = [sympy.Matrix(n, n, [sympy.Rational(str(x)) for x in m.flat]) for m in L.ad()]
    for A in ad:
        eqs.extend(A * T + T * A.T)
    sol = sympy.linsolve(eqs, syms)
    (vec,) = sol
    return len(set().union(*[sympy.sympify(v).free_symbols for v in vec]))


@pytest.mark.parametrize("name", ALGS + ["sl3"])
def test_invariant_symmetric_dimension(name):
    L = catalog.get_algebra(name)
    basis = invariant_symmetric_tensors(L)
    assert len(basis) == invariant_symmetric_oracle(L)
    for w in basis:
        assert symmetric_part_invariant(L, w)


def test_sl2_invariant_symmetric_is_casimir_line():
    (w,) = invariant_symmetric_tensors(catalog.sl2())
    ratio = w[0, 0] / OMEGA[0, 0]
    assert is_zero(w - OMEGA * ratio)


@pytest.mark.parametrize("name", ALGS)
@given(data=st.data())
@settings(max_examples=15, deadline=None)
def test_cybe_and_ecybe_match_bruteforce(name, data):
    L = catalog.get_algebra(name)
    n = L.dim
    r = data.draw(q_matrix(n, n))
    eps = data.draw(small_q)
    assert cybe_residual(L, r).tolist() == oracles.cybe(L.sc.tolist(), r.tolist())
    assert ecybe_residual(L, r, eps).tolist() == oracles.ecybe(L.sc.tolist(), r.tolist(), eps)


@given(q_matrix(3, 3))
@settings(max_examples=20, deadline=None)
def test_map_tensor_roundtrip(r):
    assert map_as_tensor(tensor_as_map(r)).tolist() == r.tolist()
    a, b = split_alpha_beta(r)
    assert is_zero(a + a.T) and is_zero(b - b.T) and is_zero(a + b - r)


def test_named_tensor_classifications():
    assert classify(catalog.aff1(), catalog.named_tensor("aff1", "r-wedge")).label == "triangular"
    assert classify(catalog.sl2(), catalog.named_tensor("sl2", "h-wedge-e")).label == "triangular"


def test_standard_sl2_r_matrix_is_factorizable_quasitriangular():
    # Omega + (E (x) F - F (x) E)/4 = H (x) H / 8 + E (x) F / 2
    r = exact_array([["1/8", 0, 0], [0, 0, "1/2"], [0, 0, 0]])
    c = classify(catalog.sl2(), r)
    assert (c.label, c.factorizable) == ("quasitriangular", True)
    assert oracles.cybe(catalog.sl2().sc.tolist(), r.tolist()) == cybe_residual(catalog.sl2(), r).tolist()


def test_casimir_solves_ecybe_only_at_quarter_mass():
    # with alpha = 0 the equivalence reduces to kappa [beta a, beta b] = 0, i.e. kappa = 0
    L = catalog.sl2()
    assert is_zero(ecybe_residual(L, OMEGA, Fraction(1, 4)))
    for eps in (Fraction(0), Fraction(1, 2), Fraction(1)):
        assert not is_zero(ecybe_residual(L, OMEGA, eps))


def test_type2_residual_is_half_mass():
    L = catalog.sl2()
    r = exact_array([[0, 1, "1/2"], [-1, 0, 0], [0, 0, 0]])
    assert type2_residual(L, r).tolist() == ecybe_residual(L, r, Fraction(1, 2)).tolist()


@pytest.mark.parametrize("name", ["sl2", "aff1"])
@given(data=st.data())
@settings(max_examples=10, deadline=None)
def test_dual_bracket_matches_bruteforce(name, data):
    L = catalog.get_algebra(name)
    n = L.dim
    alpha = data.draw(q_matrix(n, n))
    alpha = alpha - alpha.T
    inv = invariant_symmetric_tensors(L)
    r = alpha + (inv[0] * data.draw(small_q) if inv else 0)
    D, _ = dual_bracket(cocommutator(L, r))
    assert D.sc.tolist() == oracles.dual_bracket_sc(L.sc.tolist(), r.tolist())


def test_aff1_wedge_is_bialgebra_and_random_sl2_symmetric_is_not():
    assert is_lie_bialgebra(catalog.aff1(), catalog.named_tensor("aff1", "r-wedge"))
    r = exact_array([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    v = is_lie_bialgebra(catalog.sl2(), r)
    assert not v and "condition (i)" in v.detail


def test_type2_equivalences_agree_on_family_tensor():
    D = build_double(catalog.aff1(), catalog.named_tensor("aff1", "r-wedge"))
    rt = family_report(D, "J", (1, 0))["r_tilde"]["plus"]
    out = type2_equivalences(D.algebra, rt)
    assert set(out.values()) == {True}


def test_type2_equivalences_agree_on_non_solution():
    L = catalog.sl2()
    r = exact_array([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]) + OMEGA
    out = type2_equivalences(L, r)
    assert set(out.values()) == {False}


def test_type2_equivalences_need_invariant_symmetric_part():
    with pytest.raises(ValueError):
        type2_equivalences(catalog.sl2(), exact_array(np.eye(3, dtype=int)))
