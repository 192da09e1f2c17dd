from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from conftest import q_matrix, small_q
from lietriple import catalog, io, linalg
from lietriple.algebra import (
    GLieAlgebra,
    abelian,
    adjoint,
    coadjoint,
    complexify,
    is_derivation,
    is_invariant_form,
    is_lie,
    jacobi_check,
    killing_form,
    lie_from_brackets,
    representation_check,
    restrict_to_subspace,
    semidirect_sum,
)
from lietriple.scalars import GaussQ, exact_array, format_scalar, is_zero, parse_scalar, xeinsum

CATALOG = ["abelian-4", "aff1", "heisenberg3", "sl2", "sl3"]


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_jacobi_matches_bruteforce(name):
    L = catalog.get_algebra(name)
    assert is_zero(jacobi_check(L))
    assert oracles.jacobi_defects(L.sc.tolist()) == []


def test_broken_sl2_witness_is_a_real_defect():
    L = catalog.broken_sl2()
    v = is_lie(L)
    assert not v
    bad = oracles.jacobi_defects(L.sc.tolist())
    assert bad and tuple(v.witness[:3]) in bad


def test_sl2_structure_constants_from_matrices():
    assert catalog.sl2().sc.tolist() == oracles.matrix_algebra_sc(oracles.sl2_matrices())


def test_sl3_structure_constants_from_matrices():
    def unit(i, j):
        m = sympy.zeros(3, 3)
        m[i, j] = 1
        return m

    hs = [unit(0, 0) - unit(1, 1), unit(1, 1) - unit(2, 2)]
    pos = [(0, 1), (1, 2), (0, 2)]
    mats = hs + [unit(i, j) for i, j in pos] + [unit(j, i) for i, j in pos]
    assert catalog.sl3().sc.tolist() == oracles.matrix_algebra_sc(mats)


def test_aff1_bracket():
    L = catalog.aff1()
    assert list(L.bracket(L.basis(0), L.basis(1))) == [0, 1]


@pytest.mark.parametrize("name", CATALOG)
def test_killing_invariant_and_matches_trace_formula(name):
    L = catalog.get_algebra(name)
    K = killing_form(L).matrix
    assert K.tolist() == oracles.killing(L.sc.tolist())
    assert is_invariant_form(L, K)


def test_killing_values_sl2():
    # tr(ad H ad H) = 8, tr(ad E ad F) = 4
    assert killing_form(catalog.sl2()).matrix.tolist() == [[8, 0, 0], [0, 0, 4], [0, 4, 0]]


@pytest.mark.parametrize("name", CATALOG)
def test_adjoint_and_coadjoint_are_representations(name):
    L = catalog.get_algebra(name)
    assert is_zero(representation_check(adjoint(L)))
    assert is_zero(representation_check(coadjoint(L)))


def test_ad_is_derivation_and_random_map_is_not():
    L = catalog.sl2()
    for i in range(3):
        assert is_derivation(L, L.ad()[i])
    M = exact_array([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert not is_derivation(L, M)


def test_semidirect_and_complexify_are_lie():
    L = catalog.sl2()
    S = semidirect_sum(GLieAlgebra(L, abelian(3), coadjoint(L)))
    assert S.dim == 6 and is_lie(S)
    C = complexify(catalog.aff1())
    assert C.dim == 4 and is_lie(C)
    # [i e1, i e2] = -[e1, e2] = -e2
    assert list(C.bracket(C.basis(2), C.basis(3))) == [0, -1, 0, 0]


def test_restrict_to_borel():
    L = catalog.sl2()
    b, _ = catalog.borel_split(L)
    B = restrict_to_subspace(L, b)
    assert B.dim == 2 and is_lie(B)
    with pytest.raises(ValueError):
        restrict_to_subspace(L, exact_array([[0, 0], [1, 0], [0, 1]]))


def test_antisymmetry_enforced():
    with pytest.raises(ValueError):
        lie_from_brackets("bad", 2, {(0, 0): {1: 1}})


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), small_q), max_size=6))
@settings(max_examples=40, deadline=None)
def test_jacobi_residual_matches_oracle_on_random_brackets(entries):
    br = {}
    for i, j, k, c in entries:
        if i < j:
            br.setdefault((i, j), {})
            br[(i, j)][k] = c
    L = lie_from_brackets("rnd", 3, br)
    assert is_zero(jacobi_check(L)) == (oracles.jacobi_defects(L.sc.tolist()) == [])


@given(q_matrix(3, 3), q_matrix(3, 3))
@settings(max_examples=40, deadline=None)
def test_xeinsum_agrees_with_object_einsum(A, B):
    fast = xeinsum("ij,jk->ik", A, B)
    slow = np.einsum("ij,jk->ik", A, B)
    assert fast.tolist() == slow.tolist()
    assert all(isinstance(x, Fraction) for x in fast.flat)


def test_xeinsum_falls_back_for_gaussian_entries():
    A = np.array([[GaussQ(0, 1)]], dtype=object)
    out = xeinsum("ij,jk->ik", A, A)
    assert out[0, 0] == GaussQ(-1)


def test_xeinsum_large_entries_fall_back():
    A = exact_array([[2**40, 1], [1, 2**40]])
    assert xeinsum("ij,jk->ik", A, A).tolist() == np.einsum("ij,jk->ik", A, A).tolist()


@given(q_matrix(4, 4))
@settings(max_examples=40, deadline=None)
def test_linalg_matches_sympy(M):
    S = sympy.Matrix(4, 4, [sympy.Rational(x.numerator, x.denominator) for x in M.flat])
    assert linalg.det(M) == Fraction(str(S.det()))
    assert linalg.rank(M) == S.rank()
    K = linalg.nullspace(M)
    assert K.shape[1] == 4 - S.rank()
    assert is_zero(M.dot(K)) if K.shape[1] else True
    if S.det() != 0:
        assert is_zero(M.dot(linalg.inverse(M)) - np.eye(4, dtype=int))


@given(small_q, small_q)
def test_scalar_format_roundtrip(a, b):
    assert parse_scalar(format_scalar(a)) == a
    z = GaussQ(a, b)
    assert parse_scalar(format_scalar(z)) == (z if b else a)


@pytest.mark.parametrize("name", CATALOG + ["broken-sl2"])
def test_algebra_json_roundtrip(name):
    L = catalog.get_algebra(name)
    back = io.algebra_from_json(io.algebra_to_json(L))
    assert back.sc.tolist() == L.sc.tolist()


def test_algebra_json_rejects_bad_indices():
    from lietriple.errors import InputError

    with pytest.raises(InputError):
        io.algebra_from_json({"dim": 2, "brackets": [[1, 0, [[1, "1"]]]]})
    with pytest.raises(InputError):
        io.algebra_from_json({"dim": 2, "brackets": [[0, 5, [[1, "1"]]]]})
