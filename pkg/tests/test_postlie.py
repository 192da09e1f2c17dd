from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

import oracles
from conftest import q_matrix
from lietriple import catalog, linalg
from lietriple.algebra import is_ideal
from lietriple.errors import PreconditionError
from lietriple.instances import o_operator_instances
from lietriple.operators import MassProfile, adjoint_context
from lietriple.postlie import (
    DendriformTrialgebra,
    PostLieAlgebra,
    baxter_postlie,
    borel_example,
    compatible_from_invertible_rb,
    descended_lie,
    diagram_check,
    from_o_operator,
    from_rota_baxter,
    glie_from_postlie,
    induced_on_image,
    is_postlie,
    is_trialgebra,
    quasitriangular_postlie,
    semisimple_classify,
    synthesize_trialgebras,
    trialgebra_from_rota_baxter,
    trialgebra_to_postlie,
)
from lietriple.scalars import exact_array, identity, is_zero


CONTEXTS = o_operator_instances()


@pytest.mark.parametrize("label,ctx", CONTEXTS, ids=[c[0] for c in CONTEXTS])
def test_from_o_operator_passes_bruteforce_axioms(label, ctx):
    P, hom = from_o_operator(ctx)
    assert hom
    if P.dim <= 3:
        assert oracles.postlie_defects(P.bracket.tolist(), P.circ.tolist()) == []
    assert is_postlie(P)


@pytest.mark.parametrize("label,ctx", CONTEXTS, ids=[c[0] for c in CONTEXTS])
def test_induced_on_image_is_postlie(label, ctx):
    K = linalg.nullspace(ctx.r)
    if K.shape[1] and not is_ideal(ctx.G.k, K):
        with pytest.raises(PreconditionError):
            induced_on_image(ctx)
        return
    P, img = induced_on_image(ctx)
    assert is_postlie(P)
    assert P.dim == linalg.rank(ctx.r) == img.shape[1]


def test_from_o_operator_refuses_non_solution():
    L = catalog.sl2()
    with pytest.raises(PreconditionError):
        from_o_operator(adjoint_context(L, catalog.named_operator(L, "minus-borel"), masses=MassProfile(lam=2)))


@given(q_matrix(3, 3))
@settings(max_examples=25, deadline=None)
def test_postlie_axioms_match_bruteforce_on_rb_products(R):
    # the circ product of an arbitrary map is PostLie exactly when the map is weight-1 Rota-Baxter
    L = catalog.sl2()
    circ = np.einsum("ax,ayk->xyk", R, L.sc)
    P = PostLieAlgebra(L.sc, circ)
    assert bool(is_postlie(P)) == (oracles.postlie_defects(L.sc.tolist(), circ.tolist()) == [])


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_borel_postlie_matches_closed_forms(name):
    rep = borel_example(catalog.get_algebra(name))
    assert rep["mismatches"] == []
    assert rep["checked"] == catalog.get_algebra(name).dim ** 2
    assert rep["closed_form"] > rep["fallback"]


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_semisimple_classify_recovers_minus_borel_projection(name):
    L = catalog.get_algebra(name)
    P = borel_example(L)["postlie"]
    f = semisimple_classify(L, P)
    assert f.tolist() == catalog.named_operator(L, "minus-borel").tolist()


def test_semisimple_classify_recovers_random_rb():
    L = catalog.sl2()
    R = catalog.named_operator(L, "minus-nminus")
    assert semisimple_classify(L, from_rota_baxter(L, R, 1)).tolist() == R.tolist()


def test_semisimple_classify_rejects():
    L = catalog.sl2()
    circ = np.einsum("ax,ayk->xyk", exact_array([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), L.sc)
    with pytest.raises(PreconditionError):
        semisimple_classify(L, PostLieAlgebra(L.sc, circ))
    with pytest.raises(PreconditionError):
        semisimple_classify(catalog.aff1(), PostLieAlgebra(catalog.aff1().sc, catalog.aff1().sc * 0))


def test_descended_bracket_and_glie():
    L = catalog.sl2()
    P = borel_example(L)["postlie"]
    D = descended_lie(P)
    assert oracles.jacobi_defects(D.sc.tolist()) == []
    G = glie_from_postlie(P)
    assert G.k.dim == 3


def test_compatible_structure_descends_to_original_bracket():
    L = catalog.sl2()
    P = compatible_from_invertible_rb(L, -identity(3), 1)
    assert is_zero(descended_lie(P).sc - L.sc)
    with pytest.raises(PreconditionError):
        compatible_from_invertible_rb(L, catalog.named_operator(L, "minus-borel"), 1)


def test_baxter_postlie_pair():
    L = catalog.sl3()
    B = identity(8) + catalog.named_operator(L, "minus-borel") * 2
    out = baxter_postlie(L, B)
    assert is_postlie(out["+"]) and is_postlie(out["-"])


def test_quasitriangular_postlie_on_dual():
    L = catalog.sl2()
    r = exact_array([["1/8", 0, 0], [0, 0, "1/2"], [0, 0, 0]])
    out = quasitriangular_postlie(L, r)
    P = out["dual"]
    assert oracles.postlie_defects(P.bracket.tolist(), P.circ.tolist()) == []
    with pytest.raises(PreconditionError):
        quasitriangular_postlie(L, catalog.named_tensor("sl2", "casimir"))


def test_quasitriangular_postlie_compatible_on_invertible_r():
    # the aff1 wedge is triangular with an invertible map
    L = catalog.aff1()
    out = quasitriangular_postlie(L, catalog.named_tensor("aff1", "r-wedge"))
    C = out["compatible"]
    assert oracles.postlie_defects(C.bracket.tolist(), C.circ.tolist()) == []
    assert out["descends_to_g"]


def test_quasitriangular_postlie_has_no_compatible_part_for_singular_r():
    out = quasitriangular_postlie(catalog.sl2(), catalog.named_tensor("sl2", "h-wedge-e"))
    assert "compatible" not in out


def test_synthesized_trialgebras_commute_diagram():
    ts = synthesize_trialgebras()
    assert len(ts) == 44 and {t.dim for t in ts} == {1, 2}
    for t in ts:
        assert oracles.trialgebra_defects(t.prec.tolist(), t.succ.tolist(), t.dot.tolist()) == []
        assert diagram_check(t)["ok"], t.name


def test_trialgebra_rejects_non_example():
    one = np.array([[[Fraction(1)]]], dtype=object)
    T = DendriformTrialgebra(one, one, one)
    assert not is_trialgebra(T)
    assert oracles.trialgebra_defects(one.tolist(), one.tolist(), one.tolist()) != []
    with pytest.raises(PreconditionError):
        diagram_check(T)


def test_rb_trialgebra_postlie_matches_rb_postlie_on_matrices():
    # gl(1) x gl(1) = Q x Q as associative algebra; R = -projection is weight-1 Rota-Baxter
    mult = np.zeros((2, 2, 2), dtype=object)
    mult[...] = Fraction(0)
    mult[0, 0, 0] = mult[1, 1, 1] = Fraction(1)
    R = exact_array([[-1, 0], [0, 0]])
    T = trialgebra_from_rota_baxter(mult, R, 1)
    assert is_trialgebra(T)
    assert is_postlie(trialgebra_to_postlie(T))
