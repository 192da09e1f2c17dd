import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from lietriple import catalog
from lietriple.errors import InputError, PreconditionError
from lietriple.laxsim import (
    Observable,
    adjoint_triple,
    ansatz_check,
    ansatz_lhs,
    ansatz_rhs,
    ansatz_sign,
    build_lax_pair,
    casimir,
    conservation_check,
    coordinate_observable,
    curvature_tensor,
    integrate,
    invariant_observables,
    involution_check,
    lax_identity_residual,
    lax_rhs,
    postlie_triple,
    quadratic_casimir,
    verify_triple_datum,
)
from lietriple.operators import MassProfile, adjoint_context
from lietriple.scalars import exact_array, identity, is_zero

L = catalog.sl2()
OMEGA = catalog.named_tensor("sl2", "casimir")
A0 = [-10.0, 20.0, 30.0]


def benchmark():
    return postlie_triple(L, catalog.named_operator(L, "minus-borel"), OMEGA, 1)


def data():
    return {
        "postlie-omega": benchmark(),
        "postlie-zero": postlie_triple(L, catalog.named_operator(L, "minus-nminus"), OMEGA * 0, 1),
        "adjoint-wedge": adjoint_triple(L, catalog.named_tensor("sl2", "h-wedge-e"), 0),
        "adjoint-omega": adjoint_triple(L, OMEGA, 0),
    }


DATA = data()


@pytest.mark.parametrize("name", DATA)
def test_datum_items_hold(name):
    assert all(verify_triple_datum(DATA[name]).values())


def test_casimir_is_inverse_killing():
    assert casimir(benchmark()).tolist() == OMEGA.tolist()


@pytest.mark.parametrize("name", DATA)
def test_lax_identity_is_exact(name):
    d = DATA[name]
    pair = build_lax_pair(d, quadratic_casimir(d))
    assert all(p.is_zero for p in lax_identity_residual(pair))


@pytest.mark.parametrize("name", DATA)
def test_invariant_observables_are_in_involution(name):
    d = DATA[name]
    obs = [o for o in invariant_observables(d, 4) if o.poly.total_degree() > 0]
    assert len(obs) >= 2
    for f, g in itertools.combinations(obs, 2):
        assert involution_check(d, f, g).is_zero()


def test_involution_rejects_non_invariant():
    d = benchmark()
    with pytest.raises(PreconditionError):
        involution_check(d, coordinate_observable(3, 0), quadratic_casimir(d))
    with pytest.raises(PreconditionError):
        build_lax_pair(d, coordinate_observable(3, 1))


@pytest.mark.parametrize("name", DATA)
def test_ansatz_holds(name):
    d = DATA[name]
    assert is_zero(ansatz_check(d))


def test_ansatz_wrong_sign_fails_on_nonzero_r():
    for name in ("postlie-omega", "adjoint-wedge", "adjoint-omega"):
        d = DATA[name]
        s = ansatz_sign(d)
        assert not is_zero(ansatz_lhs(d) - ansatz_rhs(d, -s)), name


def test_ansatz_needs_symmetric_or_skew_r():
    d = adjoint_triple(L, exact_array([[0, 1, 0], [0, 0, 0], [0, 0, 0]]), 0)
    with pytest.raises(PreconditionError):
        ansatz_sign(d)


@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
@settings(max_examples=30, deadline=None)
def test_flow_matches_bruteforce(a):
    d = benchmark()
    pair = build_lax_pair(d, quadratic_casimir(d))
    da, dL = lax_rhs(pair, a)
    ref = oracles.lie_poisson_flow(d.bracket_r.tolist(), list(pair.H.grad_float(a)), a)
    assert np.allclose(da, ref, atol=1e-9)
    assert np.allclose(dL, np.asarray(pair.L_matrix, dtype=float).dot(ref), atol=1e-9)


def test_zero_r_flow_is_constant():
    d = adjoint_triple(L, OMEGA * 0, 0)
    pair = build_lax_pair(d, quadratic_casimir(d))
    traj = integrate(pair, [1.0, 2.0, 3.0], 1e-2, 200)
    assert np.array_equal(traj.states[-1], np.array([1.0, 2.0, 3.0]))


def test_rk4_drift_and_order():
    d = benchmark()
    pair = build_lax_pair(d, quadratic_casimir(d))
    coarse = conservation_check(pair, integrate(pair, A0, 1e-3, 10_000))["max_rel"]
    fine = conservation_check(pair, integrate(pair, A0, 5e-4, 20_000))["max_rel"]
    assert coarse < 1e-8
    assert 12 <= coarse / fine <= 20


def test_record_every_thins_output():
    d = benchmark()
    pair = build_lax_pair(d, quadratic_casimir(d))
    tr = integrate(pair, A0, 1e-3, 100, record_every=10)
    assert len(tr.times) == 11 and tr.L_values.shape == (11, 3)


@pytest.mark.parametrize("h", [0.0, -1e-3, float("nan"), float("inf")])
def test_integrate_rejects_bad_step(h):
    d = benchmark()
    pair = build_lax_pair(d, quadratic_casimir(d))
    with pytest.raises(InputError):
        integrate(pair, A0, h, 10)


def test_integrate_rejects_bad_state_and_method():
    d = benchmark()
    pair = build_lax_pair(d, quadratic_casimir(d))
    with pytest.raises(InputError):
        integrate(pair, [float("nan"), 0, 0], 1e-3, 10)
    with pytest.raises(InputError):
        integrate(pair, A0, 1e-3, 10, method="Euler")


def test_degenerate_form_rejected():
    d = adjoint_triple(catalog.heisenberg3(), identity(3) * 0, 0, B=identity(3) * 0)
    assert not verify_triple_datum(d)["form_nondegenerate"]
    gens = sympy.symbols("a0:3")
    H = Observable(sympy.Poly(gens[0] ** 2, *gens, domain="QQ"))
    with pytest.raises(PreconditionError):
        build_lax_pair(d, H)


def curvature_instance():
    R = exact_array([[-2, 0, 0], [0, -2, 0], [0, 0, -1]])
    return adjoint_context(L, R, identity(3), MassProfile(1, -1, 3, 3))


def test_curvature_is_invariant_and_parallel():
    out = curvature_tensor(curvature_instance())
    assert out["nonzero"]
    assert out["invariance"] and out["covariantly_constant"]


def test_curvature_requires_solution():
    ctx = adjoint_context(L, identity(3), identity(3), MassProfile(1, 1, 3, 3))
    with pytest.raises(PreconditionError):
        curvature_tensor(ctx)
