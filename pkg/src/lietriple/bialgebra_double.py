"""Drinfeld doubles of coboundary Lie bialgebras and the structures built on them.

The double of ``(g, r)`` lives on ``g + g*`` with basis ``(e_1..e_n, e^1..e^n)``
and the hyperbolic pairing ``B_p((x, a), (y, b)) = <a, y> + <x, b>``.
For type II quasitriangular ``r`` the maps ``Theta+-`` send the double onto
``g + i f`` inside the complexification, ``f = Im beta``, and the double is
rebuilt as an extension of ``g + i f`` by ``Ker beta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import (
    BilinearForm,
    LieAlgebra,
    Verdict,
    _verdict_from,
    coadjoint,
    complexify,
    is_invariant_form,
    is_lie,
    restrict_to_subspace,
)
from .errors import InternalConsistencyError, PreconditionError
from .operators import baxter_residual, is_skew_adjoint, nijenhuis_residual, rota_baxter_residual
from .scalars import GaussQ, identity, is_zero, zeros, xeinsum
from .yangbaxter import (
    CoboundaryBialgebra,
    classify,
    cocommutator,
    dual_bracket,
    is_skew,
    map_as_tensor,
    split_alpha_beta,
    symmetric_part_invariant,
    tensor_as_map,
    type2_residual,
)

__all__ = [
    "DrinfeldDouble",
    "build_double",
    "bradouble_check",
    "ThetaMaps",
    "theta_maps",
    "exact_sequence",
    "ExtensionDatum",
    "build_extension",
    "cocycle_tau",
    "identification_map",
    "xi_lambda_forms",
    "SubalgebraSpec",
    "subalgebra_from_cochain",
    "gstar_embedding",
    "family_params",
    "family_operator",
    "family_report",
    "operator_families",
    "FAMILIES",
    "factor_decompose",
]


@dataclass(frozen=True, eq=False)
class DrinfeldDouble:
    base: CoboundaryBialgebra
    algebra: LieAlgebra
    form: BilinearForm

    @property
    def n(self) -> int:
        return self.base.algebra.dim


def hyperbolic_form(n: int, field="Q"):
    F = zeros((2 * n, 2 * n), field)
    F[:n, n:] = identity(n, field)
    F[n:, :n] = identity(n, field)
    return F


def build_double(L: LieAlgebra, r, name: str | None = None) -> DrinfeldDouble:
    """Double of ``(L, r)``; refuses when ``[,]_delta`` is not a Lie bracket."""
    b = cocommutator(L, r)
    dual, v = dual_bracket(b)
    if not v:
        raise PreconditionError(f"g* bracket fails Jacobi at {v.witness}")
    n = L.dim
    co = coadjoint(L).mats  # ad*(e_i) on g*
    sc = zeros((2 * n, 2 * n, 2 * n), L.field)
    sc[:n, :n, :n] = L.sc
    sc[n:, n:, n:] = dual.sc
    for i in range(n):
        for b_ in range(n):
            # [e_i, e^b] = (-ad*(e^b) e_i, ad*(e_i) e^b);  -ad*(e^b) e_i has k-component dual[b, k, i]
            g_part = dual.sc[b_, :, i]
            d_part = co[i][:, b_]
            sc[i, n + b_, :n] = g_part
            sc[i, n + b_, n:] = d_part
            sc[n + b_, i, :n] = -g_part
            sc[n + b_, i, n:] = -d_part
    D = LieAlgebra(name or f"D({L.name})", sc, L.field)
    form = BilinearForm(D, hyperbolic_form(n, L.field))
    out = DrinfeldDouble(b, D, form)
    for label, verdict in manin_checks(out).items():
        if not verdict:
            raise InternalConsistencyError(f"double fails {label} at {verdict.witness}")
    return out


def manin_checks(D: DrinfeldDouble) -> dict:
    """Jacobi, invariance of ``B_p``, isotropy and closure of both halves."""
    n = D.n
    sc = D.algebra.sc
    F = D.form.matrix
    return {
        "jacobi": is_lie(D.algebra),
        "form_invariant": is_invariant_form(D.algebra, F),
        "form_nondegenerate": Verdict(linalg.det(F) != 0),
        "g_isotropic": _verdict_from(F[:n, :n]),
        "gstar_isotropic": _verdict_from(F[n:, n:]),
        "g_subalgebra": _verdict_from(sc[:n, :n, n:]),
        "gstar_subalgebra": _verdict_from(sc[n:, n:, :n]),
        "g_bracket_restricts": _verdict_from(sc[:n, :n, :n] - D.base.algebra.sc),
    }


def bradouble_check(D: DrinfeldDouble) -> Verdict:
    """``[(-alpha a, a), (-alpha b, b)] = (-[beta a, beta b], 0)`` on basis pairs of ``g*``."""
    n = D.n
    alpha, beta = split_alpha_beta(D.base.r)
    A, B = tensor_as_map(alpha), tensor_as_map(beta)
    iota = np.concatenate([-A, identity(n, D.algebra.field)], axis=0)
    lhs = xeinsum("pa,qb,pqk->abk", iota, iota, D.algebra.sc, optimize=True)
    rhs = zeros((n, n, 2 * n), D.algebra.field)
    rhs[:, :, :n] = -xeinsum("xa,yb,xyk->abk", B, B, D.base.algebra.sc, optimize=True)
    return _verdict_from(lhs - rhs, "bracket of graph elements")


def _homomorphism_residual(M, src: LieAlgebra, dst: LieAlgebra):
    lhs = xeinsum("ijc,kc->ijk", src.sc, M, optimize=True)
    rhs = xeinsum("ai,bj,abk->ijk", M, M, dst.sc, optimize=True)
    return lhs - rhs


@dataclass(frozen=True, eq=False)
class ThetaMaps:
    plus: np.ndarray
    minus: np.ndarray
    target: LieAlgebra
    kernel: np.ndarray
    verdicts: dict


def _require_type2(D: DrinfeldDouble):
    # classify() prefers the CYBE label, so a tensor solving both equations is tested directly
    L, r = D.base.algebra, D.base.r
    if not (symmetric_part_invariant(L, r) and is_zero(type2_residual(L, r))):
        raise PreconditionError(f"(g, r) is {classify(L, r).label}, not type II quasitriangular")


def theta_maps(D: DrinfeldDouble) -> ThetaMaps:
    """``Theta+-(x, a) = x + alpha(a) +- i beta(a)`` into the realified complexification."""
    _require_type2(D)
    n = D.n
    alpha, beta = split_alpha_beta(D.base.r)
    A, B = tensor_as_map(alpha), tensor_as_map(beta)
    target = complexify(D.base.algebra)
    mats = {}
    verdicts = {}
    for sign, key in ((1, "plus"), (-1, "minus")):
        T = zeros((2 * n, 2 * n), D.algebra.field)
        T[:n, :n] = identity(n)
        T[:n, n:] = A
        T[n:, n:] = B * sign
        mats[key] = T
        verdicts[f"homomorphism_{key}"] = _verdict_from(_homomorphism_residual(T, D.algebra, target))
    K = linalg.nullspace(mats["plus"])
    verdicts["same_kernel"] = Verdict(linalg.same_span(K, linalg.nullspace(mats["minus"])))
    kb = xeinsum("ai,bj,abk->ijk", K, K, D.algebra.sc, optimize=True) if K.shape[1] else zeros((0,))
    verdicts["kernel_abelian"] = _verdict_from(kb)
    return ThetaMaps(mats["plus"], mats["minus"], target, K, verdicts)


def exact_sequence(D: DrinfeldDouble) -> dict:
    """Exactness of ``0 -> Ker beta -> D(g) -> g + i Im beta -> 0`` for both signs."""
    th = theta_maps(D)
    n = D.n
    alpha, beta = split_alpha_beta(D.base.r)
    A, B = tensor_as_map(alpha), tensor_as_map(beta)
    Kb = linalg.nullspace(B)
    iota = np.concatenate([-A.dot(Kb), Kb], axis=0) if Kb.shape[1] else zeros((2 * n, 0))
    rank_b = linalg.rank(B)
    Fb, _ = linalg.column_basis(B)
    image = zeros((2 * n, n + Fb.shape[1]))
    image[:n, :n] = identity(n)
    image[n:, n:] = Fb
    out = {
        "iota_injective": (linalg.rank(iota) if iota.shape[1] else 0) == Kb.shape[1],
        "dim_kernel_beta": Kb.shape[1],
        "rank_beta": rank_b,
    }
    for key, T in (("plus", th.plus), ("minus", th.minus)):
        out[f"image_iota_is_kernel_{key}"] = linalg.same_span(iota, linalg.nullspace(T))
        out[f"image_{key}_is_g_plus_if"] = linalg.same_span(T, image)
        out[f"rank_{key}"] = linalg.rank(T)
    out["exact"] = all(
        out[k]
        for k in (
            "iota_injective",
            "image_iota_is_kernel_plus",
            "image_iota_is_kernel_minus",
            "image_plus_is_g_plus_if",
            "image_minus_is_g_plus_if",
        )
    ) and out["rank_plus"] == n + rank_b
    return out


@dataclass(frozen=True, eq=False)
class ExtensionDatum:
    """``h`` acting on the abelian ``V`` with a skew 2-form ``tau: h x h -> V``."""

    h: LieAlgebra
    action: np.ndarray  # (dim h, dim V, dim V)
    tau: np.ndarray  # (dim h, dim h, dim V)
    meta: dict

    @property
    def V_dim(self) -> int:
        return self.action.shape[1]


def build_extension(E: ExtensionDatum, name: str = "h|x_tau V") -> LieAlgebra:
    """``[(x, u), (y, v)] = ([x, y], x.v - y.u + tau(x, y))``."""
    m, v = E.h.dim, E.V_dim
    if not is_zero(E.tau + np.transpose(E.tau, (1, 0, 2))):
        raise ValueError("tau is not skew")
    sc = zeros((m + v, m + v, m + v), E.h.field)
    sc[:m, :m, :m] = E.h.sc
    sc[:m, :m, m:] = E.tau
    for i in range(m):
        for j in range(v):
            col = E.action[i][:, j]
            sc[i, m + j, m:] = col
            sc[m + j, i, m:] = -col
    return LieAlgebra(name, sc, E.h.field)


def _pieces(D: DrinfeldDouble):
    n = D.n
    alpha, beta = split_alpha_beta(D.base.r)
    A, B = tensor_as_map(alpha), tensor_as_map(beta)
    Fb, _ = linalg.column_basis(B)
    Kb = linalg.nullspace(B)
    s = linalg.section_on_image(B)
    if not is_zero(B.dot(s).dot(Fb) - Fb):
        raise InternalConsistencyError("s is not a right inverse of beta on its image")
    Hb = zeros((2 * n, n + Fb.shape[1]))
    Hb[:n, :n] = identity(n)
    Hb[n:, n:] = Fb
    return A, B, Fb, Kb, s, Hb


def cocycle_tau(D: DrinfeldDouble, sign: int) -> ExtensionDatum:
    """The extension datum ``(g + i f, Ker beta, ad*, tau_sign)`` of a type II double."""
    _require_type2(D)
    L = D.base.algebra
    n = D.n
    A, B, Fb, Kb, s, Hb = _pieces(D)
    h = restrict_to_subspace(complexify(L), Hb, name=f"{L.name}+if")
    co = coadjoint(L).mats
    m, v = Hb.shape[1], Kb.shape[1]
    action = zeros((m, v, v))
    tau = zeros((m, m, v))
    xs = [Hb[:n, j] for j in range(m)]
    ys = [Hb[n:, j] for j in range(m)]

    def ad_star(x, a):
        return xeinsum("i,iab,b->a", x, co, a)

    def coords(a):
        c = linalg.solve(Kb, a)
        if c is None:
            raise InternalConsistencyError("value outside Ker beta")
        return c

    for j in range(m):
        for q in range(v):
            action[j][:, q] = coords(ad_star(xs[j], Kb[:, q]))
    for p in range(m):
        for q in range(m):
            x1, y1, x2, y2 = xs[p], ys[p], xs[q], ys[q]
            val = (
                ad_star(x1, s.dot(y2))
                - ad_star(x2, s.dot(y1))
                - s.dot(L.bracket(x1, y2))
                + s.dot(L.bracket(x2, y1))
            )
            tau[p, q] = coords(val * sign) if v else zeros(0)
    meta = {"sign": sign, "A": A, "B": B, "s": s, "Hb": Hb, "Kb": Kb, "Fb": Fb}
    return ExtensionDatum(h, action, tau, meta)


def identification_map(E: ExtensionDatum):
    """``Xi`` and ``Lambda`` as matrices and the combined map ``Psi = (Xi, Lambda)``."""
    meta = E.meta
    A, s, Hb, Kb, sign = meta["A"], meta["s"], meta["Hb"], meta["Kb"], meta["sign"]
    n = A.shape[0]
    m, v = Hb.shape[1], Kb.shape[1]
    X = Hb[:n, :]
    Y = Hb[n:, :]
    Xi = zeros((n, m + v))
    Lam = zeros((n, m + v))
    Xi[:, :m] = X - A.dot(s).dot(Y) * sign
    Lam[:, :m] = s.dot(Y) * sign
    if v:
        Xi[:, m:] = -A.dot(Kb)
        Lam[:, m:] = Kb
    return Xi, Lam, np.concatenate([Xi, Lam], axis=0)


def xi_lambda_forms(D: DrinfeldDouble, E: ExtensionDatum) -> dict:
    """Check that ``Psi`` is an isomorphism onto the double and that ``B+-`` is the pulled-back pairing."""
    ext = build_extension(E)
    Xi, Lam, Psi = identification_map(E)
    out = {"extension_jacobi": bool(is_lie(ext))}
    out["psi_invertible"] = linalg.det(Psi) != 0
    if out["psi_invertible"]:
        Psi_inv = linalg.inverse(Psi)
        conj = xeinsum("ai,bj,abc,kc->ijk", Psi, Psi, D.algebra.sc, Psi_inv, optimize=True)
        out["structure_constants_equal"] = is_zero(conj - ext.sc)
    else:
        out["structure_constants_equal"] = False
    B_direct = Lam.T.dot(Xi) + Xi.T.dot(Lam)
    B_pull = Psi.T.dot(D.form.matrix).dot(Psi)
    out["form_is_pullback"] = is_zero(B_direct - B_pull)
    out["form_invariant"] = bool(is_invariant_form(ext, B_direct))
    out["form_symmetric"] = is_zero(B_direct - B_direct.T)
    out["Xi"], out["Lambda"], out["form"] = Xi, Lam, B_direct
    return out


@dataclass(frozen=True, eq=False)
class SubalgebraSpec:
    """Subalgebra ``b`` of ``h`` (columns), submodule ``W`` of ``V`` and ``phi: b -> V`` (mod ``W``)."""

    b: np.ndarray
    W: np.ndarray
    phi: np.ndarray


def _coboundary_defect(E: ExtensionDatum, spec: SubalgebraSpec, sign: int):
    """``d phi(x, y) - sign * tau(x, y)`` on basis pairs of ``b`` (values in ``V``)."""
    b, phi = spec.b, spec.phi
    k = b.shape[1]
    act = E.action
    out = zeros((k, k, E.V_dim))
    for p in range(k):
        for q in range(k):
            xp, xq = b[:, p], b[:, q]
            xpq = E.h.bracket(xp, xq)
            c = linalg.solve(b, xpq)
            if c is None:
                raise PreconditionError(f"b is not a subalgebra at {(p, q)}")
            dphi = (
                xeinsum("i,iab,b->a", xp, act, phi[:, q])
                - xeinsum("i,iab,b->a", xq, act, phi[:, p])
                - phi.dot(c)
            )
            tau_pq = xeinsum("i,j,ijk->k", xp, xq, E.tau)
            out[p, q] = dphi - tau_pq * sign
    return out


def _mod_W_zero(vals, W) -> tuple | None:
    for idx in np.ndindex(*vals.shape[:-1]):
        if not linalg.in_span(W, vals[idx]):
            return idx
    return None


def subalgebra_from_cochain(E: ExtensionDatum, spec: SubalgebraSpec, coboundary_sign: int = -1):
    """Basis of ``{(x, u): x in b, u + W = phi(x)}`` with a closure certificate.

    The cochain condition ``d phi = coboundary_sign * tau`` modulo ``W`` is checked
    first, with ``d phi(x, y) = x.phi(y) - y.phi(x) - phi([x, y])``.
    """
    bad = _mod_W_zero(_coboundary_defect(E, spec, coboundary_sign), spec.W)
    if bad is not None:
        raise PreconditionError(f"cochain condition fails at pair {bad}")
    m, v = E.h.dim, E.V_dim
    k, w = spec.b.shape[1], spec.W.shape[1]
    basis = zeros((m + v, k + w))
    basis[:m, :k] = spec.b
    basis[m:, :k] = spec.phi
    if w:
        basis[m:, k:] = spec.W
    ext = build_extension(E)
    from .algebra import is_subalgebra

    closed = is_subalgebra(ext, basis)
    if not closed:
        raise InternalConsistencyError(f"b_W^phi is not closed at {closed.witness}")
    return basis


def gstar_embedding(D: DrinfeldDouble, E: ExtensionDatum) -> dict:
    """``b = Theta(g*)``, ``W = Ker alpha & Ker beta`` and ``phi`` for the image of ``g*``.

    Verifies that ``b_W^phi`` coincides with the preimage of ``g*`` under ``Psi``
    and reports which coboundary sign makes the cochain condition hold.
    """
    meta = E.meta
    A, B, s, Hb, Kb, sign = meta["A"], meta["B"], meta["s"], meta["Hb"], meta["Kb"], meta["sign"]
    n = A.shape[0]
    theta = np.concatenate([A, B * sign], axis=0)
    theta_h = linalg.solve(Hb, theta)
    b, piv = linalg.column_basis(theta_h)
    # phi(Theta(a)) = a - s beta(a) (mod W), expressed in Ker beta coordinates
    reps = zeros((Kb.shape[1], b.shape[1]))
    for j, a_idx in enumerate(piv):
        a = identity(n)[:, a_idx]
        val = a - s.dot(B.dot(a))
        reps[:, j] = linalg.solve(Kb, val)
    Wg = linalg.nullspace(np.concatenate([A, B], axis=0))
    W = linalg.solve(Kb, Wg) if Wg.shape[1] else zeros((Kb.shape[1], 0))
    spec = SubalgebraSpec(b, W, reps)
    signs = {}
    for cs in (-1, 1):
        try:
            subalgebra_from_cochain(E, spec, cs)
            signs[cs] = True
        except PreconditionError:
            signs[cs] = False
    basis = subalgebra_from_cochain(E, spec, -1) if signs[-1] else subalgebra_from_cochain(E, spec, 1)
    _, _, Psi = identification_map(E)
    gstar = zeros((2 * n, n))
    gstar[n:, :] = identity(n)
    preimage = linalg.solve(Psi, gstar)
    return {
        "spec": spec,
        "basis": basis,
        "coboundary_sign_minus": signs[-1],
        "coboundary_sign_plus": signs[1],
        "matches_gstar": linalg.same_span(basis, preimage),
    }


FAMILIES = ("N", "Rmu", "Nmu", "Nk", "J")


def family_params(kind: str, params):
    """``(l1, l2, l3, l4)`` for the named family with the given parameters."""
    p = [Fraction(x) for x in params]
    if kind == "N":
        return tuple(p)
    if kind == "Rmu":
        return (p[0], Fraction(1), Fraction(0), Fraction(-1))
    if kind == "Nmu":
        return (Fraction(0), Fraction(1), p[0], Fraction(-1))
    if kind == "Nk":
        k1, k2 = p
        if k1 == 0 or k2 * k2 == 1:
            raise PreconditionError("N_{k1,k2} needs k1 != 0 and k2^2 != 1")
        return (k1, k2, (1 - k2 * k2) / k1, -k2)
    if kind == "J":
        lam, mu = p
        if lam == 0:
            raise PreconditionError("J_{lambda,mu} needs lambda != 0")
        return (lam, mu, (-1 - mu * mu) / lam, -mu)
    raise ValueError(f"unknown family {kind!r}")


def family_operator(D: DrinfeldDouble, lambdas):
    """``N(x, a) = (l1 r(a) + l2 x, l3 r^-1(x) + l4 a)`` on the double of a triangular ``r``."""
    n = D.n
    Rm = tensor_as_map(D.base.r)
    if linalg.det(Rm) == 0:
        raise PreconditionError("r is not invertible")
    Rinv = linalg.inverse(Rm)
    l1, l2, l3, l4 = lambdas
    N = zeros((2 * n, 2 * n))
    N[:n, :n] = identity(n) * l2
    N[:n, n:] = Rm * l1
    N[n:, :n] = Rinv * l3
    N[n:, n:] = identity(n) * l4
    return N


def family_report(D: DrinfeldDouble, kind: str, params) -> dict:
    """Build one operator of a family and run every check that applies to it."""
    if not is_skew(D.base.r) or classify(D.base.algebra, D.base.r).label != "triangular":
        raise PreconditionError("operator families need a triangular r")
    lambdas = family_params(kind, params)
    N = family_operator(D, lambdas)
    DA = D.algebra
    F = D.form.matrix
    two_n = 2 * D.n
    sq = N.dot(N)
    rep = {
        "family": kind,
        "lambdas": lambdas,
        "skew_adjoint": is_skew_adjoint(N, F),
        "criterion_l2_plus_l4_zero": lambdas[1] + lambdas[3] == 0,
        "nijenhuis": is_zero(nijenhuis_residual(DA, N)),
        "square_is_id": is_zero(sq - identity(two_n)),
        "square_is_minus_id": is_zero(sq + identity(two_n)),
        "baxter": is_zero(baxter_residual(DA, N)),
        # [Jx, Jy] - J([Jx, y] + [x, Jy]) = [x, y]
        "kmcyb_kappa_1": is_zero(rota_baxter_residual(DA, N, 0) - DA.sc),
    }
    if rep["skew_adjoint"] != rep["criterion_l2_plus_l4_zero"]:
        raise InternalConsistencyError("skew-adjointness disagrees with the l2 + l4 = 0 criterion")
    if rep["skew_adjoint"]:
        phi_inv = linalg.inverse(F)
        verdicts = {}
        tensors = {}
        for sign, key in ((1, "plus"), (-1, "minus")):
            r_t = map_as_tensor(N.dot(phi_inv) + phi_inv * sign)
            tensors[key] = r_t
            verdicts[key] = classify(DA, r_t)
        rep["classification"] = verdicts
        rep["r_tilde"] = tensors
    return rep


DEFAULT_FAMILY_PARAMS = (
    ("Rmu", (0,)),
    ("Rmu", (1,)),
    ("Rmu", (2,)),
    ("Nmu", (1,)),
    ("Nk", (2, 3)),
    ("J", (1, 0)),
    ("N", (0, 1, 0, -1)),
)


def operator_families(D: DrinfeldDouble, choices=DEFAULT_FAMILY_PARAMS) -> list:
    """``family_report`` for a list of ``(family, params)`` choices."""
    return [family_report(D, kind, params) for kind, params in choices]


def factor_decompose(L: LieAlgebra, r, x):
    """``x = x+ + x-`` with ``x+ = r~(w)``, ``x- = r~^t(w)``, ``w = beta^-1(x)/(2i)``, ``r~ = alpha + i beta``.

    Returns complex vectors (``GaussQ`` entries).
    """
    alpha, beta = split_alpha_beta(r)
    A, B = tensor_as_map(alpha), tensor_as_map(beta)
    if linalg.det(B) == 0:
        raise PreconditionError("symmetric part is degenerate")
    i = GaussQ(0, 1)
    g = lambda M: np.vectorize(GaussQ, otypes=[object])(M)  # noqa: E731
    Binv = g(linalg.inverse(B))
    w = Binv.dot(g(np.asarray(x, dtype=object))) * (1 / (2 * i))
    rt = g(A) + g(B) * i
    rtt = -g(A) + g(B) * i
    xp, xm = rt.dot(w), rtt.dot(w)
    if not is_zero(xp + xm - g(np.asarray(x, dtype=object))):
        raise InternalConsistencyError("decomposition does not recombine")
    return xp, xm
