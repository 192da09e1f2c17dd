"""O-operators, their extensions, and Rota-Baxter type operators.

A context fixes a Lie algebra ``g`` acting on a Lie algebra ``k`` by
derivations, a map ``r: k -> g`` (matrix ``n_g x n_k``), an optional
extension ``beta: k -> g`` and the constants ``(nu, kappa, mu, lambda)``.
Residuals are arrays ``res[x, y, :]`` indexed by basis pairs of ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import (
    GLieAlgebra,
    LieAlgebra,
    Verdict,
    _verdict_from,
    abelian,
    adjoint,
    coadjoint,
    glie_check,
    is_lie,
)
from .errors import InternalConsistencyError, PreconditionError
from .scalars import as_scalar, is_zero, zeros, xeinsum

__all__ = [
    "MassProfile",
    "OOperatorContext",
    "adjoint_context",
    "coadjoint_context",
    "mass_axiom_checks",
    "o_operator_residual",
    "extended_residual",
    "rota_baxter_residual",
    "baxter_residual",
    "projection_onto",
    "rb_from_splitting",
    "bracket_R",
    "double_bracket",
    "prop_liestructure_check",
    "pm_brackets",
    "thm_deliebra_equivalence",
    "nijenhuis_residual",
    "intertwining_check",
    "averaging_check",
    "is_skew_adjoint",
    "is_self_adjoint",
    "selfdual_lift",
]


def _q(x):
    return x if not isinstance(x, (int, str, float)) else as_scalar(x)


@dataclass(frozen=True)
class MassProfile:
    nu: Fraction = Fraction(0)
    kappa: Fraction = Fraction(0)
    mu: Fraction = Fraction(0)
    lam: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("nu", "kappa", "mu", "lam"):
            object.__setattr__(self, name, _q(getattr(self, name)))


@dataclass(frozen=True, eq=False)
class OOperatorContext:
    G: GLieAlgebra
    r: np.ndarray
    beta: np.ndarray | None = None
    masses: MassProfile = field(default_factory=MassProfile)

    def __post_init__(self):
        shape = (self.G.g.dim, self.G.k.dim)
        r = np.asarray(self.r, dtype=object)
        if r.shape != shape:
            raise ValueError(f"r must be {shape}, got {r.shape}")
        object.__setattr__(self, "r", r)
        if self.beta is not None:
            b = np.asarray(self.beta, dtype=object)
            if b.shape != shape:
                raise ValueError(f"beta must be {shape}, got {b.shape}")
            object.__setattr__(self, "beta", b)

    @property
    def lam(self):
        return self.masses.lam

    def beta_or_zero(self):
        if self.beta is None:
            return zeros(self.r.shape, self.G.g.field)
        return self.beta


def adjoint_context(L: LieAlgebra, r, beta=None, masses=None, trivial_bracket: bool = False) -> OOperatorContext:
    """``(k, pi) = (g, ad)``, with ``k`` carrying ``g``'s bracket unless ``trivial_bracket``."""
    k = abelian(L.dim, L.field) if trivial_bracket else L
    return OOperatorContext(GLieAlgebra(L, k, adjoint(L)), r, beta, masses or MassProfile())


def coadjoint_context(L: LieAlgebra, r=None, beta=None, masses=None):
    """``k = g*`` with the trivial bracket and the coadjoint action.

    Without ``r`` only the ``GLieAlgebra`` is returned.
    """
    G = GLieAlgebra(L, abelian(L.dim, L.field), coadjoint(L))
    if r is None:
        return G
    return OOperatorContext(G, r, beta, masses or MassProfile())


def _acted(G: GLieAlgebra, M):
    """``T[x, y, :] = M(e_x) . e_y`` for a map ``M: k -> g``."""
    return xeinsum("ix,iay->xya", M, G.pi.mats, optimize=True)


def _g_bracket_of(G: GLieAlgebra, M1, M2):
    """``[M1(e_x), M2(e_y)]_g`` as ``[x, y, :]``."""
    return xeinsum("ix,jy,ijc->xyc", M1, M2, G.g.sc, optimize=True)


def _apply(M, T):
    return xeinsum("ca,xya->xyc", M, T, optimize=True)


def mass_axiom_checks(ctx: OOperatorContext) -> dict:
    """The three axioms on ``beta``, each weighted by its constant."""
    G, B, m = ctx.G, ctx.beta_or_zero(), ctx.masses
    Tb = _acted(G, B)
    anti = (Tb + np.transpose(Tb, (1, 0, 2))) * m.nu
    # beta(xi . x) - [xi, beta(x)]
    inv = xeinsum("ca,iax->ixc", B, G.pi.mats, optimize=True) - xeinsum(
        "jx,ijc->ixc", B, G.g.sc, optimize=True
    )
    inv = inv * m.kappa
    # beta([x,y]_k) . z - [beta(x) . y, z]_k
    bxy = xeinsum("xya,ia->xyi", G.k.sc, B, optimize=True)
    lhs = xeinsum("xyi,ibz->xyzb", bxy, G.pi.mats, optimize=True)
    rhs = xeinsum("xya,azb->xyzb", Tb, G.k.sc, optimize=True)
    eq = (lhs - rhs) * m.mu
    return {
        "antisymmetric": _verdict_from(anti, "beta is not antisymmetric"),
        "invariant": _verdict_from(inv, "beta is not g-invariant"),
        "equivalent": _verdict_from(eq, "beta is not equivalent"),
    }


def bracket_R(ctx: OOperatorContext):
    """``[x, y]_R = r+(x) . y - r-(y) . x + lambda [x, y]_k`` with ``r+- = r +- beta``."""
    G = ctx.G
    B = ctx.beta_or_zero()
    Tp = _acted(G, ctx.r + B)
    Tm = _acted(G, ctx.r - B)
    return Tp - np.transpose(Tm, (1, 0, 2)) + G.k.sc * ctx.lam


def o_operator_residual(ctx: OOperatorContext):
    """``[r x, r y]_g - r(r(x) . y - r(y) . x + lambda [x, y]_k)``."""
    G, R = ctx.G, ctx.r
    T = _acted(G, R)
    inner = T - np.transpose(T, (1, 0, 2)) + G.k.sc * ctx.lam
    return _g_bracket_of(G, R, R) - _apply(R, inner)


def extended_residual(ctx: OOperatorContext, check_axioms: bool = True):
    """O-operator residual minus ``kappa [beta x, beta y] + mu beta([x, y]_k)``.

    Refuses (``PreconditionError``) when one of the mass axioms fails, since the
    equation is only defined for admissible extensions.
    """
    if check_axioms:
        for name, v in mass_axiom_checks(ctx).items():
            if not v:
                raise PreconditionError(f"mass axiom '{name}' fails at {v.witness}")
    G, B, m = ctx.G, ctx.beta_or_zero(), ctx.masses
    res = o_operator_residual(ctx)
    res = res - _g_bracket_of(G, B, B) * m.kappa
    res = res - _apply(B, G.k.sc) * m.mu
    return res


def rota_baxter_residual(L: LieAlgebra, R, lam):
    """``[Rx, Ry] - R([Rx, y] + [x, Ry] + lam [x, y])`` written directly on structure constants."""
    R = np.asarray(R, dtype=object)
    c = L.sc
    lam = _q(lam)
    RxRy = xeinsum("ax,by,abc->xyc", R, R, c, optimize=True)
    Rx_y = xeinsum("ax,ayc->xyc", R, c, optimize=True)
    x_Ry = xeinsum("by,xbc->xyc", R, c, optimize=True)
    inner = Rx_y + x_Ry + c * lam
    return RxRy - xeinsum("ca,xya->xyc", R, inner, optimize=True)


def baxter_residual(L: LieAlgebra, R):
    """``[Rx, Ry] - R([Rx, y] + [x, Ry]) + [x, y]``."""
    return rota_baxter_residual(L, R, 0) + L.sc


def projection_onto(A, B):
    """Projection onto ``span(A)`` along ``span(B)`` (columns), requiring ``A + B`` direct and full."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    M = np.concatenate([A, B], axis=1)
    if M.shape[0] != M.shape[1] or linalg.det(M) == 0:
        raise ValueError("subspaces are not complementary")
    Z = np.concatenate([A, zeros(B.shape)], axis=1)
    return Z.dot(linalg.inverse(M))


def rb_from_splitting(L: LieAlgebra, A, B):
    """``-P_A`` for a vector-space splitting ``L = A + B`` into subalgebras."""
    from .algebra import is_subalgebra

    for name, S in (("A", A), ("B", B)):
        v = is_subalgebra(L, S)
        if not v:
            raise PreconditionError(f"{name} is not a subalgebra (pair {v.witness})")
    P = -projection_onto(A, B)
    if not is_zero(rota_baxter_residual(L, P, 1)):
        raise InternalConsistencyError("-P_A fails the Rota-Baxter identity")
    return P


def double_bracket(ctx: OOperatorContext):
    """``(k, [,]_R)`` together with its Jacobi verdict (a witness when it fails)."""
    sc = bracket_R(ctx)
    anti = sc + np.transpose(sc, (1, 0, 2))
    if not is_zero(anti):
        from .scalars import first_nonzero

        return None, Verdict(False, first_nonzero(anti), "[,]_R is not skew-symmetric")
    K = LieAlgebra(ctx.G.k.name + "_R", sc, ctx.G.k.field)
    return K, is_lie(K)


def prop_liestructure_check(ctx: OOperatorContext) -> dict:
    """Skewness of ``[,]_R`` versus antisymmetry of ``beta``; and the cyclic condition.

    Returns ``{"skew", "beta_antisymmetric", "cyclic", "jacobi"}``; the first
    two must agree and, when ``[,]_R`` is skew, so must the last two.
    """
    G = ctx.G
    sc = bracket_R(ctx)
    skew = is_zero(sc + np.transpose(sc, (1, 0, 2)))
    Tb = _acted(G, ctx.beta_or_zero())
    beta_anti = is_zero(Tb + np.transpose(Tb, (1, 0, 2)))
    # ([r x, r y] - r([x, y]_R)) . z + cycl.
    D = _g_bracket_of(G, ctx.r, ctx.r) - _apply(ctx.r, sc)
    t = xeinsum("xyi,iaz->xyza", D, G.pi.mats, optimize=True)
    cyc = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
    out = {"skew": skew, "beta_antisymmetric": beta_anti, "cyclic": is_zero(cyc)}
    if skew:
        out["jacobi"] = bool(is_lie(LieAlgebra("k_R", sc, G.k.field)))
        if out["jacobi"] != out["cyclic"]:
            raise InternalConsistencyError("cyclic condition and Jacobi identity of [,]_R disagree")
    if skew != beta_anti:
        raise InternalConsistencyError("skewness of [,]_R and antisymmetry of beta disagree")
    return out


def _require_deliebra_hypotheses(ctx):
    m = ctx.masses
    if m.nu == 0 or m.kappa == 0:
        raise PreconditionError("needs nu != 0 and kappa != 0")
    probe = replace(ctx, masses=MassProfile(m.nu, m.kappa, m.lam, m.lam))
    for name, v in mass_axiom_checks(probe).items():
        if not v:
            raise PreconditionError(f"mass axiom '{name}' fails at {v.witness}")


def pm_brackets(ctx: OOperatorContext, sign: int) -> GLieAlgebra:
    """``k`` with ``[x, y] = lambda [x, y]_k + sign * 2 beta(x) . y`` and the same action."""
    _require_deliebra_hypotheses(ctx)
    G = ctx.G
    Tb = _acted(G, ctx.beta_or_zero())
    sc = G.k.sc * ctx.lam + Tb * (2 * sign)
    k_new = LieAlgebra(f"{G.k.name}{'+' if sign > 0 else '-'}", sc, G.k.field)
    out = GLieAlgebra(G.g, k_new, G.pi)
    v = is_lie(k_new)
    if not v:
        raise InternalConsistencyError(f"[,]{'+' if sign > 0 else '-'} fails Jacobi at {v.witness}")
    d = glie_check(out)
    if not d:
        raise InternalConsistencyError(f"action is not by derivations of [,]+-: {d.witness}")
    return out


def thm_deliebra_equivalence(ctx: OOperatorContext, sign: int) -> bool:
    """Extended residual at ``(nu, -1, sign*lambda)`` vanishes iff ``r + sign*beta`` is a
    weight-1 O-operator on ``k`` with the opposite modified bracket."""
    _require_deliebra_hypotheses(ctx)
    m = ctx.masses
    ext_ctx = replace(ctx, masses=MassProfile(m.nu, -1, sign * m.lam, m.lam))
    lhs = is_zero(extended_residual(ext_ctx))
    G_opp = pm_brackets(ctx, -sign)
    r_pm = ctx.r + ctx.beta_or_zero() * sign
    o_ctx = OOperatorContext(G_opp, r_pm, None, MassProfile(lam=1))
    rhs = is_zero(o_operator_residual(o_ctx))
    if lhs != rhs:
        raise InternalConsistencyError(f"deliebra sides disagree (extended {lhs}, O-operator {rhs})")
    return lhs


def nijenhuis_residual(L: LieAlgebra, N):
    """``[Nx, Ny] + N^2 [x, y] - N([Nx, y] + [x, Ny])``."""
    N = np.asarray(N, dtype=object)
    return rota_baxter_residual(L, N, 0) + xeinsum("ca,xya->xyc", N.dot(N), L.sc, optimize=True)


def intertwining_check(L: LieAlgebra, beta, kappa=1) -> Verdict:
    """``kappa beta([x, y]) = kappa [beta x, y] = kappa [x, beta y]``."""
    B = np.asarray(beta, dtype=object)
    c = L.sc
    b_xy = xeinsum("ca,xya->xyc", B, c, optimize=True)
    bx_y = xeinsum("ax,ayc->xyc", B, c, optimize=True)
    x_by = xeinsum("by,xbc->xyc", B, c, optimize=True)
    res = np.stack([b_xy - bx_y, b_xy - x_by]) * _q(kappa)
    return _verdict_from(res, "not intertwining")


def averaging_check(L: LieAlgebra, beta) -> Verdict:
    """``[beta x, beta y] = beta([x, beta y]) = beta([beta x, y])``."""
    B = np.asarray(beta, dtype=object)
    c = L.sc
    bb = xeinsum("ax,by,abc->xyc", B, B, c, optimize=True)
    t1 = xeinsum("ca,by,xba->xyc", B, B, c, optimize=True)
    t2 = xeinsum("ca,bx,bya->xyc", B, B, c, optimize=True)
    return _verdict_from(np.stack([bb - t1, bb - t2]), "not averaging")


def is_skew_adjoint(M, form) -> bool:
    """``B(Mx, y) + B(x, My) = 0``."""
    M = np.asarray(M, dtype=object)
    F = np.asarray(form, dtype=object)
    return is_zero(M.T.dot(F) + F.dot(M))


def is_self_adjoint(M, form) -> bool:
    M = np.asarray(M, dtype=object)
    F = np.asarray(form, dtype=object)
    return is_zero(M.T.dot(F) - F.dot(M))


def selfdual_lift(L: LieAlgebra, form, R, beta, kappa) -> dict:
    """Transport ``(R, beta)`` on ``(g, ad)`` to ``(R phi^-1, beta phi^-1)`` on ``(g*, ad*)``.

    Checks that the axiom families and the extended equations correspond, and,
    when ``R`` is skew-adjoint, that ``R~ +- beta~`` solve the ECYBE of mass
    ``(kappa + 1)/4`` exactly when ``(R, beta)`` solves its equation.
    """
    from .algebra import is_invariant_form
    from .yangbaxter import ecybe_residual, map_as_tensor

    kappa = _q(kappa)
    F = np.asarray(form, dtype=object)
    if linalg.det(F) == 0:
        raise PreconditionError("form not invertible")
    if not is_invariant_form(L, F):
        raise PreconditionError("form is not invariant")
    R = np.asarray(R, dtype=object)
    beta = np.asarray(beta, dtype=object)
    if not is_self_adjoint(beta, F):
        raise PreconditionError("beta is not self-adjoint for the form")
    phi_inv = linalg.inverse(F)
    Rt, bt = R.dot(phi_inv), beta.dot(phi_inv)
    masses = MassProfile(kappa, kappa, 0, 0)

    ctx_g = adjoint_context(L, R, beta, masses, trivial_bracket=True)
    ctx_d = coadjoint_context(L, Rt, bt, masses)
    ax_g = mass_axiom_checks(ctx_g)
    ax_d = mass_axiom_checks(ctx_d)
    adk = bool(ax_g["antisymmetric"]) and bool(ax_g["invariant"]) and bool(intertwining_check(L, beta, kappa))
    dual_axioms = bool(ax_d["antisymmetric"]) and bool(ax_d["invariant"])
    if adk != dual_axioms:
        raise InternalConsistencyError("axioms for beta and its lift disagree")
    report = {"axioms": adk}
    if adk:
        eq_g = is_zero(extended_residual(ctx_g))
        eq_d = is_zero(extended_residual(ctx_d))
        if eq_g != eq_d:
            raise InternalConsistencyError("extended equation and its lift disagree")
        report["extended"] = eq_g
        if is_skew_adjoint(R, F):
            eps = (kappa + 1) / 4
            for sign, key in ((1, "ecybe_plus"), (-1, "ecybe_minus")):
                r_pm = map_as_tensor(Rt + bt * sign)
                ok = is_zero(ecybe_residual(L, r_pm, eps))
                if ok != eq_g:
                    raise InternalConsistencyError(f"{key} disagrees with the operator equation")
                report[key] = ok
    return report
