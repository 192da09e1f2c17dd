"""Triple Lie data, Lie-Poisson dynamics on ``g*`` and Casimir-built Lax pairs.

Coordinates on ``g*`` are ``a_k = <e_k, a*>``.  Observables are polynomials in
these coordinates with rational coefficients (``sympy.Poly`` over ``QQ``); the
differential of an observable at ``a*`` is an element of ``g``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from . import linalg
from .algebra import (
    GLieAlgebra,
    LieAlgebra,
    Representation,
    Verdict,
    _verdict_from,
    adjoint,
    glie_check,
    is_invariant_form,
    is_lie,
    is_rho_invariant_form,
    killing_form,
)
from .errors import InputError, InternalConsistencyError, PreconditionError
from .operators import OOperatorContext, bracket_R, extended_residual, mass_axiom_checks, rota_baxter_residual
from .postlie import descended_lie, from_rota_baxter
from .scalars import first_nonzero, is_zero, zeros, xeinsum
from .yangbaxter import is_skew, is_symmetric, tensor_as_map

__all__ = [
    "TripleLieDatum",
    "verify_triple_datum",
    "casimir",
    "Observable",
    "coordinate_observable",
    "quadratic_casimir",
    "lie_poisson_bracket",
    "invariant_observables",
    "LaxPair",
    "build_lax_pair",
    "lax_identity_residual",
    "lax_rhs",
    "Trajectory",
    "integrate",
    "conservation_check",
    "involution_check",
    "ansatz_sign",
    "ansatz_lhs",
    "ansatz_rhs",
    "ansatz_check",
    "curvature_tensor",
    "postlie_triple",
    "adjoint_triple",
]


def _rat(x):
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


@dataclass(frozen=True, eq=False)
class TripleLieDatum:
    """``(g, [,]_0, rho, [,], B, r, lambda)`` on one underlying space."""

    g0: LieAlgebra
    rho: Representation
    k: LieAlgebra
    B: np.ndarray
    r: np.ndarray
    lam: Fraction = Fraction(0)
    name: str = "triple"

    def __post_init__(self):
        object.__setattr__(self, "B", np.asarray(self.B, dtype=object))
        object.__setattr__(self, "r", np.asarray(self.r, dtype=object))
        object.__setattr__(self, "lam", Fraction(self.lam))
        n = self.g0.dim
        if self.k.dim != n or self.rho.space_dim != n or self.B.shape != (n, n) or self.r.shape != (n, n):
            raise ValueError("all pieces of a triple datum live on one space")

    @property
    def dim(self) -> int:
        return self.g0.dim

    @property
    def r_tilde(self):
        """``r o phi`` as a map ``g -> g``; ``phi`` has the matrix of ``B``."""
        return tensor_as_map(self.r).dot(self.B)

    @property
    def bracket_r(self):
        """``[x, y]_r = rho(r~ x) y - rho(r~ y) x + lambda [x, y]``."""
        T = xeinsum("ax,aky->xyk", self.r_tilde, self.rho.mats, optimize=True)
        return T - np.transpose(T, (1, 0, 2)) + self.k.sc * self.lam


def verify_triple_datum(d: TripleLieDatum) -> dict:
    """One verdict per defining item."""
    out = {"g0_lie": is_lie(d.g0)}
    G = GLieAlgebra(d.g0, d.k, d.rho)
    out["k_lie"] = is_lie(d.k)
    out["g0_lie_algebra"] = glie_check(G)
    sym = _verdict_from(d.B - d.B.T, "form is not symmetric")
    out["form_symmetric"] = sym
    out["form_nondegenerate"] = Verdict(linalg.det(d.B) != 0, None, "" if linalg.det(d.B) != 0 else "degenerate")
    out["form_invariant"] = is_invariant_form(d.k, d.B)
    out["form_rho_invariant"] = is_rho_invariant_form(G, d.B)
    sc = d.bracket_r
    anti = _verdict_from(sc + np.transpose(sc, (1, 0, 2)), "[,]_r is not skew")
    out["bracket_r_lie"] = is_lie(LieAlgebra("g_r", sc, d.k.field)) if anti else anti
    return out


def _require_valid(d: TripleLieDatum):
    for key, v in verify_triple_datum(d).items():
        if not v:
            raise PreconditionError(f"triple datum fails '{key}' at {v.witness}")


def casimir(d: TripleLieDatum):
    """``Omega = sum_i e_i (x) e^i`` with ``e^i`` the ``B``-dual basis, checked to be invariant."""
    if linalg.det(d.B) == 0:
        raise PreconditionError("B is degenerate")
    Binv = linalg.inverse(d.B)
    Omega = Binv.T
    # (rho(x) (x) 1 + 1 (x) rho(x)) Omega = rho_x Omega + Omega rho_x^T
    res = xeinsum("iap,pq->iaq", d.rho.mats, Omega, optimize=True) + xeinsum(
        "ap,iqp->iaq", Omega, d.rho.mats, optimize=True
    )
    if not is_zero(res):
        raise InternalConsistencyError(f"Casimir element is not invariant at {first_nonzero(res)}")
    return Omega


@dataclass(frozen=True, eq=False)
class Observable:
    """A polynomial function on ``g*``."""

    poly: sympy.Poly
    name: str = ""
    _num: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.poly.gens)

    def gradient(self) -> list:
        return [self.poly.diff(s) for s in self.poly.gens]

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __call__(self, a):
        """Float evaluation."""
        if "f" not in self._num:
            self._num["f"] = sympy.lambdify(self.poly.gens, self.poly.as_expr(), "numpy")
        return float(self._num["f"](*a))

    def grad_float(self, a):
        if "g" not in self._num:
            exprs = [g.as_expr() for g in self.gradient()]
            self._num["g"] = sympy.lambdify(self.poly.gens, exprs, "numpy")
        return np.array(self._num["g"](*a), dtype=float)


def _gens(n):
    return sympy.symbols(f"a0:{n}")


def coordinate_observable(n: int, k: int) -> Observable:
    gens = _gens(n)
    return Observable(sympy.Poly(gens[k], *gens, domain="QQ"), f"a{k}")


def quadratic_casimir(d: TripleLieDatum) -> Observable:
    """``a* -> B(phi^-1 a*, phi^-1 a*)``."""
    gens = _gens(d.dim)
    Binv = linalg.inverse(d.B)
    expr = sum(_rat(Binv[i, j]) * gens[i] * gens[j] for i in range(d.dim) for j in range(d.dim))
    return Observable(sympy.Poly(expr, *gens, domain="QQ"), "B-quadratic")


def lie_poisson_bracket(d: TripleLieDatum, f: Observable, g: Observable) -> Observable:
    """``{f, g}_r(a*) = <[df, dg]_r, a*>``."""
    sc = d.bracket_r
    gens = f.poly.gens
    df, dg = f.gradient(), g.gradient()
    lin = [sympy.Poly(sum(_rat(sc[i, j, k]) * gens[k] for k in range(d.dim)), *gens, domain="QQ")
           for i in range(d.dim) for j in range(d.dim)]
    total = sympy.Poly(0, *gens, domain="QQ")
    for i in range(d.dim):
        if df[i].is_zero:
            continue
        for j in range(d.dim):
            if dg[j].is_zero:
                continue
            term = lin[i * d.dim + j]
            if not term.is_zero:
                total += df[i] * dg[j] * term
    return Observable(total, f"{{{f.name},{g.name}}}")


def _action_fields(d: TripleLieDatum):
    """Linear vector fields on ``g*`` of the dual of ``rho`` and the coadjoint action of ``[,]``."""
    mats = [-d.rho.mats[i].T for i in range(d.dim)]
    ad = d.k.ad()
    mats += [-ad[i].T for i in range(d.dim)]
    return mats


def invariant_observables(d: TripleLieDatum, degree: int = 2) -> list:
    """Basis of polynomials of degree ``<= degree`` annihilated by both infinitesimal actions."""
    if degree > 4:
        raise InputError("observables are supported up to degree 4")
    n = d.dim
    gens = _gens(n)
    fields_ = _action_fields(d)
    out = []
    for deg in range(degree + 1):
        monos = list(itertools.combinations_with_replacement(range(n), deg))
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for X in fields_:
            block = zeros((len(monos), len(monos)))
            for col, m in enumerate(monos):
                # derivative of the monomial along x -> X x
                for pos in range(deg):
                    k = m[pos]
                    rest = m[:pos] + m[pos + 1:]
                    for j in range(n):
                        c = X[k, j]
                        if c != 0:
                            key = tuple(sorted(rest + (j,)))
                            block[index[key], col] += c
            rows.append(block)
        A = np.concatenate(rows, axis=0) if rows else zeros((0, len(monos)))
        K = linalg.nullspace(A)
        for c in range(K.shape[1]):
            expr = sum(_rat(K[i, c]) * sympy.Mul(*[gens[k] for k in m]) for i, m in enumerate(monos))
            out.append(Observable(sympy.Poly(expr, *gens, domain="QQ"), f"deg{deg}-{c}"))
    return out


def _is_invariant(d: TripleLieDatum, f: Observable) -> bool:
    gens = f.poly.gens
    grad = f.gradient()
    for X in _action_fields(d):
        total = sympy.Poly(0, *gens, domain="QQ")
        for k in range(d.dim):
            if grad[k].is_zero:
                continue
            lin = sum(_rat(X[k, j]) * gens[j] for j in range(d.dim))
            total += grad[k] * sympy.Poly(lin, *gens, domain="QQ")
        if not total.is_zero:
            return False
    return True


@dataclass(frozen=True, eq=False)
class LaxPair:
    """``L(a*) = (a* (x) 1)(Omega)`` and ``M(a*) = r~(dH(a*))``."""

    datum: TripleLieDatum
    Omega: np.ndarray
    H: Observable
    L_matrix: np.ndarray  # L(a*) = L_matrix @ a
    M_map: np.ndarray  # r~

    def L(self, a):
        return np.asarray(self.L_matrix, dtype=float).dot(a)

    def M(self, a):
        return np.asarray(self.M_map, dtype=float).dot(self.H.grad_float(a))


def build_lax_pair(d: TripleLieDatum, H: Observable) -> LaxPair:
    _require_valid(d)
    if not _is_invariant(d, H):
        raise PreconditionError("H is not invariant under the dual of rho and the coadjoint action of [,]")
    Omega = casimir(d)
    pair = LaxPair(d, Omega, H, Omega.T, d.r_tilde)
    res = lax_identity_residual(pair)
    if any(not p.is_zero for p in res):
        raise InternalConsistencyError("dL/dt + rho(M) L is not identically zero")
    return pair


def _flow_polys(pair: LaxPair):
    """``da_k/dt = {H, a_k}_r`` as polynomials."""
    d = pair.datum
    n = d.dim
    return [lie_poisson_bracket(d, pair.H, coordinate_observable(n, k)).poly for k in range(n)]


def lax_identity_residual(pair: LaxPair) -> list:
    """Components of ``dL/dt + rho(M) L`` as exact polynomials."""
    d = pair.datum
    n = d.dim
    gens = pair.H.poly.gens
    P = lambda e: sympy.Poly(e, *gens, domain="QQ")  # noqa: E731
    flow = _flow_polys(pair)
    Lm = pair.L_matrix
    L = [P(sum(_rat(Lm[i, j]) * gens[j] for j in range(n))) for i in range(n)]
    dL = [sum((flow[j] * _rat(Lm[i, j]) for j in range(n) if Lm[i, j] != 0), P(0)) for i in range(n)]
    grad = pair.H.gradient()
    M = [sum((grad[j] * _rat(pair.M_map[a, j]) for j in range(n) if pair.M_map[a, j] != 0), P(0)) for a in range(n)]
    rho = d.rho.mats
    out = []
    for k in range(n):
        acc = dL[k]
        for a in range(n):
            if M[a].is_zero:
                continue
            for y in range(n):
                c = rho[a][k, y]
                if c != 0 and not L[y].is_zero:
                    acc = acc + M[a] * L[y] * _rat(c)
        out.append(acc)
    return out


def lax_rhs(pair: LaxPair, a):
    """``(da*/dt, dL/dt)`` at a float state."""
    a = np.asarray(a, dtype=float)
    sc = _float_sc(pair)
    dH = pair.H.grad_float(a)
    da = xeinsum("i,ikj,j->k", dH, sc, a)
    return da, np.asarray(pair.L_matrix, dtype=float).dot(da)


def _float_sc(pair: LaxPair):
    cache = pair.H._num
    key = ("sc", id(pair.datum))
    if key not in cache:
        cache[key] = np.asarray(pair.datum.bracket_r, dtype=float)
    return cache[key]


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    L_values: np.ndarray
    h: float
    method: str = "RK4"


def integrate(pair: LaxPair, a0, h: float, steps: int, method: str = "RK4", record_every: int = 1) -> Trajectory:
    """Fixed-step classical RK4 on ``da*/dt = {H, a*}_r``."""
    if method != "RK4":
        raise InputError(f"unsupported method {method!r}")
    if not (h > 0 and np.isfinite(h)):
        raise InputError("step size must be positive and finite")
    a = np.asarray(a0, dtype=float)
    if not np.all(np.isfinite(a)):
        raise InputError("initial state is not finite")
    sc = _float_sc(pair)
    grad = pair.H.grad_float

    def f(x):
        return np.einsum("i,ikj,j->k", grad(x), sc, x)

    times = [0.0]
    states = [a.copy()]
    for step in range(1, steps + 1):
        k1 = f(a)
        k2 = f(a + 0.5 * h * k1)
        k3 = f(a + 0.5 * h * k2)
        k4 = f(a + h * k3)
        a = a + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(a)):
            raise InternalConsistencyError(f"state became non-finite at step {step}")
        if step % record_every == 0 or step == steps:
            times.append(step * h)
            states.append(a.copy())
    S = np.array(states)
    Lm = np.asarray(pair.L_matrix, dtype=float)
    return Trajectory(np.array(times), S, S.dot(Lm.T), h, method)


def conservation_check(pair: LaxPair, traj: Trajectory, f: Observable | None = None) -> dict:
    """Maximum absolute and relative deviation of ``f`` (default ``H``) along the trajectory."""
    f = f or pair.H
    vals = np.array([f(s) for s in traj.states])
    dev = np.abs(vals - vals[0])
    scale = abs(vals[0]) if vals[0] != 0 else 1.0
    return {"max_abs": float(dev.max()), "max_rel": float(dev.max() / scale), "initial": float(vals[0])}


def involution_check(d: TripleLieDatum, f: Observable, g: Observable) -> Observable:
    """``{f, g}_r`` for invariant observables; the result must be the zero polynomial."""
    for h in (f, g):
        if not _is_invariant(d, h):
            raise PreconditionError(f"observable {h.name!r} is not invariant")
    return lie_poisson_bracket(d, f, g)


def ansatz_sign(d: TripleLieDatum) -> int:
    """``+1`` for skew ``r``, ``-1`` for symmetric ``r``."""
    if is_skew(d.r):
        return 1
    if is_symmetric(d.r):
        return -1
    raise PreconditionError("ansatz needs a skew-symmetric or symmetric r")


def ansatz_lhs(d: TripleLieDatum) -> np.ndarray:
    """``{L_s, L_t}_r`` through the Lie-Poisson bracket of coordinate functions, as ``[s, t, k]``."""
    n = d.dim
    lhs = zeros((n, n, n))
    gens = _gens(n)
    coords = [coordinate_observable(n, s) for s in range(n)]
    for s in range(n):
        for t in range(n):
            p = lie_poisson_bracket(d, coords[s], coords[t]).poly
            for k in range(n):
                c = p.coeff_monomial(gens[k])
                lhs[s, t, k] = Fraction(int(c.p), int(c.q))
    return lhs


def ansatz_rhs(d: TripleLieDatum, sign: int) -> np.ndarray:
    """Closed r-matrix form ``sign * (a_ls c_lk^t - a_lt c_lk^s) - lambda d~_sk^t``.

    ``r = sum a_st e_s (x) e^t``, ``e_l . e^s = sum c_ls^t e^t`` and
    ``[e_s, e^t] = sum d~_st^k e^k`` in the ``B``-dual basis.
    """
    n = d.dim
    B = d.B
    Binv = linalg.inverse(B)
    A = d.r.dot(B)  # r = sum_{s,t} A[s, t] e_s (x) e^t
    c = np.array([B.dot(d.rho.mats[l]).dot(Binv) for l in range(n)], dtype=object)  # c[l][t, s]
    ad = d.k.ad()
    dt = np.array([B.dot(ad[s]).dot(Binv) for s in range(n)], dtype=object)  # dt[s][k, t]
    rhs = zeros((n, n, n))
    for s in range(n):
        for t in range(n):
            for k in range(n):
                acc = Fraction(0)
                for l in range(n):
                    acc += sign * (A[l, s] * c[l][t, k] - A[l, t] * c[l][s, k])
                acc -= d.lam * dt[s][t, k]
                rhs[s, t, k] = acc
    return rhs


def ansatz_check(d: TripleLieDatum) -> np.ndarray:
    """``ansatz_lhs - ansatz_rhs`` with the sign dictated by the symmetry of ``r``."""
    return ansatz_lhs(d) - ansatz_rhs(d, ansatz_sign(d))


def curvature_tensor(ctx: OOperatorContext) -> dict:
    """``R_e(x, y) z = kappa [b x, b y] . z + mu b([x, y]_k) . z - lambda^2/4 [[x, y]_k, z]_k``.

    Also rebuilds the curvature of the connection ``x, y -> r(x) . y + lambda/2 [x, y]_k``
    from its definition and compares, then checks ``g``-invariance on all basis quadruples.
    """
    m = ctx.masses
    checks = mass_axiom_checks(ctx)
    if not checks["invariant"]:
        raise PreconditionError(f"beta is not g-invariant of mass kappa (witness {checks['invariant'].witness})")
    if m.mu != 0:
        from dataclasses import replace

        from .operators import MassProfile

        alt = mass_axiom_checks(replace(ctx, masses=MassProfile(m.nu, m.mu, m.mu, m.lam)))
        if not alt["invariant"]:
            raise PreconditionError("beta is not g-invariant of mass mu")
    if not is_zero(extended_residual(ctx)):
        raise PreconditionError("(r, beta) does not solve the extended equation")
    G, B, lam = ctx.G, ctx.beta_or_zero(), ctx.lam
    kc = G.k.sc
    pi = G.pi.mats
    n = G.k.dim
    bb = xeinsum("ax,by,abc->xyc", B, B, G.g.sc, optimize=True) * m.kappa
    bk = xeinsum("ca,xya->xyc", B, kc, optimize=True) * m.mu
    xi = bb + bk  # element of g per (x, y)
    Re = xeinsum("xyc,cwz->xyzw", xi, pi, optimize=True)
    Re = Re - xeinsum("xya,azw->xyzw", kc, kc, optimize=True) * (lam * lam / 4)
    # connection route: Gamma[x][w, y] = coefficient of e_w in nabla_x e_y
    Gam = xeinsum("ax,awy->xwy", ctx.r, pi, optimize=True) + np.transpose(kc, (0, 2, 1)) * (lam / 2)
    brR = bracket_R(ctx)
    GG = xeinsum("xwa,yaz->xyzw", Gam, Gam, optimize=True)
    conn = GG - np.transpose(GG, (1, 0, 2, 3)) - xeinsum("xyc,cwz->xyzw", brR, Gam, optimize=True)
    if not is_zero(conn - Re):
        raise InternalConsistencyError(f"curvature formulas disagree at {first_nonzero(conn - Re)}")
    # xi . R(x,y)z - R(x,y)(xi . z) - R(xi . x, y) z - R(x, xi . y) z
    t1 = xeinsum("iwv,xyzv->ixyzw", pi, Re, optimize=True)
    t2 = xeinsum("xyvw,ivz->ixyzw", Re, pi, optimize=True)
    t3 = xeinsum("ivx,vyzw->ixyzw", pi, Re, optimize=True)
    t4 = xeinsum("ivy,xvzw->ixyzw", pi, Re, optimize=True)
    inv = t1 - t2 - t3 - t4
    # covariant constancy: xi ranging over the image of r
    cov = xeinsum("iu,ixyzw->uxyzw", ctx.r, inv, optimize=True)
    return {
        "tensor": Re,
        "nonzero": not is_zero(Re),
        "invariance": _verdict_from(inv, "curvature is not g-invariant"),
        "covariantly_constant": _verdict_from(cov, "curvature is not parallel"),
        "dim": n,
    }


def postlie_triple(L: LieAlgebra, R, r, lam_tilde) -> TripleLieDatum:
    """``({,}, rho(x) = ad(R x), [,]_g, Killing, r, lambda~)`` from a weight-1 Rota-Baxter ``R``."""
    R = np.asarray(R, dtype=object)
    if not is_zero(rota_baxter_residual(L, R, 1)):
        raise PreconditionError("R is not a Rota-Baxter operator of weight 1")
    P = from_rota_baxter(L, R, 1)
    g0 = descended_lie(P)
    rho = Representation(g0, np.transpose(P.circ, (0, 2, 1)))
    d = TripleLieDatum(g0, rho, L, killing_form(L).matrix, r, lam_tilde, f"{L.name}-postlie")
    v = verify_triple_datum(d)["bracket_r_lie"]
    if not v:
        raise PreconditionError(f"[,]_r fails Jacobi at {v.witness}")
    return d


def adjoint_triple(L: LieAlgebra, r, lam, B=None) -> TripleLieDatum:
    """``(g, [,]_g, ad, [,]_g, B, r, lambda)``, ``B`` defaulting to the Killing form."""
    B = killing_form(L).matrix if B is None else B
    return TripleLieDatum(L, adjoint(L), L, B, r, lam, f"{L.name}-adjoint")
