"""PostLie algebras, dendriform trialgebras and the constructions linking them.

``circ[i, j, k]`` is the coefficient of ``e_k`` in ``e_i o e_j``; the Lie part
``bracket[i, j, k]`` follows the usual structure-constant convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import (
    GLieAlgebra,
    LieAlgebra,
    Representation,
    Verdict,
    glie_check,
    is_ideal,
    is_lie,
    killing_form,
)
from .catalog import borel_split
from .errors import InternalConsistencyError, PreconditionError
from .operators import (
    OOperatorContext,
    _acted,
    coadjoint_context,
    o_operator_residual,
    rb_from_splitting,
    rota_baxter_residual,
)
from .scalars import first_nonzero, identity, is_zero, zeros, xeinsum
from .yangbaxter import classify, split_alpha_beta, tensor_as_map

__all__ = [
    "PostLieAlgebra",
    "postlie_axioms",
    "is_postlie",
    "descended_lie",
    "glie_from_postlie",
    "from_o_operator",
    "induced_on_image",
    "from_rota_baxter",
    "compatible_from_invertible_rb",
    "baxter_postlie",
    "borel_example",
    "quasitriangular_postlie",
    "semisimple_classify",
    "DendriformTrialgebra",
    "trialgebra_axioms",
    "is_trialgebra",
    "trialgebra_to_postlie",
    "diagram_check",
    "trialgebra_from_rota_baxter",
    "synthesize_trialgebras",
]


@dataclass(frozen=True, eq=False)
class PostLieAlgebra:
    bracket: np.ndarray
    circ: np.ndarray
    name: str = "postlie"

    def __post_init__(self):
        b = np.asarray(self.bracket, dtype=object)
        c = np.asarray(self.circ, dtype=object)
        if b.shape != c.shape or b.ndim != 3 or len(set(b.shape)) != 1:
            raise ValueError("bracket and circ must both be n x n x n")
        object.__setattr__(self, "bracket", b)
        object.__setattr__(self, "circ", c)

    @property
    def dim(self) -> int:
        return self.bracket.shape[0]


def postlie_axioms(P: PostLieAlgebra) -> dict:
    """Residual tensors of the four defining identities.

    ``polie3[z, y, x]`` is ``z o (y o x) - y o (z o x) + (y o z) o x - (z o y) o x + [y, z] o x``
    and ``polie4[z, x, y]`` is ``z o [x, y] - [z o x, y] - [x, z o y]``.
    """
    B, C = P.bracket, P.circ
    anti = B + np.transpose(B, (1, 0, 2))
    t = xeinsum("ijl,lkm->ijkm", B, B, optimize=True)
    jac = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
    z_yx = xeinsum("yxa,zak->zyxk", C, C, optimize=True)
    yz_x = xeinsum("yza,axk->zyxk", C, C, optimize=True)
    br_x = xeinsum("yza,axk->zyxk", B, C, optimize=True)
    p3 = z_yx - np.transpose(z_yx, (1, 0, 2, 3)) + yz_x - np.transpose(yz_x, (1, 0, 2, 3)) + br_x
    p4 = (
        xeinsum("xya,zak->zxyk", B, C, optimize=True)
        - xeinsum("zxa,ayk->zxyk", C, B, optimize=True)
        - xeinsum("zya,xak->zxyk", C, B, optimize=True)
    )
    return {"antisymmetry": anti, "jacobi": jac, "polie3": p3, "polie4": p4}


def is_postlie(P: PostLieAlgebra) -> Verdict:
    for name, res in postlie_axioms(P).items():
        w = first_nonzero(res)
        if w is not None:
            return Verdict(False, w, name)
    return Verdict(True)


def _require_postlie(P: PostLieAlgebra):
    v = is_postlie(P)
    if not v:
        raise PreconditionError(f"not a PostLie algebra: {v.detail} fails at {v.witness}")


def descended_lie(P: PostLieAlgebra) -> LieAlgebra:
    """``{x, y} = x o y - y o x + [x, y]``."""
    _require_postlie(P)
    sc = P.circ - np.transpose(P.circ, (1, 0, 2)) + P.bracket
    L = LieAlgebra(P.name + "{}", sc)
    v = is_lie(L)
    if not v:
        raise InternalConsistencyError(f"descended bracket fails Jacobi at {v.witness}")
    return L


def glie_from_postlie(P: PostLieAlgebra) -> GLieAlgebra:
    """``(L, [,])`` as a ``(L, {,})``-Lie algebra through ``rho(x) y = x o y``."""
    g = descended_lie(P)
    k = LieAlgebra(P.name + "[]", P.bracket)
    rho = Representation(g, np.transpose(P.circ, (0, 2, 1)))
    G = GLieAlgebra(g, k, rho)
    v = glie_check(G)
    if not v:
        raise InternalConsistencyError(f"{v.detail} at {v.witness}")
    return G


def from_o_operator(ctx: OOperatorContext):
    """``[x, y] = lambda [x, y]_k``, ``x o y = r(x) . y`` on ``k``.

    Returns the PostLie algebra and a homomorphism certificate for
    ``r: (k, {,}) -> g``.
    """
    if not is_zero(o_operator_residual(ctx)):
        raise PreconditionError("r is not an O-operator of the given weight")
    G = ctx.G
    P = PostLieAlgebra(G.k.sc * ctx.lam, _acted(G, ctx.r), f"{G.k.name}_r")
    _require_postlie(P)
    desc = descended_lie(P)
    lhs = xeinsum("ca,xya->xyc", ctx.r, desc.sc, optimize=True)
    rhs = xeinsum("ax,by,abc->xyc", ctx.r, ctx.r, G.g.sc, optimize=True)
    hom = Verdict(is_zero(lhs - rhs), first_nonzero(lhs - rhs))
    if not hom:
        raise InternalConsistencyError(f"r is not a homomorphism from the descended algebra at {hom.witness}")
    return P, hom


def induced_on_image(ctx: OOperatorContext):
    """PostLie structure on ``r(k)``: ``[r x, r y] = lambda r[x, y]_k``, ``r x o r y = r(r(x) . y)``.

    Returns ``(P, image_basis)``; ``image_basis`` columns are in ``g`` coordinates.
    """
    if not is_zero(o_operator_residual(ctx)):
        raise PreconditionError("r is not an O-operator of the given weight")
    G, r, lam = ctx.G, ctx.r, ctx.lam
    K = linalg.nullspace(r)
    if K.shape[1]:
        v = is_ideal(G.k, K)
        if not v:
            raise PreconditionError(f"Ker r is not an ideal of k (witness {v.witness})")
    img, piv = linalg.column_basis(r)
    m = len(piv)
    kdim = G.k.dim
    act = _acted(G, r)

    def structure(pre):
        br = zeros((m, m, m))
        ci = zeros((m, m, m))
        for a in range(m):
            for b in range(m):
                xa, xb = pre[:, a], pre[:, b]
                v1 = r.dot(G.k.bracket(xa, xb)) * lam
                v2 = r.dot(xeinsum("x,y,xyk->k", xa, xb, act))
                br[a, b] = linalg.solve(img, v1)
                ci[a, b] = linalg.solve(img, v2)
        return br, ci

    eye = identity(kdim)
    pre1 = eye[:, piv]
    pre2 = pre1.copy()
    if K.shape[1]:
        shift = K.sum(axis=1)
        for a in range(m):
            pre2[:, a] = pre1[:, a] + shift * (a + 1)
    s1, s2 = structure(pre1), structure(pre2)
    if not (is_zero(s1[0] - s2[0]) and is_zero(s1[1] - s2[1])):
        raise InternalConsistencyError("induced operations depend on the preimage")
    P = PostLieAlgebra(s1[0], s1[1], f"r({G.k.name})")
    _require_postlie(P)
    # r as a PostLie morphism from (k, lambda [,]_k, r(.) .) onto the image
    src, _ = from_o_operator(ctx)
    coords = linalg.solve(img, r)  # m x kdim
    lhs_b = xeinsum("ca,xya->xyc", coords, src.bracket, optimize=True)
    rhs_b = xeinsum("ax,by,abc->xyc", coords, coords, P.bracket, optimize=True)
    lhs_c = xeinsum("ca,xya->xyc", coords, src.circ, optimize=True)
    rhs_c = xeinsum("ax,by,abc->xyc", coords, coords, P.circ, optimize=True)
    if not (is_zero(lhs_b - rhs_b) and is_zero(lhs_c - rhs_c)):
        raise InternalConsistencyError("r is not a PostLie homomorphism onto its image")
    return P, img


def from_rota_baxter(L: LieAlgebra, R, lam) -> PostLieAlgebra:
    """``[x, y] = lambda [x, y]_g``, ``x o y = [R x, y]_g``."""
    R = np.asarray(R, dtype=object)
    lam = Fraction(lam) if isinstance(lam, (int, str)) else lam
    if not is_zero(rota_baxter_residual(L, R, lam)):
        raise PreconditionError("R is not a Rota-Baxter operator of the given weight")
    P = PostLieAlgebra(L.sc * lam, xeinsum("ax,ayk->xyk", R, L.sc, optimize=True), f"{L.name}_R")
    _require_postlie(P)
    return P


def compatible_from_invertible_rb(L: LieAlgebra, R, lam) -> PostLieAlgebra:
    """``[x, y] = lambda R[R^-1 x, R^-1 y]``, ``x o y = R[x, R^-1 y]``; descends to ``[,]_g``."""
    R = np.asarray(R, dtype=object)
    lam = Fraction(lam) if isinstance(lam, (int, str)) else lam
    if not is_zero(rota_baxter_residual(L, R, lam)):
        raise PreconditionError("R is not a Rota-Baxter operator of the given weight")
    if linalg.det(R) == 0:
        raise PreconditionError("R is not invertible")
    Ri = linalg.inverse(R)
    br = xeinsum("ax,by,abc,kc->xyk", Ri, Ri, L.sc, R, optimize=True) * lam
    ci = xeinsum("by,xbc,kc->xyk", Ri, L.sc, R, optimize=True)
    P = PostLieAlgebra(br, ci, f"{L.name}_R^c")
    if not is_zero(descended_lie(P).sc - L.sc):
        raise InternalConsistencyError("compatible structure does not descend to the original bracket")
    return P


def baxter_postlie(L: LieAlgebra, R) -> dict:
    """For ``R`` solving the Baxter equation: PostLie algebras from ``(R + 1)/(-2)`` and ``(R - 1)/2``."""
    R = np.asarray(R, dtype=object)
    one = identity(L.dim)
    return {
        "+": from_rota_baxter(L, (R + one) * Fraction(-1, 2), 1),
        "-": from_rota_baxter(L, (R - one) * Fraction(1, 2), 1),
    }


def _root_units(roots: dict):
    """Matrix-unit positions ``(i, j)`` of the root vectors of ``sl(n)`` from simple-root coordinates."""
    out = {}
    for m in roots:
        nz = [a for a, c in enumerate(m) if c]
        i, j = nz[0], nz[-1] + 1
        out[m] = (i, j) if m[nz[0]] > 0 else (j, i)
    return out


def borel_example(L: LieAlgebra, which: str = "b+") -> dict:
    """The PostLie algebra of ``-P_{b+}`` (or ``-P_{n-}``) compared with closed forms.

    For ``b+`` every basis product is compared with: ``X_-a o y = 0``,
    ``H_i o H_j = 0``, ``H_i o X_b = -<b, a_i> X_b``, ``X_a o H_i = <a, a_i> X_a``,
    ``X_a o X_b = -N_ab X_a+b`` (``N_ab`` read off matrix units of ``sl(n)``);
    pairs ``X_a, X_-a`` fall back to ``-[X_a, X_-a]``.
    """
    b, nm = borel_split(L)
    R = rb_from_splitting(L, b, nm) if which == "b+" else rb_from_splitting(L, nm, b)
    P = from_rota_baxter(L, R, 1)
    report = {"postlie": P, "operator": R, "checked": 0, "closed_form": 0, "fallback": 0, "mismatches": []}
    if which != "b+":
        return report
    roots = L.meta["roots"]
    cartan = L.meta["cartan"]
    A = L.meta["cartan_matrix"]
    units = _root_units(roots)
    index_root = {v: k for k, v in roots.items()}
    n = L.dim

    def pair(beta, i):
        return sum(m * A[i][j] for j, m in enumerate(beta))

    def N(a, bt):
        (i, j), (k, l) = units[a], units[bt]
        return int(j == k) - int(l == i)

    for x in range(n):
        for y in range(n):
            expected = zeros(n)
            fallback = False
            rx = index_root.get(x)
            ry = index_root.get(y)
            if rx is not None and sum(rx) < 0:
                pass
            elif rx is None and ry is None:
                pass
            elif rx is None:
                expected[y] = -pair(ry, cartan.index(x))
            elif ry is None:
                expected[x] = pair(rx, cartan.index(y))
            else:
                s = tuple(a + c for a, c in zip(rx, ry))
                if s in roots:
                    expected[roots[s]] = -N(rx, ry)
                elif any(s):
                    pass
                else:
                    expected = -L.bracket(L.basis(x), L.basis(y))
                    fallback = True
            report["checked"] += 1
            report["fallback" if fallback else "closed_form"] += 1
            if not is_zero(P.circ[x, y] - expected):
                report["mismatches"].append((x, y))
    return report


def quasitriangular_postlie(L: LieAlgebra, r) -> dict:
    """PostLie algebra on ``g*`` from a quasitriangular ``r``; with invertible ``r`` also the
    compatible structure on ``g``."""
    label = classify(L, r).label
    if label not in ("quasitriangular", "triangular"):
        raise PreconditionError(f"(g, r) is {label}, not quasitriangular")
    _, beta = split_alpha_beta(r)
    Rm = tensor_as_map(r)
    Bm = tensor_as_map(beta)
    G = coadjoint_context(L)
    P = PostLieAlgebra(_acted(G, Bm) * -2, _acted(G, Rm), f"{L.name}*_r")
    _require_postlie(P)
    out = {"dual": P}
    if linalg.det(Rm) != 0:
        Ri = linalg.inverse(Rm)
        br = xeinsum("ka,bca,bx,cy->xyk", Rm, P.bracket, Ri, Ri, optimize=True)
        ci = xeinsum("ka,bca,bx,cy->xyk", Rm, P.circ, Ri, Ri, optimize=True)
        # [x,y] = -2 r(ad*(beta r^-1 x) r^-1 y) and x o y = r(ad*(x) r^-1 y)
        direct_c = xeinsum("ka,xab,by->xyk", Rm, G.pi.mats, Ri, optimize=True)
        if not is_zero(ci - direct_c):
            raise InternalConsistencyError("transported circ differs from r(ad*(x) r^-1 y)")
        C = PostLieAlgebra(br, ci, f"{L.name}_r")
        _require_postlie(C)
        out["compatible"] = C
        out["descends_to_g"] = is_zero(descended_lie(C).sc - L.sc)
    return out


def semisimple_classify(L: LieAlgebra, P: PostLieAlgebra):
    """Recover ``f`` with ``x o y = [f(x), y]`` and certify it is Rota-Baxter of weight 1."""
    if linalg.det(killing_form(L).matrix) == 0:
        raise PreconditionError("Killing form is degenerate")
    if not is_zero(P.bracket - L.sc):
        raise PreconditionError("the PostLie bracket is not the algebra's bracket")
    n = L.dim
    # ad(f(x)) = L_o(x):  sum_a f[a, x] sc[a, y, k] = circ[x, y, k]
    M = L.sc.reshape(n, n * n).T
    rhs = np.transpose(P.circ, (1, 2, 0)).reshape(n * n, n)
    f = zeros((n, n))
    for x in range(n):
        col = linalg.solve(M, rhs[:, x])
        if col is None:
            raise PreconditionError(f"left multiplication by e_{x} is not inner")
        f[:, x] = col
    circ = xeinsum("ax,ayk->xyk", f, L.sc, optimize=True)
    if not is_zero(circ - P.circ):
        raise InternalConsistencyError("recovered f does not reproduce the product")
    res = rota_baxter_residual(L, f, 1)
    if not is_zero(res):
        raise PreconditionError(f"input is not PostLie: f fails Rota-Baxter at {first_nonzero(res)}")
    return f


@dataclass(frozen=True, eq=False)
class DendriformTrialgebra:
    prec: np.ndarray
    succ: np.ndarray
    dot: np.ndarray
    name: str = "trialgebra"

    def __post_init__(self):
        for attr in ("prec", "succ", "dot"):
            object.__setattr__(self, attr, np.asarray(getattr(self, attr), dtype=object))
        if not (self.prec.shape == self.succ.shape == self.dot.shape):
            raise ValueError("the three products need equal shapes")

    @property
    def dim(self) -> int:
        return self.prec.shape[0]

    @property
    def star(self):
        return self.prec + self.succ + self.dot


def _outer(P1, P2):
    """``(x P1 y) P2 z``."""
    return xeinsum("xya,azk->xyzk", P1, P2, optimize=True)


def _inner(Q1, Q2):
    """``x Q1 (y Q2 z)``."""
    return xeinsum("yza,xak->xyzk", Q2, Q1, optimize=True)


def trialgebra_axioms(T: DendriformTrialgebra) -> list:
    lt, gt, dt, st = T.prec, T.succ, T.dot, T.star
    return [
        _outer(lt, lt) - _inner(lt, st),
        _outer(gt, lt) - _inner(gt, lt),
        _outer(st, gt) - _inner(gt, gt),
        _outer(gt, dt) - _inner(gt, dt),
        _outer(lt, dt) - _inner(dt, gt),
        _outer(dt, lt) - _inner(dt, lt),
        _outer(dt, dt) - _inner(dt, dt),
    ]


def is_trialgebra(T: DendriformTrialgebra) -> Verdict:
    for i, res in enumerate(trialgebra_axioms(T)):
        w = first_nonzero(res)
        if w is not None:
            return Verdict(False, w, f"axiom {i + 1}")
    return Verdict(True)


def trialgebra_to_postlie(T: DendriformTrialgebra) -> PostLieAlgebra:
    """``[x, y] = x.y - y.x``, ``x o y = x > y - y < x``."""
    br = T.dot - np.transpose(T.dot, (1, 0, 2))
    ci = T.succ - np.transpose(T.prec, (1, 0, 2))
    return PostLieAlgebra(br, ci, T.name + "_post")


def diagram_check(T: DendriformTrialgebra) -> dict:
    """Both routes to a Lie algebra agree: descended PostLie bracket vs commutator of ``*``."""
    v = is_trialgebra(T)
    if not v:
        raise PreconditionError(f"not a dendriform trialgebra: {v.detail} fails at {v.witness}")
    st = T.star
    assoc = is_zero(_outer(st, st) - _inner(st, st))
    P = trialgebra_to_postlie(T)
    post_ok = bool(is_postlie(P))
    commutator = st - np.transpose(st, (1, 0, 2))
    square = post_ok and is_zero(descended_lie(P).sc - commutator)
    # the dialgebra square: with the third product dropped the bracket vanishes and
    # x > y - y < x is the commutator-compatible pre-Lie product of (<, >)
    out = {"associative": assoc, "postlie": post_ok, "square": square}
    if is_zero(T.dot):
        pre_lie = P.circ
        out["dialgebra_square"] = is_zero(P.bracket) and is_zero(
            pre_lie - np.transpose(pre_lie, (1, 0, 2)) - commutator
        )
    out["ok"] = all(out.values())
    return out


def trialgebra_from_rota_baxter(mult, R, lam, name="rb-trialgebra") -> DendriformTrialgebra:
    """``x < y = x R(y)``, ``x > y = R(x) y``, ``x . y = lam x y`` on an associative algebra."""
    mult = np.asarray(mult, dtype=object)
    R = np.asarray(R, dtype=object)
    prec = xeinsum("by,xbk->xyk", R, mult, optimize=True)
    succ = xeinsum("ax,ayk->xyk", R, mult, optimize=True)
    return DendriformTrialgebra(prec, succ, mult * lam, name)


def _assoc_rb_solutions(mult, lam):
    """Rota-Baxter operators of weight ``lam`` on a 2-dim associative algebra, solved symbolically."""
    import sympy

    syms = sympy.symbols("r0:4")
    R = sympy.Matrix(2, 2, syms)
    m = [[[sympy.Rational(mult[i, j, k]) for k in range(2)] for j in range(2)] for i in range(2)]

    def prod(u, v):
        return sympy.Matrix([sum(u[i] * v[j] * m[i][j][k] for i in range(2) for j in range(2)) for k in range(2)])

    eqs = []
    basis = [sympy.Matrix([1, 0]), sympy.Matrix([0, 1])]
    for u in basis:
        for v in basis:
            Ru, Rv = R * u, R * v
            eqs.extend(prod(Ru, Rv) - R * (prod(Ru, v) + prod(u, Rv) + lam * prod(u, v)))
    sols = sympy.solve(eqs, syms, dict=True)
    out = []
    for sol in sols:
        free = sorted(set().union(*[sympy.sympify(sol.get(s, s)).free_symbols for s in syms]), key=str)
        for val in (1, 2):
            subs = {f: val for f in free}
            mat = [[Fraction(str(sympy.nsimplify(sympy.sympify(sol.get(syms[2 * i + j], syms[2 * i + j])).subs(subs))))
                    for j in range(2)] for i in range(2)]
            out.append(np.array(mat, dtype=object))
    return out


def synthesize_trialgebras():
    """Small trialgebras: every 1-dim solution family and Rota-Baxter constructions in dim 2."""
    import sympy

    p, q, s = sympy.symbols("p q s")
    # 1-dim: e<e = p e, e>e = q e, e.e = s e; the seven axioms reduce to these
    one = lambda a: np.array([[[Fraction(a)]]], dtype=object)  # noqa: E731
    t1 = DendriformTrialgebra(np.array([[[p]]], dtype=object), np.array([[[q]]], dtype=object), np.array([[[s]]], dtype=object))
    eqs = sorted({sympy.expand(e) for res in trialgebra_axioms(t1) for e in res.flat} - {0}, key=str)
    out = []
    for sol in sympy.solve(eqs, [p, q, s], dict=True):
        for val in (1, -2):
            vals = [sympy.sympify(sol.get(v, v)).subs({p: val, q: val, s: val}) for v in (p, q, s)]
            fr = [Fraction(str(x)) for x in vals]
            out.append(DendriformTrialgebra(one(fr[0]), one(fr[1]), one(fr[2]), f"dim1{tuple(map(str, fr))}"))
    # 2-dim associative algebras: Q x Q and the dual numbers Q[e]/e^2
    qxq = zeros((2, 2, 2))
    qxq[0, 0, 0] = qxq[1, 1, 1] = Fraction(1)
    dual = zeros((2, 2, 2))
    dual[0, 0, 0] = dual[0, 1, 1] = dual[1, 0, 1] = Fraction(1)
    for name, mult in (("QxQ", qxq), ("Q[e]", dual)):
        for lam in (0, 1):
            for j, R in enumerate(_assoc_rb_solutions(mult, lam)):
                T = trialgebra_from_rota_baxter(mult, R, lam, f"{name}-w{lam}-{j}")
                v = is_trialgebra(T)
                if not v:
                    raise InternalConsistencyError(f"{T.name}: {v.detail} fails at {v.witness}")
                out.append(T)
    return out
