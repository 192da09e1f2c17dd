"""Lie algebras given by structure constants, representations and forms.

Conventions
-----------
* ``sc[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
* Vectors are 1-d object arrays of exact scalars; linear maps are matrices
  acting on column vectors (``dst x src``).
* ``ad(e_i)[k, j] = sc[i, j, k]`` and the coadjoint matrices are
  ``-ad(e_i).T`` (dual coordinates with respect to the dual basis).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .scalars import GaussQ, as_scalar, first_nonzero, zeros, xeinsum

__all__ = [
    "Verdict",
    "LieAlgebra",
    "Representation",
    "GLieAlgebra",
    "BilinearForm",
    "lie_from_brackets",
    "jacobi_check",
    "is_lie",
    "is_derivation",
    "adjoint",
    "coadjoint",
    "representation_check",
    "killing_form",
    "is_invariant_form",
    "is_rho_invariant_form",
    "form_to_iso",
    "transport",
    "glie_check",
    "semidirect_sum",
    "direct_sum",
    "complexify",
    "over_gaussian",
    "restrict_to_subspace",
    "is_subalgebra",
    "is_ideal",
    "abelian",
    "brackets_equal",
]


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exact check: ``ok`` plus the first failing basis tuple."""

    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _verdict_from(residual, detail="") -> Verdict:
    w = first_nonzero(residual)
    return Verdict(w is None, w, "" if w is None else detail)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    name: str
    sc: np.ndarray
    field: str = "Q"
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        sc = np.asarray(self.sc, dtype=object)
        if sc.ndim != 3 or not (sc.shape[0] == sc.shape[1] == sc.shape[2]):
            raise ValueError(f"structure constants must be n x n x n, got {sc.shape}")
        object.__setattr__(self, "sc", sc)
        if any(sc[i, j, k] != -sc[j, i, k] for i, j, k in np.ndindex(*sc.shape)):
            raise ValueError("structure constants are not antisymmetric")

    @property
    def dim(self) -> int:
        return self.sc.shape[0]

    def bracket(self, x, y):
        return xeinsum("i,j,ijk->k", np.asarray(x, dtype=object), np.asarray(y, dtype=object), self.sc)

    def basis(self, i):
        v = zeros(self.dim, self.field)
        v[i] = as_scalar(1, self.field)
        return v

    def ad(self, x=None):
        """Stack of adjoint matrices, or ``ad(x)`` for a vector ``x``."""
        mats = np.transpose(self.sc, (0, 2, 1))
        if x is None:
            return mats
        return xeinsum("i,ikj->kj", np.asarray(x, dtype=object), mats)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim}, field={self.field!r})"


def lie_from_brackets(name, dim, brackets, field="Q", meta=None) -> LieAlgebra:
    """Build an algebra from ``{(i, j): {k: c}}`` or a list ``[(i, j, [(k, c), ...])]``."""
    sc = zeros((dim, dim, dim), field)
    items = brackets.items() if isinstance(brackets, dict) else (((i, j), terms) for i, j, terms in brackets)
    for (i, j), terms in items:
        if i == j:
            raise ValueError("diagonal bracket entries must vanish")
        pairs = terms.items() if isinstance(terms, dict) else terms
        for k, c in pairs:
            c = as_scalar(c, field)
            sc[i, j, k] += c
            sc[j, i, k] -= c
    return LieAlgebra(name, sc, field, dict(meta or {}))


def abelian(n: int, field="Q") -> LieAlgebra:
    return LieAlgebra(f"abelian-{n}", zeros((n, n, n), field), field)


def jacobi_check(L: LieAlgebra) -> np.ndarray:
    """``[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`` as an ``n^4`` array."""
    c = L.sc
    # [[e_i,e_j],e_k]_m = sum_l c_ij^l c_lk^m
    t = xeinsum("ijl,lkm->ijkm", c, c, optimize=True)
    return t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))


def is_lie(L: LieAlgebra) -> Verdict:
    return _verdict_from(jacobi_check(L), "Jacobi identity fails")


def brackets_equal(L1: LieAlgebra, L2: LieAlgebra) -> bool:
    return L1.dim == L2.dim and all(a == b for a, b in zip(L1.sc.flat, L2.sc.flat))


def is_derivation(L: LieAlgebra, D) -> Verdict:
    D = np.asarray(D, dtype=object)
    n = L.dim
    if D.shape != (n, n):
        raise ValueError(f"derivation must be {n}x{n}")
    c = L.sc
    # D[e_i, e_j] - [D e_i, e_j] - [e_i, D e_j]
    lhs = xeinsum("ijk,mk->ijm", c, D, optimize=True)
    t1 = xeinsum("ai,ajm->ijm", D, c, optimize=True)
    t2 = xeinsum("bj,ibm->ijm", D, c, optimize=True)
    return _verdict_from(lhs - t1 - t2, "not a derivation")


@dataclass(frozen=True, eq=False)
class Representation:
    """``mats[i]`` is the ``m x m`` matrix of ``rho(e_i)``."""

    acting: LieAlgebra
    mats: np.ndarray

    def __post_init__(self):
        mats = np.asarray(self.mats, dtype=object)
        n = self.acting.dim
        if mats.ndim != 3 or mats.shape[0] != n or mats.shape[1] != mats.shape[2]:
            raise ValueError(f"representation needs {n} square matrices, got {mats.shape}")
        object.__setattr__(self, "mats", mats)

    @property
    def space_dim(self) -> int:
        return self.mats.shape[1]

    def of(self, x):
        return xeinsum("i,iab->ab", np.asarray(x, dtype=object), self.mats)

    def act(self, x, v):
        return self.of(x).dot(np.asarray(v, dtype=object))


def representation_check(rho: Representation) -> np.ndarray:
    """``rho([e_i,e_j]) - [rho(e_i), rho(e_j)]`` for all basis pairs."""
    M = rho.mats
    lhs = xeinsum("ijk,kab->ijab", rho.acting.sc, M, optimize=True)
    prod_ = xeinsum("iab,jbc->ijac", M, M, optimize=True)
    return lhs - (prod_ - np.transpose(prod_, (1, 0, 2, 3)))


def adjoint(L: LieAlgebra) -> Representation:
    return Representation(L, L.ad())


def coadjoint(L: LieAlgebra) -> Representation:
    return Representation(L, -np.transpose(L.ad(), (0, 2, 1)))


@dataclass(frozen=True, eq=False)
class GLieAlgebra:
    """A Lie algebra ``k`` on which ``g`` acts by derivations through ``pi``."""

    g: LieAlgebra
    k: LieAlgebra
    pi: Representation

    def __post_init__(self):
        if self.pi.acting is not self.g and self.pi.acting.dim != self.g.dim:
            raise ValueError("pi must be a representation of g")
        if self.pi.space_dim != self.k.dim:
            raise ValueError("pi must act on the space of k")

    def act(self, x, v):
        return self.pi.act(x, v)


def glie_check(G: GLieAlgebra) -> Verdict:
    """Both invariants: ``pi`` is a representation and acts by derivations of ``k``."""
    v = _verdict_from(representation_check(G.pi), "pi is not a representation")
    if not v:
        return v
    for i in range(G.g.dim):
        d = is_derivation(G.k, G.pi.mats[i])
        if not d:
            return Verdict(False, (i,) + d.witness, "pi(e_i) is not a derivation of k")
    return Verdict(True)


@dataclass(frozen=True, eq=False)
class BilinearForm:
    algebra: LieAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=object))

    def __call__(self, x, y):
        return np.asarray(x, dtype=object).dot(self.matrix).dot(np.asarray(y, dtype=object))

    @property
    def is_symmetric(self) -> bool:
        M = self.matrix
        return all(M[i, j] == M[j, i] for i, j in np.ndindex(*M.shape))

    @property
    def is_nondegenerate(self) -> bool:
        return linalg.det(self.matrix) != 0


def killing_form(L: LieAlgebra) -> BilinearForm:
    ad = L.ad()
    return BilinearForm(L, xeinsum("iab,jba->ij", ad, ad, optimize=True))


def _form_matrix(B):
    return B.matrix if isinstance(B, BilinearForm) else np.asarray(B, dtype=object)


def is_invariant_form(L: LieAlgebra, B) -> Verdict:
    """``B([x,y],z) = B(x,[y,z])`` on all basis triples."""
    M = _form_matrix(B)
    lhs = xeinsum("ijm,mk->ijk", L.sc, M, optimize=True)
    rhs = xeinsum("im,jkm->ijk", M, L.sc, optimize=True)
    return _verdict_from(lhs - rhs, "form is not invariant")


def is_rho_invariant_form(G: GLieAlgebra, B) -> Verdict:
    """``B(rho(xi)x, y) + B(x, rho(xi)y) = 0`` for basis ``xi`` of g and ``x, y`` of k."""
    M = _form_matrix(B)
    P = G.pi.mats
    t = xeinsum("iax,ay->ixy", P, M, optimize=True)
    return _verdict_from(t + np.transpose(t, (0, 2, 1)), "form is not rho-invariant")


def form_to_iso(B):
    """The map ``phi: g -> g*``, ``<phi(x), y> = B(x, y)``; its matrix is B's matrix."""
    M = _form_matrix(B)
    if linalg.det(M) == 0:
        raise linalg.SingularMatrixError("form not invertible")
    return M


def transport(B, L: LieAlgebra, rho: Representation | None = None, check_dual: bool = False):
    """Carry the bracket of ``L`` (and a representation on it) to the dual via ``phi``.

    Returns ``(dual_algebra, dual_rep)`` with ``[a,b] = phi[phi^-1 a, phi^-1 b]`` and
    ``rho_phi(xi) = phi rho(xi) phi^-1``.  With ``check_dual`` the result is also
    compared with the contragredient representation, which must coincide when
    ``B`` is rho-invariant.
    """
    phi = form_to_iso(B)
    phi_inv = linalg.inverse(phi)
    # structure constants in the dual basis: [e^i*, e^j*] expressed via phi
    # phi([phi^-1 e_i*, phi^-1 e_j*]) in the dual basis
    sc = xeinsum("ai,bj,abc,kc->ijk", phi_inv, phi_inv, L.sc, phi, optimize=True)
    dual = LieAlgebra(L.name + "*", sc, L.field)
    rep_out = None
    if rho is not None:
        mats = np.array([phi.dot(m).dot(phi_inv) for m in rho.mats], dtype=object)
        rep_out = Representation(rho.acting, mats)
        if check_dual:
            contra = -np.transpose(rho.mats, (0, 2, 1))
            if any(a != b for a, b in zip(mats.flat, contra.flat)):
                raise AssertionError("transported representation differs from the dual representation")
    return dual, rep_out


def semidirect_sum(G: GLieAlgebra, name: str | None = None) -> LieAlgebra:
    """Lie algebra on ``g + k`` with ``[x, y] = pi(x) y`` for ``x`` in g, ``y`` in k."""
    v = glie_check(G)
    if not v:
        raise ValueError(f"not a g-Lie algebra: {v.detail} at {v.witness}")
    n, m = G.g.dim, G.k.dim
    sc = zeros((n + m, n + m, n + m), G.g.field)
    sc[:n, :n, :n] = G.g.sc
    sc[n:, n:, n:] = G.k.sc
    for i in range(n):
        for j in range(m):
            col = G.pi.mats[i][:, j]
            sc[i, n + j, n:] = col
            sc[n + j, i, n:] = -col
    return LieAlgebra(name or f"{G.g.name}|x{G.k.name}", sc, G.g.field)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    n, m = L1.dim, L2.dim
    sc = zeros((n + m, n + m, n + m), L1.field)
    sc[:n, :n, :n] = L1.sc
    sc[n:, n:, n:] = L2.sc
    return LieAlgebra(name or f"{L1.name}+{L2.name}", sc, L1.field)


def complexify(L: LieAlgebra) -> LieAlgebra:
    """``L (x) C`` as a real algebra with basis ``(e_1..e_n, i e_1..i e_n)``."""
    n = L.dim
    sc = zeros((2 * n, 2 * n, 2 * n), L.field)
    c = L.sc
    sc[:n, :n, :n] = c
    sc[:n, n:, n:] = c
    sc[n:, :n, n:] = c
    sc[n:, n:, :n] = -c
    return LieAlgebra(f"{L.name}^C", sc, L.field)


def over_gaussian(L: LieAlgebra) -> LieAlgebra:
    """The same structure constants read in Q[i]."""
    if L.field == "Q_i":
        return L
    sc = np.empty(L.sc.shape, dtype=object)
    for idx, x in np.ndenumerate(L.sc):
        sc[idx] = GaussQ(x)
    return LieAlgebra(L.name, sc, "Q_i", dict(L.meta))


def restrict_to_subspace(L: LieAlgebra, basis, name: str | None = None) -> LieAlgebra:
    """Structure constants of the subalgebra spanned by the columns of ``basis``.

    Raises ``ValueError`` when the span is not closed under the bracket.
    """
    P = np.asarray(basis, dtype=object)
    d = P.shape[1]
    sc = zeros((d, d, d), L.field)
    brs = xeinsum("ai,bj,abk->ijk", P, P, L.sc, optimize=True)
    for i in range(d):
        for j in range(i + 1, d):
            coords = linalg.solve(P, brs[i, j])
            if coords is None:
                raise ValueError(f"span is not closed under the bracket at pair {(i, j)}")
            sc[i, j] = coords
            sc[j, i] = -coords
    return LieAlgebra(name or f"sub({L.name})", sc, L.field)


def is_subalgebra(L: LieAlgebra, basis) -> Verdict:
    P = np.asarray(basis, dtype=object)
    for i in range(P.shape[1]):
        for j in range(i + 1, P.shape[1]):
            if not linalg.in_span(P, L.bracket(P[:, i], P[:, j])):
                return Verdict(False, (i, j), "bracket leaves the subspace")
    return Verdict(True)


def is_ideal(L: LieAlgebra, basis) -> Verdict:
    P = np.asarray(basis, dtype=object)
    for i in range(L.dim):
        for j in range(P.shape[1]):
            if not linalg.in_span(P, L.bracket(L.basis(i), P[:, j])):
                return Verdict(False, (i, j), "not stable under ad")
    return Verdict(True)

