"""Seeded random instances for property sweeps (tests, CLI ``--seed`` and scripts)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import catalog
from .algebra import LieAlgebra
from .operators import MassProfile, adjoint_context, coadjoint_context, rota_baxter_residual
from .scalars import identity, zeros
from .scalars import exact_array, is_zero
from .yangbaxter import invariant_symmetric_tensors, tensor_as_map

__all__ = [
    "random_fraction",
    "random_skew",
    "random_matrix",
    "cybea_instances",
    "cybea_agreement",
    "rb_candidates",
    "deliebra_instances",
    "random_family_lambdas",
    "double_aff1",
    "degenerate_type2_tensor",
    "o_operator_instances",
]

_DENS = (1, 2)


def random_fraction(rng: np.random.Generator, bound: int = 3) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.choice(_DENS)))


def random_matrix(rng, shape, bound: int = 3, density: float = 1.0):
    out = zeros(shape)
    for idx in np.ndindex(*shape):
        if rng.random() < density:
            out[idx] = random_fraction(rng, bound)
    return out


def random_skew(rng, n: int, bound: int = 3, density: float = 1.0):
    M = random_matrix(rng, (n, n), bound, density)
    return M - M.T


def cybea_instances(L: LieAlgebra, count: int, seed: int):
    """``count`` tensors ``alpha + c * omega`` with ``omega`` spanning the invariant symmetric tensors.

    Densities cycle through 1/4, 1/2 and 1 so that sparse tensors (where most
    solutions live) appear alongside dense ones.
    """
    rng = np.random.default_rng(seed)
    inv = invariant_symmetric_tensors(L)
    n = L.dim
    out = []
    for i in range(count):
        density = (0.25, 0.5, 1.0)[i % 3]
        alpha = random_skew(rng, n, 2, density)
        sym = zeros((n, n))
        for w in inv:
            sym = sym + w * random_fraction(rng, 2)
        out.append(alpha + sym)
    return out


def cybea_agreement(L: LieAlgebra, r, kappa) -> dict:
    """Both sides of the mass ``(kappa + 1)/4`` ECYBE versus extended O-operator equivalence."""
    from .scalars import is_zero
    from .yangbaxter import ecybe_residual, split_alpha_beta
    from .operators import extended_residual

    kappa = Fraction(kappa)
    alpha, beta = split_alpha_beta(r)
    lhs = is_zero(ecybe_residual(L, r, (kappa + 1) / 4))
    ctx = coadjoint_context(L, tensor_as_map(alpha), tensor_as_map(beta), MassProfile(1, kappa, 0, 0))
    rhs = is_zero(extended_residual(ctx))
    return {"ecybe": lhs, "extended": rhs, "agree": lhs == rhs}


def rb_candidates(L: LieAlgebra) -> list:
    """Shifts of the Borel projections by multiples of the identity (plus the scalars)."""
    n = L.dim
    one = identity(n)
    out = [zeros((n, n)), one, -one]
    for name in ("minus-borel", "minus-nminus"):
        P = catalog.named_operator(L, name)
        out += [P, P + one, P - one, P * 2 + one]
    return out


def deliebra_instances(seed: int, count: int = 24) -> list:
    """Contexts meeting the hypotheses of the ``r +- beta`` equivalence.

    Two kinds: ``(g, ad)`` with ``beta = id`` and ``k = g`` (operators drawn from
    the Rota-Baxter candidates and random matrices), and ``(g, ad*)`` with
    ``beta`` a multiple of an invariant symmetric map and ``k = g*`` abelian.
    """
    rng = np.random.default_rng(seed)
    out = []
    L = catalog.sl2()
    for R in rb_candidates(L):
        for lam in (0, 1, 2, 3):
            out.append(adjoint_context(L, R, identity(3), MassProfile(1, 1, lam, lam)))
    # sl3 is slow in exact arithmetic: the two Borel operators at weights 1 and 3
    L = catalog.sl3()
    cands = rb_candidates(L)
    for R in (cands[3], cands[5]):
        for lam in (1, 3):
            out.append(adjoint_context(L, R, identity(8), MassProfile(1, 1, lam, lam)))
    for name in ("sl2", "aff1", "heisenberg3"):
        L = catalog.get_algebra(name)
        inv = invariant_symmetric_tensors(L)
        n = L.dim
        for _ in range(3):
            r = random_skew(rng, n, 2, 0.5)
            beta = zeros((n, n))
            for w in inv:
                beta = beta + tensor_as_map(w) * random_fraction(rng, 2)
            out.append(coadjoint_context(L, tensor_as_map(r), beta, MassProfile(1, 1, 1, 1)))
    while len(out) < count:
        L = catalog.sl2()
        R = random_matrix(rng, (3, 3), 1, 0.4)
        out.append(adjoint_context(L, R, identity(3), MassProfile(1, 1, 1, 1)))
    return out


def random_family_lambdas(seed: int, count: int) -> list:
    """Parameter draws ``(l1, l2, l3, l4)``; half forced onto ``l2 + l4 = 0``."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        l1, l2, l3, l4 = (random_fraction(rng) for _ in range(4))
        if i % 2 == 0:
            l4 = -l2
        elif l2 + l4 == 0:
            l4 += 1
        out.append((l1, l2, l3, l4))
    return out


def double_aff1():
    """``D(aff1)`` built from ``e1 ^ e2``."""
    from .bialgebra_double import build_double

    return build_double(catalog.aff1(), catalog.named_tensor("aff1", "r-wedge"))


def degenerate_type2_tensor():
    """A type II solution on ``D(aff1)`` whose symmetric part has rank 1.

    ``Ker beta`` is 3-dimensional and the cocycle ``tau`` is nonzero, which
    makes it the smallest informative extension example we know of. It also
    solves the plain CYBE.
    """
    # alpha skew plus the rank-one invariant tensor (e2 - e^1)(x)(e2 - e^1)
    return exact_array(
        [
            [0, -1, -1, 0],
            [1, 1, -1, -1],
            [1, -1, 1, -1],
            [0, 1, 1, 0],
        ]
    )


def o_operator_instances() -> list:
    """``(label, context)`` for every O-operator in the small catalog.

    Rota-Baxter candidates on sl2 and sl3 at each weight in ``{0, 1, -1}`` they
    satisfy, and the triangular named tensors as weight-0 operators on ``g*``.
    """
    out = []
    for name in ("sl2", "sl3"):
        L = catalog.get_algebra(name)
        for i, R in enumerate(rb_candidates(L)):
            for lam in (0, 1, -1):
                if is_zero(rota_baxter_residual(L, R, lam)):
                    out.append((f"{name}-rb{i}-w{lam}", adjoint_context(L, R, masses=MassProfile(lam=lam))))
    for name, tensor in (("aff1", "r-wedge"), ("sl2", "h-wedge-e")):
        L = catalog.get_algebra(name)
        out.append((f"{name}-{tensor}", coadjoint_context(L, tensor_as_map(catalog.named_tensor(name, tensor)))))
    return out
