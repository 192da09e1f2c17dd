"""Built-in algebras, tensors and operators used throughout the tests and CLI."""

from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import LieAlgebra, abelian, lie_from_brackets
from .scalars import exact_array, zeros

__all__ = [
    "aff1",
    "heisenberg3",
    "sl2",
    "sl3",
    "broken_sl2",
    "abelian",
    "get_algebra",
    "ALGEBRA_NAMES",
    "named_tensor",
    "named_operator",
    "TENSOR_NAMES",
    "OPERATOR_NAMES",
    "borel_split",
]


def aff1() -> LieAlgebra:
    """Two-dimensional nonabelian algebra, ``[e1, e2] = e2``."""
    return lie_from_brackets("aff1", 2, {(0, 1): {1: 1}})


def heisenberg3() -> LieAlgebra:
    return lie_from_brackets("heisenberg3", 3, {(0, 1): {2: 1}})


def broken_sl2() -> LieAlgebra:
    """sl2 with ``[E, F] = E``: antisymmetric but violating Jacobi."""
    return lie_from_brackets("broken-sl2", 3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {1: 1}})


def _from_matrices(name, mats, meta):
    """Structure constants of the span of ``mats`` under the matrix commutator."""
    n = len(mats)
    size = mats[0].shape[0]
    basis = np.array([m.reshape(size * size) for m in mats], dtype=object).T
    sc = zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            comm = mats[i].dot(mats[j]) - mats[j].dot(mats[i])
            coords = linalg.solve(basis, comm.reshape(size * size))
            if coords is None:
                raise ValueError("matrices do not span a Lie algebra")
            sc[i, j] = coords
    return LieAlgebra(name, sc, "Q", meta)


def _unit(size, i, j):
    m = zeros((size, size))
    m[i, j] = Fraction(1)
    return m


def _sl_chevalley(n, name):
    """Chevalley basis of sl(n): ``H_1..H_{n-1}``, positive roots, negative roots."""
    hs = [_unit(n, i, i) - _unit(n, i + 1, i + 1) for i in range(n - 1)]
    pos = [(i, j) for d in range(1, n) for i in range(n - d) for j in [i + d]]
    mats = hs + [_unit(n, i, j) for i, j in pos] + [_unit(n, j, i) for i, j in pos]
    rank_ = n - 1
    roots = {}
    for idx, (i, j) in enumerate(pos):
        m = tuple(1 if i <= a < j else 0 for a in range(rank_))
        roots[m] = rank_ + idx
        roots[tuple(-x for x in m)] = rank_ + len(pos) + idx
    cartan = [[2 if a == b else (-1 if abs(a - b) == 1 else 0) for b in range(rank_)] for a in range(rank_)]
    meta = {
        "cartan": list(range(rank_)),
        "roots": roots,
        "cartan_matrix": cartan,
        "simple": [roots[tuple(1 if a == s else 0 for a in range(rank_))] for s in range(rank_)],
    }
    return _from_matrices(name, mats, meta)


def sl2() -> LieAlgebra:
    """Basis ``(H, E, F)`` with ``[H,E]=2E, [H,F]=-2F, [E,F]=H``."""
    return _sl_chevalley(2, "sl2")


def sl3() -> LieAlgebra:
    """Chevalley basis ``(H1, H2, X_a1, X_a2, X_a1+a2, X_-a1, X_-a2, X_-(a1+a2))``."""
    return _sl_chevalley(3, "sl3")


_BUILDERS = {
    "aff1": aff1,
    "heisenberg3": heisenberg3,
    "sl2": sl2,
    "sl3": sl3,
    "broken-sl2": broken_sl2,
}

ALGEBRA_NAMES = ("abelian-n", "aff1", "heisenberg3", "sl2", "sl3", "broken-sl2")


def get_algebra(name: str) -> LieAlgebra:
    m = re.fullmatch(r"abelian-(\d+)", name)
    if m:
        return abelian(int(m.group(1)))
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown algebra {name!r}") from None


def borel_split(L: LieAlgebra):
    """Bases (as column matrices) of ``b+`` and ``n-`` for a catalog algebra with root data."""
    roots = L.meta.get("roots")
    if roots is None:
        raise ValueError(f"{L.name} carries no root data")
    pos = sorted(i for r, i in roots.items() if sum(r) > 0)
    neg = sorted(i for r, i in roots.items() if sum(r) < 0)
    cols_b = list(L.meta["cartan"]) + pos
    eye = np.eye(L.dim, dtype=int)
    return exact_array(eye[:, cols_b]), exact_array(eye[:, neg])


TENSOR_NAMES = {"aff1": ("r-wedge",), "sl2": ("casimir", "h-wedge-e")}


def named_tensor(algebra: str, name: str):
    """Small library of tensors referenced by name on the command line."""
    if algebra == "aff1" and name == "r-wedge":
        return exact_array([[0, 1], [-1, 0]])
    if algebra == "sl2" and name == "casimir":
        return exact_array([["1/8", 0, 0], [0, 0, "1/4"], [0, "1/4", 0]])
    if algebra == "sl2" and name == "h-wedge-e":
        return exact_array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    raise KeyError(f"unknown tensor {name!r} on {algebra!r}")


OPERATOR_NAMES = ("minus-borel", "minus-nminus", "identity", "zero")


def named_operator(L: LieAlgebra, name: str):
    n = L.dim
    if name == "identity":
        return exact_array(np.eye(n, dtype=int))
    if name == "zero":
        return zeros((n, n))
    b, nm = borel_split(L)
    from .operators import projection_onto

    if name == "minus-borel":
        return -projection_onto(b, nm)
    if name == "minus-nminus":
        return -projection_onto(nm, b)
    raise KeyError(f"unknown operator {name!r}")
