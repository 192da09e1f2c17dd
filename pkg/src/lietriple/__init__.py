"""Exact Lie-algebraic toolkit: Yang-Baxter type equations, extended O-operators,
Drinfeld doubles, PostLie structures and r-matrix Lax dynamics."""

from .algebra import GLieAlgebra, LieAlgebra, Representation, Verdict
from .catalog import get_algebra, named_operator, named_tensor
from .errors import InputError, InternalConsistencyError, PreconditionError

__all__ = [
    "LieAlgebra",
    "GLieAlgebra",
    "Representation",
    "Verdict",
    "get_algebra",
    "named_tensor",
    "named_operator",
    "InputError",
    "PreconditionError",
    "InternalConsistencyError",
]
__version__ = "0.1.0"
