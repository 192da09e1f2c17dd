"""Exact scalars: rationals and Gaussian rationals, plus string round-trips."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

import numpy as np

__all__ = [
    "GaussQ",
    "I",
    "as_scalar",
    "format_scalar",
    "parse_scalar",
    "exact_array",
    "zeros",
    "identity",
    "is_zero",
    "first_nonzero",
    "max_abs",
    "to_float",
    "xeinsum",
]


class GaussQ:
    """Element ``re + im*i`` of Q[i] with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussQ):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return GaussQ(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q[i]")
        p = self * o.conjugate()
        return GaussQ(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self):
        # exact only when one part vanishes; used for residual summaries
        if self.im == 0:
            return abs(self.re)
        if self.re == 0:
            return abs(self.im)
        return Fraction(float(self.norm()) ** 0.5)

    def __repr__(self):
        return f"GaussQ({format_scalar(self)!r})"


I = GaussQ(0, 1)


def as_scalar(x, field: str = "Q"):
    """Coerce ``x`` to an exact scalar of the requested field ("Q" or "Q_i")."""
    if isinstance(x, str):
        x = parse_scalar(x)
    if field == "Q_i":
        return x if isinstance(x, GaussQ) else GaussQ(x)
    if isinstance(x, GaussQ):
        if x.im != 0:
            raise ValueError(f"non-real scalar {format_scalar(x)} in a rational context")
        return x.re
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12) if x != int(x) else Fraction(int(x))
    return Fraction(x)


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical string: ``"p/q"`` (or ``"p"``), and ``"a+b i"`` for Q[i]."""
    if isinstance(x, GaussQ):
        if x.im == 0:
            return _fmt_q(x.re)
        im = _fmt_q(abs(x.im))
        sign = "-" if x.im < 0 else "+"
        if x.re == 0:
            return f"{'-' if x.im < 0 else ''}{im} i"
        return f"{_fmt_q(x.re)}{sign}{im} i"
    return _fmt_q(Fraction(x))


_COMPLEX = re.compile(r"^\s*([+-]?[0-9/]+)?\s*(?:([+-])\s*([0-9/]*)\s*i)?\s*$")


def parse_scalar(s: str):
    """Parse ``"p/q"`` or ``"p/q+r/s i"`` (also ``"i"``, ``"-1/2 i"``)."""
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    t = s.strip()
    if not t.endswith("i"):
        return Fraction(t)
    body = t[:-1].rstrip()
    # pure imaginary: "3/2", "-", "" before the i
    m = re.fullmatch(r"([+-]?)\s*([0-9/]*)", body)
    if m:
        mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        return GaussQ(0, -mag if m.group(1) == "-" else mag)
    m = re.fullmatch(r"([+-]?[0-9/]+)\s*([+-])\s*([0-9/]*)", body)
    if not m:
        raise ValueError(f"cannot parse scalar {s!r}")
    mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
    return GaussQ(Fraction(m.group(1)), -mag if m.group(2) == "-" else mag)


def exact_array(data, field: str = "Q") -> np.ndarray:
    """Object array of exact scalars built from nested lists/arrays."""
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = as_scalar(v, field)
    return out


def zeros(shape, field: str = "Q") -> np.ndarray:
    out = np.empty(shape, dtype=object)
    z = GaussQ(0) if field == "Q_i" else Fraction(0)
    out.fill(z)
    return out


def identity(n: int, field: str = "Q") -> np.ndarray:
    out = zeros((n, n), field)
    one = GaussQ(1) if field == "Q_i" else Fraction(1)
    for i in range(n):
        out[i, i] = one
    return out


def is_zero(arr) -> bool:
    """Exact test that every entry vanishes."""
    a = np.asarray(arr, dtype=object)
    return all(x == 0 for x in a.flat)


def first_nonzero(arr):
    """First index (row-major, i.e. lexicographic) holding a nonzero entry, or None."""
    a = np.asarray(arr, dtype=object)
    for idx, x in np.ndenumerate(a):
        if x != 0:
            return tuple(int(i) for i in idx)
    return None


def max_abs(arr) -> Fraction:
    a = np.asarray(arr, dtype=object)
    return max((abs(x) for x in a.flat), default=Fraction(0))


def to_float(arr) -> np.ndarray:
    a = np.asarray(arr, dtype=object)
    return np.array([float(x) for x in a.flat], dtype=float).reshape(a.shape)


_INT_LIMIT = 2**62


def _as_scaled_ints(arr):
    """``(ints, denominator)`` with ``arr == ints / denominator``, or None if not rational."""
    a = np.asarray(arr)
    if a.dtype.kind in "iub":
        return a.astype(np.int64), 1
    if a.dtype != object:
        return None
    den = 1
    for x in a.flat:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
        elif not isinstance(x, (int, np.integer)) or isinstance(x, bool):
            return None
    ints = np.empty(a.shape, dtype=object)
    big = 0
    for idx, x in np.ndenumerate(a):
        v = int(x * den) if isinstance(x, Fraction) else int(x) * den
        ints[idx] = v
        big = max(big, abs(v))
    if big >= _INT_LIMIT:
        return None
    return ints.astype(np.int64), den


def xeinsum(spec: str, *operands, **kwargs):
    """``np.einsum`` with an exact integer fast path for rational object arrays.

    Operands are rescaled to integers; when a crude magnitude bound rules out
    int64 overflow the contraction runs natively and the result is divided back
    into Fractions. Otherwise (floats, Gaussian rationals, large entries) this
    is plain ``np.einsum``.
    """
    kwargs.setdefault("optimize", True)
    if any(np.asarray(op).dtype == object for op in operands):
        scaled = [_as_scaled_ints(op) for op in operands]
        if all(s is not None for s in scaled):
            bound = 1
            for (ints, _), op in zip(scaled, operands):
                bound *= max(int(np.abs(ints).max()) if ints.size else 0, 1)
            lhs = spec.split("->")[0].replace(",", "")
            for ch in set(lhs):
                size = None
                for term, op in zip(spec.split("->")[0].split(","), operands):
                    if ch in term:
                        size = np.shape(op)[term.index(ch)]
                        break
                bound *= max(size or 1, 1)
            if bound < _INT_LIMIT:
                out = np.einsum(spec, *[s[0] for s in scaled], **kwargs)
                den = 1
                for _, d in scaled:
                    den *= d
                if np.ndim(out) == 0:
                    return Fraction(int(out), den)
                res = np.empty(out.shape, dtype=object)
                for idx, v in np.ndenumerate(out):
                    res[idx] = Fraction(int(v), den)
                return res
    return np.einsum(spec, *operands, **kwargs)
