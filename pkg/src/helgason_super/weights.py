"""Weights in h* (delta/epsilon coordinates) and in a* (Helgason coordinates).

The form on h* has signature ``<d_i, d_j> = delta_ij``, ``<e_i, e_j> = -delta_ij``.
An a*-weight ``(ld, le)`` stands for

    sum_k ld_k (d_k - d_{p+k}) + sum_l le_l (e_l - e_{r+l}),

so ``i*aB_k`` has ``ld_k = -1/2`` and ``i*aF_l`` has ``le_l = -1/2``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Tuple

from .core import GaussianRational, I, ZERO, format_gaussian, format_rational
from .pair import PairParams

__all__ = [
    "HWeight",
    "AStarWeight",
    "Scalar",
    "exact",
    "h_values",
    "hweight_from_values",
    "astar_from_a_values",
    "restricted_name",
]

Scalar = object  # Fraction or GaussianRational


def exact(x):
    """Normalize a scalar: real Gaussian rationals collapse to Fraction."""
    if type(x) is Fraction:
        return x
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    if isinstance(x, bool):
        raise TypeError("bool is not a weight coefficient")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        from .core import parse_rational
        return parse_rational(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def _add(a, b):
    return exact(a + b)


class _Vec:
    __slots__ = ()

    def _coeffs(self):
        raise NotImplementedError

    def __hash__(self):
        return hash((type(self).__name__,) + self._coeffs())


class HWeight(_Vec):
    """``sum delta[i] d_{i+1} + sum eps[j] e_{j+1}``."""

    __slots__ = ("delta", "eps")

    def __init__(self, delta: Iterable = (), eps: Iterable = ()):
        object.__setattr__(self, "delta", tuple(exact(x) for x in delta))
        object.__setattr__(self, "eps", tuple(exact(x) for x in eps))

    def __setattr__(self, *_):
        raise AttributeError("HWeight is immutable")

    @classmethod
    def zero(cls, n_delta: int, n_eps: int) -> "HWeight":
        return cls((0,) * n_delta, (0,) * n_eps)

    @classmethod
    def basis(cls, n_delta: int, n_eps: int, kind: str, index: int) -> "HWeight":
        """``d_index`` (kind ``"d"``) or ``e_index`` (kind ``"e"``), 1-based."""
        d, e = [0] * n_delta, [0] * n_eps
        target = d if kind == "d" else e
        if not 1 <= index <= len(target):
            raise IndexError(f"{kind}{index} out of range")
        target[index - 1] = 1
        return cls(d, e)

    def _coeffs(self):
        return self.delta + self.eps

    def _check(self, other):
        if not isinstance(other, HWeight):
            raise TypeError("expected an HWeight")
        if len(self.delta) != len(other.delta) or len(self.eps) != len(other.eps):
            raise ValueError("HWeight shapes differ")

    def __add__(self, other):
        self._check(other)
        return HWeight(map(_add, self.delta, other.delta), map(_add, self.eps, other.eps))

    def __sub__(self, other):
        self._check(other)
        return HWeight((exact(a - b) for a, b in zip(self.delta, other.delta)),
                       (exact(a - b) for a, b in zip(self.eps, other.eps)))

    def __neg__(self):
        return HWeight((-a for a in self.delta), (-a for a in self.eps))

    def __mul__(self, c):
        c = exact(c)
        return HWeight((exact(c * a) for a in self.delta), (exact(c * a) for a in self.eps))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HWeight):
            return NotImplemented
        return self.delta == other.delta and self.eps == other.eps

    __hash__ = _Vec.__hash__

    def pair(self, other: "HWeight"):
        """Signature form; bilinear (no conjugation)."""
        self._check(other)
        total = sum((a * b for a, b in zip(self.delta, other.delta)), Fraction(0))
        total = total - sum((a * b for a, b in zip(self.eps, other.eps)), Fraction(0))
        return exact(total)

    def norm(self):
        return self.pair(self)

    def is_zero(self) -> bool:
        return not any(self._coeffs())

    def __repr__(self):
        return f"HWeight({self})"

    def __str__(self):
        terms = []
        for kind, coeffs in (("d", self.delta), ("e", self.eps)):
            for i, c in enumerate(coeffs, start=1):
                if c:
                    terms.append((c, f"{kind}{i}"))
        return _render_terms(terms) or "0"


class AStarWeight(_Vec):
    """``(ldelta_1..q ; leps_1..s)`` in Helgason coordinates."""

    __slots__ = ("ldelta", "leps")

    def __init__(self, ldelta: Iterable = (), leps: Iterable = ()):
        object.__setattr__(self, "ldelta", tuple(exact(x) for x in ldelta))
        object.__setattr__(self, "leps", tuple(exact(x) for x in leps))

    def __setattr__(self, *_):
        raise AttributeError("AStarWeight is immutable")

    @classmethod
    def zero(cls, q: int, s: int) -> "AStarWeight":
        return cls((0,) * q, (0,) * s)

    @classmethod
    def i_aB(cls, q: int, s: int, k: int, coeff=1) -> "AStarWeight":
        """``coeff * i*aB_k``."""
        d = [0] * q
        d[k - 1] = -Fraction(coeff) / 2
        return cls(d, (0,) * s)

    @classmethod
    def i_aF(cls, q: int, s: int, l: int, coeff=1) -> "AStarWeight":
        e = [0] * s
        e[l - 1] = -Fraction(coeff) / 2
        return cls((0,) * q, e)

    @property
    def shape(self):
        return (len(self.ldelta), len(self.leps))

    def _coeffs(self):
        return self.ldelta + self.leps

    def _check(self, other):
        if not isinstance(other, AStarWeight):
            raise TypeError("expected an AStarWeight")
        if self.shape != other.shape:
            raise ValueError(f"AStarWeight shapes differ: {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check(other)
        return AStarWeight(map(_add, self.ldelta, other.ldelta), map(_add, self.leps, other.leps))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AStarWeight((-a for a in self.ldelta), (-a for a in self.leps))

    def __mul__(self, c):
        c = exact(c)
        return AStarWeight((exact(c * a) for a in self.ldelta), (exact(c * a) for a in self.leps))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AStarWeight):
            return NotImplemented
        return self.ldelta == other.ldelta and self.leps == other.leps

    __hash__ = _Vec.__hash__

    def pair(self, other: "AStarWeight"):
        """``2 sum ld*md - 2 sum le*me``."""
        self._check(other)
        t = Fraction(0)
        for a, b in zip(self.ldelta, other.ldelta):
            if a and b:
                t += a * b
        for a, b in zip(self.leps, other.leps):
            if a and b:
                t -= a * b
        return exact(2 * t)

    def norm(self):
        return self.pair(self)

    def is_zero(self) -> bool:
        return not any(self._coeffs())

    def is_real(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._coeffs())

    def embed(self, params: PairParams) -> HWeight:
        """The h*-vector; c-type coordinates are zero."""
        p, q, r, s = params.as_tuple()
        if self.shape != (q, s):
            raise ValueError(f"weight has shape {self.shape}, params need ({q},{s})")
        d = [Fraction(0)] * (p + q)
        e = [Fraction(0)] * (r + s)
        for k, c in enumerate(self.ldelta):
            d[k] = c
            d[p + k] = -c
        for l, c in enumerate(self.leps):
            e[l] = c
            e[r + l] = -c
        return HWeight(d, e)

    def a_coordinates(self):
        """Coefficients of ``i*aB_k`` and ``i*aF_l``."""
        return tuple(exact(-2 * c) for c in self.ldelta), tuple(exact(-2 * c) for c in self.leps)

    def __repr__(self):
        return f"AStarWeight({self.coords_str()})"

    def coords_str(self) -> str:
        fmt = lambda c: format_gaussian(c) if isinstance(c, GaussianRational) else format_rational(c)
        return "(" + ", ".join(fmt(c) for c in self.ldelta) + "; " + ", ".join(fmt(c) for c in self.leps) + ")"

    def __str__(self):
        return restricted_name(self)


def _fmt(c) -> str:
    return format_gaussian(c) if isinstance(c, GaussianRational) else format_rational(c)


def _render_terms(terms) -> str:
    out = ""
    for c, name in terms:
        if isinstance(c, GaussianRational):
            piece = f"({format_gaussian(c)})*{name}"
            out += ("+" if out else "") + piece
            continue
        if c == 1:
            piece = name
        elif c == -1:
            piece = "-" + name
        else:
            piece = f"{format_rational(c)}*{name}"
        if out and not piece.startswith("-"):
            out += "+"
        out += piece
    return out


def restricted_name(w: AStarWeight) -> str:
    """Human-readable name such as ``2i*aB1`` or ``i*(aB1-aF1)``."""
    cb, cf = w.a_coordinates()
    terms = [(c, f"aB{k}") for k, c in enumerate(cb, 1) if c]
    terms += [(c, f"aF{k}") for k, c in enumerate(cf, 1) if c]
    if not terms:
        return "0"
    if len(terms) == 1:
        c, name = terms[0]
        if isinstance(c, GaussianRational):
            return f"({format_gaussian(c)})i*{name}"
        lead = {1: "", -1: "-"}.get(c, format_rational(c))
        return f"{lead}i*{name}"
    return f"i*({_render_terms(terms)})"


# ---------------------------------------------------------------------------
# conversions between h* coordinates and values on the h basis


def h_values(w: HWeight, params: PairParams) -> Tuple:
    """Values of ``w`` on the h basis (order bB, cB, bF, cF, aB, aF)."""
    p, q, r, s = params.as_tuple()
    if len(w.delta) != p + q or len(w.eps) != r + s:
        raise ValueError("HWeight shape does not match params")
    d, e = w.delta, w.eps
    vals = []
    vals += [exact(d[k] + d[p + k]) for k in range(q)]
    vals += [d[q + j] for j in range(p - q)]
    vals += [exact(e[k] + e[r + k]) for k in range(s)]
    vals += [e[s + j] for j in range(r - s)]
    # d_k(aB_k) = -i, d_{p+k}(aB_k) = +i
    vals += [exact(I * (d[p + k] - d[k])) for k in range(q)]
    vals += [exact(I * (e[r + k] - e[k])) for k in range(s)]
    return tuple(vals)


def hweight_from_values(values, params: PairParams) -> HWeight:
    """Inverse of :func:`h_values`."""
    p, q, r, s = params.as_tuple()
    values = [GaussianRational.coerce(v) if not isinstance(v, GaussianRational) else v for v in values]
    if len(values) != p + q + r + s:
        raise ValueError("wrong number of values")
    it = iter(values)
    vbB = [next(it) for _ in range(q)]
    vcB = [next(it) for _ in range(p - q)]
    vbF = [next(it) for _ in range(s)]
    vcF = [next(it) for _ in range(r - s)]
    vaB = [next(it) for _ in range(q)]
    vaF = [next(it) for _ in range(s)]
    d = [ZERO] * (p + q)
    e = [ZERO] * (r + s)
    for k in range(q):
        d[k] = (vbB[k] + I * vaB[k]) / 2
        d[p + k] = (vbB[k] - I * vaB[k]) / 2
    for j in range(p - q):
        d[q + j] = vcB[j]
    for k in range(s):
        e[k] = (vbF[k] + I * vaF[k]) / 2
        e[r + k] = (vbF[k] - I * vaF[k]) / 2
    for j in range(r - s):
        e[s + j] = vcF[j]
    return HWeight(d, e)


def astar_from_a_values(values, params: PairParams) -> AStarWeight:
    """a*-weight from its values on the a basis (``w(aX_k) = -2i * l_k``)."""
    q, s = params.q, params.s
    if len(values) != q + s:
        raise ValueError("wrong number of a-values")
    coeffs = [exact(GaussianRational.coerce(v) * I / 2) for v in values]
    return AStarWeight(coeffs[:q], coeffs[q:])
