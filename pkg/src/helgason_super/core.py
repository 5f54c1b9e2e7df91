"""Exact Gaussian-rational scalars and gl(m|n) matrix primitives.

Everything here is exact: scalars live in Q[i] and are stored as a pair of
:class:`fractions.Fraction`.  Matrices are dense, immutable and small.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple

__all__ = [
    "GaussianRational",
    "GR",
    "ZERO",
    "ONE",
    "I",
    "SuperDims",
    "SuperMatrix",
    "DimensionMismatch",
    "NonHomogeneousError",
    "NotInvariantError",
    "bracket",
    "supertrace",
    "ad_matrix",
    "elementary",
    "format_rational",
    "parse_rational",
]


class DimensionMismatch(ValueError):
    pass


class NonHomogeneousError(ValueError):
    pass


class NotInvariantError(ValueError):
    """Raised when ``[h, b]`` leaves the span of the supplied basis."""


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """An element ``re + i*im`` of Q[i]."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
        else:
            self.re = _to_fraction(re)
            self.im = _to_fraction(im)
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(x)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        obj._hash = None
        return obj

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            if not other:
                return self
            if not self:
                return other
            return GaussianRational._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            if not other:
                return self
            return GaussianRational._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussianRational._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational._make(a * c, b)
            if not b:
                return GaussianRational._make(a * c, a * d)
            if not d:
                return GaussianRational._make(a * c, b * c)
            return GaussianRational._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return GaussianRational._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q[i]")
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            c, d = other.re, other.im
            n = c * c + d * d
            if n == 0:
                raise ZeroDivisionError("division by zero in Q[i]")
            a, b = self.re, self.im
            return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussianRational(other) / self
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (ONE / self) ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- predicates -----------------------------------------------------
    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.re) if self.im == 0 else hash((self.re, self.im))
        return self._hash

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GR({format_gaussian(self)})"

    def __str__(self):
        return format_gaussian(self)


GR = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def format_rational(x) -> str:
    """Canonical ``a/b`` rendering (integers print without a denominator)."""
    return str(Fraction(x))


def format_gaussian(z: GaussianRational) -> str:
    if z.im == 0:
        return format_rational(z.re)
    im = f"{format_rational(abs(z.im))}*i"
    if z.re == 0:
        return im if z.im > 0 else "-" + im
    sign = "+" if z.im > 0 else "-"
    return f"{format_rational(z.re)}{sign}{im}"


_Q = r"\d+(?:/\d+)?"
_IMAG_RE = re.compile(rf"^(?P<sign>[-+]?)(?P<mag>{_Q})?\*?i$")
_MIXED_RE = re.compile(rf"^(?P<re>[-+]?{_Q})(?P<sign>[-+])(?P<mag>{_Q})?\*?i$")


def parse_rational(text: str):
    """Parse ``"a/b"``, ``"a/b+c/d*i"`` or ``"c/d*i"``.

    Returns a Fraction when the imaginary part is zero, else a
    GaussianRational.
    """
    t = "".join(str(text).split())
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        pass
    m = _MIXED_RE.match(t)
    re_part = Fraction(0)
    if m:
        re_part = Fraction(m.group("re"))
    else:
        m = _IMAG_RE.match(t)
    if not m:
        raise ValueError(f"malformed rational: {text!r}")
    mag = Fraction(m.group("mag")) if m.group("mag") else Fraction(1)
    z = GaussianRational(re_part, -mag if m.group("sign") == "-" else mag)
    return z.re if z.im == 0 else z


@dataclass(frozen=True)
class SuperDims:
    even_dim: int
    odd_dim: int

    def __post_init__(self):
        if self.even_dim < 0 or self.odd_dim < 0:
            raise ValueError("superdimensions must be nonnegative")
        if self.even_dim + self.odd_dim < 1:
            raise ValueError("superdimension m + n must be at least 1")

    @property
    def total(self) -> int:
        return self.even_dim + self.odd_dim

    def index_parity(self, i: int) -> int:
        """Parity of the 0-based basis index ``i``."""
        return 0 if i < self.even_dim else 1


Entries = Tuple[Tuple[GaussianRational, ...], ...]


class SuperMatrix:
    """A square matrix over Q[i] acting on C^{m|n}.

    Entries are stored densely as a tuple of row tuples; indices are
    0-based internally, see :func:`elementary` for the 1-based constructor.
    """

    __slots__ = ("dims", "entries", "_hash")

    def __init__(self, dims: SuperDims, entries: Iterable[Iterable]):
        rows = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in entries)
        n = dims.total
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DimensionMismatch(f"expected a {n}x{n} array")
        self.dims = dims
        self.entries: Entries = rows
        self._hash = None

    @classmethod
    def _raw(cls, dims: SuperDims, rows: Entries) -> "SuperMatrix":
        obj = cls.__new__(cls)
        obj.dims = dims
        obj.entries = rows
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, dims: SuperDims) -> "SuperMatrix":
        n = dims.total
        return cls._raw(dims, tuple((ZERO,) * n for _ in range(n)))

    @classmethod
    def identity(cls, dims: SuperDims) -> "SuperMatrix":
        n = dims.total
        return cls._raw(dims, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_sparse(cls, dims: SuperDims, items: dict) -> "SuperMatrix":
        """Build from ``{(i, j): value}`` with 0-based indices."""
        n = dims.total
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), v in items.items():
            rows[i][j] = rows[i][j] + GaussianRational.coerce(v)
        return cls._raw(dims, tuple(tuple(r) for r in rows))

    @classmethod
    def diagonal(cls, dims: SuperDims, diag: Sequence) -> "SuperMatrix":
        if len(diag) != dims.total:
            raise DimensionMismatch("diagonal has the wrong length")
        return cls.from_sparse(dims, {(k, k): v for k, v in enumerate(diag)})

    @property
    def size(self) -> int:
        return self.dims.total

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def nonzero_items(self):
        for i, row in enumerate(self.entries):
            for j, v in enumerate(row):
                if v:
                    yield (i, j), v

    # -- block structure ------------------------------------------------
    def even_part(self) -> "SuperMatrix":
        m = self.dims.even_dim
        n = self.size
        return SuperMatrix._raw(self.dims, tuple(
            tuple(self.entries[i][j] if (i < m) == (j < m) else ZERO for j in range(n))
            for i in range(n)))

    def odd_part(self) -> "SuperMatrix":
        m = self.dims.even_dim
        n = self.size
        return SuperMatrix._raw(self.dims, tuple(
            tuple(self.entries[i][j] if (i < m) != (j < m) else ZERO for j in range(n))
            for i in range(n)))

    def parity(self):
        """0 or 1 for homogeneous matrices (the zero matrix counts as even),
        ``None`` otherwise."""
        m = self.dims.even_dim
        seen = set()
        for (i, j), _ in self.nonzero_items():
            seen.add(int((i < m) != (j < m)))
            if len(seen) == 2:
                return None
        return seen.pop() if seen else 0

    def is_homogeneous(self) -> bool:
        return self.parity() is not None

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "SuperMatrix"):
        if not isinstance(other, SuperMatrix):
            raise TypeError("expected a SuperMatrix")
        if other.dims != self.dims:
            raise DimensionMismatch(f"dims {self.dims} vs {other.dims}")

    def __add__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._check(other)
        return SuperMatrix._raw(self.dims, tuple(
            tuple(a + b if b else a for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._check(other)
        return SuperMatrix._raw(self.dims, tuple(
            tuple(a - b if b else a for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self):
        return SuperMatrix._raw(self.dims, tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, c) -> "SuperMatrix":
        c = GaussianRational.coerce(c)
        return SuperMatrix._raw(self.dims, tuple(tuple(c * a if a else ZERO for a in r) for r in self.entries))

    def __mul__(self, c):
        if isinstance(c, SuperMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._check(other)
        n = self.size
        brows = [[(j, v) for j, v in enumerate(row) if v] for row in other.entries]
        out = []
        for row in self.entries:
            acc = [ZERO] * n
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in brows[k]:
                    acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return SuperMatrix._raw(self.dims, tuple(out))

    def is_zero(self) -> bool:
        return not any(v for r in self.entries for v in r)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.dims == other.dims and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dims, self.entries))
        return self._hash

    def flat(self) -> Tuple[GaussianRational, ...]:
        """Coordinates in the row-major ``E_{i,j}`` basis."""
        return tuple(v for r in self.entries for v in r)

    def __repr__(self):
        items = ", ".join(f"E{i + 1},{j + 1}:{v}" for (i, j), v in self.nonzero_items())
        return f"SuperMatrix({self.dims.even_dim}|{self.dims.odd_dim}; {items or '0'})"


def elementary(dims: SuperDims, i: int, j: int) -> SuperMatrix:
    """``E_{i,j}`` with 1-based indices."""
    n = dims.total
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"E_{{{i},{j}}} outside a {n}x{n} matrix")
    return SuperMatrix.from_sparse(dims, {(i - 1, j - 1): 1})


def bracket(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """Superbracket ``xy - (-1)^{|x||y|} yx`` of homogeneous matrices."""
    x._check(y)
    px, py = x.parity(), y.parity()
    if px is None or py is None:
        raise NonHomogeneousError("bracket is only defined for homogeneous arguments")
    xy, yx = x @ y, y @ x
    return xy + yx if (px and py) else xy - yx


def supertrace(x: SuperMatrix) -> GaussianRational:
    m = x.dims.even_dim
    total = ZERO
    for k in range(x.size):
        total = total + x.entries[k][k] if k < m else total - x.entries[k][k]
    return total


def ad_matrix(h: SuperMatrix, basis: Sequence[SuperMatrix] = None):
    """Matrix of ``x -> [h, x]`` in ``basis`` (columns are images).

    With ``basis=None`` the standard row-major ``E_{i,j}`` basis is used.
    """
    if h.parity() != 0:
        raise NonHomogeneousError("ad_matrix expects an even element")
    from .linalg import express_in_basis

    n = h.size
    if basis is None:
        # [h, E_ij] = sum_k h_ki E_kj - sum_k h_jk E_ik for even h
        out = [[ZERO] * (n * n) for _ in range(n * n)]
        for (k, i), v in h.nonzero_items():
            for j in range(n):
                out[k * n + j][i * n + j] = out[k * n + j][i * n + j] + v
        for (j, k), v in h.nonzero_items():
            for i in range(n):
                out[i * n + k][i * n + j] = out[i * n + k][i * n + j] - v
        return out
    basis = list(basis)
    for b in basis:
        h._check(b)
    images = [bracket(h, b).flat() for b in basis]
    coords = express_in_basis([b.flat() for b in basis], images)
    if coords is None:
        raise NotInvariantError("[h, basis] is not expressible in the basis")
    k = len(basis)
    return [[coords[c][r] for c in range(k)] for r in range(k)]
