"""The symmetric superpair (gl(p+q|r+s), theta) in matrix form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from .core import SuperDims, SuperMatrix, DimensionMismatch

__all__ = [
    "PairParams",
    "PairData",
    "InvalidPairParams",
    "build_pair",
    "theta_apply",
    "kp_split",
    "grid_pairs",
]


HALF = Fraction(1, 2)


class InvalidPairParams(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PairParams:
    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        for name in "pqrs":
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InvalidPairParams(f"{name} must be a nonnegative integer, got {v!r}")
        p, q, r, s = self.p, self.q, self.r, self.s
        if p + q + r + s < 1:
            raise InvalidPairParams("p + q + r + s >= 1 is violated")
        if (p - q) * (r - s) < 0:
            raise InvalidPairParams(
                f"(p-q)(r-s) >= 0 is violated for ({p},{q},{r},{s}); the pair is not of even type")
        if p < q:
            raise InvalidPairParams(
                f"p >= q is violated for ({p},{q},{r},{s}); relabel p<->q and r<->s, "
                f"i.e. use ({q},{p},{s},{r})")
        if r < s:
            raise InvalidPairParams(
                f"r >= s is violated for ({p},{q},{r},{s}); relabel p<->q and r<->s, "
                f"i.e. use ({q},{p},{s},{r})")

    @property
    def n(self) -> int:
        return self.p + self.q + self.r + self.s

    @property
    def dims(self) -> SuperDims:
        return SuperDims(self.p + self.q, self.r + self.s)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.p, self.q, self.r, self.s)

    def __str__(self):
        return f"({self.p},{self.q}|{self.r},{self.s})"


@dataclass(frozen=True)
class PairData:
    params: PairParams
    sigma: SuperMatrix
    h_basis: Tuple[SuperMatrix, ...]
    h_labels: Tuple[str, ...]
    a_basis: Tuple[SuperMatrix, ...]

    @property
    def dims(self) -> SuperDims:
        return self.params.dims

    @property
    def a_labels(self) -> Tuple[str, ...]:
        return self.h_labels[len(self.h_basis) - len(self.a_basis):]


def _h_elements(params: PairParams):
    """Labelled h basis in the fixed order bB, cB, bF, cF, aB, aF (0-based
    matrix indices)."""
    p, q, r, s = params.as_tuple()
    P = p + q
    dims = params.dims
    out = []
    for k in range(q):
        out.append((f"bB{k + 1}", {(k, k): 1, (p + k, p + k): 1}))
    for j in range(p - q):
        out.append((f"cB{j + 1}", {(q + j, q + j): 1}))
    for k in range(s):
        out.append((f"bF{k + 1}", {(P + k, P + k): 1, (P + r + k, P + r + k): 1}))
    for j in range(r - s):
        out.append((f"cF{j + 1}", {(P + s + j, P + s + j): 1}))
    for k in range(q):
        out.append((f"aB{k + 1}", {(k, p + k): 1, (p + k, k): -1}))
    for k in range(s):
        out.append((f"aF{k + 1}", {(P + k, P + r + k): 1, (P + r + k, P + k): -1}))
    return [(lab, SuperMatrix.from_sparse(dims, items)) for lab, items in out]


@lru_cache(maxsize=None)
def build_pair(params: PairParams) -> PairData:
    """Involution, Cartan subspace a and Cartan subalgebra h for ``params``.

    ``a`` is spanned by ``E_{k,p+k} - E_{p+k,k}`` and the fermionic analogue;
    these are the complexified generators, so root values on them carry i.
    """
    p, q, r, s = params.as_tuple()
    diag = [1] * p + [-1] * q + [1] * r + [-1] * s
    sigma = SuperMatrix.diagonal(params.dims, diag)
    elems = _h_elements(params)
    labels = tuple(lab for lab, _ in elems)
    h_basis = tuple(m for _, m in elems)
    a_basis = h_basis[len(h_basis) - (q + s):]
    return PairData(params, sigma, h_basis, labels, a_basis)


def theta_apply(pair: PairData, x: SuperMatrix) -> SuperMatrix:
    if x.dims != pair.dims:
        raise DimensionMismatch(f"dims {x.dims} vs {pair.dims}")
    # sigma is diagonal with entries +-1 and is its own inverse
    d = [pair.sigma.entries[i][i] for i in range(x.size)]
    return SuperMatrix._raw(x.dims, tuple(
        tuple(v if d[i] == d[j] else -v for j, v in enumerate(row)) for i, row in enumerate(x.entries)))


def kp_split(pair: PairData, x: SuperMatrix):
    tx = theta_apply(pair, x)
    return (x + tx).scale(HALF), (x - tx).scale(HALF)


def grid_pairs(max_total: int = 6):
    """All valid normalized parameter tuples with ``1 <= p+q+r+s <= max_total``."""
    out = []
    for total in range(1, max_total + 1):
        for p in range(total + 1):
            for q in range(p + 1):
                for r in range(total - p - q + 1):
                    s = total - p - q - r
                    if 0 <= s <= r:
                        out.append(PairParams(p, q, r, s))
    return out
