"""Exact linear algebra over Q[i].

Vectors are tuples of :class:`GaussianRational`; matrices are lists of rows.
Eigenvalues are proposed numerically and then certified by exact nullspace
computations, so every returned decomposition is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core import ONE, ZERO, GaussianRational

Vector = Tuple[GaussianRational, ...]

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "express_in_basis",
    "span_contains",
    "same_span",
    "mat_vec",
    "mat_mul",
    "joint_eigenspaces",
    "EigenCertificationError",
    "minimal_polynomial",
    "is_squarefree",
]


class EigenCertificationError(ArithmeticError):
    """Numerically proposed eigenvalues failed exact certification."""


def rref(rows: Sequence[Sequence[GaussianRational]]):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(matrix: Sequence[Sequence[GaussianRational]], ncols: Optional[int] = None) -> List[Vector]:
    """Basis of ``{v : matrix v = 0}``."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    red, pivots = rref(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def express_in_basis(basis: Sequence[Vector], targets: Sequence[Vector]):
    """Coordinates of each target in ``basis`` or ``None`` if some target
    is outside the span.  ``basis`` must be linearly independent."""
    k = len(basis)
    if k == 0:
        return [] if all(not any(t) for t in targets) else None
    n = len(basis[0])
    # augmented system: columns are basis vectors, then the targets
    aug = [[basis[c][r] for c in range(k)] + [t[r] for t in targets] for r in range(n)]
    red, pivots = rref(aug)
    if any(pc >= k for pc in pivots):
        return None
    if len(pivots) != k:
        raise ValueError("basis is linearly dependent")
    out = []
    for t_idx in range(len(targets)):
        coords = [ZERO] * k
        for row, pc in zip(red, pivots):
            coords[pc] = row[k + t_idx]
        out.append(coords)
    return out


def span_contains(basis: Sequence[Vector], v: Vector) -> bool:
    if not basis:
        return not any(v)
    return rank(list(basis) + [v]) == rank(basis)


def same_span(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    ra = rank(a) if a else 0
    rb = rank(b) if b else 0
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(list(a) + list(b)) == ra


def mat_vec(m, v):
    return tuple(sum((a * x for a, x in zip(row, v) if a and x), ZERO) for row in m)


def mat_mul(a, b):
    n, k = len(a), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(len(b)) if a[i][t] and b[t][j]), ZERO)
             for j in range(k)] for i in range(n)]


# ---------------------------------------------------------------------------
# eigen-decomposition

def _rationalize(x: float, max_den: int) -> Fraction:
    return Fraction(x).limit_denominator(max_den)


def _candidate_eigenvalues(m, max_den: int = 10_000) -> List[GaussianRational]:
    arr = np.array([[complex(x) for x in row] for row in m], dtype=complex)
    seen = []
    for z in np.linalg.eigvals(arr):
        g = GaussianRational(_rationalize(z.real, max_den), _rationalize(z.imag, max_den))
        if g not in seen:
            seen.append(g)
    return seen


def _blocks(ops, n: int) -> List[List[int]]:
    """Connected components of the union sparsity graph of ``ops``."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in ops:
        for i, row in enumerate(m):
            for j, v in enumerate(row):
                if v and i != j:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[ri] = rj
    groups: Dict[int, List[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _split(op_sub, space_dim):
    """Exact eigenspaces of a small square matrix (list of rows)."""
    if space_dim == 1:
        return [(op_sub[0][0], [(ONE,)])]
    out = []
    total = 0
    for lam in _candidate_eigenvalues(op_sub):
        shifted = [[(x - lam) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(op_sub)]
        ns = nullspace(shifted, space_dim)
        if ns:
            out.append((lam, ns))
            total += len(ns)
    if total != space_dim:
        raise EigenCertificationError("operator is not diagonalizable over Q[i] or eigenvalues are not Gaussian rationals")
    return out


def joint_eigenspaces(ops: Sequence[Sequence[Sequence[GaussianRational]]], n: int):
    """Simultaneous eigenspaces of pairwise commuting diagonalizable ``ops``.

    Returns ``{eigenvalue_tuple: [basis vectors of length n]}``.  Raises
    :class:`EigenCertificationError` if the operators are not jointly
    diagonalizable over Q[i].
    """
    result: Dict[Tuple[GaussianRational, ...], List[Vector]] = {}
    for block in _blocks(ops, n):
        # each piece: (partial eigenvalue tuple, basis of subspace in block coords)
        bsize = len(block)
        pieces = [((), [tuple(ONE if i == j else ZERO for j in range(bsize)) for i in range(bsize)])]
        for m in ops:
            local = [[m[i][j] for j in block] for i in block]
            new = []
            for vals, basis in pieces:
                images = [mat_vec(local, v) for v in basis]
                coords = express_in_basis(basis, images)
                if coords is None:
                    raise EigenCertificationError("operators do not commute")
                k = len(basis)
                restricted = [[coords[c][r] for c in range(k)] for r in range(k)]
                for lam, sub in _split(restricted, k):
                    vecs = [tuple(sum((s[c] * basis[c][t] for c in range(k) if s[c]), ZERO)
                                  for t in range(bsize)) for s in sub]
                    new.append((vals + (lam,), vecs))
            pieces = new
        for vals, basis in pieces:
            full = []
            for v in basis:
                w = [ZERO] * n
                for loc, g in enumerate(block):
                    w[g] = v[loc]
                full.append(tuple(w))
            result.setdefault(vals, []).extend(full)
    return result


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, lowest degree first)

def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] = a[i + shift] - f * c
        a = _trim(a)
    return _trim(q), a


def _poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _derivative(p):
    return _trim([c * k for k, c in enumerate(p)][1:])


def minimal_polynomial(m) -> List[GaussianRational]:
    """Monic minimal polynomial of a square matrix, lowest degree first."""
    n = len(m)
    ident = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    powers = [ident]
    while True:
        flat = [tuple(x for row in p for x in row) for p in powers]
        coords = express_in_basis(flat[:-1], [flat[-1]]) if len(flat) > 1 else None
        if len(flat) > 1 and coords is not None:
            c = coords[0]
            return [-x for x in c] + [ONE]
        if len(powers) > n + 1:
            raise ArithmeticError("minimal polynomial degree exceeded matrix size")
        powers.append(mat_mul(powers[-1], m))


def is_squarefree(poly) -> bool:
    g = _poly_gcd(poly, _derivative(poly))
    return len(g) <= 1
