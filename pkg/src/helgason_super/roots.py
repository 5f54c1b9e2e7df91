"""Full roots, restricted roots, positive systems and Weyl vectors.

Root vectors are written as ``X = u w^T`` where ``u`` is a joint eigenvector
of h acting on columns and ``w^T`` one acting on rows.  For the boson index
pair ``(k, p+k)``:

* column ``e_k - i e_{p+k}`` has eigenvalue ``d_k`` and ``e_k + i e_{p+k}``
  has eigenvalue ``d_{p+k}``;
* row ``e_k + i e_{p+k}`` has eigenvalue ``d_k`` and ``e_k - i e_{p+k}`` has
  eigenvalue ``d_{p+k}``.

The fermion indices behave the same way.  Restricted-root multiplicities are
taken from an independent diagonalization of ad(a), never from the tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .core import GaussianRational, I, ONE, ZERO, SuperMatrix, ad_matrix, bracket
from .linalg import joint_eigenspaces, same_span
from .pair import PairData, PairParams, build_pair
from .weights import AStarWeight, HWeight, astar_from_a_values, exact, h_values, hweight_from_values, restricted_name

__all__ = [
    "FullRootDatum",
    "RestrictedRootDatum",
    "OracleReport",
    "NotSimpleError",
    "symbols",
    "symbol_weight",
    "full_root_table",
    "oracle_verify_roots",
    "restrict_weight",
    "restricted_root_data",
    "positive_candidates",
    "positive_restricted_system",
    "weyl_vector",
    "weyl_vector_supertrace",
    "flip_positive_system",
    "simple_roots",
    "is_simple",
    "rho_alpha",
    "positivity_axioms",
    "reachable_positive_systems",
    "RhoFlipRecord",
    "rho_flip_records",
]


class NotSimpleError(ValueError):
    pass


Symbol = Tuple[str, int]  # ("d", i) or ("e", j), 1-based


def symbols(params: PairParams) -> List[Symbol]:
    return [("d", i) for i in range(1, params.p + params.q + 1)] + \
           [("e", j) for j in range(1, params.r + params.s + 1)]


def symbol_weight(params: PairParams, sym: Symbol) -> HWeight:
    return HWeight.basis(params.p + params.q, params.r + params.s, sym[0], sym[1])


def _symbol_type(params: PairParams, sym: Symbol) -> Tuple[str, int]:
    """('m' | 'c' | 'p', table index) for the b - i a, c, b + i a functionals."""
    kind, idx = sym
    lo, hi = (params.q, params.p) if kind == "d" else (params.s, params.r)
    if idx <= lo:
        return "m", idx
    if idx <= hi:
        return "c", idx
    return "p", idx - hi


def _offset(params: PairParams, kind: str) -> Tuple[int, int]:
    """(0-based start of the block, size of the b+ia shift)."""
    if kind == "d":
        return 0, params.p
    return params.p + params.q, params.r


def _column(params: PairParams, sym: Symbol) -> Dict[int, GaussianRational]:
    t, k = _symbol_type(params, sym)
    start, shift = _offset(params, sym[0])
    if t == "c":
        return {start + sym[1] - 1: ONE}
    base = start + k - 1
    return {base: ONE, base + shift: (-I if t == "m" else I)}


def _row(params: PairParams, sym: Symbol) -> Dict[int, GaussianRational]:
    t, k = _symbol_type(params, sym)
    start, shift = _offset(params, sym[0])
    if t == "c":
        return {start + sym[1] - 1: ONE}
    base = start + k - 1
    return {base: ONE, base + shift: (I if t == "m" else -I)}


def _table_tag(params: PairParams, a: Symbol, b: Symbol) -> str:
    ta, ia = _symbol_type(params, a)
    tb, ib = _symbol_type(params, b)
    block = ("B" if a[0] == "d" else "F") + ("B" if b[0] == "d" else "F")
    bt = {"m", "p"}
    if block in ("BB", "FF"):
        if ta == "c" and tb in bt:
            row, sign = 1, "+" if tb == "m" else "-"
        elif ta in bt and tb == "c":
            row, sign = 2, "+" if ta == "p" else "-"
        elif ta == tb and ta in bt:
            row, sign = 3, "+" if ta == "p" else "-"
        elif ta in bt and tb in bt:
            row, sign = 4, "+" if ta == "p" else "-"
        else:
            row, sign = 5, ""
    else:
        if ta == tb and ta in bt:
            row, sign = 1, "+" if ta == "p" else "-"
        elif ta in bt and tb in bt:
            row, sign = 2, "+" if ta == "p" else "-"
        elif ta in bt and tb == "c":
            row, sign = 3, "+" if ta == "p" else "-"
        elif ta == "c" and tb in bt:
            row, sign = 4, "+" if tb == "m" else "-"
        else:
            row, sign = 5, ""
    return f"{block}{row}{sign}(i={ia},j={ib})"


@dataclass(frozen=True)
class FullRootDatum:
    root: HWeight
    parity: int
    root_vector: SuperMatrix
    table_tag: str
    symbols: Tuple[Symbol, Symbol]

    @property
    def name(self) -> str:
        (ka, ia), (kb, ib) = self.symbols
        return f"{ka}{ia}-{kb}{ib}"


@lru_cache(maxsize=None)
def _full_root_table(params: PairParams) -> Tuple[FullRootDatum, ...]:
    pair = build_pair(params)
    dims = params.dims
    syms = symbols(params)
    hv_cache = {}
    out = []
    for a in syms:
        for b in syms:
            if a == b:
                continue
            col, row = _column(params, a), _row(params, b)
            vec = SuperMatrix.from_sparse(dims, {(i, j): u * w for i, u in col.items() for j, w in row.items()})
            root = symbol_weight(params, a) - symbol_weight(params, b)
            vals = hv_cache.setdefault(root, h_values(root, params))
            for h, v in zip(pair.h_basis, vals):
                if bracket(h, vec) != vec.scale(v):
                    raise AssertionError(f"table vector for {a}-{b} is not an eigenvector")
            parity = int(a[0] != b[0])
            out.append(FullRootDatum(root, parity, vec, _table_tag(params, a, b), (a, b)))
    return tuple(out)


def full_root_table(pair: PairData) -> List[FullRootDatum]:
    """Every root ``S_a - S_b`` with its root vector, checked against ad(h)."""
    return list(_full_root_table(pair.params))


# ---------------------------------------------------------------------------
# the independent oracle


@dataclass(frozen=True)
class OracleReport:
    params: PairParams
    n_roots: int
    zero_weight_dim: int
    total_dim: int
    mismatches: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.n_roots + self.zero_weight_dim == self.total_dim

    def bookkeeping(self) -> str:
        return f"{self.total_dim} = {self.n_roots} + {self.zero_weight_dim}"


def _std_basis_matrix(dims, idx: int) -> SuperMatrix:
    n = dims.total
    return SuperMatrix.from_sparse(dims, {(idx // n, idx % n): 1})


def oracle_verify_roots(pair: PairData) -> OracleReport:
    """Diagonalize ad(h) on all of gl(p+q|r+s) and compare with the tables."""
    params = pair.params
    n = params.n
    ops = [ad_matrix(h) for h in pair.h_basis]
    spaces = joint_eigenspaces(ops, n * n)
    table = {d.root: d for d in _full_root_table(params)}
    problems = []
    zero_dim = 0
    n_roots = 0
    seen = set()
    P = params.p + params.q
    for vals, basis in sorted(spaces.items(), key=lambda kv: str(kv[0])):
        if not any(vals):
            zero_dim += len(basis)
            continue
        w = hweight_from_values(vals, params)
        n_roots += len(basis)
        d = table.get(w)
        if d is None:
            problems.append(f"eigenfunctional {w} has no table row")
            continue
        seen.add(w)
        if len(basis) != 1:
            problems.append(f"eigenfunctional {w} has multiplicity {len(basis)}")
        parities = {int((idx // n < P) != (idx % n < P)) for v in basis for idx, x in enumerate(v) if x}
        if parities != {d.parity}:
            problems.append(f"eigenfunctional {w}: parity {sorted(parities)} vs table {d.parity}")
        if not same_span(basis, [d.root_vector.flat()]):
            problems.append(f"eigenfunctional {w}: root vector span differs from {d.table_tag}")
    for w in table:
        if w not in seen:
            problems.append(f"table root {w} missing from the eigen-decomposition")
    if zero_dim != n:
        problems.append(f"zero-weight space has dimension {zero_dim}, expected {n}")
    return OracleReport(params, n_roots, zero_dim, n * n, tuple(problems))


# ---------------------------------------------------------------------------
# restriction to a


def restrict_weight(w: HWeight, params: PairParams) -> AStarWeight:
    p, q, r, s = params.as_tuple()
    if len(w.delta) != p + q or len(w.eps) != r + s:
        raise ValueError("HWeight shape does not match params")
    ld = [exact((w.delta[k] - w.delta[p + k]) / 2) for k in range(q)]
    le = [exact((w.eps[l] - w.eps[r + l]) / 2) for l in range(s)]
    return AStarWeight(ld, le)


@dataclass(frozen=True)
class RestrictedRootDatum:
    root: AStarWeight
    even_dim: int
    odd_dim: int
    isotropic: bool
    indivisible: bool
    has_double: bool
    m_double: int

    @property
    def m(self) -> int:
        return self.even_dim - self.odd_dim

    @property
    def name(self) -> str:
        return restricted_name(self.root)

    @property
    def norm(self):
        return self.root.norm()

    @property
    def odd(self) -> bool:
        return self.odd_dim > 0

    def negate(self) -> "RestrictedRootDatum":
        return RestrictedRootDatum(-self.root, self.even_dim, self.odd_dim, self.isotropic,
                                   self.indivisible, self.has_double, self.m_double)

    def __str__(self):
        return f"{self.name} [m={self.m}]"


def positive_candidates(q: int, s: int) -> List[AStarWeight]:
    """The positive system in the fixed display order."""
    B = lambda k, c=1: AStarWeight.i_aB(q, s, k, c)
    F = lambda k, c=1: AStarWeight.i_aF(q, s, k, c)
    out = []
    out += [B(i) for i in range(1, q + 1)]
    for i in range(1, q + 1):
        for k in range(i + 1, q + 1):
            out += [B(i) - B(k), B(i) + B(k)]
    out += [B(i, 2) for i in range(1, q + 1)]
    out += [F(j) for j in range(1, s + 1)]
    for j in range(1, s + 1):
        for l in range(j + 1, s + 1):
            out += [F(j) - F(l), F(j) + F(l)]
    out += [F(j, 2) for j in range(1, s + 1)]
    for i in range(1, q + 1):
        for j in range(1, s + 1):
            out += [B(i) - F(j), B(i) + F(j)]
    return out


@lru_cache(maxsize=None)
def _restricted(params: PairParams) -> Tuple[RestrictedRootDatum, ...]:
    pair = build_pair(params)
    n = params.n
    P = params.p + params.q
    if not pair.a_basis:
        return ()
    counts: Dict[AStarWeight, List[int]] = {}
    full_ops = [ad_matrix(h) for h in pair.a_basis]
    for parity in (0, 1):
        idx = [k for k in range(n * n) if int((k // n < P) != (k % n < P)) == parity]
        if not idx:
            continue
        ops = [[[m[i][j] for j in idx] for i in idx] for m in full_ops]
        for vals, basis in joint_eigenspaces(ops, len(idx)).items():
            if not any(vals):
                continue
            w = astar_from_a_values(vals, params)
            counts.setdefault(w, [0, 0])[parity] += len(basis)
    roots = set(counts)
    order = {w: k for k, w in enumerate(positive_candidates(params.q, params.s))}
    nc = len(order)

    def key(w):
        if w in order:
            return (order[w],)
        if -w in order:
            return (nc + order[-w],)
        return (2 * nc, str(w))

    out = []
    for w in sorted(roots, key=key):
        ev, od = counts[w]
        double = w * 2
        out.append(RestrictedRootDatum(
            root=w, even_dim=ev, odd_dim=od,
            isotropic=(w.norm() == 0),
            indivisible=(w * Fraction(1, 2)) not in roots,
            has_double=double in roots,
            m_double=(counts[double][0] - counts[double][1]) if double in roots else 0,
        ))
    return tuple(out)


def restricted_root_data(pair: PairData) -> List[RestrictedRootDatum]:
    """Sigma with signed multiplicities, from the joint eigenspaces of ad(a)."""
    return list(_restricted(pair.params))


def positive_restricted_system(pair: PairData) -> List[RestrictedRootDatum]:
    cands = set(positive_candidates(pair.params.q, pair.params.s))
    return [d for d in _restricted(pair.params) if d.root in cands]


def weyl_vector(sigma_plus: Sequence[RestrictedRootDatum], shape=None) -> AStarWeight:
    """``1/2 sum m_b b``.  ``shape=(q, s)`` is needed only for an empty input."""
    if not sigma_plus:
        if shape is None:
            raise ValueError("shape is required for an empty root list")
        return AStarWeight.zero(*shape)
    total = AStarWeight.zero(*sigma_plus[0].root.shape)
    for d in sigma_plus:
        total = total + d.root * d.m
    return total * Fraction(1, 2)


def weyl_vector_supertrace(pair: PairData) -> AStarWeight:
    """``1/2 str ad|_a`` on n, computed from explicit root vectors."""
    params = pair.params
    if not pair.a_basis:
        return AStarWeight.zero(params.q, params.s)
    plus = {d.root for d in positive_restricted_system(pair)}
    n_part = [d for d in _full_root_table(params) if restrict_weight(d.root, params) in plus]
    if not n_part:
        return AStarWeight.zero(params.q, params.s)
    basis = [d.root_vector for d in n_part]
    signs = [(-1) ** d.parity for d in n_part]
    values = []
    for h in pair.a_basis:
        m = ad_matrix(h, basis)
        st = sum((m[k][k] * sg for k, sg in enumerate(signs)), ZERO)
        values.append(st / 2)
    return astar_from_a_values(values, params)


# ---------------------------------------------------------------------------
# positive systems as explicit root lists


def _proportional_positive(beta: AStarWeight, alpha: AStarWeight) -> bool:
    """``beta in Q_{>0} alpha``."""
    ratio = None
    for b, a in zip(beta._coeffs(), alpha._coeffs()):
        if a == 0:
            if b != 0:
                return False
            continue
        t = b / a
        if ratio is None:
            ratio = t
        elif t != ratio:
            return False
    return ratio is not None and ratio > 0


def is_simple(phi: Sequence[RestrictedRootDatum], alpha: RestrictedRootDatum) -> bool:
    roots = [d.root for d in phi]
    if alpha.root not in roots:
        return False
    for b in roots:
        if (alpha.root - b) in roots:
            return False
    return True


def simple_roots(phi: Sequence[RestrictedRootDatum]) -> List[RestrictedRootDatum]:
    """Indivisible simple roots of ``phi``."""
    return [d for d in phi if d.indivisible and is_simple(phi, d)]


def flip_positive_system(phi: Sequence[RestrictedRootDatum], alpha: RestrictedRootDatum) -> List[RestrictedRootDatum]:
    """``alpha^- u (phi minus alpha^+)`` for a simple indivisible ``alpha``."""
    if not alpha.indivisible:
        raise NotSimpleError(f"{alpha.name} is divisible")
    if not is_simple(phi, alpha):
        raise NotSimpleError(f"{alpha.name} is not simple in the given positive system")
    a_plus = [d for d in phi if _proportional_positive(d.root, alpha.root)]
    rest = [d for d in phi if d not in a_plus]
    return rest + [d.negate() for d in a_plus]


def rho_alpha(alpha: RestrictedRootDatum, sigma: Sequence[RestrictedRootDatum]) -> AStarWeight:
    a_plus = [d for d in sigma if _proportional_positive(d.root, alpha.root)]
    return weyl_vector(a_plus, shape=alpha.root.shape)


def positivity_axioms(phi: Sequence[RestrictedRootDatum], sigma: Sequence[RestrictedRootDatum]) -> bool:
    """``Sigma = Phi u -Phi`` disjointly, and Phi is closed under sums inside Sigma."""
    pr = {d.root for d in phi}
    sr = {d.root for d in sigma}
    neg = {-w for w in pr}
    if pr & neg or (pr | neg) != sr or len(pr) != len(phi):
        return False
    for a, b in product(pr, repeat=2):
        c = a + b
        if c in sr and c not in pr:
            return False
    return True


def reachable_positive_systems(phi: Sequence[RestrictedRootDatum], max_flips: int):
    """Breadth-first list of ``(path, system)`` reachable by at most
    ``max_flips`` simple flips; each system appears once, at its shortest path."""
    start = list(phi)
    seen = {frozenset(d.root for d in start)}
    out = [((), start)]
    frontier = out[:]
    for _ in range(max_flips):
        nxt = []
        for path, cur in frontier:
            for a in simple_roots(cur):
                new = flip_positive_system(cur, a)
                key = frozenset(d.root for d in new)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((path + (a.name,), new))
        out += nxt
        frontier = nxt
    return out


@dataclass(frozen=True)
class RhoFlipRecord:
    path: Tuple[str, ...]
    alpha: str
    flipped: object  # <rho of the flipped system, alpha>
    unflipped: object  # <rho of the system itself, alpha>
    target: object  # <rho_alpha, alpha>

    @property
    def literal_ok(self) -> bool:
        return self.flipped == self.target

    @property
    def corrected_ok(self) -> bool:
        return self.unflipped == self.target


def rho_flip_records(phi: Sequence[RestrictedRootDatum], max_flips: int = 3) -> List[RhoFlipRecord]:
    """For every reachable system and every indivisible simple root, the
    pairings of ``alpha`` with the three Weyl vectors involved."""
    out = []
    for path, cur in reachable_positive_systems(phi, max_flips):
        rho = weyl_vector(cur, shape=cur[0].root.shape)
        for a in simple_roots(cur):
            psi = flip_positive_system(cur, a)
            out.append(RhoFlipRecord(
                path, a.name,
                weyl_vector(psi, shape=a.root.shape).pair(a.root),
                rho.pair(a.root),
                rho_alpha(a, cur).pair(a.root),
            ))
    return out
