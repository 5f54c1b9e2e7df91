"""delta/epsilon chains, simple reflections and the reversal chain.

A chain ``S_1 ... S_n`` of distinct symbols induces the simple system
``{S_k - S_{k+1}}``.  Swapping neighbours ``S_k S_{k+1}`` is the simple
reflection at ``S_k - S_{k+1}``; it is odd exactly when the kinds differ.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Tuple

from .pair import PairParams
from .weights import HWeight

__all__ = [
    "ChainSymbol",
    "DeltaEpsChain",
    "SimpleReflection",
    "ReflectionChain",
    "ChainError",
    "IsotropicEvenReflection",
    "simple_system",
    "swap",
    "swap_lemma_prediction",
    "compatible_chain",
    "reversal_chain",
    "apply_reflection",
    "apply_chain",
    "even_only_action",
    "is_palindrome",
    "canonical_chain",
    "test_family",
]


class ChainError(ValueError):
    pass


class IsotropicEvenReflection(ArithmeticError):
    """An even reflection was requested at an isotropic root."""


_SYM_RE = re.compile(r"^(d|e)(\d+)$")


@dataclass(frozen=True, order=True)
class ChainSymbol:
    kind: str  # "d" or "e"
    index: int

    def __post_init__(self):
        if self.kind not in ("d", "e"):
            raise ChainError(f"symbol kind must be 'd' or 'e', got {self.kind!r}")
        if not isinstance(self.index, int) or self.index < 1:
            raise ChainError(f"symbol index must be a positive integer, got {self.index!r}")

    @classmethod
    def parse(cls, text: str) -> "ChainSymbol":
        m = _SYM_RE.match(text.strip())
        if not m:
            raise ChainError(f"malformed chain symbol {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def weight(self, shape: Tuple[int, int]) -> HWeight:
        return HWeight.basis(shape[0], shape[1], self.kind, self.index)

    def __str__(self):
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class DeltaEpsChain:
    symbols: Tuple[ChainSymbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if len(set(self.symbols)) != len(self.symbols):
            raise ChainError("chain symbols must be distinct")

    @classmethod
    def parse(cls, text: str) -> "DeltaEpsChain":
        return cls(tuple(ChainSymbol.parse(t) for t in text.split()))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    @property
    def kinds(self) -> str:
        return "".join(s.kind for s in self.symbols)

    @property
    def shape(self) -> Tuple[int, int]:
        """Smallest (#delta, #epsilon) able to hold every symbol."""
        nd = max((s.index for s in self.symbols if s.kind == "d"), default=0)
        ne = max((s.index for s in self.symbols if s.kind == "e"), default=0)
        return nd, ne

    def reversed(self) -> "DeltaEpsChain":
        return DeltaEpsChain(self.symbols[::-1])

    def __str__(self):
        return " ".join(str(s) for s in self.symbols)


@dataclass(frozen=True)
class SimpleReflection:
    left: ChainSymbol
    right: ChainSymbol

    @property
    def parity(self) -> str:
        return "odd" if self.left.kind != self.right.kind else "even"

    @property
    def is_odd(self) -> bool:
        return self.left.kind != self.right.kind

    def root(self, shape: Tuple[int, int]) -> HWeight:
        return self.left.weight(shape) - self.right.weight(shape)

    def __str__(self):
        return f"r[{self.left}-{self.right}]"


@dataclass(frozen=True)
class ReflectionChain:
    steps: Tuple[SimpleReflection, ...]
    source: DeltaEpsChain

    def states(self) -> List[DeltaEpsChain]:
        """The chain before each step followed by the final chain.

        Raises :class:`ChainError` when a step's root is not simple in the
        chain it acts on.
        """
        cur = list(self.source.symbols)
        out = [DeltaEpsChain(tuple(cur))]
        for st in self.steps:
            k = next((i for i in range(len(cur) - 1) if cur[i] == st.left and cur[i + 1] == st.right), None)
            if k is None:
                raise ChainError(f"{st} is not a simple reflection of {DeltaEpsChain(tuple(cur))}")
            cur[k], cur[k + 1] = cur[k + 1], cur[k]
            out.append(DeltaEpsChain(tuple(cur)))
        return out

    def target(self) -> DeltaEpsChain:
        return self.states()[-1]

    def is_valid(self) -> bool:
        try:
            self.states()
        except ChainError:
            return False
        return True

    @property
    def n_odd(self) -> int:
        return sum(st.is_odd for st in self.steps)

    @property
    def n_even(self) -> int:
        return len(self.steps) - self.n_odd

    def __len__(self):
        return len(self.steps)


def simple_system(chain: DeltaEpsChain, shape: Optional[Tuple[int, int]] = None) -> List[HWeight]:
    if len(chain) < 2:
        raise ChainError("a simple system needs a chain of length >= 2")
    shape = shape or chain.shape
    w = [s.weight(shape) for s in chain.symbols]
    return [a - b for a, b in zip(w, w[1:])]


def swap(chain: DeltaEpsChain, k: int) -> DeltaEpsChain:
    """Swap positions ``k`` and ``k+1`` (0-based)."""
    if not 0 <= k < len(chain) - 1:
        raise ChainError(f"no neighbour pair at position {k}")
    s = list(chain.symbols)
    s[k], s[k + 1] = s[k + 1], s[k]
    return DeltaEpsChain(tuple(s))


def swap_lemma_prediction(chain: DeltaEpsChain, k: int, shape=None) -> List[HWeight]:
    """Simple system after the swap at ``k`` via the case analysis:
    ``alpha -> -alpha``, neighbours ``beta -> beta + alpha``, rest unchanged."""
    pi = simple_system(chain, shape)
    alpha = pi[k]
    out = list(pi)
    out[k] = -alpha
    if k > 0:
        out[k - 1] = pi[k - 1] + alpha
    if k + 1 < len(pi):
        out[k + 1] = pi[k + 1] + alpha
    return out


def compatible_chain(params: PairParams) -> DeltaEpsChain:
    """d_{p+1..p+q} e_{r+1..r+s} d_{q+1..p} e_{s+1..r} e_{s..1} d_{q..1}."""
    p, q, r, s = params.as_tuple()
    d = lambda i: ChainSymbol("d", i)
    e = lambda j: ChainSymbol("e", j)
    syms = [d(p + k) for k in range(1, q + 1)]
    syms += [e(r + k) for k in range(1, s + 1)]
    syms += [d(i) for i in range(q + 1, p + 1)]
    syms += [e(j) for j in range(s + 1, r + 1)]
    syms += [e(j) for j in range(s, 0, -1)]
    syms += [d(i) for i in range(q, 0, -1)]
    return DeltaEpsChain(tuple(syms))


def reversal_chain(chain: DeltaEpsChain) -> ReflectionChain:
    """Move ``S_1`` to the end, then ``S_n`` to the front, and recurse on the
    interior.  Produces ``n(n-1)/2`` steps."""
    steps: List[SimpleReflection] = []

    def rec(seq):
        n = len(seq)
        if n < 2:
            return
        first, last = seq[0], seq[-1]
        for x in seq[1:]:
            steps.append(SimpleReflection(first, x))
        for x in reversed(seq[1:-1]):
            steps.append(SimpleReflection(x, last))
        rec(seq[1:-1])

    rec(list(chain.symbols))
    return ReflectionChain(tuple(steps), chain)


def _shape_of(w: HWeight) -> Tuple[int, int]:
    return len(w.delta), len(w.eps)


def apply_reflection(w: HWeight, refl: SimpleReflection) -> HWeight:
    alpha = refl.root(_shape_of(w))
    ip = w.pair(alpha)
    if refl.is_odd:
        return w if ip == 0 else w - alpha
    nn = alpha.norm()
    if nn == 0:
        raise IsotropicEvenReflection(f"{refl} is tagged even but its root is isotropic")
    return w - alpha * (2 * ip / nn)


def apply_chain(w: HWeight, rc: ReflectionChain) -> HWeight:
    for st in rc.steps:
        w = apply_reflection(w, st)
    return w


def even_only_action(w: HWeight, rc: ReflectionChain) -> HWeight:
    for st in rc.steps:
        if not st.is_odd:
            w = apply_reflection(w, st)
    return w


def is_palindrome(chain: DeltaEpsChain) -> bool:
    k = chain.kinds
    return k == k[::-1]


def canonical_chain(kinds: str) -> DeltaEpsChain:
    """Number each kind in order of appearance: ``"dde"`` -> ``d1 d2 e1``."""
    counts = {"d": 0, "e": 0}
    syms = []
    for ch in kinds:
        if ch not in counts:
            raise ChainError(f"kind letters must be 'd' or 'e', got {ch!r}")
        counts[ch] += 1
        syms.append(ChainSymbol(ch, counts[ch]))
    return DeltaEpsChain(tuple(syms))


def test_family(shape: Tuple[int, int]) -> List[HWeight]:
    """Basis vectors, their negatives, every +-1 combination of the basis,
    and ``-sum d_i``."""
    nd, ne = shape
    n = nd + ne
    out = []
    for k in range(n):
        v = [0] * n
        v[k] = 1
        out.append(HWeight(v[:nd], v[nd:]))
        out.append(-out[-1])
    for signs in product((1, -1), repeat=n):
        out.append(HWeight(signs[:nd], signs[nd:]))
    out.append(HWeight([-1] * nd, [0] * ne))
    uniq = []
    seen = set()
    for w in out:
        if w not in seen:
            seen.add(w)
            uniq.append(w)
    return uniq


test_family.__test__ = False  # keep pytest from collecting it
