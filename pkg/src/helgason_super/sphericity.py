"""Weight-level sphericity tests for the gl pair and the self-duality check."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .cfunction import high_enough as _high_enough
from .cfunction import km_nonvanishing, lambda_alpha
from .chains import apply_chain, compatible_chain, reversal_chain
from .pair import PairParams, build_pair
from .roots import RestrictedRootDatum, full_root_table, positive_restricted_system, restrict_weight
from .weights import AStarWeight

__all__ = [
    "SphericityReport",
    "cond_even_lambda_alpha",
    "cond_gl_pairing",
    "gl_dominance_check",
    "enumerate_spherical",
    "atypical_flag",
    "self_dual_check",
    "classify",
]


def _is_nat(x) -> bool:
    return isinstance(x, Fraction) and x.denominator == 1 and x >= 0


def _failures_even(sigma_plus, lam) -> List[str]:
    return [d.name for d in sigma_plus
            if d.even_dim > 0 and not d.isotropic and not _is_nat(lambda_alpha(lam, d))]


def _failures_pairing(sigma_plus, lam) -> List[str]:
    out = []
    for d in sigma_plus:
        v = lam.pair(d.root)
        if not (_is_nat(v) and v.numerator % 2 == 0):
            out.append(d.name)
    return out


def cond_even_lambda_alpha(sigma_plus: Sequence[RestrictedRootDatum], lam: AStarWeight) -> bool:
    """``lambda_alpha in N`` for every even positive restricted root."""
    return not _failures_even(sigma_plus, lam)


def cond_gl_pairing(sigma_plus: Sequence[RestrictedRootDatum], lam: AStarWeight) -> bool:
    """``<lambda, alpha> in 2N`` for every positive restricted root."""
    return not _failures_pairing(sigma_plus, lam)


def _chain_coords(lam: AStarWeight) -> Tuple:
    return tuple(-c for c in lam.ldelta) + tuple(lam.leps)


def gl_dominance_check(params: PairParams, lam: AStarWeight) -> bool:
    """``-ld_1 >= ... >= -ld_q >= le_1 >= ... >= le_s >= 0``, all even integers."""
    if lam.shape != (params.q, params.s):
        raise ValueError(f"weight has shape {lam.shape}, expected ({params.q},{params.s})")
    c = _chain_coords(lam)
    for x in c:
        if not (isinstance(x, Fraction) and x.denominator == 1 and x.numerator % 2 == 0):
            return False
    return all(a >= b for a, b in zip(c, c[1:])) and (not c or c[-1] >= 0)


def enumerate_spherical(params: PairParams, bound: int) -> List[AStarWeight]:
    """Every weight passing :func:`gl_dominance_check` with coefficients in
    ``[-bound, bound]``, sorted lexicographically in the chain coordinates
    ``(-ld_1, ..., -ld_q, le_1, ..., le_s)``."""
    if not isinstance(bound, int) or bound < 0:
        raise ValueError("bound must be a nonnegative integer")
    q, s = params.q, params.s
    n = q + s
    evens = range(0, bound // 2 + 1)
    out = []
    # weakly decreasing sequences of halves, built from multisets
    for combo in combinations_with_replacement(evens, n):
        c = sorted(combo, reverse=True)
        ld = [-2 * x for x in c[:q]]
        le = [2 * x for x in c[q:]]
        out.append(AStarWeight(ld, le))
    out.sort(key=_chain_coords)
    return out


def atypical_flag(params: PairParams, lam: Optional[AStarWeight] = None) -> Tuple[bool, Optional[str]]:
    """Whether some odd full root vanishes on a, with the first such root."""
    pair = build_pair(params)
    for d in full_root_table(pair):
        if d.parity == 1 and restrict_weight(d.root, params).is_zero():
            return True, f"{d.name} ({_c_name(params, d.symbols)})"
    return False, None


def _c_name(params: PairParams, syms) -> str:
    parts = []
    for kind, idx in syms:
        if kind == "d":
            parts.append(f"cB{idx - params.q}")
        else:
            parts.append(f"cF{idx - params.s}")
    return "-".join(parts)


def self_dual_check(params: PairParams, lam: AStarWeight) -> bool:
    """``R(lam) == -lam`` for the reversal of the compatible chain."""
    w = lam.embed(params)
    return apply_chain(w, _reversal(params)) == -w


_REV_CACHE: Dict[PairParams, object] = {}


def _reversal(params: PairParams):
    rc = _REV_CACHE.get(params)
    if rc is None:
        rc = _REV_CACHE.setdefault(params, reversal_chain(compatible_chain(params)))
    return rc


@dataclass(frozen=True)
class SphericityReport:
    lam: AStarWeight
    cond_even_lambda_alpha: bool
    cond_gl_pairing: bool
    gl_dominance: bool
    high_enough: bool
    c_nonzero_at_shift: bool
    self_dual: bool
    atypical: bool
    witnesses: Dict[str, object] = field(default_factory=dict)

    @property
    def spherical_necessary(self) -> bool:
        return self.cond_even_lambda_alpha


def classify(params: PairParams, lam: AStarWeight) -> SphericityReport:
    pair = build_pair(params)
    sp = positive_restricted_system(pair)
    atyp, atyp_w = atypical_flag(params, lam)
    notes: Dict[str, object] = {
        "even_lambda_alpha_failures": _failures_even(sp, lam),
        "gl_pairing_failures": _failures_pairing(sp, lam),
    }
    if atyp_w:
        notes["atypical_witness"] = atyp_w
    neg = [d.name for d in sp if not d.isotropic and d.odd_dim > 0 and d.indivisible and d.norm < 0]
    if neg:
        notes["negative_norm_odd_anisotropic"] = neg
    return SphericityReport(
        lam=lam,
        cond_even_lambda_alpha=not notes["even_lambda_alpha_failures"],
        cond_gl_pairing=not notes["gl_pairing_failures"],
        gl_dominance=gl_dominance_check(params, lam),
        high_enough=_high_enough(sp, lam),
        c_nonzero_at_shift=km_nonvanishing(sp, lam),
        self_dual=self_dual_check(params, lam),
        atypical=atyp,
        witnesses=notes,
    )
