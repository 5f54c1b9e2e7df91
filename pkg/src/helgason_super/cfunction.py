"""Harish-Chandra c-function: exact factor classification and numeric values.

With ``x = lambda_alpha`` an anisotropic factor is

    2^{-x} Gamma(x) / (Gamma((m/2 + 1 + x)/2) Gamma((m/2 + m2 + x)/2))

and an isotropic factor is ``<lambda, alpha>^{-m/2}``.  The constant c_0 is 1.
Zero and pole orders are counted exactly; floats are only used for values.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from scipy import special

from .roots import RestrictedRootDatum
from .weights import AStarWeight, exact

__all__ = [
    "CFactor",
    "FactorValue",
    "CValue",
    "ZeroReport",
    "IsotropicRootError",
    "DivisibleRootError",
    "GammaPoleError",
    "lambda_alpha",
    "in_neg_nat",
    "indivisible_positive",
    "c_factorize",
    "c_evaluate",
    "c_numeric",
    "zeros_predicate",
    "high_enough",
    "km_nonvanishing",
    "naive_duplication_polynomial",
    "naive_zero_multiset",
    "isotropic_zero_multiset",
    "gamma_complex",
]


class IsotropicRootError(ValueError):
    pass


class DivisibleRootError(ValueError):
    pass


class GammaPoleError(ValueError):
    pass


def in_neg_nat(x) -> bool:
    """``x in {0, -1, -2, ...}`` exactly."""
    x = exact(x)
    return isinstance(x, Fraction) and x.denominator == 1 and x <= 0


def _in_neg_2nat(x) -> bool:
    x = exact(x)
    return in_neg_nat(x) and x.numerator % 2 == 0


def _root(alpha):
    return alpha.root if isinstance(alpha, RestrictedRootDatum) else alpha


@lru_cache(maxsize=None)
def _norm(a: AStarWeight):
    return a.norm()


def lambda_alpha(lam: AStarWeight, alpha) -> object:
    """``<lam, alpha> / <alpha, alpha>``; exact."""
    a = _root(alpha)
    nn = _norm(a)
    if nn == 0:
        raise IsotropicRootError(f"{a} is isotropic; lambda_alpha is undefined")
    return exact(lam.pair(a) / nn)


def indivisible_positive(sigma_plus: Sequence[RestrictedRootDatum]) -> List[RestrictedRootDatum]:
    return [d for d in sigma_plus if d.indivisible]


@dataclass(frozen=True)
class CFactor:
    kind: str  # "anisotropic" | "isotropic"
    alpha: AStarWeight
    name: str
    m: int
    m_double: int = 0

    @property
    def qexp(self) -> int:
        if self.kind != "isotropic":
            raise AttributeError("qexp only exists for isotropic factors")
        return -self.m // 2

    @classmethod
    def from_datum(cls, d: RestrictedRootDatum) -> "CFactor":
        if not d.indivisible:
            raise DivisibleRootError(f"{d.name} is divisible; the product runs over indivisible roots")
        if d.isotropic:
            if d.m > 0 or d.m % 2:
                raise ValueError(f"isotropic root {d.name} has m = {d.m}; expected a negative even value")
            return cls("isotropic", d.root, d.name, d.m, 0)
        return cls("anisotropic", d.root, d.name, d.m, d.m_double)


@dataclass(frozen=True)
class FactorValue:
    factor: CFactor
    status: str  # "finite" | "zero" | "pole" | "indeterminate"
    zero_order: int
    pole_order: int
    value: Optional[complex]
    argument: object  # exact lambda_alpha or pairing
    notes: Tuple[str, ...] = ()


@dataclass(frozen=True)
class CValue:
    value: complex
    zero_flag: bool
    pole_flag: bool
    per_factor: Tuple[FactorValue, ...]
    notes: Tuple[str, ...] = ()

    @property
    def zero_order(self) -> int:
        return sum(f.zero_order for f in self.per_factor)

    @property
    def pole_order(self) -> int:
        return sum(f.pole_order for f in self.per_factor)


def gamma_complex(z) -> complex:
    """Gamma on the complex plane (scipy backend), refusing pole neighbourhoods."""
    z = complex(z)
    k = round(z.real)
    if k <= 0 and abs(z - k) < 1e-12:
        raise GammaPoleError(f"Gamma has a pole at {k}")
    return complex(special.gamma(z))


def _rgamma(z: complex) -> complex:
    return complex(special.rgamma(complex(z)))


def _status(zeros: int, poles: int) -> str:
    if zeros > poles:
        return "zero"
    if poles > zeros:
        return "pole"
    return "indeterminate" if zeros else "finite"


def _anisotropic(f: CFactor, lam: AStarWeight) -> FactorValue:
    x = lambda_alpha(lam, f.alpha)
    m, m2 = Fraction(f.m), Fraction(f.m_double)
    d1 = exact((m / 2 + 1 + x) / 2)
    d2 = exact((m / 2 + m2 + x) / 2)
    poles = int(in_neg_nat(x))
    zeros = int(in_neg_nat(d1)) + int(in_neg_nat(d2))
    status = _status(zeros, poles)
    if status == "finite" and isinstance(x, Fraction):
        xf = float(x)
        value = complex(2.0 ** (-xf) * float(special.gamma(xf))
                        * float(special.rgamma(float(d1))) * float(special.rgamma(float(d2))))
    elif status == "finite":
        xc = complex(x)
        value = 2.0 ** (-xc) * gamma_complex(xc) * _rgamma(complex(d1)) * _rgamma(complex(d2))
    elif status == "zero":
        value = 0j
    else:
        value = None
    return FactorValue(f, status, zeros, poles, value, x)


def _isotropic(f: CFactor, lam: AStarWeight) -> FactorValue:
    t = exact(lam.pair(f.alpha))
    q = f.qexp
    notes = ("m < -2 lies outside the observed range m = -2",) if f.m < -2 else ()
    if t == 0 and q > 0:
        return FactorValue(f, "zero", q, 0, 0j, t, notes)
    return FactorValue(f, "finite", 0, 0, complex(t) ** q, t, notes)


def c_factorize(sigma_plus: Sequence[RestrictedRootDatum], lam: AStarWeight) -> List[FactorValue]:
    """One factor per indivisible positive root; a divisible root is an error."""
    out = []
    for d in sigma_plus:
        f = CFactor.from_datum(d)
        out.append(_isotropic(f, lam) if f.kind == "isotropic" else _anisotropic(f, lam))
    return out


def c_evaluate(sigma_plus: Sequence[RestrictedRootDatum], lam: AStarWeight) -> CValue:
    """c(lam) with c_0 = 1.  Divisible roots in ``sigma_plus`` are skipped."""
    factors = c_factorize(indivisible_positive(sigma_plus), lam)
    zeros = sum(f.zero_order for f in factors)
    poles = sum(f.pole_order for f in factors)
    notes = []
    if zeros and zeros == poles:
        notes.append("zero and pole orders cancel; the value depends on the direction of approach")
    if any(f.status == "indeterminate" for f in factors):
        notes.append("indeterminate factor present")
    zero_flag, pole_flag = zeros > poles, poles > zeros
    if zero_flag:
        value = 0j
    elif pole_flag:
        value = complex(math.inf, 0.0)
    elif zeros:
        value = complex(math.nan, math.nan)
    else:
        value = complex(1.0)
        for f in factors:
            value *= f.value
    return CValue(value, zero_flag, pole_flag, tuple(factors), tuple(notes))


def _generic_direction(shape):
    q, s = shape
    return [1 / (k + math.sqrt(2)) for k in range(1, q + 1)], [1 / (k + math.e) for k in range(1, s + 1)]


def c_numeric(sigma_plus: Sequence[RestrictedRootDatum], lam: AStarWeight, perturb: float = 0.0) -> complex:
    """Plain floating-point product with no exact bookkeeping.

    ``perturb`` moves ``lam`` a small step along a fixed generic direction, so
    that zeros sitting on top of Gamma poles still show up as small values.
    Used as an independent check on :func:`c_evaluate`.
    """
    vd, ve = _generic_direction(lam.shape)
    out = complex(1.0)
    for d in indivisible_positive(sigma_plus):
        a = d.root
        t = complex(lam.pair(a))
        if perturb:
            t += perturb * 2 * (sum(x * float(y) for x, y in zip(vd, a.ldelta))
                                - sum(x * float(y) for x, y in zip(ve, a.leps)))
        if d.isotropic:
            out *= t ** (-d.m // 2)
            continue
        x = t / float(_norm(a))
        d1 = (d.m / 2 + 1 + x) / 2
        d2 = (d.m / 2 + d.m_double + x) / 2
        out *= 2.0 ** (-x) * complex(special.gamma(x)) * _rgamma(d1) * _rgamma(d2)
    return out


@dataclass(frozen=True)
class ZeroReport:
    value: bool
    witnesses: Tuple[Tuple[str, int], ...]  # (root name, clause number)

    def __bool__(self):
        return self.value


def _odd_integer_negative(x) -> bool:
    x = exact(x)
    return in_neg_nat(x) and x.numerator % 2 == 1


def zeros_predicate(sigma_plus: Sequence[RestrictedRootDatum], lam: AStarWeight) -> ZeroReport:
    """The three-clause zero criterion, evaluated directly on ``lam``."""
    wit = []
    for d in indivisible_positive(sigma_plus):
        if d.isotropic:
            if lam.pair(d.root) == 0:
                wit.append((d.name, 1))
            continue
        la = lambda_alpha(lam, d)
        if _in_neg_2nat(la + d.m + 2 * d.m_double):
            wit.append((d.name, 2))
        if _odd_integer_negative(la + d.m + d.m_double):
            wit.append((d.name, 3))
    return ZeroReport(bool(wit), tuple(wit))


def _require_real(lam: AStarWeight):
    if not lam.is_real():
        raise ValueError("this predicate is defined for real weights only")


def _odd_anisotropic(sigma_plus):
    return [d for d in indivisible_positive(sigma_plus) if not d.isotropic and d.odd_dim > 0]


def high_enough(sigma_plus: Sequence[RestrictedRootDatum], lam: AStarWeight) -> bool:
    _require_real(lam)
    for d in sigma_plus:
        if d.isotropic and not lam.pair(d.root) > 0:
            return False
    for d in _odd_anisotropic(sigma_plus):
        la = lambda_alpha(lam, d)
        if not (la + d.m + 2 * d.m_double > 0 and la + d.m + d.m_double + 1 > 0):
            return False
    return True


def km_nonvanishing(sigma_plus: Sequence[RestrictedRootDatum], lam: AStarWeight) -> bool:
    for d in sigma_plus:
        if d.isotropic and lam.pair(d.root) == 0:
            return False
    for d in _odd_anisotropic(sigma_plus):
        la = lambda_alpha(lam, d)
        if _in_neg_2nat(la + d.m + 2 * d.m_double) or _in_neg_2nat(la + d.m + d.m_double + 1):
            return False
    return True


def naive_duplication_polynomial(qexp: int, t) -> Fraction:
    """``(t-1)(t-2)...(t-qexp)``, the monic part of the duplicated rank-one formula."""
    if not isinstance(qexp, int) or qexp < 1:
        raise ValueError("qexp must be a positive integer")
    t = exact(t)
    out = Fraction(1)
    for k in range(1, qexp + 1):
        out = out * (t - k)
    return exact(out)


def naive_zero_multiset(qexp: int) -> dict:
    return {Fraction(k): 1 for k in range(1, qexp + 1)}


def isotropic_zero_multiset(qexp: int) -> dict:
    return {Fraction(0): qexp}
