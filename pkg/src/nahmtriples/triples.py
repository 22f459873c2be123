"""Stability-parameter calculus for holomorphic triple types.

A triple type is the four integers (n1, n2, d1, d2).  This module computes
the allowed window of the stability parameter alpha, enumerates candidate
critical values (chamber walls), transforms types componentwise, and turns
the preservation theorems for the small-alpha, large-alpha, and equal-ranks
regimes into decision procedures on types.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from .errors import EmptyModuli, NonPositiveAlpha, NotIT, UnboundedWindow, ZeroRank
from .invariants import ChernPair, ITIndex, Rational

__all__ = [
    "TripleType",
    "AlphaWindow",
    "EquivariantType",
    "PreservationVerdict",
    "alpha_slope",
    "alpha_window",
    "critical_values",
    "transform_triple_type",
    "check_small_alpha_preservation",
    "check_large_alpha_preservation",
    "check_equal_ranks_case",
    "equivariant_descriptor",
]


@dataclass(frozen=True)
class TripleType:
    """Type (n1, n2, d1, d2) of a holomorphic triple Phi: E2 -> E1."""

    n1: int
    n2: int
    d1: int
    d2: int

    def __post_init__(self) -> None:
        if self.n1 < 0 or self.n2 < 0:
            raise ZeroRank("ranks must be non-negative")
        if self.n1 + self.n2 == 0:
            raise ZeroRank("total rank must be positive")

    def mu1(self) -> Rational:
        if self.n1 == 0:
            raise ZeroRank("mu1 undefined: n1 = 0")
        return Fraction(self.d1, self.n1)

    def mu2(self) -> Rational:
        if self.n2 == 0:
            raise ZeroRank("mu2 undefined: n2 = 0")
        return Fraction(self.d2, self.n2)

    def dual(self) -> "TripleType":
        return TripleType(self.n2, self.n1, -self.d2, -self.d1)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.n1, self.n2, self.d1, self.d2)

    def __str__(self) -> str:
        return f"({self.n1},{self.n2},{self.d1},{self.d2})"


@dataclass(frozen=True)
class AlphaWindow:
    """Allowed interval of the stability parameter with its chamber walls.

    ``alpha_M`` is None when the window is unbounded (n1 = n2).  The
    ``criticals`` are a documented superset of the realized walls, each
    strictly inside the open interval.
    """

    alpha_m: Rational
    alpha_M: Optional[Rational]
    criticals: Tuple[Rational, ...]
    alpha_L: Rational

    def chamber_count(self) -> int:
        return len(self.criticals) + 1


@dataclass(frozen=True)
class EquivariantType:
    """Invariant data of the associated equivariant bundle on C x P^1."""

    triple: TripleType
    alpha: Rational
    kahler_coeff: Rational


@dataclass(frozen=True)
class PreservationVerdict:
    """Outcome of one of the stability-preservation decision procedures."""

    applies: bool
    reason: str
    transformed: Optional[TripleType] = None
    it_index: Optional[ITIndex] = None
    fibration_dim_N: Optional[int] = None
    moduli_dim: Optional[int] = None
    transformed_window: Optional[AlphaWindow] = None


def alpha_slope(t: TripleType, alpha: Rational) -> Rational:
    """mu_alpha(T) = (d1 + d2 + n2*alpha) / (n1 + n2), exactly."""
    return Fraction(t.d1 + t.d2 + t.n2 * Fraction(alpha), t.n1 + t.n2)


def _window_bounds(t: TripleType) -> Tuple[Rational, Optional[Rational]]:
    if t.n1 == 0 or t.n2 == 0:
        raise ZeroRank("alpha window needs n1 > 0 and n2 > 0")
    diff = t.mu1() - t.mu2()
    if diff < 0:
        raise EmptyModuli("mu1 < mu2: empty stability window")
    if t.n1 == t.n2:
        return diff, None
    cap = (1 + Fraction(t.n1 + t.n2, abs(t.n1 - t.n2))) * diff
    return diff, cap


def critical_values(t: TripleType, cap: Optional[Rational] = None) -> List[Rational]:
    """Candidate chamber walls strictly inside the open alpha window.

    For every proper sub-rank pair (n1', n2') and integer total sub-degree
    d', the equality mu_alpha(sub) = mu_alpha(t) is linear in alpha; we
    collect all solutions landing strictly inside the window.  The result
    is a superset of the realized critical values.
    """
    alpha_m, alpha_M = _window_bounds(t)
    if alpha_M is None:
        if cap is None:
            raise UnboundedWindow("n1 = n2: supply a finite cap")
        alpha_M = Fraction(cap)
    n1, n2, d1, d2 = t.n1, t.n2, t.d1, t.d2
    d = d1 + d2
    found = set()
    for n1p in range(n1 + 1):
        for n2p in range(n2 + 1):
            if (n1p, n2p) in ((0, 0), (n1, n2)):
                continue
            # mu_alpha equality: (d' + n2'a)/(n1'+n2') = (d + n2 a)/(n1+n2)
            # i.e. a * [n2'(n1+n2) - n2(n1'+n2')] = d(n1'+n2') - d'(n1+n2).
            coeff = n2p * (n1 + n2) - n2 * (n1p + n2p)
            if coeff == 0:
                continue
            # alpha(d') is affine with slope -(n1+n2)/coeff != 0, so only
            # finitely many integers d' land inside the bounded window.
            a_lo = (Fraction(d * (n1p + n2p)) - alpha_m * coeff) / (n1 + n2)
            a_hi = (Fraction(d * (n1p + n2p)) - alpha_M * coeff) / (n1 + n2)
            lo, hi = min(a_lo, a_hi), max(a_lo, a_hi)
            dp = int(lo)
            while Fraction(dp) >= lo:
                dp -= 1
            dp += 1
            while Fraction(dp) <= hi:
                alpha = Fraction(d * (n1p + n2p) - dp * (n1 + n2), coeff)
                if alpha_m < alpha < alpha_M:
                    found.add(alpha)
                dp += 1
    return sorted(found)


def alpha_window(t: TripleType, cap: Optional[Rational] = None) -> AlphaWindow:
    """Exact window [alpha_m, alpha_M] with its candidate walls."""
    alpha_m, alpha_M = _window_bounds(t)
    crits: Tuple[Rational, ...]
    if alpha_M is None and cap is None:
        crits = ()
    else:
        crits = tuple(critical_values(t, cap=cap))
    alpha_L = crits[-1] if crits else alpha_m
    return AlphaWindow(alpha_m=alpha_m, alpha_M=alpha_M, criticals=crits, alpha_L=alpha_L)


def transform_triple_type(t: TripleType) -> Tuple[TripleType, ITIndex]:
    """Componentwise transform (r, d) -> (-1)^i (d, -r) of both bundles."""
    if t.d1 == 0 or t.d2 == 0:
        raise NotIT("a degree is zero")
    if (t.d1 > 0) != (t.d2 > 0):
        raise NotIT("degrees have mixed signs")
    i = 0 if t.d1 > 0 else 1
    s = 1 if i == 0 else -1
    out = TripleType(s * t.d1, s * t.d2, -s * t.n1, -s * t.n2)
    return out, ITIndex(i)


def _transformed_window(t_hat: TripleType) -> Optional[AlphaWindow]:
    try:
        return alpha_window(t_hat)
    except (EmptyModuli, UnboundedWindow, ZeroRank):
        return None


def check_small_alpha_preservation(t: TripleType) -> PreservationVerdict:
    """Decision procedure for the small-alpha preservation theorem.

    Applies iff gcd(n1, d1) = 1, gcd(n2, d2) = 1 and d1*d2 > 0.  When it
    applies, the moduli space near alpha_m fibres over a product of bundle
    moduli with projective-space fibres of dimension N = n2 d1 - n1 d2 - 1.
    """
    if gcd(t.n1, t.d1) != 1:
        return PreservationVerdict(False, f"gcd(n1,d1)={gcd(t.n1, t.d1)}")
    if gcd(t.n2, t.d2) != 1:
        return PreservationVerdict(False, f"gcd(n2,d2)={gcd(t.n2, t.d2)}")
    if t.d1 * t.d2 <= 0:
        return PreservationVerdict(False, "d1*d2 <= 0")
    t_hat, it = transform_triple_type(t)
    n_fib = t.n2 * t.d1 - t.n1 * t.d2 - 1
    return PreservationVerdict(
        applies=True,
        reason="gcd(n1,d1)=1, gcd(n2,d2)=1, d1*d2>0",
        transformed=t_hat,
        it_index=it,
        fibration_dim_N=n_fib,
        transformed_window=_transformed_window(t_hat),
    )


def check_large_alpha_preservation(t: TripleType) -> PreservationVerdict:
    """Decision procedure for the large-alpha preservation theorem.

    Applies iff gcd(n1-n2, d1-d2) = 1, gcd(n2, d2) = 1, n1 != n2 and
    d1, d2, d1-d2 all share one strict sign.  The large-alpha moduli space
    is then smooth of dimension n2 d1 - n1 d2 + 1.  For n1 < n2 the
    hypotheses are checked on the dual type (n2, n1, -d2, -d1); the
    dimension integer is invariant under dualization.
    """
    if t.n1 == t.n2:
        return PreservationVerdict(False, "n1 = n2")
    w = t if t.n1 > t.n2 else t.dual()
    g1 = gcd(abs(w.n1 - w.n2), abs(w.d1 - w.d2))
    if g1 != 1:
        return PreservationVerdict(False, f"gcd(n1-n2,d1-d2)={g1}")
    if gcd(w.n2, w.d2) != 1:
        return PreservationVerdict(False, f"gcd(n2,d2)={gcd(w.n2, w.d2)}")
    signs = {w.d1 > 0, w.d2 > 0, w.d1 - w.d2 > 0}
    if w.d1 == 0 or w.d2 == 0 or w.d1 == w.d2 or len(signs) > 1:
        return PreservationVerdict(False, "d1, d2, d1-d2 not of uniform sign")
    t_hat, it = transform_triple_type(t)
    dim = t.n2 * t.d1 - t.n1 * t.d2 + 1
    return PreservationVerdict(
        applies=True,
        reason="gcd(n1-n2,d1-d2)=1, gcd(n2,d2)=1, n1!=n2, uniform degree signs",
        transformed=t_hat,
        it_index=it,
        fibration_dim_N=dim - 2,
        moduli_dim=dim,
        transformed_window=_transformed_window(t_hat),
    )


def check_equal_ranks_case(t: TripleType) -> PreservationVerdict:
    """Decision procedure for the equal-ranks, equal-degrees theorem.

    Requires n1 = n2, d1 = d2 as a precondition.  Applies iff the common
    pair is stable (coprime), with nonzero degree, excluding the trivial
    rank-1 degree-0 case; the transform is then stable for every positive
    parameter value.
    """
    if t.n1 != t.n2 or t.d1 != t.d2:
        raise ValueError("equal-ranks case requires n1 = n2 and d1 = d2")
    if t.d1 == 0:
        return PreservationVerdict(False, "d1 = 0")
    if not (t.n1 > 1 or t.d1 != 0):
        return PreservationVerdict(False, "rank 1 with degree 0")
    if gcd(t.n1, t.d1) != 1:
        return PreservationVerdict(False, f"gcd(n1,d1)={gcd(t.n1, t.d1)}")
    t_hat, it = transform_triple_type(t)
    return PreservationVerdict(
        applies=True,
        reason="stable for all positive transformed parameter values",
        transformed=t_hat,
        it_index=it,
    )


def equivariant_descriptor(t: TripleType, alpha: Rational) -> EquivariantType:
    """Equivariant-bundle bookkeeping: Kaehler coefficient alpha/2."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise NonPositiveAlpha("alpha must be positive")
    return EquivariantType(triple=t, alpha=alpha, kahler_coeff=alpha / 2)
