"""Exact calculus of the coupled vortex equations on triple types.

The two vortex parameters (tau, tau') are pinned to a triple type by the
linear constraint n1*tau + n2*tau' = d1 + d2 together with
alpha = tau - tau'.  This module converts between alpha and tau, lists the
block slopes of a covariantly constant triple, applies the transform slope
map mu -> -1/mu blockwise, decides solvability of the transformed vortex
equations, and builds the explicit block triple demonstrating that
polystability is not preserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Tuple

from .errors import (
    Indeterminate,
    MixedSigns,
    NonPositiveAlpha,
    NotRepresentable,
    SlopeOrder,
)
from .invariants import ChernPair, ITIndex, Rational
from .triples import TripleType

__all__ = [
    "VortexParams",
    "CovConstTriple",
    "BlockTriple",
    "NOT_POLYSTABLE_AFTER_TRANSFORM",
    "NahmCovConst",
    "tau_from_alpha",
    "alpha_from_tau",
    "params_for_taus",
    "cov_const_slopes",
    "nahm_cov_const",
    "polystability_counterexample",
    "vanishing_check",
]

NOT_POLYSTABLE_AFTER_TRANSFORM = "NOT_POLYSTABLE_AFTER_TRANSFORM"

KER_PHI_STAR = "KER_PHI_STAR"
ISO_PAIR = "ISO_PAIR"
KER_PHI = "KER_PHI"


@dataclass(frozen=True)
class VortexParams:
    """Exact vortex parameters of a triple type.

    Invariants: n1*tau + n2*tau' = d1 + d2 and alpha = tau - tau'.
    """

    tau: Rational
    tau_prime: Rational
    alpha: Rational
    triple: TripleType

    def __post_init__(self) -> None:
        t = self.triple
        if t.n1 * self.tau + t.n2 * self.tau_prime != t.d1 + t.d2:
            raise ValueError("n1*tau + n2*tau' != d1 + d2")
        if self.tau - self.tau_prime != self.alpha:
            raise ValueError("alpha != tau - tau'")


@dataclass(frozen=True)
class CovConstTriple:
    """Block data of a covariantly constant triple.

    ``lambda_over_pi`` is the common eigenvalue of Phi Phi* on the
    isomorphic middle part, stored as the exact rational coefficient of pi:
    lambda = pi * (tau - tau').
    """

    ker_phi_star: Optional[ChernPair]
    prime_part: Optional[ChernPair]
    ker_phi: Optional[ChernPair]
    lambda_over_pi: Rational
    slopes: Tuple[Rational, Rational, Rational]


@dataclass(frozen=True)
class BlockTriple:
    """Direct-sum decomposition (F1,0,0) + (F,F,Id) + (0,F2,0)."""

    blocks: Tuple[Tuple[str, ChernPair], ...]

    def triple_type(self) -> TripleType:
        n1 = n2 = d1 = d2 = 0
        for kind, pair in self.blocks:
            if kind in (KER_PHI_STAR, ISO_PAIR):
                n1 += pair.rank
                d1 += pair.degree
            if kind in (KER_PHI, ISO_PAIR):
                n2 += pair.rank
                d2 += pair.degree
        return TripleType(n1, n2, d1, d2)


@dataclass(frozen=True)
class NahmCovConst:
    """Result of the transform slope map on a covariantly constant triple."""

    transformed: CovConstTriple
    solvable: bool
    tau_hat: Optional[Rational]


def tau_from_alpha(t: TripleType, alpha: Rational) -> VortexParams:
    """tau = (d1+d2+n2*alpha)/(n1+n2), tau' = (d1+d2-n1*alpha)/(n1+n2)."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise NonPositiveAlpha("alpha must be positive")
    total = t.n1 + t.n2
    tau = Fraction(t.d1 + t.d2 + t.n2 * alpha, 1) / total
    tau_prime = Fraction(t.d1 + t.d2 - t.n1 * alpha, 1) / total
    return VortexParams(tau=tau, tau_prime=tau_prime, alpha=alpha, triple=t)


def params_for_taus(tau: Rational, tau_prime: Rational) -> VortexParams:
    """VortexParams over a canonical triple realizing arbitrary (tau, tau').

    Uses ranks equal to a common denominator q, so d1 + d2 = q(tau + tau')
    is an integer; handy for slope-map grids where no specific triple is
    given.
    """
    tau, tau_prime = Fraction(tau), Fraction(tau_prime)
    q = tau.denominator * tau_prime.denominator // gcd(
        tau.denominator, tau_prime.denominator
    )
    total = int(q * (tau + tau_prime))
    t = TripleType(q, q, total, 0)
    return VortexParams(tau=tau, tau_prime=tau_prime, alpha=tau - tau_prime,
                        triple=t)


def alpha_from_tau(t: TripleType, tau: Rational) -> VortexParams:
    """Inverse of tau_from_alpha: alpha = ((n1+n2)*tau - d1 - d2)/n2."""
    tau = Fraction(tau)
    alpha = Fraction((t.n1 + t.n2) * tau - t.d1 - t.d2, t.n2)
    if alpha <= 0:
        raise NonPositiveAlpha("resulting alpha is not positive")
    return tau_from_alpha(t, alpha)


def cov_const_slopes(v: VortexParams,
                     ker_phi_star: Optional[ChernPair] = None,
                     prime_part: Optional[ChernPair] = None,
                     ker_phi: Optional[ChernPair] = None) -> CovConstTriple:
    """Block slopes (tau, (tau+tau')/2, tau') and lambda = pi*(tau-tau')."""
    tau, tau_prime = v.tau, v.tau_prime
    return CovConstTriple(
        ker_phi_star=ker_phi_star,
        prime_part=prime_part,
        ker_phi=ker_phi,
        lambda_over_pi=tau - tau_prime,
        slopes=(tau, (tau + tau_prime) / 2, tau_prime),
    )


def nahm_cov_const(c: CovConstTriple, v: VortexParams) -> NahmCovConst:
    """Apply the slope map mu -> -1/mu blockwise and decide solvability.

    The transformed vortex equations admit a covariantly constant solution
    on the transform iff tau = tau', equivalently iff the harmonic mean
    -2/(tau+tau') of the outer transformed slopes equals their midpoint.
    """
    tau, tau_prime = v.tau, v.tau_prime
    if tau == 0 or tau_prime == 0 or (tau > 0) != (tau_prime > 0):
        raise MixedSigns("tau and tau' must be nonzero with the same sign")
    hat_slopes = (Fraction(-1) / tau, Fraction(-2) / (tau + tau_prime), Fraction(-1) / tau_prime)
    transformed = CovConstTriple(
        ker_phi_star=None,
        prime_part=None,
        ker_phi=None,
        lambda_over_pi=hat_slopes[0] - hat_slopes[2],
        slopes=hat_slopes,
    )
    solvable = tau == tau_prime
    return NahmCovConst(
        transformed=transformed,
        solvable=solvable,
        tau_hat=hat_slopes[0] if solvable else None,
    )


def _minimal_pair(mu: Rational, bound: int = 1000) -> ChernPair:
    """Minimal-denominator coprime (rank, degree) with the given slope."""
    mu = Fraction(mu)
    if mu == 0:
        raise NotRepresentable("slope 0 needs degree 0, which is excluded")
    pair = ChernPair(mu.denominator, mu.numerator)
    if pair.rank > bound:
        raise NotRepresentable(f"denominator exceeds search bound {bound}")
    return pair


def polystability_counterexample(mu1: Rational, mu2: Rational) -> Tuple[BlockTriple, str]:
    """Explicit polystable block triple whose transform is not polystable.

    Realizes F1, F2 with slopes mu1 > mu2 and F with the average slope by
    minimal-denominator coprime pairs, so the block slopes are exactly
    (tau, (tau+tau')/2, tau') for tau = mu1, tau' = mu2; the transformed
    vortex equations are then unsolvable because tau != tau'.
    """
    mu1, mu2 = Fraction(mu1), Fraction(mu2)
    if mu1 <= mu2:
        raise SlopeOrder("mu1 > mu2 is required")
    f1 = _minimal_pair(mu1)
    f_mid = _minimal_pair((mu1 + mu2) / 2)
    f2 = _minimal_pair(mu2)
    degs = (f1.degree, f_mid.degree, f2.degree)
    if not (all(d > 0 for d in degs) or all(d < 0 for d in degs)):
        raise NotRepresentable("block degrees do not have a uniform sign")
    blocks = BlockTriple((
        (KER_PHI_STAR, f1),
        (ISO_PAIR, f_mid),
        (KER_PHI, f2),
    ))
    t = blocks.triple_type()
    v = tau_from_alpha(t, mu1 - mu2)
    assert v.tau == mu1 and v.tau_prime == mu2
    result = nahm_cov_const(cov_const_slopes(v, f1, f_mid, f2), v)
    if result.solvable:
        raise SlopeOrder("degenerate input: transform unexpectedly solvable")
    return blocks, NOT_POLYSTABLE_AFTER_TRANSFORM


def vanishing_check(v: VortexParams, phi_norm_sq_max: Rational) -> ITIndex:
    """Index verdict from the curvature sign pattern of the vortex equations.

    IT_0 when tau, tau' > 0 (the curvature term 2*pi*tau dominates the
    nonnegative Phi Phi*), IT_1 in the mirrored negative case.
    """
    if Fraction(phi_norm_sq_max) < 0:
        raise ValueError("phi_norm_sq_max must be non-negative")
    if v.tau > 0 and v.tau_prime > 0:
        return ITIndex(0)
    if v.tau < 0 and v.tau_prime < 0:
        return ITIndex(1)
    raise Indeterminate("tau and tau' do not share a strict sign")
