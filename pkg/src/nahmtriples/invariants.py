"""Exact arithmetic of bundle invariants on an elliptic curve.

Everything here is pure, exact (``fractions.Fraction``) and immutable:
Chern pairs (rank, degree), formal polystable classes, the index of a
transform-concentrated bundle, and the action of the Fourier-Mukai
transform on these invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Tuple

from .errors import DegreeZero, NotIT, ZeroRank

Rational = Fraction

__all__ = [
    "Rational",
    "ChernPair",
    "Summand",
    "BundleClass",
    "ITIndex",
    "ModuliDescriptor",
    "slope",
    "it_class",
    "fm_transform_class",
    "moduli_descriptor",
]


@dataclass(frozen=True, order=True)
class ChernPair:
    """Topological invariants (rank, degree) of a bundle on the curve."""

    rank: int
    degree: int

    def slope(self) -> Rational:
        if self.rank == 0:
            raise ZeroRank("slope undefined for rank 0")
        return Fraction(self.degree, self.rank)

    def __str__(self) -> str:
        return f"({self.rank},{self.degree})"


@dataclass(frozen=True)
class Summand:
    """A stable summand with multiplicity and optional dual-curve point."""

    pair: ChernPair
    multiplicity: int = 1
    point: Optional[complex] = None

    def __post_init__(self) -> None:
        if self.multiplicity <= 0:
            raise ValueError("multiplicity must be positive")
        # degree-0 summands are representable (so the transform can reject
        # them with the right error) but never stable
        if self.pair.degree != 0 and gcd(self.pair.rank, self.pair.degree) != 1:
            raise ValueError(
                f"summand {self.pair} is not stable: gcd(rank, degree) > 1"
            )


@dataclass(frozen=True)
class BundleClass:
    """Formal polystable class: a multiset of stable summands."""

    summands: Tuple[Summand, ...]
    semistable: bool = False

    def __post_init__(self) -> None:
        if not self.summands:
            raise ZeroRank("a bundle class needs at least one summand")
        if self.total_rank() <= 0:
            raise ZeroRank("total rank must be positive")
        if self.semistable:
            slopes = {s.pair.slope() for s in self.summands}
            if len(slopes) > 1:
                raise ValueError("semistable class must have equal summand slopes")

    @staticmethod
    def of(rank: int, degree: int, point: Optional[complex] = None) -> "BundleClass":
        return BundleClass((Summand(ChernPair(rank, degree), 1, point),))

    @staticmethod
    def direct_sum(*pairs: Tuple[int, int]) -> "BundleClass":
        return BundleClass(tuple(Summand(ChernPair(r, d)) for r, d in pairs))

    def total_rank(self) -> int:
        return sum(s.multiplicity * s.pair.rank for s in self.summands)

    def total_degree(self) -> int:
        return sum(s.multiplicity * s.pair.degree for s in self.summands)


@dataclass(frozen=True)
class ITIndex:
    """Index i of a transform concentrated in a single degree (0 or 1)."""

    index: int

    def __post_init__(self) -> None:
        if self.index not in (0, 1):
            raise ValueError("index must be 0 or 1")

    def flipped(self) -> "ITIndex":
        return ITIndex(1 - self.index)

    def __int__(self) -> int:
        return self.index

    def __str__(self) -> str:
        return f"IT_{self.index}"


@dataclass(frozen=True)
class ModuliDescriptor:
    """The moduli space of semistable bundles of fixed (rank, degree)."""

    rank: int
    degree: int
    h: int
    description: str = field(default="")
    all_stable: bool = field(default=False)

    def __post_init__(self) -> None:
        if not self.description:
            object.__setattr__(self, "description", f"S^{self.h} C")
        object.__setattr__(self, "all_stable", self.h == 1)


def slope(b: BundleClass) -> Rational:
    """Total degree over total rank, exactly."""
    r = b.total_rank()
    if r == 0:
        raise ZeroRank("total rank is 0")
    return Fraction(b.total_degree(), r)


def it_class(b: BundleClass) -> ITIndex:
    """Index 0 if all summand degrees are positive, 1 if all negative."""
    degs = [s.pair.degree for s in b.summands]
    if any(d == 0 for d in degs):
        raise NotIT("a summand has degree 0")
    if all(d > 0 for d in degs):
        return ITIndex(0)
    if all(d < 0 for d in degs):
        return ITIndex(1)
    raise NotIT("summand degrees have mixed signs")


def _transform_pair(pair: ChernPair, i: int) -> ChernPair:
    # (r, d) -> ((-1)^i d, (-1)^{i+1} r); the sign keeps the rank positive.
    s = 1 if i == 0 else -1
    return ChernPair(s * pair.degree, -s * pair.rank)


def fm_transform_class(b: BundleClass) -> Tuple[BundleClass, ITIndex]:
    """Transform every summand (r, d) -> (-1)^i (d, -r); index flips downstream."""
    i = it_class(b)
    new = tuple(
        Summand(_transform_pair(s.pair, i.index), s.multiplicity, s.point)
        for s in b.summands
    )
    return BundleClass(new, semistable=b.semistable), i


def moduli_descriptor(r: int, d: int) -> ModuliDescriptor:
    """Semistable moduli of type (r, d): the h-th symmetric product, h = gcd."""
    if r <= 0:
        raise ZeroRank("rank must be positive")
    if d == 0:
        raise DegreeZero("degree 0 is excluded")
    h = gcd(r, abs(d))
    return ModuliDescriptor(rank=r, degree=d, h=h)
