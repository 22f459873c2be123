"""Exception hierarchy shared across the package."""

__all__ = [
    "NahmTriplesError",
    "ZeroRank",
    "NotIT",
    "DegreeZero",
    "EmptyModuli",
    "UnboundedWindow",
    "NonPositiveAlpha",
    "MixedSigns",
    "SlopeOrder",
    "NotRepresentable",
    "Indeterminate",
    "BadGrid",
    "GapTooSmall",
    "BoundaryCheckFailed",
    "SingularOverlap",
    "ShapeMismatch",
    "Inconsistent",
    "Unsupported",
    "UnsupportedFormat",
]


class NahmTriplesError(Exception):
    """Base class for all domain errors raised by this package."""


# -- symbolic invariants ----------------------------------------------------

class ZeroRank(NahmTriplesError):
    """A bundle class or triple with zero total rank where rank > 0 is needed."""


class NotIT(NahmTriplesError):
    """Degree-0 summand or mixed degree signs: no index-theorem class."""


class DegreeZero(NahmTriplesError):
    """Degree 0 is excluded everywhere (torsion transforms are out of scope)."""


# -- triple stability -------------------------------------------------------

class EmptyModuli(NahmTriplesError):
    """mu1 < mu2: the stability window is empty."""


class UnboundedWindow(NahmTriplesError):
    """n1 = n2 gives alpha_M = infinity; a finite cap is required."""


class NonPositiveAlpha(NahmTriplesError):
    """The stability parameter must be strictly positive."""


# -- vortex calculus --------------------------------------------------------

class MixedSigns(NahmTriplesError):
    """tau and tau' must be both positive or both negative (IT hypothesis)."""


class SlopeOrder(NahmTriplesError):
    """mu1 > mu2 is required."""


class NotRepresentable(NahmTriplesError):
    """No uniform-sign coprime (rank, degree) realization exists."""


class Indeterminate(NahmTriplesError):
    """Neither vanishing sign pattern holds; no IT verdict possible."""


# -- spectral layer ---------------------------------------------------------

class BadGrid(NahmTriplesError):
    """Grid too small for the requested degree (flux per plaquette >= pi)."""


class GapTooSmall(NahmTriplesError):
    """Near-kernel not separated from the rest of the spectrum."""


class BoundaryCheckFailed(NahmTriplesError):
    """Dual-lattice identification unitaries failed their self-check."""


class SingularOverlap(NahmTriplesError):
    """A link overlap matrix is numerically rank-deficient."""


class ShapeMismatch(NahmTriplesError):
    """Incompatible sweep shapes or morphism data."""


class Inconsistent(NahmTriplesError):
    """Numerical kernel/cokernel pattern contradicts the symbolic prediction."""


class Unsupported(NahmTriplesError):
    """Requested computation is outside the supported scope."""


# -- cli --------------------------------------------------------------------

class UnsupportedFormat(NahmTriplesError):
    """Unknown serialization format."""
