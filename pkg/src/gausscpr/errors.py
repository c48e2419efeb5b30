"""Exception types raised by the reconstruction pipeline."""


class GaussCprError(Exception):
    """Base class for all domain errors."""


class InvalidSignal(GaussCprError):
    """Signal violates its invariants (empty/zero endpoints, bad parameters)."""


class ZeroSignal(GaussCprError):
    """Operation requires a nonzero coefficient sequence."""


class DuplicatePoints(GaussCprError):
    """Sampling points are not pairwise distinct."""


class DuplicateNodes(GaussCprError):
    """Exponential nodes coincide; the linear system is singular."""


class RankDeficient(GaussCprError):
    """Nodes too close or design matrix rank-deficient."""


class InsufficientSamples(GaussCprError):
    """Fewer samples than unknowns in the moment system."""


class NonRealAutocorrelation(GaussCprError):
    """Hermitian sum produced an imaginary residue beyond tolerance (a bug)."""


class NegativeModulus(GaussCprError):
    """A squared modulus came out negative beyond the rounding tolerance."""


class InvalidLeadingCoefficient(GaussCprError):
    """Leading autocorrelation entry is not positive; support window is wrong."""


class NegativeDiscriminant(GaussCprError):
    """Square-root argument negative beyond the rounding tolerance."""


class InconsistentData(GaussCprError):
    """Data is not the autocorrelation pair of any signal on this window."""
