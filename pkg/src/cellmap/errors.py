"""Exception taxonomy shared across the package.

Every failure mode that a caller might want to branch on gets its own
class; the CLI maps these onto process exit codes.
"""


class CellmapError(Exception):
    """Base class for all package-specific errors."""


class UnsupportedType(CellmapError):
    """Root datum family/rank outside the supported table."""


class GroupTooLarge(CellmapError):
    """Weyl group enumeration would exceed the hard element bound."""


class ExternalTableRequired(CellmapError):
    """Requested data is only available through an ingested table."""


class TableError(CellmapError):
    """Malformed, mismatched or checksum-failing table file."""


class MLSViolation(CellmapError):
    """Minimal b-invariant constituent not unique or multiplicity != 1."""


class SpringerNormalizationError(CellmapError):
    """d_O != b_E for a special orbit, or Springer map not injective."""


class CorrespondenceGap(CellmapError):
    """A character is not in the image of the Springer correspondence."""


class OrbitLeviMismatch(CellmapError):
    """Orbit label does not belong to the given Levi factor type."""


class InsufficientTruncation(CellmapError):
    """A valuation could not be certified at the working precision."""


class DegenerateSample(CellmapError):
    """Sampled loop element fails a genericity condition; resample."""


class InconclusiveSample(CellmapError):
    """Sampling budget exhausted without a unanimous class guess."""


class DeltaMismatch(CellmapError):
    """delta invariant disagrees with the expected codimension."""


class VerificationFailure(CellmapError):
    """A two-sided identity check produced a mismatch."""


class FormViolation(CellmapError):
    """Internal consistency failure of the bilinear-form symmetry
    (unpaired eigenvalue branch, impossible class label)."""
