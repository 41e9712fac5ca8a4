"""Common type definitions for supermagic."""

from enum import Enum


class AlgebraKind(str, Enum):
    """Kind tag carried by every structure-constant algebra."""

    LIE = "lie"
    JORDAN = "jordan"
    COMPOSITION = "composition"
    PLAIN = "plain"


class CheckStatus(str, Enum):
    """Outcome of a single check. SKIPPED marks a check that needs another characteristic."""

    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    SKIPPED = "skipped"


class JacobiMode(str, Enum):
    """How the super Jacobi identity is checked."""

    AUTO = "auto"
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


class OutputFormat(str, Enum):
    """Supported output formats for reports, tables and algebra files."""

    JSON = "json"
    CSV = "csv"
    MARKDOWN = "md"


class CompositionName(str, Enum):
    """Catalog identifiers of the split Hurwitz (super)algebras."""

    S1 = "S1"
    S2 = "S2"
    S4 = "S4"
    S8 = "S8"
    S12 = "S12"
    S42 = "S42"

    @property
    def is_super(self) -> bool:
        return self in (CompositionName.S12, CompositionName.S42)


class IsomorphismName(str, Enum):
    """Explicit isomorphisms that can be verified."""

    PHI1 = "phi1"
    PHI2 = "phi2"
    PHI3 = "phi3"
    PSI = "psi"
    PSI_RESTRICTED = "psi-restricted"


class SimplicityVerdict(str, Enum):
    """Verdict of the simplicity test."""

    SIMPLE = "simple"
    NOT_SIMPLE = "not_simple"
    INCONCLUSIVE = "inconclusive"


# Row order of the Supermagic Square
SQUARE_ORDER: tuple[CompositionName, ...] = (
    CompositionName.S1,
    CompositionName.S2,
    CompositionName.S4,
    CompositionName.S8,
    CompositionName.S12,
    CompositionName.S42,
)
