# Data models for matrix spaces, certificates, extensions and reports

from .space import (
    MatrixSpace,
    BlowupPoint,
    Window,
    ShrunkSubspace,
    Certificate
)

from .extensions import (
    CyclicExtension,
    AswLevel,
    AswTower,
    DivisionAlgebraBasis
)

from .reports import (
    CheckResult,
    VerificationReport,
    RunStatistics,
    TraceEntry,
    ErrorLogEntry
)

from .files import (
    FieldSpecModel,
    SpaceFile,
    PointFile,
    SubspaceModel,
    CertificateFile,
    ExtensionFile
)

__all__ = [
    # Space Models
    "MatrixSpace",
    "BlowupPoint",
    "Window",
    "ShrunkSubspace",
    "Certificate",

    # Extension Models
    "CyclicExtension",
    "AswLevel",
    "AswTower",
    "DivisionAlgebraBasis",

    # Report Models
    "CheckResult",
    "VerificationReport",
    "RunStatistics",
    "TraceEntry",
    "ErrorLogEntry",

    # File Models
    "FieldSpecModel",
    "SpaceFile",
    "PointFile",
    "SubspaceModel",
    "CertificateFile",
    "ExtensionFile",
]
