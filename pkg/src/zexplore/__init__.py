"""Double-precision exploration of zeta argument and magnitude identities."""

from .complexfn import DEFAULT_CONFIG, ComplexPoint, EvalConfig
from .errors import (
    AccuracyError,
    DomainError,
    NonIntegerResidual,
    OverflowGuard,
    PoleError,
    SingularGuard,
    ZExploreError,
)

__version__ = "0.1.0"
