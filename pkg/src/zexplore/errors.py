"""Exception types raised by the evaluators."""


class ZExploreError(Exception):
    pass


class PoleError(ZExploreError):
    """Evaluation point sits on (or within the guard distance of) a pole."""


class DomainError(ZExploreError):
    """Point lies outside the domain an operation is defined on."""


class AccuracyError(ZExploreError):
    """Euler-Maclaurin tail estimate exceeds the requested tolerance."""


class NonIntegerResidual(ZExploreError):
    """An angle reconciliation that should be an integer multiple of pi is not."""


class OverflowGuard(ZExploreError):
    """Requested point would overflow binary64 intermediate quantities."""


class SingularGuard(ZExploreError):
    """A guarded denominator of an identity is numerically zero."""
