"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input data violates a structural invariant (normalization, sign, shape)."""


class DomainError(ValueError):
    """A parameter lies outside the domain where a formula is defined."""


class AnomalyError(RuntimeError):
    """An inequality gap fell below tolerance; indicates an implementation bug.

    The ``diagnostics`` attribute carries everything needed to reproduce the
    offending evaluation.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
