"""Exception types raised across the package."""

from __future__ import annotations


class PosdpError(Exception):
    """Base class for all errors raised by this package."""


class InvalidAction(PosdpError):
    """A policy returned an action that does not exist at the current state."""


class Divergent(PosdpError):
    """A partial sum or iterate exceeded the configured divergence bound."""


class NotConverged(PosdpError):
    """An iterative computation hit its stage/iteration cap before meeting tol.

    Carries the partial result in ``partial`` and the last sup-norm
    increment in ``residual``.
    """

    def __init__(self, message, partial=None, residual=None):
        super().__init__(message)
        self.partial = partial
        self.residual = residual


class SingularSystem(PosdpError):
    """The policy's linear system is singular (no absorption at beta = 1)."""


class NegativeCertificate(PosdpError):
    """An upper-bound certificate at beta = 1 contains a negative entry."""


class NotTerminating(PosdpError):
    """A policy required to reach absorption with probability 1 does not."""


class ScheduleExhausted(PosdpError):
    """No discount in the schedule produced a good enough stationary policy.

    Carries the best policy found in ``policy`` and its ``diagnostics``.
    """

    def __init__(self, message, policy=None, diagnostics=None):
        super().__init__(message)
        self.policy = policy
        self.diagnostics = diagnostics


class TooLarge(PosdpError):
    """The model exceeds the enumeration budget for brute-force solving."""


class TooDeep(PosdpError):
    """An explicit chain instance was requested beyond the depth cap."""


class OracleMismatch(PosdpError):
    """The two independent brute-force routes disagree beyond tolerance.

    Carries both value arrays as ``recursion`` and ``enumeration``.
    """

    def __init__(self, message, recursion=None, enumeration=None):
        super().__init__(message)
        self.recursion = recursion
        self.enumeration = enumeration


class ParseError(PosdpError):
    """Malformed document text; carries 1-based ``line`` and ``column``."""

    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.column = column


class UnknownState(ParseError):
    """A document names a state absent from the model."""


class UnknownAction(ParseError):
    """A document names an action absent at its state."""


class MissingState(ParseError):
    """A document that must cover every state leaves one out."""


class BadMass(ParseError):
    """A distribution document has out-of-range or non-unit total mass."""


class ValidationError(PosdpError):
    """A parsed model violates a semantic invariant; wraps the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
