"""Exception types shared across the package."""

from __future__ import annotations


class QuadOdeError(Exception):
    """Base class for every error raised by quadode."""


class NotAPerfectSquare(QuadOdeError):
    pass


class ParseError(QuadOdeError):
    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"at offset {position}: {message}")


class DegreeOverflow(ParseError):
    pass


class ZeroRadicand(ParseError):
    pass


class NotInFamily(QuadOdeError):
    """Raised by recognition; ``residual`` is the mismatch polynomial (may be None)."""

    def __init__(self, message: str, residual=None):
        self.residual = residual
        super().__init__(message)


class RadicandNegative(QuadOdeError):
    def __init__(self, t: float, value: float):
        self.t = t
        self.value = value
        super().__init__(f"radicand B({t!r}) = {value!r} < 0")


class RadicandNonPositive(QuadOdeError):
    def __init__(self, t: float, message: str | None = None):
        self.t = t
        super().__init__(message or f"radicand is not positive at t = {t!r}")


class ToleranceNotMet(QuadOdeError):
    def __init__(self, estimate: float, error: float, message: str | None = None):
        self.estimate = estimate
        self.error = error
        super().__init__(message or f"quadrature error estimate {error:.3e} above tolerance")


class InversionBracketFailure(QuadOdeError):
    """The target abscissa lies beyond the image reachable from the anchor.

    ``supremum`` is the furthest x actually reached, ``y_reached`` the ordinate there.
    """

    def __init__(self, target: float, supremum: float, y_reached: float, reason: str):
        self.target = target
        self.supremum = supremum
        self.y_reached = y_reached
        self.reason = reason
        super().__init__(
            f"cannot reach x = {target!r}: {reason}; furthest x reached {supremum!r} at y = {y_reached!r}"
        )


class StepUnderflow(QuadOdeError):
    def __init__(self, x: float, y: float):
        self.x = x
        self.y = y
        super().__init__(f"oracle state left the B >= 0 domain at x = {x!r} (y = {y!r})")


class DomainError(QuadOdeError, ValueError):
    pass


class CrossCheckFailure(QuadOdeError):
    def __init__(self, numeric: float, carlson: float):
        self.numeric = numeric
        self.carlson = carlson
        super().__init__(f"quadrature {numeric!r} and Carlson reduction {carlson!r} disagree")


class UnknownEntry(QuadOdeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ParamDomainError(QuadOdeError, ValueError):
    pass
