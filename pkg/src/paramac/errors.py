"""Exception hierarchy.

Two kinds of failures are distinguished by CLI exit code: precondition
violations (bad but legal user input, exit 3) and bug signals (conditions
that a correct build can never trigger, exit 1).
"""


class ParamacError(Exception):
    exit_code = 1


class PreconditionError(ParamacError):
    """Input violates a documented precondition."""

    exit_code = 3


class InvalidType(PreconditionError):
    """Inadmissible (series, rank) combination."""


class NotJAntidominant(PreconditionError):
    """Weight has a positive coordinate at an index in J."""


class NotLengthZero(PreconditionError):
    """Element passed as pi has positive length."""


class BugSignal(ParamacError):
    """Internal consistency failure: indicates a defect, not bad input."""

    exit_code = 1


class NotDivisible(BugSignal):
    """Exact Laurent division left a remainder."""


class PoleAtSpecialization(BugSignal):
    """A coefficient has no finite limit at t=0 or t=infinity."""


class QPole(BugSignal):
    """Denominator vanishes at q=0 beyond a monomial factor."""


class EigenvalueCollision(BugSignal):
    """Spectral-vector search exhausted its safety bound."""


class TriangularityViolation(BugSignal):
    """A Y-operator mapped the monomial span outside itself."""


class FormulaMismatch(BugSignal):
    """Two formulas required to agree produced different results."""


class SingularSystem(BugSignal):
    """A linear system expected to be uniquely solvable was not."""


class NonInvertibleLeading(BugSignal):
    """Truncated series pivot has zero constant coefficient."""


class GuardExceeded(BugSignal):
    """A straightening word exceeded the rewrite guard."""


class TruncationTooSmall(BugSignal):
    """A defining relation does not fit inside the z-truncation."""
