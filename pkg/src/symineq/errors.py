"""Exception hierarchy shared by every module."""


class SymineqError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SymineqError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class ParseError(SymineqError, ValueError):
    """Text input (partition, rational, point, polynomial) is malformed."""


class ResourceLimitError(SymineqError):
    """A symbolic computation was refused because it would blow up."""


class DivisibilityError(SymineqError, ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class CertificateError(SymineqError):
    """A certificate step failed.

    ``step`` names the failed step; ``index`` and ``monomial`` locate the
    offending coefficient when the failure is about a particular ``c_i``.
    """

    def __init__(self, step, message, index=None, monomial=None):
        super().__init__(message)
        self.step = step
        self.index = index
        self.monomial = monomial

    def as_dict(self):
        out = {"step": self.step, "message": str(self)}
        if self.index is not None:
            out["index"] = self.index
        if self.monomial is not None:
            out["monomial"] = self.monomial
        return out


class ClaimViolation(SymineqError):
    """Exact evidence contradicts an inequality that is proved to hold.

    This can only mean an implementation bug, so it is never swallowed.
    """

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict
