"""Exception hierarchy.

Errors fall in three families that the command line maps to distinct exit
codes: domain errors (objects that do not fit together), refusals (inputs that
are well formed but violate a boundedness or contractivity requirement) and
parse errors.
"""


class ScaledFreeError(Exception):
    pass


class DomainError(ScaledFreeError, ValueError):
    """Objects do not fit together (mismatched domains, unknown labels, ...)."""


class UnknownLabelError(DomainError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class DomainMismatchError(DomainError):
    pass


class ParallelMismatchError(DomainMismatchError):
    pass


class BaseMismatchError(DomainMismatchError):
    pass


class InvalidNormError(DomainError):
    pass


class ZeroNormError(DomainError):
    pass


class RefusalError(ScaledFreeError, ArithmeticError):
    """A mathematical requirement (boundedness, contractivity, ...) fails."""


class UnboundedError(RefusalError):
    pass


class NotContractiveError(RefusalError):
    pass


class IrrationalNormError(RefusalError):
    pass


class ParseError(ScaledFreeError, ValueError):
    pass
