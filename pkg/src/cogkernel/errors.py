"""Exception hierarchy shared by every cogkernel module.

All domain errors derive from :class:`CogKernelError`; the CLI maps them to
exit code 1.
"""

from __future__ import annotations


class CogKernelError(Exception):
    """Base class for domain errors."""


# metagraph


class DanglingTarget(CogKernelError):
    pass


class ArityViolation(CogKernelError):
    pass


class UnknownAtom(CogKernelError, KeyError):
    pass


class UnknownNode(UnknownAtom):
    pass


class AtomInUse(CogKernelError):
    """Raised when removing an atom that is still targeted by an edge."""


class TooFewObservations(CogKernelError):
    pass


class ObservationSetMismatch(CogKernelError):
    pass


class ParseError(CogKernelError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# logic


class RangeError(CogKernelError, ValueError):
    pass


# simplicity


class NoFinitePrimitive(CogKernelError):
    pass


class ZeroSimplicity(CogKernelError):
    pass


class NotAProduction(CogKernelError):
    pass


class UnreachableEntity(CogKernelError):
    """An entity whose simplicity is infinite was used where a finite value is needed."""


class NotMutuallyAssociative(CogKernelError):
    def __init__(self, message: str, triple=None):
        self.triple = triple
        super().__init__(message)


class UnresolvedDagRef(CogKernelError):
    pass


class IndexOutOfRange(CogKernelError, IndexError):
    pass


# decision


class NoFeasibleAction(CogKernelError):
    pass


class StateSpaceTooLarge(CogKernelError):
    pass


class BudgetExhausted(CogKernelError):
    pass


# cogproc


class EmptyInput(CogKernelError):
    pass


# intellimetrics


class NoAdmissibleContext(CogKernelError):
    pass


class ZeroCompetence(CogKernelError):
    pass


class BudgetTooLarge(CogKernelError):
    pass


class TooFewSnapshots(CogKernelError):
    pass
