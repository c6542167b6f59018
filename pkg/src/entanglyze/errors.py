"""Exception types raised by the library."""


class EntanglyzeError(Exception):
    """Base class for all library errors."""


class LengthMismatch(EntanglyzeError, ValueError):
    pass


class ZeroNorm(EntanglyzeError, ValueError):
    pass


class BadSize(EntanglyzeError, ValueError):
    pass


class BadNorm(EntanglyzeError, ValueError):
    pass


class BadAxis(EntanglyzeError, ValueError):
    pass


class QubitOutOfRange(EntanglyzeError, IndexError):
    pass


class DuplicateQubit(EntanglyzeError, ValueError):
    pass


class EmptyFactors(DuplicateQubit):
    """Raised for an empty correlator; subclasses DuplicateQubit so either catch works."""


class SameQubit(EntanglyzeError, ValueError):
    pass


class QubitOverlap(EntanglyzeError, ValueError):
    pass


class NuInTargets(EntanglyzeError, ValueError):
    pass


class ZeroProbabilityOutcome(EntanglyzeError, ValueError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class ZeroDenominator(EntanglyzeError, ZeroDivisionError):
    pass


class NotMaximallyEntangled(EntanglyzeError, ValueError):
    def __init__(self, message, qubit=None):
        super().__init__(message)
        self.qubit = qubit


class NotSymmetric(EntanglyzeError, ValueError):
    pass


class TooLarge(EntanglyzeError, ValueError):
    pass


class ContractViolation(EntanglyzeError, ArithmeticError):
    """A numerical post-condition failed (e.g. non-negligible imaginary residue)."""


class StateSpecError(EntanglyzeError, ValueError):
    pass
