"""Exception hierarchy shared by every module of the package."""


class HadamardForgeError(Exception):
    pass


class LengthMismatch(HadamardForgeError, ValueError):
    pass


class RangeOverflow(HadamardForgeError, ValueError):
    """A term-wise sum left the ternary alphabet (operands were not disjoint)."""


class ShapeError(HadamardForgeError, ValueError):
    pass


class NotNormal(HadamardForgeError, ValueError):
    pass


class NotNearNormal(HadamardForgeError, ValueError):
    pass


class InvalidBS(HadamardForgeError, ValueError):
    pass


class InvalidTS(HadamardForgeError, ValueError):
    pass


class SupportMismatch(HadamardForgeError, ValueError):
    pass


class TooLarge(HadamardForgeError, ValueError):
    pass


class MalformedCode(HadamardForgeError, ValueError):
    pass


class InvalidQuadLabel(MalformedCode):
    pass


class MalformedHex(HadamardForgeError, ValueError):
    pass


class CorruptData(HadamardForgeError):
    pass


class InvalidInput(HadamardForgeError, ValueError):
    pass


class PostconditionFailure(HadamardForgeError, AssertionError):
    """A construction produced output that fails its own defining predicate."""


class NotHadamard(HadamardForgeError, ValueError):
    pass


class SearchBudgetExceeded(HadamardForgeError):
    """The equivalence search ran out of budget; this is *not* a proof of inequivalence."""


class AcceptanceFailure(HadamardForgeError):
    pass
