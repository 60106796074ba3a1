"""Exception hierarchy shared by every module."""


class SumprodError(Exception):
    """Base class for all errors raised by this package."""


class ZeroInput(SumprodError, ValueError):
    pass


class BudgetExceeded(SumprodError):
    """Projected work or cardinality exceeds the configured budget."""


class ParseError(SumprodError, ValueError):
    pass


class EmptyStarSet(SumprodError, ValueError):
    """The set has no nonzero element."""


class EmptySet(SumprodError, ValueError):
    pass


class DimensionMismatch(SumprodError, ValueError):
    pass


class UnknownClaim(SumprodError, KeyError):
    pass


class ParamError(SumprodError, ValueError):
    pass


class MissingParam(ParamError):
    pass


class UnexpectedParam(ParamError):
    pass


class PremiseViolated(SumprodError):
    """The instance does not satisfy the hypotheses of the claim."""


class InvalidSpec(SumprodError, ValueError):
    pass
