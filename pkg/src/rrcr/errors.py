"""Exception types raised by the public API."""


class RrcrError(Exception):
    """Base class for all library errors."""


# -- graph construction ------------------------------------------------------

class EndpointOutOfRange(RrcrError):
    pass


class SelfLoop(RrcrError):
    pass


class EmptySource(RrcrError):
    pass


class GraphFormatError(RrcrError):
    """Malformed text graph file."""


# -- sampling / enumeration --------------------------------------------------

class OddDegreeSum(RrcrError):
    pass


class DegreeTooLarge(RrcrError):
    pass


class AttemptsExhausted(RrcrError):
    pass


class TooLarge(RrcrError):
    pass


class NoSuchGraph(RrcrError):
    pass


# -- refinement / canonical --------------------------------------------------

class SizeMismatch(RrcrError):
    pass


class InvalidPartition(RrcrError):
    pass


class AllEqual(RrcrError):
    """Every vertex attains the maximum triangle count; the seed split is trivial."""


# -- analysis ----------------------------------------------------------------

class NotRegular(RrcrError):
    pass


class Disconnected(RrcrError):
    pass


class EmptyOrFull(RrcrError):
    pass


class SetTooLarge(RrcrError):
    pass
