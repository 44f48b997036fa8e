"""Exception hierarchy shared by all modules."""


class CalculusError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DimensionMismatch(CalculusError):
    pass


class UnknownSpace(CalculusError):
    pass


class NotFourierMapped(CalculusError):
    pass


class NotAdmissible(CalculusError):
    pass


class NoKnownWitness(CalculusError):
    pass


class NotSupported(CalculusError):
    pass


class MembershipError(CalculusError):
    """A function is outside the space a seminorm or operation requires."""


class GridError(CalculusError):
    """The evaluation grid cannot represent the function faithfully."""


class NonIntegrable(CalculusError):
    pass


class ParseError(CalculusError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
