"""Exception hierarchy shared by the engines and the CLI."""


class MixedMultError(Exception):
    exit_code = 1


class InputError(MixedMultError):
    """Malformed input: bad lengths, unparsable text, wrong arity."""


class DimensionError(InputError):
    pass


class RingMismatch(InputError):
    pass


class UndefinedColon(InputError):
    pass


class PresentationError(InputError):
    pass


class PreconditionError(InputError):
    pass


class InfiniteLength(InputError):
    """A quotient whose length was requested is not of finite length."""


class UnstableRegion(MixedMultError):
    """No validated polynomial region was found below the box cap."""

    exit_code = 2

    def __init__(self, message, point=None, region=None):
        super().__init__(message)
        self.point = point
        self.region = region


class InvariantFailure(MixedMultError):
    exit_code = 3


class FitCorruption(InvariantFailure):
    """A fitted polynomial produced a non-integral or impossible invariant."""


class UndefinedInvariant(InputError, ValueError):
    """An invariant such as height or order asked of the zero or unit ideal."""
