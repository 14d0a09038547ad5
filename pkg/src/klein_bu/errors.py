class KleinBUError(ValueError):
    """Base class for precondition failures raised by this package."""


class ParseError(KleinBUError):
    pass


class NonCommuting(KleinBUError):
    """The two images do not commute, so they define no map from Z^2."""


class NotInKernel(KleinBUError):
    """A word outside ker g was given where an element of ker g is required."""

    def __init__(self, message, g_value=None):
        super().__init__(message)
        self.g_value = g_value


class NotInSigma(KleinBUError):
    pass


class PreconditionFail(KleinBUError):
    pass


class ZeroInput(KleinBUError):
    pass


class ZeroR2(KleinBUError):
    pass
