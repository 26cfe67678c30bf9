"""Exception hierarchy shared by every module."""


class JetWronskError(Exception):
    """Base class for all library errors."""


class ParseError(JetWronskError, ValueError):
    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"{message} at offset {position}")


class DivisionFails(JetWronskError, ArithmeticError):
    """The numerator is not an exact multiple of the denominator."""


class TruncationMismatch(JetWronskError, ValueError):
    pass


class OrderOverflow(JetWronskError, ValueError):
    """A jet derivative would need coordinates beyond the context's order."""


class SingularPoint(JetWronskError, ValueError):
    pass


class FrameDegenerate(JetWronskError, ValueError):
    pass


class GcdError(JetWronskError, ValueError):
    pass


class TooSmall(JetWronskError, ValueError):
    pass


class IndexSetTooLarge(JetWronskError, ValueError):
    pass
