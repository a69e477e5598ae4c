"""Exception hierarchy.  The CLI maps these onto exit codes."""


class CharslopeError(Exception):
    """Base class for all engine errors."""


class FieldError(CharslopeError):
    pass


class ArityError(CharslopeError):
    pass


class InexactDivision(CharslopeError):
    """A division that the theory says is exact left a remainder."""


class PreconditionError(CharslopeError):
    pass


class DegeneratePresentation(CharslopeError):
    """Cleaning drove a_{p^e} to zero, or Sing has a codimension-one part."""


class ImpermissibleCenter(CharslopeError):
    pass


class GridError(CharslopeError):
    """A tight exponent did not land on the declared 1/s grid."""


class TheoremViolation(CharslopeError):
    """A computed value contradicts a proven identity."""


class OutOfScope(CharslopeError):
    """Input lies outside the supported regime (e.g. in(f) is not pure)."""


class InputError(CharslopeError):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message
