"""Exception hierarchy shared by every qcommute module."""


class QuaternionError(Exception):
    """Base class for library errors."""


class ModeError(QuaternionError):
    """Scalar modes were mixed, or an operation is unsupported in the given mode."""


class ArityError(QuaternionError, ValueError):
    """Too few operands for a product or commutator."""


class SizeLimitError(QuaternionError, ValueError):
    """Enumeration would exceed the configured permutation count."""


class PreconditionError(QuaternionError, ValueError):
    pass


class ParseError(QuaternionError, ValueError):
    """Malformed quaternion literal; ``position`` is the offending offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
