"""Exceptions shared across the package."""


class CapExceededError(ValueError):
    """A request exceeded a configured enumeration/search cap.

    Raised instead of silently attempting a computation whose cost is
    exponential in the offending argument.  The message names the cap so a
    caller can decide whether raising it is affordable.
    """
