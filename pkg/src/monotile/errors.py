"""Exceptions shared by more than one module."""


class ParameterOutOfRangeError(ValueError):
    """Parameter outside the range the operation's formulas cover."""
