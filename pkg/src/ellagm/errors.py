"""Exception hierarchy.

Input problems derive from ``InputError`` and map to CLI exit code 2;
``NonConvergence`` maps to exit code 3.
"""

from __future__ import annotations


class EllipticError(Exception):
    """Base class for every error raised by this package."""


class InputError(EllipticError, ValueError):
    """The caller supplied invalid or degenerate data."""


class ParseError(InputError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class PoleError(InputError):
    pass


class DegeneratePair(InputError):
    pass


class DegenerateLattice(InputError):
    pass


class SingularCurve(InputError):
    pass


class DegenerateCurve(InputError):
    pass


class TwoTorsionInput(InputError):
    pass


class InfinityInput(InputError):
    pass


class ComponentError(InputError):
    pass


class OffCurve(InputError):
    pass


class NonConvergence(EllipticError, ArithmeticError):
    pass


class ConsistencyError(EllipticError, RuntimeError):
    """An internal invariant failed; indicates a bug or precision loss."""


class CosetViolation(ConsistencyError):
    pass
