"""
Exception hierarchy for spingate.

Library code raises these; only the CLI turns them into exit codes.
"""

from typing import Any, Dict, Optional


class SpinGateError(Exception):
    """Base class for all spingate errors."""

    exit_code = 1


class ArgumentError(SpinGateError, ValueError):
    """An argument is outside its accepted range."""

    exit_code = 2


class DomainError(SpinGateError, ValueError):
    """A function was evaluated outside its mathematical domain."""

    exit_code = 3


class ConfinementError(DomainError):
    """The drive field does not exceed the anisotropy, so the target cannot flip."""


class InfeasibleError(SpinGateError):
    """Gate conditions have no solution for the requested integers or parameters."""

    exit_code = 4


class NumericError(SpinGateError, ArithmeticError):
    """A numerical procedure failed."""

    exit_code = 3


class IntegrationError(NumericError):
    """The integrator produced a non-finite state."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} (t={t:.17g})")
        self.t = t


class TurningPointError(NumericError):
    """No turning point of the quartic first integral could be bracketed."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class SeparatrixError(NumericError):
    """The orbit sits on a double root of the first integral (infinite period)."""
