"""Custom application exceptions with exit-code mapping."""

from typing import Any, Dict, Optional


class CoxcentError(Exception):
    """Base exception for all application errors."""

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ) -> None:
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}


class InputError(CoxcentError):
    """Problems with user-supplied documents or arguments."""
    exit_code = 2


class ParseError(InputError):
    """Input document could not be parsed; details carry the location."""
    pass


class ConfigurationError(InputError):
    """Configuration related errors."""
    pass


class BudgetExceededError(CoxcentError):
    """A configured computation budget was exhausted."""
    exit_code = 3


class FieldTooLargeError(BudgetExceededError):
    """The lcm of the bond labels exceeds the configured bound."""
    pass


class GraphTooLargeError(BudgetExceededError):
    """The groupoid graph exceeds the vertex budget."""
    pass


class GroupTooLargeError(BudgetExceededError):
    """Brute-force enumeration exceeded the group order cap."""
    pass


class InvariantViolation(CoxcentError):
    """A structural identity failed to hold; always a bug."""
    exit_code = 4


class PreconditionError(CoxcentError):
    """An operation was called outside its domain."""
    exit_code = 4


class NotFiniteTypeError(PreconditionError):
    """A subset required to be of finite type is not."""
    pass
