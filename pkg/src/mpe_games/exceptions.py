"""
Exception classes for MPE Games.
"""

from typing import Optional


class MpeGamesError(Exception):
    """Base exception for MPE Games errors"""
    pass


class InputError(MpeGamesError):
    """Raised when an input file, flag or argument is malformed"""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ExpressionSyntaxError(InputError):
    """Raised when expression text cannot be parsed"""
    pass


class GameGraphError(InputError):
    """Raised when a game graph violates its structural invariants"""
    pass


class StrategyError(InputError):
    """Raised when a strategy is partial or does not fit its graph"""
    pass


class ConstraintSystemError(InputError):
    """Raised when a constraint system is malformed"""
    pass


class PreconditionError(MpeGamesError):
    """Raised when an operation is called outside its precondition"""
    pass


class BudgetExceededError(MpeGamesError):
    """Raised when a search budget runs out; carries the best interval found"""

    def __init__(self, message: str, interval=None):
        self.interval = interval
        super().__init__(message)


class CertificateError(MpeGamesError):
    """Raised when an internally produced certificate fails verification"""
    pass
