"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class HarmError(Exception):
    """Base class for all errors raised by harmdenom."""

    exit_code = 4


class InvalidArgumentError(HarmError, ValueError):
    exit_code = 2


class ResourceLimitError(HarmError):
    exit_code = 3


class PrecisionExhaustedError(HarmError):
    """The p-adic working precision hit its ceiling before certifying a valuation.

    ``lower_bound`` is the best proven lower bound on the valuation.
    """

    exit_code = 3

    def __init__(self, message, lower_bound):
        super().__init__(message)
        self.lower_bound = lower_bound


class SearchExhaustedError(HarmError):
    exit_code = 3

    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound


class InvariantError(HarmError):
    exit_code = 4
