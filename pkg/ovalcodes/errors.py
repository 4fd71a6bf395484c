"""
This file defines the exceptions raised across the package.

Every error carries the exit code the command line reports for it, so the
CLI and the HTTP blueprint can translate failures without guessing.
"""


class OvalCodesError(Exception):
    """Base class for all ovalcodes failures."""
    exit_code = 2


class ConfigError(OvalCodesError):
    pass


class FieldError(OvalCodesError):
    pass


class OvalPolyError(OvalCodesError):
    pass


class CodeError(OvalCodesError):
    pass


class PairingError(CodeError):
    pass


class HyperovalError(OvalCodesError):
    pass


class HypothesisError(OvalCodesError):
    pass


class BudgetExceededError(OvalCodesError):
    exit_code = 3


class ResourceCapError(OvalCodesError):
    exit_code = 3
