"""Exception hierarchy shared by all modman modules."""

import builtins


class ModmanError(Exception):
    """Base class for all errors raised by modman."""


class InputError(ModmanError):
    """Malformed or out-of-contract input (bad JSON, non-Hermitian matrix, trace off)."""


class DomainError(ModmanError):
    """A scalar function was evaluated outside its domain on some eigenvalue."""


class FaithfulnessError(ModmanError):
    """A density matrix has an eigenvalue below the faithfulness floor."""


class DimensionMismatch(ModmanError):
    """Operands have incompatible dimensions."""


class MajorizationError(ModmanError):
    """A vector state exceeds the requested majorization bound."""


class ConstantGeneratorError(ModmanError):
    """The centered generator vanishes although the endpoint states differ."""


class NotAttainedError(ModmanError):
    """The requested expectation coordinates lie outside the attainable range."""


class PreconditionError(ModmanError):
    """A documented precondition of an operation is violated."""


class NumericError(ModmanError):
    """A numerical routine failed fatally (eigensolver non-convergence and similar)."""


class OverflowError(ModmanError, builtins.OverflowError):
    """A matrix exponent is large enough to overflow double precision."""
