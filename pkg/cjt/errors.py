"""
    Exception hierarchy shared by the library and the command-line front end.
"""


class CJTError(Exception):
    """Base class of every error raised by this package."""


class InputError(CJTError):
    """A group, module or job description could not be parsed or is inconsistent."""


class GroupSpecError(InputError):
    pass


class ModuleSpecError(InputError):
    pass


class ModuleRelationError(ModuleSpecError):
    """The generator matrices do not respect the group multiplication."""

    def __init__(self, g, h, message=None):
        self.pair = (g, h)
        super().__init__(message or f"rho({g}) rho({h}) != rho({g}*{h})")


class SingularMatrixError(ModuleSpecError):
    pass


class LatticeError(CJTError):
    """A subgroup is not a member of the lattice, or the prime does not divide the group order."""


class ResourceLimitError(CJTError):
    """A configured cap (pairs, degree, terms, points) was exceeded."""

    def __init__(self, limit, value, message=None):
        self.limit = limit
        self.value = value
        super().__init__(message or f"resource limit {limit}={value} exceeded")


class NotNilpotentError(CJTError):
    pass


class NotUnipotentError(CJTError):
    pass


class NonFlatPointError(CJTError):
    pass


class NonConstantModuleError(CJTError):
    pass


class NonIntegralClassError(CJTError):
    pass


class NonStabilizingError(CJTError):
    pass


class InvariantViolation(CJTError):
    """A property guaranteed by the theory failed; the computation is aborted."""
