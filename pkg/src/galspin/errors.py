"""Exception types shared across the package."""


class GalspinError(Exception):
    """Base class for all package errors."""


class StructureError(GalspinError):
    """Operands are structurally incompatible (mode dimension, basis, shape)."""


class InputError(GalspinError):
    """An argument violates a documented precondition."""


class UnsupportedCaseError(GalspinError):
    """The requested computation is outside the supported regime."""


class ConsistencyError(GalspinError):
    """An internal invariant failed; indicates a bug, not bad input."""


class ClassificationConflict(GalspinError):
    """A field component couples through both matrix symmetry sectors."""

    def __init__(self, components):
        self.components = tuple(components)
        super().__init__(
            f"components {self.components} couple through both the symmetric "
            f"and antisymmetric sectors"
        )


class ConfigError(GalspinError):
    """Configuration file is malformed; message carries line/field context."""
