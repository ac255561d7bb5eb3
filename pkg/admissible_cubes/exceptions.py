"""
Exception classes for the admissible-cubes library.
"""

from typing import Optional, Tuple


class CubeAlgebraError(Exception):
    """Base exception class for the admissible-cubes library."""
    pass


class ValidationError(CubeAlgebraError):
    """Raised when input validation fails."""
    pass


class SchemaError(ValidationError):
    """Raised when an instance file does not match its schema."""
    pass


class RingMismatchError(ValidationError):
    """Raised when operands belong to different coefficient rings."""
    pass


class ShapeError(ValidationError):
    """Raised when matrix dimensions or cube keys do not fit together."""
    pass


class LimitExceededError(ValidationError):
    """Raised when an instance is larger than the configured caps allow."""
    pass


class IllDefinedMorphismError(CubeAlgebraError):
    """Raised when a matrix does not respect the relations of its source."""
    pass


class NotAChainComplexError(CubeAlgebraError):
    """Raised when boundaries do not compose to zero or a chain map does not commute."""
    pass


class PatchingError(CubeAlgebraError):
    """Raised when a family of cubes violates the patching condition."""

    def __init__(self, message: str, subset: Optional[Tuple[str, ...]] = None,
                 label: Optional[str] = None, key: Optional[str] = None):
        super().__init__(message)
        self.subset = subset
        self.label = label
        self.key = key


class AdjugateError(CubeAlgebraError):
    """Raised when adjugate data has the wrong shape or cannot be constructed."""
    pass


class LatticeError(CubeAlgebraError):
    """Raised when a join or meet does not exist."""
    pass


class LatticeOverflowError(LatticeError):
    """Raised when a lattice closure grows past its element cap."""
    pass
