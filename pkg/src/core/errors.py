"""
Toolkit Exceptions
==================
Every failure raised by the toolkit derives from ToolkitError (a ValueError),
carries a short machine code and, where one exists, an exact witness.
"""

from typing import Any, Optional


class ToolkitError(ValueError):
    """Base error with a machine-readable code and optional exact witness"""

    code = "ERROR"

    def __init__(self, message: str, witness: Optional[Any] = None, code: Optional[str] = None):
        super().__init__(message)
        self.witness = witness
        if code is not None:
            self.code = code


class GeometryError(ToolkitError):
    code = "INVALID_GEOMETRY"


class InfeasibleCellError(ToolkitError):
    code = "INFEASIBLE"


class DimensionMismatchError(ToolkitError):
    code = "DIMENSION_MISMATCH"


class RelationRejected(ToolkitError):
    code = "REJECTED"


class NotSurjectiveError(ToolkitError):
    code = "NOT_SURJECTIVE"


class CatalogError(ToolkitError):
    code = "UNKNOWN_EXAMPLE"


class RelationFileError(ToolkitError):
    code = "BAD_DOCUMENT"


class ConfigError(ToolkitError):
    code = "BAD_CONFIG"
