"""
Errores de Capsula con código estable y código de salida del CLI
"""
from typing import Optional


EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3


class CapsulaError(Exception):
    """Error base; `code` identifica el tipo de falla"""

    code = "error"
    exit_code = EXIT_NUMERIC

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ConfigError(CapsulaError):
    code = "config-error"
    exit_code = EXIT_CONFIG


# ── Geometría ─────────────────────────────────────────

class GeometryError(CapsulaError):
    exit_code = EXIT_VALIDATION


class InvalidGeometryError(GeometryError):
    code = "invalid-geometry"


class DegenerateGeometryError(GeometryError):
    code = "degenerate-geometry"


class UnknownPresetError(CapsulaError):
    code = "unknown-preset"
    exit_code = EXIT_CONFIG


# ── Álgebra de redes ──────────────────────────────────

class NetworkError(CapsulaError):
    exit_code = EXIT_NUMERIC


class SingularConversionError(NetworkError):
    code = "singular-conversion"


class GridMismatchError(NetworkError):
    code = "grid-mismatch"


class ReferenceMismatchError(NetworkError):
    code = "reference-mismatch"


# ── Touchstone ────────────────────────────────────────

class TouchstoneError(CapsulaError):
    exit_code = EXIT_CONFIG

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MalformedOptionLineError(TouchstoneError):
    code = "malformed-option-line"


class NonAscendingFrequencyError(TouchstoneError):
    code = "non-ascending-frequency"


class WrongColumnCountError(TouchstoneError):
    code = "wrong-column-count"


class NonNumericTokenError(TouchstoneError):
    code = "non-numeric-token"


class UnsupportedParameterError(TouchstoneError):
    code = "unsupported-parameter"


class UnsupportedVersionError(TouchstoneError):
    code = "unsupported-version"


# ── Barridos ──────────────────────────────────────────

class SweepError(CapsulaError):
    exit_code = EXIT_CONFIG


class EmptyGridError(SweepError):
    code = "empty-grid"


class AllCellsInvalidError(SweepError):
    code = "all-cells-invalid"
    exit_code = EXIT_VALIDATION


class EmptyTableError(SweepError):
    code = "empty-table"


class UnknownDofError(SweepError):
    code = "unknown-dof"


class ObjectiveFrequencyError(SweepError):
    code = "objective-frequency"


# ── Extracción ────────────────────────────────────────

class IllConditionedFitError(CapsulaError):
    code = "ill-conditioned-fit"
    exit_code = EXIT_NUMERIC
