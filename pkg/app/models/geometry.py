"""
Modelos de geometría: CPW, pila de sustrato y grados de libertad del encapsulado
"""
import math
from enum import Enum
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator


_RECORD_CONFIG = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


class CpwGeometry(BaseModel):
    """Guía coplanar (todas las dimensiones en μm)"""

    model_config = _RECORD_CONFIG

    x_line: float = Field(gt=0, alias="length")
    signal_width: float = Field(gt=0)
    ground_width: float = Field(gt=0)
    gap: float = Field(gt=0)
    z_line: float = Field(gt=0, alias="metal_thickness")

    @property
    def footprint_width(self) -> float:
        """Ancho total señal + gaps + tierras"""
        return self.signal_width + 2 * self.gap + 2 * self.ground_width

    def with_length(self, length_um: float) -> "CpwGeometry":
        return self.model_copy(update={"x_line": length_um})

    def to_dict(self) -> dict:
        return self.model_dump()


class SubstrateStack(BaseModel):
    """Sustrato del dispositivo (μm, resistividad en Ω·cm)"""

    model_config = _RECORD_CONFIG

    x_box: float = Field(gt=0)
    y_box: float = Field(gt=0)
    z_si: float = Field(gt=0, alias="device_substrate_thickness")
    z_ox: float = Field(gt=0, alias="oxide_thickness")
    relative_permittivity: float = Field(ge=1)
    resistivity: float = Field(gt=0)

    def to_dict(self) -> dict:
        return self.model_dump()


class PackageDoF(BaseModel):
    """
    Grados de libertad tecnológicos del cap (μm, resistividad en Ω·cm).
    Las restricciones entre campos (recess < cap, via ≤ señal) las reporta validate().
    """

    model_config = _RECORD_CONFIG

    via_diameter: float = Field(gt=0)
    y_offset: float = Field(gt=0, alias="gsg_lateral_distance")
    x_offset: float = Field(gt=0, alias="via_edge_inset")
    cap_thickness: float = Field(gt=0)
    recess_depth: float = Field(ge=0)
    bump_height: float = Field(gt=0, alias="z_bump")
    via_oxide_thickness: float = Field(gt=0)
    cap_resistivity: float = Field(gt=0)

    @property
    def clearance(self) -> float:
        """Separación cap-dispositivo"""
        return self.bump_height + self.recess_depth

    def with_value(self, name: str, value: float) -> "PackageDoF":
        """Copia validada con un DoF modificado"""
        data = self.model_dump()
        data[name] = value
        return PackageDoF(**data)

    def to_dict(self) -> dict:
        return self.model_dump()


class Point3(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    z: float

    @field_validator("x", "y", "z")
    @classmethod
    def check_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("coordinate must be finite")
        return value

    def as_tuple(self) -> tuple:
        return (self.x, self.y, self.z)


class Corner(str, Enum):
    TOP_RIGHT = "TopRight"
    TOP_LEFT = "TopLeft"
    BOTTOM_RIGHT = "BottomRight"
    BOTTOM_LEFT = "BottomLeft"


class End(str, Enum):
    LEFT = "Left"
    RIGHT = "Right"


class ValidationFinding(BaseModel):
    model_config = ConfigDict(frozen=True)

    severity: Literal["error", "warning"]
    code: str
    message: str


class ValidationReport(BaseModel):
    findings: List[ValidationFinding] = []

    @property
    def errors(self) -> List[ValidationFinding]:
        return [f for f in self.findings if f.severity == "error"]

    @property
    def warnings(self) -> List[ValidationFinding]:
        return [f for f in self.findings if f.severity == "warning"]

    @property
    def has_errors(self) -> bool:
        return bool(self.errors)

    def codes(self) -> List[str]:
        return [f.code for f in self.findings]
