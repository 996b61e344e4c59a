"""
Modelos del varactor RF-MEMS: placa rígida, meandros y punto de operación
"""
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field


_RECORD_CONFIG = ConfigDict(frozen=True, extra="forbid")


class PlateSpec(BaseModel):
    """Placa central (SI)"""

    model_config = _RECORD_CONFIG

    area: float = Field(gt=0)                         # m²
    initial_gap: float = Field(gt=0)                  # m
    dielectric_thickness: float = Field(ge=0)         # m
    dielectric_permittivity: float = Field(default=7.5, ge=1)

    @property
    def g0(self) -> float:
        return self.initial_gap


class MeanderSegment(BaseModel):
    model_config = _RECORD_CONFIG

    length: float = Field(gt=0)
    width: float = Field(gt=0)
    thickness: float = Field(gt=0)


class MeanderSpec(BaseModel):
    model_config = _RECORD_CONFIG

    meander_count: int = Field(default=4, ge=1)
    segments: List[MeanderSegment] = Field(min_length=1)
    youngs_modulus: float = Field(gt=0)               # Pa


class OperatingPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    bias: float
    displacement: float = Field(ge=0)
    capacitance: float = Field(gt=0)               # inf en contacto óhmico (sin dieléctrico)
    state: Literal["up", "pulled_in"]


CV_HEADER = ["bias_v", "displacement_m", "capacitance_f", "state"]
