"""
Configuración de ejecución del CLI (JSON)
"""
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .geometry import CpwGeometry, PackageDoF, SubstrateStack
from .network import FrequencyGrid
from .parasitics import ParasiticNetwork
from .sweep import SweepAxis
from .varactor import MeanderSpec, PlateSpec


_STRICT = ConfigDict(extra="forbid")


class FrequencyGridConfig(BaseModel):
    model_config = _STRICT

    start_hz: float = Field(gt=0)
    stop_hz: float = Field(gt=0)
    points: int = Field(ge=1)

    @model_validator(mode="after")
    def check_order(self) -> "FrequencyGridConfig":
        if self.points > 1 and self.stop_hz <= self.start_hz:
            raise ValueError("stop_hz must be greater than start_hz")
        return self

    def build(self) -> FrequencyGrid:
        return FrequencyGrid.linspace(self.start_hz, self.stop_hz, self.points)


class SweepConfig(BaseModel):
    model_config = _STRICT

    axes: List[SweepAxis] = Field(min_length=1)
    objective_frequency_hz: float = Field(default=5e9, gt=0)
    trend_dofs: Optional[List[str]] = None
    trend_points: int = Field(default=5, ge=3)
    workers: Optional[int] = Field(default=None, ge=1)


class VaractorConfig(BaseModel):
    model_config = _STRICT

    plate: PlateSpec
    meander: MeanderSpec
    biases: List[float] = Field(default_factory=lambda: [0.0])
    loss_conductance: float = Field(ge=0)
    topology: Literal["series", "shunt"] = "series"
    compose_bias_v: float = Field(default=0.0, ge=0)
    parasitics: ParasiticNetwork = Field(default_factory=ParasiticNetwork)
    proximity_length_um: Optional[float] = Field(default=None, gt=0)


class IoConfig(BaseModel):
    model_config = _STRICT

    output_dir: str = Field(default="out", min_length=1)
    sweep_csv: str = Field(default="sweep.csv", min_length=1)
    trend_summary: str = Field(default="trend_summary.txt", min_length=1)
    uncapped_s2p: str = Field(default="uncapped.s2p", min_length=1)
    capped_s2p: str = Field(default="capped.s2p", min_length=1)
    display_prefix: str = Field(default="display", min_length=1)
    comparison_json: str = Field(default="comparison.json", min_length=1)
    audit_json: str = Field(default="audit.json", min_length=1)
    cv_csv: str = Field(default="cv.csv", min_length=1)
    pull_in_json: str = Field(default="pull_in.json", min_length=1)


class RunConfig(BaseModel):
    """Configuración completa; `preset` aporta geometry/stack/dof faltantes"""

    model_config = _STRICT

    preset: Optional[str] = None
    geometry: Optional[CpwGeometry] = None
    stack: Optional[SubstrateStack] = None
    dof: Optional[PackageDoF] = None
    frequency_grid: FrequencyGridConfig = Field(
        default_factory=lambda: FrequencyGridConfig(start_hz=0.5e9, stop_hz=10e9, points=20)
    )
    sweep: Optional[SweepConfig] = None
    varactor: Optional[VaractorConfig] = None
    io: IoConfig = Field(default_factory=IoConfig)

    @model_validator(mode="after")
    def check_geometry_source(self) -> "RunConfig":
        if self.preset is None and None in (self.geometry, self.stack, self.dof):
            raise ValueError("geometry, stack and dof are required when no preset is given")
        return self
