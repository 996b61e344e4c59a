"""
Modelos de barridos del espacio de diseño y reporte de tendencias
"""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .geometry import PackageDoF


DOF_NAMES: Tuple[str, ...] = tuple(PackageDoF.model_fields.keys())


class SweepAxis(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    dof_name: str
    min: float
    max: float
    count: int = Field(ge=1)

    @model_validator(mode="after")
    def check_axis(self) -> "SweepAxis":
        if self.min > self.max:
            raise ValueError(f"axis {self.dof_name}: min > max")
        if self.dof_name not in DOF_NAMES:
            raise ValueError(f"unknown DoF '{self.dof_name}'")
        return self

    def values(self) -> List[float]:
        if self.count == 1:
            return [self.min]
        step = (self.max - self.min) / (self.count - 1)
        values = [self.min + i * step for i in range(self.count)]
        values[-1] = self.max
        return values


class SweepCell(BaseModel):
    model_config = ConfigDict(frozen=True)

    coordinates: Tuple[float, ...]
    s21_db: float
    s11_db: float


class SkippedCell(BaseModel):
    model_config = ConfigDict(frozen=True)

    coordinates: Tuple[float, ...]
    reason: str


class SweepTable(BaseModel):
    axes: List[SweepAxis]
    objective_frequency: float
    cells: List[SweepCell] = []
    skipped: List[SkippedCell] = []

    @property
    def axis_names(self) -> List[str]:
        return [a.dof_name for a in self.axes]

    @property
    def expected_cell_count(self) -> int:
        total = 1
        for axis in self.axes:
            total *= axis.count
        return total


class TrendRecord(BaseModel):
    dof_name: str
    observed_sign: Literal["+", "-", "nonmonotone"]
    expected_sign: Literal["+", "-"]
    match: bool
    values: List[float] = []
    s21_db: List[float] = []


class TrendReport(BaseModel):
    objective_frequency: float
    records: List[TrendRecord]

    @property
    def all_match(self) -> bool:
        return all(r.match for r in self.records)

    def record(self, dof_name: str) -> Optional[TrendRecord]:
        return next((r for r in self.records if r.dof_name == dof_name), None)


class ResistivityStudy(BaseModel):
    objective_frequency: float
    resistivities_ohm_cm: List[float]
    s21_db: List[float]
    recommended_ohm_cm: float
    margin_db: float
