"""
Opciones de archivo Touchstone v1
"""
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


FREQUENCY_MULTIPLIERS = {"HZ": 1.0, "KHZ": 1e3, "MHZ": 1e6, "GHZ": 1e9}
UNIT_LABELS = {"HZ": "Hz", "KHZ": "kHz", "MHZ": "MHz", "GHZ": "GHz"}


class TouchstoneOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    frequency_unit: Literal["Hz", "kHz", "MHz", "GHz"] = "GHz"
    parameter_kind: Literal["S"] = "S"
    number_format: Literal["RI", "MA", "DB"] = "MA"
    reference_resistance: float = Field(default=50.0, gt=0)

    @property
    def multiplier(self) -> float:
        return FREQUENCY_MULTIPLIERS[self.frequency_unit.upper()]

    def option_line(self) -> str:
        return f"# {self.frequency_unit} {self.parameter_kind} {self.number_format} R {self.reference_resistance:g}"

    def with_format(self, number_format: str) -> "TouchstoneOptions":
        return self.model_copy(update={"number_format": number_format.upper()})
