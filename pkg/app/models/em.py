"""
Salidas de los modelos EM sustitutos
"""
from pydantic import BaseModel, ConfigDict, Field


class LineParams(BaseModel):
    """Parámetros de línea por unidad de longitud (SI)"""

    model_config = ConfigDict(frozen=True)

    characteristic_impedance: float = Field(gt=0)
    effective_permittivity: float = Field(ge=1)
    attenuation: float = Field(ge=0)          # Np/m
    phase_constant: float = Field(ge=0)       # rad/m
    resistance: float = Field(ge=0)           # Ω/m
    inductance: float = Field(gt=0)           # H/m
    conductance: float = Field(ge=0)          # S/m
    capacitance: float = Field(gt=0)          # F/m

    @property
    def propagation(self) -> complex:
        return complex(self.attenuation, self.phase_constant)


class ViaParasitics(BaseModel):
    """Elementos concentrados del trío GSG de vias"""

    model_config = ConfigDict(frozen=True)

    series_resistance: float = Field(ge=0)
    series_inductance: float = Field(ge=0)
    coupling_capacitance: float = Field(ge=0)
    substrate_loss_conductance: float = Field(ge=0)

    @classmethod
    def null(cls) -> "ViaParasitics":
        """Via ideal: sin resistencia, inductancia ni acoplamiento"""
        return cls(
            series_resistance=0.0,
            series_inductance=0.0,
            coupling_capacitance=0.0,
            substrate_loss_conductance=0.0,
        )
