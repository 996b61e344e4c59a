"""
Modelos de redes de dos puertos: rejilla de frecuencia, matrices S y ABCD
"""
import math
from typing import Any, List, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def _as_complex(value: Any) -> complex:
    c = complex(value)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError("entry must be finite")
    return c


class FrequencyGrid(BaseModel):
    """Puntos de frecuencia en Hz, estrictamente ascendentes"""

    model_config = ConfigDict(frozen=True)

    points: Tuple[float, ...]

    @field_validator("points")
    @classmethod
    def check_points(cls, points: Tuple[float, ...]) -> Tuple[float, ...]:
        if not points:
            raise ValueError("frequency grid must not be empty")
        if any(not math.isfinite(f) or f <= 0 for f in points):
            raise ValueError("frequencies must be finite and > 0")
        if any(b <= a for a, b in zip(points, points[1:])):
            raise ValueError("frequencies must be strictly ascending")
        return points

    @classmethod
    def linspace(cls, start_hz: float, stop_hz: float, count: int) -> "FrequencyGrid":
        if count == 1:
            return cls(points=(float(start_hz),))
        return cls(points=tuple(float(f) for f in np.linspace(start_hz, stop_hz, count)))

    @classmethod
    def single(cls, frequency_hz: float) -> "FrequencyGrid":
        return cls(points=(float(frequency_hz),))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    @property
    def omega(self) -> np.ndarray:
        return 2.0 * np.pi * self.array

    def __len__(self) -> int:
        return len(self.points)

    def index_of(self, frequency_hz: float) -> int:
        """Índice exacto; ValueError si la frecuencia no está en la rejilla"""
        return self.points.index(frequency_hz)

    def nearest_index(self, frequency_hz: float) -> int:
        return int(np.argmin(np.abs(self.array - frequency_hz)))

    def same_as(self, other: "FrequencyGrid") -> bool:
        return self.points == other.points


class TwoPortNetwork(BaseModel):
    """Matrices S de 2×2 por punto de frecuencia (arreglo (N, 2, 2) complejo)"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: FrequencyGrid
    s: np.ndarray
    reference_impedance: float = Field(gt=0)

    @field_validator("s", mode="before")
    @classmethod
    def coerce_array(cls, value: Any) -> np.ndarray:
        return np.array(value, dtype=complex)

    @model_validator(mode="after")
    def check_shape(self) -> "TwoPortNetwork":
        s = np.asarray(self.s)
        if s.shape != (len(self.grid), 2, 2):
            raise ValueError(f"expected S shape {(len(self.grid), 2, 2)}, got {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("S entries must be finite")
        return self

    @property
    def s11(self) -> np.ndarray:
        return self.s[:, 0, 0]

    @property
    def s12(self) -> np.ndarray:
        return self.s[:, 0, 1]

    @property
    def s21(self) -> np.ndarray:
        return self.s[:, 1, 0]

    @property
    def s22(self) -> np.ndarray:
        return self.s[:, 1, 1]

    def entry(self, which: str) -> np.ndarray:
        row, col = int(which[1]) - 1, int(which[2]) - 1
        return self.s[:, row, col]

    def flipped(self) -> "TwoPortNetwork":
        """Intercambia puerto 1 y puerto 2"""
        return TwoPortNetwork(
            grid=self.grid,
            s=self.s[:, ::-1, ::-1].copy(),
            reference_impedance=self.reference_impedance,
        )

    def __repr__(self) -> str:
        return f"<TwoPortNetwork(points={len(self.grid)}, z_ref={self.reference_impedance})>"


class OnePortNetwork(BaseModel):
    """Coeficiente de reflexión por punto de frecuencia"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: FrequencyGrid
    s11: np.ndarray
    reference_impedance: float = Field(gt=0)

    @field_validator("s11", mode="before")
    @classmethod
    def coerce_array(cls, value: Any) -> np.ndarray:
        return np.array(value, dtype=complex)

    @model_validator(mode="after")
    def check_shape(self) -> "OnePortNetwork":
        s11 = np.asarray(self.s11)
        if s11.shape != (len(self.grid),):
            raise ValueError(f"expected S11 shape {(len(self.grid),)}, got {s11.shape}")
        if not np.all(np.isfinite(s11)):
            raise ValueError("S entries must be finite")
        return self

    @property
    def s(self) -> np.ndarray:
        return self.s11.reshape(-1, 1, 1)

    def __repr__(self) -> str:
        return f"<OnePortNetwork(points={len(self.grid)}, z_ref={self.reference_impedance})>"


AnyNetwork = Union[TwoPortNetwork, OnePortNetwork]


class AbcdMatrix(BaseModel):
    """Matriz de cadena [[A, B], [C, D]]"""

    model_config = ConfigDict(frozen=True)

    a: Any
    b: Any
    c: Any
    d: Any

    @field_validator("a", "b", "c", "d", mode="before")
    @classmethod
    def coerce_complex(cls, value: Any) -> complex:
        return _as_complex(value)

    @classmethod
    def from_array(cls, m: np.ndarray) -> "AbcdMatrix":
        return cls(a=m[0, 0], b=m[0, 1], c=m[1, 0], d=m[1, 1])

    @classmethod
    def identity(cls) -> "AbcdMatrix":
        return cls(a=1, b=0, c=0, d=1)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c


# ── Elementos ─────────────────────────────────────────

class SeriesImpedance(BaseModel):
    model_config = ConfigDict(frozen=True)

    z: Any

    @field_validator("z", mode="before")
    @classmethod
    def coerce_complex(cls, value: Any) -> complex:
        return _as_complex(value)


class ShuntAdmittance(BaseModel):
    model_config = ConfigDict(frozen=True)

    y: Any

    @field_validator("y", mode="before")
    @classmethod
    def coerce_complex(cls, value: Any) -> complex:
        return _as_complex(value)


class Line(BaseModel):
    """Tramo de línea: impedancia Z0, constante de propagación γ (1/m), longitud (m)"""

    model_config = ConfigDict(frozen=True)

    z0: Any
    propagation: Any
    length: float = Field(ge=0)

    @field_validator("z0", "propagation", mode="before")
    @classmethod
    def coerce_complex(cls, value: Any) -> complex:
        return _as_complex(value)

    @field_validator("z0")
    @classmethod
    def positive_z0(cls, z0: complex) -> complex:
        if z0.real <= 0:
            raise ValueError("Z0 must have a positive real part")
        return z0


ElementKind = Union[SeriesImpedance, ShuntAdmittance, Line]


class AuditReport(BaseModel):
    passive: bool
    reciprocal: bool
    max_power_gain: float

    def to_dict(self) -> dict:
        return self.model_dump()


class DisplayRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    freq_hz: float
    mag_db: float
    phase_deg: float
    smith_re: float
    smith_im: float

    def as_tuple(self) -> tuple:
        return (self.freq_hz, self.mag_db, self.phase_deg, self.smith_re, self.smith_im)


DISPLAY_HEADER: List[str] = ["freq_hz", "mag_db", "phase_deg", "smith_re", "smith_im"]
