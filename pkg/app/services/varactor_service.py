"""
Modelo compacto electromecánico del varactor RF-MEMS
"""
import csv
import io
import logging
import math
from typing import Callable, Iterable, List, Literal, Optional, Tuple

import numpy as np
from scipy import optimize

from ..config import EPS0, settings
from ..exceptions import DegenerateGeometryError
from ..models.network import FrequencyGrid, TwoPortNetwork
from ..models.varactor import CV_HEADER, MeanderSegment, MeanderSpec, OperatingPoint, PlateSpec
from .network_service import network_service


logger = logging.getLogger(__name__)

# Puntos del barrido de desplazamiento en [0, g0) del oráculo de continuación
_SCAN_POINTS = 2000


# Dispositivo por defecto (valores plausibles, no medidos)
DEFAULT_PLATE = PlateSpec(
    area=400e-6 * 400e-6,
    initial_gap=2e-6,
    dielectric_thickness=0.2e-6,
    dielectric_permittivity=7.5,
)
DEFAULT_MEANDER = MeanderSpec(
    meander_count=4,
    segments=[MeanderSegment(length=150e-6, width=10e-6, thickness=3e-6)] * 2,
    youngs_modulus=80e9,
)


class VaractorService:
    """Placa rígida sobre cuatro meandros: rigidez, pull-in, equilibrio y red eléctrica"""

    def __init__(self):
        self.z_ref = settings.reference_impedance_ohm

    # ── Mecánica ───────────────────────────────────────

    def meander_stiffness(self, m: MeanderSpec) -> float:
        """Flexiones guiadas: en serie dentro del meandro, en paralelo entre meandros (N/m)"""
        compliance = sum(s.length ** 3 / (m.youngs_modulus * s.width * s.thickness ** 3) for s in m.segments)
        return m.meander_count / compliance

    def pull_in_voltage(self, p: PlateSpec, k: float) -> float:
        if k <= 0:
            raise ValueError("stiffness must be > 0")
        return math.sqrt(8.0 * k * p.g0 ** 3 / (27.0 * EPS0 * p.area))

    def up_capacitance(self, p: PlateSpec, displacement: float) -> float:
        return EPS0 * p.area / (p.g0 - displacement)

    def down_capacitance(self, p: PlateSpec) -> float:
        if p.dielectric_thickness <= 0:
            raise DegenerateGeometryError("down-state capacitance needs a dielectric layer thicker than 0")
        return EPS0 * p.dielectric_permittivity * p.area / p.dielectric_thickness

    def contact_capacitance(self, p: PlateSpec) -> float:
        """Capacidad en pull-in; sin dieléctrico la placa queda en contacto óhmico (C → ∞)"""
        if p.dielectric_thickness == 0:
            return math.inf
        return self.down_capacitance(p)

    @staticmethod
    def _balance(p: PlateSpec, k: float, bias: float) -> Callable[[np.ndarray], np.ndarray]:
        """k·x − ε0·A·V²/(2(g0−x)²): negativa mientras la fuerza eléctrica gana"""
        force = EPS0 * p.area * bias ** 2 / 2.0
        return lambda x: k * x - force / (p.g0 - x) ** 2

    def equilibrium(self, p: PlateSpec, k: float, bias: float) -> OperatingPoint:
        if bias < 0:
            raise ValueError("bias must be >= 0")
        if bias >= self.pull_in_voltage(p, k):
            return OperatingPoint(
                bias=bias, displacement=p.g0, capacitance=self.contact_capacitance(p), state="pulled_in"
            )
        if bias == 0:
            return OperatingPoint(bias=0.0, displacement=0.0, capacitance=self.up_capacitance(p, 0.0), state="up")

        x = optimize.bisect(self._balance(p, k, bias), 0.0, p.g0 / 3.0, xtol=1e-12 * p.g0)
        return OperatingPoint(bias=bias, displacement=x, capacitance=self.up_capacitance(p, x), state="up")

    def cv_sweep(self, p: PlateSpec, k: float, biases: Iterable[float]) -> List[OperatingPoint]:
        return [self.equilibrium(p, k, v) for v in biases]

    # ── Oráculo de continuación ────────────────────────

    def _stable_bracket(self, p: PlateSpec, k: float, bias: float) -> Optional[Tuple[float, float]]:
        """Primer cambio de signo del balance en [0, g0); None si no queda equilibrio estable"""
        balance = self._balance(p, k, bias)
        xs = np.linspace(0.0, p.g0, _SCAN_POINTS, endpoint=False)
        crossings = np.flatnonzero(balance(xs) >= 0.0)
        if len(crossings) == 0:
            return None
        i = crossings[0]
        if i == 0:
            return 0.0, 0.0
        return xs[i - 1], xs[i]

    def stable_displacement(self, p: PlateSpec, k: float, bias: float) -> Optional[float]:
        """Raíz estable más chica del balance de fuerzas, sin atajos por V_pi"""
        bracket = self._stable_bracket(p, k, bias)
        if bracket is None:
            return None
        low, high = bracket
        if low == high:
            return low
        return optimize.bisect(self._balance(p, k, bias), low, high, xtol=1e-12 * p.g0)

    def pull_in_by_continuation(self, p: PlateSpec, k: float, rel_tol: float = 1e-9,
                                step_fraction: float = 0.05) -> float:
        """
        Pull-in numérico: sube la polarización en pasos resolviendo el balance de fuerzas
        hasta que no queda raíz estable, y refina por bisección entre el último paso
        estable y el primero inestable. No usa la fórmula cerrada.
        """
        # Escala dimensional de la polarización
        step = step_fraction * math.sqrt(k * p.g0 ** 3 / (EPS0 * p.area))

        stable, bias = 0.0, step
        while self._stable_bracket(p, k, bias) is not None:
            stable, bias = bias, bias + step
        logger.debug(f"Stable equilibrium lost between {stable:.6g} V and {bias:.6g} V")

        def stability(v: float) -> float:
            return 1.0 if self._stable_bracket(p, k, v) is not None else -1.0

        return optimize.bisect(stability, stable, bias, xtol=rel_tol * bias)

    def pull_in_report(self, p: PlateSpec, k: float) -> dict:
        analytic = self.pull_in_voltage(p, k)
        numeric = self.pull_in_by_continuation(p, k)
        return {
            "stiffness_n_per_m": k,
            "pull_in_voltage_v": analytic,
            "continuation_voltage_v": numeric,
            "relative_difference": abs(numeric - analytic) / analytic,
            "pull_in_displacement_m": p.g0 / 3.0,
            "up_capacitance_f": self.up_capacitance(p, 0.0),
            "down_capacitance_f": self.down_capacitance(p) if p.dielectric_thickness > 0 else None,
        }

    # ── Red eléctrica ──────────────────────────────────

    def varactor_two_port(
        self,
        p: PlateSpec,
        k: float,
        bias: float,
        loss_conductance: float,
        grid: FrequencyGrid,
        z_ref: float = None,
        topology: Literal["series", "shunt"] = "series",
    ) -> TwoPortNetwork:
        """C(bias) ∥ G como rama serie entre puertos (o en derivación con topology="shunt")"""
        if loss_conductance < 0:
            raise ValueError("loss conductance must be >= 0")
        point = self.equilibrium(p, k, bias)
        return self.capacitor_two_port(point.capacitance, loss_conductance, grid, z_ref, topology)

    def capacitor_two_port(self, capacitance: float, conductance: float, grid: FrequencyGrid,
                           z_ref: float = None, topology: str = "series") -> TwoPortNetwork:
        if topology not in ("series", "shunt"):
            raise ValueError(f"unknown topology '{topology}'")
        if math.isinf(capacitance):
            # Contacto óhmico: rama serie en corto; en derivación sería un corto a masa
            if topology == "shunt":
                raise DegenerateGeometryError("shunt varactor in ohmic contact shorts the line to ground")
            m = network_service.series_abcd(np.zeros(len(grid)))
            return network_service.from_abcd(grid, m, z_ref or self.z_ref)

        y = conductance + 1j * grid.omega * capacitance
        if topology == "series":
            m = network_service.series_abcd(1.0 / y)
        elif topology == "shunt":
            m = network_service.shunt_abcd(y)
        else:
            raise ValueError(f"unknown topology '{topology}'")
        return network_service.from_abcd(grid, m, z_ref or self.z_ref)

    # ── Exportación ────────────────────────────────────

    def cv_csv(self, points: List[OperatingPoint]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CV_HEADER)
        for point in points:
            writer.writerow([f"{point.bias:.12g}", f"{point.displacement:.12g}", f"{point.capacitance:.12g}", point.state])
        return buffer.getvalue()

    def stiffness_and_pull_in(self, p: PlateSpec, m: MeanderSpec) -> Tuple[float, float]:
        k = self.meander_stiffness(m)
        v_pi = self.pull_in_voltage(p, k)
        logger.info(f"Meander stiffness {k:.4g} N/m, pull-in voltage {v_pi:.4g} V")
        return k, v_pi


# Instancia global del servicio
varactor_service = VaractorService()
