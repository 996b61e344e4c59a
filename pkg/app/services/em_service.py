"""
Modelos EM cuasi-estáticos sustitutos: línea CPW, vias GSG, carga por proximidad del cap
y las redes ensambladas (bloque de vias, CPW encapsulada, corto encapsulado)
"""
import logging
import math
from typing import Callable, Optional

import numpy as np

from ..config import COPPER_RESISTIVITY, EPS0, MU0, OHM_CM, SPEED_OF_LIGHT, UM, settings
from ..exceptions import DegenerateGeometryError
from ..models.em import LineParams, ViaParasitics
from ..models.geometry import CpwGeometry, PackageDoF, SubstrateStack
from ..models.network import FrequencyGrid, OnePortNetwork, TwoPortNetwork
from .network_service import network_service


logger = logging.getLogger(__name__)


def agm(a: float, b: float, rel_tol: float = 1e-12) -> float:
    """Media aritmético-geométrica"""
    while abs(a - b) > rel_tol * abs(a):
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def ellipk(k: float) -> float:
    """Integral elíptica completa de primera clase K(k), módulo k (no parámetro m)"""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must lie in [0, 1), got {k}")
    return math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - k * k)))


def skin_depth(frequency: float, resistivity: float = COPPER_RESISTIVITY) -> float:
    if frequency <= 0:
        return math.inf
    return math.sqrt(resistivity / (math.pi * frequency * MU0))


class EmService:
    """Sustitutos de forma cerrada del simulador de onda completa"""

    def __init__(self):
        self.z_ref = settings.reference_impedance_ohm
        self.cap_permittivity = settings.cap_relative_permittivity
        self.liner_permittivity = settings.via_liner_permittivity
        self.coupling_fraction = settings.via_coupling_fraction
        self.stub_length_um = settings.via_stub_length_um

    # ── Línea CPW ──────────────────────────────────────

    def cpw_line_params(self, cpw: CpwGeometry, stack: SubstrateStack, frequency: float) -> LineParams:
        if cpw.gap <= 0:
            raise DegenerateGeometryError("CPW gap must be > 0")
        if frequency <= 0:
            raise ValueError("frequency must be > 0")

        k = cpw.signal_width / (cpw.signal_width + 2.0 * cpw.gap)
        k_prime = math.sqrt(1.0 - k * k)
        ratio = ellipk(k) / ellipk(k_prime)          # K(k)/K(k')
        eps_eff = (stack.relative_permittivity + 1.0) / 2.0
        z0 = 30.0 * math.pi / math.sqrt(eps_eff) / ratio

        inductance = z0 * math.sqrt(eps_eff) / SPEED_OF_LIGHT
        capacitance = math.sqrt(eps_eff) / (SPEED_OF_LIGHT * z0)

        # Pérdida en conductores: resistencia de hoja limitada por el espesor
        delta = skin_depth(frequency)
        thickness = cpw.z_line * UM
        sheet = COPPER_RESISTIVITY / min(delta, thickness)
        resistance = sheet * (1.0 / (cpw.signal_width * UM) + 1.0 / (2.0 * cpw.ground_width * UM))

        # Conducción en el sustrato: análogo de la mitad de sustrato de la capacitancia
        sigma = 1.0 / (stack.resistivity * OHM_CM)
        conductance = sigma * 2.0 * ratio

        return self._line_params(
            z0=z0, eps_eff=eps_eff, frequency=frequency,
            r=resistance, l=inductance, g=conductance, c=capacitance,
        )

    def _line_params(self, z0: float, eps_eff: float, frequency: float,
                     r: float, l: float, g: float, c: float) -> LineParams:
        omega = 2.0 * math.pi * frequency
        gamma = np.sqrt(complex(r, omega * l) * complex(g, omega * c))
        return LineParams(
            characteristic_impedance=z0,
            effective_permittivity=eps_eff,
            attenuation=float(gamma.real),
            phase_constant=float(gamma.imag),
            resistance=r, inductance=l, conductance=g, capacitance=c,
        )

    def loaded_line_params(self, cpw: CpwGeometry, stack: SubstrateStack,
                           dof: Optional[PackageDoF], frequency: float) -> LineParams:
        """Línea con la capacitancia y la pérdida de proximidad del cap añadidas"""
        base = self.cpw_line_params(cpw, stack, frequency)
        if dof is None:
            return base
        c = base.capacitance + self.proximity_loading(dof, cpw)
        g = base.conductance + self.proximity_conductance(dof, cpw)
        return self._line_params(
            z0=math.sqrt(base.inductance / c), eps_eff=base.effective_permittivity,
            frequency=frequency, r=base.resistance, l=base.inductance, g=g, c=c,
        )

    # ── Vias ───────────────────────────────────────────

    def via_length(self, dof: PackageDoF) -> float:
        """Las vias atraviesan el cap completo fuera de la cavidad del recess (μm)"""
        return dof.cap_thickness

    def via_lumped(self, dof: PackageDoF, via_length: float, frequency: float) -> ViaParasitics:
        if via_length <= 0:
            raise DegenerateGeometryError("via length must be > 0")
        if frequency < 0:
            raise ValueError("frequency must be >= 0")
        d = dof.via_diameter * UM
        s = dof.y_offset * UM
        if s <= d:
            raise DegenerateGeometryError(
                f"signal and ground vias overlap (diameter {dof.via_diameter} μm, distance {dof.y_offset} μm)"
            )
        length = via_length * UM

        r_dc = COPPER_RESISTIVITY * length / (math.pi * d * d / 4.0)
        resistance = r_dc * max(1.0, d / (4.0 * skin_depth(frequency)))

        inductance = max(0.0, MU0 * length / (2.0 * math.pi) * (math.log(4.0 * length / d) - 1.0))

        # Cilindros paralelos recubiertos: silicio entre barriles con liner de óxido
        coupled = self.coupling_fraction * length
        geometry = math.pi * coupled / math.acosh(s / d)
        c_si = self.cap_permittivity * EPS0 * geometry
        radius = d / 2.0
        c_liner = (2.0 * math.pi * self.liner_permittivity * EPS0 * coupled
                   / math.log((radius + dof.via_oxide_thickness * UM) / radius))
        c_pair = 1.0 / (1.0 / c_si + 2.0 / c_liner)

        sigma = 1.0 / (dof.cap_resistivity * OHM_CM)
        g_pair = sigma * geometry

        # Dos vias de tierra en paralelo
        return ViaParasitics(
            series_resistance=resistance,
            series_inductance=inductance,
            coupling_capacitance=2.0 * c_pair,
            substrate_loss_conductance=2.0 * g_pair,
        )

    # ── Proximidad del cap ─────────────────────────────

    def proximity_loading(self, dof: PackageDoF, cpw: CpwGeometry) -> float:
        """Capacitancia extra por unidad de longitud (F/m), ∝ 1/(bump + recess)"""
        clearance = dof.bump_height + dof.recess_depth
        if clearance <= 0:
            raise DegenerateGeometryError("cap clearance (bump_height + recess_depth) must be > 0")
        width = (cpw.signal_width + 2.0 * cpw.gap) * UM
        return EPS0 * width / (clearance * UM)

    def proximity_conductance(self, dof: PackageDoF, cpw: CpwGeometry) -> float:
        """Pérdida asociada a la carga (S/m): G = C·σ/ε del cap"""
        sigma = 1.0 / (dof.cap_resistivity * OHM_CM)
        return self.proximity_loading(dof, cpw) * sigma / (self.cap_permittivity * EPS0)

    # ── Redes ──────────────────────────────────────────

    def line_abcd(self, cpw: CpwGeometry, stack: SubstrateStack, grid: FrequencyGrid,
                  dof: Optional[PackageDoF] = None) -> np.ndarray:
        z0 = np.empty(len(grid))
        gamma = np.empty(len(grid), dtype=complex)
        for i, f in enumerate(grid.points):
            params = self.loaded_line_params(cpw, stack, dof, f)
            z0[i] = math.sqrt(params.inductance / params.capacitance)
            gamma[i] = params.propagation
        return network_service.line_abcd(z0, gamma, cpw.x_line * UM)

    def via_block_abcd(self, stack: SubstrateStack, stub: CpwGeometry, grid: FrequencyGrid,
                       via_at: Callable[[float], ViaParasitics]) -> np.ndarray:
        """stub ∘ [π: Y/2 - R+jωL - Y/2] ∘ stub"""
        stub_abcd = self.line_abcd(stub, stack, grid)
        omega = grid.omega
        vias = [via_at(f) for f in grid.points]
        z = np.array([v.series_resistance for v in vias]) + 1j * omega * np.array(
            [v.series_inductance for v in vias])
        y = np.array([v.substrate_loss_conductance for v in vias]) + 1j * omega * np.array(
            [v.coupling_capacitance for v in vias])
        half_shunt = network_service.shunt_abcd(y / 2.0)
        return network_service.chain([
            stub_abcd, half_shunt, network_service.series_abcd(z), half_shunt, stub_abcd,
        ])

    def via_block_two_port(self, dof: PackageDoF, stack: SubstrateStack, stub: CpwGeometry,
                           grid: FrequencyGrid) -> TwoPortNetwork:
        length = self.via_length(dof)
        m = self.via_block_abcd(stack, stub, grid, lambda f: self.via_lumped(dof, length, f))
        return network_service.from_abcd(grid, m, self.z_ref)

    def via_block_from_parasitics(self, stack: SubstrateStack, stub: CpwGeometry, grid: FrequencyGrid,
                                  via_at: Callable[[float], ViaParasitics]) -> TwoPortNetwork:
        return network_service.from_abcd(grid, self.via_block_abcd(stack, stub, grid, via_at), self.z_ref)

    def stub_for(self, cpw: CpwGeometry) -> CpwGeometry:
        """CPW corta de contacto con la sección transversal de la línea"""
        return cpw.with_length(self.stub_length_um)

    def _capped_abcd(self, cpw: CpwGeometry, stack: SubstrateStack, dof: Optional[PackageDoF],
                     grid: FrequencyGrid) -> np.ndarray:
        line = self.line_abcd(cpw, stack, grid, dof)
        if dof is None:
            return line
        length = self.via_length(dof)
        via = self.via_block_abcd(stack, self.stub_for(cpw), grid, lambda f: self.via_lumped(dof, length, f))
        return network_service.chain([via, line, via])

    def capped_cpw_network(self, cpw: CpwGeometry, stack: SubstrateStack, dof: Optional[PackageDoF],
                           grid: FrequencyGrid) -> TwoPortNetwork:
        """
        via ∘ CPW cargada ∘ via. Con dof=None (sin cap) devuelve la línea desnuda.
        """
        return network_service.from_abcd(grid, self._capped_abcd(cpw, stack, dof, grid), self.z_ref)

    def capped_short_network(self, cpw: CpwGeometry, stack: SubstrateStack, dof: Optional[PackageDoF],
                             grid: FrequencyGrid) -> OnePortNetwork:
        """Reflexión de la CPW encapsulada terminada en corto (Zin = B/D)"""
        m = self._capped_abcd(cpw, stack, dof, grid)
        z_in = m[:, 0, 1] / m[:, 1, 1]
        s11 = (z_in - self.z_ref) / (z_in + self.z_ref)
        return OnePortNetwork(grid=grid, s11=s11, reference_impedance=self.z_ref)

    def proximity_shunt(self, dof: PackageDoF, cpw: CpwGeometry, length_um: float,
                        grid: FrequencyGrid) -> np.ndarray:
        """Admitancia total de proximidad sobre un tramo (S), por punto de frecuencia"""
        c = self.proximity_loading(dof, cpw) * length_um * UM
        g = self.proximity_conductance(dof, cpw) * length_um * UM
        return g + 1j * grid.omega * c


# Instancia global del servicio
em_service = EmService()
