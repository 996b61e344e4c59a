"""
Red de parásitos alrededor del varactor: embebido (con y sin cap), extracción y comparación
"""
import logging
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import optimize

from ..config import settings
from ..exceptions import IllConditionedFitError
from ..models.network import FrequencyGrid, TwoPortNetwork
from ..models.parasitics import ParasiticNetwork
from .network_service import network_service


logger = logging.getLogger(__name__)

IntrinsicModel = Callable[[FrequencyGrid], TwoPortNetwork]

# Unidades de trabajo del ajuste: Ω, pH, mS, fF
_SCALE = np.array([1.0, 1e-12, 1e-3, 1e-15, 1e-15])


class ParasiticsService:
    """pad C - serie RL - (intrínseco ∥ G) - serie RL - pad C"""

    def __init__(self):
        self.ceiling_hz = settings.extraction_ceiling_hz
        self.min_points = settings.extraction_min_points

    # ── Embebido ───────────────────────────────────────

    def merge_loss(self, intrinsic: TwoPortNetwork, g_loss: float) -> TwoPortNetwork:
        """Conductancia en paralelo con el dispositivo intrínseco (suma de matrices Y)"""
        if g_loss == 0:
            return intrinsic
        z_ref = intrinsic.reference_impedance
        y_g = np.array([[g_loss, -g_loss], [-g_loss, g_loss]], dtype=complex)
        y = network_service.s_to_y(intrinsic.s, z_ref) + y_g
        return TwoPortNetwork(grid=intrinsic.grid, s=network_service.y_to_s(y, z_ref), reference_impedance=z_ref)

    def embed(self, intrinsic: TwoPortNetwork, p: ParasiticNetwork,
              pad_admittance: Optional[np.ndarray] = None) -> TwoPortNetwork:
        """
        Embebe el intrínseco en la red de parásitos. `pad_admittance` (S, por punto)
        se reparte a partes iguales entre ambos pads.
        """
        grid = intrinsic.grid
        omega = grid.omega
        extra = np.zeros(len(grid), dtype=complex) if pad_admittance is None else np.asarray(pad_admittance) / 2.0

        inner = network_service.to_abcd(self.merge_loss(intrinsic, p.g_loss))
        m = network_service.chain([
            network_service.shunt_abcd(1j * omega * p.c_pad_in + extra),
            network_service.series_abcd(p.r_in + 1j * omega * p.l_in),
            inner,
            network_service.series_abcd(p.r_out + 1j * omega * p.l_out),
            network_service.shunt_abcd(1j * omega * p.c_pad_out + extra),
        ])
        return network_service.from_abcd(grid, m, intrinsic.reference_impedance)

    def embed_capped(self, intrinsic: TwoPortNetwork, p: ParasiticNetwork, via_in: TwoPortNetwork,
                     via_out: TwoPortNetwork, pad_admittance: Optional[np.ndarray] = None) -> TwoPortNetwork:
        return network_service.cascade_all([via_in, self.embed(intrinsic, p, pad_admittance), via_out])

    # ── Extracción ─────────────────────────────────────

    def extract(
        self,
        measured: TwoPortNetwork,
        intrinsic_model: IntrinsicModel,
        fit_band: Tuple[float, float],
        symmetric: Optional[bool] = None,
    ) -> ParasiticNetwork:
        """
        Extracción en frío: pads por pendiente de Im(Y) vs ω, luego R, L, G de la rama serie
        por mínimos cuadrados lineales y pulido no lineal sobre S en toda la banda.
        Con `symmetric=True` los pads se ajustan iguales; `False` pide además R/L de entrada
        y salida por separado, que no son identificables.
        """
        band = self._band(measured, fit_band)
        grid = FrequencyGrid(points=tuple(measured.grid.points[i] for i in band))
        s = measured.s[band]
        z_ref = measured.reference_impedance
        omega = grid.omega

        intrinsic = intrinsic_model(grid)
        try:
            y = network_service.s_to_y(s, z_ref)
            y_branch = -network_service.s_to_y(intrinsic.s, z_ref)[:, 0, 1]
        except np.linalg.LinAlgError:
            raise IllConditionedFitError("admittance parameters do not exist on the fit band")

        # Pads: Im(Y11 + Y12) = ωC, recta por el origen
        c_in = self._slope(omega, (y[:, 0, 0] + y[:, 0, 1]).imag)
        c_out = self._slope(omega, (y[:, 1, 1] + y[:, 0, 1]).imag)

        # Rama serie: Z_s − 1/Y_b ≈ R + jωL − G/Y_b²
        z_series = -1.0 / y[:, 0, 1]
        rhs = z_series - 1.0 / y_branch
        basis = np.stack([np.ones_like(omega, dtype=complex), 1j * omega, -1.0 / y_branch ** 2], axis=1)
        a = np.vstack([basis.real, basis.imag])
        b = np.concatenate([rhs.real, rhs.imag])
        norms = np.linalg.norm(a, axis=0)
        if np.any(norms == 0):
            raise IllConditionedFitError("regression matrix has an empty column")
        solution, _, rank, _ = np.linalg.lstsq(a / norms, b, rcond=None)
        if rank < a.shape[1]:
            raise IllConditionedFitError(f"regression matrix is rank deficient (rank {rank})")
        r_total, l_total, g_loss = solution / norms

        start = np.array([r_total, l_total, g_loss, c_in, c_out])
        fitted = self._polish(start, intrinsic, s, bool(symmetric))
        r_total, l_total, g_loss, c_in, c_out = fitted

        if symmetric is False:
            logger.warning(
                "Only the series totals R_in+R_out and L_in+L_out are identifiable; returning equal halves"
            )
        result = ParasiticNetwork(
            l_in=l_total / 2.0, r_in=r_total / 2.0, l_out=l_total / 2.0, r_out=r_total / 2.0,
            c_pad_in=c_in, c_pad_out=c_out, g_loss=g_loss,
        )
        logger.info(
            f"Extracted parasitics over {len(grid)} points: R={r_total:.4g} Ω, L={l_total:.4g} H, "
            f"G={g_loss:.4g} S, C_pad=({c_in:.4g}, {c_out:.4g}) F"
        )
        return result

    def _band(self, measured: TwoPortNetwork, fit_band: Tuple[float, float]) -> np.ndarray:
        low, high = fit_band
        high = min(high, self.ceiling_hz)
        frequencies = measured.grid.array
        band = np.flatnonzero((frequencies >= low) & (frequencies <= high))
        if len(band) < self.min_points:
            raise IllConditionedFitError(
                f"fit band {low:g}–{high:g} Hz holds {len(band)} points, at least {self.min_points} required"
            )
        return band

    @staticmethod
    def _slope(x: np.ndarray, y: np.ndarray) -> float:
        return float(np.dot(x, y) / np.dot(x, x))

    def _polish(self, start: np.ndarray, intrinsic: TwoPortNetwork, measured_s: np.ndarray,
                symmetric: bool) -> np.ndarray:
        if symmetric:
            start = np.append(start[:3], 0.5 * (start[3] + start[4]))
            scale = _SCALE[:4]
        else:
            scale = _SCALE
        x0 = np.clip(start / scale, 0.0, None)

        def unpack(x: np.ndarray) -> np.ndarray:
            values = x * scale
            if symmetric:
                values = np.append(values, values[3])
            return values

        def residuals(x: np.ndarray) -> np.ndarray:
            r, l, g, c_in, c_out = unpack(x)
            p = ParasiticNetwork(l_in=l / 2, r_in=r / 2, l_out=l / 2, r_out=r / 2,
                                 c_pad_in=c_in, c_pad_out=c_out, g_loss=g)
            delta = (self.embed(intrinsic, p).s - measured_s).ravel()
            return np.concatenate([delta.real, delta.imag])

        fit = optimize.least_squares(residuals, x0, bounds=(0.0, np.inf), xtol=1e-14, ftol=1e-14, gtol=1e-14)
        return unpack(fit.x)

    # ── Comparación con / sin cap ──────────────────────

    def compare(self, uncapped: TwoPortNetwork, capped: TwoPortNetwork,
                s11_at_hz: float = 6e9, s21_at_hz: float = 8e9) -> dict:
        """Diferencias en dB (con cap − sin cap)"""
        network_service.check_compatible(uncapped, capped)
        grid = uncapped.grid
        delta_s11 = network_service.magnitude_db(capped.s11) - network_service.magnitude_db(uncapped.s11)
        delta_s21 = network_service.magnitude_db(capped.s21) - network_service.magnitude_db(uncapped.s21)
        i11 = grid.nearest_index(s11_at_hz)
        i21 = grid.nearest_index(s21_at_hz)
        worst = int(np.argmax(np.abs(delta_s21)))
        return {
            "delta_s11_db": float(delta_s11[i11]),
            "delta_s11_frequency_hz": grid.points[i11],
            "delta_s21_db": float(delta_s21[i21]),
            "delta_s21_frequency_hz": grid.points[i21],
            "max_abs_delta_s21_db": float(abs(delta_s21[worst])),
            "max_abs_delta_s21_frequency_hz": grid.points[worst],
        }


# Instancia global del servicio
parasitics_service = ParasiticsService()
