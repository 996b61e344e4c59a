"""
Servicio de álgebra de redes de dos puertos: ABCD ↔ S, cascada, auditoría y visualización
"""
import csv
import io
import logging
from typing import Iterable, List, Sequence

import numpy as np

from ..config import settings
from ..exceptions import GridMismatchError, ReferenceMismatchError, SingularConversionError
from ..models.network import (
    DISPLAY_HEADER,
    AbcdMatrix,
    AuditReport,
    DisplayRow,
    ElementKind,
    FrequencyGrid,
    Line,
    SeriesImpedance,
    ShuntAdmittance,
    TwoPortNetwork,
)


logger = logging.getLogger(__name__)

_SINGULAR_EPS = 1e-300


class NetworkService:
    """Operaciones puras sobre redes; cada composición devuelve un valor nuevo"""

    def __init__(self):
        self.audit_tolerance = settings.audit_tolerance
        self.display_floor_db = settings.display_floor_db

    # ── Elementos ──────────────────────────────────────

    def element_abcd(self, kind: ElementKind) -> AbcdMatrix:
        if isinstance(kind, SeriesImpedance):
            return AbcdMatrix(a=1, b=kind.z, c=0, d=1)
        if isinstance(kind, ShuntAdmittance):
            return AbcdMatrix(a=1, b=0, c=kind.y, d=1)
        if isinstance(kind, Line):
            gl = kind.propagation * kind.length
            ch, sh = np.cosh(gl), np.sinh(gl)
            return AbcdMatrix(a=ch, b=kind.z0 * sh, c=sh / kind.z0, d=ch)
        raise TypeError(f"unsupported element {type(kind).__name__}")

    # Versiones vectorizadas: arreglos (N, 2, 2) sobre la rejilla

    @staticmethod
    def series_abcd(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        m = np.zeros(z.shape + (2, 2), dtype=complex)
        m[..., 0, 0] = 1.0
        m[..., 0, 1] = z
        m[..., 1, 1] = 1.0
        return m

    @staticmethod
    def shunt_abcd(y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=complex)
        m = np.zeros(y.shape + (2, 2), dtype=complex)
        m[..., 0, 0] = 1.0
        m[..., 1, 0] = y
        m[..., 1, 1] = 1.0
        return m

    @staticmethod
    def line_abcd(z0: np.ndarray, gamma: np.ndarray, length_m: float) -> np.ndarray:
        z0 = np.asarray(z0, dtype=complex)
        gl = np.asarray(gamma, dtype=complex) * length_m
        ch, sh = np.cosh(gl), np.sinh(gl)
        m = np.empty(gl.shape + (2, 2), dtype=complex)
        m[..., 0, 0] = ch
        m[..., 0, 1] = z0 * sh
        m[..., 1, 0] = sh / z0
        m[..., 1, 1] = ch
        return m

    @staticmethod
    def chain(blocks: Sequence[np.ndarray]) -> np.ndarray:
        """Producto ordenado de bloques ABCD (puerto 1 → puerto 2)"""
        result = blocks[0]
        for block in blocks[1:]:
            result = result @ block
        return result

    # ── Conversiones ───────────────────────────────────

    def abcd_to_s(self, m: AbcdMatrix, z_ref: float) -> np.ndarray:
        return self.abcd_array_to_s(m.as_array()[np.newaxis], z_ref)[0]

    def s_to_abcd(self, s: np.ndarray, z_ref: float) -> AbcdMatrix:
        return AbcdMatrix.from_array(self.s_array_to_abcd(np.asarray(s, dtype=complex)[np.newaxis], z_ref)[0])

    def abcd_array_to_s(self, m: np.ndarray, z_ref: float) -> np.ndarray:
        a, b, c, d = m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1]
        den = a + b / z_ref + c * z_ref + d
        if np.any(~np.isfinite(den)) or np.any(np.abs(den) <= _SINGULAR_EPS):
            raise SingularConversionError("ABCD→S denominator vanishes")
        s = np.empty(m.shape, dtype=complex)
        s[..., 0, 0] = (a + b / z_ref - c * z_ref - d) / den
        s[..., 0, 1] = 2.0 * (a * d - b * c) / den
        s[..., 1, 0] = 2.0 / den
        s[..., 1, 1] = (-a + b / z_ref - c * z_ref + d) / den
        return s

    def s_array_to_abcd(self, s: np.ndarray, z_ref: float) -> np.ndarray:
        s11, s12, s21, s22 = s[..., 0, 0], s[..., 0, 1], s[..., 1, 0], s[..., 1, 1]
        if np.any(np.abs(s21) <= _SINGULAR_EPS):
            raise SingularConversionError("S21 = 0: isolating network has no chain form")
        m = np.empty(s.shape, dtype=complex)
        den = 2.0 * s21
        m[..., 0, 0] = ((1 + s11) * (1 - s22) + s12 * s21) / den
        m[..., 0, 1] = z_ref * ((1 + s11) * (1 + s22) - s12 * s21) / den
        m[..., 1, 0] = ((1 - s11) * (1 - s22) - s12 * s21) / (z_ref * den)
        m[..., 1, 1] = ((1 - s11) * (1 + s22) + s12 * s21) / den
        return m

    def s_to_y(self, s: np.ndarray, z_ref: float) -> np.ndarray:
        """Y = (1/z)·(I − S)(I + S)⁻¹"""
        eye = np.eye(2, dtype=complex)
        return np.linalg.solve((eye + s).swapaxes(-1, -2), (eye - s).swapaxes(-1, -2)).swapaxes(-1, -2) / z_ref

    def y_to_s(self, y: np.ndarray, z_ref: float) -> np.ndarray:
        """S = (I − z·Y)(I + z·Y)⁻¹"""
        eye = np.eye(2, dtype=complex)
        zy = z_ref * y
        return np.linalg.solve((eye + zy).swapaxes(-1, -2), (eye - zy).swapaxes(-1, -2)).swapaxes(-1, -2)

    # ── Redes ──────────────────────────────────────────

    def from_abcd(self, grid: FrequencyGrid, m: np.ndarray, z_ref: float = None) -> TwoPortNetwork:
        z_ref = z_ref or settings.reference_impedance_ohm
        return TwoPortNetwork(grid=grid, s=self.abcd_array_to_s(m, z_ref), reference_impedance=z_ref)

    def to_abcd(self, n: TwoPortNetwork) -> np.ndarray:
        return self.s_array_to_abcd(n.s, n.reference_impedance)

    def through(self, grid: FrequencyGrid, z_ref: float = None) -> TwoPortNetwork:
        z_ref = z_ref or settings.reference_impedance_ohm
        s = np.zeros((len(grid), 2, 2), dtype=complex)
        s[:, 0, 1] = 1.0
        s[:, 1, 0] = 1.0
        return TwoPortNetwork(grid=grid, s=s, reference_impedance=z_ref)

    def element_network(self, grid: FrequencyGrid, m: np.ndarray, z_ref: float = None) -> TwoPortNetwork:
        """Red a partir de un arreglo ABCD por punto (o una sola matriz 2×2 para toda la rejilla)"""
        m = np.asarray(m, dtype=complex)
        if m.shape == (2, 2):
            m = np.broadcast_to(m, (len(grid), 2, 2)).copy()
        return self.from_abcd(grid, m, z_ref)

    def cascade(self, a: TwoPortNetwork, b: TwoPortNetwork) -> TwoPortNetwork:
        self.check_compatible(a, b)
        m = self.to_abcd(a) @ self.to_abcd(b)
        return self.from_abcd(a.grid, m, a.reference_impedance)

    def cascade_all(self, networks: Iterable[TwoPortNetwork]) -> TwoPortNetwork:
        networks = list(networks)
        for other in networks[1:]:
            self.check_compatible(networks[0], other)
        m = self.chain([self.to_abcd(n) for n in networks])
        return self.from_abcd(networks[0].grid, m, networks[0].reference_impedance)

    def check_compatible(self, a: TwoPortNetwork, b: TwoPortNetwork) -> None:
        if not a.grid.same_as(b.grid):
            raise GridMismatchError("networks are defined on different frequency grids")
        if a.reference_impedance != b.reference_impedance:
            raise ReferenceMismatchError(
                f"reference impedances differ: {a.reference_impedance} vs {b.reference_impedance}"
            )

    # ── Auditoría ──────────────────────────────────────

    def audit(self, n: TwoPortNetwork) -> AuditReport:
        """Pasividad por norma espectral y reciprocidad por |S12 − S21|"""
        sigma = np.linalg.norm(n.s, ord=2, axis=(1, 2))
        passive = bool(np.all(sigma <= 1.0 + self.audit_tolerance))
        reciprocal = bool(np.max(np.abs(n.s12 - n.s21)) <= self.audit_tolerance)
        report = AuditReport(passive=passive, reciprocal=reciprocal, max_power_gain=float(np.max(sigma) ** 2))
        if not passive:
            logger.warning(f"Network is not passive: max power gain {report.max_power_gain:.6g}")
        return report

    # ── Visualización ──────────────────────────────────

    def to_display(self, n: TwoPortNetwork, which: str = "S21") -> List[DisplayRow]:
        values = n.entry(which.upper())
        rows = []
        for f, v in zip(n.grid.points, values):
            mag = abs(v)
            mag_db = 20.0 * np.log10(mag) if mag > 0 else self.display_floor_db
            rows.append(DisplayRow(
                freq_hz=f,
                mag_db=float(max(mag_db, self.display_floor_db)),
                phase_deg=float(np.degrees(np.angle(v))),
                smith_re=float(v.real),
                smith_im=float(v.imag),
            ))
        return rows

    def display_csv(self, rows: List[DisplayRow]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(DISPLAY_HEADER)
        for row in rows:
            writer.writerow([f"{value:.12g}" for value in row.as_tuple()])
        return buffer.getvalue()

    @staticmethod
    def magnitude_db(values: np.ndarray) -> np.ndarray:
        mag = np.abs(values)
        with np.errstate(divide="ignore"):
            db = 20.0 * np.log10(mag)
        return np.where(mag > 0, db, settings.display_floor_db)


# Instancia global del servicio
network_service = NetworkService()
