"""
Servicio de barridos del espacio de diseño: rejilla, argmax, tendencias y estudio de resistividad
"""
import csv
import io
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from ..config import settings
from ..exceptions import (
    AllCellsInvalidError,
    ConfigError,
    EmptyGridError,
    EmptyTableError,
    GeometryError,
    ObjectiveFrequencyError,
    UnknownDofError,
)
from ..models.geometry import CpwGeometry, PackageDoF, SubstrateStack
from ..models.network import FrequencyGrid, TwoPortNetwork
from ..models.sweep import (
    ResistivityStudy,
    SkippedCell,
    SweepAxis,
    SweepCell,
    SweepTable,
    TrendRecord,
    TrendReport,
)
from .em_service import em_service
from .geometry_service import geometry_service
from .network_service import network_service


logger = logging.getLogger(__name__)

Design = Tuple[CpwGeometry, SubstrateStack, PackageDoF]
Evaluator = Callable[[CpwGeometry, SubstrateStack, PackageDoF, FrequencyGrid], TwoPortNetwork]


class SweepService:
    """Barridos deterministas: orden fila-mayor sin importar el número de workers"""

    def __init__(self):
        self.objective_frequency = settings.objective_frequency_hz
        self.workers = settings.sweep_workers
        self.trend_ranges = settings.trend_ranges
        self.expected_signs = settings.trend_expected_signs

    # ── Rejilla ────────────────────────────────────────

    def grid_sweep(
        self,
        base: Design,
        axes: Sequence[SweepAxis],
        objective_frequency: float = None,
        grid: Optional[FrequencyGrid] = None,
        workers: Optional[int] = None,
        evaluator: Optional[Evaluator] = None,
    ) -> SweepTable:
        if not axes:
            raise EmptyGridError("sweep needs at least one axis")
        objective_frequency = objective_frequency or self.objective_frequency
        grid = grid or FrequencyGrid.single(objective_frequency)
        try:
            index = grid.index_of(objective_frequency)
        except ValueError:
            raise ObjectiveFrequencyError(f"objective frequency {objective_frequency:g} Hz is not a grid point")

        cpw, stack, dof = base
        names = [axis.dof_name for axis in axes]
        evaluate = evaluator or em_service.capped_cpw_network
        coordinates = list(itertools.product(*[axis.values() for axis in axes]))
        logger.info(f"Sweeping {len(coordinates)} cells over {', '.join(names)} at {objective_frequency:g} Hz")

        def run(point: Tuple[float, ...]) -> Union[SweepCell, SkippedCell]:
            return self._evaluate_cell(cpw, stack, dof, names, point, grid, index, evaluate)

        workers = workers or self.workers
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(run, coordinates))
        else:
            results = [run(point) for point in coordinates]

        table = SweepTable(
            axes=list(axes),
            objective_frequency=objective_frequency,
            cells=[r for r in results if isinstance(r, SweepCell)],
            skipped=[r for r in results if isinstance(r, SkippedCell)],
        )
        if not table.cells:
            raise AllCellsInvalidError(f"all {len(coordinates)} sweep cells failed geometry validation")
        if table.skipped:
            logger.warning(f"Skipped {len(table.skipped)} of {len(coordinates)} cells with invalid geometry")
        return table

    def _evaluate_cell(self, cpw, stack, dof, names, point, grid, index, evaluate) -> Union[SweepCell, SkippedCell]:
        try:
            data = dof.model_dump()
            data.update(zip(names, point))
            cell_dof = PackageDoF(**data)
        except ValidationError as exc:
            return SkippedCell(coordinates=point, reason=f"invalid DoF: {exc.errors()[0]['msg']}")

        valid, reason = geometry_service.check_design(cell_dof, cpw, stack)
        if not valid:
            return SkippedCell(coordinates=point, reason=reason)
        try:
            network = evaluate(cpw, stack, cell_dof, grid)
        except GeometryError as exc:
            return SkippedCell(coordinates=point, reason=exc.code)

        return SweepCell(
            coordinates=point,
            s21_db=float(network_service.magnitude_db(network.s21[index:index + 1])[0]),
            s11_db=float(network_service.magnitude_db(network.s11[index:index + 1])[0]),
        )

    def argmax(self, t: SweepTable) -> Tuple[Tuple[float, ...], float]:
        """Celda con |S21| máximo; empates para el menor índice fila-mayor"""
        if not t.cells:
            raise EmptyTableError("sweep table has no cells")
        best = t.cells[0]
        for cell in t.cells[1:]:
            if cell.s21_db > best.s21_db:
                best = cell
        return best.coordinates, best.s21_db

    # ── Tendencias ─────────────────────────────────────

    def trend_signs(
        self,
        base: Design,
        dofs: Optional[Sequence[str]] = None,
        points_per_axis: int = None,
        objective_frequency: float = None,
        workers: Optional[int] = None,
        evaluator: Optional[Evaluator] = None,
    ) -> TrendReport:
        """Barridos uno-a-la-vez de cada DoF sobre su rango y comparación con el signo esperado"""
        points_per_axis = points_per_axis or settings.trend_points
        if points_per_axis < 3:
            raise ConfigError(f"points_per_axis must be >= 3, got {points_per_axis}")
        objective_frequency = objective_frequency or self.objective_frequency
        dofs = list(dofs) if dofs is not None else list(self.trend_ranges)
        for name in dofs:
            if name not in self.trend_ranges:
                raise UnknownDofError(f"no trend range for DoF '{name}' (known: {', '.join(self.trend_ranges)})")

        records = []
        for name in dofs:
            span = self.trend_ranges[name]
            axis = SweepAxis(dof_name=name, min=span["min"], max=span["max"], count=points_per_axis)
            table = self.grid_sweep(base, [axis], objective_frequency, workers=workers, evaluator=evaluator)
            values = [cell.coordinates[0] for cell in table.cells]
            s21 = [cell.s21_db for cell in table.cells]
            observed = self.observed_sign(s21)
            expected = self.expected_signs[name]
            records.append(TrendRecord(
                dof_name=name,
                observed_sign=observed,
                expected_sign=expected,
                match=observed == expected,
                values=values,
                s21_db=s21,
            ))
            if observed != expected:
                logger.warning(f"Trend for {name}: observed {observed}, expected {expected}")

        return TrendReport(objective_frequency=objective_frequency, records=records)

    @staticmethod
    def observed_sign(values: Sequence[float]) -> str:
        steps = np.diff(np.asarray(values, dtype=float))
        if np.all(steps >= 0):
            return "+"
        if np.all(steps <= 0):
            return "-"
        return "nonmonotone"

    # ── Resistividad del cap ───────────────────────────

    def resistivity_study(
        self,
        base: Design,
        objective_frequency: float = None,
        catalog: Optional[Sequence[float]] = None,
        evaluator: Optional[Evaluator] = None,
    ) -> ResistivityStudy:
        """Oblea más barata (menor resistividad) dentro del margen del mejor |S21|"""
        objective_frequency = objective_frequency or self.objective_frequency
        catalog = sorted(catalog or settings.resistivity_catalog_ohm_cm)
        cpw, stack, dof = base
        grid = FrequencyGrid.single(objective_frequency)
        evaluate = evaluator or em_service.capped_cpw_network

        s21_db: List[float] = []
        for resistivity in catalog:
            network = evaluate(cpw, stack, dof.with_value("cap_resistivity", resistivity), grid)
            s21_db.append(float(network_service.magnitude_db(network.s21)[0]))

        best = max(s21_db)
        margin = settings.hrs_margin_db
        recommended = next(r for r, v in zip(catalog, s21_db) if v >= best - margin)
        logger.info(f"Recommended cap wafer: {recommended:g} Ω·cm (within {margin:g} dB of the best)")
        return ResistivityStudy(
            objective_frequency=objective_frequency,
            resistivities_ohm_cm=list(catalog),
            s21_db=s21_db,
            recommended_ohm_cm=recommended,
            margin_db=margin,
        )

    # ── Exportación ────────────────────────────────────

    def export_csv(self, t: SweepTable) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(t.axis_names + ["s21_db", "s11_db"])
        for cell in t.cells:
            writer.writerow([f"{value:.9g}" for value in (*cell.coordinates, cell.s21_db, cell.s11_db)])
        return buffer.getvalue()


# Instancia global del servicio
sweep_service = SweepService()
