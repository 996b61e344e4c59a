"""
Reportes de texto con plantillas jinja2
"""
import logging
from pathlib import Path
from typing import List, Optional, Tuple

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from ..config import settings
from ..models.geometry import Point3, ValidationReport
from ..models.sweep import ResistivityStudy, SweepTable, TrendReport


logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"


class ReportService:
    def __init__(self):
        self.env = Environment(
            loader=FileSystemLoader(str(TEMPLATES_DIR)),
            undefined=StrictUndefined,
            keep_trailing_newline=True,
        )

    def _render(self, name: str, **context) -> str:
        return self.env.get_template(name).render(app_name=settings.app_name, **context)

    def validation_report(self, report: ValidationReport, vias: List[Tuple[str, Point3]],
                          preset: Optional[str] = None) -> str:
        return self._render("validation_report.txt.j2", report=report, vias=vias, preset=preset)

    def trend_summary(
        self,
        trends: TrendReport,
        table: Optional[SweepTable] = None,
        best: Optional[Tuple[Tuple[float, ...], float]] = None,
        study: Optional[ResistivityStudy] = None,
    ) -> str:
        best_context = None
        if table is not None and best is not None:
            coordinates, s21_db = best
            best_context = {"coordinates": list(zip(table.axis_names, coordinates)), "s21_db": s21_db}
        study_context = None
        if study is not None:
            study_context = {
                "pairs": list(zip(study.resistivities_ohm_cm, study.s21_db)),
                "recommended_ohm_cm": study.recommended_ohm_cm,
                "margin_db": study.margin_db,
            }
        return self._render("trend_summary.txt.j2", trends=trends, table=table, best=best_context, study=study_context)

    def comparison(self, comparison: dict, bias: float) -> str:
        return self._render("comparison.txt.j2", c=comparison, bias=bias)


# Instancia global del servicio
report_service = ReportService()
