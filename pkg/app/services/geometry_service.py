"""
Servicio de geometría: presets, coordenadas de vias y validación de DoF's
"""
import logging
import math
from typing import Dict, List, Tuple

from ..config import settings
from ..exceptions import InvalidGeometryError, UnknownPresetError
from ..models.geometry import (
    Corner,
    CpwGeometry,
    End,
    PackageDoF,
    Point3,
    SubstrateStack,
    ValidationFinding,
    ValidationReport,
)


logger = logging.getLogger(__name__)

Design = Tuple[CpwGeometry, SubstrateStack, PackageDoF]


# Pila común: oblea de 4" (525 μm), óxido de 1 μm, HRS de 2 kΩ·cm
_STACK = dict(x_box=2000.0, y_box=1000.0, z_si=525.0, z_ox=1.0, relative_permittivity=11.9, resistivity=2000.0)

PRESETS: Dict[str, Dict[str, dict]] = {
    "cpw_validation": {
        "geometry": dict(x_line=1350.0, signal_width=116.0, ground_width=300.0, gap=65.0, z_line=5.0),
        "stack": _STACK,
        "dof": dict(
            via_diameter=50.0, y_offset=250.0, x_offset=50.0, cap_thickness=280.0,
            recess_depth=100.0, bump_height=25.0, via_oxide_thickness=1.0, cap_resistivity=2000.0,
        ),
    },
    "cpw_sweep": {
        "geometry": dict(x_line=1500.0, signal_width=100.0, ground_width=300.0, gap=50.0, z_line=5.0),
        "stack": _STACK,
        "dof": dict(
            via_diameter=70.0, y_offset=250.0, x_offset=70.0, cap_thickness=280.0,
            recess_depth=100.0, bump_height=25.0, via_oxide_thickness=1.0, cap_resistivity=2000.0,
        ),
    },
    "varactor_via": {
        "geometry": dict(x_line=1000.0, signal_width=100.0, ground_width=300.0, gap=50.0, z_line=5.0),
        "stack": _STACK,
        "dof": dict(
            via_diameter=70.0, y_offset=250.0, x_offset=70.0, cap_thickness=350.0,
            recess_depth=100.0, bump_height=25.0, via_oxide_thickness=1.0, cap_resistivity=2000.0,
        ),
    },
}


class GeometryService:
    """Geometría del CPW encapsulado (μm)"""

    def __init__(self):
        self.guidance_bands = settings.dof_guidance_bands

    # ── Presets ────────────────────────────────────────

    def preset_names(self) -> List[str]:
        return sorted(PRESETS)

    def preset(self, name: str) -> Design:
        try:
            record = PRESETS[name]
        except KeyError:
            raise UnknownPresetError(f"unknown preset '{name}' (available: {', '.join(self.preset_names())})")
        return (
            CpwGeometry(**record["geometry"]),
            SubstrateStack(**record["stack"]),
            PackageDoF(**record["dof"]),
        )

    # ── Coordenadas ────────────────────────────────────

    def via_height(self, dof: PackageDoF, cpw: CpwGeometry, stack: SubstrateStack) -> float:
        return stack.z_si + stack.z_ox + cpw.z_line + dof.bump_height

    def derive_via_center(self, dof: PackageDoF, cpw: CpwGeometry, stack: SubstrateStack,
                          corner: Corner) -> Point3:
        corner = Corner(corner)
        half_line = cpw.x_line / 2.0
        if corner in (Corner.TOP_RIGHT, Corner.BOTTOM_RIGHT):
            x = stack.x_box / 2.0 + half_line - dof.x_offset
        else:
            x = stack.x_box / 2.0 - half_line + dof.x_offset
        if corner in (Corner.TOP_RIGHT, Corner.TOP_LEFT):
            y = stack.y_box / 2.0 + dof.y_offset
        else:
            y = stack.y_box / 2.0 - dof.y_offset

        if not (0.0 <= x <= stack.x_box and 0.0 <= y <= stack.y_box):
            raise InvalidGeometryError(
                f"{corner.value} via centre ({x:g}, {y:g}) lies outside the {stack.x_box:g}×{stack.y_box:g} μm substrate"
            )
        return Point3(x=x, y=y, z=self.via_height(dof, cpw, stack))

    def derive_gsg_triple(self, dof: PackageDoF, cpw: CpwGeometry, stack: SubstrateStack,
                          end: End) -> Tuple[Point3, Point3, Point3]:
        """(tierra inferior, señal, tierra superior) en el extremo indicado"""
        end = End(end)
        centre_y = stack.y_box / 2.0
        if centre_y + dof.y_offset + dof.via_diameter / 2.0 > stack.y_box:
            raise InvalidGeometryError(
                f"ground vias at ±{dof.y_offset:g} μm (diameter {dof.via_diameter:g} μm) do not fit in y_box={stack.y_box:g} μm"
            )
        top = self.derive_via_center(dof, cpw, stack, Corner.TOP_LEFT if end == End.LEFT else Corner.TOP_RIGHT)
        signal = Point3(x=top.x, y=centre_y, z=top.z)
        bottom = Point3(x=top.x, y=centre_y - dof.y_offset, z=top.z)
        return bottom, signal, top

    # ── Validación ─────────────────────────────────────

    def validate(self, dof: PackageDoF, cpw: CpwGeometry, stack: SubstrateStack) -> ValidationReport:
        """Errores para imposibilidades físicas, advertencias fuera de la guía de diseño"""
        findings: List[ValidationFinding] = []

        def error(code: str, message: str):
            findings.append(ValidationFinding(severity="error", code=code, message=message))

        if dof.via_diameter > cpw.signal_width:
            error("via-wider-than-signal",
                  f"via diameter {dof.via_diameter:g} μm exceeds signal width {cpw.signal_width:g} μm")
        if dof.recess_depth >= dof.cap_thickness:
            error("recess-through-cap",
                  f"recess depth {dof.recess_depth:g} μm must be smaller than cap thickness {dof.cap_thickness:g} μm")
        if cpw.footprint_width > stack.y_box:
            error("cpw-exceeds-box",
                  f"CPW footprint {cpw.footprint_width:g} μm exceeds y_box {stack.y_box:g} μm")
        if cpw.x_line > stack.x_box:
            error("line-exceeds-box", f"line length {cpw.x_line:g} μm exceeds x_box {stack.x_box:g} μm")
        if dof.y_offset <= dof.via_diameter:
            error("vias-overlap",
                  f"GSG distance {dof.y_offset:g} μm does not clear the via diameter {dof.via_diameter:g} μm")

        for end in End:
            try:
                self.derive_gsg_triple(dof, cpw, stack, end)
            except InvalidGeometryError as exc:
                error("via-outside-box", exc.message)
                break

        findings.extend(self._guidance_warnings(dof))

        report = ValidationReport(findings=findings)
        if report.has_errors:
            logger.info(f"Validation found {len(report.errors)} error(s): {', '.join(f.code for f in report.errors)}")
        return report

    def _guidance_warnings(self, dof: PackageDoF) -> List[ValidationFinding]:
        warnings = []
        for name, band in self.guidance_bands.items():
            value = getattr(dof, name)
            low, high = band.get("min", -math.inf), band.get("max", math.inf)
            if low <= value <= high:
                continue
            if math.isinf(high):
                recommended = f"≥ {low:g}"
            else:
                recommended = f"{low:g}–{high:g}"
            warnings.append(ValidationFinding(
                severity="warning",
                code=f"{name.replace('_', '-')}-outside-guidance",
                message=f"{name} = {value:g} is outside the recommended band ({recommended})",
            ))
        return warnings

    def check_design(self, dof: PackageDoF, cpw: CpwGeometry, stack: SubstrateStack) -> Tuple[bool, str]:
        """Versión compacta para los barridos: (válido, motivo)"""
        report = self.validate(dof, cpw, stack)
        if report.has_errors:
            return False, "; ".join(f.code for f in report.errors)
        return True, "OK"


# Instancia global del servicio
geometry_service = GeometryService()
