"""
Subcomando validate: reporte de geometría y coordenadas de vias
"""
import logging

from ..exceptions import EXIT_OK, EXIT_VALIDATION, InvalidGeometryError
from ..models.geometry import Corner
from ..services.geometry_service import geometry_service
from ..services.report_service import report_service
from ._common import load_run_config, resolve_design


logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="Validate a package geometry")
    parser.add_argument("config", help="JSON run-config")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    config = load_run_config(args.config)
    cpw, stack, dof = resolve_design(config)
    report = geometry_service.validate(dof, cpw, stack)

    vias = []
    for corner in Corner:
        try:
            vias.append((corner.value, geometry_service.derive_via_center(dof, cpw, stack, corner)))
        except InvalidGeometryError:
            continue

    print(report_service.validation_report(report, vias, config.preset), end="")
    if report.has_errors:
        logger.warning(f"❌ Geometry has {len(report.errors)} error(s)")
        return EXIT_VALIDATION
    logger.info(f"✅ Geometry valid ({len(report.warnings)} warning(s))")
    return EXIT_OK
