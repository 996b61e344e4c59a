"""
Subcomando sweep: barrido de rejilla, tendencias y estudio de resistividad
"""
import logging

from ..exceptions import EXIT_OK, ConfigError
from ..services.report_service import report_service
from ..services.sweep_service import sweep_service
from ._common import load_run_config, output_path, resolve_design, write_text


logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="Run a DoF grid sweep and the trend report")
    parser.add_argument("config", help="JSON run-config with a 'sweep' section")
    parser.add_argument("--workers", type=int, default=None, help="Parallel workers (default from settings)")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    config = load_run_config(args.config)
    if config.sweep is None:
        raise ConfigError(f"{args.config}: 'sweep' section is required by the sweep command")
    design = resolve_design(config)
    spec = config.sweep
    workers = args.workers or spec.workers

    table = sweep_service.grid_sweep(design, spec.axes, spec.objective_frequency_hz, workers=workers)
    best = sweep_service.argmax(table)
    trends = sweep_service.trend_signs(
        design, spec.trend_dofs, spec.trend_points, spec.objective_frequency_hz, workers=workers
    )
    study = sweep_service.resistivity_study(design, spec.objective_frequency_hz)

    write_text(output_path(config, config.io.sweep_csv), sweep_service.export_csv(table))
    write_text(
        output_path(config, config.io.trend_summary),
        report_service.trend_summary(trends, table=table, best=best, study=study),
    )
    logger.info(f"🎉 Sweep finished: {len(table.cells)} cells, trends match: {trends.all_match}")
    return EXIT_OK
