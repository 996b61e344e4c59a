"""
Subcomando varactor: curva C–V y reporte de pull-in
"""
import logging

from ..exceptions import EXIT_OK, ConfigError
from ..services.varactor_service import varactor_service
from ._common import load_run_config, output_path, write_json, write_text


logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("varactor", help="RF-MEMS varactor reports")
    actions = parser.add_subparsers(dest="action", required=True)
    cv = actions.add_parser("cv", help="C–V sweep and pull-in report")
    cv.add_argument("config", help="JSON run-config with a 'varactor' section")
    cv.set_defaults(handler=handle_cv)


def handle_cv(args) -> int:
    config = load_run_config(args.config)
    if config.varactor is None:
        raise ConfigError(f"{args.config}: 'varactor' section is required by the varactor command")
    device = config.varactor

    k, v_pi = varactor_service.stiffness_and_pull_in(device.plate, device.meander)
    points = varactor_service.cv_sweep(device.plate, k, device.biases)

    write_text(output_path(config, config.io.cv_csv), varactor_service.cv_csv(points))
    write_json(output_path(config, config.io.pull_in_json), varactor_service.pull_in_report(device.plate, k))
    pulled = sum(1 for p in points if p.state == "pulled_in")
    logger.info(f"🎉 C–V sweep finished: {len(points)} points, {pulled} past pull-in ({v_pi:.4g} V)")
    return EXIT_OK
