"""
Subcomando compose: varactor embebido sin cap y con cap (vias de archivo o del modelo EM)
"""
import logging

from ..exceptions import EXIT_OK, ConfigError
from ..models.network import TwoPortNetwork
from ..models.touchstone import TouchstoneOptions
from ..services.em_service import em_service
from ..services.network_service import network_service
from ..services.parasitics_service import parasitics_service
from ..services.report_service import report_service
from ..services.touchstone_service import touchstone_service
from ..services.varactor_service import varactor_service
from ._common import load_run_config, output_path, resolve_design, write_json, write_text


logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("compose", help="Embed the varactor with and without the cap")
    parser.add_argument("config", help="JSON run-config with a 'varactor' section")
    parser.add_argument("--via-sn", dest="via_sn", default=None,
                        help=".s2p via block; its frequency grid replaces the config grid")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    config = load_run_config(args.config)
    if config.varactor is None:
        raise ConfigError(f"{args.config}: 'varactor' section is required by the compose command")
    cpw, stack, dof = resolve_design(config)
    device = config.varactor

    if args.via_sn:
        via_in, _ = touchstone_service.read_file(args.via_sn)
        if not isinstance(via_in, TwoPortNetwork):
            raise ConfigError(f"{args.via_sn}: via block must be a 2-port file")
        grid, z_ref = via_in.grid, via_in.reference_impedance
    else:
        grid = config.frequency_grid.build()
        via_in = em_service.via_block_two_port(dof, stack, em_service.stub_for(cpw), grid)
        z_ref = via_in.reference_impedance
    via_out = via_in.flipped()

    k = varactor_service.meander_stiffness(device.meander)
    intrinsic = varactor_service.varactor_two_port(
        device.plate, k, device.compose_bias_v, device.loss_conductance, grid, z_ref, device.topology
    )

    pad_admittance = None
    if device.proximity_length_um is not None:
        pad_admittance = em_service.proximity_shunt(dof, cpw, device.proximity_length_um, grid)

    uncapped = parasitics_service.embed(intrinsic, device.parasitics)
    capped = parasitics_service.embed_capped(intrinsic, device.parasitics, via_in, via_out, pad_admittance)
    audits = {}
    for name, network in (("uncapped", uncapped), ("capped", capped)):
        audit = network_service.audit(network)
        audits[name] = audit.to_dict()
        if not (audit.passive and audit.reciprocal):
            logger.warning(f"{name} network audit: passive={audit.passive}, reciprocal={audit.reciprocal}")

    options = TouchstoneOptions()
    touchstone_service.write_file(output_path(config, config.io.uncapped_s2p), uncapped, options)
    touchstone_service.write_file(output_path(config, config.io.capped_s2p), capped, options)

    prefix = config.io.display_prefix
    for name, network in (("uncapped", uncapped), ("capped", capped)):
        for which in ("S21", "S11"):
            rows = network_service.to_display(network, which)
            write_text(output_path(config, f"{prefix}_{name}_{which.lower()}.csv"), network_service.display_csv(rows))

    comparison = parasitics_service.compare(uncapped, capped)
    write_json(output_path(config, config.io.comparison_json), comparison)
    write_json(output_path(config, config.io.audit_json), audits)
    logger.info(report_service.comparison(comparison, device.compose_bias_v).strip())
    logger.info(f"🎉 Composition finished on {len(grid)} points")
    return EXIT_OK
