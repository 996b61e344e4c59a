"""
Punto de entrada del CLI de Capsula
"""
import argparse
import logging
import logging.config
import sys
from typing import List, Optional

from pydantic import ValidationError

from .commands import compose, sweep, touchstone, validate, varactor
from .commands._common import describe_validation_error
from .config import LOGGING_CONFIG, settings
from .exceptions import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, CapsulaError

# Configurar logging
logging.config.dictConfig(LOGGING_CONFIG)
logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capsula",
        description="Co-diseño RF de encapsulado a nivel de oblea: CPW con cap y varactor RF-MEMS",
    )
    parser.add_argument("--version", action="version", version=f"{settings.app_name} {settings.app_version}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (validate, sweep, compose, touchstone, varactor):
        command.add_parser(subparsers)
    return parser


def dispatch(argv: Optional[List[str]] = None) -> int:
    """Ejecuta un subcomando y traduce las excepciones a códigos de salida"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # Errores de uso de argparse → código de configuración
        return _usage_exit_code(exc.code)

    logger.info(f"🚀 {settings.app_name} {args.command} started")
    try:
        code = args.handler(args)
    except CapsulaError as exc:
        logger.error(f"❌ {exc.code}: {exc.message}")
        return exc.exit_code
    except ValidationError as exc:
        logger.error(f"❌ invalid value: {describe_validation_error(exc)}")
        return EXIT_CONFIG
    except OSError as exc:
        logger.error(f"❌ I/O error: {exc}")
        return EXIT_CONFIG
    except Exception as exc:
        logger.error(f"❌ Unexpected failure: {exc}", exc_info=True)
        return EXIT_NUMERIC

    logger.info(f"👋 {args.command} finished with exit code {code}")
    return code


def _usage_exit_code(code) -> int:
    return EXIT_OK if code in (0, None) else EXIT_CONFIG


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
