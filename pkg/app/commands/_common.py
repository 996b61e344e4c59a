"""
Utilidades compartidas por los subcomandos: carga de configuración y rutas de salida
"""
import json
import logging
from pathlib import Path
from typing import Tuple

from pydantic import ValidationError

from ..exceptions import ConfigError
from ..models.geometry import CpwGeometry, PackageDoF, SubstrateStack
from ..models.run_config import RunConfig
from ..services.geometry_service import geometry_service


logger = logging.getLogger(__name__)


def describe_validation_error(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error["loc"]) or "<root>"
        parts.append(f"{location}: {error['msg']}")
    return "; ".join(parts)


def load_run_config(path: str) -> RunConfig:
    """Lee y valida el JSON; los errores indican línea o campo"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"{path}: {describe_validation_error(exc)}")
    logger.info(f"Loaded run config {path.name}" + (f" (preset {config.preset})" if config.preset else ""))
    return config


def resolve_design(config: RunConfig) -> Tuple[CpwGeometry, SubstrateStack, PackageDoF]:
    """Registros explícitos reemplazan a los del preset"""
    if config.preset is None:
        return config.geometry, config.stack, config.dof
    cpw, stack, dof = geometry_service.preset(config.preset)
    return config.geometry or cpw, config.stack or stack, config.dof or dof


def output_path(config: RunConfig, name: str) -> Path:
    directory = Path(config.io.output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    return directory / name


def write_text(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_json(path: Path, data: dict) -> Path:
    return write_text(path, json.dumps(data, indent=2, sort_keys=True) + "\n")
