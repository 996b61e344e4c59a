"""
Servicio Touchstone v1: lectura y escritura de archivos .s1p / .s2p
"""
import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from ..config import settings
from ..exceptions import (
    ConfigError,
    MalformedOptionLineError,
    NonAscendingFrequencyError,
    NonNumericTokenError,
    UnsupportedParameterError,
    UnsupportedVersionError,
    WrongColumnCountError,
)
from ..models.network import AnyNetwork, FrequencyGrid, OnePortNetwork, TwoPortNetwork
from ..models.touchstone import FREQUENCY_MULTIPLIERS, UNIT_LABELS, TouchstoneOptions


logger = logging.getLogger(__name__)

_FORMATS = ("RI", "MA", "DB")
_OTHER_PARAMETERS = ("Y", "Z", "H", "G")

# Orden v1 de dos puertos: S11 S21 S12 S22
_TWO_PORT_ORDER = ((0, 0), (1, 0), (0, 1), (1, 1))


def ports_for_path(path: Path) -> int:
    suffix = Path(path).suffix.lower()
    if suffix == ".s1p":
        return 1
    if suffix == ".s2p":
        return 2
    raise ConfigError(f"unsupported Touchstone extension '{suffix}' (expected .s1p or .s2p)")


class TouchstoneService:
    """Parser de flujo de tokens y escritor de Touchstone v1"""

    def __init__(self):
        self.display_floor_db = settings.display_floor_db

    # ── Lectura ────────────────────────────────────────

    def parse(self, text: str, declared_ports: int = 2) -> Tuple[AnyNetwork, TouchstoneOptions]:
        if declared_ports not in (1, 2):
            raise ConfigError(f"declared_ports must be 1 or 2, got {declared_ports}")
        width = 1 + 2 * declared_ports * declared_ports

        options: Optional[TouchstoneOptions] = None
        records: List[List[float]] = []
        pending: List[float] = []
        pending_line = 0
        last_frequency = -math.inf

        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("!", 1)[0].strip()
            if not line:
                continue
            if line.startswith("["):
                raise UnsupportedVersionError(f"Touchstone v2 keyword {line.split()[0]} is not supported", number)
            if line.startswith("#"):
                if records or pending:
                    raise MalformedOptionLineError("option line after data records", number)
                if options is not None:
                    logger.warning(f"Ignoring repeated option line at line {number}")
                    continue
                options = self._parse_option_line(line, number)
                continue

            tokens = line.split()
            if not pending:
                pending_line = number
            if len(pending) + len(tokens) > width:
                raise WrongColumnCountError(
                    f"record has more than {width} values", number
                )
            for token in tokens:
                try:
                    value = float(token)
                except ValueError:
                    raise NonNumericTokenError(f"'{token}' is not a number", number)
                if not math.isfinite(value):
                    raise NonNumericTokenError(f"'{token}' is not a finite number", number)
                pending.append(value)

            if len(pending) == width:
                if pending[0] <= 0:
                    raise NonAscendingFrequencyError(
                        f"frequency {pending[0]:g} must be greater than 0", pending_line
                    )
                if pending[0] <= last_frequency:
                    raise NonAscendingFrequencyError(
                        f"frequency {pending[0]:g} does not increase over {last_frequency:g}", pending_line
                    )
                last_frequency = pending[0]
                records.append(pending)
                pending = []

        if pending:
            raise WrongColumnCountError(
                f"incomplete record: {len(pending)} of {width} values", pending_line
            )
        if not records:
            raise WrongColumnCountError("file contains no data records")

        options = options or TouchstoneOptions()
        data = np.asarray(records, dtype=float)
        frequencies = data[:, 0] * options.multiplier
        values = self._decode(data[:, 1::2], data[:, 2::2], options.number_format)

        grid = FrequencyGrid(points=tuple(float(f) for f in frequencies))
        z_ref = options.reference_resistance
        if declared_ports == 1:
            return OnePortNetwork(grid=grid, s11=values[:, 0], reference_impedance=z_ref), options

        s = np.empty((len(grid), 2, 2), dtype=complex)
        for column, (row, col) in enumerate(_TWO_PORT_ORDER):
            s[:, row, col] = values[:, column]
        return TwoPortNetwork(grid=grid, s=s, reference_impedance=z_ref), options

    def _parse_option_line(self, line: str, number: int) -> TouchstoneOptions:
        tokens = line[1:].split()
        fields = {}
        i = 0
        while i < len(tokens):
            token = tokens[i].upper()
            if token in FREQUENCY_MULTIPLIERS:
                fields["frequency_unit"] = UNIT_LABELS[token]
            elif token == "S":
                fields["parameter_kind"] = "S"
            elif token in _OTHER_PARAMETERS:
                raise UnsupportedParameterError(f"only S-parameters are supported, got '{tokens[i]}'", number)
            elif token in _FORMATS:
                fields["number_format"] = token
            elif token == "R":
                if i + 1 >= len(tokens):
                    raise MalformedOptionLineError("'R' must be followed by the reference resistance", number)
                try:
                    fields["reference_resistance"] = float(tokens[i + 1])
                except ValueError:
                    raise MalformedOptionLineError(f"invalid reference resistance '{tokens[i + 1]}'", number)
                if not 0 < fields["reference_resistance"] < math.inf:
                    raise MalformedOptionLineError("reference resistance must be finite and > 0", number)
                i += 1
            else:
                raise MalformedOptionLineError(f"unexpected token '{tokens[i]}'", number)
            i += 1
        return TouchstoneOptions(**fields)

    @staticmethod
    def _decode(first: np.ndarray, second: np.ndarray, number_format: str) -> np.ndarray:
        if number_format == "RI":
            return first + 1j * second
        if number_format == "MA":
            magnitude = first
        else:
            magnitude = 10.0 ** (first / 20.0)
        return magnitude * np.exp(1j * np.radians(second))

    # ── Escritura ──────────────────────────────────────

    def write(self, n: AnyNetwork, opts: TouchstoneOptions = None) -> str:
        opts = (opts or TouchstoneOptions()).model_copy(update={"reference_resistance": n.reference_impedance})
        if isinstance(n, OnePortNetwork):
            columns = [n.s11]
            kind = "1-port"
        else:
            columns = [n.s[:, row, col] for row, col in _TWO_PORT_ORDER]
            kind = "2-port"

        lines = [
            f"! {settings.app_name} {settings.app_version} {kind} S-parameters",
            opts.option_line(),
        ]
        for i, frequency in enumerate(n.grid.points):
            row = [frequency / opts.multiplier]
            for column in columns:
                row.extend(self._encode(complex(column[i]), opts.number_format))
            lines.append(" ".join(f"{value:.12g}" for value in row))
        return "\n".join(lines) + "\n"

    def _encode(self, value: complex, number_format: str) -> Tuple[float, float]:
        if number_format == "RI":
            return value.real, value.imag
        angle = math.degrees(math.atan2(value.imag, value.real))
        magnitude = abs(value)
        if number_format == "MA":
            return magnitude, angle
        if magnitude == 0:
            return self.display_floor_db, angle
        return 20.0 * math.log10(magnitude), angle

    # ── Archivos ───────────────────────────────────────

    def read_file(self, path: Path) -> Tuple[AnyNetwork, TouchstoneOptions]:
        path = Path(path)
        network, options = self.parse(path.read_text(encoding="utf-8"), ports_for_path(path))
        logger.info(f"Read {len(network.grid)} points from {path.name} ({options.option_line()})")
        return network, options

    def write_file(self, path: Path, n: AnyNetwork, opts: TouchstoneOptions = None) -> Path:
        path = Path(path)
        expected = ports_for_path(path)
        actual = 1 if isinstance(n, OnePortNetwork) else 2
        if expected != actual:
            raise ConfigError(f"cannot write a {actual}-port network to '{path.name}'")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.write(n, opts), encoding="utf-8")
        return path

    def convert(self, source: Path, target: Path, number_format: str) -> Path:
        """Recodifica un archivo conservando unidad y referencia"""
        number_format = number_format.upper()
        if number_format not in _FORMATS:
            raise ConfigError(f"unknown number format '{number_format}' (expected RI, MA or DB)")
        network, options = self.read_file(source)
        self.write_file(target, network, options.with_format(number_format))
        logger.info(f"Converted {Path(source).name} → {Path(target).name} ({number_format})")
        return Path(target)


# Instancia global del servicio
touchstone_service = TouchstoneService()
