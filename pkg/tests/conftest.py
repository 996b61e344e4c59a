"""
Fixtures compartidas de la suite
"""
import json
from pathlib import Path

import numpy as np
import pytest

from app.models.network import FrequencyGrid, TwoPortNetwork
from app.services.geometry_service import geometry_service


FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def sweep_design():
    return geometry_service.preset("cpw_sweep")


@pytest.fixture
def validation_design():
    return geometry_service.preset("cpw_validation")


@pytest.fixture
def varactor_design():
    return geometry_service.preset("varactor_via")


@pytest.fixture
def band_grid() -> FrequencyGrid:
    """0.5–10 GHz, 20 puntos"""
    return FrequencyGrid.linspace(0.5e9, 10e9, 20)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_passive(rng, grid: FrequencyGrid, reciprocal: bool = True, z_ref: float = 50.0) -> TwoPortNetwork:
    """S aleatoria con norma espectral < 1 en cada punto"""
    n = len(grid)
    s = rng.normal(size=(n, 2, 2)) + 1j * rng.normal(size=(n, 2, 2))
    if reciprocal:
        s = 0.5 * (s + s.swapaxes(1, 2))
    norms = np.linalg.norm(s, ord=2, axis=(1, 2))
    s = s / (norms[:, None, None] * rng.uniform(1.1, 3.0, size=(n, 1, 1)))
    return TwoPortNetwork(grid=grid, s=s, reference_impedance=z_ref)


@pytest.fixture
def write_config(tmp_path):
    """Escribe un run-config JSON con salida en tmp_path"""

    def _write(data: dict, name: str = "run.json") -> Path:
        data = dict(data)
        io = dict(data.get("io", {}))
        io.setdefault("output_dir", str(tmp_path / "out"))
        data["io"] = io
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def make_passive(rng):
    def _make(grid: FrequencyGrid, reciprocal: bool = True) -> TwoPortNetwork:
        return random_passive(rng, grid, reciprocal)

    return _make
