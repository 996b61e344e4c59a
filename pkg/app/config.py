"""
Configuración de la aplicación Capsula
"""
import math
from typing import Dict, List
from pydantic import Field
from pydantic_settings import BaseSettings

# CARGAR .env EXPLÍCITAMENTE
from dotenv import load_dotenv
load_dotenv()  # Busca .env en el directorio actual


class Settings(BaseSettings):
    # ── App ────────────────────────────────────────────
    app_name: str = "Capsula"
    app_version: str = "1.0.0"
    debug: bool = Field(default=False, env="DEBUG")
    log_level: str = Field(default="INFO", env="LOG_LEVEL")

    # ── Red de dos puertos ─────────────────────────────
    reference_impedance_ohm: float = 50.0
    audit_tolerance: float = 1e-9
    display_floor_db: float = -300.0  # Centinela para |S| = 0

    # ── Modelos EM sustitutos ──────────────────────────
    objective_frequency_hz: float = Field(default=5e9, env="OBJECTIVE_FREQUENCY_HZ")
    via_stub_length_um: float = 100.0      # CPW corto que contacta cada extremo de la via
    via_coupling_fraction: float = Field(default=0.01, env="VIA_COUPLING_FRACTION")
    cap_relative_permittivity: float = 11.9
    via_liner_permittivity: float = 3.9

    # ── Barrido ────────────────────────────────────────
    sweep_workers: int = Field(default=1, env="SWEEP_WORKERS")
    trend_points: int = 5

    # Rangos de barrido uno-a-la-vez para el reporte de tendencias
    trend_ranges: Dict[str, Dict[str, float]] = {
        "cap_resistivity": {"min": 15.0, "max": 4000.0},
        "cap_thickness": {"min": 200.0, "max": 400.0},
        "recess_depth": {"min": 0.0, "max": 150.0},
        "via_diameter": {"min": 5.0, "max": 95.0},
        "y_offset": {"min": 150.0, "max": 350.0},
        "bump_height": {"min": 5.0, "max": 50.0},
    }
    trend_expected_signs: Dict[str, str] = {
        "cap_resistivity": "+",
        "cap_thickness": "-",
        "recess_depth": "+",
        "via_diameter": "+",
        "y_offset": "+",
        "bump_height": "+",
    }

    # ── Guía de diseño (validate) ──────────────────────
    dof_guidance_bands: Dict[str, Dict[str, float]] = {
        "cap_thickness": {"min": 250.0, "max": 300.0},
        "via_diameter": {"min": 60.0, "max": math.inf},
        "y_offset": {"min": 250.0, "max": math.inf},
        "bump_height": {"min": 20.0, "max": math.inf},
        "recess_depth": {"min": 50.0, "max": 150.0},
        "cap_resistivity": {"min": 1000.0, "max": math.inf},
    }

    # Obleas disponibles para el cap (Ω·cm)
    resistivity_catalog_ohm_cm: List[float] = [15.0, 1000.0, 2000.0, 3000.0, 4000.0]
    hrs_margin_db: float = 0.002

    # ── Extracción de parásitos ────────────────────────
    extraction_ceiling_hz: float = 10e9
    extraction_min_points: int = 4

    class Config:
        env_file = ".env"
        case_sensitive = False


# Instancia global
settings = Settings()


# Constantes físicas
COPPER_RESISTIVITY = 1.68e-8       # Ω·m
MU0 = 4.0 * math.pi * 1e-7         # H/m
EPS0 = 8.854e-12                   # F/m
SPEED_OF_LIGHT = 299792458.0       # m/s

UM = 1e-6                          # μm → m
OHM_CM = 1e-2                      # Ω·cm → Ω·m


# Configuración de logging
LOGGING_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "default": {
            "format": "[%(asctime)s] %(levelname)s in %(module)s: %(message)s"
        }
    },
    "handlers": {
        "default": {
            "class": "logging.StreamHandler",
            "formatter": "default",
        }
    },
    "root": {
        "level": settings.log_level.upper(),
        "handlers": ["default"],
    },
}
