# app/models/__init__.py

# Tipos de dominio (pydantic) usados por los servicios
from .geometry import (
    Corner,
    CpwGeometry,
    End,
    PackageDoF,
    Point3,
    SubstrateStack,
    ValidationFinding,
    ValidationReport,
)
from .em import LineParams, ViaParasitics
from .network import (
    AbcdMatrix,
    AuditReport,
    DisplayRow,
    FrequencyGrid,
    Line,
    OnePortNetwork,
    SeriesImpedance,
    ShuntAdmittance,
    TwoPortNetwork,
)
from .touchstone import TouchstoneOptions
from .varactor import MeanderSegment, MeanderSpec, OperatingPoint, PlateSpec
from .parasitics import ParasiticNetwork
from .sweep import SweepAxis, SweepCell, SweepTable, TrendRecord, TrendReport, ResistivityStudy
from .run_config import RunConfig
