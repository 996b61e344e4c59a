"""
Álgebra de dos puertos: elementos, conversiones, cascada, auditoría y visualización
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from app.exceptions import GridMismatchError, ReferenceMismatchError, SingularConversionError
from app.models.network import (
    AbcdMatrix,
    FrequencyGrid,
    Line,
    SeriesImpedance,
    ShuntAdmittance,
    TwoPortNetwork,
)
from app.services.network_service import network_service


def element_chain(rng, grid: FrequencyGrid, length: int = 3) -> TwoPortNetwork:
    """Red pasiva y recíproca formada por elementos serie / derivación con pérdidas"""
    n = len(grid)
    blocks = []
    for _ in range(length):
        r, x = rng.uniform(0, 50, n), rng.uniform(-50, 50, n)
        g, b = rng.uniform(0, 0.02, n), rng.uniform(-0.02, 0.02, n)
        blocks.append(network_service.series_abcd(r + 1j * x))
        blocks.append(network_service.shunt_abcd(g + 1j * b))
    return network_service.from_abcd(grid, network_service.chain(blocks), 50.0)


# ── Elementos ─────────────────────────────────────────

@pytest.mark.parametrize("kind", [SeriesImpedance(z=0), ShuntAdmittance(y=0)])
def test_null_elements_are_identity(kind):
    m = network_service.element_abcd(kind)
    assert m.as_array() == pytest.approx(np.eye(2))


def test_quarter_wave_line():
    m = network_service.element_abcd(Line(z0=50, propagation=1j * math.pi / 2, length=1.0))
    assert abs(m.a) < 1e-12
    assert abs(m.d) < 1e-12
    assert m.b == pytest.approx(50j)
    assert m.c == pytest.approx(1j / 50)


@pytest.mark.parametrize("kind", [
    SeriesImpedance(z=12 - 7j),
    ShuntAdmittance(y=0.003 + 0.01j),
    Line(z0=47.5, propagation=3.1 + 210j, length=1.5e-3),
])
def test_elements_have_unit_determinant(kind):
    assert abs(network_service.element_abcd(kind).determinant - 1) < 1e-10


def test_line_requires_positive_impedance():
    with pytest.raises(ValidationError):
        Line(z0=-50, propagation=1j, length=1.0)


# ── Conversiones ──────────────────────────────────────

def test_identity_abcd_is_through():
    s = network_service.abcd_to_s(AbcdMatrix.identity(), 50.0)
    assert s == pytest.approx(np.array([[0, 1], [1, 0]]))


def test_series_fifty_ohm():
    s = network_service.abcd_to_s(network_service.element_abcd(SeriesImpedance(z=50)), 50.0)
    assert s[0, 0] == pytest.approx(1 / 3)
    assert s[1, 0] == pytest.approx(2 / 3)


def test_shunt_fiftieth_siemens():
    s = network_service.abcd_to_s(network_service.element_abcd(ShuntAdmittance(y=1 / 50)), 50.0)
    assert s[0, 0] == pytest.approx(-1 / 3)
    assert s[1, 0] == pytest.approx(2 / 3)


def test_through_s_to_identity_abcd():
    m = network_service.s_to_abcd(np.array([[0, 1], [1, 0]]), 50.0)
    assert m.as_array() == pytest.approx(np.eye(2))


def test_s_abcd_round_trip(make_passive):
    grid = FrequencyGrid.linspace(1e9, 2e9, 200)
    n = make_passive(grid, reciprocal=False)
    back = network_service.abcd_array_to_s(network_service.to_abcd(n), 50.0)
    assert np.max(np.abs(back - n.s)) <= 1e-12


def test_isolating_network_has_no_chain_form():
    with pytest.raises(SingularConversionError):
        network_service.s_to_abcd(np.array([[0.2, 0], [0, 0.3]]), 50.0)


def test_vanishing_denominator_is_singular():
    with pytest.raises(SingularConversionError):
        network_service.abcd_to_s(AbcdMatrix(a=1, b=-50, c=0, d=0), 50.0)


def test_y_round_trip(rng, band_grid):
    n = element_chain(rng, band_grid)
    y = network_service.s_to_y(n.s, 50.0)
    assert np.max(np.abs(network_service.y_to_s(y, 50.0) - n.s)) < 1e-12


# ── Cascada ───────────────────────────────────────────

def test_cascade_with_through_is_identity(make_passive, band_grid):
    n = make_passive(band_grid)
    through = network_service.through(band_grid)
    assert np.max(np.abs(network_service.cascade(n, through).s - n.s)) < 1e-12
    assert np.max(np.abs(network_service.cascade(through, n).s - n.s)) < 1e-12


def test_line_phases_add():
    grid = FrequencyGrid.single(1e9)
    beta = 2 * math.pi * 1e9 / 3e8
    eighth = (math.pi / 4) / beta
    one = network_service.element_network(grid, network_service.element_abcd(
        Line(z0=50, propagation=1j * beta, length=eighth)).as_array())
    quarter = network_service.element_network(grid, network_service.element_abcd(
        Line(z0=50, propagation=1j * beta, length=2 * eighth)).as_array())
    both = network_service.cascade(one, one)
    assert np.angle(both.s21[0]) == pytest.approx(np.angle(quarter.s21[0]), abs=1e-12)
    assert np.angle(both.s21[0]) == pytest.approx(-math.pi / 2, abs=1e-12)


def test_cascade_is_associative(rng):
    grid = FrequencyGrid.linspace(1e8, 1e10, 1000)
    a, b, c = (element_chain(rng, grid) for _ in range(3))
    left = network_service.cascade(network_service.cascade(a, b), c)
    right = network_service.cascade(a, network_service.cascade(b, c))
    assert np.max(np.abs(left.s - right.s)) <= 1e-10


def test_cascade_preserves_reciprocity_and_passivity(rng, band_grid):
    a, b = element_chain(rng, band_grid), element_chain(rng, band_grid)
    audit = network_service.audit(network_service.cascade(a, b))
    assert audit.passive
    assert audit.reciprocal


def test_cascade_rejects_grid_mismatch(make_passive):
    a = make_passive(FrequencyGrid.linspace(1e9, 2e9, 3))
    b = make_passive(FrequencyGrid.linspace(1e9, 3e9, 3))
    with pytest.raises(GridMismatchError):
        network_service.cascade(a, b)


def test_cascade_rejects_reference_mismatch(band_grid):
    with pytest.raises(ReferenceMismatchError):
        network_service.cascade(network_service.through(band_grid, 50.0), network_service.through(band_grid, 75.0))


# ── Auditoría ─────────────────────────────────────────

def test_audit_through(band_grid):
    audit = network_service.audit(network_service.through(band_grid))
    assert audit.passive and audit.reciprocal
    assert audit.max_power_gain == pytest.approx(1.0)


def test_audit_series_resistor():
    grid = FrequencyGrid.single(1e9)
    n = network_service.element_network(grid, network_service.series_abcd(np.array([50.0]))[0])
    audit = network_service.audit(n)
    assert audit.passive and audit.reciprocal


def test_audit_flags_gain():
    grid = FrequencyGrid.single(1e9)
    n = TwoPortNetwork(grid=grid, s=[[[0, 0], [1.5, 0]]], reference_impedance=50)
    audit = network_service.audit(n)
    assert not audit.passive
    assert not audit.reciprocal


# ── Visualización ─────────────────────────────────────

def test_display_series_fifty():
    grid = FrequencyGrid.single(2e9)
    n = network_service.element_network(grid, network_service.series_abcd(np.array([50.0]))[0])
    row = network_service.to_display(n, "S21")[0]
    assert row.mag_db == pytest.approx(20 * math.log10(2 / 3))
    assert row.mag_db == pytest.approx(-3.52, abs=5e-3)
    assert row.phase_deg == pytest.approx(0.0)
    assert (row.smith_re, row.smith_im) == pytest.approx((2 / 3, 0.0))


def test_display_floor_for_zero_entry():
    grid = FrequencyGrid.single(1e9)
    through = network_service.through(grid)
    row = network_service.to_display(through, "S11")[0]
    assert row.mag_db == -300.0


def test_display_csv_header(band_grid):
    text = network_service.display_csv(network_service.to_display(network_service.through(band_grid)))
    lines = text.splitlines()
    assert lines[0] == "freq_hz,mag_db,phase_deg,smith_re,smith_im"
    assert len(lines) == len(band_grid) + 1


# ── Tipos ─────────────────────────────────────────────

@pytest.mark.parametrize("points", [(), (2e9, 1e9), (1e9, 1e9), (0.0,), (float("nan"),)])
def test_frequency_grid_invariants(points):
    with pytest.raises(ValidationError):
        FrequencyGrid(points=points)


def test_network_shape_is_checked(band_grid):
    with pytest.raises(ValidationError):
        TwoPortNetwork(grid=band_grid, s=np.zeros((3, 2, 2)), reference_impedance=50)
