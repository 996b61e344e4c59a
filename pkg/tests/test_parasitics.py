"""
Parásitos del varactor: embebido, embebido con cap, extracción y comparación
"""
import logging

import numpy as np
import pytest

from app.exceptions import GridMismatchError, IllConditionedFitError
from app.models.network import FrequencyGrid
from app.models.parasitics import ParasiticNetwork
from app.models.touchstone import TouchstoneOptions
from app.services.em_service import em_service
from app.services.network_service import network_service
from app.services.parasitics_service import parasitics_service
from app.services.touchstone_service import touchstone_service
from app.services.varactor_service import DEFAULT_PLATE, varactor_service


FIT_GRID = FrequencyGrid.linspace(0.5e9, 10e9, 21)
FIT_BAND = (0.5e9, 10e9)
REFERENCE = ParasiticNetwork.symmetric(l=50e-12, r=0.5, c_pad=20e-15, g_loss=0.2e-3)


def capacitor(capacitance=0.8e-12):
    def model(grid: FrequencyGrid):
        return varactor_service.capacitor_two_port(capacitance, 0.0, grid, 50.0)
    return model


def assert_close(extracted: ParasiticNetwork, expected: ParasiticNetwork, rel: float):
    for name, value in expected.to_dict().items():
        assert getattr(extracted, name) == pytest.approx(value, rel=rel), name


# ── Embebido ──────────────────────────────────────────

def test_null_parasitics_are_identity(make_passive, band_grid):
    intrinsic = make_passive(band_grid)
    embedded = parasitics_service.embed(intrinsic, ParasiticNetwork())
    assert np.max(np.abs(embedded.s - intrinsic.s)) < 1e-10


def test_embed_matches_manual_cascade(band_grid):
    intrinsic = capacitor()(band_grid)
    p = ParasiticNetwork(l_in=40e-12, r_in=0.3, l_out=60e-12, r_out=0.7, c_pad_in=15e-15, c_pad_out=25e-15)
    omega = band_grid.omega
    manual = network_service.from_abcd(band_grid, network_service.chain([
        network_service.shunt_abcd(1j * omega * p.c_pad_in),
        network_service.series_abcd(p.r_in + 1j * omega * p.l_in),
        network_service.to_abcd(intrinsic),
        network_service.series_abcd(p.r_out + 1j * omega * p.l_out),
        network_service.shunt_abcd(1j * omega * p.c_pad_out),
    ]))
    assert np.max(np.abs(parasitics_service.embed(intrinsic, p).s - manual.s)) < 1e-12


def halved(p: ParasiticNetwork) -> ParasiticNetwork:
    return ParasiticNetwork(**{name: value / 2 for name, value in p.to_dict().items()})


def test_series_halves_compose_exactly(band_grid):
    intrinsic = capacitor()(band_grid)
    series_only = ParasiticNetwork(l_in=40e-12, r_in=0.3, l_out=60e-12, r_out=0.7)
    half = halved(series_only)
    twice = parasitics_service.embed(parasitics_service.embed(intrinsic, half), half)
    assert np.max(np.abs(twice.s - parasitics_service.embed(intrinsic, series_only).s)) < 1e-12


def test_pads_and_loss_do_not_split_into_halves(band_grid):
    intrinsic = capacitor()(band_grid)
    full = ParasiticNetwork(
        l_in=40e-12, r_in=0.3, l_out=60e-12, r_out=0.7, c_pad_in=15e-15, c_pad_out=25e-15, g_loss=1e-3
    )
    half = halved(full)
    twice = parasitics_service.embed(parasitics_service.embed(intrinsic, half), half)
    assert np.max(np.abs(twice.s - parasitics_service.embed(intrinsic, full).s)) > 1e-5


def test_loss_conductance_is_parallel(band_grid):
    intrinsic = capacitor()(band_grid)
    merged = parasitics_service.merge_loss(intrinsic, 1e-3)
    direct = varactor_service.capacitor_two_port(0.8e-12, 1e-3, band_grid, 50.0)
    assert np.max(np.abs(merged.s - direct.s)) < 1e-12


def test_pad_admittance_splits_between_pads(band_grid):
    intrinsic = capacitor()(band_grid)
    extra = 1j * band_grid.omega * 10e-15
    with_extra = parasitics_service.embed(intrinsic, REFERENCE, pad_admittance=extra)
    bigger_pads = REFERENCE.model_copy(update={"c_pad_in": 25e-15, "c_pad_out": 25e-15})
    assert np.max(np.abs(with_extra.s - parasitics_service.embed(intrinsic, bigger_pads).s)) < 1e-12


def test_capped_with_ideal_throughs_equals_uncapped(band_grid):
    intrinsic = capacitor()(band_grid)
    through = network_service.through(band_grid)
    capped = parasitics_service.embed_capped(intrinsic, REFERENCE, through, through)
    assert np.max(np.abs(capped.s - parasitics_service.embed(intrinsic, REFERENCE).s)) < 1e-12


def test_embedded_network_is_passive(band_grid):
    intrinsic = varactor_service.varactor_two_port(DEFAULT_PLATE, 12.8, 2.0, 2e-4, band_grid)
    audit = network_service.audit(parasitics_service.embed(intrinsic, REFERENCE))
    assert audit.passive and audit.reciprocal


# ── Con cap vs sin cap ────────────────────────────────

@pytest.fixture
def varactor_pair(varactor_design, band_grid):
    line, stack, dof = varactor_design
    parasitics = ParasiticNetwork.symmetric(l=50e-12, r=0.5, c_pad=20e-15, g_loss=0.0)
    intrinsic = varactor_service.varactor_two_port(DEFAULT_PLATE, 12.8, 0.0, 2e-4, band_grid)
    via_in = em_service.via_block_two_port(dof, stack, em_service.stub_for(line), band_grid)
    uncapped = parasitics_service.embed(intrinsic, parasitics)
    capped = parasitics_service.embed_capped(intrinsic, parasitics, via_in, via_in.flipped())
    return uncapped, capped


def test_cap_changes_transmission_by_less_than_one_db(varactor_pair):
    uncapped, capped = varactor_pair
    delta = network_service.magnitude_db(capped.s21) - network_service.magnitude_db(uncapped.s21)
    assert np.max(np.abs(delta)) <= 1.0
    audit = network_service.audit(capped)
    assert audit.passive and audit.reciprocal


def test_compare(varactor_pair):
    uncapped, capped = varactor_pair
    result = parasitics_service.compare(uncapped, capped)
    assert set(result) == {
        "delta_s11_db", "delta_s11_frequency_hz", "delta_s21_db", "delta_s21_frequency_hz",
        "max_abs_delta_s21_db", "max_abs_delta_s21_frequency_hz",
    }
    assert result["delta_s11_frequency_hz"] == pytest.approx(6e9)
    assert result["delta_s21_frequency_hz"] == pytest.approx(8e9)
    assert result["max_abs_delta_s21_db"] >= abs(result["delta_s21_db"])
    assert result["max_abs_delta_s21_db"] <= 1.0


def test_compare_identical_networks(varactor_pair):
    uncapped, _ = varactor_pair
    result = parasitics_service.compare(uncapped, uncapped)
    assert result["max_abs_delta_s21_db"] == 0.0


def test_compare_rejects_grid_mismatch(varactor_pair):
    uncapped, _ = varactor_pair
    other = network_service.through(FrequencyGrid.linspace(1e9, 2e9, 20))
    with pytest.raises(GridMismatchError):
        parasitics_service.compare(uncapped, other)


# ── Extracción ────────────────────────────────────────

@pytest.mark.parametrize("expected", [
    REFERENCE,
    ParasiticNetwork.symmetric(l=30e-12, r=0.2, c_pad=10e-15, g_loss=0.1e-3),
    ParasiticNetwork.symmetric(l=80e-12, r=1.0, c_pad=35e-15, g_loss=0.5e-3),
])
def test_extraction_recovers_symmetric_parasitics(expected):
    measured = parasitics_service.embed(capacitor()(FIT_GRID), expected)
    extracted = parasitics_service.extract(measured, capacitor(), FIT_BAND, symmetric=True)
    assert_close(extracted, expected, rel=1e-2)


def test_extraction_on_random_sets(rng):
    for _ in range(50):
        expected = ParasiticNetwork.symmetric(
            l=rng.uniform(1e-12, 500e-12),
            r=rng.uniform(0.05, 10.0),
            c_pad=rng.uniform(1e-15, 200e-15),
            g_loss=rng.uniform(0.01e-3, 5e-3),
        )
        measured = parasitics_service.embed(capacitor()(FIT_GRID), expected)
        assert_close(parasitics_service.extract(measured, capacitor(), FIT_BAND, symmetric=True), expected, rel=1e-2)


def test_asymmetric_pads_are_separated(caplog):
    expected = ParasiticNetwork(
        l_in=50e-12, r_in=0.5, l_out=50e-12, r_out=0.5, c_pad_in=15e-15, c_pad_out=30e-15, g_loss=0.2e-3
    )
    measured = parasitics_service.embed(capacitor()(FIT_GRID), expected)
    with caplog.at_level(logging.WARNING, logger="app.services.parasitics_service"):
        extracted = parasitics_service.extract(measured, capacitor(), FIT_BAND)
    assert extracted.c_pad_in == pytest.approx(15e-15, rel=1e-2)
    assert extracted.c_pad_out == pytest.approx(30e-15, rel=1e-2)
    assert extracted.l_in + extracted.l_out == pytest.approx(100e-12, rel=1e-2)
    assert extracted.r_in == extracted.r_out
    assert not [r for r in caplog.records if r.levelno >= logging.WARNING]


def test_unconstrained_series_fit_warns(caplog):
    measured = parasitics_service.embed(capacitor()(FIT_GRID), REFERENCE)
    with caplog.at_level(logging.WARNING, logger="app.services.parasitics_service"):
        extracted = parasitics_service.extract(measured, capacitor(), FIT_BAND, symmetric=False)
    assert "identifiable" in caplog.text
    assert extracted.l_in == extracted.l_out


def test_extraction_tolerates_measurement_noise(rng):
    measured = parasitics_service.embed(capacitor()(FIT_GRID), REFERENCE)
    noise = 1e-4 * np.exp(2j * np.pi * rng.uniform(size=measured.s.shape))
    noisy = measured.model_copy(update={"s": measured.s + noise})
    assert_close(parasitics_service.extract(noisy, capacitor(), FIT_BAND, symmetric=True), REFERENCE, rel=5e-2)


def test_null_extraction():
    measured = capacitor()(FIT_GRID)
    extracted = parasitics_service.extract(measured, capacitor(), FIT_BAND, symmetric=True)
    assert extracted.r_in < 1e-6
    assert extracted.l_in < 1e-15
    assert extracted.c_pad_in < 1e-18
    assert extracted.g_loss < 1e-9


def test_band_ceiling_is_enforced():
    grid = FrequencyGrid.linspace(10e9, 20e9, 11)
    measured = parasitics_service.embed(capacitor()(grid), REFERENCE)
    with pytest.raises(IllConditionedFitError):
        parasitics_service.extract(measured, capacitor(), (10e9, 20e9))


def test_too_few_points():
    measured = parasitics_service.embed(capacitor()(FIT_GRID), REFERENCE)
    with pytest.raises(IllConditionedFitError):
        parasitics_service.extract(measured, capacitor(), (0.5e9, 1.5e9))


def test_extraction_ignores_file_format(tmp_path):
    measured = parasitics_service.embed(capacitor()(FIT_GRID), REFERENCE)
    results = []
    for number_format in ("RI", "MA", "DB"):
        path = touchstone_service.write_file(
            tmp_path / f"dut_{number_format}.s2p", measured, TouchstoneOptions(number_format=number_format)
        )
        network, _ = touchstone_service.read_file(path)
        results.append(parasitics_service.extract(network, capacitor(), FIT_BAND, symmetric=True))
    for other in results[1:]:
        assert_close(other, results[0], rel=1e-5)


# ── Tipos ─────────────────────────────────────────────

def test_parasitic_record_round_trip():
    assert ParasiticNetwork.from_dict(REFERENCE.to_dict()) == REFERENCE


def test_negative_elements_are_rejected():
    with pytest.raises(ValueError):
        ParasiticNetwork(l_in=-1e-12)
