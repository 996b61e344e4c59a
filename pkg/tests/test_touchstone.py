"""
Touchstone v1: lectura, escritura, errores con número de línea y conversión
"""
import math

import numpy as np
import pytest

from app.exceptions import (
    ConfigError,
    MalformedOptionLineError,
    NonAscendingFrequencyError,
    NonNumericTokenError,
    UnsupportedParameterError,
    UnsupportedVersionError,
    WrongColumnCountError,
)
from app.models.network import FrequencyGrid, OnePortNetwork, TwoPortNetwork
from app.models.touchstone import TouchstoneOptions
from app.services.network_service import network_service
from app.services.touchstone_service import ports_for_path, touchstone_service


# ── Lectura ───────────────────────────────────────────

def test_parse_through():
    n, opts = touchstone_service.parse("# GHz S RI R 50\n1 0 0 1 0 1 0 0 0\n")
    assert n.grid.points == (1e9,)
    assert n.s[0] == pytest.approx(np.array([[0, 1], [1, 0]]))
    assert opts == TouchstoneOptions(frequency_unit="GHz", number_format="RI")


def test_parse_magnitude_angle_in_mhz():
    n, opts = touchstone_service.parse("# MHz S MA R 50\n100 0.5 0 1 0 1 0 0.5 0\n")
    assert n.grid.points == (1e8,)
    assert n.s11[0] == pytest.approx(0.5)
    assert opts.frequency_unit == "MHz"


def test_parse_db():
    n, _ = touchstone_service.parse("# GHz S DB R 50\n1 -6.0206 0 0 0 0 0 -6.0206 0\n")
    assert abs(n.s11[0]) == pytest.approx(0.5, abs=1e-5)
    assert abs(n.s21[0]) == pytest.approx(1.0)


def test_defaults_without_option_line():
    n, opts = touchstone_service.parse("1 0.1 90 1 0 1 0 0.1 90\n")
    assert opts == TouchstoneOptions()
    assert n.grid.points == (1e9,)
    assert n.s11[0] == pytest.approx(0.1j)
    assert n.reference_impedance == 50.0


def test_option_tokens_are_case_insensitive():
    _, opts = touchstone_service.parse("# khz s ri r 75\n1 0 0 1 0 1 0 0 0\n")
    assert (opts.frequency_unit, opts.number_format, opts.reference_resistance) == ("kHz", "RI", 75.0)


def test_repeated_option_line_is_ignored():
    n, opts = touchstone_service.parse("# GHz S RI R 50\n# MHz S MA R 75\n1 0 0 1 0 1 0 0 0\n")
    assert opts.frequency_unit == "GHz"
    assert n.reference_impedance == 50.0


def test_continuation_and_comments(fixtures_dir):
    n, opts = touchstone_service.read_file(fixtures_dir / "probe_station.s2p")
    assert opts.frequency_unit == "MHz" and opts.number_format == "MA"
    assert n.grid.points == (1e9, 2e9, 3e9)
    assert abs(n.s12[0]) == pytest.approx(0.9)
    assert np.degrees(np.angle(n.s22[1])) == pytest.approx(-85.0)
    assert n.s22[2] == pytest.approx(0.21 * np.exp(-1j * np.radians(115.0)))


def test_one_port(fixtures_dir):
    n, opts = touchstone_service.read_file(fixtures_dir / "short.s1p")
    assert isinstance(n, OnePortNetwork)
    assert opts.number_format == "DB"
    assert n.s11 == pytest.approx(np.array([-1, -1]), abs=1e-12)


def test_through_fixture(fixtures_dir):
    n, _ = touchstone_service.read_file(fixtures_dir / "through.s2p")
    audit = network_service.audit(n)
    assert audit.passive and audit.reciprocal
    assert np.all(n.s21 == 1)


# ── Escritura ─────────────────────────────────────────

def test_write_through_exactly():
    through = network_service.through(FrequencyGrid.single(1e9))
    text = touchstone_service.write(through, TouchstoneOptions(frequency_unit="GHz", number_format="RI"))
    lines = text.splitlines()
    assert lines[0].startswith("!")
    assert lines[1:] == ["# GHz S RI R 50", "1 0 0 1 0 1 0 0 0"]


def test_write_uses_network_reference():
    through = network_service.through(FrequencyGrid.single(1e9), 75.0)
    text = touchstone_service.write(through, TouchstoneOptions(reference_resistance=50.0))
    assert "# GHz S MA R 75" in text


def test_write_db_floor_for_zero_magnitude():
    through = network_service.through(FrequencyGrid.single(1e9))
    data = touchstone_service.write(through, TouchstoneOptions(number_format="DB")).splitlines()[-1]
    assert data.split()[1] == "-300"


@pytest.mark.parametrize("unit", ["Hz", "kHz", "MHz", "GHz"])
@pytest.mark.parametrize("number_format", ["RI", "MA", "DB"])
def test_write_then_parse(make_passive, unit, number_format):
    original = make_passive(FrequencyGrid.linspace(0.1e9, 20e9, 25), reciprocal=False)
    opts = TouchstoneOptions(frequency_unit=unit, number_format=number_format)
    back, back_opts = touchstone_service.parse(touchstone_service.write(original, opts))
    assert back_opts == opts
    assert np.allclose(back.grid.array, original.grid.array, rtol=1e-11, atol=0)
    assert np.max(np.abs(back.s - original.s)) < 1e-9


def test_write_one_port_file(tmp_path):
    n = OnePortNetwork(grid=FrequencyGrid.linspace(1e9, 2e9, 3), s11=[0.5, 0.5j, -0.5], reference_impedance=50)
    path = touchstone_service.write_file(tmp_path / "load.s1p", n, TouchstoneOptions(number_format="RI"))
    back, _ = touchstone_service.read_file(path)
    assert back.s11 == pytest.approx(n.s11)


def test_write_rejects_port_mismatch(tmp_path):
    through = network_service.through(FrequencyGrid.single(1e9))
    with pytest.raises(ConfigError):
        touchstone_service.write_file(tmp_path / "through.s1p", through)


# ── Errores ───────────────────────────────────────────

@pytest.mark.parametrize("text,error,line", [
    ("! v2\n[Version] 2.0\n", UnsupportedVersionError, 2),
    ("# GHz Y RI R 50\n1 0 0 1 0 1 0 0 0\n", UnsupportedParameterError, 1),
    ("# GHz S RI R\n1 0 0 1 0 1 0 0 0\n", MalformedOptionLineError, 1),
    ("# GHz S RI R fifty\n1 0 0 1 0 1 0 0 0\n", MalformedOptionLineError, 1),
    ("# GHz S XY R 50\n1 0 0 1 0 1 0 0 0\n", MalformedOptionLineError, 1),
    ("1 0 0 1 0 1 0 0 0\n# GHz S RI R 50\n", MalformedOptionLineError, 2),
    ("# GHz S RI R 50\n2 0 0 1 0 1 0 0 0\n1 0 0 1 0 1 0 0 0\n", NonAscendingFrequencyError, 3),
    ("# GHz S RI R 50\n1 0 0 1 0 1 0 0 0\n1 0 0 1 0 1 0 0 0\n", NonAscendingFrequencyError, 3),
    ("# GHz S RI R 50\n1 0 0 1 0 1 0 0 0 7\n", WrongColumnCountError, 2),
    ("# GHz S RI R 50\n1 0 0 1 0\n", WrongColumnCountError, 2),
    ("# GHz S RI R 50\n1 0 0 1 zero 1 0 0 0\n", NonNumericTokenError, 2),
    ("# GHz S RI R 50\n1 0 0 1 nan 1 0 0 0\n", NonNumericTokenError, 2),
    ("# GHz S RI R 50\n1 0 0 1 0\n1 inf 0 0\n", NonNumericTokenError, 3),
    ("# GHz S RI R 50\n0 0 0 1 0 1 0 0 0\n", NonAscendingFrequencyError, 2),
    ("# GHz S RI R 50\n! comentario\n-1 0 0 1\n0 1 0 0 0\n", NonAscendingFrequencyError, 3),
    ("# GHz S RI R inf\n1 0 0 1 0 1 0 0 0\n", MalformedOptionLineError, 1),
])
def test_parse_errors_carry_line_numbers(text, error, line):
    with pytest.raises(error) as info:
        touchstone_service.parse(text)
    assert info.value.line == line
    assert f"line {line}" in info.value.message


def test_empty_file_has_no_records():
    with pytest.raises(WrongColumnCountError):
        touchstone_service.parse("! nothing here\n# GHz S RI R 50\n")


def test_one_port_record_width():
    with pytest.raises(WrongColumnCountError):
        touchstone_service.parse("# GHz S RI R 50\n1 0 0 1 0 1 0 0 0\n", declared_ports=1)


def test_touchstone_errors_exit_as_config():
    assert WrongColumnCountError("x").exit_code == 1


# ── Archivos ──────────────────────────────────────────

@pytest.mark.parametrize("name,ports", [("a.s1p", 1), ("b.S2P", 2)])
def test_ports_for_path(name, ports):
    assert ports_for_path(name) == ports


def test_unsupported_extension():
    with pytest.raises(ConfigError):
        ports_for_path("network.s4p")


def test_convert_keeps_values(fixtures_dir, tmp_path):
    target = touchstone_service.convert(fixtures_dir / "probe_station.s2p", tmp_path / "probe_ri.s2p", "ri")
    original, _ = touchstone_service.read_file(fixtures_dir / "probe_station.s2p")
    converted, opts = touchstone_service.read_file(target)
    assert opts.number_format == "RI" and opts.frequency_unit == "MHz"
    assert np.max(np.abs(converted.s - original.s)) < 1e-11


def test_convert_rejects_unknown_format(fixtures_dir, tmp_path):
    with pytest.raises(ConfigError):
        touchstone_service.convert(fixtures_dir / "through.s2p", tmp_path / "x.s2p", "polar")


def test_db_magnitude_matches_display(make_passive):
    n = make_passive(FrequencyGrid.single(5e9))
    data = touchstone_service.write(n, TouchstoneOptions(number_format="DB")).splitlines()[-1].split()
    expected = network_service.to_display(n, "S21")[0].mag_db
    assert float(data[3]) == pytest.approx(expected, abs=1e-9)
    assert math.isfinite(float(data[4]))
