# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

import numpy as np
import pytest
from slcpy.presets import (
    compare,
    expectations,
    linear_periods,
    preset_config,
    presets,
    validate,
)
from slcpy.spectral import SCHWARZSCHILD_EXAMPLE_CHARPOLY


def test_presets_have_expectations():
    assert set(presets) == set(expectations)
    for name in presets:
        config = preset_config(name)
        assert config.name == name


def test_preset_options():
    config = preset_config("lj3", n_modes=8, mode="com_reduced")
    assert config.options["n_modes"] == 8
    assert config.mode == "com_reduced"
    assert preset_config("lj3").options["n_modes"] == 16


def test_unknown_preset():
    with pytest.raises(ValueError, match=r"unknown preset 'lj4'"):
        preset_config("lj4")
    with pytest.raises(ValueError, match=r"unknown preset 'lj4'"):
        validate(["lj4"])


def test_validate_quick():
    table = validate(["lj2", "lj3-collinear"], continuation=False)
    assert table.columns.tolist() == ["Preset", "Check", "Expected", "Observed", "Status"]
    assert len(table) == 8
    assert (table.Status[table.Check != "period"] == "pass").all()
    assert table.Status[table.Check == "period"].tolist() == ["skip"]


def test_validate_override_fails():
    overrides = {("lj2", "spectrum"): [(0.0, 3), (145.0, 1)]}
    table = validate(["lj2"], overrides=overrides, continuation=False)
    status = dict(zip(table.Check, table.Status))
    assert status["spectrum"] == "fail"
    assert status["energy"] == "pass"


def test_linear_periods():
    assert linear_periods([1.0, -144.0])[1] == pytest.approx(np.pi / 6)
    periods = linear_periods(SCHWARZSCHILD_EXAMPLE_CHARPOLY)
    assert list(periods) == [1, 2, 3]
    expected = [2.392435, 3.370559, 4.412446]
    assert list(periods.values()) == pytest.approx(expected, abs=1e-5)
    checks = {check: value for check, value, tol in expectations["schwarzschild-example"]}
    assert checks["period"] == periods


@pytest.mark.parametrize(
    "check,observed,expected,tol,status",
    [
        ("spectrum", [(0.0, 3), (144.0, 1)], [(0.0, 3), (144.0, 1)], 1e-8, True),
        ("spectrum", [(0.0, 3), (144.0, 2)], [(0.0, 3), (144.0, 1)], 1e-8, False),
        ("spectrum", [(0.0, 3)], [(0.0, 3), (144.0, 1)], 1e-8, False),
        ("sides", [1.0, 1.0, 1.0 + 1e-13], [1.0, 1.0, 1.0], 1e-12, True),
        ("admissible", [1, 2], [1, 2, 3], None, False),
        ("period", {1: [0.5236, 0.5237]}, {1: 0.5236}, 1e-3, True),
        ("period", {1: [0.5236, None]}, {1: 0.5236}, 1e-3, False),
        ("period", None, {1: 0.5236}, 1e-3, None),
    ],
)
def test_compare(check, observed, expected, tol, status):
    assert compare(check, observed, expected, tol) == status


@pytest.mark.slow
def test_validate_lj2_periods():
    table = validate(["lj2"])
    assert (table.Status == "pass").all()
