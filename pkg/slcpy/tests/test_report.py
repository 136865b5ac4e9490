# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from io import StringIO
import numpy as np
import pytest
from slcpy.pipeline import Analysis
from slcpy.presets import preset_config
from slcpy.report import AnalysisReport, normalize


@pytest.fixture(scope="module")
def lj2_report():
    return Analysis(preset_config("lj2")).report()


def test_report_sections(lj2_report):
    assert lj2_report["orbit"]["label"] == "q0"
    assert lj2_report["config"]["name"] == "lj2"
    assert lj2_report["pair_minima"] == [
        {"pair": [1, 2], "distance": pytest.approx(1.0), "stiffness": pytest.approx(72.0)}
    ]
    assert sorted(lj2_report["spectra"]) == ["ambient", "com_reduced"]
    assert lj2_report["isolation"]["verdict"] == "isolated_on_slice"
    assert lj2_report.hypotheses_passed
    admissibility = lj2_report["resonance"]["admissibility"]
    assert [check["j0"] for check in admissibility if check["admissible"]] == [1]
    assert sorted(lj2_report["resonance"]["windows"]) == ["1"]
    assert lj2_report["families"] == {}
    assert lj2_report["warnings"] == []


def test_betas(lj2_report):
    assert lj2_report.betas == [(pytest.approx(12.0), 1)]


def test_round_trip(lj2_report):
    stream = StringIO()
    lj2_report.to_json(stream)
    stream.seek(0)
    copy = AnalysisReport.from_json(stream)
    assert copy == lj2_report
    assert copy.betas == lj2_report.betas


def test_write_and_load(lj2_report, tmp_path):
    path = tmp_path / "report.json"
    lj2_report.to_json(path)
    assert AnalysisReport.load(path) == lj2_report


def test_deterministic_output():
    outputs = list()
    for _ in range(2):
        stream = StringIO()
        Analysis(preset_config("lj2")).report().to_json(stream)
        outputs.append(stream.getvalue())
    assert outputs[0] == outputs[1]


def test_normalize():
    assert normalize(0.1 + 0.2) == 0.3
    assert normalize(np.float64(1 / 3)) == 0.333333333333333
    value = normalize(np.int64(7))
    assert value == 7 and type(value) is int
    assert normalize(np.bool_(True)) is True
    assert normalize(float("inf")) == "inf"
    assert normalize((1, 2.5)) == [1, 2.5]
    assert normalize(np.array([[1.0, 2.0]])) == [[1.0, 2.0]]
    assert normalize({1: {"a": None}}) == {"1": {"a": None}}


def test_unknown_sections():
    with pytest.raises(ValueError, match=r"unknown report section\(s\) extra"):
        AnalysisReport(extra=1)
    report = AnalysisReport()
    with pytest.raises(ValueError, match=r"unknown report section 'bogus'"):
        report.update("bogus", 1)
    report.update("warnings", ("a", "b"))
    assert report["warnings"] == ["a", "b"]


def test_not_a_report():
    with pytest.raises(ValueError, match=r"unexpected data type"):
        AnalysisReport.from_json(StringIO("[1, 2]"))


def test_summary(lj2_report):
    table = lj2_report.summary
    colnames = ["Orbit", "Mode", "Eigenvalues", "Morse", "Betas", "Hypotheses"]
    assert table.columns.tolist() == colnames
    assert table.Mode.tolist() == ["ambient", "com_reduced"]
    assert table.Eigenvalues.iloc[0].endswith("144 (x1)")
    assert (table.Hypotheses == "pass").all()


def test_certificate_summary(lj2_report):
    table = lj2_report.certificate_summary
    assert table.shape == (1, 8)
    row = table.iloc[0]
    assert row.j0 == 1
    assert row.rPlus - row.rMinus == 1
    assert (row.ChiMinus, row.ChiPlus) == ("I", "I - X(1)")
    assert bool(row.Changed)


def test_families_in_report():
    analysis = Analysis(preset_config("lj2"))
    analysis.continue_families(1, amplitudes=[1e-4, 1e-3], verify=False)
    report = analysis.report()
    (family,) = report["families"]["1"]
    assert family["j0"] == 1
    assert family["branch"] == 0
    assert not family["truncated"]
    assert [sample["amplitude"] for sample in family["samples"]] == [1e-4, 1e-3]
    assert family["samples"][0]["period"] == pytest.approx(np.pi / 6, abs=1e-3)


def test_collinear_report_has_no_certificates():
    report = Analysis(preset_config("lj3-collinear")).report()
    assert not report.hypotheses_passed
    assert report["hypotheses"]["minimality"] is False
    assert report["certificates"] == {}
    assert len(report.certificate_summary) == 0
