# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from io import StringIO
import json
import numpy as np
import pytest
from slcpy.config import DEFAULT_OPTIONS, AnalysisConfig, ConfigError
from slcpy.periodic import DEFAULT_AMPLITUDES, DEFAULT_MODES
from slcpy.tests import data_file


def test_load_lennard_jones():
    config = AnalysisConfig.load(data_file("lj2.json"))
    assert config.name == "lj2"
    assert config.n == 2
    assert config.mode == "ambient"
    assert config.options["n_modes"] == 12
    assert config.options["amplitudes"] == [1e-4, 1e-3]
    assert config.options["grad_tol"] == DEFAULT_OPTIONS["grad_tol"]
    model = config.build_model()
    orbit = config.build_orbit(model)
    assert orbit.label == "q0"
    assert orbit.value == pytest.approx(-1.0)


def test_load_schwarzschild():
    config = AnalysisConfig.load(data_file("schwarzschild.json"))
    assert config.n == 3
    assert config.mode == "com_reduced"
    orbit = config.build_orbit()
    assert orbit.q0.pairwise_distances() == pytest.approx(np.array([1.0, 1.0, 1.0]))
    angle = np.arctan2(orbit.q0.positions[0, 1], orbit.q0.positions[0, 0])
    assert angle == pytest.approx(0.5)


def test_load_custom():
    config = AnalysisConfig.load(data_file("custom.json"))
    orbit = config.build_orbit()
    assert orbit.label == "seed"
    assert orbit.grad_norm < 1e-9
    assert orbit.q0.pairwise_distances() == pytest.approx(np.array([1.0]))
    assert orbit.q0.com == pytest.approx(np.array([0.0, 0.015]))


def test_name_from_file_stem(tmp_path):
    path = tmp_path / "pair.json"
    with open(path, "w") as fh:
        json.dump({"problem": {"type": "lennard_jones", "n": 2}}, fh)
    config = AnalysisConfig.load(path)
    assert config.name == "pair"
    assert config.build_orbit().label == "q0"


def test_malformed_json():
    with pytest.raises(ConfigError, match=r"invalid JSON at line 4, column 9"):
        AnalysisConfig.load(data_file("bad-syntax.json"))


def test_bad_tolerance():
    with pytest.raises(ConfigError, match=r"options.cluster_tol: must be positive") as error:
        AnalysisConfig.load(data_file("bad-tolerance.json"))
    assert error.value.field == "options.cluster_tol"


LJ2 = {"type": "lennard_jones", "n": 2}


@pytest.mark.parametrize(
    "payload,message",
    [
        ({}, r"problem: missing required section"),
        ([], r"expected a JSON object, got list"),
        ({"problem": LJ2, "extra": 1}, r"unknown section\(s\) extra"),
        ({"problem": {"type": "morse"}}, r"problem.type: unsupported problem type 'morse'"),
        ({"problem": {"type": "lennard_jones", "n": 1}}, r"problem.n: expected an integer n >= 2"),
        ({"problem": {"type": "lennard_jones", "n": 2.0}}, r"problem.n: expected an integer"),
        (
            {"problem": {"type": "schwarzschild", "A": [-1, -1], "B": [1, 1]}},
            r"problem.A: 2 pair parameters do not match any particle count",
        ),
        (
            {"problem": {"type": "schwarzschild", "A": [-1, 1, -1], "B": [1, 1, 1]}},
            r"problem.A\[1\]: need A < 0 < B, got A=1, B=1",
        ),
        (
            {"problem": {"type": "schwarzschild", "n": 3, "A": [-1, -1, -1], "B": [1, 1]}},
            r"problem.B: expected a list of 3 values in pair order",
        ),
        (
            {"problem": {"type": "custom", "n": 2, "terms": [[1.0, 12]]}},
            r"seed: custom problems need explicit seed coordinates",
        ),
        (
            {"problem": {"type": "custom", "n": 2, "terms": [[1.0, -2]]}, "seed": [0, 0, 0, 1]},
            r"problem.terms\[0\]: expected \[coefficient, power > 0\]",
        ),
        ({"problem": LJ2, "seed": [0.0, 0.5, 0.0]}, r"seed: expected 4 coordinates, got 3"),
        ({"problem": LJ2, "options": {"foo": 1}}, r"options: unknown option\(s\) foo"),
        ({"problem": LJ2, "options": {"mode": "bogus"}}, r"options.mode: unsupported mode"),
        ({"problem": LJ2, "options": {"n_modes": 0}}, r"options.n_modes: expected a positive"),
        ({"problem": LJ2, "options": {"lambda_max": -1}}, r"options.lambda_max: must be positive"),
        (
            {"problem": LJ2, "options": {"amplitudes": [1e-3, 1e-4]}},
            r"options.amplitudes: expected positive, strictly increasing values",
        ),
        (
            {"problem": LJ2, "options": {"amplitudes": ["x"]}},
            r"options.amplitudes: expected positive, strictly increasing values",
        ),
        ({"problem": LJ2, "options": {"grad_tol": "1e-8"}}, r"options.grad_tol: must be positive"),
        ({"problem": LJ2, "options": {"lambda_max": "3"}}, r"options.lambda_max: must be"),
        ({"problem": LJ2, "options": {"n_modes": True}}, r"options.n_modes: expected a positive"),
        ({"problem": LJ2, "options": [1]}, r"options: expected a JSON object, got list"),
        ({"problem": ["lennard_jones"]}, r"problem: expected a JSON object, got list"),
        ({"problem": None}, r"problem: expected a JSON object, got NoneType"),
        ({"problem": LJ2, "seed": [0.0, "a", 0.0, 1.0]}, r"seed\[1\]: expected a number"),
        ({"problem": LJ2, "seed": "0 0 0 1"}, r"seed: expected a list of numbers, got str"),
        (
            {"problem": {"type": "schwarzschild", "A": ["a", -1, -1], "B": [1, 1, 1]}},
            r"problem.A\[0\]: expected a number, got 'a'",
        ),
        (
            {"problem": {"type": "custom", "n": 2, "terms": [["1", 12]]}, "seed": [0, 0, 0, 1]},
            r"problem.terms\[0\]: expected \[coefficient, power > 0\]",
        ),
        (
            {"problem": {**LJ2, "orientation": "north"}},
            r"problem.orientation: expected a number",
        ),
        ({"problem": {**LJ2, "orbit": 4}}, r"problem.orbit: expected an orbit label"),
        ({"problem": LJ2, "outputs": {"report": 1}}, r"outputs.report: expected a path"),
    ],
)
def test_invalid_payloads(payload, message):
    with pytest.raises(ConfigError, match=message):
        AnalysisConfig.from_payload(payload)


@pytest.mark.parametrize(
    "problem,message",
    [
        ({"type": "lennard_jones", "n": 4}, r"seed: no built-in orbit for n=4; give a seed"),
        (
            {"type": "lennard_jones", "n": 3, "orbit": "q09"},
            r"problem.orbit: unknown Lennard-Jones orbit 'q09'",
        ),
    ],
)
def test_unresolvable_orbits(problem, message):
    config = AnalysisConfig(problem)
    with pytest.raises(ConfigError, match=message):
        config.build_orbit()


def test_payload_round_trip():
    config = AnalysisConfig.load(data_file("schwarzschild.json"))
    copy = AnalysisConfig.from_json(StringIO(json.dumps(config.payload)))
    assert copy.payload == config.payload
    assert copy.name == "schwarzschild"


def test_with_options():
    config = AnalysisConfig.load(data_file("lj2.json"))
    updated = config.with_options(amplitudes=(1e-4, 2e-4), mode="com_reduced")
    assert updated.options["amplitudes"] == [1e-4, 2e-4]
    assert updated.mode == "com_reduced"
    assert config.mode == "ambient"
    with pytest.raises(ConfigError, match=r"options.eps_cap"):
        config.with_options(eps_cap=0)


def test_default_amplitudes_shared():
    assert DEFAULT_OPTIONS["amplitudes"] == list(DEFAULT_AMPLITUDES)
    assert DEFAULT_OPTIONS["n_modes"] == DEFAULT_MODES
    config = AnalysisConfig({"type": "lennard_jones", "n": 2})
    assert config.options["amplitudes"] == list(DEFAULT_AMPLITUDES)
