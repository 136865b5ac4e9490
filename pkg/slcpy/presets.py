# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from .config import AnalysisConfig
from .periodic import relative_equilibrium_period_bound
from .pipeline import Analysis
from .spectral import SCHWARZSCHILD_EXAMPLE_CHARPOLY, characteristic_polynomial_check
from copy import deepcopy
import logging
import math
import numpy as np
import pandas as pd

log = logging.getLogger(__name__)


presets = {
    "lj2": {
        "name": "lj2",
        "problem": {"type": "lennard_jones", "n": 2, "orbit": "q0"},
    },
    "lj3": {
        "name": "lj3",
        "problem": {"type": "lennard_jones", "n": 3, "orbit": "q04"},
    },
    "lj3-mirror": {
        "name": "lj3-mirror",
        "problem": {"type": "lennard_jones", "n": 3, "orbit": "q05"},
    },
    "lj3-collinear": {
        "name": "lj3-collinear",
        "problem": {"type": "lennard_jones", "n": 3, "orbit": "q01"},
    },
    "schwarzschild-example": {
        "name": "schwarzschild-example",
        "problem": {
            "type": "schwarzschild",
            "n": 3,
            "A": [-1.5, -1.0, -0.6],
            "B": [0.5, 1 / 3, 0.2],
            "orientation": 0.0,
        },
    },
}


def linear_periods(coeffs):
    """Periods 2 pi / beta_j of the linearized modes, j ordered by decreasing beta"""
    squares = sorted(np.roots(coeffs).real, reverse=True)
    return {j: 2 * math.pi / math.sqrt(value) for j, value in enumerate(squares, start=1)}


# Expected values per preset: (check name, expected value, tolerance); a tolerance of None means
# exact comparison.
expectations = {
    "lj2": [
        ("energy", -1.0, 1e-12),
        ("spectrum", [(0.0, 3), (144.0, 1)], 1e-8),
        ("admissible", [1], None),
        ("changed", {1: True}, None),
        ("dimension_jump", {1: 1}, None),
        ("period", {1: math.pi / 6}, 1e-3),
    ],
    "lj3": [
        ("spectrum", [(0.0, 3), (108.0, 2), (216.0, 1)], 1e-6),
        ("admissible", [1, 2], None),
        ("changed", {1: True, 2: True}, None),
        ("dimension_jump", {1: 1, 2: 2}, None),
        ("period", {1: math.pi / (3 * math.sqrt(6)), 2: math.pi / (3 * math.sqrt(3))}, 1e-3),
    ],
    "lj3-mirror": [
        ("spectrum", [(0.0, 3), (108.0, 2), (216.0, 1)], 1e-6),
        ("changed", {1: True, 2: True}, None),
    ],
    "lj3-collinear": [
        ("minimality", False, None),
        ("certificates", 0, None),
    ],
    "schwarzschild-example": [
        ("sides", [1.0, 1.0, 1.0], 1e-12),
        ("charpoly", 0.0, 1e-6),
        ("admissible", [1, 2, 3], None),
        ("changed", {1: True, 2: True, 3: True}, None),
        ("dimension_jump", {1: 1, 2: 1, 3: 1}, None),
        ("period", linear_periods(SCHWARZSCHILD_EXAMPLE_CHARPOLY), 1e-3),
    ],
}


def preset_config(name, **options):
    if name not in presets:
        raise ValueError(f"unknown preset '{name}'; options are {', '.join(presets)}")
    payload = deepcopy(presets[name])
    payload.setdefault("options", dict()).update(options)
    return AnalysisConfig.from_payload(payload)


def observe(analysis, check, expected, continuation=True):
    """Observed value for one expectation; None when the check is skipped"""
    if check == "energy":
        return analysis.orbit.value
    if check == "spectrum":
        return analysis.spectra["ambient"].eigenvalues
    if check == "sides":
        return [float(r) for r in analysis.orbit.q0.pairwise_distances()]
    if check == "charpoly":
        data = analysis.spectra["com_reduced"]
        return characteristic_polynomial_check(data, SCHWARZSCHILD_EXAMPLE_CHARPOLY)
    if check == "admissible":
        return analysis.resonance.admissible
    if check == "minimality":
        return analysis.hypotheses.minimality
    if check == "certificates":
        return len(analysis.certificates)
    if check == "changed":
        return {j0: cert.changed for j0, cert in analysis.certificates.items()}
    if check == "dimension_jump":
        return {j0: cert.r_plus - cert.r_minus for j0, cert in analysis.certificates.items()}
    if check == "period":
        if not continuation:
            return None
        periods = dict()
        for j0 in expected:
            families = analysis.continue_families(j0, amplitudes=[1e-4, 1e-3], verify=False)
            periods[j0] = [family[-1].period if family else None for family in families]
        return periods
    raise ValueError(f"unknown check '{check}'")


def compare(check, observed, expected, tol):
    if observed is None:
        return None
    if check == "period":
        return all(
            all(p is not None and abs(p - expected[j0]) <= tol for p in periods)
            for j0, periods in observed.items()
        )
    if tol is None:
        return observed == expected
    if isinstance(expected, list) and expected and isinstance(expected[0], tuple):
        if len(observed) != len(expected):
            return False
        return all(
            abs(value - want) <= tol and mult == want_mult
            for (value, mult), (want, want_mult) in zip(observed, expected)
        )
    return bool(np.allclose(observed, expected, rtol=0, atol=tol))


def validate(names=None, overrides=None, continuation=True):
    """Run the built-in presets against their expected values

    Returns a table with one row per check. `overrides` replaces expected values, keyed by
    (preset, check). Periods are checked only when `continuation` holds; the LJ2 periods are
    additionally required to stay below the rigid-rotation period bound.
    """
    names = list(expectations) if names is None else list(names)
    overrides = overrides or dict()
    rows = list()
    for name in names:
        if name not in expectations:
            raise ValueError(f"unknown preset '{name}'; options are {', '.join(expectations)}")
        analysis = Analysis(preset_config(name))
        for check, expected, tol in expectations[name]:
            expected = overrides.get((name, check), expected)
            observed = observe(analysis, check, expected, continuation=continuation)
            status = compare(check, observed, expected, tol)
            if check == "period" and name == "lj2" and status is not None:
                bound = relative_equilibrium_period_bound()
                status = status and all(p < bound for p in observed[1])
            label = "skip" if status is None else ("pass" if status else "fail")
            log.info(f"{name} {check}: {label}")
            rows.append((name, check, str(expected), str(observed), label))
    colnames = ["Preset", "Check", "Expected", "Observed", "Status"]
    return pd.DataFrame(rows, columns=colnames)
