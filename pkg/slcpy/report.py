# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

import json
import numpy as np
import pandas as pd
from pathlib import Path

SECTIONS = (
    "config",
    "orbit",
    "pair_minima",
    "spectra",
    "isolation",
    "hypotheses",
    "resonance",
    "certificates",
    "families",
    "warnings",
)


def normalize(value):
    """Plain JSON types with floats rounded to 15 significant digits"""
    if isinstance(value, dict):
        return {str(key): normalize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [normalize(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not np.isfinite(value):
            return str(value)
        return float(f"{value:.15g}")
    return value


class AnalysisReport:
    """Machine-readable record of one analysis run

    Every section is stored as a nested payload of plain JSON types, so a report written with
    `to_json` and read back with `load` compares equal to the original.
    """

    def __init__(self, **sections):
        unknown = set(sections) - set(SECTIONS)
        if unknown:
            raise ValueError(f"unknown report section(s) {', '.join(sorted(unknown))}")
        self._payload = {key: normalize(sections.get(key)) for key in SECTIONS}
        if self._payload["warnings"] is None:
            self._payload["warnings"] = list()
        for key in ("certificates", "families"):
            if self._payload[key] is None:
                self._payload[key] = dict()

    def __getitem__(self, key):
        return self._payload[key]

    def update(self, key, value):
        if key not in SECTIONS:
            raise ValueError(f"unknown report section '{key}'")
        self._payload[key] = normalize(value)

    def add_certificate(self, certificate):
        self._payload["certificates"][str(certificate.j0)] = normalize(certificate.payload)

    def add_family(self, family):
        entries = self._payload["families"].setdefault(str(family.j0), list())
        entries.append(normalize(family.payload))
        self._payload["warnings"].extend(normalize(family.warnings))

    @property
    def payload(self):
        return self._payload

    @property
    def hypotheses_passed(self):
        hypotheses = self._payload["hypotheses"]
        return hypotheses is not None and all(hypotheses.values())

    @property
    def betas(self):
        mode = self._payload["config"]["options"]["mode"]
        return [tuple(beta) for beta in self._payload["spectra"][mode]["betas"]]

    @property
    def summary(self):
        colnames = ["Orbit", "Mode", "Eigenvalues", "Morse", "Betas", "Hypotheses"]
        orbit = self._payload["orbit"]["label"]
        hypotheses = "pass" if self.hypotheses_passed else "fail"
        rows = list()
        for mode, data in self._payload["spectra"].items():
            eigenvalues = [f"{value:.6g} (x{mult})" for value, mult in data["eigenvalues"]]
            eigenvalues = ", ".join(eigenvalues)
            betas = ", ".join(f"{beta:.6g}" for beta, mult in data["betas"])
            rows.append((orbit, mode, eigenvalues, data["morse_index"], betas, hypotheses))
        return pd.DataFrame(rows, columns=colnames)

    @property
    def certificate_summary(self):
        colnames = ["j0", "LambdaMinus", "LambdaPlus", "rMinus", "rPlus", "ChiMinus", "ChiPlus"]
        colnames.append("Changed")
        rows = [
            (
                int(j0),
                cert["lambda_minus"],
                cert["lambda_plus"],
                cert["r_minus"],
                cert["r_plus"],
                cert["chi_minus"],
                cert["chi_plus"],
                cert["changed"],
            )
            for j0, cert in self._payload["certificates"].items()
        ]
        return pd.DataFrame(rows, columns=colnames)

    @classmethod
    def load(cls, path):
        with open(path, "r") as instream:
            return cls.from_json(instream)

    @classmethod
    def from_json(cls, instream):
        payload = json.load(instream)
        if not isinstance(payload, dict):
            raise ValueError(f"unexpected data type '{type(payload)}'")
        return cls(**{key: payload.get(key) for key in SECTIONS})

    def to_json(self, output):
        if isinstance(output, (str, Path)):
            with open(output, "w") as outstream:
                json.dump(self._payload, outstream, indent=4)
        else:
            json.dump(self._payload, output, indent=4)

    def __eq__(self, other):
        if not isinstance(other, AnalysisReport):
            return NotImplemented
        return self._payload == other._payload
