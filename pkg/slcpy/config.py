# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from .orbits import lj_equilibrium, refine_critical, schwarzschild_equilibrium
from .periodic import DEFAULT_AMPLITUDES, DEFAULT_MODES
from .potentials import InversePowerProfile, PotentialModel, pair_indices, particles_for_pairs
from copy import deepcopy
import json
import numpy as np
from pathlib import Path

PROBLEM_TYPES = ("lennard_jones", "schwarzschild", "custom")
MODES = ("ambient", "com_reduced")

DEFAULT_OPTIONS = {
    "grad_tol": 1e-8,
    "cluster_tol": 1e-7,
    "int_tol": 1e-9,
    "residual_tol": 1e-10,
    "eps_cap": 1e-2,
    "lambda_max": None,
    "n_modes": DEFAULT_MODES,
    "amplitudes": list(DEFAULT_AMPLITUDES),
    "mode": "ambient",
    "isolation_radius": 1e-2,
    "isolation_samples": 256,
    "isolation_threshold": 1e-6,
}
POSITIVE_OPTIONS = (
    "grad_tol",
    "cluster_tol",
    "int_tol",
    "residual_tol",
    "eps_cap",
    "isolation_radius",
    "isolation_threshold",
)
DEFAULT_ORBITS = {2: "q0", 3: "q04"}


class ConfigError(ValueError):
    """Invalid analysis configuration; `field` names the offending entry"""

    def __init__(self, message, field=None):
        text = message if field is None else f"{field}: {message}"
        super().__init__(text)
        self.field = field


def is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def check_numbers(values, field):
    if not isinstance(values, (list, tuple)):
        raise ConfigError(f"expected a list of numbers, got {type(values).__name__}", field)
    for index, value in enumerate(values):
        if not is_number(value):
            raise ConfigError(f"expected a number, got {value!r}", field=f"{field}[{index}]")


class AnalysisConfig:
    """Problem definition, numerical options and output locations for one analysis

    Configurations are JSON documents with the sections `problem`, `seed`, `options` and
    `outputs`; missing options take the values in DEFAULT_OPTIONS.
    """

    def __init__(self, problem, seed=None, options=None, outputs=None, name=None):
        sections = (("problem", problem), ("options", options), ("outputs", outputs))
        for field, section in sections:
            if (section is not None or field == "problem") and not isinstance(section, dict):
                message = f"expected a JSON object, got {type(section).__name__}"
                raise ConfigError(message, field=field)
        if seed is not None:
            check_numbers(seed, "seed")
        self.problem = dict(problem)
        self.seed = None if seed is None else [float(x) for x in seed]
        self.options = deepcopy(DEFAULT_OPTIONS)
        self.options.update(options or {})
        if isinstance(self.options["amplitudes"], (tuple, np.ndarray)):
            self.options["amplitudes"] = [float(a) for a in self.options["amplitudes"]]
        self.outputs = dict(outputs or {})
        self.name = name
        self.validate()

    @classmethod
    def load(cls, path):
        with open(path, "r") as instream:
            return cls.from_json(instream, name=Path(path).stem)

    @classmethod
    def from_json(cls, instream, name=None):
        try:
            payload = json.load(instream)
        except json.JSONDecodeError as error:
            message = f"invalid JSON at line {error.lineno}, column {error.colno}: {error.msg}"
            raise ConfigError(message) from error
        return cls.from_payload(payload, name=name)

    @classmethod
    def from_payload(cls, payload, name=None):
        if not isinstance(payload, dict):
            raise ConfigError(f"expected a JSON object, got {type(payload).__name__}")
        unknown = set(payload) - {"name", "problem", "seed", "options", "outputs"}
        if unknown:
            raise ConfigError(f"unknown section(s) {', '.join(sorted(unknown))}")
        if "problem" not in payload:
            raise ConfigError("missing required section", field="problem")
        return cls(
            payload["problem"],
            seed=payload.get("seed"),
            options=payload.get("options"),
            outputs=payload.get("outputs"),
            name=payload.get("name", name),
        )

    @property
    def payload(self):
        payload = {"problem": deepcopy(self.problem), "options": deepcopy(self.options)}
        if self.name is not None:
            payload = {"name": self.name, **payload}
        if self.seed is not None:
            payload["seed"] = list(self.seed)
        if self.outputs:
            payload["outputs"] = dict(self.outputs)
        return payload

    def with_options(self, **options):
        payload = self.payload
        payload["options"].update(options)
        return AnalysisConfig.from_payload(payload)

    def validate(self):
        kind = self.problem.get("type")
        if kind not in PROBLEM_TYPES:
            raise ConfigError(
                f"unsupported problem type {kind!r}; options are {', '.join(PROBLEM_TYPES)}",
                field="problem.type",
            )
        n = self.problem.get("n")
        if kind == "schwarzschild" and n is None and isinstance(self.problem.get("A"), list):
            try:
                n = particles_for_pairs(len(self.problem["A"]))
            except ValueError as error:
                raise ConfigError(str(error), field="problem.A") from error
            self.problem["n"] = n
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise ConfigError(f"expected an integer n >= 2, got {n!r}", field="problem.n")
        num_pairs = len(pair_indices(n))
        if kind == "schwarzschild":
            for key in ("A", "B"):
                values = self.problem.get(key)
                if not isinstance(values, list) or len(values) != num_pairs:
                    message = f"expected a list of {num_pairs} values in pair order"
                    raise ConfigError(message, field=f"problem.{key}")
                check_numbers(values, f"problem.{key}")
            for index, (a, b) in enumerate(zip(self.problem["A"], self.problem["B"])):
                if not a < 0 < b:
                    raise ConfigError(f"need A < 0 < B, got A={a}, B={b}", f"problem.A[{index}]")
        if kind == "custom":
            terms = self.problem.get("terms")
            if not isinstance(terms, list) or len(terms) == 0:
                raise ConfigError("expected a list of [coefficient, power]", "problem.terms")
            for index, term in enumerate(terms):
                valid = isinstance(term, list) and len(term) == 2 and all(map(is_number, term))
                if not valid or term[1] <= 0:
                    raise ConfigError(
                        f"expected [coefficient, power > 0], got {term!r}",
                        field=f"problem.terms[{index}]",
                    )
            if self.seed is None:
                raise ConfigError("custom problems need explicit seed coordinates", "seed")
        if self.seed is not None and len(self.seed) != 2 * n:
            raise ConfigError(f"expected {2 * n} coordinates, got {len(self.seed)}", "seed")
        unknown = set(self.options) - set(DEFAULT_OPTIONS)
        if unknown:
            raise ConfigError(f"unknown option(s) {', '.join(sorted(unknown))}", "options")
        for key in POSITIVE_OPTIONS:
            if not is_number(self.options[key]) or not self.options[key] > 0:
                raise ConfigError(f"must be positive, got {self.options[key]}", f"options.{key}")
        if self.options["mode"] not in MODES:
            raise ConfigError(
                f"unsupported mode {self.options['mode']!r}; options are {', '.join(MODES)}",
                field="options.mode",
            )
        lambda_max = self.options["lambda_max"]
        if lambda_max is not None and (not is_number(lambda_max) or not lambda_max > 0):
            raise ConfigError(f"must be positive, got {lambda_max}", "options.lambda_max")
        for key in ("n_modes", "isolation_samples"):
            value = self.options[key]
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"expected a positive integer, got {value!r}", f"options.{key}")
        amplitudes = self.options["amplitudes"]
        if (
            not isinstance(amplitudes, list)
            or len(amplitudes) == 0
            or not all(map(is_number, amplitudes))
            or any(a <= 0 for a in amplitudes)
            or any(b <= a for a, b in zip(amplitudes, amplitudes[1:]))
        ):
            message = "expected positive, strictly increasing values"
            raise ConfigError(message, field="options.amplitudes")
        if not isinstance(self.problem.get("orbit", ""), str):
            message = f"expected an orbit label, got {self.problem['orbit']!r}"
            raise ConfigError(message, field="problem.orbit")
        if "orientation" in self.problem and not is_number(self.problem["orientation"]):
            message = f"expected a number, got {self.problem['orientation']!r}"
            raise ConfigError(message, field="problem.orientation")
        for key, value in self.outputs.items():
            if not isinstance(value, str):
                raise ConfigError(f"expected a path, got {value!r}", field=f"outputs.{key}")

    @property
    def n(self):
        return self.problem["n"]

    @property
    def mode(self):
        return self.options["mode"]

    def build_model(self):
        kind = self.problem["type"]
        if kind == "lennard_jones":
            return PotentialModel.lennard_jones(self.n)
        if kind == "schwarzschild":
            return PotentialModel.schwarzschild(self.problem["A"], self.problem["B"])
        return PotentialModel.uniform(self.n, InversePowerProfile(self.problem["terms"]))

    def build_orbit(self, model=None):
        """Critical orbit named by the configuration, refined from `seed` when one is given"""
        model = self.build_model() if model is None else model
        label = self.problem.get("orbit")
        if self.seed is not None:
            return refine_critical(model, self.seed, label=label or "seed")
        kind = self.problem["type"]
        if kind == "lennard_jones":
            label = label or DEFAULT_ORBITS.get(self.n)
            if label is None:
                raise ConfigError(f"no built-in orbit for n={self.n}; give a seed", "seed")
            try:
                return lj_equilibrium(self.n, label)
            except ValueError as error:
                raise ConfigError(str(error), field="problem.orbit") from error
        if self.n != 3:
            raise ConfigError("Schwarzschild problems with n != 3 need a seed", "seed")
        orientation = float(self.problem.get("orientation", 0.0))
        return schwarzschild_equilibrium(
            model.pairs.values(), orientation=orientation, label=label or "schwarzschild"
        )
