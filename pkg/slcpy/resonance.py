# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from dataclasses import dataclass, field
import logging
import numpy as np

log = logging.getLogger(__name__)


class ResonanceCrowdingError(ValueError):
    pass


@dataclass(frozen=True)
class ResonanceValue:
    """An element k/beta_j of the resonance set, with every (k, j) producing it"""

    value: float
    provenance: tuple

    @property
    def payload(self):
        return {"value": self.value, "provenance": [list(kj) for kj in self.provenance]}


@dataclass(frozen=True)
class Admissibility:
    j0: int
    admissible: bool
    ratios: dict
    resonant: tuple = ()

    @property
    def payload(self):
        return {
            "j0": self.j0,
            "admissible": self.admissible,
            "ratios": {str(j): ratio for j, ratio in self.ratios.items()},
            "resonant": list(self.resonant),
        }


@dataclass(frozen=True)
class Window:
    """Bifurcation window [lambda_minus, lambda_plus] = [(1 - eps), (1 + eps)] / beta_j0"""

    j0: int
    beta: float
    lambda0: float
    lambda_minus: float
    lambda_plus: float
    eps: float

    @property
    def period(self):
        return 2 * np.pi / self.beta

    @property
    def sign_product(self):
        lower, upper = self.lambda_minus * self.beta, self.lambda_plus * self.beta
        return (1 - lower**2) * (1 - upper**2)

    @property
    def payload(self):
        return {
            "j0": self.j0,
            "beta": self.beta,
            "lambda0": self.lambda0,
            "lambda_minus": self.lambda_minus,
            "lambda_plus": self.lambda_plus,
            "eps": self.eps,
            "period": self.period,
        }


@dataclass(frozen=True)
class PeriodGuarantee:
    holds: bool
    k_range: tuple
    witnesses: tuple = ()


@dataclass
class ResonanceReport:
    betas: list
    lambda_set: list
    admissibility: list
    windows: dict = field(default_factory=dict)
    guarantees: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def admissible(self):
        return [check.j0 for check in self.admissibility if check.admissible]

    @property
    def ratios(self):
        """Matrix of ratios beta_j / beta_j0 (rows j0, columns j)"""
        b = np.array(frequencies(self.betas))
        return b[None, :] / b[:, None]

    @property
    def payload(self):
        return {
            "betas": [[beta, mult] for beta, mult in self.betas],
            "lambda_set": [entry.payload for entry in self.lambda_set],
            "admissibility": [check.payload for check in self.admissibility],
            "windows": {str(j0): window.payload for j0, window in self.windows.items()},
            "minimal_period": {str(j0): g.holds for j0, g in self.guarantees.items()},
            "warnings": list(self.warnings),
        }


def frequencies(betas):
    """Plain list of frequencies from either floats or (beta, multiplicity) pairs"""
    values = [beta[0] if isinstance(beta, (tuple, list)) else beta for beta in betas]
    values = [float(value) for value in values]
    if len(values) == 0:
        raise ValueError("at least one positive frequency is required")
    if min(values) <= 0:
        raise ValueError("frequencies must be positive")
    return values


def lambda_set(betas, lambda_max, merge_tol=1e-12):
    """All values k/beta_j <= lambda_max (k = 1, 2, ...), sorted, duplicates merged"""
    if lambda_max <= 0:
        raise ValueError(f"lambda_max must be positive, got {lambda_max}")
    entries = list()
    for j, beta in enumerate(frequencies(betas), start=1):
        kmax = int(np.floor(lambda_max * beta * (1 + 1e-14)))
        for k in range(1, kmax + 1):
            if k / beta <= lambda_max * (1 + 1e-14):
                entries.append((k / beta, k, j))
    entries.sort()
    merged = list()
    for value, k, j in entries:
        if merged and abs(value - merged[-1][0]) <= merge_tol * value:
            merged[-1][1].append((k, j))
        else:
            merged.append((value, [(k, j)]))
    return [ResonanceValue(value, tuple(provenance)) for value, provenance in merged]


def near_integer(ratio, int_tol):
    nearest = round(ratio)
    return nearest >= 1 and abs(ratio - nearest) <= int_tol


def admissible_frequencies(betas, int_tol=1e-9):
    """Admissibility diagnostics for every frequency index j0 (1-based)

    beta_j0 is admissible when no other ratio beta_j / beta_j0 lies within int_tol of a positive
    integer. Near-integer ratios are reported in `resonant`.
    """
    if not 0 < int_tol < 0.5:
        raise ValueError(f"integer tolerance must lie in (0, 0.5), got {int_tol}")
    values = frequencies(betas)
    checks = list()
    for j0, beta0 in enumerate(values, start=1):
        ratios = {j: beta / beta0 for j, beta in enumerate(values, start=1) if j != j0}
        resonant = tuple(j for j, ratio in ratios.items() if near_integer(ratio, int_tol))
        for j in resonant:
            log.warning(f"beta_{j} / beta_{j0} = {ratios[j]:.12g} is an integer within {int_tol}")
        checks.append(Admissibility(j0, len(resonant) == 0, ratios, resonant))
    return checks


def require_admissible(betas, j0, int_tol=1e-9):
    checks = admissible_frequencies(betas, int_tol=int_tol)
    admissible = [check.j0 for check in checks if check.admissible]
    if not 1 <= j0 <= len(checks):
        raise ValueError(
            f"frequency index j0={j0} out of range 1..{len(checks)}; admissible indices: "
            f"{admissible}"
        )
    if not checks[j0 - 1].admissible:
        raise ValueError(
            f"frequency index j0={j0} is not admissible; admissible indices: {admissible}"
        )


def choose_window(betas, j0, eps_cap=1e-2, eps_floor=1e-12, int_tol=1e-9):
    """Largest window (1 +/- eps)/beta_j0, eps <= eps_cap, meeting the resonance set only once

    Eps is halved until the closed window contains no resonance value other than 1/beta_j0.
    """
    require_admissible(betas, j0, int_tol=int_tol)
    beta = frequencies(betas)[j0 - 1]
    lambda0 = 1 / beta
    eps = eps_cap
    while eps >= eps_floor:
        lower, upper = (1 - eps) * lambda0, (1 + eps) * lambda0
        inside = [
            entry
            for entry in lambda_set(betas, upper)
            if lower <= entry.value and abs(entry.value - lambda0) > 1e-12 * lambda0
        ]
        if not inside:
            return Window(j0, beta, lambda0, lower, upper, eps)
        eps /= 2
    raise ResonanceCrowdingError(
        f"no window around 1/beta_{j0} with eps >= {eps_floor:.0e} avoids other resonances"
    )


def minimal_period_guarantee(betas, j0, k_max=16, int_tol=1e-9):
    """Check 1/(k beta_j0) is not a resonance value for k = 2..k_max

    A resonance k'/beta_j = 1/(k beta_j0) means beta_j / beta_j0 = k k'; the witnesses list any
    (k, j, k') found.
    """
    require_admissible(betas, j0, int_tol=int_tol)
    values = frequencies(betas)
    beta0 = values[j0 - 1]
    witnesses = list()
    for k in range(2, k_max + 1):
        for j, beta in enumerate(values, start=1):
            kprime = beta / (k * beta0)
            if near_integer(kprime, int_tol):
                witnesses.append((k, j, int(round(kprime))))
    return PeriodGuarantee(len(witnesses) == 0, (2, k_max), tuple(witnesses))


def resonance_report(betas, lambda_max=None, eps_cap=1e-2, int_tol=1e-9, k_max=16):
    """Resonance set, admissibility, windows and period guarantees in one report"""
    values = frequencies(betas)
    if lambda_max is None:
        lambda_max = 3 / min(values)
    checks = admissible_frequencies(betas, int_tol=int_tol)
    report = ResonanceReport(list(betas), lambda_set(betas, lambda_max), checks)
    for check in checks:
        if check.resonant:
            report.warnings.append(
                f"j0={check.j0} inadmissible: integer ratio with beta_j for j in "
                f"{list(check.resonant)}"
            )
            continue
        report.windows[check.j0] = choose_window(betas, check.j0, eps_cap=eps_cap, int_tol=int_tol)
        report.guarantees[check.j0] = minimal_period_guarantee(
            betas, check.j0, k_max=k_max, int_tol=int_tol
        )
    return report
