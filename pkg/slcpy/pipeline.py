# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from .euler import bifurcation_certificate
from .orbits import isolation_scan
from .periodic import continue_family, verify_family
from .report import AnalysisReport
from .resonance import require_admissible, resonance_report
from .spectral import analyze_hessian, check_hypotheses
from concurrent.futures import ThreadPoolExecutor
import logging

log = logging.getLogger(__name__)


class Analysis:
    """Orbit, spectra, hypotheses, resonance data and certificates for one configuration

    Steps run lazily in dependency order; `report` assembles everything computed so far.
    Certificates are produced only when every hypothesis holds.
    """

    def __init__(self, config):
        self.config = config
        self.model = config.build_model()
        self.orbit = config.build_orbit(self.model)
        self._spectra = None
        self._isolation = None
        self._resonance = None
        self._certificates = None
        self.families = dict()

    @property
    def options(self):
        return self.config.options

    @property
    def spectra(self):
        if self._spectra is None:
            self._spectra = {
                mode: analyze_hessian(
                    self.model,
                    self.orbit,
                    mode=mode,
                    cluster_tol=self.options["cluster_tol"],
                    grad_tol=self.options["grad_tol"],
                )
                for mode in ("ambient", "com_reduced")
            }
        return self._spectra

    @property
    def spectral(self):
        return self.spectra[self.config.mode]

    @property
    def isolation(self):
        if self._isolation is None:
            self._isolation = isolation_scan(
                self.model,
                self.orbit,
                slice_radius=self.options["isolation_radius"],
                samples=self.options["isolation_samples"],
                threshold=self.options["isolation_threshold"],
            )
        return self._isolation

    @property
    def hypotheses(self):
        return check_hypotheses(self.spectral, self.isolation)

    @property
    def resonance(self):
        if self._resonance is None and self.spectral.m > 0:
            self._resonance = resonance_report(
                self.spectral.betas,
                lambda_max=self.options["lambda_max"],
                eps_cap=self.options["eps_cap"],
                int_tol=self.options["int_tol"],
            )
        return self._resonance

    @property
    def certificates(self):
        if self._certificates is None:
            self._certificates = dict()
            if self.hypotheses.passed:
                for j0, window in self.resonance.windows.items():
                    self._certificates[j0] = bifurcation_certificate(
                        self.spectral, j0, window, int_tol=self.options["int_tol"]
                    )
            else:
                failures = ", ".join(self.hypotheses.failures)
                log.warning(f"{self.orbit.label}: no certificates; failed hypotheses: {failures}")
        return self._certificates

    def check_j0(self, j0):
        """Raise ValueError listing the admissible indices when j0 cannot be continued"""
        if self.spectral.m == 0:
            raise ValueError(f"orbit {self.orbit.label} has no positive frequency to continue")
        require_admissible(self.spectral.betas, j0, int_tol=self.options["int_tol"])

    def continue_families(self, j0, amplitudes=None, verify=True, threads=1, progress=False):
        """Continue every branch of the beta_j0 family; branches may run concurrently"""
        self.check_j0(j0)
        amplitudes = self.options["amplitudes"] if amplitudes is None else amplitudes
        certificate = self.certificates.get(j0)

        def run(branch):
            family = continue_family(
                self.model,
                self.orbit,
                self.spectral,
                j0,
                amplitudes=amplitudes,
                n_modes=self.options["n_modes"],
                residual_tol=self.options["residual_tol"],
                branch=branch,
                certificate=certificate,
                progress=progress,
            )
            if verify:
                verify_family(self.model, family, self.orbit)
            return family

        branches = range(self.spectral.multiplicity(j0))
        with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
            families = list(executor.map(run, branches))
        self.families[j0] = families
        return families

    def report(self):
        spectra = self.spectra
        warnings = list()
        for data in spectra.values():
            warnings.extend(f"{data.mode}: {message}" for message in data.warnings)
        report = AnalysisReport(
            config=self.config.payload,
            orbit=self.orbit.payload,
            pair_minima=[
                {"pair": [i + 1, j + 1], "distance": r0, "stiffness": stiffness}
                for i, j, r0, stiffness in self.model.pair_minima()
            ],
            spectra={mode: data.payload for mode, data in spectra.items()},
            isolation=self.isolation.payload,
            hypotheses=self.hypotheses.payload,
            resonance=None if self.resonance is None else self.resonance.payload,
            warnings=warnings,
        )
        if self.resonance is not None:
            report.payload["warnings"].extend(self.resonance.warnings)
        for certificate in self.certificates.values():
            report.add_certificate(certificate)
            report.payload["warnings"].extend(certificate.warnings)
        for families in self.families.values():
            for family in families:
                report.add_family(family)
        return report
