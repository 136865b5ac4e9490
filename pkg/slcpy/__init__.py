# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

__version__ = "0.1.0"

from .potentials import Configuration, PotentialModel
from .orbits import CriticalOrbit, lj_equilibria, refine_critical
from .spectral import analyze_hessian
from .config import AnalysisConfig
from .report import AnalysisReport
from .pipeline import Analysis
from .cli import main
