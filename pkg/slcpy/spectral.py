# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from .potentials import com_basis
from dataclasses import dataclass, field
import logging
import numpy as np
from scipy.linalg import LinAlgError, eigh, null_space

log = logging.getLogger(__name__)

MODES = ("ambient", "com_reduced", "normal_slice")

# Leading coefficient 5, not 6: only 5x^3 - 62x^2 + 225x - 243 has the roots 2.027, 3.475, 6.897.
SCHWARZSCHILD_EXAMPLE_CHARPOLY = (5.0, -62.0, 225.0, -243.0)


@dataclass
class SpectralData:
    """Clustered spectrum of the Hessian at a critical point, restricted to a subspace

    Eigenvalues are stored both raw (`raw`, ascending, with eigenvectors expressed in ambient
    coordinates) and clustered as (value, multiplicity) pairs. The frequencies `betas` are the
    square roots of the positive clusters in descending order.
    """

    mode: str
    eigenvalues: list
    kernel_dim: int
    betas: list
    morse_index: int
    extra_kernel_dim: int
    dimension: int
    cluster_tol: float
    raw: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)
    labels: np.ndarray = field(repr=False)
    warnings: list = field(default_factory=list)

    @property
    def m(self):
        return len(self.betas)

    def multiplicity(self, j):
        return self.betas[j - 1][1]

    def frequency(self, j):
        return self.betas[j - 1][0]

    def eigenspace(self, j):
        """Orthonormal eigenvectors (ambient coordinates, as columns) for beta_j^2, j from 1"""
        if not 1 <= j <= self.m:
            raise ValueError(f"frequency index j={j} out of range 1..{self.m}")
        return self.vectors[:, self.labels == j]

    @property
    def kernel(self):
        return self.vectors[:, self.labels == 0]

    @property
    def nonzero(self):
        return self.raw[self.labels != 0]

    @property
    def payload(self):
        return {
            "mode": self.mode,
            "dimension": self.dimension,
            "eigenvalues": [[value, mult] for value, mult in self.eigenvalues],
            "kernel_dim": self.kernel_dim,
            "betas": [[beta, mult] for beta, mult in self.betas],
            "morse_index": self.morse_index,
            "extra_kernel_dim": self.extra_kernel_dim,
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class HypothesisReport:
    """Checkable hypotheses for applying the Liapunov center theorem at a critical orbit"""

    minimality: bool
    isolation: bool
    free_action: bool
    positive_frequency: bool

    @property
    def passed(self):
        return all(self.checks.values())

    @property
    def checks(self):
        return {
            "minimality": self.minimality,
            "isolation": self.isolation,
            "free_action": self.free_action,
            "positive_frequency": self.positive_frequency,
        }

    @property
    def failures(self):
        return [name for name, holds in self.checks.items() if not holds]

    @property
    def payload(self):
        return dict(self.checks)


def subspace_basis(orbit, mode):
    """Orthonormal basis (columns) of the subspace a spectral mode restricts the Hessian to"""
    dim = 2 * orbit.n
    if mode == "ambient":
        return np.eye(dim)
    if mode == "com_reduced":
        return com_basis(orbit.n)
    if mode == "normal_slice":
        return null_space(np.vstack([orbit.translation_directions, orbit.tangent_rotation]))
    raise ValueError(f"unsupported spectral mode '{mode}'; options are {', '.join(MODES)}")


def symmetry_dimension(mode, translation_invariant=True):
    if mode == "ambient":
        return 3 if translation_invariant else 1
    if mode == "com_reduced":
        return 1
    return 0


def analyze_hessian(model, orbit, mode="ambient", cluster_tol=1e-7, grad_tol=1e-8):
    """Spectral data of the Hessian at a critical orbit in the requested mode

    Modes: `ambient` (full 2N space), `com_reduced` (centre-of-mass-zero subspace) and
    `normal_slice` (additionally orthogonal to the rotation tangent).
    """
    if orbit.grad_norm > grad_tol:
        raise ValueError(
            f"orbit {orbit.label} is not critical: |grad U|={orbit.grad_norm:.3e} exceeds "
            f"{grad_tol:.1e}"
        )
    basis = subspace_basis(orbit, mode)
    hessian = model.hessian(orbit.q0)
    sym = symmetry_dimension(mode, model.translation_invariant)
    return spectral_data_from_matrix(hessian, mode, cluster_tol, basis=basis, symmetry_dim=sym)


def spectral_data_from_matrix(
    matrix, mode="ambient", cluster_tol=1e-7, basis=None, symmetry_dim=0
):
    """Cluster the spectrum of a symmetric matrix restricted to span(basis)

    The clustering tolerance is relative to the spectral radius. Eigenvalues within tolerance of
    zero form the kernel; clusters closer than ten tolerances and near-zero eigenvalues just
    outside the kernel are recorded as warnings.
    """
    if cluster_tol <= 0:
        raise ValueError(f"cluster tolerance must be positive, got {cluster_tol}")
    matrix = np.asarray(matrix, dtype=float)
    if basis is None:
        basis = np.eye(matrix.shape[0])
    restricted = basis.T @ matrix @ basis
    restricted = 0.5 * (restricted + restricted.T)
    try:
        values, vectors = eigh(restricted)
    except LinAlgError as error:
        raise RuntimeError(f"symmetric eigensolver failed in {mode} mode") from error
    vectors = basis @ vectors
    radius = max(np.abs(values).max(), np.finfo(float).tiny)
    tol = cluster_tol * radius
    warnings = list()

    clusters = [[0]]
    for index in range(1, len(values)):
        if values[index] - values[index - 1] <= tol:
            clusters[-1].append(index)
        else:
            clusters.append([index])
    means = [values[cluster].mean() for cluster in clusters]
    for left, right in zip(means, means[1:]):
        if right - left <= 10 * tol:
            warnings.append(
                f"ambiguous clustering: clusters at {left:.10g} and {right:.10g} are closer "
                f"than 10 x cluster tolerance"
            )
    for value in values:
        if tol < abs(value) <= 10 * tol:
            warnings.append(f"borderline kernel eigenvalue {value:.3e} kept outside the kernel")

    labels = np.full(len(values), -1)
    eigenvalues = list()
    kernel_dim = 0
    morse_index = 0
    positive = list()
    for cluster, mean in zip(clusters, means):
        if abs(mean) <= tol:
            labels[cluster] = 0
            kernel_dim += len(cluster)
            eigenvalues.append((0.0, len(cluster)))
        else:
            eigenvalues.append((float(mean), len(cluster)))
            if mean < 0:
                morse_index += len(cluster)
            else:
                positive.append((cluster, mean))
    betas = list()
    for j, (cluster, mean) in enumerate(reversed(positive), start=1):
        labels[cluster] = j
        betas.append((float(np.sqrt(mean)), len(cluster)))
    extra = kernel_dim - symmetry_dim
    if extra < 0:
        warnings.append(
            f"kernel dimension {kernel_dim} is below the symmetry tangent dimension "
            f"{symmetry_dim}"
        )
        extra = 0
    for message in warnings:
        log.warning(f"{mode} spectrum: {message}")
    return SpectralData(
        mode=mode,
        eigenvalues=eigenvalues,
        kernel_dim=kernel_dim,
        betas=betas,
        morse_index=morse_index,
        extra_kernel_dim=extra,
        dimension=len(values),
        cluster_tol=cluster_tol,
        raw=values,
        vectors=vectors,
        labels=labels,
        warnings=warnings,
    )


def check_hypotheses(data, isolation):
    """Evaluate the four hypotheses: minimality, isolation, free action and m >= 1

    The rotation action is free on collision-free configurations, so the free-action
    hypothesis always holds.
    """
    return HypothesisReport(
        minimality=data.morse_index == 0,
        isolation=isolation.isolated,
        free_action=True,
        positive_frequency=data.m >= 1,
    )


def characteristic_polynomial(data, include_kernel=False):
    """Monic characteristic polynomial coefficients rebuilt from computed eigenvalues"""
    roots = data.raw if include_kernel else data.nonzero
    return np.poly(roots)


def characteristic_polynomial_check(data, expected_coeffs):
    """Largest deviation between computed and expected (rescaled to monic) coefficients

    The kernel factor x^k is included when the expected polynomial has full degree.
    """
    expected = np.asarray(expected_coeffs, dtype=float)
    expected = expected / expected[0]
    include_kernel = len(expected) - 1 == data.dimension
    observed = characteristic_polynomial(data, include_kernel=include_kernel)
    if len(observed) != len(expected):
        raise ValueError(
            f"computed polynomial has degree {len(observed) - 1}, expected degree "
            f"{len(expected) - 1}"
        )
    return float(np.max(np.abs(observed - expected)))
