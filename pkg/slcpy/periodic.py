# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------
"""Fourier-Galerkin continuation of periodic orbits bifurcating from a critical orbit

Trajectories are written in rescaled time tau in [0, 2 pi], where x'' + lambda^2 grad U(x) = 0;
the physical solution q(s) = x(s / lambda) has period 2 pi lambda.
"""

from .orbits import GaugeError, reflection_symmetries
from .potentials import (
    CollisionError,
    align_rotation,
    com_projector,
    infinitesimal_rotation,
    orbit_distance,
    pair_indices,
)
from dataclasses import dataclass, field, replace
from math import gcd
import logging
import numpy as np
import pandas as pd
from pathlib import Path
from scipy.integrate import solve_ivp
from scipy.linalg import lstsq, qr
from tqdm import tqdm

log = logging.getLogger(__name__)

DEFAULT_MODES = 16
DEFAULT_AMPLITUDES = (1e-4, 1e-3, 2e-3, 5e-3, 1e-2)


class FourierTrajectory:
    """x(tau) = a0 + sum of a_k cos(k tau) + b_k sin(k tau) over k = 1..M, period scale lambda"""

    def __init__(self, a0, ak, bk, lam):
        self.a0 = np.asarray(a0, dtype=float)
        self.ak = np.atleast_2d(np.asarray(ak, dtype=float))
        self.bk = np.atleast_2d(np.asarray(bk, dtype=float))
        if self.ak.shape != self.bk.shape or self.ak.shape[1] != self.a0.size:
            raise ValueError(
                f"inconsistent Fourier blocks: a0 {self.a0.shape}, a_k {self.ak.shape}, "
                f"b_k {self.bk.shape}"
            )
        if lam <= 0:
            raise ValueError(f"period scale lambda must be positive, got {lam}")
        self.lam = float(lam)

    @classmethod
    def constant(cls, q, n_modes=DEFAULT_MODES, lam=1.0):
        q = np.asarray(q, dtype=float)
        zeros = np.zeros((n_modes, q.size))
        return cls(q, zeros, zeros.copy(), lam)

    @classmethod
    def unpack(cls, vector, dimension, n_modes):
        blocks = np.asarray(vector[: (2 * n_modes + 1) * dimension]).reshape(-1, dimension)
        lam = vector[-1] if len(vector) > blocks.size else 1.0
        return cls(blocks[0], blocks[1 : n_modes + 1], blocks[n_modes + 1 :], lam)

    def pack(self, with_lambda=True):
        blocks = self.coefficients.ravel()
        return np.append(blocks, self.lam) if with_lambda else blocks

    @property
    def coefficients(self):
        """Coefficient blocks stacked as rows: a0, a_1..a_M, b_1..b_M"""
        return np.vstack([self.a0, self.ak, self.bk])

    @property
    def n_modes(self):
        return len(self.ak)

    @property
    def dimension(self):
        return self.a0.size

    @property
    def period(self):
        return 2 * np.pi * self.lam

    def evaluate(self, tau):
        tau = np.atleast_1d(np.asarray(tau, dtype=float))
        k = np.arange(1, self.n_modes + 1)
        return self.a0 + np.cos(np.outer(tau, k)) @ self.ak + np.sin(np.outer(tau, k)) @ self.bk

    def derivative(self, tau, order=1):
        """Derivative with respect to the rescaled time tau"""
        tau = np.atleast_1d(np.asarray(tau, dtype=float))
        k = np.arange(1, self.n_modes + 1)
        phase = np.outer(tau, k) + order * np.pi / 2
        return (np.cos(phase) * k**order) @ self.ak + (np.sin(phase) * k**order) @ self.bk

    def mode_norms(self):
        return np.sqrt((self.ak**2).sum(axis=1) + (self.bk**2).sum(axis=1))

    def active_modes(self, rel_tol=1e-12):
        norms = self.mode_norms()
        if norms.size == 0 or norms.max() == 0:
            return []
        return [int(k) for k in np.flatnonzero(norms > rel_tol * norms.max()) + 1]

    def dilated(self, factor):
        """Same curve traversed `factor` times per period: mode k moves to mode k * factor"""
        ak = np.zeros((self.n_modes * factor, self.dimension))
        bk = np.zeros_like(ak)
        ak[factor - 1 :: factor] = self.ak
        bk[factor - 1 :: factor] = self.bk
        return FourierTrajectory(self.a0, ak, bk, self.lam * factor)

    def with_coefficients(self, vector):
        return FourierTrajectory.unpack(vector, self.dimension, self.n_modes)

    def __repr__(self):
        return f"FourierTrajectory(n_modes={self.n_modes}, lam={self.lam:.12g})"


def quadrature_nodes(n_modes, nodes=None):
    count = max(4 * n_modes + 4, nodes or 0)
    return 2 * np.pi * np.arange(count) / count


def _basis(n_modes, tau):
    """Basis functions (columns 1, cos k tau, sin k tau) and the matching projection weights"""
    k = np.arange(1, n_modes + 1)
    phi = np.hstack(
        [np.ones((len(tau), 1)), np.cos(np.outer(tau, k)), np.sin(np.outer(tau, k))]
    )
    weights = np.full(2 * n_modes + 1, 2.0 / len(tau))
    weights[0] = 1.0 / len(tau)
    stiffness = np.concatenate([[0.0], -(k**2.0), -(k**2.0)])
    return phi, phi * weights, stiffness


def galerkin_residual(model, traj, lam=None, nodes=None):
    """Fourier projection of x'' + lambda^2 grad U(x) on modes 0..M, as stacked blocks

    The projection uses the uniform trapezoid rule with at least 4M + 4 nodes; the linear part
    -k^2 (a_k, b_k) is exact.
    """
    lam = traj.lam if lam is None else lam
    tau = quadrature_nodes(traj.n_modes, nodes)
    phi, psi, stiffness = _basis(traj.n_modes, tau)
    coefficients = traj.coefficients
    grad = model.gradient(phi @ coefficients)
    residual = stiffness[:, None] * coefficients + lam**2 * (psi.T @ grad)
    return residual.ravel()


def galerkin_jacobian(model, traj, nodes=None):
    """Jacobian of galerkin_residual with respect to the packed coefficients and to lambda"""
    tau = quadrature_nodes(traj.n_modes, nodes)
    phi, psi, stiffness = _basis(traj.n_modes, tau)
    points = phi @ traj.coefficients
    hess = model.hessian(points)
    grad = model.gradient(points)
    lam = traj.lam
    blocks = lam**2 * np.einsum("ir,is,iab->rasb", psi, phi, hess)
    size = blocks.shape[0] * blocks.shape[1]
    jacobian = blocks.reshape(size, size)
    jacobian += np.diag(np.repeat(stiffness, traj.dimension))
    d_lambda = 2 * lam * (psi.T @ grad).ravel()
    return jacobian, d_lambda


def adapted_cluster_basis(spectral, orbit, j0, model=None, tol=1e-8):
    """Orthonormal COM-zero basis of the beta_j0 eigenspace and whether it is symmetry adapted

    For a degenerate cluster the basis diagonalizes the first mirror symmetry of the orbit that
    acts non-trivially on it, invariant directions first.
    """
    vectors = com_projector(orbit.n) @ spectral.eigenspace(j0)
    vectors, _ = qr(vectors, mode="economic")
    if vectors.shape[1] == 1 or model is None:
        return vectors, vectors.shape[1] == 1
    for action in reflection_symmetries(model, orbit.q0):
        restricted = vectors.T @ action @ vectors
        restricted = 0.5 * (restricted + restricted.T)
        if np.allclose(np.abs(restricted), np.eye(len(restricted)), atol=tol):
            if np.allclose(np.diag(restricted), np.diag(restricted)[0], atol=tol):
                continue
        values, rotation = np.linalg.eigh(restricted)
        order = np.argsort(-values)
        return vectors @ rotation[:, order], True
    return vectors, False


def kernel_predictor(spectral, orbit, j0, amplitude, n_modes=DEFAULT_MODES, branch=0, model=None):
    """q0 + a v cos(tau) with v a unit COM-zero eigenvector for beta_j0^2 and lambda = 1/beta_j0"""
    basis, _ = adapted_cluster_basis(spectral, orbit, j0, model=model)
    if not 0 <= branch < basis.shape[1]:
        raise ValueError(f"branch {branch} out of range for multiplicity {basis.shape[1]}")
    if basis.shape[1] > 1:
        log.info(f"beta_{j0} has multiplicity {basis.shape[1]}; predictor uses branch {branch}")
    traj = FourierTrajectory.constant(orbit.q0.coords, n_modes, 1 / spectral.frequency(j0))
    traj.ak[0] = amplitude * basis[:, branch]
    return traj


@dataclass
class OrbitFamilySample:
    amplitude: float
    trajectory: FourierTrajectory
    residual: float
    iterations: int = 0
    branch: int = 0
    dist_to_orbit: float = None
    closure_error: float = None
    first_return: float = None
    minimal_period_ok: bool = None

    @property
    def lam(self):
        return self.trajectory.lam

    @property
    def period(self):
        return self.trajectory.period

    @property
    def payload(self):
        return {
            "amplitude": self.amplitude,
            "lambda": self.lam,
            "period": self.period,
            "residual": self.residual,
            "iterations": self.iterations,
            "branch": self.branch,
            "dist_to_orbit": self.dist_to_orbit,
            "closure_error": self.closure_error,
            "first_return": self.first_return,
            "minimal_period_ok": self.minimal_period_ok,
        }


class FamilyResult(list):
    """Converged samples of one bifurcating family, ordered by increasing amplitude"""

    def __init__(self, j0, branch, lambda0, samples=None):
        super().__init__(samples or [])
        self.j0 = j0
        self.branch = branch
        self.lambda0 = lambda0
        self.truncated = False
        self.diagnostic = None
        self.warnings = list()

    @property
    def lambda_curvature(self):
        """Least-squares C in |lambda(a) - 1/beta_j0| ~ C a^2"""
        if len(self) == 0:
            return None
        a = np.array([sample.amplitude for sample in self])
        shift = np.abs(np.array([sample.lam for sample in self]) - self.lambda0)
        return float((shift * a**2).sum() / (a**4).sum())

    @property
    def summary(self):
        colnames = [
            "Branch",
            "Amplitude",
            "Lambda",
            "Period",
            "Residual",
            "ClosureError",
            "DistToOrbit",
            "MinimalPeriod",
        ]
        rows = [
            (
                sample.branch,
                sample.amplitude,
                sample.lam,
                sample.period,
                sample.residual,
                sample.closure_error,
                sample.dist_to_orbit,
                sample.minimal_period_ok,
            )
            for sample in self
        ]
        return pd.DataFrame(rows, columns=colnames)

    def to_csv(self, path):
        colnames = ["amplitude", "lambda", "period", "residual", "closure_error", "dist_to_orbit"]
        rows = [
            (s.amplitude, s.lam, s.period, s.residual, s.closure_error, s.dist_to_orbit)
            for s in self
        ]
        table = pd.DataFrame(rows, columns=colnames)
        table.to_csv(path, index=False, float_format="%.15g")

    @property
    def payload(self):
        return {
            "j0": self.j0,
            "branch": self.branch,
            "lambda0": self.lambda0,
            "truncated": self.truncated,
            "diagnostic": self.diagnostic,
            "lambda_curvature": self.lambda_curvature,
            "samples": [sample.payload for sample in self],
            "warnings": list(self.warnings),
        }


class _GaugedSystem:
    """Galerkin residual stacked with the linear gauge conditions G z = g"""

    def __init__(self, model, orbit, direction, others, n_modes, nodes=None):
        self.model = model
        self.n_modes = n_modes
        self.nodes = nodes
        dim = model.dimension
        blocks = 2 * n_modes + 1
        self.size = blocks * dim + 1
        q0 = orbit.q0.coords
        rows, targets = list(), list()

        def pin(block, vector, target=0.0):
            row = np.zeros(self.size)
            row[block * dim : (block + 1) * dim] = vector
            rows.append(row)
            targets.append(target)

        self._amplitude_row = len(rows)
        pin(1, direction)
        pin(n_modes + 1, direction)
        tangent = infinitesimal_rotation(q0 - np.tile(orbit.q0.com, orbit.n))
        pin(0, tangent / np.linalg.norm(tangent), tangent @ q0 / np.linalg.norm(tangent))
        for axis in range(2):
            unit = np.zeros(dim)
            unit[axis::2] = 1.0
            pin(0, unit, unit @ q0)
            if model.translation_invariant:
                for block in range(1, blocks):
                    pin(block, unit)
        for other in others:
            pin(1, other)
            pin(n_modes + 1, other)
        self.gauge = np.array(rows)
        self.targets = np.array(targets)

    def __call__(self, z, amplitude):
        traj = FourierTrajectory.unpack(z, self.model.dimension, self.n_modes)
        targets = self.targets.copy()
        targets[self._amplitude_row] = amplitude
        residual = galerkin_residual(self.model, traj, nodes=self.nodes)
        jacobian, d_lambda = galerkin_jacobian(self.model, traj, nodes=self.nodes)
        values = np.concatenate([residual, self.gauge @ z - targets])
        matrix = np.vstack([np.column_stack([jacobian, d_lambda]), self.gauge])
        return values, matrix, float(np.abs(residual).max())


def _newton(system, z, amplitude, tol, max_iter):
    initial = None
    for iteration in range(max_iter + 1):
        values, matrix, residual = system(z, amplitude)
        error = float(np.abs(values).max())
        if initial is None:
            initial = error
        if error <= tol:
            return z, residual, iteration, None
        finite = np.isfinite(error) and np.isfinite(matrix).all()
        if not finite or error > 1e3 * max(initial, tol):
            return z, residual, iteration, f"Newton iteration diverged (|F|={error:.3e})"
        if iteration == max_iter:
            break
        step, _, rank, _ = lstsq(matrix, -values, cond=1e-13)
        if rank < matrix.shape[1]:
            raise GaugeError(
                f"augmented Jacobian has rank {rank} < {matrix.shape[1]} unknowns; the gauge "
                f"conditions do not remove every symmetry direction"
            )
        z = z + step
    return z, residual, max_iter, f"no convergence in {max_iter} iterations (|F|={error:.3e})"


def continue_family(
    model,
    orbit,
    spectral,
    j0,
    amplitudes=None,
    n_modes=DEFAULT_MODES,
    residual_tol=1e-10,
    max_iter=30,
    branch=0,
    certificate=None,
    nodes=None,
    progress=False,
):
    """Continue the family bifurcating from orbit at lambda0 = 1/beta_j0 in the amplitude a

    Unknowns are the Fourier coefficients and lambda. The gauges fix <a_1, v> = a and
    <b_1, v> = 0, the rotation phase <a_0 - q0, J(q0 - c)> = 0, the centre of mass of a_0 and the
    total momentum of every mode. Other eigenvectors w of a degenerate cluster are pinned by
    <a_1, w> = <b_1, w> = 0 when the cluster basis is symmetry adapted. Newton failure at some
    amplitude truncates the family with a diagnostic.
    """
    amplitudes = np.asarray(DEFAULT_AMPLITUDES if amplitudes is None else amplitudes, float)
    if np.any(amplitudes <= 0) or np.any(np.diff(amplitudes) <= 0):
        raise ValueError("amplitudes must be positive and strictly increasing")
    lambda0 = 1 / spectral.frequency(j0)
    family = FamilyResult(j0, branch, lambda0)
    if certificate is None or not certificate.changed:
        message = f"continuing j0={j0} without a certificate showing an index change"
        family.warnings.append(message)
        log.warning(message)
    basis, adapted = adapted_cluster_basis(spectral, orbit, j0, model=model)
    if not 0 <= branch < basis.shape[1]:
        raise ValueError(f"branch {branch} out of range for multiplicity {basis.shape[1]}")
    direction = basis[:, branch]
    others = [basis[:, i] for i in range(basis.shape[1]) if i != branch] if adapted else []
    if basis.shape[1] > 1 and not adapted:
        message = f"no mirror symmetry splits the beta_{j0} cluster; other directions left free"
        family.warnings.append(message)
        log.warning(message)
    system = _GaugedSystem(model, orbit, direction, others, n_modes, nodes=nodes)
    base = FourierTrajectory.constant(orbit.q0.coords, n_modes, lambda0).pack()
    z = kernel_predictor(spectral, orbit, j0, amplitudes[0], n_modes, branch, model).pack()
    previous = amplitudes[0]
    description = f"j0={j0} branch={branch}"
    for amplitude in tqdm(amplitudes, desc=description, disable=not progress):
        guess = base + (z - base) * (amplitude / previous)
        guess[-1] = z[-1]
        try:
            solution, residual, iterations, failure = _newton(
                system, guess, amplitude, residual_tol, max_iter
            )
        except CollisionError as error:
            failure = f"trajectory left the collision-free region: {error}"
        if failure is not None:
            family.truncated = True
            family.diagnostic = f"a={amplitude:.3e}: {failure}"
            log.warning(f"{description}: family truncated at {family.diagnostic}")
            break
        traj = FourierTrajectory.unpack(solution, model.dimension, n_modes)
        tau = quadrature_nodes(n_modes, 8 * n_modes)
        distance = float(orbit_distance(traj.evaluate(tau), orbit.q0).max())
        family.append(
            OrbitFamilySample(amplitude, traj, residual, iterations, branch, distance)
        )
        log.debug(f"{description}: a={amplitude:.3e} lambda={traj.lam:.12g} ({iterations} it)")
        z, previous = solution, amplitude
    if family and abs(family[0].lam - lambda0) > 1e-2 * lambda0:
        message = (
            f"lambda at the smallest amplitude is {family[0].lam:.10g}, far from "
            f"1/beta_{j0} = {lambda0:.10g}"
        )
        family.warnings.append(message)
        log.warning(f"{description}: {message}")
    return family


def continue_branches(model, orbit, spectral, j0, **kwargs):
    """One family per orthonormal eigenvector of the beta_j0 cluster"""
    return [
        continue_family(model, orbit, spectral, j0, branch=branch, **kwargs)
        for branch in range(spectral.multiplicity(j0))
    ]


@dataclass
class IntegrationResult:
    times: np.ndarray = field(repr=False)
    positions: np.ndarray = field(repr=False)
    velocities: np.ndarray = field(repr=False)
    energy: np.ndarray = field(repr=False)
    method: str = "verlet"

    @property
    def states(self):
        return np.hstack([self.positions, self.velocities])

    @property
    def energy_drift(self):
        return float(np.abs(self.energy - self.energy[0]).max())

    @property
    def first_return(self):
        return first_return_time(self.times, self.positions, self.velocities)


def _energy(model, positions, velocities):
    return 0.5 * (velocities**2).sum(axis=-1) + model.energy(positions)


def integrate_ode(model, q, qdot, T, step, method="verlet"):
    """Integrate q'' = -grad U(q) on [0, T] with velocity Verlet or DOP853

    Verlet uses the largest step not exceeding `step` that divides T; DOP853 runs at tolerance
    1e-12 with `step` as the maximal step and reports on the same grid.
    """
    if T <= 0 or step <= 0:
        raise ValueError(f"integration time and step must be positive, got T={T}, step={step}")
    q = np.asarray(q, dtype=float).copy()
    v = np.asarray(qdot, dtype=float).copy()
    count = int(np.ceil(T / step - 1e-9))
    times = np.linspace(0.0, T, count + 1)
    if method == "verlet":
        h = T / count
        positions = np.empty((count + 1, q.size))
        velocities = np.empty_like(positions)
        positions[0], velocities[0] = q, v
        accel = -model.gradient(q)
        for index in range(1, count + 1):
            v_half = v + 0.5 * h * accel
            q = q + h * v_half
            accel = -model.gradient(q)
            v = v_half + 0.5 * h * accel
            positions[index], velocities[index] = q, v
    elif method == "dop853":
        dim = q.size

        def rhs(t, state):
            return np.concatenate([state[dim:], -model.gradient(state[:dim])])

        solution = solve_ivp(
            rhs,
            (0.0, T),
            np.concatenate([q, v]),
            method="DOP853",
            t_eval=times,
            rtol=1e-12,
            atol=1e-12,
            max_step=step,
        )
        if not solution.success:
            raise RuntimeError(f"DOP853 integration failed: {solution.message}")
        positions, velocities = solution.y[:dim].T, solution.y[dim:].T
    else:
        raise ValueError(f"unsupported integration method '{method}'; options: verlet, dop853")
    energy = _energy(model, positions, velocities)
    return IntegrationResult(times, positions, velocities, energy, method)


def _shape_features(positions, velocities):
    """Rotation-invariant features: pairwise distances and their rates of change"""
    n = positions.shape[-1] // 2
    first, second = np.array(pair_indices(n)).T
    x = positions.reshape(positions.shape[:-1] + (n, 2))
    u = velocities.reshape(velocities.shape[:-1] + (n, 2))
    diff = x[..., first, :] - x[..., second, :]
    rate = u[..., first, :] - u[..., second, :]
    r = np.sqrt((diff**2).sum(axis=-1))
    return np.concatenate([r, (diff * rate).sum(axis=-1) / r], axis=-1)


def first_return_time(times, positions, velocities, rel_tol=0.1):
    """First time the shape of the configuration returns close to its initial shape

    Returns the first local minimum of the feature distance that falls below rel_tol times the
    largest distance seen so far, refined by a parabola through the neighbouring samples.
    """
    features = _shape_features(positions, velocities)
    distance = np.linalg.norm(features - features[0], axis=-1)
    if distance.max() <= 1e-14:
        return None
    running = np.maximum.accumulate(distance)
    for i in range(1, len(distance) - 1):
        if distance[i] <= distance[i - 1] and distance[i] <= distance[i + 1]:
            if distance[i] < rel_tol * running[i]:
                left, centre, right = distance[i - 1 : i + 2]
                curvature = left - 2 * centre + right
                offset = 0.5 * (left - right) / curvature if curvature > 0 else 0.0
                return float(times[i] + offset * (times[i + 1] - times[i]))
    return None


def closure_error(initial, final, centre):
    """Phase-space mismatch |x(0) - R x(T)| minimized over rotations R about the centre"""
    n = len(initial) // 4
    start = np.vstack([initial[: 2 * n].reshape(n, 2) - centre, initial[2 * n :].reshape(n, 2)])
    end = np.vstack([final[: 2 * n].reshape(n, 2) - centre, final[2 * n :].reshape(n, 2)])
    theta = align_rotation(start, end)
    c, s = np.cos(theta), np.sin(theta)
    rotated = end @ np.array([[c, -s], [s, c]]).T
    return float(np.linalg.norm(start - rotated))


def verify_orbit(model, sample, orbit, samples_per_period=1000, overshoot=0.25):
    """Re-integrate a converged sample with DOP853 and measure closure and minimal period"""
    traj = sample.trajectory
    T = traj.period
    q_init = traj.evaluate(0.0)[0]
    qdot_init = traj.derivative(0.0)[0] / traj.lam
    step = T / samples_per_period
    result = integrate_ode(model, q_init, qdot_init, (1 + overshoot) * T, step, method="dop853")
    index = int(round(samples_per_period))
    final = np.concatenate([result.positions[index], result.velocities[index]])
    initial = np.concatenate([q_init, qdot_init])
    centre = orbit.q0.com
    error = closure_error(initial, final, centre) if traj.active_modes() else 0.0
    distance = float(orbit_distance(result.positions[: index + 1], orbit.q0).max())
    first_return = result.first_return
    modes = traj.active_modes()
    divisor = 0
    for k in modes:
        divisor = gcd(divisor, k)
    period_ok = bool(
        modes
        and divisor == 1
        and first_return is not None
        and abs(first_return - T) <= 0.01 * T
    )
    return replace(
        sample,
        closure_error=error,
        dist_to_orbit=distance,
        first_return=first_return,
        minimal_period_ok=period_ok,
    )


def verify_family(model, family, orbit, **kwargs):
    for index, sample in enumerate(family):
        family[index] = verify_orbit(model, sample, orbit, **kwargs)
    return family


def trajectory_table(model, traj, nodes=None):
    """One row per quadrature node: physical time, coordinates and total energy"""
    tau = quadrature_nodes(traj.n_modes, nodes)
    positions = traj.evaluate(tau)
    velocities = traj.derivative(tau) / traj.lam
    n = traj.dimension // 2
    columns = ["t"] + [f"q{i + 1}{axis}" for i in range(n) for axis in "xy"] + ["energy"]
    data = np.column_stack([tau * traj.lam, positions, _energy(model, positions, velocities)])
    return pd.DataFrame(data, columns=columns)


def write_trajectories(model, family, directory, prefix="orbit"):
    """Write one trajectory CSV per sample and the family summary; returns the paths written"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = list()
    stem = f"{prefix}-j{family.j0}-b{family.branch}"
    for index, sample in enumerate(family):
        path = directory / f"{stem}-{index:02d}.csv"
        trajectory_table(model, sample.trajectory).to_csv(path, index=False, float_format="%.15g")
        paths.append(path)
    summary = directory / f"{stem}-summary.csv"
    family.to_csv(summary)
    paths.append(summary)
    return paths


def relative_equilibrium_period(profile, r):
    """Period of two unit masses rigidly rotating at separation r: 2 pi sqrt(r / (2 f'(r)))"""
    r = np.asarray(r, dtype=float)
    force = profile.d1(r)
    if np.any(force <= 0):
        raise ValueError("rigid rotation needs an attractive pair force f'(r) > 0")
    return 2 * np.pi * np.sqrt(r / (2 * force))


def relative_equilibrium_period_bound():
    """Smallest period of the rigidly rotating Lennard-Jones pairs, (7 pi / 6)(7 / 32)^(1/6)"""
    return 7 * np.pi / 6 * (7 / 32) ** (1 / 6)
