# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from .potentials import (
    Configuration,
    PotentialModel,
    RadialProfile,
    align_rotation,
    infinitesimal_rotation,
    orbit_distance,
    pair_indices,
    rotation_matrix,
    translation_directions,
)
from dataclasses import dataclass, field
from itertools import permutations
import logging
import numpy as np
from scipy.linalg import LinAlgError, null_space, solve

log = logging.getLogger(__name__)

ISOLATED = "isolated_on_slice"
INCONCLUSIVE = "inconclusive"


class ConstructionError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


class GaugeError(RuntimeError):
    pass


@dataclass(frozen=True)
class CriticalOrbit:
    """A critical point q0 standing for its whole SO(2) orbit of relative equilibria

    The tangent to the orbit is the infinitesimal rotation about the centre of mass; the two
    translation directions span the additional symmetry kernel of pairwise potentials.
    """

    q0: Configuration
    value: float
    grad_norm: float
    tangent_rotation: np.ndarray = field(repr=False)
    translation_directions: np.ndarray = field(repr=False)
    com_zero: bool = True
    label: str = "q0"
    iterations: int = 0

    @classmethod
    def at(cls, model, q0, label="q0", com_zero=True, iterations=0):
        if not isinstance(q0, Configuration):
            q0 = Configuration(q0)
        tangent = infinitesimal_rotation(q0.centered().coords)
        tangent = tangent / np.linalg.norm(tangent)
        return cls(
            q0=q0,
            value=float(model.energy(q0)),
            grad_norm=float(np.linalg.norm(model.gradient(q0))),
            tangent_rotation=tangent,
            translation_directions=translation_directions(q0.n).T,
            com_zero=com_zero,
            label=label,
            iterations=iterations,
        )

    @property
    def n(self):
        return self.q0.n

    def rotated(self, model, theta):
        return CriticalOrbit.at(
            model, self.q0.rotated(theta), label=self.label, com_zero=self.com_zero
        )

    def distance(self, q):
        return float(orbit_distance(q, self.q0))

    @property
    def payload(self):
        return {
            "label": self.label,
            "n": self.n,
            "coords": [float(x) for x in self.q0.coords],
            "value": self.value,
            "grad_norm": self.grad_norm,
            "com_zero": self.com_zero,
        }


@dataclass(frozen=True)
class IsolationReport:
    slice_radius: float
    samples: int
    min_grad_norm_on_annulus: float
    verdict: str
    com_zero: bool = True
    threshold: float = 1e-6

    @property
    def isolated(self):
        return self.verdict == ISOLATED

    @property
    def payload(self):
        return {
            "slice_radius": self.slice_radius,
            "samples": self.samples,
            "min_grad_norm_on_annulus": self.min_grad_norm_on_annulus,
            "verdict": self.verdict,
            "com_zero": self.com_zero,
            "threshold": self.threshold,
        }


def lj_seeds(n):
    """Closed-form Lennard-Jones equilibria for two and three particles"""
    if n == 2:
        return {"q0": np.array([0.0, 0.5, 0.0, -0.5])}
    if n == 3:
        a = (2731 / 43) ** (1 / 6)
        alpha, beta = 2 * np.pi / 3, 4 * np.pi / 3
        s = 1 / np.sqrt(3)
        return {
            "q01": np.array([a / 2, 0, 0, 0, -a / 2, 0]),
            "q02": np.array([0, 0, a / 2, 0, -a / 2, 0]),
            "q03": np.array([a / 2, 0, -a / 2, 0, 0, 0]),
            "q04": s * np.array([1, 0, np.cos(alpha), np.sin(alpha), np.cos(beta), np.sin(beta)]),
            "q05": s * np.array([1, 0, np.cos(beta), np.sin(beta), np.cos(alpha), np.sin(alpha)]),
        }
    raise ValueError(f"built-in Lennard-Jones equilibria exist for n=2 and n=3 only, got n={n}")


def lj_equilibria(n, **kwargs):
    """All critical orbits of the Lennard-Jones potential for n = 2 or n = 3 particles

    Each closed-form point is polished by Newton refinement before it is returned.
    """
    model = PotentialModel.lennard_jones(n)
    seeds = lj_seeds(n)
    return [refine_critical(model, seed, label=label, **kwargs) for label, seed in seeds.items()]


def lj_equilibrium(n, label, **kwargs):
    seeds = lj_seeds(n)
    if label not in seeds:
        options = ", ".join(seeds)
        raise ValueError(f"unknown Lennard-Jones orbit '{label}' for n={n}; options: {options}")
    return refine_critical(PotentialModel.lennard_jones(n), seeds[label], label=label, **kwargs)


def schwarzschild_equilibrium(profiles, orientation=0.0, label="schwarzschild"):
    """Noncollinear triangle with each side at the minimum of its Schwarzschild pair term

    Profiles are given in pair order (12, 13, 23). The triangle is centred at the origin with
    vertex 1 on the positive x-axis, then rotated by `orientation`.
    """
    profiles = list(profiles)
    if len(profiles) != 3:
        count = len(profiles)
        raise ValueError(f"a Schwarzschild triangle needs three pair profiles, got {count}")
    sides = [float(profile.equilibrium_distance) for profile in profiles]
    for name, side in zip(("r12", "r13", "r23"), sides):
        others = sum(sides) - side
        if not side < others:
            message = (
                f"side {name}={side:.6g} violates the strict triangle inequality "
                f"(other sides sum to {others:.6g})"
            )
            raise ConstructionError(message)
    r12, r13, r23 = sides
    x = (r12**2 + r13**2 - r23**2) / (2 * r12)
    y = np.sqrt(max(r13**2 - x**2, 0.0))
    positions = np.array([[0.0, 0.0], [r12, 0.0], [x, y]])
    positions -= positions.mean(axis=0)
    angle = np.arctan2(positions[0, 1], positions[0, 0])
    positions = positions @ rotation_matrix(orientation - angle).T
    model = PotentialModel(3, dict(zip(pair_indices(3), profiles)))
    return CriticalOrbit.at(model, Configuration.from_positions(positions), label=label)


def schwarzschild_parameters_for(q0, B):
    """A parameters placing every pair of q0 at the minimum of A/r + B/r^3"""
    q0 = q0 if isinstance(q0, Configuration) else Configuration(q0)
    distances = q0.pairwise_distances()
    B = np.asarray(B, dtype=float)
    if B.shape != distances.shape:
        raise ValueError(f"expected {distances.size} B parameters, got {B.size}")
    if np.any(B <= 0):
        raise ValueError("Schwarzschild B parameters must be positive")
    return [float(a) for a in -3.0 * B / distances**2]


def refine_critical(model, seed, tol=1e-12, max_iter=50, label="q0", com_zero=True):
    """Newton refinement of a critical point with rotation and centre-of-mass gauges

    Solves grad U(q) = 0 together with sum(q_i) = sum(seed_i) and <q - seed, J seed> = 0 (J
    taken about the centre of mass) using the bordered, square Newton system. Convergence means
    |grad U| <= tol * max(1, |Hessian|_2).
    """
    seed = seed if isinstance(seed, Configuration) else Configuration(seed)
    seed.check_distinct(model.min_distance)
    dim = model.dimension
    gauge = np.vstack(
        [translation_directions(model.n).T, infinitesimal_rotation(seed.centered().coords)]
    )
    gauge /= np.linalg.norm(gauge, axis=1, keepdims=True)
    q = seed.coords.copy()
    grad_norm = np.inf
    for iteration in range(max_iter + 1):
        grad = model.gradient(q)
        hess = model.hessian(q)
        grad_norm = np.linalg.norm(grad)
        if grad_norm <= tol * max(1.0, np.linalg.norm(hess, 2)):
            log.debug(f"{label}: converged after {iteration} step(s), |grad|={grad_norm:.2e}")
            return CriticalOrbit.at(model, q, label=label, com_zero=com_zero, iterations=iteration)
        if iteration == max_iter:
            break
        bordered = np.block([[hess, gauge.T], [gauge, np.zeros((3, 3))]])
        condition = np.linalg.cond(bordered)
        if not np.isfinite(condition) or condition > 1e13:
            message = (
                f"bordered Jacobian for {label} is rank deficient beyond the three gauged "
                f"directions (condition number {condition:.2e})"
            )
            raise GaugeError(message)
        rhs = -np.concatenate([grad, gauge @ (q - seed.coords)])
        try:
            step = solve(bordered, rhs, assume_a="sym")[:dim]
        except LinAlgError as error:
            raise GaugeError(f"bordered Newton system for {label} is singular") from error
        q = q + step
    message = (
        f"Newton refinement of {label} did not converge in {max_iter} iterations "
        f"(|grad U|={grad_norm:.3e})"
    )
    raise ConvergenceError(message)


def isolation_scan(
    model, orbit, slice_radius=1e-2, samples=256, threshold=1e-6, com_zero=None, seed=0
):
    """Sample gradient norms on a small sphere in the slice normal to the orbit

    The slice is the orthogonal complement of the rotation tangent, intersected with the
    centre-of-mass-zero subspace when `com_zero` holds. A strictly positive minimum above the
    threshold is numerical evidence that the orbit is isolated in the critical set.
    """
    if slice_radius <= 0:
        raise ValueError(f"slice radius must be positive, got {slice_radius}")
    if com_zero is None:
        com_zero = orbit.com_zero
    constraints = [orbit.tangent_rotation]
    if com_zero:
        constraints.extend(orbit.translation_directions)
    basis = null_space(np.array(constraints))
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((samples, basis.shape[1]))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    directions = [basis.T, -basis.T, directions @ basis.T]
    if not com_zero:
        directions.extend([orbit.translation_directions, -orbit.translation_directions])
    directions = np.vstack(directions)
    points = orbit.q0.coords + slice_radius * directions
    norms = np.linalg.norm(model.gradient(points), axis=1)
    minimum = float(norms.min())
    verdict = ISOLATED if minimum > threshold else INCONCLUSIVE
    log.debug(f"{orbit.label}: isolation scan minimum |grad|={minimum:.3e} -> {verdict}")
    return IsolationReport(
        slice_radius=slice_radius,
        samples=len(points),
        min_grad_norm_on_annulus=minimum,
        verdict=verdict,
        com_zero=com_zero,
        threshold=threshold,
    )


def _same_profile(first, second):
    if first is second:
        return True
    if isinstance(first, RadialProfile) or isinstance(second, RadialProfile):
        return False
    return first.payload == second.payload


def reflection_symmetries(model, q0, tol=1e-9, max_particles=7):
    """Mirror symmetries of q0 that preserve the model, as linear maps on displacements

    A symmetry pairs a permutation p of the particles with a planar reflection M through the
    centre of mass such that M(q_i - c) + c = q_p(i) and f_ij = f_p(i)p(j). Each map S is
    returned as a (2N, 2N) orthogonal matrix acting on displacement vectors.
    """
    q0 = q0 if isinstance(q0, Configuration) else Configuration(q0)
    n = q0.n
    if n > max_particles:
        log.debug(f"reflection search skipped for n={n} > {max_particles}")
        return []
    positions = q0.centered().positions
    mirrored = positions * np.array([1.0, -1.0])
    scale = max(1.0, float(np.abs(positions).max()))
    symmetries = list()
    for perm in permutations(range(n)):
        perm = np.array(perm)
        target = positions[perm]
        matrix = rotation_matrix(align_rotation(target, mirrored)) @ np.diag([1.0, -1.0])
        if np.abs(positions @ matrix.T - target).max() > tol * scale:
            continue
        if not all(
            _same_profile(profile, model.pairs[tuple(sorted((perm[i], perm[j])))])
            for (i, j), profile in model.pairs.items()
        ):
            continue
        action = np.zeros((2 * n, 2 * n))
        for i, image in enumerate(perm):
            action[2 * image : 2 * image + 2, 2 * i : 2 * i + 2] = matrix
        symmetries.append(action)
    return symmetries
