# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from itertools import combinations
import logging
import numpy as np
from scipy.linalg import null_space

log = logging.getLogger(__name__)

MIN_DISTANCE = 1e-8


class CollisionError(ValueError):
    """Two particles are closer than the minimum-distance floor of a potential model"""

    def __init__(self, first, second, distance, floor=MIN_DISTANCE):
        self.pair = (first, second)
        self.distance = distance
        message = (
            f"particles {first + 1} and {second + 1} collide: r={distance:.3e} is below the "
            f"minimum distance {floor:.1e}"
        )
        super().__init__(message)


class Configuration:
    """Positions of N planar particles stored as a flat vector (x1, y1, ..., xN, yN)

    The coordinate array is flagged read-only on construction, so a Configuration can be shared
    freely between threads and result objects.
    """

    def __init__(self, coords):
        coords = np.array(coords, dtype=float).reshape(-1)
        if coords.size % 2 != 0:
            raise ValueError(f"expected an even number of coordinates, got {coords.size}")
        if coords.size < 4:
            raise ValueError("a configuration needs at least two particles")
        coords.setflags(write=False)
        self.coords = coords

    @classmethod
    def from_positions(cls, positions):
        return cls(np.asarray(positions, dtype=float).reshape(-1))

    @property
    def n(self):
        return self.coords.size // 2

    @property
    def positions(self):
        return self.coords.reshape(-1, 2)

    @property
    def com(self):
        return self.positions.mean(axis=0)

    def pairwise_distances(self):
        first, second = np.array(pair_indices(self.n)).T
        return np.linalg.norm(self.positions[first] - self.positions[second], axis=1)

    def distances(self):
        return dict(zip(pair_indices(self.n), self.pairwise_distances()))

    def rotated(self, theta):
        return Configuration(rotate(self.coords, theta))

    def translated(self, shift):
        return Configuration((self.positions + np.asarray(shift, dtype=float)).reshape(-1))

    def centered(self):
        return self.translated(-self.com)

    def check_distinct(self, floor=MIN_DISTANCE):
        """Raise a CollisionError unless every pairwise distance exceeds the floor"""
        for (i, j), distance in self.distances().items():
            if distance <= floor:
                raise CollisionError(i, j, distance, floor)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Configuration(n={self.n}, coords={np.array2string(self.coords, precision=6)})"


def as_coords(q):
    if isinstance(q, Configuration):
        return q.coords
    return np.asarray(q, dtype=float)


def pair_indices(n):
    return list(combinations(range(n), 2))


def rotation_matrix(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def rotate(q, theta):
    """Rotate every particle by the angle theta about the origin (blockwise 2x2 action)"""
    coords = as_coords(q)
    positions = coords.reshape(coords.shape[:-1] + (-1, 2))
    return (positions @ rotation_matrix(theta).T).reshape(coords.shape)


def infinitesimal_rotation(q):
    """Generator of the rotation action: each (x, y) block is mapped to (-y, x)"""
    coords = as_coords(q)
    positions = coords.reshape(coords.shape[:-1] + (-1, 2))
    generator = np.stack([-positions[..., 1], positions[..., 0]], axis=-1)
    return generator.reshape(coords.shape)


def translation_directions(n):
    """Orthonormal columns spanning the rigid translations of N particles, shape (2N, 2)"""
    directions = np.zeros((2 * n, 2))
    directions[0::2, 0] = 1.0
    directions[1::2, 1] = 1.0
    return directions / np.sqrt(n)


def com_projector(n):
    """Orthogonal projector onto the centre-of-mass-zero subspace {sum q_i = 0}"""
    translations = translation_directions(n)
    return np.eye(2 * n) - translations @ translations.T


def com_basis(n):
    """Orthonormal basis of the centre-of-mass-zero subspace, shape (2N, 2N - 2)"""
    return null_space(translation_directions(n).T)


def align_rotation(target, reference):
    """Angle theta minimising |target - R(theta) reference| for centred planar point sets

    Both arguments have shape (..., N, 2); the closed form is the planar Procrustes solution.
    """
    dot = np.einsum("...nd,...nd->...", reference, target)
    cross = (reference[..., 0] * target[..., 1] - reference[..., 1] * target[..., 0]).sum(axis=-1)
    return np.arctan2(cross, dot)


def orbit_distance(q, q0):
    """Distance from q to the rotation orbit of q0 about the centre of mass of q0"""
    coords = as_coords(q)
    reference = as_coords(q0).reshape(-1, 2)
    centre = reference.mean(axis=0)
    target = coords.reshape(coords.shape[:-1] + (-1, 2)) - centre
    reference = reference - centre
    theta = np.asarray(align_rotation(target, reference))
    c, s = np.cos(theta)[..., None], np.sin(theta)[..., None]
    rotated = np.stack(
        [c * reference[:, 0] - s * reference[:, 1], s * reference[:, 0] + c * reference[:, 1]],
        axis=-1,
    )
    return np.sqrt(((target - rotated) ** 2).sum(axis=(-2, -1)))


class PairProfile:
    """Radial pair interaction f(r) together with its analytic derivatives f'(r) and f''(r)"""

    kind = "custom"
    equilibrium_distance = None

    def value(self, r):
        raise NotImplementedError()

    def d1(self, r):
        raise NotImplementedError()

    def d2(self, r):
        raise NotImplementedError()

    @property
    def payload(self):
        raise NotImplementedError()


class InversePowerProfile(PairProfile):
    """Pair profile f(r) = sum of c * r^(-p) over the given (c, p) terms"""

    def __init__(self, terms):
        terms = [(float(coefficient), float(power)) for coefficient, power in terms]
        if len(terms) == 0:
            raise ValueError("an inverse-power profile needs at least one term")
        for coefficient, power in terms:
            if power <= 0:
                raise ValueError(f"inverse-power exponents must be positive, got {power}")
        self.terms = terms

    def value(self, r):
        return sum(c * np.power(r, -p) for c, p in self.terms)

    def d1(self, r):
        return sum(-p * c * np.power(r, -p - 1) for c, p in self.terms)

    def d2(self, r):
        return sum(p * (p + 1) * c * np.power(r, -p - 2) for c, p in self.terms)

    @property
    def payload(self):
        return {"kind": self.kind, "terms": [[c, p] for c, p in self.terms]}

    def __repr__(self):
        return f"{type(self).__name__}({self.terms})"


class LennardJones(InversePowerProfile):
    """Lennard-Jones pair term 1/r^12 - 2/r^6 in units where epsilon = sigma = 1"""

    kind = "lennard_jones"
    equilibrium_distance = 1.0

    def __init__(self):
        super().__init__([(1.0, 12.0), (-2.0, 6.0)])

    @property
    def payload(self):
        return {"kind": self.kind}

    def __repr__(self):
        return "LennardJones()"


class Schwarzschild(InversePowerProfile):
    """Schwarzschild pair term A/r + B/r^3 with A < 0 < B

    The pair term has a single critical point, the non-degenerate minimum at
    r0 = sqrt(-3B/A), where f''(r0) = 6B / r0^5.
    """

    kind = "schwarzschild"

    def __init__(self, A, B):
        A, B = float(A), float(B)
        if not A < 0 < B:
            raise ValueError(f"Schwarzschild parameters need A < 0 < B, got A={A}, B={B}")
        self.A = A
        self.B = B
        super().__init__([(A, 1.0), (B, 3.0)])

    @property
    def equilibrium_distance(self):
        return np.sqrt(-3.0 * self.B / self.A)

    @property
    def stiffness(self):
        return 6.0 * self.B / self.equilibrium_distance**5

    @property
    def payload(self):
        return {"kind": self.kind, "A": self.A, "B": self.B}

    def __repr__(self):
        return f"Schwarzschild(A={self.A}, B={self.B})"


class RadialProfile(PairProfile):
    """Pair profile built from user-supplied callables for f, f' and f''"""

    def __init__(self, value, d1, d2, name="custom"):
        self._value = value
        self._d1 = d1
        self._d2 = d2
        self.name = name

    def value(self, r):
        return self._value(r)

    def d1(self, r):
        return self._d1(r)

    def d2(self, r):
        return self._d2(r)

    @property
    def payload(self):
        return {"kind": self.kind, "name": self.name}

    def __repr__(self):
        return f"RadialProfile(name={self.name!r})"


def profile_from_payload(payload):
    kind = payload.get("kind")
    if kind == "lennard_jones":
        return LennardJones()
    if kind == "schwarzschild":
        return Schwarzschild(payload["A"], payload["B"])
    if kind == "custom" and "terms" in payload:
        return InversePowerProfile(payload["terms"])
    raise ValueError(f"cannot rebuild pair profile from {payload}")


class PotentialModel:
    """Sum of radial pair interactions over all unordered pairs of N planar particles

    Energies, gradients and Hessians accept a single configuration (flat vector of length 2N)
    or a stack of them with arbitrary leading dimensions. Pairwise models are invariant under
    rotations and translations of the whole configuration.
    """

    translation_invariant = True

    def __init__(self, n, pairs, min_distance=MIN_DISTANCE):
        if n < 2:
            raise ValueError(f"a potential model needs at least two particles, got n={n}")
        expected = pair_indices(n)
        table = dict()
        for key, profile in pairs.items():
            i, j = sorted(key)
            if (i, j) not in expected:
                raise ValueError(f"pair {key} is not a pair of distinct particles among {n}")
            if (i, j) in table:
                raise ValueError(f"pair {key} is listed more than once")
            table[(i, j)] = profile
        missing = [pair for pair in expected if pair not in table]
        if missing:
            missing = ", ".join(f"({i + 1},{j + 1})" for i, j in missing)
            raise ValueError(f"pair table is missing profiles for pair(s) {missing}")
        self.n = n
        self.min_distance = min_distance
        self.pairs = {pair: table[pair] for pair in expected}
        self._first = np.array([i for i, j in expected])
        self._second = np.array([j for i, j in expected])
        self._incidence = np.zeros((len(expected), n))
        self._incidence[np.arange(len(expected)), self._first] = 1.0
        self._incidence[np.arange(len(expected)), self._second] = -1.0
        groups = dict()
        for index, profile in enumerate(self.pairs.values()):
            groups.setdefault(id(profile), (profile, list()))[1].append(index)
        self._groups = [(profile, np.array(index)) for profile, index in groups.values()]

    @classmethod
    def uniform(cls, n, profile, **kwargs):
        return cls(n, {pair: profile for pair in pair_indices(n)}, **kwargs)

    @classmethod
    def lennard_jones(cls, n, **kwargs):
        return cls.uniform(n, LennardJones(), **kwargs)

    @classmethod
    def schwarzschild(cls, A, B, **kwargs):
        """Schwarzschild model from parameter lists given in pair order 12, 13, ..., 23, ..."""
        if len(A) != len(B):
            raise ValueError(f"got {len(A)} A parameters but {len(B)} B parameters")
        n = particles_for_pairs(len(A))
        profiles = [Schwarzschild(a, b) for a, b in zip(A, B)]
        return cls(n, dict(zip(pair_indices(n), profiles)), **kwargs)

    @classmethod
    def from_payload(cls, payload):
        n = payload["n"]
        profiles = [profile_from_payload(pp) for pp in payload["pairs"]]
        if len(profiles) != len(pair_indices(n)):
            raise ValueError(f"expected {len(pair_indices(n))} pair profiles, got {len(profiles)}")
        return cls(n, dict(zip(pair_indices(n), profiles)))

    @property
    def payload(self):
        return {"n": self.n, "pairs": [profile.payload for profile in self.pairs.values()]}

    @property
    def dimension(self):
        return 2 * self.n

    def energy(self, q):
        """Potential energy U(q) = sum over pairs of f_ij(r_ij)"""
        diff, r = self._geometry(q)
        return self._radial(r, "value").sum(axis=-1)

    def gradient(self, q):
        """Gradient with blocks dU/dq_i = sum over j of (f'_ij(r_ij) / r_ij) (q_i - q_j)"""
        diff, r = self._geometry(q)
        weight = self._radial(r, "d1") / r
        grad = np.einsum("pn,...pd->...nd", self._incidence, weight[..., None] * diff)
        return grad.reshape(grad.shape[:-2] + (self.dimension,))

    def hessian(self, q):
        """Hessian assembled from 2x2 pair blocks f'' u u^T + (f'/r)(I - u u^T)"""
        diff, r = self._geometry(q)
        u = diff / r[..., None]
        uu = u[..., :, None] * u[..., None, :]
        stretch = self._radial(r, "d2")[..., None, None]
        bend = (self._radial(r, "d1") / r)[..., None, None]
        block = stretch * uu + bend * (np.eye(2) - uu)
        hess = np.einsum("pn,pm,...pab->...namb", self._incidence, self._incidence, block)
        return hess.reshape(hess.shape[:-4] + (self.dimension, self.dimension))

    def pair_minima(self):
        """Equilibrium distance and stiffness of each pair profile that has a unique minimum"""
        minima = list()
        for (i, j), profile in self.pairs.items():
            r0 = profile.equilibrium_distance
            if r0 is None:
                continue
            minima.append((i, j, float(r0), float(profile.d2(r0))))
        return minima

    def _geometry(self, q):
        coords = as_coords(q)
        if coords.shape[-1] != self.dimension:
            raise ValueError(
                f"configuration has {coords.shape[-1]} coordinates, model expects "
                f"{self.dimension}"
            )
        positions = coords.reshape(coords.shape[:-1] + (self.n, 2))
        diff = positions[..., self._first, :] - positions[..., self._second, :]
        r = np.sqrt((diff**2).sum(axis=-1))
        if r.min() <= self.min_distance:
            where = np.unravel_index(np.argmin(r), r.shape)
            pair = where[-1]
            raise CollisionError(
                self._first[pair], self._second[pair], float(r[where]), self.min_distance
            )
        return diff, r

    def _radial(self, r, derivative):
        values = np.empty_like(r)
        for profile, index in self._groups:
            values[..., index] = getattr(profile, derivative)(r[..., index])
        return values

    def __repr__(self):
        kinds = sorted({profile.kind for profile in self.pairs.values()})
        return f"PotentialModel(n={self.n}, kinds={kinds})"


def particles_for_pairs(num_pairs):
    n = int(round((1 + np.sqrt(1 + 8 * num_pairs)) / 2))
    if n * (n - 1) // 2 != num_pairs or n < 2:
        raise ValueError(f"{num_pairs} pair parameters do not match any particle count")
    return n


def invariance_audit(model, q, samples=32, seed=0):
    """Largest change of the energy under randomly sampled rotations of q"""
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(0.0, 2.0 * np.pi, size=samples)
    reference = model.energy(q)
    rotated = np.array([rotate(q, theta) for theta in thetas])
    return float(np.max(np.abs(model.energy(rotated) - reference)))
