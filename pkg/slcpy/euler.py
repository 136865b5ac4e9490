# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------
"""Euler ring of the circle group, sphere characteristics and bifurcation certificates

Elements of U(S^1) are integer combinations of the unit I = chi(S^1/S^1+) and the generators
X(m) = chi(S^1/Z_m+) for weights m >= 1. Products of two generators vanish, which is the only
bilinear rule under which I - sum(k_i X(m_i)) has the inverse I + sum(k_i X(m_i)).
"""

from .resonance import frequencies, require_admissible
from dataclasses import dataclass, field
import logging
import numpy as np
import re

log = logging.getLogger(__name__)


class DegenerateModeError(ValueError):
    pass


class ExpressionError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EulerRingElement:
    """Immutable element a*I + sum_m a_m X(m) with exact integer coefficients"""

    def __init__(self, unit=0, gens=None):
        self._unit = int(unit)
        gens = dict() if gens is None else gens
        self._gens = {int(m): int(c) for m, c in gens.items() if int(c) != 0}
        for m in self._gens:
            if m < 1:
                raise ValueError(f"generator weights must be positive, got {m}")

    @classmethod
    def unit(cls):
        return cls(1)

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def generator(cls, m):
        return cls(0, {m: 1})

    @property
    def unit_coeff(self):
        return self._unit

    @property
    def gen_coeffs(self):
        return dict(sorted(self._gens.items()))

    @property
    def is_unit(self):
        return self._unit in (1, -1)

    def inverse(self):
        """(a I + x)^-1 = a I - x for a = +/-1, since generator products vanish"""
        if not self.is_unit:
            raise ValueError(f"{self} is not invertible in the Euler ring")
        a = self._unit
        return EulerRingElement(a, {m: -c for m, c in self._gens.items()})

    def _coerce(self, other):
        if isinstance(other, EulerRingElement):
            return other
        if isinstance(other, (int, np.integer)):
            return EulerRingElement(int(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        gens = dict(self._gens)
        for m, c in other._gens.items():
            gens[m] = gens.get(m, 0) + c
        return EulerRingElement(self._unit + other._unit, gens)

    __radd__ = __add__

    def __neg__(self):
        return EulerRingElement(-self._unit, {m: -c for m, c in self._gens.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._unit, other._unit
        gens = {m: b * c for m, c in self._gens.items()}
        for m, c in other._gens.items():
            gens[m] = gens.get(m, 0) + a * c
        return EulerRingElement(a * b, gens)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._unit == other._unit and self._gens == other._gens

    def __hash__(self):
        return hash((self._unit, tuple(sorted(self._gens.items()))))

    def __str__(self):
        terms = list()
        if self._unit != 0:
            terms.append((self._unit, "I"))
        for m, c in sorted(self._gens.items()):
            terms.append((c, f"X({m})"))
        if not terms:
            return "0"
        text = ""
        for index, (coeff, symbol) in enumerate(terms):
            magnitude = abs(coeff)
            body = symbol if magnitude == 1 else f"{magnitude}·{symbol}"
            if index == 0:
                text = body if coeff > 0 else f"-{body}"
            else:
                text += f" + {body}" if coeff > 0 else f" - {body}"
        return text

    def __repr__(self):
        return f"EulerRingElement({self})"

    @property
    def payload(self):
        return {"unit": self._unit, "gens": {str(m): c for m, c in sorted(self._gens.items())}}

    @classmethod
    def from_payload(cls, payload):
        return cls(payload["unit"], {int(m): c for m, c in payload.get("gens", {}).items()})


class S1RepDecomposition:
    """Real S^1 representation R[k0, 0] + sum_i R[k_i, m_i] with strictly increasing weights"""

    def __init__(self, k0=0, terms=None):
        if k0 < 0:
            raise ValueError(f"trivial multiplicity must be non-negative, got {k0}")
        merged = dict()
        for k, m in terms or []:
            if m < 1:
                raise ValueError(f"representation weights must be positive, got {m}")
            if k < 0:
                raise ValueError(f"representation multiplicities must be non-negative, got {k}")
            merged[m] = merged.get(m, 0) + k
        self.k0 = int(k0)
        self.terms = [(int(k), int(m)) for m, k in sorted(merged.items()) if k > 0]

    def direct_sum(self, other):
        return S1RepDecomposition(self.k0 + other.k0, self.terms + other.terms)

    __add__ = direct_sum

    @property
    def real_dimension(self):
        return self.k0 + sum(2 * k for k, m in self.terms)

    def multiplicity(self, m):
        return dict((m_i, k) for k, m_i in self.terms).get(m, 0)

    def __eq__(self, other):
        if not isinstance(other, S1RepDecomposition):
            return NotImplemented
        return self.k0 == other.k0 and self.terms == other.terms

    def __str__(self):
        parts = [f"R[{self.k0},0]"] if self.k0 else []
        parts.extend(f"R[{k},{m}]" for k, m in self.terms)
        return " + ".join(parts) if parts else "R[0,0]"

    def __repr__(self):
        return f"S1RepDecomposition({self})"

    @property
    def payload(self):
        return {"k0": self.k0, "terms": [[k, m] for k, m in self.terms]}


def sphere_characteristic(rep):
    """chi(S^V) = (-1)^k0 (I - sum_i k_i X(m_i))"""
    gens = {m: -k for k, m in rep.terms}
    element = EulerRingElement(1, gens)
    return -element if rep.k0 % 2 else element


@dataclass(frozen=True)
class ModeMorseData:
    k: int
    lam: float
    neg: int
    zero: int
    pos: int

    @property
    def dimension(self):
        return self.neg + self.zero + self.pos


def mode_matrix(hessian, k, lam):
    """Q(k, lambda) = (k^2 Id - lambda^2 Hessian) / (k^2 + 1)"""
    hessian = np.asarray(hessian, dtype=float)
    return (k**2 * np.eye(len(hessian)) - lam**2 * hessian) / (k**2 + 1)


def _spectrum(source):
    """Hessian eigenvalues with multiplicity from SpectralData, a matrix or (beta, mult) pairs"""
    if hasattr(source, "raw"):
        return np.asarray(source.raw, dtype=float)
    if isinstance(source, (list, tuple)) and source and isinstance(source[0], (list, tuple)):
        pairs = np.asarray(source, dtype=float)
        return np.repeat(pairs[:, 0] ** 2, pairs[:, 1].astype(int))
    array = np.asarray(source, dtype=float)
    if array.ndim == 2:
        return np.linalg.eigvalsh(0.5 * (array + array.T))
    return array**2


def mode_morse(source, k, lam, cluster_tol=1e-7):
    """Signature counts of Q(k, lambda) from the eigenvalues (k^2 - lambda^2 mu) / (k^2 + 1)

    `source` is SpectralData (ambient counts), a symmetric Hessian, (beta, multiplicity) pairs or
    plain frequencies; the last two only see the positive part of the spectrum.
    """
    if k < 1:
        raise ValueError(f"mode index must be at least 1, got {k}")
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    mu = _spectrum(source)
    values = (k**2 - lam**2 * mu) / (k**2 + 1)
    scale = max(1.0, float(np.abs(values).max())) if len(values) else 1.0
    tol = cluster_tol * scale
    neg = int(np.sum(values < -tol))
    zero = int(np.sum(np.abs(values) <= tol))
    return ModeMorseData(k, lam, neg, zero, len(values) - neg - zero)


def n0_select(betas, j0, lam_plus=None):
    """Truncation mode n0 and the margin min_j (n0^2 - lambda_plus^2 beta_j^2)

    n0 = floor(beta_1 / beta_j0) + 1 when j0 > 1 and 2 otherwise. A non-positive margin means
    the window is too wide.
    """
    values = frequencies(betas)
    if not 1 <= j0 <= len(values):
        raise ValueError(f"frequency index j0={j0} out of range 1..{len(values)}")
    beta0 = values[j0 - 1]
    n0 = int(np.floor(max(values) / beta0)) + 1 if j0 > 1 else 2
    if lam_plus is None:
        return n0, None
    margin = min(n0**2 - (lam_plus * beta) ** 2 for beta in values)
    if margin <= 0:
        raise DegenerateModeError(
            f"truncation n0={n0} leaves margin {margin:.3e} at lambda_plus={lam_plus:.10g}; "
            f"shrink the window"
        )
    return n0, float(margin)


def positive_rep(betas, lam, n0, k0=0, int_tol=1e-9):
    """Positive part of the linearization at lambda up to mode n0

    Mode k carries weight k with multiplicity d_k = sum_j mult_j [k^2 < lambda^2 beta_j^2]; the
    trivial summand has multiplicity k0 (the Morse index).
    """
    values = frequencies(betas)
    mults = [beta[1] if isinstance(beta, (tuple, list)) else 1 for beta in betas]
    terms = list()
    for k in range(1, n0 + 1):
        d_k = 0
        for beta, mult in zip(values, mults):
            ratio = lam * beta / k
            if abs(ratio - 1) <= int_tol:
                raise DegenerateModeError(
                    f"lambda={lam:.12g} equals {k}/beta={k / beta:.12g} within tolerance"
                )
            if ratio > 1:
                d_k += mult
        if d_k:
            terms.append((d_k, k))
    return S1RepDecomposition(k0, terms)


@dataclass
class BifurcationCertificate:
    """Comparison of Conley-index Euler characteristics at the two ends of a window"""

    j0: int
    lambda_minus: float
    lambda_plus: float
    eps: float
    n0: int
    margin: float
    r_minus: int
    r_plus: int
    dim_n: int
    chi_minus: EulerRingElement
    chi_plus: EulerRingElement
    shared_factor: EulerRingElement
    multiplicity: int
    sign_product: float
    warnings: list = field(default_factory=list)

    @property
    def changed(self):
        return self.chi_minus != self.chi_plus

    @property
    def payload(self):
        return {
            "j0": self.j0,
            "lambda_minus": self.lambda_minus,
            "lambda_plus": self.lambda_plus,
            "eps": self.eps,
            "n0": self.n0,
            "margin": self.margin,
            "r_minus": self.r_minus,
            "r_plus": self.r_plus,
            "dim_n": self.dim_n,
            "chi_minus": str(self.chi_minus),
            "chi_plus": str(self.chi_plus),
            "shared_factor": str(self.shared_factor),
            "multiplicity": self.multiplicity,
            "sign_product": self.sign_product,
            "changed": self.changed,
            "warnings": list(self.warnings),
        }


def bifurcation_certificate(spectral, j0, window, int_tol=1e-9):
    """Certificate chi_minus != chi_plus for bifurcation from the orbit at lambda0 = 1/beta_j0

    Mode 1 contributes S^(H+_{1,-/+}) with complex dimension r-/+; the trivial summand (Morse
    index) and modes 2..n0 form a shared factor that must agree at both ends and is reported,
    not applied.
    """
    betas = spectral.betas
    require_admissible(betas, j0, int_tol=int_tol)
    if window.j0 != j0:
        raise ValueError(f"window is built for j0={window.j0}, not j0={j0}")
    warnings = list()
    n0, margin = n0_select(betas, j0, window.lambda_plus)
    k0 = spectral.morse_index
    reps = [
        positive_rep(betas, lam, n0, k0=k0, int_tol=int_tol)
        for lam in (window.lambda_minus, window.lambda_plus)
    ]
    r_minus, r_plus = (rep.multiplicity(1) for rep in reps)
    shared = list()
    for rep in reps:
        rest = S1RepDecomposition(rep.k0, [(k, m) for k, m in rep.terms if m >= 2])
        shared.append(sphere_characteristic(rest))
    if shared[0] != shared[1]:
        warnings.append(f"modes k >= 2 change across the window: {shared[0]} vs {shared[1]}")
    sign = -1 if spectral.extra_kernel_dim % 2 else 1
    chi_minus, chi_plus = (
        sign * sphere_characteristic(S1RepDecomposition(0, [(r, 1)])) for r in (r_minus, r_plus)
    )
    multiplicity = spectral.multiplicity(j0)
    if k0 == 0 and r_plus - r_minus != multiplicity:
        warnings.append(
            f"r+ - r- = {r_plus - r_minus} differs from the multiplicity {multiplicity} of "
            f"beta_{j0}^2"
        )
    for message in warnings:
        log.warning(f"certificate j0={j0}: {message}")
    return BifurcationCertificate(
        j0=j0,
        lambda_minus=window.lambda_minus,
        lambda_plus=window.lambda_plus,
        eps=window.eps,
        n0=n0,
        margin=margin,
        r_minus=r_minus,
        r_plus=r_plus,
        dim_n=spectral.extra_kernel_dim,
        chi_minus=chi_minus,
        chi_plus=chi_plus,
        shared_factor=shared[0],
        multiplicity=multiplicity,
        sign_product=float(window.sign_product),
        warnings=warnings,
    )


def unit_circle(t):
    return np.stack([np.cos(t), np.sin(t)], axis=-1)


def winding_degree_from_samples(values):
    """Degree of a closed loop of planar vectors sampled in order (last sample joins the first)"""
    values = np.asarray(values, dtype=float)
    angles = np.arctan2(values[:, 1], values[:, 0])
    steps = np.diff(np.append(angles, angles[0]))
    steps = (steps + np.pi) % (2 * np.pi) - np.pi
    total = steps.sum() / (2 * np.pi)
    degree = int(round(total))
    if abs(total - degree) > 1e-6:
        raise ValueError(f"accumulated winding {total:.9f} is not an integer")
    return degree, float(np.abs(steps).max())


def winding_degree(field, loop=unit_circle, samples=64, max_refinements=10, min_norm=1e-10):
    """Winding number of a planar vector field along a closed loop

    `field` maps an (M, 2) array of points to (M, 2) vectors and `loop` maps parameters in
    [0, 2 pi) to points. Sampling doubles until every angle increment is below pi/2.
    """
    if samples < 64:
        raise ValueError(f"at least 64 samples are required, got {samples}")
    for refinement in range(max_refinements + 1):
        t = np.linspace(0, 2 * np.pi, samples, endpoint=False)
        values = np.asarray(field(loop(t)), dtype=float)
        norms = np.linalg.norm(values, axis=1)
        if norms.min() <= min_norm:
            where = t[np.argmin(norms)]
            raise ValueError(f"vector field vanishes on the loop near t={where:.6f}")
        degree, largest = winding_degree_from_samples(values)
        if largest < np.pi / 2:
            log.debug(f"winding degree {degree} from {samples} samples")
            return degree
        samples *= 2
    raise ValueError(
        f"angular resolution insufficient after {max_refinements} refinements "
        f"(largest step {largest:.3f} rad)"
    )


TOKEN = re.compile(r"\s*(?:(\d+)|(I)|(X)|(S)|([-+*·();,\[\]]))")


def _tokenize(text):
    tokens = list()
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = TOKEN.match(text, position)
        if match is None:
            start = position + len(text[position:]) - len(text[position:].lstrip())
            raise ExpressionError(f"unexpected character '{text[start]}'", start)
        start = match.start(match.lastindex)
        tokens.append((match.group(match.lastindex), start))
        position = match.end()
    tokens.append((None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over: expr = term (('+'|'-') term)*; term = unary (('*'|'·') unary)*"""

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, symbol):
        token, position = self.advance()
        if token != symbol:
            found = "end of input" if token is None else f"'{token}'"
            raise ExpressionError(f"expected '{symbol}' but found {found}", position)

    def integer(self):
        token, position = self.advance()
        if token is None or not token.isdigit():
            found = "end of input" if token is None else f"'{token}'"
            raise ExpressionError(f"expected an integer but found {found}", position)
        return int(token)

    def parse(self):
        value = self.expr()
        token, position = self.current
        if token is not None:
            raise ExpressionError(f"unexpected '{token}'", position)
        return value

    def expr(self):
        value = self.term()
        while self.current[0] in ("+", "-"):
            operator, _ = self.advance()
            right = self.term()
            value = value + right if operator == "+" else value - right
        return value

    def term(self):
        value = self.unary()
        while True:
            token = self.current[0]
            if token in ("*", "·"):
                self.advance()
                value = value * self.unary()
            elif token in ("I", "X", "S", "("):
                value = value * self.unary()
            else:
                return value

    def unary(self):
        if self.current[0] == "-":
            self.advance()
            return -self.unary()
        if self.current[0] == "+":
            self.advance()
            return self.unary()
        return self.atom()

    def atom(self):
        token, position = self.advance()
        if token is None:
            raise ExpressionError("unexpected end of input", position)
        if token.isdigit():
            return EulerRingElement(int(token))
        if token == "I":
            return EulerRingElement.unit()
        if token == "X":
            self.expect("(")
            weight_position = self.current[1]
            weight = self.integer()
            if weight < 1:
                raise ExpressionError("generator weight must be positive", weight_position)
            self.expect(")")
            return EulerRingElement.generator(weight)
        if token == "S":
            return sphere_characteristic(self.representation())
        if token == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ExpressionError(f"unexpected '{token}'", position)

    def representation(self):
        self.expect("[")
        k0 = self.integer()
        terms = list()
        while self.current[0] in (";", ","):
            self.advance()
            self.expect("(")
            k = self.integer()
            self.expect(",")
            weight_position = self.current[1]
            m = self.integer()
            if m < 1:
                raise ExpressionError("representation weight must be positive", weight_position)
            self.expect(")")
            terms.append((k, m))
        self.expect("]")
        return S1RepDecomposition(k0, terms)


def parse_expression(text):
    """Evaluate an Euler ring expression such as `S[0;(2,1),(1,3)]` or `(I - X(1))*(I + X(1))`"""
    return _Parser(text).parse()
