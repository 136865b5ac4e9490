# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

import numpy as np
import pytest
from slcpy.euler import (
    DegenerateModeError,
    EulerRingElement,
    ExpressionError,
    S1RepDecomposition,
    bifurcation_certificate,
    mode_matrix,
    mode_morse,
    n0_select,
    parse_expression,
    positive_rep,
    sphere_characteristic,
    winding_degree,
    winding_degree_from_samples,
)
from slcpy.orbits import lj_equilibrium
from slcpy.potentials import PotentialModel
from slcpy.resonance import choose_window
from slcpy.spectral import analyze_hessian, spectral_data_from_matrix

I = EulerRingElement.unit()


def X(m):
    return EulerRingElement.generator(m)


def random_elements(count, seed=0):
    rng = np.random.default_rng(seed)
    elements = list()
    for _ in range(count):
        weights = rng.choice(np.arange(1, 8), size=rng.integers(0, 4), replace=False)
        gens = {int(m): int(rng.integers(-5, 6)) for m in weights}
        elements.append(EulerRingElement(int(rng.integers(-3, 4)), gens))
    return elements


def random_reps(count, seed=1):
    rng = np.random.default_rng(seed)
    reps = list()
    for _ in range(count):
        terms = [(int(rng.integers(1, 4)), int(rng.integers(1, 6))) for _ in range(3)]
        reps.append(S1RepDecomposition(int(rng.integers(0, 3)), terms))
    return reps


@pytest.fixture(scope="module")
def lj2():
    model = PotentialModel.lennard_jones(2)
    orbit = lj_equilibrium(2, "q0")
    return model, orbit, analyze_hessian(model, orbit)


@pytest.fixture(scope="module")
def lj3():
    model = PotentialModel.lennard_jones(3)
    orbit = lj_equilibrium(3, "q04")
    return model, orbit, analyze_hessian(model, orbit)


def test_ring_axioms():
    elements = random_elements(1000)
    zero = EulerRingElement.zero()
    for a, b, c in zip(elements, elements[1:], elements[2:]):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + zero == a
        assert a * I == a
        assert a - a == zero
    for m in range(1, 6):
        for n in range(1, 6):
            assert X(m) * X(n) == zero


def test_integer_coercion():
    assert 2 * X(3) == X(3) + X(3)
    assert 1 - X(2) == I - X(2)
    assert X(1) + 3 == EulerRingElement(3, {1: 1})
    assert -I == EulerRingElement(-1)
    assert hash(I - X(1)) == hash(EulerRingElement(1, {1: -1}))


def test_inverse():
    element = I - 2 * X(1) - X(3)
    assert element.inverse() == I + 2 * X(1) + X(3)
    assert element * element.inverse() == I
    negative = -I + X(4)
    assert negative * negative.inverse() == I
    with pytest.raises(ValueError, match=r"is not invertible"):
        (2 * I).inverse()


@pytest.mark.parametrize(
    "element,text",
    [
        (EulerRingElement.zero(), "0"),
        (I, "I"),
        (I - 2 * X(1) - X(3), "I - 2·X(1) - X(3)"),
        (-I + X(2), "-I + X(2)"),
        (3 * X(5), "3·X(5)"),
        (-2 * I, "-2·I"),
    ],
)
def test_canonical_form(element, text):
    assert str(element) == text
    assert parse_expression(text) == element


def test_payload():
    element = I - 2 * X(1) - X(3)
    assert element.payload == {"unit": 1, "gens": {"1": -2, "3": -1}}
    assert EulerRingElement.from_payload(element.payload) == element


def test_representations():
    rep = S1RepDecomposition(1, [(2, 1), (1, 3), (1, 1)])
    assert rep.terms == [(3, 1), (1, 3)]
    assert rep.real_dimension == 1 + 6 + 2
    assert rep.multiplicity(1) == 3
    assert rep.multiplicity(2) == 0
    assert str(rep) == "R[1,0] + R[3,1] + R[1,3]"
    assert S1RepDecomposition(0, [(0, 2)]).terms == []
    with pytest.raises(ValueError, match=r"weights must be positive"):
        S1RepDecomposition(0, [(1, 0)])


def test_sphere_characteristics():
    assert sphere_characteristic(S1RepDecomposition()) == I
    assert sphere_characteristic(S1RepDecomposition(0, [(2, 1), (1, 3)])) == I - 2 * X(1) - X(3)
    assert sphere_characteristic(S1RepDecomposition(1, [(1, 2)])) == -I + X(2)
    chi2 = sphere_characteristic(S1RepDecomposition(0, [(1, 2)])) - I
    chi3 = sphere_characteristic(S1RepDecomposition(0, [(1, 3)])) - I
    assert chi2 * chi3 == EulerRingElement.zero()


def test_sphere_characteristic_is_multiplicative():
    reps = random_reps(200)
    for first, second in zip(reps, reps[1:]):
        left = sphere_characteristic(first + second)
        right = sphere_characteristic(first) * sphere_characteristic(second)
        assert left == right


def test_sphere_characteristic_inverse():
    for rep in random_reps(200):
        chi = sphere_characteristic(rep)
        inverse = I + sum((k * X(m) for k, m in rep.terms), EulerRingElement.zero())
        inverse = -inverse if rep.k0 % 2 else inverse
        assert chi * inverse == I
        assert chi.is_unit
        assert chi.inverse() == inverse


@pytest.mark.parametrize(
    "text,expected",
    [
        ("S[0;(2,1),(1,3)]", "I - 2·X(1) - X(3)"),
        ("X(2)*X(3)", "0"),
        ("(I - X(1))*(I + X(1))", "I"),
        ("(I - X(1)) (I + X(1))", "I"),
        ("2·X(1) - -X(1)", "3·X(1)"),
        ("S[1]", "-I"),
        ("  I+X(1)  ", "I + X(1)"),
    ],
)
def test_parse_expression(text, expected):
    assert str(parse_expression(text)) == expected


@pytest.mark.parametrize(
    "text,position,message",
    [
        ("I $ X(1)", 2, r"unexpected character '\$'"),
        ("I + X(", 6, r"expected an integer but found end of input"),
        ("X(0)", 2, r"generator weight must be positive"),
        ("(I + X(1)", 9, r"expected '\)' but found end of input"),
        ("I + )", 4, r"unexpected '\)'"),
        ("S[0;(1,0)]", 7, r"representation weight must be positive"),
    ],
)
def test_parse_errors(text, position, message):
    with pytest.raises(ExpressionError, match=message) as error:
        parse_expression(text)
    assert error.value.position == position


def test_mode_matrix():
    hessian = np.diag([0.0, 144.0])
    matrix = mode_matrix(hessian, 1, 1 / 12)
    assert np.diag(matrix) == pytest.approx(np.array([0.5, 0.0]))


@pytest.mark.parametrize(
    "lam,counts",
    [(1 / 12, (0, 1, 3)), (1.01 / 12, (1, 0, 3)), (0.99 / 12, (0, 0, 4)), (1e-3, (0, 0, 4))],
)
def test_mode_morse_lj2(lj2, lam, counts):
    model, orbit, spectral = lj2
    data = mode_morse(model.hessian(orbit.q0), 1, lam)
    assert (data.neg, data.zero, data.pos) == counts
    assert data.dimension == 4
    assert mode_morse(spectral, 1, lam) == data


def test_mode_morse_from_frequencies():
    data = mode_morse([(np.sqrt(216), 1), (np.sqrt(108), 2)], 1, 1.01 / np.sqrt(108))
    assert (data.neg, data.zero, data.pos) == (3, 0, 0)
    data = mode_morse([12.0], 2, 1.01 / 12)
    assert (data.neg, data.zero, data.pos) == (0, 0, 1)
    with pytest.raises(ValueError, match=r"mode index must be at least 1"):
        mode_morse([12.0], 0, 0.1)


def test_n0_select():
    assert n0_select([12.0], 1) == (2, None)
    n0, margin = n0_select([12.0], 1, lam_plus=1.01 / 12)
    assert n0 == 2
    assert margin == pytest.approx(4 - 1.01**2)
    lj3 = [np.sqrt(216), np.sqrt(108)]
    assert n0_select(lj3, 2)[0] == 2
    roots = np.sort(np.roots((5.0, -62.0, 225.0, -243.0)).real)[::-1]
    assert n0_select(np.sqrt(roots), 3)[0] == int(np.floor(np.sqrt(roots[0] / roots[2]))) + 1
    with pytest.raises(DegenerateModeError, match=r"shrink the window"):
        n0_select([12.0], 1, lam_plus=2.5 / 12)


def test_positive_rep():
    assert positive_rep([12.0], 0.99 / 12, 2) == S1RepDecomposition()
    assert positive_rep([12.0], 1.01 / 12, 2) == S1RepDecomposition(0, [(1, 1)])
    lj3 = [(np.sqrt(216), 1), (np.sqrt(108), 2)]
    assert positive_rep(lj3, 1.01 / np.sqrt(108), 2) == S1RepDecomposition(0, [(3, 1)])
    assert positive_rep(lj3, 0.99 / np.sqrt(108), 2) == S1RepDecomposition(0, [(1, 1)])
    assert positive_rep([12.0], 2.5 / 12, 3, k0=1).terms == [(1, 1), (1, 2)]
    with pytest.raises(DegenerateModeError, match=r"equals 1/beta"):
        positive_rep([12.0], 1 / 12, 2)


def test_lj2_certificate(lj2):
    model, orbit, spectral = lj2
    window = choose_window(spectral.betas, 1)
    certificate = bifurcation_certificate(spectral, 1, window)
    assert (certificate.r_minus, certificate.r_plus) == (0, 1)
    assert certificate.chi_minus == I
    assert certificate.chi_plus == I - X(1)
    assert certificate.changed
    assert certificate.shared_factor == I
    assert certificate.n0 == 2
    assert certificate.warnings == []
    assert certificate.payload["chi_plus"] == "I - X(1)"


@pytest.mark.parametrize("j0,jump", [(1, 1), (2, 2)])
def test_lj3_certificates(lj3, j0, jump):
    model, orbit, spectral = lj3
    window = choose_window(spectral.betas, j0)
    certificate = bifurcation_certificate(spectral, j0, window)
    assert certificate.r_plus - certificate.r_minus == jump
    assert certificate.multiplicity == jump
    assert certificate.changed
    assert certificate.chi_plus - certificate.chi_minus == -jump * X(1)
    assert certificate.warnings == []


def test_certificate_sign_follows_extra_kernel():
    spectral = spectral_data_from_matrix(np.diag([0.0, 0.0, 4.0]), symmetry_dim=1)
    window = choose_window(spectral.betas, 1)
    certificate = bifurcation_certificate(spectral, 1, window)
    assert certificate.dim_n == 1
    assert certificate.chi_minus == -I
    assert certificate.chi_plus == -I + X(1)


def test_certificate_window_mismatch(lj3):
    model, orbit, spectral = lj3
    window = choose_window(spectral.betas, 1)
    with pytest.raises(ValueError, match=r"window is built for j0=1, not j0=2"):
        bifurcation_certificate(spectral, 2, window)


@pytest.mark.parametrize(
    "field,degree",
    [
        (lambda p: p, 1),
        (lambda p: 4 * p**3, 1),
        (lambda p: np.stack([p[:, 0] ** 2 - p[:, 1] ** 2, 2 * p[:, 0] * p[:, 1]], axis=1), 2),
        (lambda p: p * np.array([1.0, -1.0]), -1),
        (lambda p: np.tile([1.0, 2.0], (len(p), 1)), 0),
    ],
)
def test_winding_degree(field, degree):
    assert winding_degree(field) == degree


def test_winding_degree_refines():
    def field(p):
        angle = 20 * np.arctan2(p[:, 1], p[:, 0])
        return np.stack([np.cos(angle), np.sin(angle)], axis=1)

    assert winding_degree(field) == 20


def test_winding_degree_errors():
    with pytest.raises(ValueError, match=r"at least 64 samples"):
        winding_degree(lambda p: p, samples=32)
    with pytest.raises(ValueError, match=r"vanishes on the loop near t=0.000000"):
        winding_degree(lambda p: p - np.array([1.0, 0.0]))


def test_winding_from_samples():
    t = np.linspace(0, 2 * np.pi, 100, endpoint=False)
    degree, largest = winding_degree_from_samples(np.stack([np.cos(3 * t), -np.sin(3 * t)], 1))
    assert degree == -3
    assert largest == pytest.approx(3 * 2 * np.pi / 100)
