import itertools
from fractions import Fraction as F
from math import factorial, pi

import numpy as np
import pytest

from pfaffint.measure import (
    BasisTable,
    KernelInstance,
    MeasureSpace,
    de_bruijn_sides,
    gauss_hermite_plane,
    ginibre_kernel,
    moment_matrix_g,
    random_kernel,
    space_from_json,
    space_to_json,
)
from pfaffint.pfcore import as_matrix, random_skew, zeros


def single_atom():
    space = MeasureSpace.discrete(["x"], [1])
    return KernelInstance(as_matrix([[0, 1], [-1, 0]]), BasisTable(as_matrix([[1, 2]]), as_matrix([[3, 4]])), space)


def test_g_vanishes_for_equal_tables():
    k = random_kernel(4, 3, 0)
    k = KernelInstance(k.mu, BasisTable(k.basis.plus, k.basis.plus), k.space)
    assert np.all(moment_matrix_g(k) == zeros(4, 4))


def test_g_single_atom():
    assert moment_matrix_g(single_atom()).tolist() == [[0, 2], [-2, 0]]


@pytest.mark.parametrize("seed", range(4))
def test_g_against_double_loop(seed):
    k = random_kernel(4, 2, seed)
    g = moment_matrix_g(k)
    p, m, w = k.basis.plus, k.basis.minus, k.space.weights
    for a in range(4):
        for b in range(4):
            ref = F(0)
            for i in range(2):
                ref += w[i] * (m[i, a] * p[i, b] - p[i, a] * m[i, b])
            assert g[a, b] == ref
    assert np.all(g.T == -g)


def test_de_bruijn_ell1():
    k = random_kernel(2, 3, 5)
    lhs, rhs = de_bruijn_sides(k, 1)
    p, m, w = k.basis.plus, k.basis.minus, k.space.weights
    direct = sum((w[i] * (p[i, 0] * m[i, 1] - p[i, 1] * m[i, 0]) for i in range(3)), F(0))
    g = moment_matrix_g(k)
    assert lhs == rhs == direct == g[1, 0] == -g[0, 1]


def test_de_bruijn_equal_tables():
    k = random_kernel(4, 3, 1)
    k = KernelInstance(k.mu, BasisTable(k.basis.minus, k.basis.minus), k.space)
    assert de_bruijn_sides(k, 2) == (0, 0)


@pytest.mark.parametrize("ell,points", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_de_bruijn_exact(ell, points):
    for seed in range(3):
        lhs, rhs = de_bruijn_sides(random_kernel(2 * ell, points, seed), ell)
        assert lhs == rhs


def test_de_bruijn_lhs_symmetric_under_point_shuffle():
    k = random_kernel(4, 4, 9)
    order = [2, 0, 3, 1]
    shuffled = KernelInstance(
        k.mu,
        BasisTable(k.basis.plus[order], k.basis.minus[order]),
        MeasureSpace(k.space.points[order], k.space.weights[order]),
    )
    assert de_bruijn_sides(shuffled, 2)[0] == de_bruijn_sides(k, 2)[0]


def test_de_bruijn_column_mismatch():
    with pytest.raises(ValueError):
        de_bruijn_sides(random_kernel(4, 2, 0), 1)


def test_de_bruijn_float():
    k = random_kernel(4, 3, 2).as_float()
    lhs, rhs = de_bruijn_sides(k, 2)
    assert abs(lhs - rhs) < 1e-9 * max(1, abs(rhs))


@pytest.mark.parametrize("nodes", [1, 2, 5, 24])
def test_gaussian_normalization(nodes):
    s = gauss_hermite_plane(nodes)
    assert len(s) == nodes**2
    assert abs(s.integrate(np.ones(len(s))) - pi) < 1e-12


def test_second_and_angular_moments():
    s = gauss_hermite_plane(6)
    z = s.points
    assert abs(s.integrate(z * np.conj(z)) - pi) < 1e-12
    assert abs(s.integrate(z**2)) < 1e-12


@pytest.mark.parametrize("nodes", [4, 10, 24])
def test_monomial_moments(nodes):
    s = gauss_hermite_plane(nodes)
    z = s.points
    # beyond total degree ~12 rounding in |z|^(a+b) dominates, not the rule itself
    top = min(nodes, 13)
    for a in range(top):
        for b in range(top - a):
            val = s.integrate(z**a * np.conj(z) ** b)
            closed = pi * factorial(a) if a == b else 0.0
            assert abs(val - closed) <= 1e-10 * max(1.0, abs(closed)), (a, b)


def test_shifted_center_moment():
    c = 0.5 + 0.3j
    s = gauss_hermite_plane(8, c)
    z = s.points
    # substitute u = z - c: integral of (u + c) e^{-|u|^2} is pi c
    assert abs(s.integrate(z) - pi * c) < 1e-12
    assert abs(s.integrate(np.abs(z) ** 2) - pi * (1 + abs(c) ** 2)) < 1e-12


def test_ginibre_n1():
    k = ginibre_kernel(1, np.zeros((1, 1)), gauss_hermite_plane(4))
    assert np.all(k.basis.plus == 1) and np.all(k.basis.minus == 1)
    assert np.all(moment_matrix_g(k) == 0)


def test_ginibre_centered_g_vanishes():
    # closed form: int e^{-|z|^2} zbar^a z^b = pi a! delta_ab, so both terms of g cancel
    k = ginibre_kernel(4, random_skew(4, 0), gauss_hermite_plane(10))
    g = moment_matrix_g(k)
    assert np.max(np.abs(g)) < 1e-12


def test_ginibre_shifted_g():
    c = 0.5 + 0.3j
    k = ginibre_kernel(3, random_skew(3, 0), gauss_hermite_plane(10, c))
    g = moment_matrix_g(k)
    # g_01 = int (z - zbar) = 2i pi Im(c)
    assert abs(g[0, 1] - 2j * pi * c.imag) < 1e-12
    # g_12 = int (zbar z^2 - z zbar^2) = 2i Im int z^2 zbar = 2i Im(pi (c^2 conj(c) + 2c))
    assert abs(g[1, 2] - 2j * (pi * (c * c * np.conj(c) + 2 * c)).imag) < 1e-11
    assert np.max(np.abs(g.real)) < 1e-12
    assert np.max(np.abs(g.imag)) > 1


def test_ginibre_custom_coefficients_real_gives_imaginary_g():
    coeffs = [[1], [F(1, 2), 2], [-1, 0, 3], [2, 1, 0, 1]]
    k = ginibre_kernel(4, random_skew(4, 1), gauss_hermite_plane(12, 0.2 - 0.7j), coeffs)
    g = moment_matrix_g(k)
    assert np.max(np.abs(g.real)) < 1e-11
    z = k.space.points[5]
    assert abs(k.basis.minus[5, 2] - (-1 + 3 * np.conj(z) ** 2)) < 1e-12


def test_ginibre_needs_complex_points():
    space = MeasureSpace.discrete([0, 1], [1, 1])
    with pytest.raises(TypeError):
        ginibre_kernel(2, np.zeros((2, 2)), space)


def test_space_validation_and_json():
    with pytest.raises(ValueError):
        MeasureSpace.discrete([0, 1], [1])
    s = MeasureSpace.discrete([complex(1, 2), complex(0, -1)], ["1/2", 3])
    back = space_from_json(space_to_json(s))
    assert list(back.weights) == [F(1, 2), 3]
    assert list(back.points) == [1 + 2j, -1j]
    s2 = space_from_json('{"points": [[0, 1], [2, 0]], "weights": [1, 1]}')
    assert s2.points.dtype == complex


def test_kernel_dimension_checks():
    k = single_atom()
    with pytest.raises(ValueError):
        KernelInstance(zeros(3, 3), k.basis, k.space)
    with pytest.raises(ValueError):
        KernelInstance(k.mu, k.basis, MeasureSpace.discrete([0, 1], [1, 1]))


def test_phi_blocks():
    k = random_kernel(3, 2, 4)
    blk = k.phi(0, 1)
    p, m, mu = k.basis.plus, k.basis.minus, k.mu
    assert blk[0, 1] == p[0] @ mu @ m[1]
    assert blk[1, 0] == m[0] @ mu @ p[1]
    # antisymmetry of the 2x2 matrix kernel: Phi(x, y) = -Phi(y, x)^T
    assert np.all(k.phi(0, 1) == -k.phi(1, 0).T)


def test_tuple_order_irrelevant_for_weights():
    k = random_kernel(2, 3, 1)
    w = k.space.weights
    for t in itertools.permutations(range(3)):
        assert w[t[0]] * w[t[1]] * w[t[2]] == w[0] * w[1] * w[2]
