from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from circlesum.errors import InvalidInputError, InvalidPairingError
from circlesum.harmonics import (ExtractionOperator, TrigPolynomial, combination_phases,
                                 combination_target, extract_harmonic, extraction_phases,
                                 extraction_taylor, fit_samples, fourier_coeffs, parse_signal)
from circlesum.oracle import monic_coeffs_from_points, newton_power_sums
from circlesum.series import exp_antiderivative_taylor

T_GRID = np.linspace(0, 2 * np.pi, 100, endpoint=False)


def random_trig(rng, n, complex_coeffs=False):
    a = rng.uniform(-1, 1, n)
    b = rng.uniform(-1, 1, n)
    if complex_coeffs:
        a = a + 1j * rng.uniform(-1, 1, n)
        b = b + 1j * rng.uniform(-1, 1, n)
    return TrigPolynomial(a, b)


def extract_tol(T, op):
    return 1e-8 * op.N * (1 + T.magnitude())


def test_extraction_polynomial_n2_nu2():
    op = extraction_phases(2, 2)
    assert op.N == 5 and op.q == 1
    np.testing.assert_allclose(extraction_taylor(2, 2).g, [1, 0, -0.5])
    assert len(set(np.round(op.t, 12))) == 5
    # power sums via Newton's identities on the points, independent of the root finder
    S = newton_power_sums(monic_coeffs_from_points(op.lambdas), 2)
    np.testing.assert_allclose(S, [0, 1], atol=1e-12)
    P = np.array([1, 0, -0.5, -0.5, 0, 1])
    assert np.max(np.abs(np.polyval(P[::-1], np.exp(1j * op.t)))) < 1e-12


def test_extraction_polynomial_nu1_is_exp_partial_sum():
    np.testing.assert_allclose(extraction_taylor(2, 1).g, [1, -1, 0.5])


@pytest.mark.parametrize("n", [2, 3, 5, 9, 14])
def test_extraction_taylor_matches_recurrence(n):
    for nu in range(1, n + 1):
        f = np.zeros(nu)
        f[nu - 1] = -1
        np.testing.assert_allclose(extraction_taylor(n, nu).g,
                                   exp_antiderivative_taylor(f, n).g, atol=1e-15)


@pytest.mark.parametrize("n, nu", [(2, 1), (4, 3), (7, 7), (12, 5)])
def test_phase_symmetry(n, nu):
    t = extraction_phases(n, nu).t
    mirrored = np.sort(np.mod(2 * np.pi - t, 2 * np.pi))
    np.testing.assert_allclose(np.sort(t), mirrored, atol=1e-12)


def test_operator_is_cached():
    assert extraction_phases(6, 2) is extraction_phases(6, 2)


def test_cache_under_threads():
    pairs = [(n, nu) for n in range(2, 9) for nu in range(1, n + 1)] * 3
    with ThreadPoolExecutor(8) as pool:
        ops = list(pool.map(lambda p: extraction_phases(*p), pairs))
    for (n, nu), op in zip(pairs, ops):
        assert op.n == n and op.nu == nu and op.certificate_ok()


def test_rejects_small_degree_and_bad_index():
    with pytest.raises(InvalidInputError, match="n >= 2"):
        extraction_phases(1, 1)
    with pytest.raises(InvalidInputError):
        extraction_phases(3, 4)
    with pytest.raises(InvalidInputError):
        fourier_coeffs(TrigPolynomial([1.0], [0.0]), 1)


def test_zero_signal():
    T = TrigPolynomial(np.zeros(3), np.zeros(3))
    assert np.all(extract_harmonic(T, extraction_phases(3, 2), T_GRID) == 0)


def test_extract_cos_t():
    T = TrigPolynomial([1.0, 1.0], [0.0, 0.0])
    theta = extract_harmonic(T, extraction_phases(2, 1), T_GRID)
    np.testing.assert_allclose(theta, np.cos(T_GRID), atol=1e-8)


def test_extract_random_degree5(rng):
    T = random_trig(rng, 5)
    op = extraction_phases(5, 3)
    assert np.max(np.abs(op(T, T_GRID) - T.harmonic(3, T_GRID))) <= 1e-8


def test_degree_mismatch():
    with pytest.raises(InvalidPairingError):
        extract_harmonic(TrigPolynomial([1.0] * 3, [0.0] * 3), extraction_phases(4, 1), 0.0)


def test_fourier_examples():
    a, b = fourier_coeffs(TrigPolynomial([0.0, 3.0], [0.0, 4.0]), 2)
    assert a == pytest.approx(3, abs=1e-8) and b == pytest.approx(4, abs=1e-8)
    a, b = fourier_coeffs(TrigPolynomial([1.0, 0.0], [0.0, 0.0]), 2)
    assert abs(a) < 1e-8 and abs(b) < 1e-8


def test_fourier_random_degree4(rng):
    T = random_trig(rng, 4)
    for nu in range(1, 5):
        a, b = fourier_coeffs(T, nu)
        assert a == pytest.approx(T.a[nu - 1], abs=1e-8)
        assert b == pytest.approx(T.b[nu - 1], abs=1e-8)


def test_fourier_against_quadrature(rng):
    t = 2 * np.pi * np.arange(4096) / 4096
    for n in (2, 6, 11):
        T = random_trig(rng, n)
        vals = T(t)
        for nu in range(1, n + 1):
            a_q = 2 * np.mean(vals * np.cos(nu * t))
            b_q = 2 * np.mean(vals * np.sin(nu * t))
            a, b = fourier_coeffs(T, nu)
            assert abs(a - a_q) <= 1e-7 and abs(b - b_q) <= 1e-7


@pytest.mark.parametrize("complex_coeffs", [False, True])
def test_universality(rng, complex_coeffs):
    n, nu = 7, 4
    op = extraction_phases(n, nu)
    t = np.linspace(0, 2 * np.pi, 720, endpoint=False)
    for _ in range(100):
        T = random_trig(rng, n, complex_coeffs)
        assert np.max(np.abs(op(T, t) - T.harmonic(nu, t))) <= extract_tol(T, op)


def test_linearity(rng):
    op = extraction_phases(6, 2)
    T, U = random_trig(rng, 6), random_trig(rng, 6)
    alpha, beta = 1.7, -0.4
    W = TrigPolynomial(alpha * T.a + beta * U.a, alpha * T.b + beta * U.b)
    np.testing.assert_allclose(op(W, T_GRID), alpha * op(T, T_GRID) + beta * op(U, T_GRID),
                               atol=1e-10)


def test_certificate_controls_extraction_error(rng):
    n, nu = 5, 2
    base = extraction_phases(n, nu)
    t = np.linspace(0, 2 * np.pi, 360, endpoint=False)
    for scale in (0.0, 1e-9, 1e-6, 1e-3):
        phases = base.t + scale * rng.normal(size=base.N)
        lam = np.exp(-1j * phases)
        S = np.array([np.sum(lam ** j) for j in range(1, n + 1)])
        residual = float(np.max(np.abs(S - base.targets)))
        op = ExtractionOperator(n=n, t=phases, targets=base.targets, residual=residual, nu=nu)
        T = random_trig(rng, n)
        err = np.max(np.abs(op(T, t) - T.harmonic(nu, t)))
        assert err <= op.N * residual * np.sum(np.abs(2 * T.c)) + 1e-13


def test_combination_single_harmonic_reduces():
    op = combination_phases([1], 20, n=4)
    np.testing.assert_allclose(op.targets, extraction_phases(4, 1).targets)
    op = combination_phases([0, 0, 1], 20, n=3)
    np.testing.assert_allclose(op.targets, extraction_phases(3, 3).targets)
    assert combination_phases([1], 20).n == 2


def test_combination_certificate():
    op = combination_phases([1, 0.5j], 20, n=4)
    S = newton_power_sums(monic_coeffs_from_points(op.lambdas), 4)
    np.testing.assert_allclose(S, [1, 0.5j, 0, 0], atol=1e-9)


def test_combination_extracts_real_combination(rng):
    gamma = [0.5, -0.3, 0.2]
    op = combination_phases(gamma, 30)
    T = random_trig(rng, op.n)
    expected = sum(g * T.harmonic(m, T_GRID) for m, g in enumerate(gamma, 1))
    np.testing.assert_allclose(op(T, T_GRID), expected, atol=extract_tol(T, op))
    np.testing.assert_allclose(combination_target(T, gamma, T_GRID), expected, atol=1e-14)


def test_combination_complex_gamma_gives_quadrature_part(rng):
    gamma = [1, 0.5j]
    op = combination_phases(gamma, 20, n=4)
    T = random_trig(rng, 4)
    got = op(T, T_GRID)
    # tau_2 shifted by a quarter period: b_2 cos 2t - a_2 sin 2t
    quad = T.b[1] * np.cos(2 * T_GRID) - T.a[1] * np.sin(2 * T_GRID)
    np.testing.assert_allclose(got, T.harmonic(1, T_GRID) + 0.5 * quad, atol=1e-8)
    np.testing.assert_allclose(combination_target(T, gamma, T_GRID), got, atol=1e-8)


def test_combination_rejects_zero_gamma():
    with pytest.raises(InvalidInputError):
        combination_phases([0, 0], 10)


def test_parse_signal_coefficients():
    T = parse_signal("n=2\n# comment\n2 3 4\n1 0.5 -1\n")
    np.testing.assert_array_equal(T.a, [0.5, 3])
    np.testing.assert_array_equal(T.b, [-1, 4])


def test_parse_signal_samples(rng):
    T = random_trig(rng, 3)
    t = np.sort(rng.uniform(0, 2 * np.pi, 15))
    text = "n=3\n" + "".join(f"{float(x)!r} {float(v + 0.25)!r}\n" for x, v in zip(t, T(t)))
    U = parse_signal(text)
    np.testing.assert_allclose(U.a, T.a, atol=1e-10)
    np.testing.assert_allclose(U.b, T.b, atol=1e-10)


@pytest.mark.parametrize("text", [
    "2 3 4\n",
    "n=2\n3 1 1\n",
    "n=2\n1 1 1\n1 2 2\n",
    "n=2\n1 2\n1 2 3\n",
    "n=2\n0 1\n1 2\n",
    "n=x\n",
])
def test_parse_signal_errors(text):
    with pytest.raises(InvalidInputError):
        parse_signal(text)


def test_fit_samples_needs_enough_points():
    with pytest.raises(InvalidInputError):
        fit_samples(3, np.arange(6.0), np.zeros(6))
