"""Separable non-local kernels: Green's functions, N integrals, coefficients.

The independent oracles here are 2-d quadrature of the defining double
integral and direct substitution of the sampled solution back into the
integro-differential equation (finite differences plus quadrature).
"""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from ptscatter import (
    SeparableKernel,
    compute_n,
    green_function,
    kernel_symmetry_class,
    nonlocal_coefficients,
    nonlocal_intermediates,
    nonlocal_wavefunction,
)
from ptscatter.errors import ResonancePole

SYMMETRIC = SeparableKernel.yamaguchi(gamma=1.0, delta=1.0, alpha=0.5, beta=0.5, lam=1.0)
ASYMMETRIC = SeparableKernel.yamaguchi(gamma=1.0, delta=2.0, alpha=0.3, beta=0.7, lam=1.0)
HERMITIAN = SeparableKernel.yamaguchi(gamma=1.2, delta=1.2, alpha=0.4, beta=-0.4, lam=1.0)
DEFAULT = SeparableKernel.yamaguchi(gamma=1.0, delta=1.0, alpha=0.0, beta=0.0, lam=0.5)


class TestGreenFunction:
    def test_coincident_points(self):
        assert abs(green_function("plus", 0.0, 2.0) - (-0.25j)) < 1e-15

    def test_minus_is_conjugate(self, rng):
        for _ in range(50):
            u = rng.uniform(-10, 10)
            k = rng.uniform(0.1, 5)
            gp = green_function("plus", u, k)
            assert abs(green_function("minus", u, k) - gp.conjugate()) < 1e-15

    def test_homogeneous_solution_away_from_source(self):
        """(d^2/du^2 + k^2) G = 0 for u != 0 by central differences."""
        k, h = 1.3, 1e-3
        for u in (0.5, -2.0, 3.7):
            vals = [green_function("plus", u + j * h, k) for j in (-1, 0, 1)]
            d2 = (vals[0] - 2 * vals[1] + vals[2]) / (h * h)
            assert abs(d2 + k * k * vals[1]) < 1e-6


class TestComputeN:
    def test_closed_form_matches_quadrature(self):
        """The frozen piecewise-exponential result against the generic 2-d route."""
        generic = SeparableKernel.from_form_factors(
            g=lambda x: math.exp(-abs(x)), h=lambda y: math.exp(-2 * abs(y)),
            alpha=0.3, beta=-0.4, lam=1.0,
            g_ft=lambda q: 2.0 / (1.0 + q * q), h_ft=lambda q: 4.0 / (4.0 + q * q),
            support=40.0)
        fast = SeparableKernel.yamaguchi(gamma=1.0, delta=2.0, alpha=0.3, beta=-0.4, lam=1.0)
        k = 1.5
        for sign in ("plus", "minus"):
            a = compute_n(fast, sign, k)
            b = compute_n(generic, sign, k)
            assert abs(a - b) < 1e-6

    def test_confluent_parameters(self):
        """gamma = delta with alpha = -beta = 0 (degenerate in momentum space)."""
        generic = SeparableKernel.from_form_factors(
            g=lambda x: math.exp(-abs(x)), h=lambda y: math.exp(-abs(y)),
            g_ft=lambda q: 2.0 / (1.0 + q * q), h_ft=lambda q: 2.0 / (1.0 + q * q),
            support=40.0)
        fast = SeparableKernel.yamaguchi(gamma=1.0, delta=1.0)
        got = compute_n(fast, "plus", 1.0)
        ref = compute_n(generic, "plus", 1.0)
        assert abs(got - ref) < 1e-6
        # and against the hand value N+ = (1 - 0.5j) / lam at these parameters
        assert abs(got - (1.0 - 0.5j)) < 1e-12

    def test_q_decomposition(self, rng):
        """lam N+- = -+(i w/2)[g~(k-a)h~(k+b) + g~(k+a)h~(k-b)] + Q with real Q."""
        for _ in range(25):
            kernel = SeparableKernel.yamaguchi(
                gamma=rng.uniform(0.3, 3), delta=rng.uniform(0.3, 3),
                alpha=rng.uniform(-1, 1), beta=rng.uniform(-1, 1),
                lam=rng.uniform(0.2, 2))
            k = rng.uniform(0.2, 4)
            w = kernel.lam / (2 * k)
            g1 = kernel.g_ft(k - kernel.alpha) * kernel.h_ft(k + kernel.beta)
            g2 = kernel.g_ft(k + kernel.alpha) * kernel.h_ft(k - kernel.beta)
            npl = kernel.lam * compute_n(kernel, "plus", k)
            nmi = kernel.lam * compute_n(kernel, "minus", k)
            q = (npl + nmi) / 2
            assert abs(q.imag) < 1e-9
            assert abs(npl - (-0.5j * w * (g1 + g2) + q)) < 1e-8
            assert abs(nmi - (0.5j * w * (g1 + g2) + q)) < 1e-8

    def test_q_reality_spec_point(self):
        mid = nonlocal_intermediates(SYMMETRIC, 1.0)
        assert abs(mid.q_part.imag) < 1e-9


class TestCoefficients:
    def test_zero_strength_is_free(self):
        kernel = SeparableKernel.yamaguchi(gamma=1.0, delta=2.0, alpha=0.3, beta=0.7, lam=0.0)
        c = nonlocal_coefficients(kernel, 1.0)
        assert c.t_lr == 1.0 and c.r_lr == 0.0 and c.t_rl == 1.0 and c.r_rl == 0.0

    def test_symmetric_kernel_equal_transmissions(self):
        for k in (0.5, 1.0, 2.0):
            c = nonlocal_coefficients(SYMMETRIC, k)
            assert abs(c.t_rl - c.t_lr) < 1e-10

    def test_asymmetric_kernel_unequal_transmissions(self):
        c = nonlocal_coefficients(ASYMMETRIC, 1.0)
        assert abs(c.t_rl - c.t_lr) > 1e-3
        # equal moduli nonetheless (the combined-symmetry constraint)
        assert abs(abs(c.t_rl) - abs(c.t_lr)) < 1e-12

    def test_transmission_difference_identity(self, rng):
        """T_rl - T_lr = i w delta_t D+ script-D- for random kernels."""
        for _ in range(25):
            kernel = SeparableKernel.yamaguchi(
                gamma=rng.uniform(0.3, 3), delta=rng.uniform(0.3, 3),
                alpha=rng.uniform(-1, 1), beta=rng.uniform(-1, 1),
                lam=rng.uniform(0.2, 2))
            k = rng.uniform(0.2, 4)
            c = nonlocal_coefficients(kernel, k)
            mid = nonlocal_intermediates(kernel, k)
            want = 1j * mid.omega * mid.delta_t * mid.d_plus * mid.script_d_minus
            assert abs((c.t_rl - c.t_lr) - want) < 1e-12 * max(1.0, abs(want))

    def test_unitarity_broken_generically(self):
        """Non-hermitian kernels do not conserve flux.

        The symmetric-but-not-hermitian and the fully asymmetric kernels
        both break |T|^2 + |R|^2 = 1 at order one; a hermitian kernel
        (alpha = -beta, g = h) does not, even without T invariance.
        """
        for kernel in (SYMMETRIC, ASYMMETRIC):
            c = nonlocal_coefficients(kernel, 1.0)
            assert abs(abs(c.t_lr) ** 2 + abs(c.r_lr) ** 2 - 1.0) > 1e-3
        c = nonlocal_coefficients(HERMITIAN, 1.0)
        assert abs(abs(c.t_lr) ** 2 + abs(c.r_lr) ** 2 - 1.0) < 1e-12

    def test_generic_pipeline_matches_fast_path(self):
        """Numeric transforms + nested quadrature against the closed forms."""
        generic = SeparableKernel.from_form_factors(
            g=lambda x: math.exp(-abs(x)), h=lambda y: math.exp(-2 * abs(y)),
            alpha=0.3, beta=0.7, lam=1.0, support=40.0)
        fast = SeparableKernel.yamaguchi(gamma=1.0, delta=2.0, alpha=0.3, beta=0.7, lam=1.0)
        a = nonlocal_coefficients(generic, 1.0)
        b = nonlocal_coefficients(fast, 1.0)
        for name in ("t_lr", "r_lr", "t_rl", "r_rl"):
            assert abs(getattr(a, name) - getattr(b, name)) < 1e-6

    def test_hermitian_kernel_reflection_moduli(self):
        """alpha = -beta, g = h: |R_lr| = |R_rl| while T_lr != T_rl."""
        for k in (0.5, 1.0, 2.0):
            c = nonlocal_coefficients(HERMITIAN, k)
            assert abs(abs(c.r_lr) - abs(c.r_rl)) < 1e-12
            assert abs(c.t_lr - c.t_rl) > 1e-3

    def test_no_resonance_pole_for_real_strengths(self, rng):
        """Im(lam N+) = -(w/2)(G1+G2) < 0 for positive transforms, so the
        resolvent denominator cannot vanish at real lam and real k."""
        for _ in range(20):
            kernel = SeparableKernel.yamaguchi(
                gamma=rng.uniform(0.3, 3), delta=rng.uniform(0.3, 3),
                alpha=rng.uniform(-1, 1), beta=rng.uniform(-1, 1),
                lam=rng.uniform(-3, 3) or 0.1)
            k = rng.uniform(0.2, 4)
            mid = nonlocal_intermediates(kernel, k)
            assert abs(1.0 - kernel.lam * mid.n_plus) > 1e-6

    def test_resonance_pole_detection(self, monkeypatch):
        """A vanishing 1 - lam*N+ is reported as a pole."""
        import ptscatter.separable as sep

        kernel = SeparableKernel.yamaguchi(gamma=1.0, delta=1.0, lam=2.0)
        monkeypatch.setattr(sep, "compute_n", lambda ker, sign, k: 0.5 + 0.0j)
        with pytest.raises(ResonancePole):
            sep.nonlocal_intermediates(kernel, 1.0)


class TestKernelClassification:
    def test_table_rows(self):
        cls = kernel_symmetry_class(SeparableKernel.yamaguchi(1.0, 1.0))
        assert cls.reality and cls.time_reversal and cls.parity and cls.pt
        assert cls.symmetric_xy and cls.hermitian

        cls = kernel_symmetry_class(SYMMETRIC)
        assert cls.symmetric_xy and cls.pt
        assert not cls.reality and not cls.time_reversal and not cls.hermitian

        cls = kernel_symmetry_class(HERMITIAN)
        assert cls.hermitian and cls.pt and not cls.symmetric_xy

        cls = kernel_symmetry_class(ASYMMETRIC)
        assert cls.pt
        assert not (cls.hermitian or cls.symmetric_xy or cls.parity or cls.time_reversal)

    def test_pt_needs_even_factors(self):
        skew = SeparableKernel.from_form_factors(
            g=lambda x: math.exp(-abs(x)) * (1 + 0.3 * math.tanh(x)),
            h=lambda y: math.exp(-abs(y)),
            support=40.0)
        cls = kernel_symmetry_class(skew)
        assert not cls.pt and cls.time_reversal


def _phase_factor(kernel, x):
    return kernel.g(x) * cmath.exp(1j * kernel.alpha * x)


def integro_differential_residual(kernel, k, direction, h=0.01, span=5.0):
    """Independent oracle: substitute the sampled solution into the equation.

    psi'' is taken by 5-point finite differences; the non-local term
    factorises as lam g(x)e^{iax} * Int h(y)e^{iby} psi(y) dy with the
    integral evaluated by quadrature of the solution's closed form.
    Points within 3h of the form-factor kink at x = 0 are skipped (psi'''
    jumps there and the stencil loses its order).
    """
    centers = [x for x in np.arange(-span, span + h / 2, 5 * h) if abs(x) >= 3 * h]
    stencil = np.array([-2, -1, 0, 1, 2]) * h
    xs = sorted({round(c + s, 12) for c in centers for s in stencil})
    wf = nonlocal_wavefunction(kernel, k, direction, np.array(xs))
    table = dict(zip(xs, wf.psi))

    L = kernel.support

    def psi_at(y):
        return nonlocal_wavefunction(kernel, k, direction, np.array([y])).psi[0]

    # quadrature of Int h(y) e^{iby} psi(y) dy using the solution callable
    def integrand_re(y):
        return (kernel.h(y) * cmath.exp(1j * kernel.beta * y) * psi_at(y)).real

    def integrand_im(y):
        return (kernel.h(y) * cmath.exp(1j * kernel.beta * y) * psi_at(y)).imag

    iv = complex(quad(integrand_re, -L, L, points=[0.0], limit=200)[0],
                 quad(integrand_im, -L, L, points=[0.0], limit=200)[0])
    worst = 0.0
    for c in centers:
        pts = [table[round(c + s, 12)] for s in stencil]
        d2 = (-pts[0] + 16 * pts[1] - 30 * pts[2] + 16 * pts[3] - pts[4]) / (12 * h * h)
        res = -d2 + kernel.lam * _phase_factor(kernel, c) * iv - k * k * pts[2]
        worst = max(worst, abs(res))
    return worst


class TestWavefunction:
    def test_zero_strength_plane_wave(self):
        kernel = SeparableKernel.yamaguchi(gamma=1.0, delta=1.0, lam=0.0)
        grid = np.linspace(-5, 5, 101)
        wf = nonlocal_wavefunction(kernel, 1.0, "left", grid)
        assert np.max(np.abs(wf.psi - np.exp(1j * grid))) < 1e-14

    def test_left_asymptotics_match_coefficients(self):
        k = 1.0
        c = nonlocal_coefficients(DEFAULT, k)
        far = 40.0
        grid = np.array([-far, -far + np.pi / (2 * k), far, far + np.pi / (2 * k)])
        wf = nonlocal_wavefunction(DEFAULT, k, "left", grid)

        def solve_pair(x1, x2, p1, p2):
            m = np.array([[np.exp(1j * k * x1), np.exp(-1j * k * x1)],
                          [np.exp(1j * k * x2), np.exp(-1j * k * x2)]])
            return np.linalg.solve(m, np.array([p1, p2]))

        a_m, b_m = solve_pair(grid[0], grid[1], wf.psi[0], wf.psi[1])
        a_p, b_p = solve_pair(grid[2], grid[3], wf.psi[2], wf.psi[3])
        assert abs(a_m - 1.0) < 1e-8 and abs(b_m - c.r_lr) < 1e-8
        assert abs(a_p - c.t_lr) < 1e-8 and abs(b_p) < 1e-8

    def test_right_asymptotics_match_coefficients(self):
        k = 1.0
        c = nonlocal_coefficients(ASYMMETRIC, k)
        far = 40.0
        grid = np.array([-far, -far + np.pi / (2 * k), far, far + np.pi / (2 * k)])
        wf = nonlocal_wavefunction(ASYMMETRIC, k, "right", grid)
        m_m = np.array([[np.exp(1j * k * grid[0]), np.exp(-1j * k * grid[0])],
                        [np.exp(1j * k * grid[1]), np.exp(-1j * k * grid[1])]])
        a_m, b_m = np.linalg.solve(m_m, wf.psi[:2])
        m_p = np.array([[np.exp(1j * k * grid[2]), np.exp(-1j * k * grid[2])],
                        [np.exp(1j * k * grid[3]), np.exp(-1j * k * grid[3])]])
        a_p, b_p = np.linalg.solve(m_p, wf.psi[2:])
        assert abs(a_m) < 1e-8 and abs(b_m - c.t_rl) < 1e-8
        assert abs(b_p - 1.0) < 1e-8 and abs(a_p - c.r_rl) < 1e-8

    def test_derivative_consistent_with_values(self):
        grid = np.linspace(-3, 3, 46)  # avoids x = 0 (psi''' jumps there)
        wf = nonlocal_wavefunction(DEFAULT, 1.0, "left", grid)
        h = 1e-5
        for idx in (5, 20, 40):
            x = grid[idx]
            plus = nonlocal_wavefunction(DEFAULT, 1.0, "left", np.array([x + h])).psi[0]
            minus = nonlocal_wavefunction(DEFAULT, 1.0, "left", np.array([x - h])).psi[0]
            assert abs((plus - minus) / (2 * h) - wf.dpsi[idx]) < 1e-7

    def test_integro_differential_residual_left(self):
        assert integro_differential_residual(DEFAULT, 1.0, "left") < 1e-5

    def test_integro_differential_residual_right(self):
        assert integro_differential_residual(ASYMMETRIC, 1.0, "right") < 1e-5
