import pytest

from mmchar.errors import RootTrackingLost
from mmchar.genus1_numeric import (boundary_exponent_probe, delta0_check,
                                   delta0_from_roots, dtau_identity_check,
                                   lambda_scaling_check, make_frame,
                                   omega_decomposition_check,
                                   scaling_dtau_quotient, spectator_root_slope)

TAUS = (2j, 1j, 0.5 + 1j, 0.25 + 1.5j)


class TestMakeFrame:
    def test_roots_sum_to_zero(self):
        for tau in TAUS:
            frame = make_frame(tau)
            scale = max(abs(r) for r in frame.roots)
            assert abs(sum(frame.roots)) < 1e-14 * scale

    def test_roots_solve_cubic(self):
        for tau in TAUS:
            frame = make_frame(tau)
            scale = max(abs(r) for r in frame.roots) ** 3
            for x in frame.roots:
                assert abs(x ** 3 + frame.a * x + frame.b) < 1e-12 * scale

    def test_square_torus_has_b_zero(self):
        # E6(i) = 0 forces b = 0 and roots {0, +r, -r}
        frame = make_frame(1j)
        assert abs(frame.b) < 1e-10 * abs(frame.a) ** 1.5
        roots = sorted(frame.roots, key=abs)
        assert abs(roots[0]) < 1e-8
        assert abs(roots[1] + roots[2]) < 1e-10

    def test_delta0_factorizations(self):
        err_ab, err_eis = delta0_check(make_frame(2j))
        assert err_ab < 1e-12
        assert err_eis < 1e-9

    def test_lambda_homogeneity(self):
        # a ~ lambda^4, b ~ lambda^6 make each root scale by lambda^2
        f1 = make_frame(2j, 1.0)
        f2 = make_frame(2j, 2.0)
        r1 = sorted(f1.roots, key=lambda z: (z.real, z.imag))
        r2 = sorted(f2.roots, key=lambda z: (z.real, z.imag))
        for a, b in zip(r1, r2):
            assert abs(b - 4 * a) < 1e-10 * abs(b)

    def test_qterms_floor(self):
        with pytest.raises(ValueError):
            make_frame(2j, qterms=10)


class TestDtauIdentity:
    def test_tolerance(self):
        assert dtau_identity_check(2j, 1.0, 1e-5) < 1e-4

    def test_first_order_decay(self):
        errs = [dtau_identity_check(2j, 1.0, eps) for eps in (1e-4, 1e-5, 1e-6)]
        assert errs[0] > errs[1] > errs[2]
        # linear in eps: consecutive ratios close to 10
        assert 5 < errs[0] / errs[1] < 20
        assert 5 < errs[1] / errs[2] < 20

    def test_richardson_pair(self):
        e1 = dtau_identity_check(2j, 1.0, 1e-5)
        e2 = dtau_identity_check(2j, 1.0, 5e-6)
        assert abs(2 * e2 - e1) < 1e-7

    def test_scaling_perturbation_is_degenerate(self):
        # xi proportional to X makes det Xi30 vanish identically
        assert scaling_dtau_quotient(2j) < 1e-9

    def test_root_tracking_guard(self):
        with pytest.raises(RootTrackingLost):
            dtau_identity_check(2j, 1.0, 0.5)


class TestOmega:
    def test_dlog_and_tau_part(self):
        for tau in (2j, 1j, 0.5 + 1j):
            err_dlog, err_tau = omega_decomposition_check(tau, 1.0, 1e-5)
            assert err_dlog < 1e-6
            assert err_tau < 1e-4

    def test_lambda_part_magnitude(self):
        for tau in (2j, 1j):
            mag, sign = lambda_scaling_check(tau, 1.0)
            assert abs(mag - 6.0) < 1e-6
            assert sign in (-1, 1)

    def test_lambda_part_sign_recorded(self):
        # dlog Delta^(0) with Delta^(0) ~ lambda^12 gives +6 d(lambda)/lambda
        _, sign = lambda_scaling_check(2j, 1.0)
        assert sign == 1


class TestBoundary:
    def test_slope_one(self):
        path = [2j + 0.5j * k for k in range(5)]
        slope = boundary_exponent_probe(path)
        assert abs(slope - 1.0) < 0.02

    def test_constant_path_flagged(self):
        with pytest.raises(ValueError):
            boundary_exponent_probe([2j, 2j, 2j])

    def test_spectator_root_is_bounded(self):
        path = [2j + 0.5j * k for k in range(5)]
        assert abs(spectator_root_slope(path)) < 0.01


class TestDelta0:
    def test_two_computations_agree(self):
        for tau in TAUS:
            frame = make_frame(tau)
            d_roots = delta0_from_roots(frame)
            d_ab = -4 * frame.a ** 3 - 27 * frame.b ** 2
            assert abs(d_roots - d_ab) / abs(d_ab) < 1e-12

    def test_degenerate_torus_rejected(self):
        with pytest.raises(ValueError):
            make_frame(40j)  # q -> 0 collapses the discriminant numerically
