import numpy as np
import pytest
import scipy.linalg as la

from nfg import (
    GaussianState,
    GaussianUnitary,
    StandardFormParams,
    apply_gaussian_unitary,
    blocks,
    is_symplectic,
    standard_form,
    state_from_params,
    symplectic_form,
    tmsv,
    validate_cm,
    williamson,
)

from helpers import random_cm, random_state, random_symplectic, rotation


class TestSymplecticForm:
    def test_single_mode(self):
        assert np.array_equal(symplectic_form(1), [[0.0, 1.0], [-1.0, 0.0]])

    def test_two_modes_is_direct_sum(self):
        d = symplectic_form(2)
        j = np.array([[0.0, 1.0], [-1.0, 0.0]])
        assert np.array_equal(d, la.block_diag(j, j))

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_squares_to_minus_identity(self, n):
        d = symplectic_form(n)
        assert np.array_equal(d @ d, -np.eye(2 * n))
        assert np.array_equal(d, -d.T)
        assert np.linalg.det(d) == pytest.approx(1.0)

    def test_zero_modes_rejected(self):
        with pytest.raises(ValueError):
            symplectic_form(0)


class TestValidateCm:
    def test_vacuum(self):
        report = validate_cm(np.eye(2))
        assert report.physical and report.symmetric and report.positive_definite
        assert report.symplectic_eigenvalues == pytest.approx([1.0])

    def test_half_identity_unphysical(self):
        report = validate_cm(0.5 * np.eye(2))
        assert not report.physical
        assert report.symplectic_eigenvalues == pytest.approx([0.5])

    def test_pure_ssts_on_the_boundary(self):
        c = 2.0 * np.sqrt(2.0)
        g = state_from_params(StandardFormParams(3.0, 3.0, c, -c)).cm
        report = validate_cm(g)
        assert report.physical
        # nu^2 = (dtilde +- sqrt(dtilde^2 - 4 det)) / 2 with dtilde = a^2+b^2+2cd
        dtilde = 9.0 + 9.0 + 2.0 * c * (-c)
        assert dtilde == pytest.approx(2.0)
        assert np.linalg.det(g) == pytest.approx(1.0)
        assert report.symplectic_eigenvalues == pytest.approx([1.0, 1.0])

    def test_negative_definite_rejected(self):
        # moduli of the symplectic spectrum alone would pass -3*I; the
        # explicit positive-definiteness check must catch it
        report = validate_cm(-3.0 * np.eye(2))
        assert not report.positive_definite and not report.physical

    def test_asymmetric_rejected(self):
        g = np.array([[2.0, 0.5], [-0.5, 2.0]])
        report = validate_cm(g)
        assert not report.symmetric and not report.physical

    def test_thermal_scaling(self):
        report = validate_cm(np.diag([7.0, 7.0, 3.0, 3.0]))
        assert report.physical
        assert report.symplectic_eigenvalues == pytest.approx([7.0, 3.0])

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            validate_cm(np.eye(3))
        with pytest.raises(ValueError):
            validate_cm(np.array([[np.nan, 0.0], [0.0, 1.0]]))
        with pytest.raises(ValueError):
            validate_cm(np.ones((2, 4)))


class TestIsSymplectic:
    def test_identity(self):
        assert is_symplectic(np.eye(4))

    @pytest.mark.parametrize("theta", np.linspace(0.0, 2.0 * np.pi, 9))
    def test_rotations(self, theta):
        assert is_symplectic(rotation(theta))

    def test_squeeze(self):
        assert is_symplectic(np.diag([np.exp(0.7), np.exp(-0.7)]))

    def test_scaling_is_not(self):
        assert not is_symplectic(2.0 * np.eye(2))

    def test_random_generated(self, rng):
        for n in (1, 2, 3):
            assert is_symplectic(random_symplectic(rng, n), tol=1e-8)

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValueError):
            is_symplectic(np.eye(3))


class TestWilliamson:
    def test_single_mode_thermal(self):
        dec = williamson(5.0 * np.eye(2))
        assert dec.nus == pytest.approx([5.0])
        assert dec.s == pytest.approx(np.eye(2))
        assert not dec.degeneracy_flag

    def test_already_diagonal_two_modes(self):
        dec = williamson(np.diag([3.0, 3.0, 2.0, 2.0]))
        assert dec.nus == pytest.approx([3.0, 2.0])
        assert not dec.degeneracy_flag

    def test_descending_order(self):
        dec = williamson(np.diag([2.0, 2.0, 3.0, 3.0]))
        assert dec.nus == pytest.approx([3.0, 2.0])

    def test_tmsv_is_pure(self):
        dec = williamson(tmsv(0.5).cm)
        assert dec.nus == pytest.approx([1.0, 1.0], abs=1e-10)
        assert dec.degeneracy_flag

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_random_reconstruction(self, rng, n):
        for _ in range(20):
            g = random_cm(rng, n)
            dec = williamson(g)
            target = np.diag(np.repeat(dec.nus, 2))
            assert np.abs(dec.s @ g @ dec.s.T - target).max() < 1e-8
            assert is_symplectic(dec.s, tol=1e-8)
            assert np.all(np.diff(dec.nus) <= 1e-12)
            assert np.all(dec.nus >= 1.0 - 1e-9)

    def test_non_positive_definite_rejected(self):
        with pytest.raises(ValueError):
            williamson(np.diag([1.0, -1.0]))


class TestStandardForm:
    def test_already_standard_returns_identity_locals(self):
        state = state_from_params(StandardFormParams(2.0, 2.0, 1.0, -1.0))
        params, s_a, s_b = standard_form(state)
        assert (params.a, params.b, params.c, params.d) == (2.0, 2.0, 1.0, -1.0)
        assert np.array_equal(s_a, np.eye(2))
        assert np.array_equal(s_b, np.eye(2))

    def test_recovers_rotated_family_state(self, rng):
        base = state_from_params(StandardFormParams(3.0, 3.0, np.sqrt(2.0), -np.sqrt(2.0)))
        for _ in range(20):
            phi, psi = rng.uniform(0.0, 2.0 * np.pi, 2)
            u = GaussianUnitary(la.block_diag(rotation(phi), rotation(psi)))
            params, _, _ = standard_form(apply_gaussian_unitary(base, u, "global"))
            assert params.a == pytest.approx(3.0, abs=1e-9)
            assert params.b == pytest.approx(3.0, abs=1e-9)
            assert params.c == pytest.approx(np.sqrt(2.0), abs=1e-9)
            assert params.d == pytest.approx(-np.sqrt(2.0), abs=1e-9)

    def test_tmsv_params(self):
        r = 0.8
        params, _, _ = standard_form(tmsv(r))
        assert params.a == pytest.approx(np.cosh(2 * r), rel=1e-12)
        assert params.b == pytest.approx(np.cosh(2 * r), rel=1e-12)
        assert params.c == pytest.approx(np.sinh(2 * r), rel=1e-12)
        assert params.d == pytest.approx(-np.sinh(2 * r), rel=1e-12)

    def test_random_states_land_in_standard_form(self, rng):
        for _ in range(50):
            state = random_state(rng)
            params, s_a, s_b = standard_form(state)
            scale = max(1.0, params.a, params.b)
            assert params.a >= 1.0 - 1e-9 and params.b >= 1.0 - 1e-9
            assert params.a * params.b - 1.0 >= params.c**2 - 1e-9 * scale
            assert params.a * params.b - 1.0 >= params.d**2 - 1e-9 * scale
            assert params.c >= abs(params.d) - 1e-12
            assert is_symplectic(s_a, tol=1e-8) and is_symplectic(s_b, tol=1e-8)
            loc = la.block_diag(s_a, s_b)
            target = state_from_params(params).cm
            assert np.abs(loc @ state.cm @ loc.T - target).max() < 1e-8 * scale

    def test_idempotent(self, rng):
        for _ in range(20):
            params, _, _ = standard_form(random_state(rng))
            again, s_a, s_b = standard_form(state_from_params(params))
            assert again.a == pytest.approx(params.a, rel=1e-10)
            assert again.b == pytest.approx(params.b, rel=1e-10)
            assert again.c == pytest.approx(params.c, rel=1e-10, abs=1e-12)
            assert again.d == pytest.approx(params.d, rel=1e-10, abs=1e-12)

    def test_wrong_partition_rejected(self):
        state = GaussianState(np.eye(6), 2, 1)
        with pytest.raises(ValueError):
            standard_form(state)


class TestParamsValidation:
    def test_rejects_sub_vacuum(self):
        with pytest.raises(ValueError):
            StandardFormParams(0.5, 2.0, 0.0, 0.0)

    def test_rejects_overcorrelated(self):
        with pytest.raises(ValueError):
            StandardFormParams(2.0, 2.0, 2.0, 0.0)

    def test_rejects_wrong_orientation(self):
        with pytest.raises(ValueError):
            StandardFormParams(2.0, 2.0, 0.5, -1.0)


class TestBlocks:
    def test_product_state_has_zero_cross_block(self):
        g = la.block_diag(3.0 * np.eye(2), 2.0 * np.eye(2))
        a, b, c = blocks(GaussianState(g, 1, 1))
        assert np.array_equal(a, 3.0 * np.eye(2))
        assert np.array_equal(b, 2.0 * np.eye(2))
        assert np.array_equal(c, np.zeros((2, 2)))

    def test_standard_form_read_off(self):
        state = state_from_params(StandardFormParams(2.0, 3.0, 1.0, -0.5))
        a, b, c = blocks(state)
        assert np.array_equal(a, 2.0 * np.eye(2))
        assert np.array_equal(b, 3.0 * np.eye(2))
        assert np.array_equal(c, np.diag([1.0, -0.5]))

    def test_blocks_are_symmetric(self, rng):
        a, b, _ = blocks(random_state(rng, 2, 1))
        assert np.array_equal(a, a.T)
        assert np.array_equal(b, b.T)


class TestGaussianState:
    def test_rejects_unphysical(self):
        with pytest.raises(ValueError):
            GaussianState(0.5 * np.eye(2), 1, 0)

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            GaussianState(np.eye(4), 1, 0)
        with pytest.raises(ValueError):
            GaussianState(np.eye(2), 1, 0, mean=[0.0, 0.0, 0.0])

    def test_arrays_are_frozen(self):
        state = GaussianState(np.eye(2), 1, 0)
        with pytest.raises(ValueError):
            state.cm[0, 0] = 2.0
        with pytest.raises(ValueError):
            state.mean[0] = 1.0

    def test_displaced_copy(self):
        state = GaussianState(np.eye(2), 1, 0)
        moved = state.displaced([1.0, -2.0])
        assert np.array_equal(moved.mean, [1.0, -2.0])
        assert np.array_equal(state.mean, [0.0, 0.0])


class TestApplyGaussianUnitary:
    def test_identity_leaves_state_unchanged(self, rng):
        state = random_state(rng, displaced=True)
        out = apply_gaussian_unitary(state, GaussianUnitary(np.eye(4)), "global")
        assert np.array_equal(out.cm, state.cm)
        assert np.array_equal(out.mean, state.mean)

    def test_rotation_on_a_gives_predicted_cross_block(self):
        state = state_from_params(StandardFormParams(2.0, 2.0, 1.0, -0.8))
        theta = 0.3
        out = apply_gaussian_unitary(state, GaussianUnitary(rotation(theta)), "A")
        c, d = 1.0, -0.8
        expected = np.array(
            [
                [c * np.cos(theta), d * np.sin(theta)],
                [-c * np.sin(theta), d * np.cos(theta)],
            ]
        )
        assert blocks(out)[2] == pytest.approx(expected)

    def test_displacement_only(self):
        state = state_from_params(StandardFormParams(2.0, 2.0, 1.0, -1.0))
        u = GaussianUnitary(np.eye(4), [1.0, 2.0, 3.0, 4.0])
        out = apply_gaussian_unitary(state, u, "global")
        assert np.array_equal(out.cm, state.cm)
        assert np.array_equal(out.mean, [1.0, 2.0, 3.0, 4.0])

    def test_side_a_leaves_b_untouched_bitwise(self, rng):
        state = random_state(rng, 1, 2)
        u = GaussianUnitary(random_symplectic(rng, 1))
        out = apply_gaussian_unitary(state, u, "A")
        assert np.array_equal(out.cm[2:, 2:], state.cm[2:, 2:])
        assert np.array_equal(out.mean[2:], state.mean[2:])

    def test_side_b_leaves_a_untouched_bitwise(self, rng):
        state = random_state(rng, 2, 1)
        u = GaussianUnitary(random_symplectic(rng, 1))
        out = apply_gaussian_unitary(state, u, "B")
        assert np.array_equal(out.cm[:4, :4], state.cm[:4, :4])
        assert np.array_equal(out.mean[:4], state.mean[:4])

    def test_determinant_preserved(self, rng):
        for _ in range(20):
            state = random_state(rng, 2, 1)
            u = GaussianUnitary(random_symplectic(rng, 3))
            out = apply_gaussian_unitary(state, u, "global")
            assert np.linalg.det(out.cm) == pytest.approx(
                np.linalg.det(state.cm), rel=1e-10
            )

    def test_dimension_mismatch_rejected(self, rng):
        state = random_state(rng)
        with pytest.raises(ValueError):
            apply_gaussian_unitary(state, GaussianUnitary(np.eye(2)), "global")
        with pytest.raises(ValueError):
            apply_gaussian_unitary(state, GaussianUnitary(np.eye(4)), "A")
        with pytest.raises(ValueError):
            apply_gaussian_unitary(state, GaussianUnitary(np.eye(2)), "C")

    def test_non_symplectic_rejected(self):
        with pytest.raises(ValueError):
            GaussianUnitary(2.0 * np.eye(2))
