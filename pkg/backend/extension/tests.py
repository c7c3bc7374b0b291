import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.exceptions import ConstraintViolation, NonPositiveScale, ValidationFailure
from core.testing import extension_params
from extension.params import (
    Parity,
    Scale,
    TimeReversal,
    apply_joining,
    apply_symmetry,
    classify,
    inverse_transfer_matrix,
    params_from_dict,
    params_to_dict,
    transfer_matrix,
    validate_extension,
)

complex_values = st.tuples(
    st.floats(min_value=-10, max_value=10), st.floats(min_value=-10, max_value=10)
).map(lambda pair: complex(*pair))


@pytest.mark.unit
class TestValidateExtension:

    def test_identity(self, identity_params):
        assert identity_params.as_tuple() == (1.0, 0.0, 1.0, 0.0, 0.0)

    def test_determinant_checked(self):
        params = validate_extension(2, -2.5, 0.5, 0, 0)
        assert params.determinant == 1.0
        with pytest.raises(ConstraintViolation):
            validate_extension(1, 1, 1, 1, 0)

    def test_decimal_input_tolerated(self):
        validate_extension(3, 0.333333333333, 0.333333333333, -0.0000000000001, 0)

    def test_non_finite_rejected(self):
        with pytest.raises(ConstraintViolation):
            validate_extension(1, math.nan, 1, 0, 0)

    @pytest.mark.parametrize('phi, expected_phi, flipped', [
        (math.pi, 0.0, True),
        (-math.pi / 2, math.pi / 2, True),
        (math.pi / 2, math.pi / 2, False),
        (2 * math.pi + 0.1, 0.1, False),
    ])
    def test_phase_normalized(self, phi, expected_phi, flipped):
        params = validate_extension(2, -2.5, 0.5, 0, phi)
        np.testing.assert_allclose(params.phi, expected_phi, atol=1e-12)
        assert (params.alpha == -2) is flipped
        # M itself is unchanged
        np.testing.assert_allclose(
            transfer_matrix(params),
            np.exp(1j * phi) * np.array([[2, -2.5], [0, 0.5]]),
            atol=1e-12,
        )


@pytest.mark.unit
class TestApplyJoining:

    def test_identity(self, identity_params):
        assert apply_joining(identity_params, 1, 2j) == (1, 2j)

    def test_bound_state_matching(self, odd_mixing_params):
        psi, dpsi = apply_joining(odd_mixing_params, 3.2, 3.2)
        np.testing.assert_allclose([psi, dpsi], [1.6, -1.6])

    def test_delta_jump(self, delta_params):
        psi, dpsi = apply_joining(delta_params, 1, 0)
        np.testing.assert_allclose([psi, dpsi], [1, -2])

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(params=extension_params(), psi=complex_values, dpsi=complex_values)
    def test_current_conserved(self, params, psi, dpsi):
        psi_r, dpsi_r = apply_joining(params, psi, dpsi)
        left = (psi.conjugate() * dpsi).imag
        right = (psi_r.conjugate() * dpsi_r).imag
        scale = (1 + abs(psi) + abs(dpsi)) ** 2 * max(1.0, np.abs(transfer_matrix(params)).max()) ** 2
        np.testing.assert_allclose(right, left, atol=1e-12 * scale)


@pytest.mark.unit
class TestTransferMatrix:

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(params=extension_params())
    def test_inverse_conjugacy(self, params):
        product = inverse_transfer_matrix(params) @ transfer_matrix(params)
        np.testing.assert_allclose(product, np.eye(2), atol=1e-11)

    def test_determinant_is_phase(self, maximal_tv_params):
        np.testing.assert_allclose(np.linalg.det(transfer_matrix(maximal_tv_params)), -1.0, atol=1e-12)


@pytest.mark.unit
class TestApplySymmetry:

    def test_parity(self, odd_mixing_params):
        assert apply_symmetry(odd_mixing_params, Parity()).as_tuple() == (0.5, -2.5, 2.0, 0.0, 0.0)

    def test_time_reversal(self):
        params = validate_extension(1, 0, 1, 0, 0.3)
        assert apply_symmetry(params, TimeReversal()).as_tuple() == (1.0, 0.0, 1.0, 0.0, -0.3)

    def test_scale(self):
        scaled = apply_symmetry(validate_extension(0, 1, 0, -1, 0), Scale(2))
        assert scaled.as_tuple() == (0.0, 2.0, 0.0, -0.5, 0.0)
        assert scaled.determinant == 1.0

    @pytest.mark.parametrize('factor', [0, -1.5])
    def test_non_positive_scale(self, odd_mixing_params, factor):
        with pytest.raises(NonPositiveScale):
            apply_symmetry(odd_mixing_params, Scale(factor))

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(params=extension_params())
    def test_involutions(self, params):
        for transform in (Parity(), TimeReversal()):
            twice = apply_symmetry(apply_symmetry(params, transform), transform)
            np.testing.assert_allclose(twice.as_tuple(), params.as_tuple(), atol=1e-15)

    def test_involution_at_maximal_phase(self, maximal_tv_params):
        once = apply_symmetry(maximal_tv_params, Parity())
        assert once.phi == pytest.approx(math.pi / 2)
        assert apply_symmetry(once, Parity()) == maximal_tv_params

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(
        params=extension_params(),
        first=st.floats(min_value=0.1, max_value=10),
        second=st.floats(min_value=0.1, max_value=10),
    )
    def test_scale_composition(self, params, first, second):
        chained = apply_symmetry(apply_symmetry(params, Scale(first)), Scale(second))
        direct = apply_symmetry(params, Scale(first * second))
        np.testing.assert_allclose(chained.as_tuple(), direct.as_tuple(), rtol=1e-14, atol=1e-15)
        assert abs(chained.determinant - 1) < 1e-12


@pytest.mark.unit
class TestClassify:

    def test_delta(self, delta_params):
        flags = classify(delta_params)
        assert flags.parity_even and flags.time_reversal_even and flags.pt_even
        assert not flags.scale_invariant

    def test_trivial_scale_invariant(self):
        flags = classify(validate_extension(-1, 0, -1, 0, 0))
        assert all([flags.parity_even, flags.time_reversal_even, flags.pt_even, flags.scale_invariant])

    def test_parity_violating(self, odd_mixing_params):
        flags = classify(odd_mixing_params)
        assert flags.time_reversal_even
        assert not (flags.parity_even or flags.pt_even or flags.scale_invariant)


@pytest.mark.unit
class TestSerialization:

    def test_flat_object(self, odd_mixing_params):
        data = params_to_dict(odd_mixing_params)
        assert data == {'alpha': 2.0, 'beta': -2.5, 'gamma': 0.5, 'delta': 0.0, 'phi': 0.0}
        assert params_from_dict(data) == odd_mixing_params

    def test_missing_field(self):
        with pytest.raises(ValidationFailure):
            params_from_dict({'alpha': 1, 'beta': 0, 'gamma': 1})
