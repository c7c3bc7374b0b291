import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from scipy import integrate

from core.exceptions import (
    DegenerateMixing,
    NoBoundState,
    NotMaximalTV,
    NotParityEven,
    ValidationFailure,
    ZeroScatteringLength,
)
from core.testing import extension_params, momenta
from extension.params import Parity, apply_joining, apply_symmetry, validate_extension
from scattering.amplitudes import (
    amplitude_denominator,
    eigen_amplitudes,
    halfline_amplitude,
    mixing_strength,
    partial_amplitudes,
    reflection_transmission,
    s_matrix,
    t_matrix,
)
from scattering.bound_states import (
    PoleKind,
    bound_state_norm,
    bound_state_wavefunction,
    parity_even_summary,
    smatrix_poles,
)
from scattering.matrices import Basis, Kind, ScatterMatrix
from scattering.observables import (
    eigen_observables,
    limiting_case_amplitudes,
    maximal_tv_eigenvalues,
    mixing_line,
    observables_from_t,
    reconstruct_t,
)

K_GRID = np.logspace(-2, 2, 20)

WORKED_T = np.array([[0.45 + 0.55j, 0.15 - 0.15j], [-0.15 + 0.15j, -0.05 + 0.05j]])


@pytest.mark.unit
class TestReflectionTransmission:

    def test_free_particle(self, identity_params):
        amps = reflection_transmission(identity_params, 1.0)
        np.testing.assert_allclose([amps.r_plus, amps.r_minus, amps.t_plus, amps.t_minus], [0, 0, 1, 1])

    def test_delta(self, delta_params):
        amps = reflection_transmission(delta_params, 1.0)
        np.testing.assert_allclose([amps.r_plus, amps.r_minus], [-0.5 + 0.5j] * 2)
        np.testing.assert_allclose([amps.t_plus, amps.t_minus], [0.5 + 0.5j] * 2)

    def test_parity_violating(self, odd_mixing_params):
        amps = reflection_transmission(odd_mixing_params, 1.0)
        np.testing.assert_allclose(amps.r_plus, -0.2 + 0.8j)
        np.testing.assert_allclose(amps.r_minus, -0.8 + 0.2j)
        np.testing.assert_allclose([amps.t_plus, amps.t_minus], [0.4 + 0.4j] * 2)

    @pytest.mark.parametrize('k', [0.0, -1.0, math.inf])
    def test_momentum_must_be_positive(self, identity_params, k):
        with pytest.raises(ValidationFailure):
            reflection_transmission(identity_params, k)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(params=extension_params())
    def test_probability_and_orthogonality(self, params):
        for k in K_GRID:
            amps = reflection_transmission(params, k)
            for r, t in ((amps.r_plus, amps.t_plus), (amps.r_minus, amps.t_minus)):
                assert abs(abs(r) ** 2 + abs(t) ** 2 - 1) < 1e-12
            assert abs(amps.r_minus.conjugate() * amps.t_plus + amps.t_minus.conjugate() * amps.r_plus) < 1e-12

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(params=extension_params(), k=momenta)
    def test_parity_swaps_directions(self, params, k):
        amps = reflection_transmission(params, k)
        mirrored = reflection_transmission(apply_symmetry(params, Parity()), k)
        np.testing.assert_allclose(
            [mirrored.r_plus, mirrored.r_minus, mirrored.t_plus, mirrored.t_minus],
            [amps.r_minus, amps.r_plus, amps.t_minus, amps.t_plus],
            rtol=1e-14, atol=1e-15,
        )


@pytest.mark.unit
class TestPoles:

    def test_two_poles(self, parity_even_params):
        poles = smatrix_poles(parity_even_params)
        assert [p.kappa for p in poles] == [-1.0, 1.0]
        assert [p.kind for p in poles] == [PoleKind.ANTIBOUND, PoleKind.BOUND]

    def test_single_pole(self, odd_mixing_params):
        (pole,) = smatrix_poles(odd_mixing_params)
        assert pole.kappa == pytest.approx(1.0)
        assert pole.kind == PoleKind.BOUND

    def test_scale_invariant_has_none(self):
        assert smatrix_poles(validate_extension(-1, 0, -1, 0, 0)) == []

    def test_threshold(self, maximal_tv_params):
        kinds = [p.kind for p in smatrix_poles(maximal_tv_params)]
        assert kinds == [PoleKind.THRESHOLD, PoleKind.ANTIBOUND]

    def test_nearly_decoupled_pole(self):
        delta = 1.19e-7
        params = validate_extension(1, 1, 1 + delta, delta, 0)
        near, far = smatrix_poles(params)
        np.testing.assert_allclose(near.kappa, -0.5, rtol=1e-6)
        assert far.kappa < -1e7
        for pole in (near, far):
            scale = 1 + delta * pole.kappa ** 2 + 1
            assert abs(amplitude_denominator(params, pole.momentum)) < 1e-13 * scale

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(params=extension_params())
    def test_poles_are_denominator_zeros(self, params):
        for pole in smatrix_poles(params):
            scale = 1 + abs(params.delta) * pole.kappa ** 2 + abs(params.beta)
            assert abs(amplitude_denominator(params, pole.momentum)) < 1e-10 * scale


@pytest.mark.unit
class TestScatterMatrices:

    def test_identity(self, identity_params):
        for basis in Basis:
            np.testing.assert_allclose(s_matrix(identity_params, 2.3, basis).entries, np.eye(2), atol=1e-15)
        np.testing.assert_allclose(t_matrix(identity_params, 2.3).entries, np.zeros((2, 2)), atol=1e-15)

    def test_partial_wave_s(self, odd_mixing_params):
        s = s_matrix(odd_mixing_params, 1.0)
        np.testing.assert_allclose(s.entries, [[-0.1 + 0.9j, 0.3 + 0.3j], [-0.3 - 0.3j, 0.9 - 0.1j]])

    def test_delta_is_diagonal(self, delta_params):
        np.testing.assert_allclose(s_matrix(delta_params, 1.0).entries, np.diag([1j, 1]), atol=1e-15)

    def test_worked_t(self, odd_mixing_params):
        t = t_matrix(odd_mixing_params, 1.0)
        assert t.basis == Basis.PARTIAL_WAVE and t.kind == Kind.T
        np.testing.assert_allclose(t.entries, WORKED_T, atol=1e-14)

    def test_parity_even_t_is_diagonal(self, parity_even_params):
        t = t_matrix(parity_even_params, 1.0)
        assert abs(t[0, 1]) < 1e-14 and abs(t[1, 0]) < 1e-14
        # -k tan(delta0) = -kappa_plus = 1
        np.testing.assert_allclose(t[0, 0], 1 / (-1 - 1j))

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(params=extension_params())
    def test_unitarity_both_bases(self, params):
        for k in K_GRID:
            for basis in Basis:
                assert s_matrix(params, k, basis).unitarity_defect() < 1e-12

    @pytest.mark.property
    @settings(max_examples=50, deadline=None)
    @given(params=extension_params(), k=momenta)
    def test_basis_round_trip(self, params, k):
        s = s_matrix(params, k, Basis.TRAVELING)
        back = s.to_basis(Basis.PARTIAL_WAVE).to_basis(Basis.TRAVELING)
        np.testing.assert_allclose(back.entries, s.entries, atol=1e-15)

    def test_t_to_s(self, odd_mixing_params):
        t = ScatterMatrix(WORKED_T, Basis.PARTIAL_WAVE, Kind.T)
        np.testing.assert_allclose(t.to_kind(Kind.S).entries, s_matrix(odd_mixing_params, 1.0).entries,
                                   atol=1e-15)


@pytest.mark.unit
class TestEigenObservables:

    def test_parity_even_phase(self, parity_even_params):
        obs = eigen_observables(parity_even_params, 1.0)
        assert obs.theta == 0.0 and obs.phase_undefined
        np.testing.assert_allclose(cmath.exp(2j * obs.delta_plus), -1j, atol=1e-15)

    def test_worked_angles(self, odd_mixing_params):
        obs = eigen_observables(odd_mixing_params, 1.0)
        assert obs.phi_rel == 0.0
        # k cot(theta) = -(beta + k^2 delta)/sqrt(C) = 2.5/1.5
        np.testing.assert_allclose(1.0 / math.tan(obs.theta), 5 / 3)
        np.testing.assert_allclose(mixing_line(odd_mixing_params), (5 / 3, 0.0))
        assert [p.kappa for p in obs.poles] == pytest.approx([1.0])

    def test_pt_even_phase(self):
        obs = eigen_observables(validate_extension(1, 0, 1, 0, math.pi / 4), 1.0)
        np.testing.assert_allclose(obs.phi_rel, -math.pi / 2)
        obs = eigen_observables(validate_extension(1, 0, 1, 0, -math.pi / 4), 1.0)
        np.testing.assert_allclose(obs.phi_rel, math.pi / 2)

    def test_phase_range(self):
        obs = eigen_observables(validate_extension(0.5, -2.5, 2, 0, 0), 1.0)
        assert obs.phi_rel == math.pi

    @pytest.mark.parametrize('perturbed', [
        validate_extension(1, -2, 1, 0, 1e-6),
        validate_extension(1 + 1e-6, -2, 1 / (1 + 1e-6), 0, 0),
        validate_extension(1 + 1e-6, -2, 1 / (1 + 1e-6), 0, -1e-6),
    ])
    def test_continuous_from_parity_even(self, delta_params, perturbed):
        for k in (0.1, 1.0, 10.0):
            even, odd = eigen_observables(delta_params, k), eigen_observables(perturbed, k)
            np.testing.assert_allclose([odd.delta_plus, odd.delta_minus], [even.delta_plus, even.delta_minus],
                                       atol=1e-5)
            assert abs(odd.theta) < 1e-5

    def test_bound_pole_in_f_plus(self, odd_mixing_params):
        (pole,) = smatrix_poles(odd_mixing_params)
        f_plus, f_minus = eigen_amplitudes(odd_mixing_params, pole.momentum + 1e-3)
        assert abs(f_plus) > 100 and abs(f_minus) < 2

    def test_mixing_line_needs_mixing(self, delta_params):
        with pytest.raises(DegenerateMixing):
            mixing_line(delta_params)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(params=extension_params())
    def test_t_reconstruction(self, params):
        assume(mixing_strength(params) > 1e-6)
        for k in K_GRID:
            obs = eigen_observables(params, k)
            rebuilt = reconstruct_t((obs.f_plus + obs.f_minus) / 2, (obs.f_plus - obs.f_minus) / 2,
                                    obs.theta, obs.phi_rel)
            np.testing.assert_allclose(rebuilt, t_matrix(params, k).entries, atol=1e-12)

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(params=extension_params())
    def test_parity_even_diagonal(self, params):
        assume(abs(params.beta) > 0.5 and abs(params.alpha ** 2 - 1) > 1e-3)
        even = validate_extension(params.alpha, params.beta, params.alpha, (params.alpha ** 2 - 1) / params.beta, 0)
        summary = parity_even_summary(even)
        for k in K_GRID:
            t = t_matrix(even, k)
            assert max(abs(t[0, 1]), abs(t[1, 0])) < 1e-14
            # -k tan(delta0) = -kappa_plus and k cot(delta1) = -kappa_minus
            np.testing.assert_allclose(t[0, 0], summary.kappa_plus / (k - 1j * summary.kappa_plus), rtol=1e-12, atol=1e-14)
            np.testing.assert_allclose(t[1, 1], k / (-summary.kappa_minus - 1j * k), rtol=1e-12, atol=1e-14)

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(params=extension_params())
    def test_mixing_angle_linear_in_energy(self, params):
        assume(mixing_strength(params) > 0.1)
        k_squared = np.linspace(0.01, 100, 25)
        values = np.array([
            math.sqrt(ksq) / math.tan(eigen_observables(params, math.sqrt(ksq)).theta) for ksq in k_squared
        ])
        slope, intercept = np.polyfit(k_squared, values, 1)
        scale = 1 + np.abs(values).max()
        np.testing.assert_allclose(slope * k_squared + intercept, values, atol=1e-10 * scale)
        expected_intercept, expected_slope = mixing_line(params)
        np.testing.assert_allclose([intercept, slope], [expected_intercept, expected_slope],
                                   rtol=1e-9, atol=1e-10 * scale)


@pytest.mark.unit
class TestObservablesFromT:

    def test_diagonal(self):
        result = observables_from_t(np.diag([0.3 + 0.1j, -0.2j]))
        assert result.theta == 0.0 and result.phase_undefined
        assert (result.f_plus, result.f_minus) == (0.3 + 0.1j, -0.2j)

    def test_diagonal_strict(self):
        with pytest.raises(DegenerateMixing):
            observables_from_t(np.diag([0.3 + 0.1j, -0.2j]), strict=True)

    def test_worked(self, odd_mixing_params):
        result = observables_from_t(ScatterMatrix(WORKED_T, Basis.PARTIAL_WAVE, Kind.T))
        obs = eigen_observables(odd_mixing_params, 1.0)
        assert abs(result.phi_rel) < 1e-12
        np.testing.assert_allclose(result.theta, obs.theta, rtol=1e-12)
        np.testing.assert_allclose([result.f_plus, result.f_minus], [obs.f_plus, obs.f_minus], atol=1e-12)

    def test_accepts_traveling_s(self, odd_mixing_params):
        s = s_matrix(odd_mixing_params, 1.0, Basis.TRAVELING)
        np.testing.assert_allclose(observables_from_t(s).theta, eigen_observables(odd_mixing_params, 1.0).theta)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(params=extension_params())
    def test_agrees_with_eigen_observables(self, params):
        assume(mixing_strength(params) > 0.1 and math.cos(params.phi) > 0.1)
        for k in K_GRID:
            obs = eigen_observables(params, k)
            if math.cos(obs.theta) < 0.1:
                continue
            result = observables_from_t(t_matrix(params, k))
            np.testing.assert_allclose(result.theta, obs.theta, atol=1e-10)
            np.testing.assert_allclose(cmath.exp(1j * result.phi_rel), cmath.exp(1j * obs.phi_rel), atol=1e-10)
            np.testing.assert_allclose([result.f_plus, result.f_minus], [obs.f_plus, obs.f_minus], atol=1e-10)


@pytest.mark.unit
class TestPartialAmplitudes:

    def test_free(self, identity_params):
        amps = partial_amplitudes(identity_params, 1.0)
        assert amps.f0 == 0 and amps.f1 == 0

    def test_delta(self, delta_params):
        amps = partial_amplitudes(delta_params, 1.0)
        np.testing.assert_allclose([amps.f0, amps.f1], [(1 + 1j) / 2, 0], atol=1e-15)

    def test_bad_direction(self, delta_params):
        with pytest.raises(ValidationFailure):
            partial_amplitudes(delta_params, 1.0, direction='up')

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(params=extension_params(), k=momenta)
    def test_rows_of_t_matrix(self, params, k):
        t = t_matrix(params, k).entries
        right = partial_amplitudes(params, k)
        np.testing.assert_allclose([right.f0, right.f1], [t[0, 0] + t[0, 1], t[1, 0] + t[1, 1]], atol=1e-12)
        left = partial_amplitudes(params, k, direction='left')
        mirrored = partial_amplitudes(apply_symmetry(params, Parity()), k)
        assert (left.f0, left.f1) == (mirrored.f0, mirrored.f1)


@pytest.mark.unit
class TestLimitingCases:

    @pytest.mark.parametrize('k', [0.05, 1.0, 7.0])
    def test_one_pole_delta(self, odd_mixing_params, k):
        case = limiting_case_amplitudes(odd_mixing_params, k)['one_pole_delta']
        assert case['kappa'] == pytest.approx(1.0)
        np.testing.assert_allclose([case['f_plus'], case['f_minus']],
                                   eigen_amplitudes(odd_mixing_params, k), atol=1e-12)

    @pytest.mark.parametrize('k', [0.05, 1.0, 7.0])
    def test_one_pole_beta(self, k):
        params = validate_extension(2, 0, 0.5, -1, 0.3)
        case = limiting_case_amplitudes(params, k)['one_pole_beta']
        assert case['kappa'] == pytest.approx(2.5)
        np.testing.assert_allclose([case['f_plus'], case['f_minus']], eigen_amplitudes(params, k), atol=1e-12)

    def test_scale_invariant_is_momentum_independent(self):
        params = validate_extension(2, 0, 0.5, 0, 0.4)
        reference = limiting_case_amplitudes(params, 1.0)['scale_invariant']
        assert abs(reference['f_plus']) > 0.1
        for k in (1e-3, 0.3, 30.0):
            np.testing.assert_allclose(eigen_amplitudes(params, k), [reference['f_plus'], reference['f_minus']],
                                       atol=1e-12)

    @pytest.mark.parametrize('params', [
        validate_extension(2, -2.5, 0.5, 0, 0),
        validate_extension(0.5, -2.5, 2, 0, 0),
        validate_extension(3, 1, 1, 2, 0),
    ])
    def test_time_reversal_even(self, params):
        for k in (0.2, 1.0, 4.0):
            case = limiting_case_amplitudes(params, k)['time_reversal_even']
            amps = partial_amplitudes(params, k)
            np.testing.assert_allclose([case['f0'], case['f1']], [amps.f0, amps.f1], atol=1e-12)
            np.testing.assert_allclose(case['weight'], 1.0)

    @pytest.mark.parametrize('phi', [0.7, -0.7])
    def test_pt_even(self, phi):
        params = validate_extension(1.5, -1, 1.5, -1.25, phi)
        for k in (0.2, 1.0, 4.0):
            case = limiting_case_amplitudes(params, k)['pt_even']
            amps = partial_amplitudes(params, k)
            np.testing.assert_allclose([case['f0'], case['f1']], [amps.f0, amps.f1], atol=1e-12)

    def test_parity_even_has_no_cases(self, delta_params):
        assert limiting_case_amplitudes(delta_params, 1.0) == {}


@pytest.mark.unit
class TestPoleDecoupling:

    @staticmethod
    def _approach(kappa, eps):
        return 1j * kappa + eps * cmath.exp(1j * math.pi / 4)

    def test_delta_zero(self, odd_mixing_params):
        near, nearer = (eigen_amplitudes(odd_mixing_params, self._approach(1.0, eps)) for eps in (1e-2, 1e-4))
        # f_plus carries the kappa_plus pole, f_minus stays finite
        np.testing.assert_allclose(abs(nearer[0]) / abs(near[0]), 100, rtol=0.05)
        assert abs(nearer[1]) < 100 and abs(nearer[1] - near[1]) < 1

    def test_beta_zero(self):
        params = validate_extension(2, 0, 0.5, -1, 0.3)
        near, nearer = (eigen_amplitudes(params, self._approach(2.5, eps)) for eps in (1e-2, 1e-4))
        # kappa1 is the kappa_minus root here
        np.testing.assert_allclose(abs(nearer[1]) / abs(near[1]), 100, rtol=0.05)
        assert abs(nearer[0]) < 100 and abs(nearer[0] - near[0]) < 1


@pytest.mark.unit
class TestParityEvenSummary:

    def test_lengths(self, parity_even_params):
        summary = parity_even_summary(parity_even_params)
        assert (summary.a0, summary.a1) == (-1.0, 1.0)
        assert not (summary.infinite_a0 or summary.infinite_a1)

    def test_threshold_pole(self):
        summary = parity_even_summary(validate_extension(1, 0, 1, 2, 0))
        assert summary.infinite_a0 and summary.kappa_plus == 0

    def test_delta_limit(self, delta_params):
        summary = parity_even_summary(delta_params)
        assert summary.a0 == 1.0 and summary.a1 == 0.0

    def test_rejects_parity_odd(self, odd_mixing_params):
        with pytest.raises(NotParityEven):
            parity_even_summary(odd_mixing_params)


@pytest.mark.unit
class TestMaximalTimeReversalViolation:

    def test_worked(self, maximal_tv_params):
        e1, e2 = maximal_tv_eigenvalues(maximal_tv_params, 2.0)
        np.testing.assert_allclose(e1, cmath.exp(-1j * math.pi / 4), atol=1e-12)
        np.testing.assert_allclose(e2, -cmath.exp(-1j * math.pi / 4), atol=1e-12)

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(params=extension_params())
    def test_unimodular_and_closed_form(self, params):
        params = validate_extension(params.alpha, params.beta, params.gamma, params.delta, math.pi / 2)
        poles = smatrix_poles(params)
        assume(len(poles) == 2)
        kp, km = poles[0].kappa, poles[1].kappa
        for k in K_GRID:
            e1, e2 = maximal_tv_eigenvalues(params, k)
            assert abs(abs(e1) - 1) < 1e-12 and abs(abs(e2) - 1) < 1e-12
            assert abs(e1 + e2) < 1e-12
            closed = cmath.sqrt((k + 1j * kp) * (k + 1j * km) / ((k - 1j * kp) * (k - 1j * km)))
            assert min(abs(e1 - closed), abs(e1 + closed)) < 1e-10

    def test_requires_maximal_phase(self, delta_params):
        with pytest.raises(NotMaximalTV):
            maximal_tv_eigenvalues(delta_params, 1.0)


@pytest.mark.unit
class TestBoundStates:

    def test_delta_is_even(self, delta_params):
        x = np.linspace(-3, 3, 13)
        psi = bound_state_wavefunction(delta_params, x)
        np.testing.assert_allclose(psi, np.exp(-np.abs(x)), atol=1e-15)

    def test_amplitude_ratio(self, odd_mixing_params):
        psi = bound_state_wavefunction(odd_mixing_params, [-1e-300, 1e-300])
        np.testing.assert_allclose(psi[1] / psi[0], 0.5)

    @pytest.mark.parametrize('params', [
        validate_extension(2, -2.5, 0.5, 0, 0),
        validate_extension(0, 1, 0, -1, 0),
        validate_extension(1, 0, 1, -1, math.pi / 2),
        validate_extension(2, 0, 0.5, -1, 0.3),
    ])
    def test_joining_satisfied(self, params):
        kappa = max(p.kappa for p in smatrix_poles(params))
        left, right = bound_state_wavefunction(params, [0.0, 1e-300])
        psi, dpsi = apply_joining(params, left, kappa * left)
        np.testing.assert_allclose([psi, dpsi], [right, -kappa * right], atol=1e-12)

    def test_norm(self, odd_mixing_params):
        def density(x):
            return abs(bound_state_wavefunction(odd_mixing_params, [x])[0]) ** 2

        total = integrate.quad(density, -np.inf, 0)[0] + integrate.quad(density, 0, np.inf)[0]
        np.testing.assert_allclose(bound_state_norm(odd_mixing_params), total, rtol=1e-8)
        np.testing.assert_allclose(total, 0.625, rtol=1e-8)

    def test_threshold_is_not_bound(self, maximal_tv_params):
        with pytest.raises(NoBoundState):
            bound_state_wavefunction(maximal_tv_params, [0.0])

    def test_explicit_kappa_checked(self, parity_even_params):
        with pytest.raises(NoBoundState):
            bound_state_norm(parity_even_params, kappa=-1.0)
        assert bound_state_norm(parity_even_params, kappa=1.0) > 0


@pytest.mark.unit
class TestHalflineAmplitude:

    def test_unitary_limit(self):
        np.testing.assert_allclose(halfline_amplitude(math.inf, 2.0), 0.5j)

    def test_robin(self):
        np.testing.assert_allclose(halfline_amplitude(1.0, 1.0), 1 / (-1 - 1j))

    def test_zero_length(self):
        with pytest.raises(ZeroScatteringLength):
            halfline_amplitude(0.0, 1.0)
