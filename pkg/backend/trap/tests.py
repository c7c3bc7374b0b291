import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from core.exceptions import NotAnEigenvalue, ValidationFailure, ZeroScatteringLength
from core.testing import extension_params
from extension.params import validate_extension
from numerics.special import gamma_ratio, is_gamma_pole
from scattering.bound_states import smatrix_poles
from trap.spectrum import (
    Extension1D,
    Robin,
    ScatteringLength3D,
    TrapProblem,
    busch_condition_3d,
    busch_levels_3d,
    delta_trap_condition,
    parity_even_trap_families,
    pole_families,
    robin_parameter,
    solve,
    trap_amplitude_ratio,
    trap_condition_1d,
    trap_levels_1d,
)


def _oracle_ratio(energy):
    x = mpmath.mpf(energy) / 2
    return float(mpmath.gamma(mpmath.mpf(3) / 4 - x) / mpmath.gamma(mpmath.mpf(1) / 4 - x))


@pytest.mark.unit
class TestRobinParameter:

    @pytest.mark.parametrize('a, expected', [(1.0, -1.0), (-2.0, 0.5), (math.inf, 0.0)])
    def test_values(self, a, expected):
        assert robin_parameter(a) == expected

    def test_zero(self):
        with pytest.raises(ZeroScatteringLength):
            robin_parameter(0.0)


@pytest.mark.unit
class TestBuschLevels:

    def test_unitary(self):
        result = busch_levels_3d(math.inf, 1.0, 1.0, 4)
        np.testing.assert_allclose(result.energies, [0.5, 2.5, 4.5, 6.5], atol=1e-10)

    def test_zero_energy_root(self):
        a = 1 / (2 * gamma_ratio(0.0))
        np.testing.assert_allclose(a, 1 / (2 * _oracle_ratio(0.0)), rtol=1e-12)
        assert abs(busch_levels_3d(a, 1.0, 1.0, 1).energies[0]) < 1e-9

    def test_deep_dimer(self):
        a = 0.02
        energy = busch_levels_3d(a, 1.0, 1.0, 1).energies[0]
        np.testing.assert_allclose(energy, -1 / (2 * a * a), rtol=0.05)

    def test_trap_units(self):
        # E/omega depends only on sqrt(m omega) a
        scaled = busch_levels_3d(0.5, 1.0, 1.0, 3).energies
        np.testing.assert_allclose(busch_levels_3d(0.25, 2.0, 2.0, 3).energies, scaled, atol=1e-10)

    def test_strong_repulsion_approaches_odd_poles(self):
        result = busch_levels_3d(-1e-6, 1.0, 1.0, 3)
        np.testing.assert_allclose(result.energies, [1.5, 3.5, 5.5], atol=1e-3)

    def test_residuals_and_rows(self):
        result = busch_levels_3d(1.0, 1.0, 1.0, 3)
        assert max(result.residuals) < 1e-9
        rows = list(result.rows())
        assert [row['index'] for row in rows] == [0, 1, 2]
        assert set(rows[0]) == {'index', 'E_over_omega', 'bracket_lo', 'bracket_hi', 'residual'}

    def test_robin_problem(self):
        expected = busch_levels_3d(1.0, 1.0, 1.0, 3).energies
        assert solve(TrapProblem(1.0, 1.0, Robin(-1.0)), 3).energies == expected
        assert solve(TrapProblem(1.0, 1.0, ScatteringLength3D(1.0)), 3).energies == expected

    @pytest.mark.parametrize('kwargs', [{'a': 0.0}, {'count': 0}, {'m': 0.0}, {'omega': -1.0}])
    def test_invalid(self, kwargs):
        args = {'a': 1.0, 'm': 1.0, 'omega': 1.0, 'count': 2}
        args.update(kwargs)
        with pytest.raises(ValidationFailure):
            busch_levels_3d(**args)

    @pytest.mark.property
    @settings(max_examples=50, deadline=None)
    @given(inverse_a=st.floats(min_value=-10.0, max_value=10.0))
    def test_interlacing(self, inverse_a):
        assume(inverse_a != 0)
        energies = busch_levels_3d(1 / inverse_a, 1.0, 1.0, 5).energies
        assert energies[0] < 1.5
        for n, energy in enumerate(energies[1:], start=1):
            assert 2 * n - 0.5 < energy < 2 * n + 1.5
        for energy in energies:
            assert abs(busch_condition_3d(1 / inverse_a, energy, 1.0, 1.0)) < 1e-8 * (1 + abs(inverse_a))

    @pytest.mark.property
    @settings(max_examples=50, deadline=None)
    @given(inverse_a=st.floats(min_value=-5.0, max_value=5.0))
    def test_levels_move_down_with_inverse_length(self, inverse_a):
        assume(abs(inverse_a) > 1e-3 and abs(inverse_a + 0.01) > 1e-3)
        lower = busch_levels_3d(1 / inverse_a, 1.0, 1.0, 4).energies
        upper = busch_levels_3d(1 / (inverse_a + 0.01), 1.0, 1.0, 4).energies
        assert all(b < a for a, b in zip(lower, upper))


@pytest.mark.unit
class TestTrapLevels1D:

    @pytest.mark.parametrize('params', [
        validate_extension(-1, 0, -1, 0, 0),
        validate_extension(1, 0, 1, 0, 0),
    ])
    def test_oscillator_spectrum(self, params):
        result = trap_levels_1d(params, 1.0, 1.0, 6)
        np.testing.assert_allclose(result.energies, [0.5, 1.5, 2.5, 3.5, 4.5, 5.5], atol=1e-10)

    def test_delta_keeps_odd_levels(self):
        c0 = 0.7
        energies = trap_levels_1d(validate_extension(1, -2 * c0, 1, 0, 0), 1.0, 1.0, 6).energies
        even, odd = energies[::2], energies[1::2]
        np.testing.assert_allclose(odd, [1.5, 3.5, 5.5], atol=1e-12)
        for energy in even:
            assert abs(delta_trap_condition(c0, energy, 1.0, 1.0)) < 1e-9

    def test_parity_even_families(self, parity_even_params):
        families = parity_even_trap_families(parity_even_params, 1.0, 1.0, 3)
        for key, t in (('a0', -0.5), ('a1', 0.5)):
            for energy in families[key]:
                np.testing.assert_allclose(_oracle_ratio(energy), t, rtol=1e-9)
        merged = trap_levels_1d(parity_even_params, 1.0, 1.0, 6).energies
        np.testing.assert_allclose(merged, sorted(families['a0'] + families['a1']), atol=1e-12)

    def test_pole_families(self, parity_even_params, delta_params):
        assert pole_families(parity_even_params, 1.0, 1.0) == [-0.5, 0.5]
        assert pole_families(delta_params, 1.0, 1.0) == [0.5, math.inf]
        assert pole_families(validate_extension(-1, 0, -1, 0, 0), 1.0, 1.0) == [0.0, math.inf]

    def test_solve_dispatch(self, odd_mixing_params):
        expected = trap_levels_1d(odd_mixing_params, 1.0, 2.0, 4).energies
        assert solve(TrapProblem(1.0, 2.0, Extension1D(odd_mixing_params)), 4).energies == expected

    def test_strictly_increasing(self, odd_mixing_params):
        energies = trap_levels_1d(odd_mixing_params, 1.0, 1.0, 8).energies
        assert len(energies) == 8
        assert all(b > a for a, b in zip(energies, energies[1:]))

    @pytest.mark.property
    @settings(max_examples=50, deadline=None)
    @given(params=extension_params(bound=5.0))
    def test_phase_independent(self, params):
        spectra = [
            trap_levels_1d(validate_extension(params.alpha, params.beta, params.gamma, params.delta, phi),
                           1.0, 1.0, 5).energies
            for phi in (0.0, 0.4, math.pi / 2)
        ]
        for energies in spectra[1:]:
            np.testing.assert_allclose(energies, spectra[0], atol=1e-10)

    @pytest.mark.property
    @settings(max_examples=50, deadline=None)
    @given(params=extension_params(bound=5.0))
    def test_levels_solve_unfactorized_condition(self, params):
        assume(all(abs(pole.kappa) < 100 for pole in smatrix_poles(params)))
        for energy in trap_levels_1d(params, 1.0, 1.0, 4).energies:
            if is_gamma_pole(0.75 - energy / 2):
                continue
            g = gamma_ratio(energy / 2)
            assume(abs(g) > 1e-3 and abs(g) < 1e3)
            scale = abs(params.alpha + params.gamma) + abs(params.beta / (2 * g)) + abs(2 * params.delta * g)
            assert abs(trap_condition_1d(params, energy, 1.0, 1.0)) < 1e-8 * scale


@pytest.mark.unit
class TestConditions:

    @pytest.mark.parametrize('energy', [-3.3, -0.2, 0.1, 1.0, 2.2, 3.9, 7.1])
    def test_delta_limit_of_busch(self, energy):
        c0 = 0.8
        delta = validate_extension(1, -2 * c0, 1, 0, 0)
        g = gamma_ratio(energy / 2)
        np.testing.assert_allclose(trap_condition_1d(delta, energy, 1.0, 1.0),
                                   -delta_trap_condition(c0, energy, 1.0, 1.0) / g, rtol=1e-12)
        np.testing.assert_allclose(busch_condition_3d(1 / c0, energy, 1.0, 1.0),
                                   delta_trap_condition(c0, energy, 1.0, 1.0), rtol=1e-12)


@pytest.mark.unit
class TestAmplitudeRatio:

    def test_identity(self, identity_params):
        for n, energy in enumerate(trap_levels_1d(identity_params, 1.0, 1.0, 4).energies):
            result = trap_amplitude_ratio(Extension1D(identity_params), energy, 1.0, 1.0)
            np.testing.assert_allclose(result.ratio, 1.0 if n % 2 == 0 else -1.0, atol=1e-12)
            assert result.u_zero == (n % 2 == 1)

    def test_phase_enters_as_prefactor(self, parity_even_params):
        twisted = validate_extension(0, 1, 0, -1, 0.3)
        for energy in trap_levels_1d(parity_even_params, 1.0, 1.0, 4).energies:
            plain = trap_amplitude_ratio(Extension1D(parity_even_params), energy, 1.0, 1.0).ratio
            assert abs(plain.imag) < 1e-12
            rotated = trap_amplitude_ratio(Extension1D(twisted), energy, 1.0, 1.0).ratio
            np.testing.assert_allclose(rotated, plain * complex(math.cos(0.3), math.sin(0.3)), atol=1e-12)

    def test_not_an_eigenvalue(self, parity_even_params):
        with pytest.raises(NotAnEigenvalue):
            trap_amplitude_ratio(Extension1D(parity_even_params), 1.0, 1.0, 1.0)

    def test_needs_one_dimensional_interaction(self):
        with pytest.raises(TypeError):
            trap_amplitude_ratio(ScatteringLength3D(1.0), 0.5, 1.0, 1.0)
